"""Subtowers from the functional equation  a~ o f o b  =  b~ o f o a.

If the equation holds and a(x_{i+1}) = b(x_i), then z_i = f(a(x_i)) satisfies
a~(z_{i+1}) = b~(z_i), so (a~, b~) defines a subsequence of the (a, b) tower.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import SearchSpaceTooLarge
from .gf import FiniteField
from .poly import Polynomial, poly_gcd
from .ratfunc import RationalFunction

DEFAULT_CEILING = 10**8
DEGREE_ASSUMPTION = "[E_{i+1}:E_i] = deg(a~) assumed, not verified"


class Properness(Enum):
    PROPER_BY_DEGREE = "ProperByDegree"
    PROPER_BY_COPRIME = "ProperByCoprime"
    NOT_GUARANTEED = "NotGuaranteed"


@dataclass(frozen=True)
class PropernessVerdict:
    tag: Properness
    assumptions: tuple[str, ...]
    reason: str = ""

    def __str__(self) -> str:
        return self.tag.value


def check_properness(a: RationalFunction, a_tilde: RationalFunction) -> PropernessVerdict:
    """Degree test for E_i being a proper subfield of F_i at every level.

    Only degrees matter: proper when deg a >= deg a~, or when the two
    degrees are coprime.  Both degrees must be at least 2.
    """
    d, dt = a.degree, a_tilde.degree
    assumptions = (DEGREE_ASSUMPTION,)
    if d < 2 or dt < 2:
        return PropernessVerdict(
            Properness.NOT_GUARANTEED, assumptions, f"needs deg a >= 2 and deg a~ >= 2 (got {d}, {dt})"
        )
    if d >= dt:
        return PropernessVerdict(Properness.PROPER_BY_DEGREE, assumptions, f"deg a = {d} >= deg a~ = {dt}")
    if math.gcd(d, dt) == 1:
        return PropernessVerdict(Properness.PROPER_BY_COPRIME, assumptions, f"gcd({d}, {dt}) = 1")
    return PropernessVerdict(
        Properness.NOT_GUARANTEED, assumptions, f"deg a = {d} < deg a~ = {dt} and gcd = {math.gcd(d, dt)}"
    )


@dataclass(frozen=True)
class SubtowerWitness:
    f: RationalFunction
    a_tilde: RationalFunction
    b_tilde: RationalFunction
    equation_holds: bool
    left: RationalFunction
    right: RationalFunction
    properness: PropernessVerdict

    @property
    def composite(self) -> RationalFunction | None:
        """The common value of both sides, or None when they differ."""
        return self.left if self.equation_holds else None


def verify_equation(
    a: RationalFunction,
    b: RationalFunction,
    f: RationalFunction,
    a_tilde: RationalFunction,
    b_tilde: RationalFunction,
) -> SubtowerWitness:
    """Recompute both sides symbolically and compare canonical forms."""
    left = a_tilde.compose(f.compose(b))
    right = b_tilde.compose(f.compose(a))
    return SubtowerWitness(
        f, a_tilde, b_tilde, left == right, left, right, check_properness(a, a_tilde)
    )


def derive_z_relation(a: RationalFunction, f: RationalFunction) -> RationalFunction:
    """z_i = f(a(x_i)) as a rational function of x_i."""
    return f.compose(a)


# -- exhaustive search ---------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    max_deg_f: int = 1
    max_deg_tilde: int | None = None
    ceiling: int = DEFAULT_CEILING
    jobs: int = 1

    def __post_init__(self):
        if self.max_deg_f < 0 or (self.max_deg_tilde is not None and self.max_deg_tilde < 0):
            raise ValueError("degree bounds must be nonnegative")


def search_space_size(field: FiniteField, cfg: SearchConfig) -> int:
    """Upper bound q^(2(d+1)) on the (numerator, denominator) pairs of degree <= d."""
    return field.q ** (2 * (cfg.max_deg_f + 1))


def _polys_upto(field: FiniteField, d: int) -> Iterator[tuple[int, ...]]:
    # lexicographic in (c_d, ..., c_0)
    for high_first in itertools.product(range(field.q), repeat=d + 1):
        yield tuple(reversed(high_first))


def monic_denominators(field: FiniteField, max_deg: int) -> list[Polynomial]:
    out = []
    for e in range(max_deg + 1):
        for low in itertools.product(range(field.q), repeat=e):
            out.append(Polynomial._raw(field, tuple(reversed(low)) + (1,)))
    return out


def _candidates_for_den(field: FiniteField, den: Polynomial, d: int) -> Iterator[RationalFunction]:
    for coeffs in _polys_upto(field, d):
        num = Polynomial._raw(field, coeffs)
        if max(num.degree, den.degree) != d:
            continue
        if den.degree > 0 and not num.is_zero() and poly_gcd(num, den).degree > 0:
            continue
        if num.is_zero() or (den.degree == 0 and num.degree == 0):
            continue
        yield RationalFunction._canonical(num, den)


def enumerate_f(field: FiniteField, max_deg: int) -> Iterator[RationalFunction]:
    """Every nonconstant canonical f with deg f <= max_deg, in search order.

    Order: increasing degree, then denominator (degree, coefficients high
    first), then numerator coefficients high first.
    """
    for d in range(1, max_deg + 1):
        for den in monic_denominators(field, d):
            yield from _candidates_for_den(field, den, d)


def _point_images(r: RationalFunction, q: int) -> list[int | None]:
    return [r.eval_code(x) for x in list(range(q)) + [None]]


class _Checker:
    """Cheap pointwise filter on P^1(F_q) before the symbolic comparison."""

    def __init__(self, a, b, a_tilde, b_tilde):
        self.a, self.b, self.at, self.bt = a, b, a_tilde, b_tilde
        q = a.field.q
        self.a_vals = _point_images(a, q)
        self.b_vals = _point_images(b, q)

    def check(self, f: RationalFunction) -> SubtowerWitness | None:
        at, bt = self.at, self.bt
        for va, vb in zip(self.a_vals, self.b_vals):
            if at.eval_code(f.eval_code(vb)) != bt.eval_code(f.eval_code(va)):
                return None
        w = verify_equation(self.a, self.b, f, at, bt)
        return w if w.equation_holds else None


def _search_chunk(args) -> list[tuple[int, SubtowerWitness]]:
    a, b, a_tilde, b_tilde, dens, d, start = args
    checker = _Checker(a, b, a_tilde, b_tilde)
    out = []
    idx = start
    for den in dens:
        for f in _candidates_for_den(a.field, den, d):
            w = checker.check(f)
            if w is not None:
                out.append((idx, w))
            idx += 1
    return out


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FFTOWERS_JOBS", "1")))
    except ValueError:
        return 1


def search_f(
    a: RationalFunction,
    b: RationalFunction,
    a_tilde: RationalFunction,
    b_tilde: RationalFunction,
    cfg: SearchConfig = SearchConfig(),
) -> list[SubtowerWitness]:
    """All nonconstant f of degree <= cfg.max_deg_f satisfying the functional equation.

    Every witness is verified symbolically; results come back in enumeration
    order regardless of ``cfg.jobs``.
    """
    F = a.field
    for r in (b, a_tilde, b_tilde):
        F.check(r.field)
    size = search_space_size(F, cfg)
    if size > cfg.ceiling:
        raise SearchSpaceTooLarge(size, cfg.ceiling)
    if cfg.max_deg_tilde is not None and max(a_tilde.degree, b_tilde.degree) > cfg.max_deg_tilde:
        return []

    tasks = []
    for d in range(1, cfg.max_deg_f + 1):
        dens = monic_denominators(F, d)
        # partition by denominator; indices are made global after merging
        nparts = max(1, min(len(dens), cfg.jobs * 4))
        step = -(-len(dens) // nparts)
        for i in range(0, len(dens), step):
            tasks.append((a, b, a_tilde, b_tilde, dens[i : i + step], d, 0))

    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_search_chunk, tasks))
    else:
        results = [_search_chunk(t) for t in tasks]
    # chunks are in enumeration order and each chunk is internally ordered
    return [w for chunk in results for _, w in chunk]


@dataclass(frozen=True)
class CatalogHit:
    super_label: str
    sub_label: str
    witnesses: tuple[SubtowerWitness, ...]


def search_catalog(supers: Sequence, subs: Sequence, cfg: SearchConfig = SearchConfig()) -> list[CatalogHit]:
    """Run search_f over every (supertower, subtower) pair of (a, b)-towers."""
    hits = []
    for sup in supers:
        for sub in subs:
            if not (sup.has_ab and sub.has_ab):
                continue
            found = search_f(sup.a, sup.b, sub.a, sub.b, cfg)
            hits.append(CatalogHit(sup.label, sub.label, tuple(found)))
    return hits
