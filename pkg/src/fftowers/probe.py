"""Finite-level place probing: Kummer specialization, rational-place census, split tests.

A node is a rational place Q of F_i lying over x_i = beta.  It is described
by its center beta (a code, or None for infinity) and by e = v_Q(t), where t
is x_i - beta (or 1/x_i at infinity).  Everything about the places above Q
is read off the step polynomial H(x_i, T) written in the local coordinate t,
so node expansion is a pure function of (center, e).

Repeated rational roots of the reduction ("clusters") are resolved, in order,
by a Newton-polygon certificate of total ramification, then by the bounded
substitution search u = (y - c) * t^k.  A cluster that survives both is left
unresolved and widens the census bracket.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field, replace
from enum import Enum
from functools import lru_cache
from math import comb

from .errors import LevelCapExceeded
from .poly import Factorization, Polynomial, poly_factor
from .tower import TowerDef, check_lemma1

DEFAULT_LEVEL_CAP = 8
SUBSTITUTION_ORDER = (0, -1, 1, -2, 2, -3, 3)

Center = int | None  # field code, None for infinity


# -- local forms: lists of polynomials in t indexed by the power of T ----------

def _zero(F):
    return Polynomial._raw(F, ())


def _content_free(rows: list[Polynomial]) -> list[Polynomial]:
    """Divide out the largest power of t common to every row."""
    vals = [r.valuation() for r in rows if not r.is_zero()]
    k = min(vals)
    if k == 0:
        return rows
    return [Polynomial._raw(r.field, r.coeffs[k:]) if not r.is_zero() else r for r in rows]


def _ord(r: Polynomial) -> int | None:
    return r.valuation()


def local_form(t: TowerDef, center: Center) -> list[Polynomial]:
    """H(x, T) rewritten in t = x - beta (or t = 1/x), content removed.

    The result keeps all m + 1 rows so that T-degree m is explicit.
    """
    H = t.H
    m = H.deg_t
    if center is None:
        D = H.deg_s
        rows = [r.reverse(D) if not r.is_zero() else r for r in H.rows]
    else:
        rows = [r.shift(center) for r in H.rows]
    rows = rows + [_zero(t.field)] * (m + 1 - len(rows))
    return _content_free(rows)


def _reduce(rows: list[Polynomial]) -> Polynomial:
    F = rows[0].field
    return Polynomial._raw(F, [r.coeff(0) for r in rows])


def _shift_t(rows: list[Polynomial], c: int) -> list[Polynomial]:
    """Rows of G(t, c + w) as a polynomial in w."""
    F = rows[0].field
    n = len(rows)
    out = [_zero(F)] * n
    cpow = [1]
    for _ in range(n):
        cpow.append(F.mul(cpow[-1], c))
    for j, r in enumerate(rows):
        if r.is_zero():
            continue
        for k in range(j + 1):
            coef = F.mul(F.from_int(comb(j, k) % F.p), cpow[j - k])
            if coef:
                out[k] = out[k] + r.scale(coef)
    return out


def _times_t_power(r: Polynomial, k: int) -> Polynomial:
    if r.is_zero() or k == 0:
        return r
    return Polynomial._raw(r.field, (0,) * k + r.coeffs)


# -- projective reductions -------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveReduction:
    """A binary form of degree m given by its affine part and the multiplicity at infinity."""

    poly: Polynomial  # monic affine part
    factorization: Factorization | None  # None when poly is constant
    infinity: int
    degree: int

    @classmethod
    def of(cls, phi: Polynomial, m: int) -> ProjectiveReduction:
        monic = phi.monic()
        fac = poly_factor(monic) if monic.degree >= 1 else None
        return cls(monic, fac, m - monic.degree, m)

    def rational_roots(self) -> list[tuple[Center, int]]:
        out: list[tuple[Center, int]] = []
        if self.factorization is not None:
            out.extend(self.factorization.linear_roots())
        if self.infinity:
            out.append((None, self.infinity))
        return out

    def nonlinear(self) -> list[tuple[Polynomial, int]]:
        if self.factorization is None:
            return []
        return [(f, e) for f, e in self.factorization.factors if f.degree >= 2]

    def is_squarefree(self) -> bool:
        return self.infinity <= 1 and (self.factorization is None or self.factorization.is_squarefree())

    def format(self, var: str = "T") -> str:
        s = self.factorization.format(var) if self.factorization is not None else "1"
        if self.infinity:
            s += f" [inf^{self.infinity}]" if self.infinity > 1 else " [inf]"
        return s


# -- nodes -----------------------------------------------------------------------

class NodeStatus(Enum):
    SPLIT = "Split"
    INERT = "Inert"
    TOTALLY_RAMIFIED = "TotallyRamified"
    PARTIAL = "Partial"
    RAMIFIED_SUSPECT = "RamifiedSuspect"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Substitution:
    """u = (y - c) * t^k, t the local coordinate at the node's center."""

    k: int
    c: int

    def format(self, field) -> str:
        y = "y" if self.c == 0 else f"(y-{field.format_code(self.c)})"
        if self.k == 0:
            return y
        if self.k < 0:
            return f"{y}/t" if self.k == -1 else f"{y}/t^{-self.k}"
        return f"{y}*t" if self.k == 1 else f"{y}*t^{self.k}"


@dataclass(frozen=True)
class ChildPlace:
    """A rational place above the node.

    ``center`` is the residue of x_{i+1}, ``label`` the residue of the local
    coordinate that separated it (differs from center under a substitution),
    ``e`` the valuation of the next-level coordinate and ``ramification`` the
    ramification index over the parent.
    """

    center: Center
    label: Center
    e: int
    ramification: int
    via: str


@dataclass(frozen=True)
class InertFactor:
    factor: Polynomial
    multiplicity: int
    via: str

    @property
    def degree(self) -> int:
        return self.factor.degree


@dataclass(frozen=True)
class Cluster:
    root: Center
    multiplicity: int


@dataclass(frozen=True)
class PlaceNode:
    level: int
    center: Center
    e: int
    status: NodeStatus
    reduction: ProjectiveReduction
    children: tuple[ChildPlace, ...]
    inert: tuple[InertFactor, ...]
    unresolved: tuple[Cluster, ...]
    substitutions: tuple[Substitution, ...] = ()
    plain_children: tuple[int, ...] = ()
    notes: tuple[str, ...] = dc_field(default=())

    @property
    def substitution_used(self) -> Substitution | None:
        return self.substitutions[0] if self.substitutions else None

    @property
    def inert_degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.inert)

    def mass(self) -> int:
        """Ramification-weighted count of everything above the node; equals m."""
        return (
            sum(c.ramification for c in self.children)
            + sum(f.degree * f.multiplicity for f in self.inert)
            + sum(c.multiplicity for c in self.unresolved)
        )


# -- cluster resolution ------------------------------------------------------------

def _cluster_rows(rows: list[Polynomial], root: Center) -> list[Polynomial]:
    """Move the cluster to w = 0 (chart w = 1/T at infinity)."""
    if root is None:
        return list(reversed(rows))
    return _shift_t(rows, root)


def _newton_certificate(rows, root: Center, r: int, e: int) -> ChildPlace | None:
    """Single Newton segment with coprime slope: one rational place, ramification r."""
    w = _cluster_rows(rows, root)
    V = [_ord(x) for x in w[: r + 1]]
    V0 = V[0]
    if V0 is None or V[r] != 0:
        return None
    for j in range(1, r):
        if V[j] is not None and V[j] * r < V0 * (r - j):
            return None
    if math.gcd(e * V0, r) != 1:
        return None
    return ChildPlace(root, root, e * V0, r, "newton")


def _substitute(rows: list[Polynomial], k: int, c: int) -> list[Polynomial]:
    """Local form of u = (y - c) * t^k, content removed."""
    m = len(rows) - 1
    shifted = _shift_t(rows, c)
    if k < 0:
        out = [_times_t_power(r, -k * j) for j, r in enumerate(shifted)]
    else:
        out = [_times_t_power(r, k * (m - j)) for j, r in enumerate(shifted)]
    return _content_free(out)


@dataclass(frozen=True)
class _Resolution:
    children: tuple[ChildPlace, ...]
    inert: tuple[InertFactor, ...]
    substitution: Substitution


def _try_substitution(rows, root: Center, r: int, e: int, k: int, c: int) -> _Resolution | None:
    m = len(rows) - 1
    F = rows[0].field
    if k == 0:
        return None  # a pure translation never changes the reduction
    if k < 0 and (root is None or c != root):
        return None
    if k > 0 and root is not None:
        return None
    u_rows = _substitute(rows, k, c)
    red = ProjectiveReduction.of(_reduce(u_rows), m)
    K = abs(k)
    children, inert = [], []
    if k < 0:
        # roots outside the cluster are pushed to u = infinity
        if red.infinity != m - r:
            return None
        if red.factorization is None or not red.factorization.is_squarefree():
            return None
        for u0, _ in red.factorization.linear_roots():
            extra = 0
            if u0 == 0:
                o = _ord(u_rows[0])
                if o is None:
                    return None
                extra = e * o
            children.append(ChildPlace(root, u0, K * e + extra, 1, "substitution"))
    else:
        # roots outside the cluster are pushed to u = 0
        z = red.poly.valuation() if red.factorization is not None else 0
        if z != m - r or red.infinity > 1:
            return None
        if red.factorization is not None:
            for f, mult in red.factorization.factors:
                if f.degree == 1 and f.coeffs[0] == 0:
                    continue
                if mult > 1:
                    return None
        if red.factorization is not None:
            for u0, _ in red.factorization.linear_roots():
                if u0 != 0:
                    children.append(ChildPlace(None, u0, K * e, 1, "substitution"))
        if red.infinity == 1:
            o = _ord(u_rows[m])
            if o is None:
                return None
            children.append(ChildPlace(None, None, K * e + e * o, 1, "substitution"))
    for f, mult in red.nonlinear():
        inert.append(InertFactor(f, mult, "substitution"))
    return _Resolution(tuple(children), tuple(inert), Substitution(k, c))


def _resolve_by_substitution(rows, root: Center, r: int, e: int) -> _Resolution | None:
    q = rows[0].field.q
    for k in SUBSTITUTION_ORDER:
        for c in range(q):
            res = _try_substitution(rows, root, r, e, k, c)
            if res is not None:
                return res
    return None


# -- specialization ------------------------------------------------------------------

def _simple_child(rows, root: Center, e: int) -> ChildPlace | None:
    """Unramified child at a simple root; e is scaled by ord_t G(t, root)."""
    w = _cluster_rows(rows, root)
    o = _ord(w[0])
    if o is None:
        return None
    return ChildPlace(root, root, e * o, 1, "kummer")


@lru_cache(maxsize=None)
def _lemma1_r(t: TowerDef) -> int | None:
    rep = check_lemma1(t)
    if rep.totally_ramified and rep.profile is not None and rep.profile.deg_b1 == rep.profile.m:
        return rep.profile.r
    return None


def specialize_step(t: TowerDef, beta: Center, e: int = 1, level: int = 0) -> PlaceNode:
    """Classify the places of F_{level+1} above the node (beta, e)."""
    m = t.step_degree
    rows = local_form(t, beta)
    red = ProjectiveReduction.of(_reduce(rows), m)
    children: list[ChildPlace] = []
    inert: list[InertFactor] = []
    unresolved: list[Cluster] = []
    subs: list[Substitution] = []
    notes: list[str] = []
    degenerate = False

    plain: tuple[int, ...] = ()
    if beta is not None and not t.H.specialize_s(beta).is_zero():
        # the naive reduction H(beta, T) is the local one: keep its simple finite roots
        plain = tuple(g for g, mult in red.rational_roots() if mult == 1 and g is not None)

    for f, mult in red.nonlinear():
        inert.append(InertFactor(f, mult, "kummer"))

    for root, mult in red.rational_roots():
        if mult == 1:
            ch = _simple_child(rows, root, e)
            if ch is None:
                degenerate = True
                unresolved.append(Cluster(root, 1))
                notes.append("step polynomial has a constant root")
            else:
                children.append(ch)
            continue
        ch = _newton_certificate(rows, root, mult, e)
        if ch is not None:
            children.append(ch)
            continue
        res = _resolve_by_substitution(rows, root, mult, e)
        if res is not None:
            children.extend(res.children)
            inert.extend(res.inert)
            subs.append(res.substitution)
            continue
        r = _lemma1_r(t) if t.has_ab else None
        if beta is None and root is None and mult == m and r is not None:
            children.append(ChildPlace(None, None, r * e, m, "lemma1"))
            notes.append("total ramification taken from the degree and coprimality hypotheses")
            continue
        unresolved.append(Cluster(root, mult))

    if degenerate:
        status = NodeStatus.UNRESOLVED
    elif unresolved:
        status = NodeStatus.RAMIFIED_SUSPECT
    elif len(children) == m and all(c.ramification == 1 for c in children):
        status = NodeStatus.SPLIT
    elif not children:
        status = NodeStatus.INERT
    elif len(children) == 1 and children[0].ramification == m:
        status = NodeStatus.TOTALLY_RAMIFIED
    else:
        status = NodeStatus.PARTIAL
    return PlaceNode(
        level, beta, e, status, red, tuple(children), tuple(inert), tuple(unresolved),
        tuple(subs), plain, tuple(notes),
    )


class _Expander:
    """Memoized node expansion for one tower."""

    def __init__(self, t: TowerDef):
        self.t = t
        self._cache: dict[tuple[Center, int], PlaceNode] = {}

    def node(self, center: Center, e: int, level: int = 0) -> PlaceNode:
        key = (center, e)
        n = self._cache.get(key)
        if n is None:
            n = specialize_step(self.t, center, e, 0)
            self._cache[key] = n
        return n if n.level == level else replace(n, level=level)


# -- factor tables ------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorRow:
    beta: Center
    b_value: Center | str  # b(beta) for (a, b)-towers, "" otherwise
    reduction: ProjectiveReduction
    status: NodeStatus


def factor_table(t: TowerDef, betas) -> list[FactorRow]:
    """Monic reduction of the step polynomial at each center and its factorization."""
    out = []
    for beta in betas:
        node = specialize_step(t, beta)
        bval = t.b.eval_code(beta) if t.has_ab else ""
        out.append(FactorRow(beta, bval, node.reduction, node.status))
    return out


# -- census ------------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaceCensus:
    q: int
    m: int
    levels: int
    rational_places: tuple[int, ...]
    upper_bound: tuple[int, ...]
    unresolved_nodes: tuple[int, ...]
    inert_places: tuple[int, ...]
    affine_chains: tuple[int, ...]
    plain_chains: tuple[int, ...]
    by_seed: dict = dc_field(compare=False)
    statuses: tuple[Counter, ...] = dc_field(compare=False, default=())

    @property
    def degrees(self) -> tuple[int, ...]:
        """[F_i : F_0] = m^i."""
        return tuple(self.m**i for i in range(self.levels + 1))

    @property
    def exact(self) -> bool:
        return all(u == 0 for u in self.unresolved_nodes)


def _expand_lineage(ex: _Expander, seed: Center, levels: int):
    """Per-level counts for the lineage rooted at one level-0 center."""
    m = ex.t.step_degree
    frontier: Counter = Counter({(seed, 1): 1})
    plain_frontier: Counter = Counter({seed: 1} if seed is not None else {})
    rational, upper, unresolved, inert = [1], [1], [0], [0]
    plain = [1 if seed is not None else 0]
    statuses = [Counter()]
    pending = 0  # upper-bound mass carried by unresolved clusters
    for level in range(levels):
        nxt: Counter = Counter()
        n_unres = n_inert = 0
        status_count: Counter = Counter()
        new_pending = pending * m
        for (center, e), mult in frontier.items():
            node = ex.node(center, e, level)
            status_count[node.status] += mult
            for ch in node.children:
                nxt[(ch.center, ch.e)] += mult
            n_inert += mult * len(node.inert)
            for cl in node.unresolved:
                n_unres += mult
                new_pending += mult * cl.multiplicity
        plain_next: Counter = Counter()
        for center, mult in plain_frontier.items():
            for g in ex.node(center, 1, level).plain_children:
                plain_next[g] += mult
        frontier, plain_frontier, pending = nxt, plain_next, new_pending
        plain.append(sum(plain_frontier.values()))
        lower = sum(frontier.values())
        rational.append(lower)
        upper.append(lower + pending)
        unresolved.append(n_unres)
        inert.append(n_inert)
        statuses[-1] = status_count
        statuses.append(Counter())
    return rational, upper, unresolved, inert, plain, statuses


def lineage_counts(t: TowerDef, beta: Center, levels: int) -> list[int]:
    """Rational places above x_0 = beta at levels 0..levels (lower bounds)."""
    return _expand_lineage(_Expander(t), beta, levels)[0]


def _successors(t: TowerDef) -> list[list[int]]:
    """succ[x] = values y with H(x, y) = 0 and every step denominator nonzero."""
    F = t.field
    q = F.q
    if t.has_ab:
        b2, a2 = t.b.den, t.a.den
        ok_old = [b2.eval_code(x) != 0 for x in range(q)]
        ok_new = [a2.eval_code(y) != 0 for y in range(q)]
    else:
        lc = t.H.leading_t()
        ok_old = [lc.eval_code(x) != 0 for x in range(q)]
        ok_new = [True] * q
    succ = []
    for x in range(q):
        if not ok_old[x]:
            succ.append([])
            continue
        hx = t.H.specialize_s(x)
        succ.append([y for y in range(q) if ok_new[y] and hx.eval_code(y) == 0])
    return succ


def affine_chain_counts(t: TowerDef, levels: int) -> list[int]:
    """Number of tuples (x_0..x_i) in F_q^{i+1} satisfying i steps, for i = 0..levels."""
    succ = _successors(t)
    ways = [1] * t.field.q
    out = [t.field.q]
    for _ in range(levels):
        nxt = [0] * t.field.q
        for x, w in enumerate(ways):
            if w:
                for y in succ[x]:
                    nxt[y] += w
        ways = nxt
        out.append(sum(ways))
    return out


def census(t: TowerDef, levels: int, cap: int = DEFAULT_LEVEL_CAP) -> PlaceCensus:
    """Rational-place census of F_0..F_levels, expanding every center of P^1(F_q).

    Counts are exact when no node is unresolved; otherwise ``rational_places``
    is a lower bound and ``upper_bound`` the matching upper bound.
    """
    if levels < 0:
        raise ValueError("levels must be nonnegative")
    if levels > cap:
        raise LevelCapExceeded(f"{levels} levels requested, cap is {cap}")
    ex = _Expander(t)
    q, m = t.field.q, t.step_degree
    seeds: list[Center] = list(range(q)) + [None]
    zeros = [0] * (levels + 1)
    rational, upper, unres, inert = list(zeros), list(zeros), list(zeros), list(zeros)
    statuses = [Counter() for _ in range(levels + 1)]
    plain = list(zeros)
    by_seed = {}
    for s in seeds:
        r, u, un, ine, pl, st = _expand_lineage(ex, s, levels)
        by_seed[s] = tuple(r)
        for i in range(levels + 1):
            rational[i] += r[i]
            upper[i] += u[i]
            unres[i] += un[i]
            inert[i] += ine[i]
            plain[i] += pl[i]
            statuses[i].update(st[i])
    return PlaceCensus(
        q, m, levels, tuple(rational), tuple(upper), tuple(unres), tuple(inert),
        tuple(affine_chain_counts(t, levels)), tuple(plain), by_seed, tuple(statuses),
    )


# -- split test ----------------------------------------------------------------------------

class SplitOutcome(Enum):
    SPLITS_COMPLETELY = "SplitsCompletely"
    FAILS_AT_LEVEL = "FailsAtLevel"
    UNRESOLVED_AT_LEVEL = "UnresolvedAtLevel"


@dataclass(frozen=True)
class SplitVerdict:
    outcome: SplitOutcome
    level: int | None = None
    substitutions: tuple[Substitution, ...] = ()

    def __str__(self) -> str:
        if self.outcome is SplitOutcome.SPLITS_COMPLETELY:
            return self.outcome.value
        return f"{self.outcome.value}({self.level})"


def _not_split(n: PlaceNode) -> bool:
    """Some place above n is certainly ramified or of degree >= 2."""
    if n.inert or any(c.ramification > 1 for c in n.children):
        return True
    return n.status is not NodeStatus.SPLIT and not n.unresolved


def split_test(t: TowerDef, beta: Center, levels: int) -> SplitVerdict:
    """Does the place x_0 = beta split completely in F_1..F_levels?"""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    ex = _Expander(t)
    frontier: Counter = Counter({(beta, 1): 1})
    used: list[Substitution] = []
    for level in range(levels):
        nodes = [ex.node(c, e, level) for c, e in frontier]
        for n in nodes:
            for s in n.substitutions:
                if s not in used:
                    used.append(s)
        if any(_not_split(n) for n in nodes):
            return SplitVerdict(SplitOutcome.FAILS_AT_LEVEL, level + 1, tuple(used))
        if any(n.status is not NodeStatus.SPLIT for n in nodes):
            return SplitVerdict(SplitOutcome.UNRESOLVED_AT_LEVEL, level + 1, tuple(used))
        nxt: Counter = Counter()
        for (c, e), mult in frontier.items():
            for ch in ex.node(c, e, level).children:
                nxt[(ch.center, ch.e)] += mult
        frontier = nxt
    return SplitVerdict(SplitOutcome.SPLITS_COMPLETELY, None, tuple(used))
