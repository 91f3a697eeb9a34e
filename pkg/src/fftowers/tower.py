"""(a,b)-recursive towers and their static checks.

A tower step is a(x_{i+1}) = b(x_i), encoded by the bivariate polynomial
H(S, T) = a1(T) b2(S) - a2(T) b1(S).  Steps that are not of this shape (the
quadratic model of the L tower, for instance) are given by H directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from enum import Enum

from .bivariate import (
    BivariatePolynomial,
    SeparabilityCertificate,
    defining_polynomial,
    step_separability,
)
from .gf import FiniteField
from .poly import Polynomial, poly_gcd
from .ratfunc import RationalFunction


@dataclass(frozen=True, eq=False)
class TowerDef:
    field: FiniteField
    a: RationalFunction | None = None
    b: RationalFunction | None = None
    H: BivariatePolynomial | None = None
    label: str = ""
    old_var: str = dc_field(default="x", compare=False)
    new_var: str = dc_field(default="y", compare=False)

    def __post_init__(self):
        if self.H is None:
            if self.a is None or self.b is None:
                raise ValueError("a tower needs (a, b) or an explicit H")
            self.field.check(self.a.field)
            self.field.check(self.b.field)
            if self.a.is_constant() or self.b.is_constant():
                raise ValueError("a and b must be nonconstant")
            object.__setattr__(self, "H", defining_polynomial(self.a, self.b))
        else:
            self.field.check(self.H.field)
            if self.H.deg_t < 1:
                raise ValueError("H must involve the new variable")

    @classmethod
    def from_bivariate(cls, H: BivariatePolynomial, label: str = "", old_var="x", new_var="y") -> TowerDef:
        return cls(H.field, H=H, label=label, old_var=old_var, new_var=new_var)

    @property
    def has_ab(self) -> bool:
        return self.a is not None

    @property
    def step_degree(self) -> int:
        """m = deg_T H (equals deg a for (a,b)-towers)."""
        return self.H.deg_t

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TowerDef)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
            and self.H == other.H
            and self.label == other.label
        )

    def __hash__(self) -> int:
        return hash((self.label, self.H))

    def describe(self) -> str:
        if self.has_ab:
            return f"a = {self.a.format(self.new_var)}, b = {self.b.format(self.old_var)}"
        return f"H = {self.H.format(self.old_var, self.new_var)}"


class Shape(Enum):
    LEMMA1 = "Lemma1"
    REMARK = "Remark"
    NEITHER = "Neither"


class Conclusion(Enum):
    TOTALLY_RAMIFIED_INFINITY = "TotallyRamifiedInfinity"
    NO_CONCLUSION = "NoConclusion"


@dataclass(frozen=True)
class DegreeProfile:
    m: int
    deg_b1: int
    deg_b2: int
    r: int | None


@dataclass(frozen=True)
class LemmaOneReport:
    shape: Shape
    conditions: tuple[tuple[str, bool], ...]
    conclusion: Conclusion
    profile: DegreeProfile | None = None
    notes: tuple[str, ...] = ()

    @property
    def totally_ramified(self) -> bool:
        return self.conclusion is Conclusion.TOTALLY_RAMIFIED_INFINITY


def _coprime(u: Polynomial, v: Polynomial) -> bool:
    return poly_gcd(u, v).degree == 0


def _is_pure_power(a: RationalFunction) -> bool:
    c = a.num.coeffs
    return a.is_polynomial() and c[-1] == 1 and all(x == 0 for x in c[:-1])


def _lemma1_conditions(a, b1, b2) -> tuple[list[tuple[str, bool]], int | None]:
    m = a.degree
    r = m - b2.degree
    conds = [
        ("a is a polynomial", a.is_polynomial()),
        ("gcd(a, b1) = 1", _coprime(a.num, b1)),
        ("gcd(b1, b2) = 1", _coprime(b1, b2)),
        ("deg a = deg b1 = m >= 2", m >= 2 and b1.degree == m),
        ("deg b2 = m - r with r >= 1", r >= 1),
        ("gcd(m, r) = 1", r >= 1 and math.gcd(m, r) == 1),
    ]
    return conds, r


def _remark_conditions(a, b1, b2) -> tuple[list[tuple[str, bool]], int | None, str]:
    m = a.degree
    # literal reading: deg b2 = m, deg b1 = m - r; mirrored: deg b1 = m, deg b2 = m - r
    if b2.degree == m:
        orientation, r = "deg b2 = m, deg b1 = m - r", m - b1.degree
    else:
        orientation, r = "deg b1 = m, deg b2 = m - r", m - b2.degree
    conds = [
        ("a = T^m", _is_pure_power(a)),
        ("gcd(a, b1) = 1", _coprime(a.num, b1)),
        ("gcd(b1, b2) = 1", _coprime(b1, b2)),
        ("m >= 2", m >= 2),
        (orientation, max(b1.degree, b2.degree) == m and r >= 1),
        ("gcd(m, r) = 1", r >= 1 and math.gcd(m, r) == 1),
    ]
    return conds, r, orientation


def check_lemma1(t: TowerDef) -> LemmaOneReport:
    """Test the degree/coprimality hypotheses that force total ramification at infinity.

    Two shapes are recognized: the general one (a polynomial, deg a = deg b1
    = m, deg b2 = m - r, gcd(m, r) = 1) and the pure-power one (a = T^m with
    the degrees of b1, b2 being m and m - r in either order).  Failing both
    is a verdict, not an error.
    """
    if not t.has_ab:
        return LemmaOneReport(
            Shape.NEITHER,
            (("tower given by (a, b)", False),),
            Conclusion.NO_CONCLUSION,
            notes=("explicit bivariate step: no (a, b) shape to test",),
        )
    a, b1, b2 = t.a, t.b.num, t.b.den
    notes = []
    if _is_pure_power(a):
        conds, r, orientation = _remark_conditions(a, b1, b2)
        profile = DegreeProfile(a.degree, b1.degree, b2.degree, r)
        notes.append("pure-power shape: 'deg a(T)=T^m' read as a(T) = T^m")
        if all(ok for _, ok in conds):
            return LemmaOneReport(
                Shape.REMARK, tuple(conds), Conclusion.TOTALLY_RAMIFIED_INFINITY, profile,
                tuple(notes + [orientation]),
            )
    conds, r = _lemma1_conditions(a, b1, b2)
    profile = DegreeProfile(a.degree, b1.degree, b2.degree, r)
    if all(ok for _, ok in conds):
        return LemmaOneReport(Shape.LEMMA1, tuple(conds), Conclusion.TOTALLY_RAMIFIED_INFINITY, profile)
    return LemmaOneReport(Shape.NEITHER, tuple(conds), Conclusion.NO_CONCLUSION, profile, tuple(notes))


def check_separability(t: TowerDef) -> SeparabilityCertificate:
    return step_separability(t.H)


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    unit: int | None
    caution: str = ""

    def __str__(self) -> str:
        return "Symmetric" if self.symmetric else "Asymmetric"


SYMMETRY_CAUTION = (
    "H(S,T) is symmetric up to a unit: if H is absolutely irreducible and the step "
    "extension is Galois, the sequence collapses (F_i inside F_1 for all i >= 1)"
)


def check_symmetry(t: TowerDef) -> SymmetryReport:
    """Is H(S, T) = u * H(T, S) for a nonzero constant u?"""
    H = t.H
    Hs = H.swap()
    F = t.field
    terms, swapped = H.terms(), Hs.terms()
    if set(terms) != set(swapped) or not terms:
        return SymmetryReport(False, None)
    key = min(terms)
    u = F.div(terms[key], swapped[key])
    if all(F.mul(u, swapped[k]) == v for k, v in terms.items()):
        return SymmetryReport(True, u, SYMMETRY_CAUTION)
    return SymmetryReport(False, None)
