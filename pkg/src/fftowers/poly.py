"""Univariate polynomials over a FiniteField.

Coefficients are stored as a tuple of field codes, index = degree, with
trailing zeros trimmed; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import BothZero, DivisionByZero
from .gf import FieldElement, FiniteField


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable = ()):
        self.field = field
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                field.check(c.field)
                vals.append(c.value)
            else:
                vals.append(field.from_int(c))
        self.coeffs = _trim(vals)

    @classmethod
    def _raw(cls, field: FiniteField, coeffs: Sequence[int]) -> Polynomial:
        # trusted constructor: coeffs are already valid codes
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _trim(list(coeffs)) if coeffs and coeffs[-1] == 0 else tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, field: FiniteField, c) -> Polynomial:
        return cls(field, [c])

    @classmethod
    def x(cls, field: FiniteField) -> Polynomial:
        return cls._raw(field, (0, 1))

    @classmethod
    def monomial(cls, field: FiniteField, k: int, c: int = 1) -> Polynomial:
        return cls._raw(field, (0,) * k + (c,))

    @classmethod
    def from_roots(cls, field: FiniteField, roots: Iterable[int]) -> Polynomial:
        out = cls._raw(field, (1,))
        for r in roots:
            out = out * cls._raw(field, (field.neg(r), 1))
        return out

    # -- basic properties --------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Polynomial:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def scale(self, c: int) -> Polynomial:
        F = self.field
        if c == 0:
            return Polynomial._raw(F, ())
        return Polynomial._raw(F, tuple(F.mul(a, c) for a in self.coeffs))

    # -- ring operations ---------------------------------------------------

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self.field.check(other.field)
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        F = self.field
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial._raw(F, _trim(out))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        F = self.field
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial._raw(F, ())
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial._raw(F, _trim(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial._raw(self.field, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        v = o.coeffs
        dv = len(v) - 1
        if len(r) <= dv:
            return Polynomial._raw(F, ()), self
        inv_lead = F.inv(v[-1])
        q = [0] * (len(r) - dv)
        for shift in range(len(r) - 1 - dv, -1, -1):
            c = r[shift + dv]
            if c == 0:
                continue
            c = F.mul(c, inv_lead)
            q[shift] = c
            for i in range(dv + 1):
                if v[i]:
                    r[shift + i] = F.sub(r[shift + i], F.mul(c, v[i]))
        return Polynomial._raw(F, _trim(q)), Polynomial._raw(F, _trim(r[:dv]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: Polynomial) -> bool:
        return (other % self).is_zero()

    # -- evaluation and calculus --------------------------------------------

    def eval_code(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return self.compose(x)
        if isinstance(x, FieldElement):
            self.field.check(x.field)
            return FieldElement(self.field, self.eval_code(x.value))
        return FieldElement(self.field, self.eval_code(self.field.from_int(x)))

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial._raw(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial._raw(self.field, (c,))
        return acc

    def derivative(self) -> Polynomial:
        F = self.field
        out = [F.mul(F.from_int(k), c) for k, c in enumerate(self.coeffs)][1:]
        return Polynomial._raw(F, _trim(out))

    def shift(self, c: int) -> Polynomial:
        """Return self(T + c)."""
        return self.compose(Polynomial._raw(self.field, (c, 1)))

    def reverse(self, n: int | None = None) -> Polynomial:
        """Return T^n * self(1/T); n defaults to the degree."""
        if n is None:
            n = self.degree
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Polynomial._raw(self.field, _trim(c[: n + 1][::-1]))

    def valuation(self) -> int | None:
        """Order of vanishing at 0 (None for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def roots(self) -> list[int]:
        """Distinct roots in the base field, as codes in enumeration order."""
        if self.is_zero():
            raise ValueError("zero polynomial has every element as a root")
        return [x for x in range(self.field.q) if self.eval_code(x) == 0]

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        d = self.derivative()
        if d.is_zero():
            return False
        return poly_gcd(self, d).degree == 0

    # -- comparison and printing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs and self.field == other.field
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial(self.field, [other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def sort_key(self) -> tuple:
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def format(self, var: str = "T") -> str:
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            cs = F.format_code(c)
            if k == 0:
                terms.append(cs)
                continue
            mono = var if k == 1 else f"{var}^{k}"
            if c == 1:
                terms.append(mono)
            elif F.is_compound(c):
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


def poly_gcd(u: Polynomial, v: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    u.field.check(v.field)
    if u.is_zero() and v.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not v.is_zero():
        u, v = v, u % v
    return u.monic()


def poly_derivative(u: Polynomial) -> Polynomial:
    return u.derivative()


def monic_polynomials(field: FiniteField, degree: int):
    """All monic polynomials of the given degree, in lexicographic coefficient order."""
    for low in itertools.product(range(field.q), repeat=degree):
        yield Polynomial._raw(field, tuple(reversed(low)) + (1,))


def is_irreducible(u: Polynomial) -> bool:
    """Brute-force irreducibility: no monic divisor of degree 1..deg/2."""
    n = u.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for cand in monic_polynomials(u.field, d):
            if cand.divides(u):
                return False
    return True


class Factorization:
    """``unit * prod(f**e for f, e in factors)`` with monic irreducible ``f``."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit: int, factors: list[tuple[Polynomial, int]]):
        self.unit = unit
        self.factors = factors

    def expand(self, field: FiniteField) -> Polynomial:
        out = Polynomial._raw(field, (self.unit,))
        for f, e in self.factors:
            out = out * f**e
        return out

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def linear_roots(self) -> list[tuple[int, int]]:
        """(root code, multiplicity) for each linear factor."""
        return [(f.field.neg(f.coeffs[0]), e) for f, e in self.factors if f.degree == 1]

    def format(self, var: str = "T") -> str:
        parts = []
        for f, e in self.factors:
            s = f.format(var)
            if len(self.factors) > 1 or e > 1 or self.unit != 1:
                if "+" in s:
                    s = f"({s})"
            if e > 1:
                s = f"{s}^{e}"
            parts.append(s)
        body = "".join(parts) if parts else "1"
        if self.unit != 1 and parts:
            return f"{self.factors[0][0].field.format_code(self.unit)}*{body}"
        return body

    def __repr__(self) -> str:
        return f"Factorization({self.format()})"


def poly_factor(u: Polynomial) -> Factorization:
    """Complete factorization over the base field.

    Linear factors are stripped by exhaustive root search; the root-free
    remainder (degree <= 6 at desk scale) is split by trial division against
    monic irreducibles of degree 2..deg/2.
    """
    if u.degree < 1:
        raise ValueError("poly_factor needs a polynomial of degree >= 1")
    F = u.field
    unit = u.lead
    rest = u.monic()
    factors: list[tuple[Polynomial, int]] = []
    for r in range(F.q):
        if rest.eval_code(r) != 0:
            continue
        lin = Polynomial._raw(F, (F.neg(r), 1))
        e = 0
        while True:
            q, rem = divmod(rest, lin)
            if not rem.is_zero():
                break
            rest = q
            e += 1
        factors.append((lin, e))
        if rest.degree < 1:
            break
    d = 2
    while rest.degree >= 2 * d:
        for cand in monic_polynomials(F, d):
            if cand.degree * 2 > rest.degree:
                break
            # every factor of degree < d is already gone, so a divisor here is irreducible
            e = 0
            while True:
                q, rem = divmod(rest, cand)
                if not rem.is_zero():
                    break
                rest = q
                e += 1
            if e:
                factors.append((cand, e))
        d += 1
    if rest.degree >= 1:
        factors.append((rest, 1))
    factors.sort(key=lambda fe: (fe[0].degree, fe[0].sort_key()))
    return Factorization(unit, factors)
