"""Rational functions in canonical form and evaluation on the projective line."""

from __future__ import annotations

from .errors import ZeroDenominator
from .gf import FieldElement, FiniteField
from .poly import Polynomial, poly_gcd


class _Infinity:
    """The point at infinity of P^1; equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


# Points of P^1(F_q) are FieldElements or this singleton.
INF = _Infinity()


def is_infinite(x) -> bool:
    return x is INF


class RationalFunction:
    """``num/den`` with gcd(num, den) = 1 and monic ``den``.

    Construction always canonicalizes, so two instances are equal as
    functions iff their (num, den) pairs are identical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial._raw(num.field, (1,))
        num.field.check(den.field)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Polynomial._raw(num.field, (1,))
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        if den.lead != 1:
            c = num.field.inv(den.lead)
            num, den = num.scale(c), den.scale(c)
        self.num, self.den = num, den

    @classmethod
    def _canonical(cls, num: Polynomial, den: Polynomial) -> RationalFunction:
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def identity(cls, field: FiniteField) -> RationalFunction:
        return cls._canonical(Polynomial.x(field), Polynomial._raw(field, (1,)))

    @classmethod
    def constant(cls, field: FiniteField, c) -> RationalFunction:
        return cls(Polynomial(field, [c]))

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @property
    def degree(self) -> int:
        """max(deg num, deg den); constants have degree 0."""
        return max(self.num.degree, self.den.degree, 0)

    def is_constant(self) -> bool:
        return self.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    # -- composition and evaluation ------------------------------------------

    def compose(self, inner: RationalFunction) -> RationalFunction:
        """Return ``self o inner``, i.e. T -> self(inner(T))."""
        self.field.check(inner.field)
        D = self.degree
        u, v = inner.num, inner.den
        # powers of u and v up to D
        upow = [Polynomial._raw(self.field, (1,))]
        vpow = [Polynomial._raw(self.field, (1,))]
        for _ in range(D):
            upow.append(upow[-1] * u)
            vpow.append(vpow[-1] * v)

        def homogenize(p: Polynomial) -> Polynomial:
            acc = Polynomial._raw(self.field, ())
            for k, c in enumerate(p.coeffs):
                if c:
                    acc = acc + (upow[k] * vpow[D - k]).scale(c)
            return acc

        return RationalFunction(homogenize(self.num), homogenize(self.den))

    def __call__(self, x):
        return rat_eval(self, x)

    def eval_code(self, x: int | None) -> int | None:
        """Projective evaluation on codes; None stands for infinity."""
        F = self.field
        n, d = self.num, self.den
        if x is None:
            if n.degree > d.degree:
                return None
            if n.degree < d.degree:
                return 0
            return F.div(n.lead, d.lead)
        dv = d.eval_code(x)
        if dv == 0:
            return None
        return F.div(n.eval_code(x), dv)

    # -- field operations (used by the expression parser) --------------------

    def _lift(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._canonical(-self.num, self.den)

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
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int) -> RationalFunction:
        if k < 0:
            return RationalFunction.constant(self.field, 1) / self ** (-k)
        return RationalFunction._canonical(self.num**k, self.den**k)

    # -- comparison and printing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Polynomial):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def format(self, var: str = "T") -> str:
        n = self.num.format(var)
        if self.den.degree == 0:
            return n
        d = self.den.format(var)
        # coefficients like g+1 carry their own operators
        if any(op in n[1:] for op in "+-"):
            n = f"({n})"
        if any(op in d for op in "+-*"):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalFunction({self.format()})"


def rat_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    return RationalFunction(num, den)


def rat_compose(outer: RationalFunction, inner: RationalFunction) -> RationalFunction:
    return outer.compose(inner)


def rat_degree(r: RationalFunction) -> int:
    return r.degree


def rat_eval(r: RationalFunction, x):
    """Evaluate r as a morphism P^1 -> P^1 at a FieldElement or INF."""
    if x is INF:
        code = None
    else:
        if not isinstance(x, FieldElement):
            x = r.field(x)
        r.field.check(x.field)
        code = x.value
    out = r.eval_code(code)
    return INF if out is None else FieldElement(r.field, out)


def projective_line(field: FiniteField) -> list:
    """P^1(F_q) in enumeration order, with INF last."""
    return field.enumerate() + [INF]
