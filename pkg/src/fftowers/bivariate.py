"""Bivariate step polynomials H(S, T) and the separability resultant.

H is stored as a tuple of polynomials in S indexed by the T-degree, so
``H = sum(rows[j](S) * T**j)``.  S is the lower-level variable x_i and T the
new variable x_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf import FiniteField
from .poly import Polynomial
from .ratfunc import RationalFunction


def _zero(F):
    return Polynomial._raw(F, ())


class BivariatePolynomial:
    __slots__ = ("field", "rows")

    def __init__(self, field: FiniteField, rows: Sequence[Polynomial]):
        rows = list(rows)
        while rows and rows[-1].is_zero():
            rows.pop()
        self.field = field
        self.rows = tuple(rows)

    @classmethod
    def from_dict(cls, field: FiniteField, terms: dict[tuple[int, int], int]) -> BivariatePolynomial:
        """Build from ``{(s_degree, t_degree): code}``."""
        if not terms:
            return cls(field, [])
        tdeg = max(j for _, j in terms)
        rows = []
        for j in range(tdeg + 1):
            sdeg = max((i for i, jj in terms if jj == j), default=-1)
            c = [0] * (sdeg + 1)
            for (i, jj), v in terms.items():
                if jj == j:
                    c[i] = v
            rows.append(Polynomial._raw(field, tuple(c)))
        return cls(field, rows)

    def terms(self) -> dict[tuple[int, int], int]:
        return {
            (i, j): c
            for j, row in enumerate(self.rows)
            for i, c in enumerate(row.coeffs)
            if c
        }

    @property
    def deg_t(self) -> int:
        return len(self.rows) - 1

    @property
    def deg_s(self) -> int:
        return max((r.degree for r in self.rows), default=-1)

    def is_zero(self) -> bool:
        return not self.rows

    def coeff(self, i: int, j: int) -> int:
        return self.rows[j].coeff(i) if j < len(self.rows) else 0

    def swap(self) -> BivariatePolynomial:
        """Return H(T, S)."""
        return BivariatePolynomial.from_dict(self.field, {(j, i): c for (i, j), c in self.terms().items()})

    def scale(self, c: int) -> BivariatePolynomial:
        return BivariatePolynomial(self.field, [r.scale(c) for r in self.rows])

    def specialize_s(self, s: int) -> Polynomial:
        """H(s, T) for a field code s."""
        return Polynomial._raw(self.field, tuple(r.eval_code(s) for r in self.rows))

    def evaluate(self, s: int, t: int) -> int:
        return self.specialize_s(s).eval_code(t)

    def derivative_t(self) -> BivariatePolynomial:
        F = self.field
        return BivariatePolynomial(F, [r.scale(F.from_int(j)) for j, r in enumerate(self.rows)][1:])

    def leading_t(self) -> Polynomial:
        return self.rows[-1] if self.rows else _zero(self.field)

    # -- ring operations used by the parser ---------------------------------

    def __add__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        n = max(len(self.rows), len(other.rows))
        z = _zero(self.field)
        return BivariatePolynomial(
            self.field,
            [
                (self.rows[j] if j < len(self.rows) else z) + (other.rows[j] if j < len(other.rows) else z)
                for j in range(n)
            ],
        )

    def __neg__(self) -> BivariatePolynomial:
        return BivariatePolynomial(self.field, [-r for r in self.rows])

    def __sub__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        return self + (-other)

    def __mul__(self, other: BivariatePolynomial) -> BivariatePolynomial:
        if not self.rows or not other.rows:
            return BivariatePolynomial(self.field, [])
        out = [_zero(self.field)] * (len(self.rows) + len(other.rows) - 1)
        for i, a in enumerate(self.rows):
            if a.is_zero():
                continue
            for j, b in enumerate(other.rows):
                out[i + j] = out[i + j] + a * b
        return BivariatePolynomial(self.field, out)

    def __pow__(self, k: int) -> BivariatePolynomial:
        out = BivariatePolynomial(self.field, [Polynomial._raw(self.field, (1,))])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePolynomial) and self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def format(self, s: str = "S", t: str = "T") -> str:
        F = self.field
        parts = []
        for (i, j), c in sorted(self.terms().items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = []
            if i:
                mono.append(s if i == 1 else f"{s}^{i}")
            if j:
                mono.append(t if j == 1 else f"{t}^{j}")
            cs = F.format_code(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append("*".join(mono))
            else:
                parts.append(f"({cs})*" + "*".join(mono) if F.is_compound(c) else f"{cs}*" + "*".join(mono))
        return "+".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.format()})"


def defining_polynomial(a: RationalFunction, b: RationalFunction) -> BivariatePolynomial:
    """H(S, T) = a1(T) b2(S) - a2(T) b1(S)."""
    a.field.check(b.field)
    F = a.field
    a1, a2 = a.num, a.den
    b1, b2 = b.num, b.den
    n = max(len(a1.coeffs), len(a2.coeffs))
    rows = []
    for j in range(n):
        rows.append(b2.scale(a1.coeff(j)) - b1.scale(a2.coeff(j)))
    return BivariatePolynomial(F, rows)


# -- resultants over F_q[x] ---------------------------------------------------

def sylvester_matrix(f: Sequence[Polynomial], g: Sequence[Polynomial]) -> list[list[Polynomial]]:
    """Sylvester matrix of two polynomials in T given as coefficient rows (low -> high)."""
    m, n = len(f) - 1, len(g) - 1
    F = f[0].field
    size = m + n
    z = _zero(F)
    mat = []
    for i in range(n):
        row = [z] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        mat.append(row)
    for i in range(m):
        row = [z] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        mat.append(row)
    return mat


def bareiss_determinant(mat: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free Gaussian elimination over F_q[x]."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    F = mat[0][0].field
    M = [list(r) for r in mat]
    sign = 1
    prev = Polynomial._raw(F, (1,))
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return _zero(F)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pivot - M[i][k] * M[k][j]
                q, r = divmod(num, prev)
                assert r.is_zero(), "Bareiss division must be exact"
                M[i][j] = q
            M[i][k] = _zero(F)
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant_t(h: BivariatePolynomial, g: BivariatePolynomial) -> Polynomial:
    """Res_T(h, g) as a polynomial in the other variable."""
    if h.deg_t < 0 or g.deg_t < 0:
        return _zero(h.field)
    if h.deg_t == 0:
        return h.rows[0] ** g.deg_t
    if g.deg_t == 0:
        return g.rows[0] ** h.deg_t
    return bareiss_determinant(sylvester_matrix(h.rows, g.rows))


@dataclass(frozen=True)
class SeparabilityCertificate:
    separable: bool
    resultant: Polynomial | None
    reason: str

    def __str__(self) -> str:
        return "Separable" if self.separable else "Inseparable"


def step_separability(H: BivariatePolynomial) -> SeparabilityCertificate:
    """Separable iff Res_T(H, dH/dT) is a nonzero polynomial in S."""
    dH = H.derivative_t()
    if dH.is_zero():
        return SeparabilityCertificate(False, None, "dN/dT vanishes identically")
    res = resultant_t(H, dH)
    if res.is_zero():
        return SeparabilityCertificate(False, res, "resultant is the zero polynomial")
    return SeparabilityCertificate(True, res, "resultant is a nonzero polynomial")


def separability_certificate(a: RationalFunction, b: RationalFunction) -> SeparabilityCertificate:
    """Decide separability of a1(T) - a2(T) b(x) over F_q(x)."""
    if a.degree < 1:
        raise ValueError("separability needs a nonconstant a")
    return step_separability(defining_polynomial(a, b))
