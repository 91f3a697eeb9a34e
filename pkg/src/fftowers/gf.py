"""Exact arithmetic in F_p and F_{p^n} = F_p[t]/(m(t)).

Elements are encoded internally as integers ``sum(c_k * p**k)`` where ``c_k``
is the coefficient of ``g**k`` in the residue modulo the field modulus.  That
encoding doubles as the enumeration order, so ``enumerate`` lists 0, 1, g,
g+1, ... for p = 2.  Multiplication goes through exp/log tables and addition
of nonzero elements through a Zech-logarithm table, so every field operation
on codes is O(1) after an O(q) setup.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, Sequence

from .errors import DivisionByZero, FieldMismatch, NotPrime, ReducibleModulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense polynomials over F_p as coefficient lists (low -> high) ------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_divmod(u: Sequence[int], v: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    r = list(u)
    _trim(r)
    q = [0] * max(len(r) - len(v) + 1, 0)
    inv_lead = pow(v[-1], p - 2, p)
    while len(r) >= len(v):
        shift = len(r) - len(v)
        c = r[-1] * inv_lead % p
        q[shift] = c
        for i, vi in enumerate(v):
            r[shift + i] = (r[shift + i] - c * vi) % p
        _trim(r)
    return q, r


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1] if degree else [1]


def find_factor(modulus: Sequence[int], p: int) -> list[int] | None:
    """Return a monic proper divisor of ``modulus`` over F_p, or None if irreducible.

    Trial division by every monic polynomial of degree 1..n//2.
    """
    n = len(modulus) - 1
    for d in range(1, n // 2 + 1):
        for cand in _monic_polys(p, d):
            _, r = _zp_divmod(modulus, cand, p)
            if not r:
                return cand
    return None


def format_zp_poly(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = var if k == 1 else f"{var}^{k}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


class FiniteField:
    """The field F_p[t]/(modulus) with printing symbol ``symbol`` for t.

    ``modulus`` is a coefficient vector, constant term first, of a monic
    irreducible polynomial over F_p.  Construction validates primality and
    irreducibility; use :func:`make_field` to share instances.
    """

    def __init__(self, p: int, modulus: Sequence[int], symbol: str = "g"):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        mod = _trim([int(c) % p for c in modulus])
        if len(mod) < 2:
            raise ReducibleModulus("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ReducibleModulus("modulus must be monic")
        factor = find_factor(mod, p)
        if factor is not None:
            raise ReducibleModulus(
                f"modulus {format_zp_poly(mod)} is divisible by {format_zp_poly(factor)}",
                factor=tuple(factor),
            )
        self.p = p
        self.degree = len(mod) - 1
        self.modulus = tuple(mod)
        self.symbol = symbol
        self.q = p**self.degree
        self._digits = [self._to_digits(v) for v in range(self.q)]
        self._build_tables()
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)

    # -- construction helpers ---------------------------------------------

    def _to_digits(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    def _from_digits(self, digits: Sequence[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        p, n = self.p, self.degree
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, r = _zp_divmod(prod, self.modulus, p)
        return self._from_digits(r + [0] * (n - len(r)))

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        for cand in range(1, q):
            exp = [1]
            x = 1
            for _ in range(order - 1):
                x = self._slow_mul(x, cand)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == order:
                break
        self.primitive = cand
        self._exp = exp + exp  # doubled so exp[i + j] needs no reduction
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._log = log
        # zech[k] = log(1 + prim^k), or -1 when 1 + prim^k == 0
        zech = [-1] * order
        one = self._digits[1]
        for k in range(order):
            d = self._digits[exp[k]]
            s = self._from_digits([(x + y) % self.p for x, y in zip(d, one)])
            zech[k] = log[s] if s else -1
        self._zech = zech
        self._minus_one = exp[order // 2] if self.p != 2 else 1

    # -- O(1) operations on integer codes ----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[self._log[a] + (self.q - 1) // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def log(self, a: int) -> int:
        """Discrete logarithm to the base of the primitive element."""
        if a == 0:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    # -- public element API ------------------------------------------------

    @property
    def generator(self) -> FieldElement:
        """The class of t, printed as ``symbol``."""
        if self.degree == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self.check(value.field)
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if isinstance(value, (list, tuple)):
            digits = [int(c) % self.p for c in value]
            if len(digits) > self.degree:
                _, r = _zp_divmod(digits, self.modulus, self.p)
                digits = r
            return FieldElement(self, self._from_digits(digits + [0] * (self.degree - len(digits))))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def enumerate(self) -> list[FieldElement]:
        """All q elements, coefficient vectors in lexicographic order (highest power first)."""
        return [FieldElement(self, v) for v in range(self.q)]

    def coefficients(self, code: int) -> tuple[int, ...]:
        return self._digits[code]

    def check(self, other: FiniteField) -> None:
        if other is not self and other != self:
            raise FieldMismatch(f"{other} is not {self}")

    def format_code(self, code: int) -> str:
        if self.degree == 1:
            return str(code)
        return format_zp_poly(self._digits[code], self.symbol)

    def is_compound(self, code: int) -> bool:
        """True when the printed form has more than one term (needs parentheses)."""
        return sum(1 for c in self._digits[code] if c) > 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __len__(self) -> int:
        return self.q

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree}, {format_zp_poly(self.modulus, self.symbol)}=0)"


@functools.lru_cache(maxsize=64)
def _cached_field(p: int, modulus: tuple[int, ...], symbol: str) -> FiniteField:
    return FiniteField(p, modulus, symbol)


def make_field(p: int, modulus: Sequence[int] | str = (0, 1), symbol: str = "g") -> FiniteField:
    """Build (or fetch from cache) the field F_p[t]/(modulus).

    ``modulus`` is either a coefficient vector, constant term first, or a
    polynomial string in ``t`` such as ``"t^3+t+1"``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if isinstance(modulus, str):
        from .parse import parse_zp_polynomial

        modulus = parse_zp_polynomial(modulus, p)
    mod = tuple(_trim([int(c) % p for c in modulus]))
    return _cached_field(p, mod, symbol)


class FieldElement:
    """An element of a :class:`FiniteField`; immutable and hashable."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field.check(other.field)
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise DivisionByZero("division by zero in finite field")
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.power(self.value, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.modulus, self.value))

    def __lt__(self, other: FieldElement) -> bool:
        return self.value < other.value

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.coefficients(self.value)

    def __str__(self) -> str:
        return self.field.format_code(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self})"


def arith(x: FieldElement, y: FieldElement | None, op: str, k: int | None = None) -> FieldElement:
    """Dispatch one of add, sub, mul, div, pow, inv, neg by name."""
    if y is not None and isinstance(y, FieldElement):
        x.field.check(y.field)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** (k if k is not None else int(y))
    if op == "inv":
        return x.inverse()
    if op == "neg":
        return -x
    raise ValueError(f"unknown operation {op!r}")
