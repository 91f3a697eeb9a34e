import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fftowers import BothZero, Polynomial, make_field, poly_factor, poly_gcd
from fftowers.poly import is_irreducible, monic_polynomials


def P(F, *coeffs):
    return Polynomial._raw(F, tuple(coeffs))


def mobius(n):
    out, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    return -out if m > 1 else out


def gauss_count(q, d):
    """Number of monic irreducibles of degree d over F_q."""
    return sum(mobius(d // k) * q**k for k in range(1, d + 1) if d % k == 0) // d


@pytest.mark.parametrize("p,mod,d", [(2, "t", 4), (3, "t", 3), (2, "t^3+t+1", 2), (3, "t^2+1", 2), (2, "t^2+t+1", 3)])
def test_irreducible_count_matches_gauss(p, mod, d):
    F = make_field(p, mod)
    assert sum(1 for f in monic_polynomials(F, d) if is_irreducible(f)) == gauss_count(F.q, d)


def test_gcd_examples():
    F3 = make_field(3, "t")
    u = P(F3, 1, 0, 1)  # T^2+1
    assert poly_gcd(u, P(F3, 0, 2)) == P(F3, 1)
    F2 = make_field(2, "t")
    a = P(F2, 1, 0, 1)  # (T+1)^2
    b = P(F2, 1, 1)
    assert poly_gcd(a, b) == b
    with pytest.raises(BothZero):
        poly_gcd(P(F2), P(F2))


def random_poly(F, rng, deg):
    c = [rng.randrange(F.q) for _ in range(deg)] + [rng.randrange(1, F.q)]
    return Polynomial._raw(F, tuple(c))


@pytest.mark.parametrize("p,mod", [(2, "t^3+t+1"), (3, "t^2+1"), (5, "t")])
def test_divmod_identity(p, mod):
    F = make_field(p, mod)
    rng = random.Random(7)
    for _ in range(200):
        a = random_poly(F, rng, rng.randrange(0, 7))
        b = random_poly(F, rng, rng.randrange(0, 4))
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


@pytest.mark.parametrize("p,mod", [(2, "t^3+t+1"), (3, "t^2+1")])
def test_gcd_divides_and_is_maximal(p, mod):
    F = make_field(p, mod)
    rng = random.Random(11)
    for _ in range(100):
        common = random_poly(F, rng, rng.randrange(0, 3)).monic()
        a = random_poly(F, rng, rng.randrange(0, 4)) * common
        b = random_poly(F, rng, rng.randrange(0, 4)) * common
        g = poly_gcd(a, b)
        assert g.divides(a) and g.divides(b)
        assert common.divides(g)
        assert g.lead == 1


def test_factor_examples(F8):
    f = P(F8, 0, 1, 1)  # T^2+T
    fac = poly_factor(f)
    assert [(x.coeffs, e) for x, e in fac.factors] == [((0, 1), 1), ((1, 1), 1)]
    assert fac.format() == "T(T+1)"
    g = P(F8, 1, 1, 1)  # no root in F_8
    assert poly_factor(g).factors == [(g, 1)]


def test_factor_repeated(F9):
    f = P(F9, 1, 2, 1) ** 2 * P(F9, 1, 0, 1)
    fac = poly_factor(f)
    assert fac.expand(F9) == f
    assert not fac.is_squarefree()
    # T^2+1 splits over F_9 since g^2 = -1
    assert sorted(e for _, e in fac.factors) == [1, 1, 4]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, "t^3+t+1"), (3, "t^2+1"), (2, "t"), (7, "t")]), st.data())
def test_factorization_reexpands(spec, data):
    F = make_field(*spec)
    deg = data.draw(st.integers(1, 5))
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=deg, max_size=deg))
    lead = data.draw(st.integers(1, F.q - 1))
    f = Polynomial._raw(F, tuple(coeffs) + (lead,))
    fac = poly_factor(f)
    assert fac.expand(F) == f
    for g, _ in fac.factors:
        assert g.lead == 1 and is_irreducible(g)


def test_roots_and_derivative(F9):
    f = Polynomial.from_roots(F9, [0, 1, 5])
    assert f.roots() == [0, 1, 5]
    # the T^3 term differentiates to 0 in characteristic 3
    assert f.derivative().degree == 1
    F2 = make_field(2, "t")
    assert P(F2, 1, 0, 1).derivative().is_zero()


def test_shift_and_reverse(F9):
    f = P(F9, 1, 2, 1)  # (T+1)^2
    assert f.shift(F9.neg(1)) == P(F9, 0, 0, 1)
    assert P(F9, 1, 2).reverse(3) == P(F9, 0, 0, 2, 1)


def test_format(F8):
    f = P(F8, 6, 5, 1)
    assert f.format() == "T^2+(g^2+1)*T+g^2+g"
    assert P(F8).format() == "0"


def test_monic_enumeration_size(F9):
    assert sum(1 for _ in monic_polynomials(F9, 2)) == 81
    assert all(len(set(x)) == len(x) for x in [list(itertools.islice(monic_polynomials(F9, 1), 9))])
