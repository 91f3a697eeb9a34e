import random

import pytest

from fftowers import Polynomial, RationalFunction, SearchSpaceTooLarge, make_field
from fftowers.subtower import (
    DEGREE_ASSUMPTION,
    Properness,
    SearchConfig,
    check_properness,
    default_jobs,
    derive_z_relation,
    enumerate_f,
    search_catalog,
    search_f,
    search_space_size,
    verify_equation,
)
from fftowers.specfile import load_catalog, parse_spec

from conftest import SPECS, rf


def R(F, *texts):
    return [rf(t, F) for t in texts]


def test_f9_quadratic_pair(F9):
    w = verify_equation(*R(F9, "T^2", "(T^2+1)/(2*T)", "2*T", "T^2", "(T+2)^2/(2*T)"))
    assert w.equation_holds
    assert w.composite == rf("(T^2+1)^2/T^2", F9)
    assert w.properness.tag is Properness.PROPER_BY_DEGREE


def test_f2_cubic_subtower(F2):
    w = verify_equation(*R(F2, "T^2+T", "(T^2+T+1)/T", "(T+1)/T", "T^3+T", "(T+1)/T^3"))
    assert w.equation_holds
    assert w.composite == rf("(T^4+T^2)/(T^6+T^5+T^3+T+1)", F2)
    assert w.properness.tag is Properness.PROPER_BY_COPRIME


def test_f2_triple_is_false(F2):
    w = verify_equation(*R(F2, "T^2+T", "T/(T^2+T+1)", "1/(T+1)", "T^3+T", "(T^2+1)/T^3"))
    assert not w.equation_holds and w.composite is None
    assert w.left == rf("T^2*(T^2+T+1)/(T+1)^6", F2)
    assert w.right == rf("T^2*(T+1)^2*(T^2+T+1)", F2)
    # the two sides differ by (T+1)^8
    assert w.right / w.left == rf("(T+1)^8", F2)


def test_derive_z(F9, F2):
    assert derive_z_relation(rf("T^2", F9), rf("2*T", F9)) == rf("2*T^2", F9)
    assert derive_z_relation(rf("T^2+T", F2), rf("(T+1)/T", F2)) == rf("(T^2+T+1)/(T^2+T)", F2)
    assert derive_z_relation(rf("T^2+T", F2), rf("1/(T+1)", F2)) == rf("1/(T^2+T+1)", F2)


@pytest.mark.parametrize(
    "d,dt,tag",
    [(2, 2, Properness.PROPER_BY_DEGREE), (2, 3, Properness.PROPER_BY_COPRIME),
     (2, 4, Properness.NOT_GUARANTEED), (3, 2, Properness.PROPER_BY_DEGREE),
     (1, 2, Properness.NOT_GUARANTEED), (2, 1, Properness.NOT_GUARANTEED),
     (4, 6, Properness.NOT_GUARANTEED), (4, 9, Properness.PROPER_BY_COPRIME)],
)
def test_properness_table(F9, d, dt, tag):
    v = check_properness(rf(f"T^{d}", F9), rf(f"T^{dt}+1", F9))
    assert v.tag is tag
    assert DEGREE_ASSUMPTION in v.assumptions
    # degree-only: sign conventions do not matter
    assert check_properness(rf(f"-T^{d}", F9), rf(f"2/(T^{dt}+1)", F9)).tag is tag


def test_enumeration_count_and_order():
    for F, d in [(make_field(2, "t"), 2), (make_field(3, "t"), 2), (make_field(3, "t^2+1"), 1)]:
        fs = list(enumerate_f(F, d))
        q = F.q
        # rational functions of exact degree k: q^(2k+1) - q^(2k-1)
        assert len(fs) == sum(q ** (2 * k + 1) - q ** (2 * k - 1) for k in range(1, d + 1))
        assert len(set(fs)) == len(fs)
        degs = [f.degree for f in fs]
        assert degs == sorted(degs) and min(degs) >= 1
        assert list(enumerate_f(F, d)) == fs


def test_search_space_size(F9):
    assert search_space_size(F9, SearchConfig(max_deg_f=1)) == 9**4


def test_search_recovers_t_plus_one(F9):
    hits = search_f(*R(F9, "T^2", "(T+2)^2/(2*T)", "T^2", "T^2/(T-1)"), SearchConfig(max_deg_f=1))
    fs = [w.f for w in hits]
    assert rf("T+1", F9) in fs
    assert all(w.properness.tag is Properness.PROPER_BY_DEGREE for w in hits)


def test_f2_triple_search_fixture(F2):
    args = R(F2, "T^2+T", "T/(T^2+T+1)", "T^3+T", "(T^2+1)/T^3")
    assert [str(w.f) for w in search_f(*args, SearchConfig(max_deg_f=1))] == ["T+1"]
    assert [str(w.f) for w in search_f(*args, SearchConfig(max_deg_f=2))] == ["T+1", "T^2+1"]


def test_identity_found_exactly_when_a_and_b_commute(F9):
    ident = rf("T", F9)
    for a, b in [R(F9, "T^2", "T^3"), R(F9, "T^2+g", "T^2+g"), R(F9, "T^2+g", "(T^2+1)/(2*T)")]:
        found = ident in [w.f for w in search_f(a, b, a, b)]
        assert found == (a.compose(b) == b.compose(a))


def _mobius_inverse(f):
    F = f.field
    n, d = f.num.coeffs + (0,), f.den.coeffs + (0,)
    alpha, beta, gamma, delta = n[1], n[0], d[1], d[0]
    return RationalFunction(Polynomial._raw(F, (F.neg(beta), delta)), Polynomial._raw(F, (alpha, F.neg(gamma))))


def test_planted_f_is_found(F9):
    # a and b commute, so a~ = a o f^-1, b~ = b o f^-1 satisfy the equation with f
    a, b = R(F9, "T^2", "T^3")
    rng = random.Random(7)
    mobius = [f for f in enumerate_f(F9, 1)]
    for f in rng.sample(mobius, 8):
        finv = _mobius_inverse(f)
        assert f.compose(finv) == rf("T", F9)
        at, bt = a.compose(finv), b.compose(finv)
        found = [w.f for w in search_f(a, b, at, bt)]
        assert f in found


def test_search_is_sound(F9, F2):
    cases = [R(F9, "T^2", "(T+2)^2/(2*T)", "T^2", "T^2/(T-1)"),
             R(F2, "T^2+T", "(T^2+T+1)/T", "T^3+T", "(T+1)/T^3")]
    for a, b, at, bt in cases:
        hits = search_f(a, b, at, bt, SearchConfig(max_deg_f=2 if a.field.q == 2 else 1))
        assert hits
        for w in hits:
            again = verify_equation(a, b, w.f, at, bt)
            assert again.equation_holds
            c = again.composite
            assert c.degree == at.degree * w.f.degree * b.degree == bt.degree * w.f.degree * a.degree


def test_renormalization_does_not_change_verdict(F9):
    base = R(F9, "T^2", "(T^2+1)/(2*T)", "2*T", "T^2", "(T+2)^2/(2*T)")
    g = rf("T^2+g*T+1", F9).num
    scaled = [RationalFunction(r.num * g, r.den * g) for r in base]
    assert scaled == base
    assert verify_equation(*scaled).equation_holds


def test_jobs_do_not_change_results(F9, F2):
    args = R(F9, "T^2", "(T+2)^2/(2*T)", "T^2", "T^2/(T-1)")
    serial = search_f(*args, SearchConfig(max_deg_f=1, jobs=1))
    parallel = search_f(*args, SearchConfig(max_deg_f=1, jobs=3))
    assert [w.f for w in serial] == [w.f for w in parallel]
    args = R(F2, "T^2+T", "(T^2+T+1)/T", "T^3+T", "(T+1)/T^3")
    assert [w.f for w in search_f(*args, SearchConfig(max_deg_f=3, jobs=1))] == [
        w.f for w in search_f(*args, SearchConfig(max_deg_f=3, jobs=2))
    ]


def test_default_jobs(monkeypatch):
    monkeypatch.setenv("FFTOWERS_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.delenv("FFTOWERS_JOBS")
    assert default_jobs() >= 1


def test_ceiling(F8):
    a, b = R(F8, "T^2+T", "(T^2+T+1)/T")
    with pytest.raises(SearchSpaceTooLarge):
        search_f(a, b, a, b, SearchConfig(max_deg_f=4, ceiling=10**6))


def test_max_deg_tilde_filters(F9):
    args = R(F9, "T^2", "(T+2)^2/(2*T)", "T^2", "T^2/(T-1)")
    assert search_f(*args, SearchConfig(max_deg_tilde=1)) == []


def test_catalog_search():
    spec = parse_spec(SPECS / "E.spec")
    subs = load_catalog(spec)
    assert {t.label for t in subs} == {"G", "F"}
    hits = search_catalog(list(spec.towers.values()), subs)
    by_sub = {h.sub_label: h for h in hits}
    F = spec.field
    assert rf("T+1", F) in [w.f for w in by_sub["G"].witnesses]
