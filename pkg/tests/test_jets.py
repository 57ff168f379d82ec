from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from jetmld.core import GF, QQ, ZZ, SparsePolynomial
from jetmld.harness import JET_CORPUS
from jetmld.jets import (
    JetPolynomial,
    export_cas,
    jet_equations,
    jet_system,
    parse_cas,
    reduce_jet_system_mod_p,
)
from jetmld.lifting import reduce_mod_p


def P(ring, n, terms):
    return SparsePolynomial(ring, n, terms)


def V(ring, ell, q):
    return JetPolynomial.variable(ring, ell, q)


def zero(ring):
    return JetPolynomial(ring)


# ---------------------------------------------------------------- examples


def test_jets_of_xy():
    F = jet_equations(P(ZZ, 2, {(1, 1): 1}), 1)
    assert F == [V(ZZ, 1, 0) * V(ZZ, 2, 0), V(ZZ, 1, 0) * V(ZZ, 2, 1) + V(ZZ, 1, 1) * V(ZZ, 2, 0)]


def test_jets_of_square_over_rationals():
    F = jet_equations(P(QQ, 1, {(2,): 1}), 2)
    x0, x1, x2 = (V(QQ, 1, q) for q in range(3))
    assert F == [x0 * x0, (x0 * x1).scale(2), x1 * x1 + (x0 * x2).scale(2)]


def test_jets_of_square_in_characteristic_two():
    F = jet_equations(P(GF(2), 1, {(2,): 1}), 2)
    assert F[1].is_zero()
    assert F == [V(GF(2), 1, 0) * V(GF(2), 1, 0), zero(GF(2)), V(GF(2), 1, 1) * V(GF(2), 1, 1)]


def test_jet_equations_errors():
    with pytest.raises(ValueError):
        jet_equations(P(ZZ, 1, {(1,): 1}), -1)
    with pytest.raises(ValueError):
        jet_equations(P(ZZ, 1, {}), 2)


def test_jet_system_examples():
    x, y, xy = P(ZZ, 2, {(1, 0): 1}), P(ZZ, 2, {(0, 1): 1}), P(ZZ, 2, {(1, 1): 1})
    s = jet_system([[x]], (2,))
    assert s.polynomials == [V(ZZ, 1, 0), V(ZZ, 1, 1), V(ZZ, 1, 0), V(ZZ, 2, 0)]
    assert s.labels == [("F", 1, 1, 0), ("F", 1, 1, 1), ("fiber", 1), ("fiber", 2)]
    assert s.warning is None
    assert jet_system([[xy]], (1,)).polynomials == [V(ZZ, 1, 0) * V(ZZ, 2, 0), V(ZZ, 1, 0), V(ZZ, 2, 0)]
    assert jet_system([[x], [y]], (1, 1)).polynomials == [V(ZZ, 1, 0), V(ZZ, 2, 0), V(ZZ, 1, 0), V(ZZ, 2, 0)]


def test_jet_system_all_zero_orders_warns():
    s = jet_system([[P(ZZ, 2, {(1, 0): 1})]], (0,))
    assert len(s) == 2 and s.warning


def test_jet_system_errors():
    x = P(ZZ, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        jet_system([[x]], (1, 1))
    with pytest.raises(ValueError):
        jet_system([[x]], (-1,))
    with pytest.raises(ValueError):
        jet_system([[x, P(ZZ, 3, {(1, 0, 0): 1})]], (1,))


def test_reduction_examples():
    F = jet_equations(P(ZZ, 1, {(2,): 1}), 2)
    assert reduce_jet_system_mod_p(F, 2) == jet_equations(P(GF(2), 1, {(2,): 1}), 2)
    f = P(ZZ, 2, {(2, 0): 1, (0, 1): 2})
    assert reduce_jet_system_mod_p(jet_equations(f, 1), 2) == [V(GF(2), 1, 0) * V(GF(2), 1, 0), zero(GF(2))]
    assert all(g.is_zero() for g in reduce_jet_system_mod_p(jet_equations(P(ZZ, 2, {(1, 1): 3}), 1), 3))
    with pytest.raises(ValueError):
        reduce_jet_system_mod_p(F, 4)
    with pytest.raises(ValueError):
        reduce_jet_system_mod_p(jet_equations(P(QQ, 1, {(2,): 1}), 1), 2)


# ---------------------------------------------------------------- properties

polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)).filter(lambda u: 0 < sum(u) <= 4),
    st.integers(-20, 20).filter(bool),
    min_size=1,
    max_size=4,
).map(lambda d: P(ZZ, 3, d))
primes = st.sampled_from([2, 3, 5, 7, 13])


@given(polys, primes, st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_jet_then_reduce_equals_reduce_then_jet(f, p, m):
    g = reduce_mod_p(f, p)
    if g.is_zero():
        return
    assert reduce_jet_system_mod_p(jet_equations(f, m), p) == jet_equations(g, m)


@pytest.mark.parametrize("f", JET_CORPUS, ids=str)
def test_weighted_homogeneity(f):
    for j, F in enumerate(jet_equations(f, 5)):
        assert F.is_zero() or F.weighted_degrees() == {j}


def _truncated_series_value(f, series, prec):
    """f evaluated on integer power series, as a list of the first prec coefficients."""
    out = [0] * prec
    for u, c in f.items():
        acc = [1] + [0] * (prec - 1)
        for ell, k in enumerate(u):
            for _ in range(k):
                acc = [sum(acc[i] * series[ell][j - i] for i in range(j + 1)) for j in range(prec)]
        out = [o + c * a for o, a in zip(out, acc)]
    return out


@pytest.mark.parametrize("f", JET_CORPUS, ids=str)
def test_substitution_matches_numeric_series(f):
    rng = random.Random(str(f))
    m = 4
    F = jet_equations(f, m)
    for _ in range(5):
        series = [[rng.randint(-3, 3) for _ in range(m + 1)] for _ in range(f.dim)]
        values = {(ell + 1, q): series[ell][q] for ell in range(f.dim) for q in range(m + 1)}
        assert [Fj.evaluate(values) for Fj in F] == _truncated_series_value(f, series, m + 1)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=2), st.data())
@settings(max_examples=30, deadline=None)
def test_system_size(m, data):
    factors = []
    for _ in m:
        r = data.draw(st.integers(1, 3))
        factors.append([P(ZZ, 2, {(data.draw(st.integers(1, 2)), data.draw(st.integers(0, 2))): 1}) for _ in range(r)])
    s = jet_system(factors, m)
    assert len(s) == sum(len(fac) * mi for fac, mi in zip(factors, m)) + 2


# ---------------------------------------------------------------- export


def test_export_golden_linear():
    s = jet_system([[P(ZZ, 2, {(1, 0): 1})]], (2,))
    assert export_cas(s) == (
        "vars: X_1_0 X_1_1 X_2_0 X_2_1\n"
        "poly[0]: X_1_0\n"
        "poly[1]: X_1_1\n"
        "poly[2]: X_1_0\n"
        "poly[3]: X_2_0\n"
    )


def test_export_golden_xy():
    s = jet_system([[P(ZZ, 2, {(1, 1): 1})]], (1,))
    assert export_cas(s) == "vars: X_1_0 X_2_0\npoly[0]: X_1_0*X_2_0\npoly[1]: X_1_0\npoly[2]: X_2_0\n"


def test_export_empty():
    assert export_cas([]) == "vars:\n"
    assert parse_cas("vars:\n") == []


@pytest.mark.parametrize("f", JET_CORPUS, ids=str)
def test_export_round_trip(f):
    F = jet_equations(f.change_ring(QQ), 3)
    text = export_cas(F)
    assert parse_cas(text) == F
    assert export_cas(parse_cas(text), dim=f.dim, max_order=3) == export_cas(F, dim=f.dim, max_order=3)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cas("poly[0]: X_1_0\n")
    with pytest.raises(ValueError):
        parse_cas("vars: X_1_0\npoly[3]: X_1_0\n")
