from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jetmld.core import (
    GF,
    INFINITY,
    MINUS_INFINITY,
    QQ,
    ZZ,
    MonomialIdeal,
    MultiIdeal,
    SparsePolynomial,
    as_rational,
    contains,
    format_rational,
    maximal_ideal,
    minimalize,
    power_of_maximal_ideal,
)


def gens(a):
    return set(a.generators)


def test_power_of_maximal_ideal_examples():
    assert gens(power_of_maximal_ideal(1, 3)) == {(3,)}
    assert gens(power_of_maximal_ideal(2, 1)) == {(1, 0), (0, 1)}
    assert gens(power_of_maximal_ideal(2, 2)) == {(2, 0), (1, 1), (0, 2)}
    assert len(power_of_maximal_ideal(3, 4).generators) == 15


@pytest.mark.parametrize("N,mu", [(0, 1), (1, 0), (2, -1)])
def test_power_of_maximal_ideal_rejects(N, mu):
    with pytest.raises(ValueError):
        power_of_maximal_ideal(N, mu)


def test_contains_examples():
    m = maximal_ideal(2)
    assert contains(m, power_of_maximal_ideal(2, 2))
    assert not contains(minimalize([(2, 0)]), minimalize([(1, 0)]))
    a = minimalize([(2, 0), (0, 3), (1, 2)])
    assert contains(a, a)
    with pytest.raises(ValueError):
        contains(m, maximal_ideal(3))


def test_minimalize_examples():
    assert gens(minimalize([(1, 0), (2, 0), (0, 1)])) == {(1, 0), (0, 1)}
    assert gens(minimalize([(1, 1)])) == {(1, 1)}
    assert gens(minimalize([(2, 0), (0, 3), (1, 2)])) == {(2, 0), (0, 3), (1, 2)}


def test_minimalize_errors():
    with pytest.raises(ValueError):
        minimalize([])
    with pytest.raises(ValueError):
        minimalize([(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        minimalize([(1, 0), (1,)])
    with pytest.raises(ValueError):
        MonomialIdeal(2, ((1, 0), (2, 0)))


exps = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 3)), min_size=1, max_size=7).filter(
    lambda g: all(any(u) for u in g)
)


@given(exps)
def test_minimalize_idempotent_and_same_ideal(g):
    a = minimalize(g)
    assert minimalize(a.generators) == a
    for u in g:
        assert a.contains_monomial(u)
    for u, v in itertools.permutations(a.generators, 2):
        assert not all(x >= y for x, y in zip(u, v))


def _brute_contains(a, b):
    top = max(sum(u) for u in b.generators)
    for v in itertools.product(range(top + 1), repeat=a.dim):
        in_b = any(all(x >= y for x, y in zip(v, u)) for u in b.generators)
        in_a = any(all(x >= y for x, y in zip(v, u)) for u in a.generators)
        if in_b and not in_a:
            return False
    return True


@given(exps, exps)
def test_contains_matches_brute_force(g, h):
    a, b = minimalize(g), minimalize(h)
    assert contains(a, b) == _brute_contains(a, b)


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


def test_as_rational_and_format():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(" -4 ") == -4
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("1/0")


def test_rings():
    assert GF(3).normalize(4) == 1
    assert GF(5).normalize(Fraction(1, 2)) == 3
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        ZZ.normalize(Fraction(1, 2))
    assert QQ.normalize("2/4") == Fraction(1, 2)


def test_sparse_polynomial_invariants():
    f = SparsePolynomial(GF(3), 2, {(1, 0): 4, (0, 1): 3})
    assert f.terms == {(1, 0): 1}
    assert SparsePolynomial(ZZ, 2, {}).is_zero()
    assert str(SparsePolynomial(ZZ, 2, {})) == "0"
    g = SparsePolynomial(ZZ, 2, [((1, 0), 2), ((1, 0), -2)])
    assert g.is_zero()
    with pytest.raises(ValueError):
        SparsePolynomial(ZZ, 2, {(1, 0, 0): 1})
    x = SparsePolynomial(ZZ, 2, {(1, 0): 1})
    y = SparsePolynomial(ZZ, 2, {(0, 1): 1})
    assert (x + y) * (x - y) == SparsePolynomial(ZZ, 2, {(2, 0): 1, (0, 2): -1})


def test_multiideal_validation():
    m = maximal_ideal(2)
    A = MultiIdeal.of((m, "1/2"), (minimalize([(1, 0)]), 3))
    assert A.dim == 2 and A.exponents == (Fraction(1, 2), Fraction(3))
    with pytest.raises(ValueError):
        MultiIdeal.of((m, 0))
    with pytest.raises(ValueError):
        MultiIdeal.of((m, 1), (maximal_ideal(3), 1))
    with pytest.raises(ValueError):
        MultiIdeal(())


def test_infinities_order():
    assert MINUS_INFINITY < Fraction(-10**9) < INFINITY
    assert not (MINUS_INFINITY < MINUS_INFINITY)
    assert str(MINUS_INFINITY) == "-inf"
