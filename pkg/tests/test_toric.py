from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jetmld.core import MultiIdeal, maximal_ideal, minimalize
from jetmld.harness import MLD_CORPUS
from jetmld.invariants import contact_codim
from jetmld.toric import NOT_APPLICABLE, ToricDivisor, discrepancy, lct_ratio, log_discrepancy

F = Fraction
x = minimalize([(1, 0)])


def test_discrepancy_examples():
    assert discrepancy((1, 1)) == 1
    for i in range(1, 6):
        assert discrepancy((i, 1)) == i
    for N in range(1, 6):
        assert discrepancy((1,) * N) == N - 1
    with pytest.raises(ValueError):
        discrepancy((0, 0))


def test_toric_divisor_fields():
    E = ToricDivisor((2, 0, 1))
    assert E.k_plus_one == 3 and not E.center_is_origin
    assert ToricDivisor((1, 3)).center_is_origin


def test_log_discrepancy_examples():
    assert log_discrepancy((1, 1), MultiIdeal.of((maximal_ideal(2), "1/2"))) == F(3, 2)
    assert log_discrepancy((1, 1), MultiIdeal.of((x, 3))) == -1
    assert log_discrepancy((2, 2), MultiIdeal.of((x, 3))) == -2
    with pytest.raises(ValueError):
        log_discrepancy((1, 1, 1), MultiIdeal.of((x, 3)))


def test_lct_ratio_examples():
    for i in range(1, 8):
        assert lct_ratio((i, 1), minimalize([(1, 0), (0, i)])) == F(i + 1, i)
    assert lct_ratio((1, 1), maximal_ideal(2)) == 2
    assert lct_ratio((1, 0), x) == 1
    assert lct_ratio((0, 1), x) is NOT_APPLICABLE


cases = st.sampled_from(MLD_CORPUS)


@given(cases, st.data(), st.integers(1, 6))
def test_log_discrepancy_homogeneous(A, data, lam):
    w = tuple(data.draw(st.integers(1, 5)) for _ in range(A.dim))
    assert log_discrepancy(tuple(lam * t for t in w), A) == lam * log_discrepancy(w, A)


@given(cases, st.data(), st.integers(1, 6))
def test_lct_ratio_scale_invariant(A, data, lam):
    a = A.ideals[0]
    w = tuple(data.draw(st.integers(1, 5)) for _ in range(A.dim))
    assert lct_ratio(tuple(lam * t for t in w), a) == lct_ratio(w, a)


@given(st.tuples(st.integers(1, 4), st.integers(1, 4)))
def test_discrepancy_matches_contact_locus_codim(w):
    # the divisorial set of E_w is the contact locus {ord x_j >= w_j}: codim <w,1> = k_E + 1
    A = MultiIdeal.of((minimalize([(1, 0)]), 1), (minimalize([(0, 1)]), 1))
    assert contact_codim(A, w, origin_fiber=True) == discrepancy(w) + 1
