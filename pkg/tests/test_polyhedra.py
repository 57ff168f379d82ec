from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jetmld.core import INFINITY, QQ, ZZ, SparsePolynomial, maximal_ideal, minimalize, power_of_maximal_ideal
from jetmld.harness import corpus_ideals
from jetmld.polyhedra import (
    Facet,
    extreme_rays,
    facet_normals,
    lct_computing_normals,
    lct_from_facets,
    lct_from_membership,
    lct_howald,
    membership,
    val_w_ideal,
    val_w_polynomial,
)

F = Fraction


def poly(terms, ring=ZZ):
    n = len(next(iter(terms)))
    return SparsePolynomial(ring, n, terms)


def test_val_w_polynomial_examples():
    assert val_w_polynomial((1, 2), poly({(0, 1): 1})) == 2
    assert val_w_polynomial((1, 1), poly({(2, 0): 1, (1, 1): 1, (0, 3): 1})) == 2
    assert val_w_polynomial((3, 1), poly({(1, 0): 1, (0, 2): 1})) == 2
    assert val_w_polynomial((1, 1), SparsePolynomial(QQ, 2)) is INFINITY
    with pytest.raises(ValueError):
        val_w_polynomial((1, 1, 1), poly({(1, 0): 1}))
    with pytest.raises(ValueError):
        val_w_polynomial((0, 0), poly({(1, 0): 1}))


@pytest.mark.parametrize("i", [1, 2, 5, 11])
def test_val_w_ideal_family(i):
    assert val_w_ideal((i, 1), minimalize([(1, 0), (0, i)])) == i


def test_val_w_ideal_examples():
    assert val_w_ideal((1, 1), maximal_ideal(2)) == 1
    assert val_w_ideal((2, 3), minimalize([(2, 0), (1, 1), (0, 2)])) == 4


ideals = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=5).filter(
    lambda g: all(any(u) for u in g)
).map(minimalize)
weights = st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(any)


@given(ideals, weights, st.integers(1, 7))
def test_val_homogeneity(a, w, lam):
    assert val_w_ideal(tuple(lam * x for x in w), a) == lam * val_w_ideal(w, a)


@given(ideals, ideals, weights)
def test_val_of_product_is_sum(a, b, w):
    assert val_w_ideal(w, a.product(b)) == val_w_ideal(w, a) + val_w_ideal(w, b)


def test_facet_examples():
    assert facet_normals(minimalize([(1, 0), (0, 1)])) == [Facet((1, 1), 1)]
    for i in (1, 2, 7):
        assert facet_normals(minimalize([(1, 0), (0, i)])) == [Facet((i, 1), i)]
    assert facet_normals(minimalize([(4,)])) == [Facet((1,), 4)]
    assert facet_normals(minimalize([(2, 1), (1, 3)])) == [Facet((0, 1), 1), Facet((1, 0), 1), Facet((2, 1), 5)]


def test_extreme_rays_of_orthant_and_simplex_cone():
    assert extreme_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    # dual of the cone over a square: 4 rays
    sq = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
    assert len(extreme_rays(sq)) == 4


def _facets_brute(a):
    """Facet normals by brute force: hyperplanes through N affinely independent points of the
    generator set / orthant directions that leave everything on one side."""
    n = a.dim
    pts = [tuple(F(x) for x in u) for u in a.generators]
    dirs = [tuple(F(int(i == j)) for j in range(n)) for i in range(n)]
    found = set()
    for w in itertools.product(range(0, 9), repeat=n):
        if not any(w):
            continue
        if any(x < 0 for x in w):
            continue
        d = min(sum(x * y for x, y in zip(w, u)) for u in pts)
        if d == 0:
            continue
        tight = [u for u in pts if sum(x * y for x, y in zip(w, u)) == d]
        tight_dirs = [e for e in dirs if sum(x * y for x, y in zip(w, e)) == 0]
        # affine dimension of tight face (points + recession directions)
        vecs = [tuple(x - y for x, y in zip(u, tight[0])) for u in tight[1:]] + tight_dirs
        from jetmld.polyhedra import _rank

        if (_rank(vecs) if vecs else 0) == n - 1:
            from jetmld.polyhedra import _primitive

            found.add(_primitive(w))
    return found


@pytest.mark.parametrize("a", corpus_ideals()[:25], ids=str)
def test_facets_match_brute_force(a):
    assert {f.normal for f in facet_normals(a)} == _facets_brute(a)


def test_facet_normals_primitive_nonnegative():
    for a in corpus_ideals():
        for f in facet_normals(a):
            assert all(x >= 0 for x in f.normal) and any(f.normal)
            from math import gcd
            from functools import reduce

            assert reduce(gcd, f.normal) == 1
            assert f.offset == val_w_ideal(f.normal, a)


def test_membership_examples():
    seg = minimalize([(1, 0), (0, 1)])
    for method in ("facets", "lp"):
        assert membership((1, 1), seg, method)
        assert membership((F(1, 2), F(1, 2)), seg, method)
        assert not membership((F(1, 3), F(1, 3)), seg, method)
    with pytest.raises(ValueError):
        membership((1, 1, 1), seg)


def _grid_certificate(q, gens, k=12):
    """Search convex combinations with coefficients in (1/k)Z; exact check of each candidate."""
    for combo in itertools.product(range(k + 1), repeat=len(gens) - 1):
        if sum(combo) > k:
            continue
        mu = [F(c, k) for c in combo] + [F(k - sum(combo), k)]
        pt = [sum(m * u[i] for m, u in zip(mu, gens)) for i in range(len(q))]
        if all(x <= y for x, y in zip(pt, q)):
            return True
    return False


@pytest.mark.parametrize("a", [a for a in corpus_ideals() if len(a.generators) <= 3][:12], ids=str)
def test_membership_agrees_with_grid_oracle(a):
    rng = random.Random(str(a))
    for _ in range(15):
        q = tuple(F(rng.randint(0, 12), 4) for _ in range(a.dim))
        exact = membership(q, a)
        assert exact == membership(q, a, "lp")
        if _grid_certificate(q, a.generators):
            assert exact
        if not exact:
            # a non-member is separated by some weight: <w,q> < val_w(a)
            assert any(
                sum(x * y for x, y in zip(w, q)) < val_w_ideal(w, a)
                for w in itertools.product(range(9), repeat=a.dim)
                if any(w)
            )


def _lct_ratio_oracle(a, box=12):
    best = None
    for w in itertools.product(range(box + 1), repeat=a.dim):
        if not any(w):
            continue
        v = val_w_ideal(w, a)
        if v:
            r = F(sum(w), v)
            best = r if best is None or r < best else best
    return best


def test_lct_examples():
    for i in range(1, 9):
        assert lct_howald(minimalize([(1, 0), (0, i)])) == F(i + 1, i)
    for N in range(1, 5):
        assert lct_howald(maximal_ideal(N)) == N
    assert lct_howald(minimalize([(2, 0), (0, 2)])) == 1


@pytest.mark.parametrize("N,mu", [(N, mu) for N in range(1, 5) for mu in range(1, 6)])
def test_lct_of_maximal_powers(N, mu):
    assert lct_howald(power_of_maximal_ideal(N, mu)) == F(N, mu)


@pytest.mark.parametrize("a", corpus_ideals(), ids=str)
def test_lct_routes_and_toric_oracle(a):
    x, y = lct_from_facets(a), lct_from_membership(a)
    assert x == y
    assert 0 < x <= a.dim
    box = 12 if a.dim <= 2 else 7
    assert _lct_ratio_oracle(a, box) == x
    for w in lct_computing_normals(a):
        assert F(sum(w), val_w_ideal(w, a)) == x


def test_lct_ties_sorted():
    a = minimalize([(2, 0), (0, 2)])
    assert lct_computing_normals(a) == [(1, 1)]
    b = minimalize([(1, 0, 0), (0, 1, 0)])
    assert lct_computing_normals(b) == [(1, 1, 0)]
