"""Newton polyhedra of monomial ideals and monomial valuations.

``Newt(a)`` is the convex hull of the exponents of ``a`` plus the
nonnegative orthant.  Its facets are found once, exactly, by the double
description method on the homogenized cone and then cached.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .core import INFINITY, MonomialIdeal, SparsePolynomial
from .linprog import solve_lp

__all__ = [
    "weight_vector",
    "dot",
    "val_w_polynomial",
    "val_w_ideal",
    "Facet",
    "NewtonPolyhedron",
    "facet_normals",
    "membership",
    "lct_howald",
    "lct_from_facets",
    "lct_from_membership",
    "lct_computing_normals",
]

WeightVector = tuple[int, ...]


def weight_vector(entries: Iterable[int]) -> WeightVector:
    w = tuple(int(a) for a in entries)
    if not w:
        raise ValueError("weight vector must have length >= 1")
    if any(a < 0 for a in w):
        raise ValueError(f"weight vector {w} has a negative entry")
    if not any(w):
        raise ValueError("the zero weight vector defines no valuation")
    return w


def center_is_origin(w: Sequence[int]) -> bool:
    return min(w) >= 1


def dot(w: Sequence, u: Sequence):
    return sum(a * b for a, b in zip(w, u))


def _check_dim(w, n):
    if len(w) != n:
        raise ValueError(f"weight vector of length {len(w)} used in dimension {n}")


def val_w_polynomial(w: Sequence[int], f: SparsePolynomial):
    """Monomial valuation ``min <w,u>`` over the support of ``f``.

    The zero polynomial has valuation ``INFINITY``.
    """
    w = weight_vector(w)
    _check_dim(w, f.dim)
    if f.is_zero():
        return INFINITY
    return min(dot(w, u) for u in f.support())


def val_w_ideal(w: Sequence[int], a: MonomialIdeal) -> int:
    w = weight_vector(w)
    _check_dim(w, a.dim)
    return min(dot(w, u) for u in a.generators)


# --------------------------------------------------------------------------
# double description
# --------------------------------------------------------------------------


def _rank(rows: list[Sequence]) -> int:
    M = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / p[col]
                M[i] = [a - f * b for a, b in zip(M[i], p)]
        rank += 1
    return rank


def _primitive(v: Sequence) -> tuple[int, ...]:
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _solve_square(A: list[Sequence], b: Sequence) -> list[Fraction]:
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def extreme_rays(constraints: list[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : <g, y> >= 0 for g in constraints}``.

    Double description method with the algebraic adjacency test.  Rays are
    returned as primitive integer vectors, sorted.
    """
    d = len(constraints[0])
    order: list[int] = []
    for k in range(len(constraints)):
        if _rank([constraints[i] for i in order + [k]]) > len(order):
            order.append(k)
        if len(order) == d:
            break
    if len(order) < d:
        raise ValueError("constraint system does not define a pointed cone")
    A0 = [constraints[i] for i in order]
    rays: list[tuple[tuple[int, ...], frozenset[int]]] = []
    for j in range(d):
        e = [0] * d
        e[j] = 1
        r = _primitive(_solve_square(A0, e))
        tight = frozenset(i for i in order if dot(constraints[i], r) == 0)
        rays.append((r, tight))
    processed = list(order)
    for k in range(len(constraints)):
        if k in order:
            continue
        g = constraints[k]
        pos, zero, neg = [], [], []
        for r, t in rays:
            v = dot(g, r)
            (pos if v > 0 else zero if v == 0 else neg).append((r, t, v))
        new = [(r, t | {k} if v == 0 else t) for r, t, v in pos + zero]
        for rp, tp, vp in pos:
            for rn, tn, vn in neg:
                common = tp & tn
                if len(common) < d - 2:
                    continue
                if _rank([constraints[i] for i in common]) != d - 2:
                    continue
                r = _primitive([vp * b - vn * a for a, b in zip(rp, rn)])
                new.append((r, common | {k}))
        processed.append(k)
        rays = new
    return sorted({r for r, _ in rays})


# --------------------------------------------------------------------------
# Newton polyhedra
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Facet:
    """Inequality ``<normal, q> >= offset`` with a primitive integer normal."""

    normal: tuple[int, ...]
    offset: int


class NewtonPolyhedron:
    """Newton polyhedron of a monomial ideal, facets computed lazily."""

    def __init__(self, ideal: MonomialIdeal):
        self.ideal = ideal
        self.dim = ideal.dim
        self.vertices = ideal.generators
        self._facets: tuple[Facet, ...] | None = None
        self._lock = threading.Lock()

    @property
    def facets(self) -> tuple[Facet, ...]:
        """Facets not of the form ``q_i >= 0``; together with the orthant they cut out the polyhedron."""
        if self._facets is None:
            with self._lock:
                if self._facets is None:
                    self._facets = self._compute_facets()
        return self._facets

    def _compute_facets(self) -> tuple[Facet, ...]:
        n = self.dim
        gens = [tuple(u) + (1,) for u in self.vertices]
        for i in range(n):
            e = [0] * (n + 1)
            e[i] = 1
            gens.append(tuple(e))
        out = set()
        for ray in extreme_rays(gens):
            normal, t = ray[:n], ray[n]
            if any(normal) and -t > 0:
                out.add(Facet(normal, -t))
        return tuple(sorted(out))

    def contains(self, q: Sequence) -> bool:
        q = [Fraction(x) for x in q]
        if len(q) != self.dim:
            raise ValueError("dimension mismatch")
        if any(x < 0 for x in q):
            return False
        return all(dot(f.normal, q) >= f.offset for f in self.facets)

    def __repr__(self):
        return f"NewtonPolyhedron({self.ideal})"


_cache_lock = threading.Lock()
_polyhedra: dict[MonomialIdeal, NewtonPolyhedron] = {}


def newton_polyhedron(a: MonomialIdeal) -> NewtonPolyhedron:
    with _cache_lock:
        P = _polyhedra.get(a)
        if P is None:
            P = _polyhedra[a] = NewtonPolyhedron(a)
        return P


def facet_normals(P: NewtonPolyhedron | MonomialIdeal) -> list[Facet]:
    if isinstance(P, MonomialIdeal):
        P = newton_polyhedron(P)
    return list(P.facets)


def _membership_lp(q: Sequence[Fraction], gens: Sequence[Sequence[int]]) -> bool:
    # q >= sum mu_j u_j, mu >= 0, sum mu_j = 1
    k = len(gens)
    A_ub = [[u[i] for u in gens] for i in range(len(q))]
    res = solve_lp([0] * k, A_ub=A_ub, b_ub=list(q), A_eq=[[1] * k], b_eq=[1])
    return res.ok


def membership(q: Sequence, P: NewtonPolyhedron | MonomialIdeal, method: str = "facets") -> bool:
    """Exact test ``q in Newt(a)``.

    ``method="facets"`` checks the facet inequalities; ``method="lp"`` solves
    the convex-combination feasibility problem directly.
    """
    if isinstance(P, MonomialIdeal):
        P = newton_polyhedron(P)
    q = [Fraction(x) for x in q]
    if len(q) != P.dim:
        raise ValueError(f"point of length {len(q)} tested against dimension {P.dim}")
    if any(x < 0 for x in q):
        raise ValueError("membership is only defined for points in the nonnegative orthant")
    if method == "facets":
        return P.contains(q)
    if method == "lp":
        return _membership_lp(q, P.vertices)
    raise ValueError(f"unknown method {method!r}")


def lct_from_facets(a: MonomialIdeal) -> Fraction:
    """``min <w,1> / val_w(a)`` over facet normals ``w``."""
    return min(Fraction(sum(f.normal), f.offset) for f in facet_normals(a))


def lct_computing_normals(a: MonomialIdeal) -> list[tuple[int, ...]]:
    """All facet normals attaining the lct, sorted lexicographically."""
    facets = facet_normals(a)
    best = min(Fraction(sum(f.normal), f.offset) for f in facets)
    return sorted(f.normal for f in facets if Fraction(sum(f.normal), f.offset) == best)


def lct_from_membership(a: MonomialIdeal) -> Fraction:
    """``1 / min{lam : lam * (1,...,1) in Newt(a)}`` by exact LP."""
    n, k = a.dim, len(a.generators)
    # variables: mu_1..mu_k, lam
    A_ub = [[u[i] for u in a.generators] + [-1] for i in range(n)]
    res = solve_lp([0] * k + [1], A_ub=A_ub, b_ub=[0] * n, A_eq=[[1] * k + [0]], b_eq=[1])
    if not res.ok:
        raise RuntimeError(f"lct LP failed for {a}: {res.status}")
    return 1 / res.value


def lct_howald(a: MonomialIdeal, route: str = "both") -> Fraction:
    """Log canonical threshold of a monomial ideal from its Newton polyhedron.

    With ``route="both"`` the facet route and the LP route are both run and
    must agree.
    """
    if route == "facets":
        return lct_from_facets(a)
    if route == "membership":
        return lct_from_membership(a)
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    x, y = lct_from_facets(a), lct_from_membership(a)
    if x != y:
        raise RuntimeError(f"lct routes disagree for {a}: facets {x}, membership {y}")
    return x
