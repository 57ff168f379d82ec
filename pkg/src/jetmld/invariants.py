"""Singularity invariants of monomial multiideals at the origin.

Everything here reduces to optimization over weight vectors ``w``:

* ``mld_toric`` minimizes the log discrepancy ``<w,1> - sum e_i val_w(a_i)``
  over integer ``w >= 1``;
* ``contact_codim`` is the integer program
  ``min <w,1>  s.t.  val_w(a_i) >= m_i`` (the codimension of a monomial
  contact locus), from which ``s_m``, ``z_m`` and the jet formulas for mld
  and lct follow.

All values are exact.  Vectorized enumeration uses int64 numpy arrays; every
quantity enumerated is an integer (log discrepancies are scaled by the common
denominator of the exponents first).
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil, floor, lcm
from typing import Sequence

import numpy as np

from .core import (
    MINUS_INFINITY,
    MonomialIdeal,
    MultiIdeal,
    _monomials_of_degree,
    format_rational,
    maximal_ideal,
    minimalize,
    power_of_maximal_ideal,
)
from .linprog import solve_lp
from .polyhedra import dot, lct_computing_normals, lct_howald, val_w_ideal
from .toric import log_discrepancy

log = logging.getLogger(__name__)

__all__ = [
    "CERTIFIED",
    "BOX_BOUNDED",
    "InvariantResult",
    "contact_codim",
    "s_m",
    "mld_via_jets",
    "mld_toric",
    "default_box",
    "translated_jet_bound",
    "z_m",
    "lct_via_jets",
    "MdLctResult",
    "md_lct_toric",
    "height_monomial",
    "bound_divisor_to_jet",
    "bound_jet_to_divisor",
    "bound_lct_translation",
    "ScanReport",
    "ideals_between",
    "scan_md_bound",
]

CERTIFIED = "certified"
BOX_BOUNDED = "box-bounded"

BNB_NODE_LIMIT = 5000


@dataclass(frozen=True)
class InvariantResult:
    """Exact value (a Fraction or ``MINUS_INFINITY``) with its witness.

    ``witness`` is a weight vector for toric routes and a jet order vector
    for jet routes.  ``box`` is the search size used; ``lower_bound`` is the
    proven lower bound when one is available.
    """

    value: object
    witness: tuple[int, ...] | None
    certificate: str
    route: str
    box: int | None = None
    lower_bound: Fraction | None = None
    box_value: object = None

    @property
    def is_minus_infinity(self) -> bool:
        return self.value == MINUS_INFINITY

    @property
    def certified(self) -> bool:
        return self.certificate == CERTIFIED

    def value_str(self) -> str:
        return "-inf" if self.is_minus_infinity else format_rational(self.value)

    def __str__(self):
        w = "(" + ",".join(map(str, self.witness)) + ")" if self.witness is not None else "none"
        cert = self.certificate if self.certificate == CERTIFIED else f"{self.certificate}({self.box})"
        return f"{self.value_str()}, witness {w}, {cert}"


# --------------------------------------------------------------------------
# vectorized enumeration helpers
# --------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _compositions(total: int, n: int, lo: int) -> np.ndarray:
    """All length-``n`` integer vectors with entries ``>= lo`` summing to ``total``, in lex order."""
    if n == 1:
        arr = np.array([[total]], dtype=np.int64) if total >= lo else np.empty((0, 1), dtype=np.int64)
    else:
        blocks = []
        for first in range(lo, total - lo * (n - 1) + 1):
            rest = _compositions(total - first, n - 1, lo)
            if len(rest):
                blocks.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest]))
        arr = np.vstack(blocks) if blocks else np.empty((0, n), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _gen_matrix(a: MonomialIdeal) -> np.ndarray:
    return np.array(a.generators, dtype=np.int64)


def _vals(W: np.ndarray, U: np.ndarray) -> np.ndarray:
    return (W @ U.T).min(axis=1)


def _scaled_exponents(A: MultiIdeal) -> tuple[int, list[int]]:
    D = 1
    for e in A.exponents:
        D = lcm(D, e.denominator)
    return D, [int(e * D) for e in A.exponents]


def _check_orders(A: MultiIdeal, m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if len(m) != len(A):
        raise ValueError(f"jet order vector {m} has length {len(m)}, multiideal has {len(A)} factors")
    if any(x < 0 for x in m):
        raise ValueError(f"jet orders must be nonnegative, got {m}")
    return m


# --------------------------------------------------------------------------
# contact loci
# --------------------------------------------------------------------------


def contact_codim(A: MultiIdeal, m: Sequence[int], origin_fiber: bool, return_witness: bool = False):
    """Codimension of ``Cont^{>=m_1}(a_1) ∩ ... ∩ Cont^{>=m_s}(a_s)`` in the arc space.

    With ``origin_fiber`` the locus is intersected with the arcs through the
    origin, which forces ``w >= 1``; otherwise ``w >= 0``.  The weight
    ``max(m) * (1,...,1)`` is always feasible, so totals are scanned upward
    from the smallest possible one and the first feasible total is optimal.
    The witness is the lexicographically smallest optimal ``w``.
    """
    m = _check_orders(A, m)
    N = A.dim
    lo = 1 if origin_fiber else 0
    if not any(m) and not origin_fiber:
        return (0, None) if return_witness else 0
    mats = [(_gen_matrix(a), mi) for a, mi in zip(A.ideals, m) if mi > 0]
    upper = N * max(max(m), 1)
    for total in range(max(N * lo, 1), upper + 1):
        W = _compositions(total, N, lo)
        ok = np.ones(len(W), dtype=bool)
        for U, mi in mats:
            ok &= _vals(W, U) >= mi
        idx = np.flatnonzero(ok)
        if len(idx):
            w = tuple(int(x) for x in W[idx[0]])
            return (total, w) if return_witness else total
    raise AssertionError("feasible point max(m)*(1,...,1) was not found")  # pragma: no cover


def s_m(A: MultiIdeal, m: Sequence[int]) -> Fraction:
    m = _check_orders(A, m)
    codim = contact_codim(A, m, origin_fiber=True)
    return codim - sum((e * mi for e, mi in zip(A.exponents, m)), Fraction(0))


def _codim_table(A: MultiIdeal, bound: int) -> np.ndarray:
    """``table[m] = contact_codim(A, m, origin_fiber=True)`` for all ``m`` in ``[0, bound]^s``.

    Built from one pass over every ``w >= 1`` with ``<w,1> <= N * bound``:
    each ``w`` is feasible for all ``m <= val_w(a)``, so the table is a
    suffix minimum of the per-``w`` totals.
    """
    N, s = A.dim, len(A)
    big = np.iinfo(np.int64).max
    table = np.full((bound + 1,) * s, big, dtype=np.int64)
    mats = [_gen_matrix(a) for a in A.ideals]
    for total in range(N, N * max(bound, 1) + 1):
        W = _compositions(total, N, 1)
        idx = tuple(np.minimum(_vals(W, U), bound) for U in mats)
        np.minimum.at(table, idx, total)
    for axis in range(s):
        table = np.flip(np.minimum.accumulate(np.flip(table, axis), axis=axis), axis)
    return table


def mld_via_jets(A: MultiIdeal, search_bound: int, reference: InvariantResult | None = None) -> InvariantResult:
    """Minimum of ``s_m`` over ``|m| <= search_bound``.

    A negative ``s_m`` proves the mld is ``-inf``.  A finite minimum is only
    certified when it matches a certified ``reference`` (normally the result
    of :func:`mld_toric`).
    """
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    s = len(A)
    D, E = _scaled_exponents(A)
    table = _codim_table(A, search_bound)
    grids = np.indices(table.shape)
    weight = sum(Ei * grids[i] for i, Ei in enumerate(E))
    scaled = D * table - weight
    mask = grids.sum(axis=0) <= search_bound
    scaled = np.where(mask, scaled, np.iinfo(np.int64).max)
    flat = int(np.argmin(scaled))  # C order: first hit is lex smallest m
    best = int(scaled.flat[flat])
    m = tuple(int(x) for x in np.unravel_index(flat, table.shape))
    if s == 0:  # pragma: no cover
        raise ValueError("empty multiideal")
    value = Fraction(best, D)
    if value < 0:
        # any negative s_m decides -inf; report the lexicographically first one
        first = int(np.flatnonzero((scaled < 0).ravel())[0])
        m = tuple(int(x) for x in np.unravel_index(first, table.shape))
        neg = Fraction(int(scaled.flat[first]), D)
        return InvariantResult(MINUS_INFINITY, m, CERTIFIED, "jets", box=search_bound, box_value=neg)
    cert = BOX_BOUNDED
    if reference is not None and reference.certified and reference.value == value:
        cert = CERTIFIED
    return InvariantResult(value, m, cert, "jets", box=search_bound)


# --------------------------------------------------------------------------
# toric mld
# --------------------------------------------------------------------------


def default_box(A: MultiIdeal) -> int:
    """``N * (1 + ceil(sum_i e_i * D_i))``, ``D_i`` the top generator degree of ``a_i``."""
    return A.dim * (1 + ceil(sum(e * a.max_degree() for a, e in A.factors)))


def _epigraph_lp(A: MultiIdeal, lower=None, upper=None, simplex=False):
    """LP relaxation ``min <w,1> - sum e_i t_i`` with ``t_i <= <w,u>`` for ``u`` in ``a_i``.

    ``simplex`` replaces the bounds on ``w`` by ``w >= 0, sum w = 1``.
    """
    N, s = A.dim, len(A)
    c = [1] * N + [-e for e in A.exponents]
    A_ub, b_ub = [], []
    for i, a in enumerate(A.ideals):
        for u in a.generators:
            row = [-x for x in u] + [0] * s
            row[N + i] = 1
            A_ub.append(row)
            b_ub.append(0)
    A_eq, b_eq = [], []
    if simplex:
        A_eq.append([1] * N + [0] * s)
        b_eq.append(1)
    else:
        for j in range(N):
            if lower is not None and lower[j] > 0:
                row = [0] * (N + s)
                row[j] = -1
                A_ub.append(row)
                b_ub.append(-lower[j])
            if upper is not None and upper[j] is not None:
                row = [0] * (N + s)
                row[j] = 1
                A_ub.append(row)
                b_ub.append(upper[j])
    return solve_lp(c, A_ub, b_ub, A_eq, b_eq, free=range(N, N + s))


def _box_minimum(A: MultiIdeal, B: int, negative_only: bool = False):
    """Exact minimum of ``D * log_discrepancy`` over ``w`` in ``[1, B]^N``.

    Returns ``(scaled_value, w)`` with the lexicographically smallest
    minimizer, or with ``negative_only`` the lexicographically first ``w``
    with a negative value (``None`` if there is none).
    """
    N = A.dim
    D, E = _scaled_exponents(A)
    mats = [_gen_matrix(a) for a in A.ideals]
    tail_shape = (B,) * (N - 1)
    tail = (np.indices(tail_shape).reshape(N - 1, -1).T + 1) if N > 1 else np.empty((1, 0), dtype=np.int64)
    best = None
    for first in range(1, B + 1):
        W = np.hstack([np.full((len(tail), 1), first, dtype=np.int64), tail])
        vals = D * W.sum(axis=1)
        for U, Ei in zip(mats, E):
            vals = vals - Ei * _vals(W, U)
        if negative_only:
            idx = np.flatnonzero(vals < 0)
            if len(idx):
                return int(vals[idx[0]]), tuple(int(x) for x in W[idx[0]])
            continue
        k = int(np.argmin(vals))
        if best is None or vals[k] < best[0]:
            best = (int(vals[k]), tuple(int(x) for x in W[k]))
    return best


def _negative_witness_from_ray(A: MultiIdeal, r: Sequence[Fraction]) -> tuple[int, ...]:
    """Integer ``w >= 1`` with negative log discrepancy near a ray ``r >= 0`` where it is negative."""
    ones = (1,) * A.dim
    phi_one = log_discrepancy(ones, A)
    if phi_one < 0:
        return ones
    r = [Fraction(x) for x in r]
    phi_r = sum(r) - sum((e * min(dot(r, u) for u in a.generators) for a, e in A.factors), Fraction(0))
    # subadditivity: phi(r + eps*1) <= phi(r) + eps*phi(1)
    eps = Fraction(1) if phi_one == 0 else -phi_r / (2 * phi_one)
    eps = min(eps, Fraction(1))
    v = [x + eps for x in r]
    den = lcm(*(x.denominator for x in v))
    w = tuple(int(x * den) for x in v)
    assert log_discrepancy(w, A) < 0
    return w


def _branch_and_bound(A: MultiIdeal, incumbent: tuple[Fraction, tuple[int, ...]], D: int):
    """Exact integer minimum of the log discrepancy over ``w >= 1``.

    Returns ``(value, w, proven)``; ``proven`` is False when the node limit
    was hit before the tree was closed.
    """
    N = A.dim
    best_val, best_w = incumbent
    stack = [((1,) * N, (None,) * N)]
    nodes = 0
    while stack:
        nodes += 1
        if nodes > BNB_NODE_LIMIT:
            return best_val, best_w, False
        lower, upper = stack.pop()
        res = _epigraph_lp(A, lower, upper)
        if not res.ok:
            continue
        # objective values of integer points are multiples of 1/D
        if Fraction(ceil(res.value * D), D) >= best_val:
            continue
        w = res.x[:N]
        frac = next((j for j, x in enumerate(w) if x.denominator != 1), None)
        if frac is None:
            wi = tuple(int(x) for x in w)
            val = log_discrepancy(wi, A)
            if val < best_val or (val == best_val and wi < best_w):
                best_val, best_w = val, wi
            continue
        x = w[frac]
        lo_up = list(upper)
        lo_up[frac] = floor(x)
        hi_lo = list(lower)
        hi_lo[frac] = ceil(x)
        stack.append((tuple(hi_lo), tuple(upper)))
        if floor(x) >= lower[frac]:
            stack.append((tuple(lower), tuple(lo_up)))
    return best_val, best_w, True


def mld_toric(A: MultiIdeal, box: int | None = None) -> InvariantResult:
    """Minimal log discrepancy at the origin over toric divisors.

    ``-inf`` is decided exactly: the log discrepancy is positively
    homogeneous, so it takes a negative value on ``w >= 1`` iff its minimum
    over the simplex ``w >= 0, sum w = 1`` is negative (an LP).  Otherwise the
    LP minimum over ``w >= 1`` is a lower bound; the box minimum over
    ``[1, B]^N`` is certified when it meets that bound rounded up to the
    value lattice, and failing that by exact branch and bound.
    """
    B = default_box(A) if box is None else int(box)
    if B < 1:
        raise ValueError("box must be >= 1")
    D, _ = _scaled_exponents(A)

    ray = _epigraph_lp(A, simplex=True)
    if not ray.ok:  # pragma: no cover
        raise RuntimeError(f"simplex LP failed: {ray.status}")
    if ray.value < 0:
        hit = _box_minimum(A, min(B, 8), negative_only=True)
        if hit is not None:
            w = hit[1]
        else:
            w = _negative_witness_from_ray(A, ray.x[: A.dim])
        return InvariantResult(MINUS_INFINITY, w, CERTIFIED, "toric", box=B, lower_bound=None,
                               box_value=log_discrepancy(w, A))

    relax = _epigraph_lp(A, lower=(1,) * A.dim)
    if not relax.ok:  # pragma: no cover
        raise RuntimeError(f"relaxation LP failed: {relax.status}")
    lower = relax.value
    rounded = Fraction(ceil(lower * D), D)
    scaled, w = _box_minimum(A, B)
    box_value = Fraction(scaled, D)
    if box_value == rounded:
        return InvariantResult(box_value, w, CERTIFIED, "toric", box=B, lower_bound=rounded, box_value=box_value)
    value, w2, proven = _branch_and_bound(A, (box_value, w), D)
    if proven:
        log.debug("mld of %s certified by branch and bound", A)
        return InvariantResult(value, w2, CERTIFIED, "toric+bnb", box=B, lower_bound=value, box_value=box_value)
    return InvariantResult(value, w2, BOX_BOUNDED, "toric", box=B, lower_bound=rounded, box_value=box_value)


def translated_jet_bound(A: MultiIdeal, toric: InvariantResult) -> int:
    """Jet search bound guaranteed to reach the mld, from a toric witness ``w*``."""
    k = sum(toric.witness) - 1
    return max(1, ceil(bound_divisor_to_jet(k, A.exponents)))


# --------------------------------------------------------------------------
# lct through jets
# --------------------------------------------------------------------------


def z_m(a: MonomialIdeal, m: int) -> Fraction:
    """``codim(Cont^{>=m+1}(a)) / (m+1)``, the codimension taken globally (``w >= 0``)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return Fraction(contact_codim(MultiIdeal(((a, Fraction(1)),)), (m + 1,), origin_fiber=False), m + 1)


def lct_via_jets(a: MonomialIdeal, search_bound: int) -> InvariantResult:
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    best = None
    for m in range(search_bound + 1):
        z = z_m(a, m)
        if best is None or z < best[0]:
            best = (z, m)
    value, m = best
    cert = CERTIFIED if value == lct_howald(a) else BOX_BOUNDED
    return InvariantResult(value, (m,), cert, "jets", box=search_bound)


# --------------------------------------------------------------------------
# md of lct
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MdLctResult:
    """Smallest discrepancy among toric divisors computing the lct.

    ``k_min`` is ``None`` when nothing within the cap computes the lct.
    ``computing`` lists every computing ``w`` with ``<w,1> <= cap + 1``.
    """

    lct: Fraction
    cap: int
    k_min: int | None
    witnesses: tuple[tuple[int, ...], ...]
    computing: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def found(self) -> bool:
        return self.k_min is not None


def md_lct_toric(a: MonomialIdeal, k_cap: int) -> MdLctResult:
    if k_cap < 1:
        raise ValueError("k_cap must be >= 1")
    lct = lct_howald(a)
    U = _gen_matrix(a)
    computing = []
    for total in range(1, k_cap + 2):
        W = _compositions(total, a.dim, 0)
        v = _vals(W, U)
        # total / v == lct with v > 0
        hit = (v > 0) & (total * lct.denominator == lct.numerator * v)
        computing.extend(tuple(int(x) for x in row) for row in W[hit])
    if not computing:
        return MdLctResult(lct, k_cap, None, (), ())
    k_min = min(sum(w) for w in computing) - 1
    witnesses = tuple(sorted(w for w in computing if sum(w) - 1 == k_min))
    return MdLctResult(lct, k_cap, k_min, witnesses, tuple(sorted(computing)))


# --------------------------------------------------------------------------
# height
# --------------------------------------------------------------------------


def height_monomial(a: MonomialIdeal) -> int:
    """Height of a monomial ideal: minimum vertex cover of its support hypergraph."""
    supports = [frozenset(i for i, x in enumerate(u) if x) for u in a.generators]
    for size in range(1, a.dim + 1):
        for S in combinations(range(a.dim), size):
            S = set(S)
            if all(sup & S for sup in supports):
                return size
    raise AssertionError("the full variable set always covers")  # pragma: no cover


# --------------------------------------------------------------------------
# bound translations
# --------------------------------------------------------------------------


def _exponent_list(e) -> list[Fraction]:
    e = [Fraction(x) for x in e]
    if not e:
        raise ValueError("exponent list is empty")
    if any(x <= 0 for x in e):
        raise ValueError("exponents must be positive")
    return e


def bound_divisor_to_jet(ell, e) -> Fraction:
    """Jet-order bound ``(ell + 1 + max e) / min e`` from a discrepancy bound ``ell``."""
    e = _exponent_list(e)
    return (Fraction(ell) + 1 + max(e)) / min(e)


def bound_jet_to_divisor(ell_prime, N: int, e) -> Fraction:
    """Discrepancy bound ``N - 1 + ell_prime * max e`` from a jet-order bound."""
    e = _exponent_list(e)
    return N - 1 + Fraction(ell_prime) * max(e)


def bound_lct_translation(L_prime: int, N: int) -> int:
    if L_prime < 1 or N < 1:
        raise ValueError("need L_prime >= 1 and N >= 1")
    return (L_prime + 1) * N - 1


# --------------------------------------------------------------------------
# empirical scan of md(lct) over ideals between m^mu and m
# --------------------------------------------------------------------------


def ideals_between(N: int, mu: int) -> list[MonomialIdeal]:
    """Every monomial ideal ``a`` with ``m^mu ⊆ a ⊆ m``, in a canonical order.

    Such an ideal is ``m^mu`` plus an upward-closed set of monomials of degree
    ``1..mu-1``; those sets are enumerated degree by degree.
    """
    if mu == 1:
        return [maximal_ideal(N)]
    low = [u for d in range(1, mu) for u in sorted(_monomials_of_degree(N, d))]
    top = list(power_of_maximal_ideal(N, mu).generators)
    below = {
        u: [j for j, v in enumerate(low[:k]) if all(x >= y for x, y in zip(u, v))]
        for k, u in enumerate(low)
    }
    out = set()

    def rec(k: int, chosen: list[bool]):
        if k == len(low):
            out.add(minimalize([u for u, c in zip(low, chosen) if c] + top))
            return
        u = low[k]
        if any(chosen[j] for j in below[u]):
            rec(k + 1, chosen + [True])
        else:
            rec(k + 1, chosen + [False])
            rec(k + 1, chosen + [True])

    rec(0, [])
    return sorted(out, key=lambda a: (len(a.generators), a.generators))


def _random_ideal_between(N: int, mu: int, rng: random.Random) -> MonomialIdeal:
    low = [u for d in range(1, mu) for u in sorted(_monomials_of_degree(N, d))]
    picked = [u for u in low if rng.random() < 0.3]
    return minimalize(picked + list(power_of_maximal_ideal(N, mu).generators))


@dataclass(frozen=True)
class ScanReport:
    N: int
    mu: int
    cap: int
    mode: str
    seed: int | None
    records: tuple[tuple[MonomialIdeal, int | None], ...]

    @property
    def unresolved(self) -> list[MonomialIdeal]:
        return [a for a, k in self.records if k is None]

    @property
    def max_md(self) -> int | None:
        ks = [k for _, k in self.records if k is not None]
        return max(ks) if ks else None

    @property
    def argmax(self) -> MonomialIdeal | None:
        best = self.max_md
        return next((a for a, k in self.records if k == best), None) if best is not None else None


def scan_md_bound(
    N: int,
    mu: int,
    k_cap: int,
    *,
    samples: int | None = None,
    seed: int = 0,
    threads: int = 1,
) -> ScanReport:
    """``md_lct_toric`` over ideals between ``m^mu`` and ``m``: an empirical lower estimate of the uniform bound.

    Exhaustive for ``N <= 3`` and ``mu <= 4`` unless ``samples`` is given;
    sampled (deterministically from ``seed``) otherwise.
    """
    if N < 1 or mu < 1 or k_cap < 1:
        raise ValueError("N, mu and cap must be positive")
    if samples is None and N <= 3 and mu <= 4:
        mode = "exhaustive"
        ideals = ideals_between(N, mu)
        used_seed = None
    else:
        mode = "sampled"
        rng = random.Random(seed)
        ideals = sorted(
            {_random_ideal_between(N, mu, rng) for _ in range(samples or 100)},
            key=lambda a: (len(a.generators), a.generators),
        )
        used_seed = seed

    def work(a):
        return a, md_lct_toric(a, k_cap).k_min

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = tuple(pool.map(work, ideals))
    else:
        records = tuple(map(work, ideals))
    return ScanReport(N, mu, k_cap, mode, used_seed, records)
