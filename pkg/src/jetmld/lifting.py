"""Lifting polynomials from GF(p) to the integers.

Reduction mod p is the coefficient-wise projection ZZ -> GF(p).  A lifting
of ``f`` is any integer polynomial reducing to ``f``.  The canonical lifting
keeps the support of ``f``, so every monomial valuation is preserved; an
arbitrary lifting can be repaired by dropping its terms of weight below
``val_w(f)``, which all reduce to zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .core import GF, ZZ, MonomialIdeal, SparsePolynomial, is_prime, minimalize
from .jets import DegenerateLift
from .polyhedra import dot, val_w_polynomial, weight_vector

__all__ = [
    "LiftingError",
    "LiftingRecord",
    "lift_prime_field",
    "reduce_mod_p",
    "truncate_lifting",
    "lift_ideal_valuation_preserving",
    "lift_monomial_ideal",
    "reduce_monomial_ideal",
    "adversarial_lifting",
]


class LiftingError(ValueError):
    """A lifting precondition failed; ``term`` names the offending monomial when there is one."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def lift_prime_field(f: SparsePolynomial) -> SparsePolynomial:
    if f.ring.kind != "GF":
        raise ValueError(f"expected a polynomial over a prime field, got {f.ring}")
    # coefficients are stored as residues in [0, p-1] already
    return SparsePolynomial(ZZ, f.dim, f.items())


def reduce_mod_p(F: SparsePolynomial, p: int) -> SparsePolynomial:
    _require_prime(p)
    if F.ring != ZZ:
        raise ValueError(f"expected an integer polynomial, got {F.ring}")
    return SparsePolynomial(GF(p), F.dim, F.items())


def truncate_lifting(F: SparsePolynomial, w: Sequence[int], d: int, p: int) -> SparsePolynomial:
    """Drop every term of ``F`` with ``<w,u> < d``.

    ``d`` must equal ``val_w(F mod p)``; then the dropped terms are all
    divisible by ``p``, the reduction is unchanged and the result has
    ``val_w`` exactly ``d``.
    """
    w = weight_vector(w)
    f = reduce_mod_p(F, p)
    if f.is_zero():
        raise DegenerateLift(f"{F} reduces to zero mod {p}")
    expected = val_w_polynomial(w, f)
    if d != expected:
        # when d is too large, the culprit is a surviving term of weight below d
        low = [u for u, c in F.items() if dot(w, u) < d and c % p]
        term = min(low, key=lambda u: (dot(w, u), u)) if low else None
        raise LiftingError(f"truncation degree {d} differs from val_w(F mod {p}) = {expected}", term=term)
    for u, c in F.items():
        if dot(w, u) < d and c % p:
            raise LiftingError(f"term {c}*x^{u} has weight {dot(w, u)} < {d} but is not divisible by {p}", term=u)
    return SparsePolynomial(ZZ, F.dim, [(u, c) for u, c in F.items() if dot(w, u) >= d])


@dataclass(frozen=True)
class LiftingRecord:
    p: int
    original: SparsePolynomial
    lifted: SparsePolynomial
    weight: tuple[int, ...] | None = None
    truncation_degree: int | None = None

    def check(self) -> None:
        if reduce_mod_p(self.lifted, self.p) != self.original:
            raise AssertionError(f"lift of {self.original} does not reduce back")
        if self.weight is not None:
            a = val_w_polynomial(self.weight, self.original)
            b = val_w_polynomial(self.weight, self.lifted)
            if not (a == b == self.truncation_degree):
                raise AssertionError(f"valuations differ: {a} vs {b} (d={self.truncation_degree})")


def lift_ideal_valuation_preserving(
    gens: Sequence[SparsePolynomial], w: Sequence[int], lifts: Sequence[SparsePolynomial] | None = None
) -> list[LiftingRecord]:
    """Lift each generator with ``val_w`` preserved.

    ``lifts`` optionally supplies starting liftings (any integer polynomials
    reducing to the generators); by default the canonical ones are used.
    """
    w = weight_vector(w)
    records = []
    for k, g in enumerate(gens):
        if g.is_zero():
            raise ValueError("generators must be nonzero")
        p = g.ring.p
        start = lift_prime_field(g) if lifts is None else lifts[k]
        if reduce_mod_p(start, p) != g:
            raise LiftingError(f"supplied lift {start} does not reduce to {g}")
        d = val_w_polynomial(w, g)
        rec = LiftingRecord(p, g, truncate_lifting(start, w, d, p), w, d)
        rec.check()
        records.append(rec)
    return records


def lift_monomial_ideal(a: MonomialIdeal, p: int) -> MonomialIdeal:
    """Lift the monomial generators over GF(p) to ZZ and read the ideal back off the supports."""
    _require_prime(p)
    lifted = [lift_prime_field(SparsePolynomial.monomial(GF(p), u)) for u in a.generators]
    return minimalize(u for F in lifted for u in F.support())


def reduce_monomial_ideal(a: MonomialIdeal, p: int) -> MonomialIdeal:
    reduced = [reduce_mod_p(SparsePolynomial.monomial(ZZ, u), p) for u in a.generators]
    return minimalize(u for f in reduced for u in f.support())


def adversarial_lifting(f: SparsePolynomial, w: Sequence[int], rng: random.Random, extra_terms: int = 2) -> SparsePolynomial:
    """A non-canonical lift of ``f``: shifted coefficients plus p-divisible terms of low weight."""
    p = f.ring.p
    w = weight_vector(w)
    d = val_w_polynomial(w, f)
    terms = [(u, c + p * rng.randint(-2, 2)) for u, c in f.items()]
    low = [u for u in _exponents_below(f.dim, w, d)]
    for _ in range(extra_terms):
        if low:
            terms.append((rng.choice(low), p * rng.choice([-2, -1, 1, 2, 3])))
    return SparsePolynomial(ZZ, f.dim, terms)


def _exponents_below(n: int, w: Sequence[int], d: int) -> list[tuple[int, ...]]:
    """Exponents ``u`` with ``<w,u> < d`` and every entry at most ``d``."""
    out = []

    def rec(prefix, rem):
        if len(prefix) == n:
            if dot(w, prefix) < d:
                out.append(tuple(prefix))
            return
        for a in range(rem + 1):
            rec(prefix + [a], rem)

    if d > 0:
        rec([], min(d, 4))
    return out
