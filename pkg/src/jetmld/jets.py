"""Jet-scheme equations.

Substituting ``X_l -> sum_q X_l^(q) t^q`` into ``f`` and reading off the
coefficient of ``t^j`` gives the polynomial ``F^(j)`` in the jet variables.
The m-jets of ``V(f_1, ..., f_r)`` are cut out by ``F_i^(0..m)``; arcs
through the origin additionally satisfy ``X_1^(0) = ... = X_N^(0) = 0``.

Jet polynomials are sparse maps from monomials to coefficients, where a
monomial is a sorted tuple of ``(variable, multiplicity)`` pairs and a
variable is ``(base_index, order)`` with ``base_index`` starting at 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import SparsePolynomial, Ring, ZZ, GF, QQ, format_rational, as_rational

__all__ = [
    "JetVariable",
    "JetPolynomial",
    "JetSystem",
    "DegenerateLift",
    "jet_equations",
    "jet_system",
    "reduce_jet_system_mod_p",
    "export_cas",
    "parse_cas",
]

JetVariable = tuple[int, int]  # (base_index >= 1, order >= 0)
JetMonomial = tuple[tuple[JetVariable, int], ...]


class DegenerateLift(ValueError):
    """Reduction mod p killed the whole polynomial, so there is nothing to compare against."""


def _mono_mul(a: JetMonomial, b: JetMonomial) -> JetMonomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, k in b:
        acc[v] = acc.get(v, 0) + k
    return tuple(sorted(acc.items()))


def _mono_key(mono: JetMonomial) -> tuple[JetVariable, ...]:
    """Monomial as its sequence of variables with repetition, for lexicographic sorting."""
    return tuple(v for v, k in mono for _ in range(k))


class JetPolynomial:
    """Sparse polynomial in jet variables over a coefficient ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[JetMonomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[JetMonomial, object] = {}
        for mono, c in items:
            mono = tuple(sorted((tuple(v), int(k)) for v, k in mono if k))
            acc[mono] = acc.get(mono, 0) + c
        self.ring = ring
        self.terms = {
            mono: c
            for mono, c in sorted(((mono, ring.normalize(c)) for mono, c in acc.items()), key=lambda t: _mono_key(t[0]))
            if c != 0
        }

    @classmethod
    def variable(cls, ring: Ring, base_index: int, order: int) -> "JetPolynomial":
        return cls(ring, {(((base_index, order), 1),): 1})

    @classmethod
    def constant(cls, ring: Ring, c) -> "JetPolynomial":
        return cls(ring, {(): c})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[JetVariable]:
        return {v for mono in self.terms for v, _ in mono}

    def __eq__(self, other):
        if not isinstance(other, JetPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(self.terms.items())))

    def __add__(self, other: "JetPolynomial") -> "JetPolynomial":
        return JetPolynomial(self.ring, list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other: "JetPolynomial") -> "JetPolynomial":
        out = []
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                out.append((_mono_mul(ma, mb), ca * cb))
        return JetPolynomial(self.ring, out)

    def scale(self, c) -> "JetPolynomial":
        return JetPolynomial(self.ring, [(m, c * v) for m, v in self.terms.items()])

    def change_ring(self, ring: Ring) -> "JetPolynomial":
        return JetPolynomial(ring, self.terms)

    def weighted_degrees(self) -> set[int]:
        """Set of ``sum order * multiplicity`` over the terms."""
        return {sum(q * k for (_, q), k in mono) for mono in self.terms}

    def evaluate(self, values: Mapping[JetVariable, object]):
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, k in mono:
                term = term * values[v] ** k
            total += term
        return total

    def __repr__(self):
        return f"JetPolynomial({self.ring}, {format_jet_polynomial(self)!r})"

    def __str__(self):
        return format_jet_polynomial(self)


def _var_name(v: JetVariable) -> str:
    return f"X_{v[0]}_{v[1]}"


def format_jet_polynomial(f: JetPolynomial) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono, c in f.terms.items():
        names = "*".join(_var_name(v) if k == 1 else f"{_var_name(v)}^{k}" for v, k in mono)
        if not names:
            parts.append(format_rational(c))
        elif c == 1:
            parts.append(names)
        else:
            parts.append(f"{format_rational(c)}*{names}")
    return " + ".join(parts)


# --------------------------------------------------------------------------
# jet equations
# --------------------------------------------------------------------------


def _series_mul(a: list[JetPolynomial], b: list[JetPolynomial], prec: int, ring: Ring) -> list[JetPolynomial]:
    out = []
    for j in range(prec):
        acc = JetPolynomial(ring)
        for i in range(j + 1):
            if not a[i].is_zero() and not b[j - i].is_zero():
                acc = acc + a[i] * b[j - i]
        out.append(acc)
    return out


def jet_equations(f: SparsePolynomial, m: int) -> list[JetPolynomial]:
    """``[F^(0), ..., F^(m)]`` for ``f``; zero entries are kept in place."""
    if m < 0:
        raise ValueError("jet order must be nonnegative")
    if f.is_zero():
        raise ValueError("jet equations of the zero polynomial are not defined")
    ring, prec = f.ring, m + 1
    one = [JetPolynomial.constant(ring, 1)] + [JetPolynomial(ring) for _ in range(m)]
    powers: dict[tuple[int, int], list[JetPolynomial]] = {}

    def power(ell: int, k: int) -> list[JetPolynomial]:
        if k == 0:
            return one
        key = (ell, k)
        if key not in powers:
            base = [JetPolynomial.variable(ring, ell + 1, q) for q in range(prec)]
            powers[key] = base if k == 1 else _series_mul(power(ell, k - 1), base, prec, ring)
        return powers[key]

    total = [JetPolynomial(ring) for _ in range(prec)]
    for u, c in f.items():
        series = one
        for ell, k in enumerate(u):
            if k:
                series = _series_mul(series, power(ell, k), prec, ring)
        total = [t + s.scale(c) for t, s in zip(total, series)]
    return total


@dataclass(frozen=True)
class JetSystem:
    """Labelled equations of a contact locus through the origin.

    Labels are ``("F", factor, generator, order)`` (factor and generator
    counted from 1) followed by ``("fiber", l)`` for ``X_l^(0)``.
    """

    ring: Ring
    dim: int
    max_order: int
    entries: tuple[tuple[tuple, JetPolynomial], ...]
    warning: str | None = None

    @property
    def polynomials(self) -> list[JetPolynomial]:
        return [p for _, p in self.entries]

    @property
    def labels(self) -> list[tuple]:
        return [lab for lab, _ in self.entries]

    def __len__(self):
        return len(self.entries)


def jet_system(factors: Sequence[Sequence[SparsePolynomial]], m: Sequence[int]) -> JetSystem:
    """Equations ``F_ij^(q)`` for ``q < m_i`` of every generator ``f_ij``, then the fiber constraints."""
    m = tuple(int(x) for x in m)
    if len(m) != len(factors):
        raise ValueError(f"{len(factors)} factors but jet order vector {m}")
    if any(x < 0 for x in m):
        raise ValueError("jet orders must be nonnegative")
    gens = [g for fac in factors for g in fac]
    if not gens:
        raise ValueError("no generators")
    ring, dim = gens[0].ring, gens[0].dim
    for g in gens:
        if g.ring != ring or g.dim != dim:
            raise ValueError("generators must share ring and dimension")
        if g.is_zero():
            raise ValueError("generators must be nonzero")
    entries = []
    for i, (fac, mi) in enumerate(zip(factors, m), start=1):
        if mi == 0:
            continue
        for j, g in enumerate(fac, start=1):
            for q, F in enumerate(jet_equations(g, mi - 1)):
                entries.append((("F", i, j, q), F))
    for ell in range(1, dim + 1):
        entries.append((("fiber", ell), JetPolynomial.variable(ring, ell, 0)))
    warning = None if any(m) else "all jet orders are zero; only the fiber constraints were emitted"
    return JetSystem(ring, dim, max(max(m) - 1, 0), tuple(entries), warning)


def reduce_jet_system_mod_p(system: JetSystem | Sequence[JetPolynomial], p: int):
    """Coefficient-wise reduction of an integer jet system into ``GF(p)``."""
    target = GF(p)
    if isinstance(system, JetSystem):
        if system.ring != ZZ:
            raise ValueError(f"expected a system over ZZ, got {system.ring}")
        entries = tuple((lab, poly.change_ring(target)) for lab, poly in system.entries)
        return JetSystem(target, system.dim, system.max_order, entries, system.warning)
    polys = list(system)
    for poly in polys:
        if poly.ring != ZZ:
            raise ValueError(f"expected polynomials over ZZ, got {poly.ring}")
    return [poly.change_ring(target) for poly in polys]


# --------------------------------------------------------------------------
# CAS text export
# --------------------------------------------------------------------------


def export_cas(system: JetSystem | Sequence[JetPolynomial], dim: int | None = None, max_order: int | None = None) -> str:
    """Deterministic text form: a ``vars:`` header, then ``poly[i]: ...`` lines."""
    if isinstance(system, JetSystem):
        polys = system.polynomials
        dim, max_order = system.dim, system.max_order
    else:
        polys = list(system)
    if dim is None or max_order is None:
        used = set().union(*(p.variables() for p in polys)) if polys else set()
        dim = dim if dim is not None else max((v[0] for v in used), default=0)
        max_order = max_order if max_order is not None else max((v[1] for v in used), default=0)
    if polys:
        names = [_var_name((ell, q)) for ell in range(1, dim + 1) for q in range(max_order + 1)]
    else:
        names = []
    lines = ["vars:" + "".join(" " + n for n in names)]
    for i, poly in enumerate(polys):
        lines.append(f"poly[{i}]: {format_jet_polynomial(poly)}")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"^(?:(-?\d+(?:/\d+)?)\*)?(.*)$")


def parse_cas(text: str, ring: Ring = QQ) -> list[JetPolynomial]:
    """Inverse of :func:`export_cas` for the polynomial lines."""
    lines = text.strip("\n").split("\n")
    if not lines or not lines[0].startswith("vars:"):
        raise ValueError("missing vars header")
    out = []
    for k, line in enumerate(lines[1:]):
        head, _, body = line.partition(": ")
        if head != f"poly[{k}]":
            raise ValueError(f"bad line {k + 2}: {line!r}")
        if body.strip() == "0":
            out.append(JetPolynomial(ring))
            continue
        terms = []
        for tok in body.split(" + "):
            tok = tok.strip()
            mcoef = _TERM.match(tok)
            coef_s, rest = mcoef.group(1), mcoef.group(2)
            if re.fullmatch(r"-?\d+(?:/\d+)?", rest):
                terms.append(((), as_rational(rest)))
                continue
            coef = as_rational(coef_s) if coef_s else Fraction(1)
            mono = []
            for factor in rest.split("*"):
                name, _, exp = factor.partition("^")
                _, ell, q = name.split("_")
                mono.append(((int(ell), int(q)), int(exp) if exp else 1))
            terms.append((tuple(mono), coef))
        out.append(JetPolynomial(ring, terms))
    return out
