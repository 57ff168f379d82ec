"""Exact arithmetic and the basic vocabulary: exponent vectors, coefficient
rings, sparse polynomials, monomial ideals and multiideals.

Rationals are :class:`fractions.Fraction` throughout; no floating point is
used anywhere in the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Coefficient = Union[int, Fraction]

__all__ = [
    "Exponent",
    "Ring",
    "QQ",
    "ZZ",
    "GF",
    "is_prime",
    "as_rational",
    "format_rational",
    "exponent_vector",
    "SparsePolynomial",
    "MonomialIdeal",
    "MultiIdeal",
    "minimalize",
    "contains",
    "power_of_maximal_ideal",
    "maximal_ideal",
    "INFINITY",
    "MINUS_INFINITY",
]

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def as_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction or a string such as ``"3/4"``) exactly.

    Floats are refused: they would silently bring rounding into an exact
    computation.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a Fraction or 'a/b' string")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            num, sep, den = s.partition("/")
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction | int) -> str:
    """``a/b`` in lowest terms, or ``a`` when integral."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def exponent_vector(entries: Iterable[int]) -> Exponent:
    u = tuple(int(a) for a in entries)
    if not u:
        raise ValueError("exponent vector must have length >= 1")
    if any(a < 0 for a in u):
        raise ValueError(f"negative exponent in {u}")
    return u


class _Infinite:
    """Signed infinity that compares against Fractions and ints."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, _Infinite) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinite):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Infinite):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other


INFINITY = _Infinite(1)
MINUS_INFINITY = _Infinite(-1)


# --------------------------------------------------------------------------
# coefficient rings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: ``QQ``, ``ZZ`` or ``GF(p)``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("QQ", "ZZ", "GF"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "GF":
            if not is_prime(self.p):
                raise ValueError(
                    f"GF({self.p}): only prime fields are supported; "
                    "non-prime finite fields need field-extension lifting, which is not implemented"
                )
            if self.p >= MAX_PRIME:
                raise ValueError(f"prime {self.p} exceeds 2^31")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GF" else 0

    def normalize(self, c) -> Coefficient:
        if self.kind == "QQ":
            return as_rational(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                if self.kind == "ZZ":
                    raise ValueError(f"{c} is not an integer")
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            c = c.numerator
        if isinstance(c, str):
            c = as_rational(c)
            return self.normalize(c)
        c = int(c)
        if self.kind == "GF":
            return c % self.p
        return c

    def __str__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind


QQ = Ring("QQ")
ZZ = Ring("ZZ")


def GF(p: int) -> Ring:
    return Ring("GF", p)


# --------------------------------------------------------------------------
# sparse polynomials
# --------------------------------------------------------------------------


class SparsePolynomial:
    """Polynomial in ``dim`` variables as an exponent -> coefficient map.

    Zero coefficients are never stored; the zero polynomial has no terms.
    Instances are immutable.
    """

    __slots__ = ("ring", "dim", "_terms", "_hash")

    def __init__(self, ring: Ring, dim: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Coefficient] = {}
        for u, c in items:
            u = exponent_vector(u)
            if len(u) != dim:
                raise ValueError(f"exponent {u} has length {len(u)}, expected {dim}")
            c = ring.normalize(c)
            acc[u] = ring.normalize(acc.get(u, 0) + c) if u in acc else c
        self.ring = ring
        self.dim = dim
        self._terms = {u: c for u, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def monomial(cls, ring: Ring, u: Sequence[int], coeff=1) -> "SparsePolynomial":
        u = exponent_vector(u)
        return cls(ring, len(u), {u: coeff})

    @property
    def terms(self) -> dict[Exponent, Coefficient]:
        return dict(self._terms)

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.ring == other.ring and self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.dim, tuple(self._terms.items())))
        return self._hash

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_compatible(other)
        return SparsePolynomial(self.ring, self.dim, list(self.items()) + list(other.items()))

    def __neg__(self):
        return SparsePolynomial(self.ring, self.dim, {u: -c for u, c in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_compatible(other)
        out = []
        for u, a in self.items():
            for v, b in other.items():
                out.append((tuple(x + y for x, y in zip(u, v)), a * b))
        return SparsePolynomial(self.ring, self.dim, out)

    def _check_compatible(self, other):
        if self.ring != other.ring or self.dim != other.dim:
            raise ValueError(f"incompatible polynomials: {self.ring}/{self.dim} vs {other.ring}/{other.dim}")

    def evaluate(self, point: Sequence):
        total = 0
        for u, c in self.items():
            term = c
            for x, a in zip(point, u):
                term = term * x**a
            total += term
        return self.ring.normalize(total) if self.ring.kind == "GF" else total

    def change_ring(self, ring: Ring) -> "SparsePolynomial":
        return SparsePolynomial(ring, self.dim, self.items())

    def __repr__(self):
        return f"SparsePolynomial({self.ring}, {self.dim}, {self._terms!r})"

    def __str__(self):
        return format_polynomial(self._terms, [f"x{i + 1}" for i in range(self.dim)])


def format_polynomial(terms: Mapping[Exponent, Coefficient], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for u, c in sorted(terms.items()):
        mono = "*".join(
            name if a == 1 else f"{name}^{a}" for name, a in zip(names, u) if a
        )
        if not mono:
            parts.append(format_rational(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{format_rational(c)}*{mono}")
    return " + ".join(parts)


# --------------------------------------------------------------------------
# monomial ideals
# --------------------------------------------------------------------------


def _dominates(v: Exponent, u: Exponent) -> bool:
    """True when ``v >= u`` componentwise, i.e. ``x^v`` lies in ``(x^u)``."""
    return all(b >= a for a, b in zip(u, v))


def _minimal_elements(gens: Iterable[Exponent]) -> tuple[Exponent, ...]:
    uniq = sorted(set(gens), key=lambda u: (sum(u), u))
    kept: list[Exponent] = []
    for u in uniq:
        if not any(_dominates(u, k) for k in kept):
            kept.append(u)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Proper nonzero monomial ideal given by its minimal generators.

    Build instances through :func:`minimalize` unless the generators are
    already known to form an antichain; the constructor checks this anyway.
    """

    dim: int
    generators: tuple[Exponent, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if not self.generators:
            raise ValueError("a monomial ideal needs at least one generator")
        gens = tuple(sorted(exponent_vector(u) for u in self.generators))
        for u in gens:
            if len(u) != self.dim:
                raise ValueError(f"generator {u} does not have length {self.dim}")
            if not any(u):
                raise ValueError("the zero exponent generates the unit ideal")
        if _minimal_elements(gens) != gens:
            raise ValueError(f"generators {gens} are not an antichain; use minimalize()")
        object.__setattr__(self, "generators", gens)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def contains_monomial(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return any(_dominates(v, u) for u in self.generators)

    def max_degree(self) -> int:
        return max(sum(u) for u in self.generators)

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return minimalize(
            tuple(a + b for a, b in zip(u, v)) for u in self.generators for v in other.generators
        )

    def __str__(self):
        names = [f"x{i + 1}" for i in range(self.dim)]
        return "(" + ", ".join(format_polynomial({u: 1}, names) for u in self.generators) + ")"


def minimalize(generators: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Reduce a generating set of exponent vectors to its minimal antichain."""
    gens = [exponent_vector(u) for u in generators]
    if not gens:
        raise ValueError("empty generating set")
    dims = {len(u) for u in gens}
    if len(dims) != 1:
        raise ValueError(f"generators of mixed lengths {sorted(dims)}")
    if any(not any(u) for u in gens):
        raise ValueError("the zero exponent generates the unit ideal")
    return MonomialIdeal(dims.pop(), _minimal_elements(gens))


def contains(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """Whether ``b`` is contained in ``a``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return all(a.contains_monomial(v) for v in b.generators)


def _monomials_of_degree(n: int, d: int):
    for combo in combinations_with_replacement(range(n), d):
        u = [0] * n
        for i in combo:
            u[i] += 1
        yield tuple(u)


def power_of_maximal_ideal(N: int, mu: int) -> MonomialIdeal:
    if N < 1 or mu < 1:
        raise ValueError(f"need N >= 1 and mu >= 1, got N={N}, mu={mu}")
    return MonomialIdeal(N, tuple(sorted(_monomials_of_degree(N, mu))))


def maximal_ideal(N: int) -> MonomialIdeal:
    return power_of_maximal_ideal(N, 1)


@dataclass(frozen=True)
class MultiIdeal:
    """Formal product ``a_1^{e_1} ... a_s^{e_s}`` with positive rational exponents."""

    factors: tuple[tuple[MonomialIdeal, Fraction], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a multiideal needs at least one factor")
        fixed = []
        for ideal, e in self.factors:
            e = as_rational(e)
            if e <= 0:
                raise ValueError(f"exponent {e} is not positive")
            fixed.append((ideal, e))
        if len({ideal.dim for ideal, _ in fixed}) != 1:
            raise ValueError("factors live in different dimensions")
        object.__setattr__(self, "factors", tuple(fixed))

    @classmethod
    def of(cls, *pairs) -> "MultiIdeal":
        """``MultiIdeal.of((ideal, "1/2"), (other, 3))``."""
        return cls(tuple((i, as_rational(e)) for i, e in pairs))

    @property
    def dim(self) -> int:
        return self.factors[0][0].dim

    @property
    def ideals(self) -> tuple[MonomialIdeal, ...]:
        return tuple(i for i, _ in self.factors)

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(e for _, e in self.factors)

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return " * ".join(f"{i}^{format_rational(e)}" for i, e in self.factors)
