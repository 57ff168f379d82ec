"""Toric divisors over affine space: discrepancy, log discrepancy, lct ratios.

The toric prime divisor ``E_w`` attached to a weight vector ``w`` has
``k_E + 1 = <w, 1>`` and valuation ``val_w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import MonomialIdeal, MultiIdeal
from .polyhedra import center_is_origin, val_w_ideal, weight_vector

__all__ = [
    "ToricDivisor",
    "NotApplicable",
    "NOT_APPLICABLE",
    "discrepancy",
    "log_discrepancy",
    "lct_ratio",
]


@dataclass(frozen=True)
class ToricDivisor:
    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", weight_vector(self.w))

    @property
    def k_plus_one(self) -> int:
        return sum(self.w)

    @property
    def discrepancy(self) -> int:
        return sum(self.w) - 1

    @property
    def center_is_origin(self) -> bool:
        return center_is_origin(self.w)


class NotApplicable:
    """Marker for an lct ratio with zero denominator (``val_w(a) == 0``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotApplicable"


NOT_APPLICABLE = NotApplicable()


def discrepancy(w: Sequence[int]) -> int:
    return ToricDivisor(tuple(w)).discrepancy


def log_discrepancy(w: Sequence[int], A: MultiIdeal) -> Fraction:
    """``<w,1> - sum_i e_i val_w(a_i)``."""
    w = weight_vector(w)
    if len(w) != A.dim:
        raise ValueError(f"weight vector of length {len(w)} used in dimension {A.dim}")
    return sum(w) - sum((e * val_w_ideal(w, a) for a, e in A.factors), Fraction(0))


def lct_ratio(w: Sequence[int], a: MonomialIdeal) -> Fraction | NotApplicable:
    v = val_w_ideal(w, a)
    if v == 0:
        return NOT_APPLICABLE
    return Fraction(sum(w), v)
