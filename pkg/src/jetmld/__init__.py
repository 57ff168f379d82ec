"""Exact singularity invariants of monomial multiideals on affine space.

Log canonical thresholds, minimal log discrepancies and the jet-codimension
functions ``s_m`` / ``z_m``, computed by exact polyhedral and integer
optimization over toric valuations; jet-scheme equations; and mod-p
liftings that preserve monomial valuations.
"""

from .core import (
    GF,
    INFINITY,
    MINUS_INFINITY,
    QQ,
    ZZ,
    MonomialIdeal,
    MultiIdeal,
    SparsePolynomial,
    contains,
    maximal_ideal,
    minimalize,
    power_of_maximal_ideal,
)
from .invariants import (
    InvariantResult,
    contact_codim,
    height_monomial,
    lct_via_jets,
    md_lct_toric,
    mld_toric,
    mld_via_jets,
    s_m,
    z_m,
)
from .polyhedra import lct_howald, val_w_ideal, val_w_polynomial
from .toric import discrepancy, lct_ratio, log_discrepancy

__version__ = "0.1.0"
