"""Exact computations for charged six-vertex lattice models.

Subpackages cover the ground ring (scalar), grid states and partition
functions (lattice), crossing vertices and Yang-Baxter checks (rvertex),
the twisted quantum-group R-matrix comparison (qgroup), cover lattices and
scattering constants (metaplectic), the crystal/pattern side (crystal),
and the command line front end (cli).
"""

from .scalar import Scalar, Frac, frac_eq, gauss_eval

__all__ = ["Scalar", "Frac", "frac_eq", "gauss_eval"]
__version__ = "0.1.0"
