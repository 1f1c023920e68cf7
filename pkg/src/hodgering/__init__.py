"""Exact weight-1 Hodge structures from polarized weight-2 Hodge algebras.

Main entry points: :func:`hodgering.clifford.build` for C(H) of a lattice,
:func:`hodgering.construction.construct` for the weight-1 structure and its
polarization, and :mod:`hodgering.cli` for the command line.
"""
from .algebra import Algebra, HodgeAlgebra, center, split_commutative, totally_real, validate_algebra
from .clifford import CliffordAlgebra, build, ks_structure
from .construction import (
    build_weight1,
    compute_W,
    construct,
    decompose,
    e_beta_maps,
    general_construct,
    polarization_search,
    verify_uniqueness,
)
from .errors import (
    CertificateFailure,
    DimensionMismatch,
    FieldConfigError,
    HodgeRingError,
    ParseError,
    UnsupportedCenter,
    ValidationError,
)
from .hodge import WeightOneHS, WeightTwoHS, induced_end_weight2, validate_weight1, validate_weight2
from .linalg import Subspace
from .scalars import EXACT, ComplexQuad, FloatField, RealQuad

__version__ = "0.1.0"
