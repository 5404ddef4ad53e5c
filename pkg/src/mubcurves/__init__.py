"""Phase-space curves over GF(2^n) and the mutually unbiased bases they label."""

from .gf import GF2n, ReducibleModulusError
from .mub import Basis, OperatorClass, class_from_curve, eigenbasis, separability_structure
from .pauli import PauliOperator, displacement
from .phasespace import (
    Bundle,
    CapabilityError,
    Curve,
    CurveError,
    CurveKind,
    enumerate_bundles,
    enumerate_structures,
)
from .transforms import LocalClifford, LocalRotation, find_transformation

__version__ = "0.1.0"
