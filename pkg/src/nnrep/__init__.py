"""Exact nearest-neighbour representations of depth-2 threshold circuits."""

from .boolean import (
    DecisionList,
    Depth2Circuit,
    DomCircuit,
    SymmetricProfile,
    ThresholdGate,
    build_family,
    dl_to_dom_circuit,
    intervals,
)
from .numerics import RationalMatrix, mp_inverse, resolution_matrix, resolution_scalar
from .representations import AnchorSet, construct, check_regularity
from .verification import VerificationReport, nearest_anchor, size_and_resolution, verify_exhaustive

__version__ = "0.1.0"
