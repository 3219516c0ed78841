"""Spectra and minimal polynomials of H-type groups built from Clifford modules."""

from .branches import BranchModel, branch_model, explicit_branch_values, killing_deviation
from .clifford import CliffordModule, build_module, clifford_act, spinor_product, verify_relations
from .errors import (BranchTrackingError, ClusterAmbiguity, DegenerateDirection, DimensionError,
                     HTypeError, InconsistentSamples, ModelSpecError, NoTermination,
                     NonGenericParameters, TransportAccuracyError)
from .geometry import HTypeAlgebra, connection_matrix, curvature_operator, c0_operator
from .minpoly import (LambdaPoly, blueprint_minpoly, closed_factor, predicted_minpoly,
                      rationalize_poly)
from .spectral import SpectrumReport, classify, spectrum

__all__ = [
    "BranchModel", "BranchTrackingError", "CliffordModule", "ClusterAmbiguity",
    "DegenerateDirection", "DimensionError", "HTypeAlgebra", "HTypeError",
    "InconsistentSamples", "LambdaPoly", "ModelSpecError", "NoTermination",
    "NonGenericParameters", "SpectrumReport", "TransportAccuracyError", "blueprint_minpoly",
    "branch_model", "build_module", "c0_operator", "classify", "clifford_act", "closed_factor",
    "connection_matrix", "curvature_operator", "explicit_branch_values", "killing_deviation",
    "predicted_minpoly", "rationalize_poly", "spectrum", "spinor_product", "verify_relations",
]
