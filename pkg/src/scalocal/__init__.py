"""Scale-local Renyi entropy, information, and dimension analysis of point sets."""

from .analytic import (
    ReferenceSpec,
    brud_dimension,
    brud_entropy,
    bud_dimension,
    bud_dimension_axis,
    bud_entropy,
    bud_entropy_axis,
    bud_occupancy_factor,
    reference_dimension_curve,
    reference_entropy_curve,
)
from .entropy import Curve, ScaleGrid, dithered_entropy, entropy_sweep, phase_standard_error
from .exceptions import CurveMismatchError, PointFileError, UnsupportedRankError
from .generators import HierarchySpec, condensation_sequence, hierarchy_points, uniform_points
from .io import load_points, save_points
from .measures import CurvePair, dimension_curve, dimension_transport, information
from .partition import (
    OccupancyMap,
    PhaseVector,
    PointSet,
    assign_bins,
    correlation_integral,
    phase_sequence,
    validate_rank,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PointSet",
    "PhaseVector",
    "OccupancyMap",
    "assign_bins",
    "phase_sequence",
    "correlation_integral",
    "validate_rank",
    "ScaleGrid",
    "Curve",
    "dithered_entropy",
    "entropy_sweep",
    "phase_standard_error",
    "ReferenceSpec",
    "bud_entropy_axis",
    "bud_entropy",
    "bud_occupancy_factor",
    "brud_entropy",
    "bud_dimension_axis",
    "bud_dimension",
    "brud_dimension",
    "reference_entropy_curve",
    "reference_dimension_curve",
    "CurvePair",
    "information",
    "dimension_curve",
    "dimension_transport",
    "HierarchySpec",
    "uniform_points",
    "hierarchy_points",
    "condensation_sequence",
    "save_points",
    "load_points",
    "UnsupportedRankError",
    "CurveMismatchError",
    "PointFileError",
]
