"""Lower bounds on the entanglement cost of two-qubit orthogonal measurements."""
from .bound import BoundReport, chi_state, cut_entanglement, lower_bound
from .errors import *  # noqa: F401,F403
from .linalg import (
    TOL_EQ,
    TOL_NORM,
    BipartiteSplit,
    SchmidtSpectrum,
    StateVec,
    concurrence,
    entropy_of_entanglement,
    inner_product,
    permute_subsystems,
    schmidt_spectrum,
    tensor,
)
from .measurement import (
    TOL_ORTHO,
    CanonicalParams,
    OrthoBasis,
    apply_local_unitary,
    build_basis,
    entropy_bound,
    special_basis,
    validate_orthonormal,
)
from .search import (
    DELTA_TOL,
    DESK_DETECTOR_SPEC,
    DESK_MEASUREMENT_SPEC,
    PAPER_DETECTOR_SPEC,
    PAPER_MEASUREMENT_SPEC,
    GridSpec,
    SearchResult,
    classify,
    detector_candidates,
    maximize_delta,
)

__version__ = "0.1.0"
