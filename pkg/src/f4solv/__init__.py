"""Exact solver for the F4 rational and trigonometric integrable models.

The package realizes both models in their algebraic form: second-order
differential operators with polynomial coefficients in reflection-
invariant variables, acting on a nested flag of graded polynomial
spaces.  Everything spectral is computed by exact rational linear
algebra and cross-validated against an independent Cartesian-coordinate
evaluation of the gauge-rotated Hamiltonians.
"""

from .errors import (
    CalibrationError,
    ClosureError,
    DerivationError,
    F4SolvError,
    FrameError,
    MapError,
    PoleError,
    ReductionError,
    SingularMapError,
)
from .flags import (
    GradedBasis,
    KNOWN_CHARACTERISTIC_VECTORS,
    ambiguity_search,
    enumerate_basis,
    flag_dimension,
    is_triangular,
    preserves_flag,
    scan_characteristic_vectors,
)
from .gauge import (
    grad_log_ground_state_rational,
    grad_log_ground_state_trig,
)
from .invariants import (
    MINIMAL_CHARVEC,
    variables_rational,
    variables_trig,
)
from .linalg import RatMatrix, nullspace, solve
from .models import (
    ModelParams,
    RATIONAL,
    TRIG,
    ambiguity_map,
    build_rational_operator,
    build_rho_map,
    build_trig_operator,
)
from .operators import MatrixResult, SecondOrderOp, op_matrix
from .oracle import (
    Calibration,
    calibrate_normalization,
    cartesian_oracle,
    derive_missing_a66,
    invariant_reduce,
    oracle_sweep_rational,
    oracle_sweep_trig,
)
from .poly import MPoly, VarMap, build_triangular_map
from .spectral import (
    EigenReport,
    SpectralLine,
    closed_form_energy_rational,
    closed_form_energy_trig,
    degeneracy_count,
    eigenfunctions,
    fit_energy_affine,
    spectrum_from_matrix,
)

__version__ = "0.1.0"
