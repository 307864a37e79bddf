"""Exact evaluation of the six-vertex model with domain-wall boundaries
and one reflecting end: partition function and boundary one-point
profile by several independent routes."""

from .column_algebra import (
    ColumnOperators,
    ColumnWavefunction,
    column_monodromy,
    column_transfer,
    exchange_residual,
    wavefunction_via_columns,
)
from .determinants import (
    DetResult,
    chi_matrix,
    det_lu,
    h_matrix,
    izergin_z,
    phi_kernel,
    tsuchiya_z,
    wavefunction_det,
)
from .errors import (
    SamplingExhaustedError,
    SingularParameterError,
    SingularWeightError,
    SizeCapError,
)
from .lattice_oracle import (
    DoubleRowOperators,
    OneRowOperators,
    boundary_insertion,
    double_row_monodromy,
    enumerate_z,
    f_oracle,
    one_row_monodromy,
    partition_oracle,
)
from .local_weights import (
    aux_conjugate_sigma2,
    aux_transpose,
    k_plus,
    l_matrix,
    r_matrix,
    reflection_residual,
    weights,
    ybe_residual,
)
from .onepoint import (
    METHODS,
    OnePointProfile,
    b_expansion_residual,
    big_f,
    f_det,
    f_perm,
    profile,
)
from .params import (
    GenericityReport,
    ModelParams,
    check_genericity,
    random_generic,
    require_generic,
)
from .validation import CheckResult, run_checks
from .wavefunction import pairwise_sum, psi_coordinate, psi_oracle

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "ColumnOperators",
    "ColumnWavefunction",
    "DetResult",
    "DoubleRowOperators",
    "GenericityReport",
    "METHODS",
    "ModelParams",
    "OnePointProfile",
    "OneRowOperators",
    "SamplingExhaustedError",
    "SingularParameterError",
    "SingularWeightError",
    "SizeCapError",
    "aux_conjugate_sigma2",
    "aux_transpose",
    "b_expansion_residual",
    "big_f",
    "boundary_insertion",
    "check_genericity",
    "chi_matrix",
    "column_monodromy",
    "column_transfer",
    "det_lu",
    "double_row_monodromy",
    "enumerate_z",
    "exchange_residual",
    "f_det",
    "f_oracle",
    "f_perm",
    "h_matrix",
    "izergin_z",
    "k_plus",
    "l_matrix",
    "one_row_monodromy",
    "pairwise_sum",
    "partition_oracle",
    "phi_kernel",
    "profile",
    "psi_coordinate",
    "psi_oracle",
    "r_matrix",
    "random_generic",
    "reflection_residual",
    "require_generic",
    "run_checks",
    "tsuchiya_z",
    "wavefunction_det",
    "wavefunction_via_columns",
    "weights",
    "ybe_residual",
]
