"""Squeezed coherent states, their Wigner transforms and quantum blobs."""

from .blobs import (
    QuantumBlob,
    ball,
    blob_from_state,
    blob_from_symplectic,
    blob_transform,
    blob_volume,
    state_from_blob,
)
from .dynamics import QuadraticHamiltonian, evolve_blob, evolve_state, flow
from .errors import (
    AccuracyError,
    DimensionError,
    DomainError,
    NumericalError,
    QBlobError,
    SingularityError,
    TruncationWarning,
)
from .fermi import fermi_capacity, fermi_ellipsoid, fermi_function
from .gaussian import GaussianState, fiducial, metaplectic_param_action, sc1_literal, translate
from .symplectic import (
    certify_symplectic,
    is_symplectic,
    polar_S_from_G,
    pre_iwasawa,
    random_symplectic,
    standard_J,
    symplectic_spectrum,
)
from .uncertainty import (
    CovarianceMatrix,
    capacity_condition,
    capacity_ellipsoid,
    covariance_from_state,
    rs_check,
    sigma_psd_check,
)
from .wigner import g_matrix, s_from_xy, wigner_gaussian, wigner_numeric

__version__ = "0.1.0"
