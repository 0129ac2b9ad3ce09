"""Imaginarity measures for finite-dimensional and bosonic Gaussian states."""

from .channels import (
    OutcomeDecomposition,
    RealOperation,
    apply,
    check_conjugation_commutes,
    complete_to_channel,
    random_real_channel,
    real_orthogonal_diagonalizer,
    validate_real_operation,
)
from .gaussian import (
    GaussianState,
    OneModeParams,
    WilliamsonForm,
    conjugate_gaussian,
    fock_truncate,
    is_real_gaussian,
    log_power_overlap,
    m_tsallis_gaussian,
    nu_power,
    one_mode_closed_form,
    one_mode_from_params,
    overlap,
    power_state,
    symplectic_form,
    validate_gaussian,
    williamson,
)
from .matfun import (
    HermitianEig,
    hermitian_eig,
    matrix_power,
    matrix_sqrt,
    real_psd_factor,
    symmetric_real_eig,
    trace_norm,
)
from .measures import (
    MeasureId,
    MeasureValue,
    affinity,
    bhattacharyya,
    chernoff_bound,
    chernoff_quantity,
    fidelity,
    hellinger,
    m_fidelity,
    m_rel_entropy,
    m_trace,
    m_tsallis,
    m_tsallis_pure,
    qubit_closed_form,
    relative_entropy_coherence,
    tsallis_rel_entropy,
)
from .states import (
    BlochVector,
    conjugate,
    direct_sum,
    from_bloch,
    is_real,
    pure_state,
    random_density,
    real_imag_parts,
    validate,
)

__version__ = "0.1.0"
