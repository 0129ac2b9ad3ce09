"""Default numerical tolerances, shared by every module.

Absolute values below are scaled by ``max(1, max|entry|)`` of the input
wherever a routine compares against a matrix.
"""

import numpy as np

HERMITIAN = 1e-10
SYMMETRIC = 1e-10
EIG_CLIP = 1e-10
# eigenvalues this close to zero are round-off and are set to exactly 0
EIG_ZERO = 1e-13
TRACE = 1e-10
PSD = 1e-10
OPERATION_DEFECT = 1e-9
COMPLETENESS = 1e-9
REAL_STATE = 1e-10
BLOCH_NORM = 1e-12
OUTCOME_FLOOR = 1e-12
NORMALIZER_FLOOR = 1e-12
TRACE_IMAG_RESIDUE = 1e-10
MU_MARGIN = 1e-6
UNCERTAINTY = 1e-8
NU_CLAMP = 1e-8
PURE_MODE = 1e-8
FOCK_TAIL = 1e-10


def scale(a) -> float:
    """Return ``max(1, max|a_ij|)`` used to make absolute tolerances relative."""
    a = np.asarray(a)
    if a.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(a))))
