"""Input validation helpers in the spirit of ``sklearn.utils.validation``.

Every public entry point funnels raw user input through one of the
``check_*`` functions below, so the tolerances live in exactly one place.
"""

import math
import numbers

import numpy as np

from .errors import (
    BadDimension,
    NotHermitian,
    NotNormalized,
    NotPSD,
    NotUnitary,
    NotUnitTrace,
    OutOfRange,
)

HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_FLOOR = -1e-10
UNITARY_ATOL = 1e-10
NORM_ATOL = 1e-12


def infer_local_dim(n):
    """Return d such that d * d == n, or raise BadDimension."""
    d = math.isqrt(int(n))
    if d * d != n or d < 1:
        raise BadDimension(f"side {n} is not a perfect square d**2")
    return d


def check_square(m, name="matrix"):
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise BadDimension(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_local_dim(d, minimum=2):
    if not isinstance(d, numbers.Integral) or isinstance(d, bool):
        raise BadDimension(f"local dimension must be an integer, got {d!r}")
    if d < minimum:
        raise BadDimension(f"local dimension must be >= {minimum}, got {d}")
    return int(d)


def check_density_array(m, d=None):
    """Validate a raw density matrix and return ``(array, d)``.

    Raises one of NotHermitian, NotUnitTrace, NotPSD or BadDimension; the
    message names the invariant and the size of the violation.
    """
    arr = check_square(m, "density matrix")
    n = arr.shape[0]
    if d is None:
        d = infer_local_dim(n)
    else:
        d = check_local_dim(d, minimum=1)
        if n != d * d:
            raise BadDimension(f"expected side d**2 = {d * d}, got {n}")
    herm_err = float(np.max(np.abs(arr - arr.conj().T))) if n else 0.0
    if herm_err > HERMITIAN_ATOL:
        raise NotHermitian(f"max |rho - rho^dagger| = {herm_err:.3e} exceeds {HERMITIAN_ATOL:g}")
    trace_err = abs(np.trace(arr) - 1.0)
    if trace_err > TRACE_ATOL:
        raise NotUnitTrace(f"|Tr(rho) - 1| = {trace_err:.3e} exceeds {TRACE_ATOL:g}")
    lam_min = float(np.linalg.eigvalsh((arr + arr.conj().T) / 2)[0])
    if lam_min < PSD_FLOOR:
        raise NotPSD(f"smallest eigenvalue {lam_min:.3e} is below {PSD_FLOOR:g}")
    return arr, d


def check_unitary(u, d=None, name="unitary"):
    arr = check_square(u, name)
    if d is not None and arr.shape[0] != d:
        raise BadDimension(f"{name} must be {d}x{d}, got {arr.shape}")
    err = float(np.max(np.abs(arr.conj().T @ arr - np.eye(arr.shape[0]))))
    if err > UNITARY_ATOL:
        raise NotUnitary(f"max |U^dagger U - I| = {err:.3e} exceeds {UNITARY_ATOL:g}")
    return arr


def check_pure_vector(v, d=None):
    arr = np.asarray(v, dtype=complex).ravel()
    if d is None:
        d = infer_local_dim(arr.size)
    elif arr.size != d * d:
        raise BadDimension(f"expected {d * d} amplitudes, got {arr.size}")
    norm_err = abs(np.linalg.norm(arr) - 1.0)
    if norm_err > NORM_ATOL:
        raise NotNormalized(f"| ||psi|| - 1 | = {norm_err:.3e} exceeds {NORM_ATOL:g}")
    return arr, d


def check_unit_interval(x, name="value"):
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"{name} must lie in [0, 1], got {x}")
    return x


def check_positive_int(n, name):
    if not isinstance(n, numbers.Integral) or isinstance(n, bool) or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def check_random_state(rng):
    """Accept None, an int seed, a SeedSequence or a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
