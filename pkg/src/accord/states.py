"""Bipartite state representations, standard state families and decompositions.

Index convention: subsystem A is always the slow (outer) index, so a
d**2-dimensional object is reshaped as ``(d_A, d_B)`` or
``(d_A, d_B, d_A, d_B)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, NotPSD, OutOfRange
from .validation import (
    check_density_array,
    check_local_dim,
    check_pure_vector,
    check_unit_interval,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
I2 = np.eye(2, dtype=complex)


def _frozen(arr):
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated d**2 x d**2 density matrix with local dimension ``d``.

    Build instances through :func:`validate_density`; the constructor
    itself trusts its input.
    """

    matrix: np.ndarray
    d: int

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)

    @property
    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    d: int

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))

    def density(self):
        v = self.amplitudes
        return DensityMatrix(np.outer(v, v.conj()), self.d)


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Schmidt coefficients (descending) and the local basis changes.

    The state is ``(left ⊗ right) @ sum_i coeffs[i] |i>|i>``.
    """

    coeffs: np.ndarray
    left_unitary: np.ndarray
    right_unitary: np.ndarray

    def __post_init__(self):
        for name in ("coeffs", "left_unitary", "right_unitary"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def d(self):
        return self.coeffs.size

    @classmethod
    def from_coeffs(cls, coeffs):
        c = np.asarray(coeffs, dtype=float)
        eye = np.eye(c.size, dtype=complex)
        return cls(c, eye, eye)

    def compose(self):
        """Recompose the pure state amplitudes."""
        d = self.d
        diag = np.zeros(d * d, dtype=complex)
        diag[:: d + 1] = self.coeffs
        return np.kron(self.left_unitary, self.right_unitary) @ diag


@dataclass(frozen=True, eq=False)
class BlochForm:
    """Local Bloch vectors ``x``, ``y`` and correlation matrix ``t`` of two qubits."""

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _frozen(np.asarray(self.x, dtype=float).reshape(3)))
        object.__setattr__(self, "y", _frozen(np.asarray(self.y, dtype=float).reshape(3)))
        object.__setattr__(self, "t", _frozen(np.asarray(self.t, dtype=float).reshape(3, 3)))


def validate_density(m, d=None):
    """Check Hermiticity, unit trace and positivity; return a DensityMatrix."""
    if isinstance(m, DensityMatrix):
        if d is not None and d != m.d:
            raise BadDimension(f"state has local dimension {m.d}, expected {d}")
        return m
    arr, d = check_density_array(m, d)
    return DensityMatrix(arr, d)


def as_density(rho, d=None):
    """Coerce a DensityMatrix, PureState, amplitude vector or raw matrix into a DensityMatrix."""
    if isinstance(rho, PureState):
        return rho.density()
    if not isinstance(rho, DensityMatrix) and np.ndim(rho) == 1:
        return pure_state(rho, d).density()
    return validate_density(rho, d)


def pure_state(amplitudes, d=None):
    vec, d = check_pure_vector(amplitudes, d)
    return PureState(vec, d)


def tensor_product(a, b):
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(rho, keep="A"):
    """Reduced density matrix of the kept subsystem ("A" or "B")."""
    rho = as_density(rho)
    d = rho.d
    r = rho.matrix.reshape(d, d, d, d)
    if keep in ("A", "a", 0):
        return np.einsum("ijkj->ik", r)
    if keep in ("B", "b", 1):
        return np.einsum("ijil->jl", r)
    raise BadDimension(f"keep must be 'A' or 'B', got {keep!r}")


def swap_subsystems(rho):
    rho = as_density(rho)
    d = rho.d
    r = rho.matrix.reshape(d, d, d, d).transpose(1, 0, 3, 2)
    return DensityMatrix(r.reshape(d * d, d * d), d)


def local_unitary_conjugate(rho, u_a, u_b):
    rho = as_density(rho)
    u = np.kron(u_a, u_b)
    m = u @ rho.matrix @ u.conj().T
    return DensityMatrix((m + m.conj().T) / 2, rho.d)


def schmidt_decompose(psi):
    if not isinstance(psi, PureState):
        psi = pure_state(psi)
    d = psi.d
    u, s, vh = np.linalg.svd(psi.amplitudes.reshape(d, d))
    return SchmidtForm(s, u, vh.T)


def bloch_decompose(rho):
    rho = as_density(rho)
    if rho.d != 2:
        raise BadDimension(f"Bloch decomposition needs two qubits, got d={rho.d}")
    m = rho.matrix
    x = [np.trace(m @ np.kron(s, I2)).real for s in PAULIS]
    y = [np.trace(m @ np.kron(I2, s)).real for s in PAULIS]
    t = [[np.trace(m @ np.kron(si, sj)).real for sj in PAULIS] for si in PAULIS]
    return BlochForm(np.array(x), np.array(y), np.array(t))


def bloch_compose(b):
    m = np.kron(I2, I2).astype(complex)
    for i, s in enumerate(PAULIS):
        m += b.x[i] * np.kron(s, I2) + b.y[i] * np.kron(I2, s)
        for j, s2 in enumerate(PAULIS):
            m += b.t[i, j] * np.kron(s, s2)
    m /= 4
    lam_min = float(np.linalg.eigvalsh(m)[0])
    if lam_min < -1e-10:
        raise NotPSD(f"Bloch data is unphysical: smallest eigenvalue {lam_min:.3e}")
    return DensityMatrix(m, 2)


def make_max_entangled(d):
    d = check_local_dim(d)
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1 / np.sqrt(d)
    return PureState(v, d)


def make_isotropic(p, d):
    p = check_unit_interval(p, "p")
    d = check_local_dim(d)
    phi = make_max_entangled(d).density().matrix
    m = p * phi + (1 - p) * (np.eye(d * d) - phi) / (d * d - 1)
    return DensityMatrix(m, d)


def make_pure_plus_noise(psi, x):
    if not isinstance(psi, PureState):
        psi = pure_state(psi)
    x = check_unit_interval(x, "x")
    d = psi.d
    m = x * np.outer(psi.amplitudes, psi.amplitudes.conj()) + (1 - x) * np.eye(d * d) / (d * d)
    return DensityMatrix(m, d)


BELL_STATES = {
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}


def make_bell_diagonal(p):
    """Mixture of the Bell states in the order (Φ+, Φ-, Ψ+, Ψ-)."""
    p = np.asarray(p, dtype=float).ravel()
    if p.size != 4:
        raise BadDimension(f"need 4 Bell weights, got {p.size}")
    if np.any(p < -1e-12) or abs(p.sum() - 1) > 1e-10:
        raise OutOfRange(f"Bell weights must be a probability vector, got {p}")
    m = sum(w * np.outer(v, v.conj()) for w, v in zip(p, BELL_STATES.values()))
    return DensityMatrix(m, 2)


# Printed to 7 decimals; entry (1, 4) carried a stray "j" suffix for the
# imaginary unit. The rounding leaves a smallest T singular value ~3e-8.
_ZERO_ACCORD_EXAMPLE = np.array(
    [
        [0.1547077, -0.0937756 - 0.0097791j, 0.0032410 - 0.0780971j, -0.0490784 - 0.0004913j],
        [-0.0937756 + 0.0097791j, 0.2401018, 0.1384087, 0.0790484 - 0.0248949j],
        [0.0032410 + 0.0780971j, 0.1384087, 0.1802319, -0.0179682 + 0.0434231j],
        [-0.0490784 + 0.0004913j, 0.0790484 + 0.0248949j, -0.0179682 - 0.0434231j, 0.4249586],
    ]
)


def zero_accord_example():
    """An entangled two-qubit state whose accord vanishes up to rounding."""
    return validate_density(_ZERO_ACCORD_EXAMPLE, 2)


def von_neumann_entropy(rho):
    """Entropy in bits of a Hermitian PSD matrix (0 log 0 = 0)."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2)
    lam = lam[lam > 1e-15]
    return float(-np.sum(lam * np.log2(lam)))
