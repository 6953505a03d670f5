"""Random two-qubit state generators for the scatter experiments."""

import numpy as np

from .errors import NotFound, NotPSD
from .measures import concurrence
from .minimax import haar_random_unitary
from .states import BlochForm, bloch_compose, make_bell_diagonal, partial_trace, pure_state, validate_density
from .validation import check_local_dim, check_positive_int, check_random_state

FAMILIES = ("haar", "real_gaussian")


def random_pure_state(d, rng=None, family="haar"):
    """Uniform pure state of two d-level systems.

    ``family="real_gaussian"`` draws real amplitudes instead, a second
    ensemble that is not unitarily invariant.
    """
    d = check_local_dim(d)
    rng = check_random_state(rng)
    if family == "haar":
        v = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
    elif family == "real_gaussian":
        v = rng.standard_normal(d * d).astype(complex)
    else:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return pure_state(v / np.linalg.norm(v), d)


def random_two_qubit_mixed(rng=None, family="haar"):
    """Trace two qubits out of a random four-qubit pure state."""
    psi = random_pure_state(4, rng, family)
    m = partial_trace(psi.density(), "A")
    return validate_density((m + m.conj().T) / 2, 2)


def random_bell_diagonal(rng=None):
    """Bell-diagonal state with weights uniform on the probability simplex."""
    rng = check_random_state(rng)
    return make_bell_diagonal(rng.dirichlet(np.ones(4)))


def random_orthogonal(n, rng=None):
    """Haar orthogonal matrix from the QR decomposition of a real Gaussian matrix."""
    rng = check_random_state(rng)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _random_ball(rng, radius):
    v = rng.standard_normal(3)
    return radius * rng.uniform() ** (1 / 3) * v / np.linalg.norm(v)


def zero_accord_entangled_search(rng=None, max_attempts=10_000, radius=0.5, min_concurrence=0.01):
    """Look for an entangled two-qubit state whose correlation matrix is singular.

    A singular T forces zero accord whatever the local Bloch vectors are;
    random local vectors then occasionally produce entanglement. Returns
    ``(rho, concurrence)``.
    """
    rng = check_random_state(rng)
    check_positive_int(max_attempts, "max_attempts")
    for _ in range(max_attempts):
        t = np.diag([rng.uniform(), rng.uniform(), 0.0])
        t = random_orthogonal(3, rng) @ t @ random_orthogonal(3, rng)
        bloch = BlochForm(_random_ball(rng, radius), _random_ball(rng, radius), t)
        try:
            rho = bloch_compose(bloch)
        except NotPSD:
            continue
        c = concurrence(rho)
        if c > min_concurrence:
            return rho, c
    raise NotFound(f"no entangled zero-accord state in {max_attempts} attempts")


def sample_states(family, count, seed=0):
    """``count`` states from one family, the i-th drawn from stream ``(seed, i)``.

    ``family`` is ``"bell_diagonal"``, ``"general_i"`` (Haar four-qubit
    parents) or ``"general_ii"`` (real Gaussian parents).
    """
    count = check_positive_int(count, "count")
    makers = {
        "bell_diagonal": random_bell_diagonal,
        "general_i": lambda rng: random_two_qubit_mixed(rng, "haar"),
        "general_ii": lambda rng: random_two_qubit_mixed(rng, "real_gaussian"),
    }
    if family not in makers:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(makers)}")
    make = makers[family]
    return [make(np.random.default_rng([seed, i])) for i in range(count)]


def random_classical_state(d, rng=None):
    """Mixture of the product basis states of two random local bases, with Dirichlet weights."""
    d = check_local_dim(d)
    rng = check_random_state(rng)
    u = np.kron(haar_random_unitary(d, rng), haar_random_unitary(d, rng))
    w = rng.dirichlet(np.ones(d * d))
    return validate_density((u * w) @ u.conj().T, d)
