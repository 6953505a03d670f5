"""Direct numerical evaluation of the measurement coincidence probability (MCP)
and of its min-max optimum (OMCP) over local unitaries.

The inner layer (Alice maximizing for a fixed Bob unitary) is solved by
Jacobi sweeps: each step rotates a pair of rows of ``U_A`` by the exact
2x2 maximizer, so the objective never decreases. The outer layer (Bob
minimizing Alice's best response) is derivative-free: coordinate-wise
bounded line searches in the four angles for qubits, and a direct search
polling randomly rotated tangent directions of ``U(d)`` otherwise. Every restart draws its random
numbers from ``(seed, restart_index)``, so results do not depend on the
order in which restarts run.
"""

import itertools
import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from .errors import BadDimension, NoConvergence
from .exact import MeasureResult, Method, dft_unitary
from .states import as_density, partial_trace
from .validation import check_local_dim, check_positive_int, check_random_state


@dataclass(frozen=True)
class OptimizerConfig:
    inner_restarts: int = 16
    outer_restarts: int = 16
    max_iterations: int = 2000
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        check_positive_int(self.inner_restarts, "inner_restarts")
        check_positive_int(self.outer_restarts, "outer_restarts")
        check_positive_int(self.max_iterations, "max_iterations")
        if not (self.step_tolerance > 0 and self.value_tolerance > 0):
            raise ValueError("tolerances must be positive")


@dataclass
class OptimizerDiagnostics:
    restarts_used: int
    restart_values: list
    best_value: float
    worst_value: float
    iterations: int
    evaluations: int
    u_a: np.ndarray = field(repr=False)
    u_b: np.ndarray = field(repr=False)
    confirmations: int = 0


# --------------------------------------------------------------------------
# MCP and its pure-state forms


def _check_pair(u_a, u_b, d):
    u_a = np.asarray(u_a, dtype=complex)
    u_b = np.asarray(u_b, dtype=complex)
    if u_a.shape != (d, d) or u_b.shape != (d, d):
        raise BadDimension(f"unitaries must be {d}x{d}, got {u_a.shape} and {u_b.shape}")
    return u_a, u_b


def mcp(rho, u_a, u_b):
    """Probability that both parties' outcomes agree after applying ``u_a ⊗ u_b``."""
    rho = as_density(rho)
    d = rho.d
    u_a, u_b = _check_pair(u_a, u_b, d)
    u = np.kron(u_a, u_b)
    sigma = u @ rho.matrix @ u.conj().T
    return float(np.real(np.sum(np.diag(sigma)[:: d + 1])))


def mcp_pure_fast(c, u_a, u_b):
    """``||(U_A ∘ U_B) c||²`` for the Schmidt-diagonal state with coefficients ``c``."""
    c = np.asarray(c, dtype=float)
    u_a, u_b = _check_pair(u_a, u_b, c.size)
    amp = (u_a * u_b) @ c
    return float(np.real(np.vdot(amp, amp)))


def mcp_pure_trace_form(lam, u_a, u_b):
    """``Tr((U_A Λ U_Bᵀ) ∘ (U_A* Λ U_B†))`` with Λ the diagonal Schmidt matrix."""
    lam = np.asarray(lam)
    u_a, u_b = _check_pair(u_a, u_b, lam.shape[0])
    left = u_a @ lam @ u_b.T
    right = u_a.conj() @ lam @ u_b.conj().T
    return float(np.real(np.sum(np.diag(left) * np.diag(right))))


def hadamard_trace_identity(a, b):
    """Both sides of Tr(A)Tr(B) = d Tr(A∘B) - Σ_{i<j} (a_ii - a_jj)(b_ii - b_jj)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadDimension(f"need two square matrices of equal size, got {a.shape}, {b.shape}")
    d = a.shape[0]
    da, db = np.diag(a), np.diag(b)
    lhs = np.trace(a) * np.trace(b)
    iu = np.triu_indices(d, k=1)
    cross = np.sum((da[:, None] - da[None, :])[iu] * (db[:, None] - db[None, :])[iu])
    rhs = d * np.sum(da * db) - cross
    return complex(lhs), complex(rhs)


# --------------------------------------------------------------------------
# unitaries


def haar_random_unitary(d, rng=None):
    """Haar-distributed unitary: QR of a complex Ginibre matrix, phases fixed."""
    d = check_local_dim(d, minimum=1)
    rng = check_random_state(rng)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def _offdiag_pairs(d):
    return [(n, m) for n in range(d) for m in range(n + 1, d)]


def _hermitian_from_params(p, d):
    p = np.asarray(p, dtype=float)
    h = np.diag(p[:d]).astype(complex)
    k = d
    for n, m in _offdiag_pairs(d):
        h[n, m] = p[k] + 1j * p[k + 1]
        h[m, n] = p[k] - 1j * p[k + 1]
        k += 2
    return h


def qubit_unitary(theta, phi, psi, chi):
    """General 2x2 unitary in the four-angle chart; ``chi`` is an overall row phase."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [c * np.exp(1j * phi), s * np.exp(1j * psi)],
            [-s * np.exp(1j * (chi - psi)), c * np.exp(1j * (chi - phi))],
        ]
    )


def parameterize_unitary(params, d):
    """Map real parameters onto U(d).

    d=2 uses the angles ``(theta, phi, psi, chi)``; larger d uses ``d**2``
    reals forming a Hermitian H and returns ``exp(iH)``, which covers the
    whole group.
    """
    d = check_local_dim(d)
    params = np.asarray(params, dtype=float).ravel()
    if d == 2:
        if params.size != 4:
            raise BadDimension(f"qubit chart takes 4 angles, got {params.size}")
        return qubit_unitary(*params)
    if params.size != d * d:
        raise BadDimension(f"U({d}) chart takes {d * d} reals, got {params.size}")
    return expm(1j * _hermitian_from_params(params, d))


def bloch_direction(u):
    """Unit vector that a qubit unitary from :func:`qubit_unitary` measures along."""
    u = np.asarray(u)
    # row 0 of U is <0|U; the measured axis is the Bloch vector of U^dagger|0>
    v = u[0].conj()
    return np.array(
        [2 * np.real(np.conj(v[0]) * v[1]), 2 * np.imag(np.conj(v[0]) * v[1]), abs(v[0]) ** 2 - abs(v[1]) ** 2]
    )


def permutation_unitaries(d):
    """All d! permutation matrices for d <= 4, the d cyclic shifts beyond."""
    eye = np.eye(d, dtype=complex)
    if d <= 4:
        return [eye[list(p)] for p in itertools.permutations(range(d))]
    return [np.roll(eye, k, axis=0) for k in range(d)]


# --------------------------------------------------------------------------
# inner layer: Alice's best response


def conditional_blocks(rho_matrix, u_b, d):
    """``M[n] = <n|_B (1 ⊗ U_B) ρ (1 ⊗ U_B)† |n>_B``, so MCP = Σ_n (U_A M[n] U_A†)_nn."""
    r = rho_matrix.reshape(d, d, d, d)
    t = np.tensordot(u_b, r, axes=([1], [1]))
    return np.einsum("nacb,nb->nac", t, u_b.conj())


@numba.njit(cache=True)
def _inner_value_kernel(blocks, u):
    d = u.shape[0]
    total = 0.0
    for n in range(d):
        for i in range(d):
            acc = 0j
            for j in range(d):
                acc += blocks[n, i, j] * np.conj(u[n, j])
            total += (u[n, i] * acc).real
    return total


@numba.njit(cache=True)
def _sandwich(r0, mat, r1):
    d = r0.shape[0]
    acc = 0j
    for i in range(d):
        inner = 0j
        for j in range(d):
            inner += mat[i, j] * np.conj(r1[j])
        acc += r0[i] * inner
    return acc


@numba.njit(cache=True)
def _jacobi_kernel(blocks, u, tol, max_sweeps):
    d = u.shape[0]
    value = _inner_value_kernel(blocks, u)
    for sweep in range(1, max_sweeps + 1):
        for n in range(d):
            for m in range(n + 1, d):
                diff = blocks[n] - blocks[m]
                r0 = u[n].copy()
                r1 = u[m].copy()
                a = _sandwich(r0, diff, r0).real
                c = _sandwich(r1, diff, r1).real
                b = _sandwich(r0, diff, r1)
                if abs(b) < 1e-300:
                    if a >= c:
                        continue
                    v0, v1 = 0j, 1.0 + 0j
                else:
                    # top eigenvector (b, lam - a); lam - a in a form free of cancellation
                    half = (a - c) / 2
                    root = np.sqrt(half * half + abs(b) ** 2)
                    gap = abs(b) ** 2 / (half + root) if half > 0 else root - half
                    v0, v1 = b, gap + 0j
                    nrm = np.sqrt(abs(v0) ** 2 + abs(v1) ** 2)
                    v0 /= nrm
                    v1 /= nrm
                # rows' new values: [conj(v0) conj(v1); -v1 v0] @ [r0; r1]
                for k in range(d):
                    u[n, k] = np.conj(v0) * r0[k] + np.conj(v1) * r1[k]
                    u[m, k] = -v1 * r0[k] + v0 * r1[k]
        new = _inner_value_kernel(blocks, u)
        if new - value <= tol:
            return new, True, sweep
        value = new
    return value, False, max_sweeps


def _inner_value(blocks, u_a):
    return _inner_value_kernel(np.ascontiguousarray(blocks), np.ascontiguousarray(u_a, dtype=complex))


def jacobi_ascent(blocks, u_a, tol=1e-10, max_sweeps=2000):
    """Monotone ascent of Σ_n (U M[n] U†)_nn by exact pairwise row rotations.

    Each step replaces rows n, m of U by the 2x2 rotation maximizing the
    two affected terms, which is the top eigenvector of the projected
    difference M[n] - M[m]. Returns ``(value, U_A, converged, sweeps)``.
    """
    u = np.array(u_a, dtype=complex, copy=True, order="C")
    value, converged, sweeps = _jacobi_kernel(np.ascontiguousarray(blocks), u, float(tol), int(max_sweeps))
    return value, u, converged, sweeps


def _inner_seeds(u_b, d, n_random, rng):
    seeds = permutation_unitaries(d) + [u_b.conj()]
    seeds += [haar_random_unitary(d, rng) for _ in range(n_random)]
    return seeds


def _resolve_inner(rho_matrix, u_b, d, seeds, tol, max_sweeps):
    blocks = conditional_blocks(rho_matrix, u_b, d)
    results = [jacobi_ascent(blocks, s, tol, max_sweeps) for s in seeds]
    values = np.array([r[0] for r in results])
    best = int(np.argmax(values))
    return results[best], values


def inner_max(rho, u_b, cfg=None):
    """Alice's best MCP against a fixed ``u_b``: returns ``(value, U_A)``.

    Raises NoConvergence (with ``result=(value, U_A)``) when the best value
    is not reproduced by a second start or its ascent hit the sweep cap.
    """
    cfg = cfg or OptimizerConfig()
    rho = as_density(rho)
    d = rho.d
    u_b = np.asarray(u_b, dtype=complex)
    if u_b.shape != (d, d):
        raise BadDimension(f"u_b must be {d}x{d}, got {u_b.shape}")
    rng = np.random.default_rng([cfg.seed, 0])
    seeds = _inner_seeds(u_b, d, cfg.inner_restarts, rng)
    (value, u_a, converged, _), values = _resolve_inner(
        rho.matrix, u_b, d, seeds, cfg.value_tolerance, cfg.max_iterations
    )
    agree = int(np.sum(values >= value - 10 * cfg.value_tolerance))
    if not converged or agree < 2:
        raise NoConvergence(
            f"inner maximum {value:.12g} confirmed by {agree} start(s), converged={converged}",
            result=(value, u_a),
        )
    return value, u_a


# --------------------------------------------------------------------------
# outer layer: Bob's minimization of Alice's best response


class _Outer:
    """Local descent of f(U_B) = max_{U_A} MCP from one starting unitary."""

    def __init__(self, rho_matrix, d, cfg, rng):
        self.rho = rho_matrix
        self.d = d
        self.cfg = cfg
        self.rng = rng
        self.tol = cfg.value_tolerance
        self.evaluations = 0
        self.iterations = 0
        self.pool = []

    def evaluate(self, u_b):
        """Best response from the warm-start pool."""
        self.evaluations += 1
        blocks = conditional_blocks(self.rho, u_b, self.d)
        best = None
        for warm in self.pool:
            val, u_a, _, _ = jacobi_ascent(blocks, warm, self.tol * 1e-2, self.cfg.max_iterations)
            if best is None or val > best[0]:
                best = (val, u_a)
        return best

    def full_resolve(self, u_b):
        self.evaluations += 1
        seeds = _inner_seeds(u_b, self.d, self.cfg.inner_restarts, self.rng) + self.pool
        (val, u_a, _, _), _ = _resolve_inner(
            self.rho, u_b, self.d, seeds, self.tol * 1e-2, self.cfg.max_iterations
        )
        return val, u_a

    def _remember(self, u_a):
        self.pool = [u_a] + self.pool[:2]

    def run(self, u_b0):
        u_b = np.array(u_b0, dtype=complex)
        value, u_a = self.full_resolve(u_b)
        self.pool = [u_a]
        if self.d > 2:
            return self._direct_search(u_b, value, u_a)
        self.params = _qubit_angles(u_b)
        self.steps = np.full(4, math.pi / 4)
        converged = False
        while self.iterations < self.cfg.max_iterations:
            before = value
            u_b, value, u_a = self._qubit_sweep(u_b, value, u_a)
            if before - value > self.tol:
                continue
            # stalled: check that no other best-response branch is higher here
            full_value, full_u_a = self.full_resolve(u_b)
            if full_value > value + self.tol:
                value, u_a = full_value, full_u_a
                self._remember(u_a)
                continue
            converged = True
            break
        return value, u_b, u_a, converged

    def _direct_search(self, u_b, value, u_a):
        """Opportunistic polling along a random rotated positive basis ±frame.

        The max-function has kinks wherever two best responses tie, and
        line searches along fixed directions stall on them; polling with a
        fresh frame each round and halving the step on failure does not.
        """
        basis = _tangent_basis(self.d)
        n = len(basis)
        step = 0.5
        while step > self.cfg.step_tolerance:
            if self.iterations >= self.cfg.max_iterations:
                return value, u_b, u_a, False
            self.iterations += 1
            frame, _ = np.linalg.qr(self.rng.standard_normal((n, n)))
            for row in np.vstack([frame, -frame]):
                trial = expm(1j * step * np.tensordot(row, basis, axes=1)) @ u_b
                val, trial_u_a = self.evaluate(trial)
                if val < value - 1e-15:
                    value, u_b, u_a = val, trial, trial_u_a
                    self.pool[0] = u_a
                    step = min(2 * step, 1.0)
                    break
            else:
                full_value, full_u_a = self.full_resolve(u_b)
                if full_value > value + self.tol:
                    value, u_a = full_value, full_u_a
                    self._remember(u_a)
                else:
                    step /= 2
        return value, u_b, u_a, True

    def _line_search(self, make_u, h):
        """Minimize t -> f(make_u(t)) on [-h, h]; return (t, value, u_b, u_a)."""
        cache = {}

        def f(t):
            u = make_u(t)
            val, u_a = self.evaluate(u)
            cache[t] = (val, u, u_a)
            return val

        res = minimize_scalar(
            f, bounds=(-h, h), method="bounded", options={"xatol": max(self.cfg.step_tolerance, 1e-9 * h)}
        )
        self.iterations += 1
        val, u, u_a = cache[res.x]
        return res.x, val, u, u_a

    def _qubit_sweep(self, u_b, value, u_a):
        """One coordinate-wise pass over the four qubit angles."""
        for k in range(4):
            base = self.params.copy()

            def make_u(t, k=k, base=base):
                p = base.copy()
                p[k] += t
                return qubit_unitary(*p)

            t, val, u, new_u_a = self._line_search(make_u, self.steps[k])
            if val < value:
                self.params[k] += t
                value, u_b, u_a = val, u, new_u_a
                self.pool[0] = u_a
            self.steps[k] = min(math.pi / 2, max(4 * abs(t), 1e-4))
        return u_b, value, u_a


def _tangent_basis(d):
    """Orthonormal off-diagonal Hermitian generators; diagonal ones only rephase rows."""
    basis = []
    for n, m in _offdiag_pairs(d):
        for val in (1.0, 1j):
            h = np.zeros((d, d), dtype=complex)
            h[n, m] = val / math.sqrt(2)
            h[m, n] = np.conj(val) / math.sqrt(2)
            basis.append(h)
    return np.array(basis)


def _qubit_angles(u):
    """Angles ``(theta, phi, psi, chi)`` reproducing ``u`` up to row phases."""
    u = np.asarray(u)
    theta = math.atan2(abs(u[0, 1]), abs(u[0, 0]))
    phi = float(np.angle(u[0, 0])) if abs(u[0, 0]) > 1e-12 else 0.0
    psi = float(np.angle(u[0, 1])) if abs(u[0, 1]) > 1e-12 else 0.0
    return np.array([theta, phi, psi, 0.0])


def outer_seeds(rho, n_random, seed):
    """Starting unitaries for Bob: identity, Fourier, a state-adapted Fourier basis, then Haar draws.

    The adapted seed is the Fourier matrix applied after rotating into the
    eigenbasis of Bob's reduced state; it is exact for pure states.
    """
    d = rho.d
    _, vecs = np.linalg.eigh(partial_trace(rho, "B"))
    adapted = dft_unitary(d) @ vecs[:, ::-1].conj().T
    seeds = [np.eye(d, dtype=complex), dft_unitary(d), adapted]
    seeds += [haar_random_unitary(d, np.random.default_rng([seed, 1, k])) for k in range(n_random)]
    return seeds


def omcp_numerical(rho, cfg=None):
    """min over U_B of max over U_A of the MCP, by nested multi-start local search."""
    cfg = cfg or OptimizerConfig()
    rho = as_density(rho)
    d = rho.d
    check_local_dim(d)
    runs = []
    evaluations = iterations = 0
    for k, u_b0 in enumerate(outer_seeds(rho, cfg.outer_restarts, cfg.seed)):
        opt = _Outer(rho.matrix, d, cfg, np.random.default_rng([cfg.seed, 2, k]))
        runs.append(opt.run(u_b0))
        evaluations += opt.evaluations
        iterations += opt.iterations
    values = np.array([r[0] for r in runs])
    best = int(np.argmin(values))
    value, u_b, u_a, converged = runs[best]
    agree = int(np.sum(values <= value + 10 * cfg.value_tolerance))
    diag = OptimizerDiagnostics(
        restarts_used=len(runs),
        restart_values=values.tolist(),
        best_value=float(value),
        worst_value=float(values.max()),
        iterations=iterations,
        evaluations=evaluations,
        u_a=u_a,
        u_b=u_b,
        confirmations=agree,
    )
    result = MeasureResult(float(value), Method.NUMERICAL, diag)
    # OMCP >= 1/d always, so a minimum on that floor needs no second witness
    at_floor = value <= 1 / d + 10 * cfg.value_tolerance
    if not converged or (agree < 2 and not at_floor):
        raise NoConvergence(
            f"outer minimum {value:.12g} confirmed by {agree} restart(s), converged={converged}",
            result=result,
        )
    return result
