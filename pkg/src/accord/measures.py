"""Companion correlation measures for comparison with the accord.

All entropies are in bits.
"""

import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy.special import xlogy

from .errors import BadDimension, NoConvergence
from .exact import MeasureResult, Method, accord_from_omcp, omcp_isotropic
from .minimax import OptimizerConfig, haar_random_unitary
from .states import (
    SIGMA_Y,
    SchmidtForm,
    as_density,
    bloch_decompose,
    make_isotropic,
    partial_trace,
    von_neumann_entropy,
)
from .validation import check_positive_int, check_unit_interval

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def _require_qubits(rho):
    rho = as_density(rho)
    if rho.d != 2:
        raise BadDimension(f"two-qubit measure, got local dimension {rho.d}")
    return rho


def concurrence(rho):
    """Wootters concurrence of a two-qubit state."""
    rho = _require_qubits(rho)
    m = rho.matrix
    flipped = _YY @ m.conj() @ _YY
    # eigenvalues of rho*flipped equal those of sqrt(rho) flipped sqrt(rho), which is Hermitian
    w, v = np.linalg.eigh(m)
    root = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    sym = root @ flipped @ root
    lam = np.linalg.eigvalsh((sym + sym.conj().T) / 2)
    lam = np.sqrt(np.clip(lam, 0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def singlet_fraction_pure(s):
    """Largest overlap of a pure state with a maximally entangled state."""
    if not isinstance(s, SchmidtForm):
        s = SchmidtForm.from_coeffs(s)
    return float(np.sum(s.coeffs) ** 2 / s.d)


def _polar(g):
    w, _, zh = np.linalg.svd(g)
    return w @ zh


def singlet_fraction_numerical(rho, cfg=None):
    """Max over V of <Φ+|(V ⊗ 1)† ρ (V ⊗ 1)|Φ+>, every maximally entangled state being of that form.

    The objective is a convex quadratic in V, so replacing V by the unitary
    polar factor of its gradient never decreases it.
    """
    cfg = cfg or OptimizerConfig()
    rho = as_density(rho)
    d = rho.d
    m = rho.matrix
    rng = np.random.default_rng([cfg.seed, 3])
    seeds = [np.eye(d, dtype=complex)] + [haar_random_unitary(d, rng) for _ in range(cfg.inner_restarts)]
    values = []
    best = (-1.0, None)
    all_converged = True
    for v in seeds:
        x = v.ravel() / math.sqrt(d)
        value = float(np.real(np.vdot(x, m @ x)))
        converged = False
        for _ in range(cfg.max_iterations):
            v = _polar((m @ x).reshape(d, d))
            x = v.ravel() / math.sqrt(d)
            new = float(np.real(np.vdot(x, m @ x)))
            if new - value <= cfg.value_tolerance * 1e-2:
                value = max(value, new)
                converged = True
                break
            value = new
        all_converged &= converged
        values.append(value)
        if value > best[0]:
            best = (value, v)
    values = np.array(values)
    agree = int(np.sum(values >= best[0] - 10 * cfg.value_tolerance))
    result = MeasureResult(best[0], Method.NUMERICAL, {"unitary": best[1], "restart_values": values.tolist()})
    if agree < 2:
        raise NoConvergence(f"singlet fraction {best[0]:.12g} confirmed by {agree} start(s)", result=result)
    return result


def mutual_information(rho):
    rho = as_density(rho)
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def j_function(a):
    """[(1+a) log2(1+a) + (1-a) log2(1-a)] / 2, the classical correlation of accord a."""
    a = check_unit_interval(a, "accord")
    if a == 1:
        return 1.0
    # log1p keeps the small-a regime (where J ~ a^2 / 2 ln 2) free of cancellation
    return float(((1 + a) * math.log1p(a) + (1 - a) * math.log1p(-a)) / (2 * math.log(2)))


def discord_isotropic(p):
    """Discord of the two-qubit isotropic state with singlet weight p."""
    a = accord_from_omcp(omcp_isotropic(p, 2).value, 2)
    return mutual_information(make_isotropic(p, 2)) - j_function(a)


def discord_bell_family(x):
    """Discord of the zero-accord Bell-diagonal family with weights (1/2, x/2, (1-x)/2, 0)."""
    x = check_unit_interval(x, "x")
    entropy_terms = (xlogy(x / 2, x / 2) + xlogy((1 - x) / 2, (1 - x) / 2)) / math.log(2)
    return float(1.5 + entropy_terms - j_function(0.5 + abs(x - 0.5)))


def chsh_parameter(rho):
    """Sum of the two largest squared singular values of T; above 1 means CHSH is violated."""
    rho = _require_qubits(rho)
    sv = np.linalg.svd(bloch_decompose(rho).t, compute_uv=False)
    return float(sv[0] ** 2 + sv[1] ** 2)


def chsh_violated(rho):
    return chsh_parameter(rho) > 1.0


# --------------------------------------------------------------------------
# discord by optimization over projective measurements


@dataclass(frozen=True)
class DiscordConfig:
    measured_side: str = "A"
    restarts: int = 32
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.measured_side not in ("A", "B"):
            raise ValueError(f"measured_side must be 'A' or 'B', got {self.measured_side!r}")
        check_positive_int(self.restarts, "restarts")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@numba.njit(cache=True)
def _bloch_entropy(r):
    if r >= 1.0:
        return 0.0
    p = (1.0 + r) / 2.0
    q = 1.0 - p
    out = 0.0
    if p > 0:
        out -= p * math.log2(p)
    if q > 0:
        out -= q * math.log2(q)
    return out


@numba.njit(cache=True)
def _conditional_entropy(x, y, t, n):
    """Average entropy of the unmeasured qubit after measuring along n."""
    xn = x[0] * n[0] + x[1] * n[1] + x[2] * n[2]
    total = 0.0
    for sign in (1.0, -1.0):
        p = (1.0 + sign * xn) / 2.0
        if p <= 1e-15:
            continue
        r2 = 0.0
        for j in range(3):
            comp = y[j] + sign * (t[0, j] * n[0] + t[1, j] * n[1] + t[2, j] * n[2])
            r2 += comp * comp
        total += p * _bloch_entropy(math.sqrt(r2) / (2.0 * p))
    return total


@numba.njit(cache=True)
def _chart_point(n0, e1, e2, a, b, out):
    s = 0.0
    for k in range(3):
        out[k] = n0[k] + a * e1[k] + b * e2[k]
        s += out[k] * out[k]
    s = math.sqrt(s)
    for k in range(3):
        out[k] /= s


@numba.njit(cache=True)
def _tangent_frame(n0):
    helper = np.array([1.0, 0.0, 0.0]) if abs(n0[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = helper - (helper @ n0) * n0
    e1 /= math.sqrt(e1 @ e1)
    e2 = np.cross(n0, e1)
    return e1, e2


@numba.njit(cache=True)
def _golden(x, y, t, n0, e1, e2, axis, h, tol, buf):
    g = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = -h, h
    c = hi - g * (hi - lo)
    d = lo + g * (hi - lo)
    _chart_point(n0, e1, e2, c * (1 - axis), c * axis, buf)
    fc = _conditional_entropy(x, y, t, buf)
    _chart_point(n0, e1, e2, d * (1 - axis), d * axis, buf)
    fd = _conditional_entropy(x, y, t, buf)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            _chart_point(n0, e1, e2, c * (1 - axis), c * axis, buf)
            fc = _conditional_entropy(x, y, t, buf)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            _chart_point(n0, e1, e2, d * (1 - axis), d * axis, buf)
            fd = _conditional_entropy(x, y, t, buf)
    return (c, fc) if fc < fd else (d, fd)


@numba.njit(cache=True)
def _minimize_conditional_entropy(x, y, t, starts, tol, max_sweeps):
    """Coordinate golden-section search in a re-centred tangent chart from each start."""
    best_vals = np.empty(starts.shape[0])
    best_dirs = np.empty_like(starts)
    buf = np.empty(3)
    for i in range(starts.shape[0]):
        n0 = starts[i].copy()
        value = _conditional_entropy(x, y, t, n0)
        h = 0.5
        for _ in range(max_sweeps):
            before = value
            moved = 0.0
            for axis in range(2):
                e1, e2 = _tangent_frame(n0)
                s, fs = _golden(x, y, t, n0, e1, e2, axis, h, tol, buf)
                if fs < value:
                    _chart_point(n0, e1, e2, s * (1 - axis), s * axis, buf)
                    n0 = buf.copy()
                    value = fs
                    moved = max(moved, abs(s))
            h = min(0.5, max(4.0 * moved, 1e-6))
            if before - value <= tol * 1e-3 and moved < 1e-5:
                break
        best_vals[i] = value
        best_dirs[i] = n0
    return best_vals, best_dirs


def discord_numerical(rho, cfg=None):
    """Mutual information minus the best classical correlation from a projective
    measurement on ``cfg.measured_side``."""
    cfg = cfg or DiscordConfig()
    rho = _require_qubits(rho)
    b = bloch_decompose(rho)
    if cfg.measured_side == "A":
        x, y, t = b.x, b.y, b.t
        unmeasured = partial_trace(rho, "B")
    else:
        x, y, t = b.y, b.x, b.t.T.copy()
        unmeasured = partial_trace(rho, "A")
    rng = np.random.default_rng([cfg.seed, 4])
    starts = rng.standard_normal((cfg.restarts, 3))
    starts[:3] = np.eye(3)
    starts /= np.linalg.norm(starts, axis=1, keepdims=True)
    vals, dirs = _minimize_conditional_entropy(
        np.ascontiguousarray(x), np.ascontiguousarray(y), np.ascontiguousarray(t), starts, cfg.tolerance, 500
    )
    k = int(np.argmin(vals))
    classical = von_neumann_entropy(unmeasured) - vals[k]
    info = mutual_information(rho)
    value = info - classical
    diagnostics = {
        "measured_side": cfg.measured_side,
        "direction": dirs[k],
        "conditional_entropy": float(vals[k]),
        "mutual_information": info,
        "restart_values": vals.tolist(),
    }
    if value < 0:
        # only rounding can push the optimum below zero
        if value < -1e-8:
            raise NoConvergence(f"negative discord {value:.3e}", MeasureResult(value, Method.NUMERICAL, diagnostics))
        value = 0.0
    return MeasureResult(float(value), Method.NUMERICAL, diagnostics)


def discord_min_side(rho, cfg=None):
    """Smaller of the A-measured and B-measured discords."""
    cfg = cfg or DiscordConfig()
    results = [
        discord_numerical(rho, DiscordConfig(side, cfg.restarts, cfg.tolerance, cfg.seed)) for side in ("A", "B")
    ]
    return min(results, key=lambda r: r.value)
