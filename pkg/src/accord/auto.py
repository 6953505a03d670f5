"""Pick the cheapest exact route to the OMCP for a given state."""

import warnings

import numpy as np

from .exact import accord_from_omcp, omcp_isotropic, omcp_pure, omcp_two_qubit
from .minimax import OptimizerConfig, omcp_numerical
from .states import as_density, make_isotropic, make_max_entangled, pure_state, schmidt_decompose

PURITY_ATOL = 1e-10
ISOTROPIC_ATOL = 1e-10


class HeuristicOptimumWarning(UserWarning):
    """The value came from local search without a global optimality certificate."""


def detect_family(rho):
    """One of "pure", "two_qubit", "isotropic" or "general"."""
    rho = as_density(rho)
    if rho.purity > 1 - PURITY_ATOL:
        return "pure"
    if rho.d == 2:
        return "two_qubit"
    if _isotropic_weight(rho) is not None:
        return "isotropic"
    return "general"


def _isotropic_weight(rho):
    phi = make_max_entangled(rho.d).amplitudes
    p = float(np.real(np.vdot(phi, rho.matrix @ phi)))
    p = min(max(p, 0.0), 1.0)
    if np.max(np.abs(make_isotropic(p, rho.d).matrix - rho.matrix)) < ISOTROPIC_ATOL:
        return p
    return None


def dominant_pure_state(rho):
    w, v = np.linalg.eigh(rho.matrix)
    return pure_state(v[:, -1], rho.d)


def omcp(rho, method="auto", cfg=None):
    """OMCP as a MeasureResult via a closed form when one applies.

    ``method`` is "auto", "closed_form" or "numerical". Falling back to the
    numerical search in "auto" mode emits HeuristicOptimumWarning.
    """
    rho = as_density(rho)
    if method == "numerical":
        return omcp_numerical(rho, cfg or OptimizerConfig())
    family = detect_family(rho)
    if family == "pure":
        return omcp_pure(schmidt_decompose(dominant_pure_state(rho)))
    if family == "two_qubit":
        return omcp_two_qubit(rho)
    if family == "isotropic":
        return omcp_isotropic(_isotropic_weight(rho), rho.d)
    if method == "closed_form":
        raise ValueError(f"no closed form for this d={rho.d} mixed state")
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    warnings.warn(
        f"d={rho.d} mixed state: OMCP from multi-start local search, global optimality is not certified",
        HeuristicOptimumWarning,
        stacklevel=2,
    )
    return omcp_numerical(rho, cfg or OptimizerConfig())


def accord(rho, method="auto", cfg=None):
    rho = as_density(rho)
    return accord_from_omcp(omcp(rho, method, cfg).value, rho.d)
