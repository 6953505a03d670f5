"""Closed-form OMCP and accord for the state classes that admit one.

OMCP is the min-over-Bob, max-over-Alice probability that the two local
measurements agree; it lies in [1/d, 1]. The accord rescales it to [0, 1].
"""

import enum
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import BadDimension
from .states import SchmidtForm, as_density, bloch_decompose, schmidt_decompose, PureState
from .validation import check_local_dim, check_unit_interval

BOUNDARY_SLACK = 1e-9


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    NUMERICAL = "numerical"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class MeasureResult:
    value: float
    method: Method
    diagnostics: Optional[Any] = field(default=None, compare=False)

    def __float__(self):
        return float(self.value)


def _closed(value):
    return MeasureResult(float(value), Method.CLOSED_FORM)


def _as_schmidt(s):
    if isinstance(s, SchmidtForm):
        return s
    if isinstance(s, PureState):
        return schmidt_decompose(s)
    return SchmidtForm.from_coeffs(s)


def accord_from_omcp(omcp, d):
    """Rescale an OMCP value in [1/d, 1] onto [0, 1]."""
    d = check_local_dim(d)
    a = d / (d - 1) * (float(omcp) - 1 / d)
    if -BOUNDARY_SLACK <= a < 0:
        return 0.0
    if 1 < a <= 1 + BOUNDARY_SLACK:
        return 1.0
    return a


def omcp_pure(s):
    """OMCP of a pure state: the squared sum of Schmidt coefficients over d.

    Accepts a SchmidtForm, a PureState or a bare coefficient vector.
    """
    s = _as_schmidt(s)
    return _closed(np.sum(s.coeffs) ** 2 / s.d)


def omcp_two_qubit(rho):
    """OMCP of any two-qubit state from the smallest singular value of T."""
    rho = as_density(rho)
    if rho.d != 2:
        raise BadDimension(f"two-qubit formula needs d=2, got d={rho.d}")
    sv = np.linalg.svd(bloch_decompose(rho).t, compute_uv=False)
    s = max(float(sv[-1]), 0.0)
    if s < 1e-12:
        s = 0.0
    return _closed((1 + s) / 2)


def omcp_isotropic(p, d):
    p = check_unit_interval(p, "p")
    d = check_local_dim(d)
    kink = 1 / d**2
    if p == kink:
        return _closed(1 / d)
    slope = 1 / d if p < kink else 1 - 1 / d
    return _closed(1 / d + abs(p - kink) / (1 - kink) * slope)


def omcp_pure_plus_noise(s, x):
    x = check_unit_interval(x, "x")
    s = _as_schmidt(s)
    return _closed(x * omcp_pure(s).value + (1 - x) / s.d)


def omcp_classical(d):
    """States diagonal in a product of orthonormal bases sit at random chance."""
    return _closed(1 / check_local_dim(d))


def dft_unitary(d):
    d = check_local_dim(d, minimum=1)
    j, k = np.indices((d, d))
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def optimal_unitaries_pure(d):
    """Bob's Fourier basis and Alice's conjugate reply, optimal for Schmidt-diagonal states."""
    u_b = dft_unitary(d)
    return u_b.conj(), u_b
