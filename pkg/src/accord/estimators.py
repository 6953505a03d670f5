"""scikit-learn compatible wrappers.

``X`` is a batch of density matrices: an array of shape ``(n, d**2, d**2)``
or any sequence of DensityMatrix / square arrays. Fitting only records and
checks the local dimension; the measures are defined state by state, so
``transform`` is where the work happens.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .auto import omcp
from .errors import BadDimension
from .exact import accord_from_omcp
from .measures import DiscordConfig, chsh_parameter, concurrence, discord_numerical, mutual_information
from .minimax import OptimizerConfig
from .states import DensityMatrix, validate_density


def check_states(X, d=None):
    """Validate a batch of states and return a list of DensityMatrix."""
    if isinstance(X, DensityMatrix):
        X = [X]
    elif isinstance(X, np.ndarray) and X.ndim == 2:
        X = [X]
    states = [validate_density(m, d) for m in X]
    if not states:
        raise ValueError("empty batch of states")
    dims = {s.d for s in states}
    if len(dims) != 1:
        raise BadDimension(f"mixed local dimensions in one batch: {sorted(dims)}")
    return states


class AccordTransformer(TransformerMixin, BaseEstimator):
    """Map each state to its accord (or OMCP with ``output="omcp"``).

    Parameters
    ----------
    method : {"auto", "closed_form", "numerical"}
    output : {"accord", "omcp"}
    inner_restarts, outer_restarts, max_iterations, value_tolerance, step_tolerance
        Passed to :class:`OptimizerConfig` when the numerical route runs.
    random_state : int
    """

    def __init__(
        self,
        method="auto",
        output="accord",
        inner_restarts=16,
        outer_restarts=16,
        max_iterations=2000,
        value_tolerance=1e-8,
        step_tolerance=1e-10,
        random_state=0,
    ):
        self.method = method
        self.output = output
        self.inner_restarts = inner_restarts
        self.outer_restarts = outer_restarts
        self.max_iterations = max_iterations
        self.value_tolerance = value_tolerance
        self.step_tolerance = step_tolerance
        self.random_state = random_state

    def _config(self):
        return OptimizerConfig(
            inner_restarts=self.inner_restarts,
            outer_restarts=self.outer_restarts,
            max_iterations=self.max_iterations,
            step_tolerance=self.step_tolerance,
            value_tolerance=self.value_tolerance,
            seed=self.random_state,
        )

    def fit(self, X, y=None):
        if self.output not in ("accord", "omcp"):
            raise ValueError(f"output must be 'accord' or 'omcp', got {self.output!r}")
        states = check_states(X)
        self.d_ = states[0].d
        self._config()
        return self

    def transform(self, X):
        check_is_fitted(self, "d_")
        states = check_states(X, self.d_)
        cfg = self._config()
        out = np.empty((len(states), 1))
        for i, rho in enumerate(states):
            value = omcp(rho, self.method, cfg).value
            out[i, 0] = accord_from_omcp(value, self.d_) if self.output == "accord" else value
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array([self.output], dtype=object)


class TwoQubitProfile(TransformerMixin, BaseEstimator):
    """Two-qubit feature columns: accord, concurrence, discord, CHSH parameter, mutual information."""

    features = ("accord", "concurrence", "discord", "chsh", "mutual_information")

    def __init__(self, measured_side="A", discord_restarts=32, random_state=0):
        self.measured_side = measured_side
        self.discord_restarts = discord_restarts
        self.random_state = random_state

    def fit(self, X, y=None):
        check_states(X, 2)
        self.discord_config_ = DiscordConfig(self.measured_side, self.discord_restarts, seed=self.random_state)
        self.n_features_out_ = len(self.features)
        return self

    def transform(self, X):
        check_is_fitted(self, "discord_config_")
        rows = []
        for rho in check_states(X, 2):
            rows.append(
                [
                    accord_from_omcp(omcp(rho, "closed_form").value, 2),
                    concurrence(rho),
                    discord_numerical(rho, self.discord_config_).value,
                    chsh_parameter(rho),
                    mutual_information(rho),
                ]
            )
        return np.array(rows)

    def get_feature_names_out(self, input_features=None):
        return np.array(self.features, dtype=object)
