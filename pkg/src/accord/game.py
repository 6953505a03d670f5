"""Monte Carlo version of the measurement game.

Bob draws ``n_b`` random unitaries; for each, Alice draws ``n_a`` of her
own. Every pair is scored by the fraction of ``shots`` joint measurements
that agree; Alice keeps her best score per Bob unitary and Bob keeps the
worst of those. ``shots=0`` replaces the sampled fraction by the exact
coincidence probability.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .minimax import conditional_blocks, haar_random_unitary
from .states import as_density
from .validation import check_random_state


@dataclass(frozen=True)
class GameConfig:
    n_b: int = 64
    n_a: int = 64
    shots: int = 1000
    seed: int = 0

    def __post_init__(self):
        for name in ("n_b", "n_a"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.shots < 0:
            raise ValueError("shots must be >= 0 (0 selects exact probabilities)")


@dataclass
class GameResult:
    estimate: float
    per_b_maxima: list
    empirical_distribution: Optional[list] = field(default=None, repr=False)


def joint_probabilities(rho, u_a, u_b):
    """P(n_a, n_b) as a d x d array for one pair of local unitaries."""
    rho = as_density(rho)
    d = rho.d
    u = np.kron(u_a, u_b)
    p = np.real(np.diag(u @ rho.matrix @ u.conj().T)).reshape(d, d)
    return np.clip(p, 0, None)


def sample_measurement(rho, u_a, u_b, rng=None):
    """One joint outcome ``(n_a, n_b)`` drawn from the exact joint distribution."""
    rng = check_random_state(rng)
    p = joint_probabilities(rho, u_a, u_b)
    d = p.shape[0]
    k = rng.choice(d * d, p=p.ravel() / p.sum())
    return int(k // d), int(k % d)


def simulate_game(rho, cfg=None, rng=None):
    """Play the game; Bob's b-th unitary and Alice's (b, a)-th reply come from
    streams ``(seed, b)`` and ``(seed, b, a)``.

    ``rng`` is accepted for signature symmetry with the samplers; when given
    it only supplies the seed, drawn once.
    """
    cfg = cfg or GameConfig()
    rho = as_density(rho)
    d = rho.d
    seed = cfg.seed if rng is None else int(check_random_state(rng).integers(2**63))
    per_b = []
    counts = [] if cfg.shots else None
    for b in range(cfg.n_b):
        u_b = haar_random_unitary(d, np.random.default_rng([seed, b]))
        blocks = conditional_blocks(rho.matrix, u_b, d)
        streams = [np.random.default_rng([seed, b, a]) for a in range(cfg.n_a)]
        u_as = np.array([haar_random_unitary(d, s) for s in streams])
        # joint[k, i, j] = P(Alice i, Bob j) for Alice's k-th unitary
        joint = np.real(np.einsum("kia,jab,kib->kij", u_as, blocks, u_as.conj()))
        if cfg.shots == 0:
            scores = np.trace(joint, axis1=1, axis2=2)
        else:
            joint = np.clip(joint, 0, None)
            hits = []
            for s, p in zip(streams, joint):
                draw = s.multinomial(cfg.shots, p.ravel() / p.sum()).reshape(d, d)
                hits.append(int(np.trace(draw)))
            counts.append(hits)
            scores = np.array(hits) / cfg.shots
        per_b.append(float(np.max(scores)))
    return GameResult(float(min(per_b)), per_b, counts)
