"""Accord: the min-max probability that two parties' local measurements agree,
rescaled to [0, 1], together with the correlation measures it is compared to."""

from .auto import HeuristicOptimumWarning, accord, detect_family, omcp
from .errors import (
    BadDimension,
    NoConvergence,
    NotFound,
    NotHermitian,
    NotNormalized,
    NotPSD,
    NotUnitary,
    NotUnitTrace,
    OutOfRange,
    StateError,
)
from .estimators import AccordTransformer, TwoQubitProfile, check_states
from .exact import (
    MeasureResult,
    Method,
    accord_from_omcp,
    dft_unitary,
    omcp_classical,
    omcp_isotropic,
    omcp_pure,
    omcp_pure_plus_noise,
    omcp_two_qubit,
    optimal_unitaries_pure,
)
from .game import GameConfig, GameResult, simulate_game
from .io import load_state, save_state
from .measures import (
    DiscordConfig,
    chsh_parameter,
    chsh_violated,
    concurrence,
    discord_bell_family,
    discord_isotropic,
    discord_min_side,
    discord_numerical,
    j_function,
    mutual_information,
    singlet_fraction_numerical,
    singlet_fraction_pure,
)
from .minimax import OptimizerConfig, haar_random_unitary, inner_max, mcp, omcp_numerical
from .states import (
    DensityMatrix,
    PureState,
    SchmidtForm,
    make_bell_diagonal,
    make_isotropic,
    make_max_entangled,
    make_pure_plus_noise,
    partial_trace,
    pure_state,
    schmidt_decompose,
    validate_density,
    zero_accord_example,
)

__version__ = "0.1.0"
