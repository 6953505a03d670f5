import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from accord.errors import BadDimension
from accord.exact import accord_from_omcp, omcp_pure, omcp_two_qubit
from accord.measures import (
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
from accord.minimax import OptimizerConfig
from accord.sampling import random_bell_diagonal, random_classical_state, random_pure_state
from accord.states import SchmidtForm, make_bell_diagonal, make_isotropic, pure_state, zero_accord_example

seeds = st.integers(0, 2**32 - 1)
PHI_PLUS = np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2
CHSH_THRESHOLD = (1 + 3 / np.sqrt(2)) / 4


def product_state(rng):
    a = oracles.random_unitary(2, rng)[:, 0]
    b = oracles.random_unitary(2, rng)[:, 0]
    return pure_state(np.kron(a, b)).density()


class TestConcurrence:
    def test_examples(self, rng):
        assert concurrence(PHI_PLUS) == pytest.approx(1)
        assert concurrence(product_state(rng)) == pytest.approx(0, abs=1e-7)
        assert concurrence(make_isotropic(0.9, 2)) == pytest.approx(0.8)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_matches_wootters_oracle(self, seed):
        rng = np.random.default_rng(seed)
        rho = oracles.random_density(2, rng, rank=int(rng.integers(1, 5)))
        value = concurrence(rho)
        assert 0 <= value <= 1
        assert value == pytest.approx(oracles.concurrence_wootters(rho), abs=1e-6)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_isotropic_line(self, p):
        assert concurrence(make_isotropic(p, 2)) == pytest.approx(max(0, 2 * p - 1), abs=1e-7)

    def test_zero_accord_example_is_entangled(self):
        assert concurrence(zero_accord_example()) == pytest.approx(oracles.concurrence_wootters(zero_accord_example().matrix))
        assert concurrence(zero_accord_example()) > 0

    def test_needs_qubits(self):
        with pytest.raises(BadDimension):
            concurrence(np.eye(9) / 9)


class TestSingletFraction:
    @pytest.mark.parametrize("coeffs, expected", [((1, 0), 0.5), ((2**-0.5, 2**-0.5), 1), ((0.8, 0.6), 0.98)])
    def test_pure_examples(self, coeffs, expected):
        assert singlet_fraction_pure(coeffs) == pytest.approx(expected)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 6), seeds)
    def test_pure_equals_omcp_exactly(self, d, seed):
        s = SchmidtForm.from_coeffs(np.sqrt(np.random.default_rng(seed).dirichlet(np.ones(d))))
        assert singlet_fraction_pure(s) == omcp_pure(s).value

    @pytest.mark.parametrize("d", [2, 3])
    def test_numerical_on_pure_states(self, d, rng):
        psi = random_pure_state(d, rng)
        value = singlet_fraction_numerical(psi.density(), OptimizerConfig(inner_restarts=4)).value
        assert value == pytest.approx(omcp_pure(psi).value, abs=1e-6)

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_numerical_matches_magic_basis_oracle(self, seed):
        rho = oracles.random_density(2, np.random.default_rng(seed))
        value = singlet_fraction_numerical(rho, OptimizerConfig(inner_restarts=4)).value
        assert value == pytest.approx(oracles.magic_basis_singlet_fraction(rho), abs=1e-6)

    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.9])
    def test_isotropic(self, d, p):
        # overlap is p with Φ+ and (1-p)/(d²-1) with any maximally entangled state orthogonal to it
        value = singlet_fraction_numerical(make_isotropic(p, d), OptimizerConfig(inner_restarts=4)).value
        assert value == pytest.approx(max(p, (1 - p) / (d * d - 1)), abs=1e-6)


class TestInformation:
    def test_mutual_information_examples(self, rng):
        assert mutual_information(product_state(rng)) == pytest.approx(0, abs=1e-9)
        assert mutual_information(PHI_PLUS) == pytest.approx(2)
        assert mutual_information(make_isotropic(0, 2)) == pytest.approx(2 - np.log2(3))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 3), seeds)
    def test_mutual_information_oracle(self, d, seed):
        rho = oracles.random_density(d, np.random.default_rng(seed))
        assert mutual_information(rho) == pytest.approx(oracles.mutual_information(rho, d), abs=1e-10)

    def test_j_examples(self):
        assert j_function(0) == 0
        assert j_function(1) == pytest.approx(1)
        assert j_function(0.5) == pytest.approx(0.18872, abs=1e-5)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, 1), st.floats(0, 1))
    def test_j_is_monotone_into_unit_interval(self, a, b):
        lo, hi = sorted((a, b))
        assert 0 <= j_function(lo) <= j_function(hi) + 1e-15 <= 1 + 1e-15


class TestDiscord:
    def test_isotropic_examples(self):
        assert discord_isotropic(0.25) == pytest.approx(0, abs=1e-12)
        assert discord_isotropic(1) == pytest.approx(1)
        # I = 2 - log2(3) and the accord is 1/3, so D = 2 - log2(3) - J(1/3) = 1/3 exactly
        assert discord_isotropic(0) == pytest.approx(1 / 3, abs=1e-12)

    def test_bell_family_examples(self):
        assert discord_bell_family(0.5) == pytest.approx(0.31128, abs=1e-5)
        assert discord_bell_family(0) == pytest.approx(0, abs=1e-12)
        assert discord_bell_family(1) == pytest.approx(discord_bell_family(0), abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0, 1))
    def test_bell_family_matches_bell_diagonal_oracle(self, x):
        rho = make_bell_diagonal([0.5, x / 2, (1 - x) / 2, 0])
        assert discord_bell_family(x) == pytest.approx(oracles.bell_diagonal_discord(rho.matrix), abs=1e-9)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_numerical_on_isotropic_line(self, p):
        assert discord_numerical(make_isotropic(p, 2)).value == pytest.approx(discord_isotropic(p), abs=1e-6)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_numerical_matches_bell_diagonal_oracle(self, seed):
        rho = random_bell_diagonal(np.random.default_rng(seed))
        assert discord_numerical(rho, DiscordConfig(restarts=8)).value == pytest.approx(
            oracles.bell_diagonal_discord(rho.matrix), abs=1e-7
        )

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.sampled_from(["A", "B"]))
    def test_between_zero_and_mutual_information(self, seed, side):
        rho = oracles.random_density(2, np.random.default_rng(seed))
        value = discord_numerical(rho, DiscordConfig(measured_side=side, restarts=8)).value
        assert 0 <= value <= mutual_information(rho) + 1e-9

    def test_sides_swap_with_subsystems(self, rng):
        rho = oracles.random_density(2, rng)
        swapped = np.einsum("abcd->badc", rho.reshape(2, 2, 2, 2)).reshape(4, 4)
        a = discord_numerical(rho, DiscordConfig("A")).value
        b = discord_numerical(swapped, DiscordConfig("B")).value
        assert a == pytest.approx(b, abs=1e-9)
        assert discord_min_side(rho).value == pytest.approx(min(a, discord_numerical(rho, DiscordConfig("B")).value))

    def test_diagnostics_record_side(self, rng):
        result = discord_numerical(oracles.random_density(2, rng), DiscordConfig("B"))
        assert result.diagnostics["measured_side"] == "B"
        assert np.linalg.norm(result.diagnostics["direction"]) == pytest.approx(1)

    def test_classical_states_have_zero_discord_and_accord(self, rng):
        for _ in range(10):
            rho = random_classical_state(2, rng)
            assert discord_numerical(rho).value == pytest.approx(0, abs=1e-7)
            assert accord_from_omcp(omcp_two_qubit(rho).value, 2) == pytest.approx(0, abs=1e-9)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            DiscordConfig(measured_side="C")
        with pytest.raises(ValueError):
            DiscordConfig(restarts=0)


class TestCHSH:
    def test_examples(self):
        assert chsh_parameter(PHI_PLUS) == pytest.approx(2)
        assert chsh_parameter(np.eye(4) / 4) == pytest.approx(0)

    def test_isotropic_threshold(self):
        assert chsh_parameter(make_isotropic(CHSH_THRESHOLD, 2)) == pytest.approx(1, abs=1e-12)
        assert chsh_violated(make_isotropic(CHSH_THRESHOLD + 1e-6, 2))
        assert not chsh_violated(make_isotropic(CHSH_THRESHOLD - 1e-6, 2))

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_pauli_oracle(self, seed):
        rho = oracles.random_density(2, np.random.default_rng(seed))
        sv = np.linalg.svd(oracles.correlation_matrix(rho), compute_uv=False)
        assert chsh_parameter(rho) == pytest.approx(sv[0] ** 2 + sv[1] ** 2, abs=1e-12)
