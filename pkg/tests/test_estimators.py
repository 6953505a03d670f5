import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

import oracles
from accord.errors import BadDimension, NotPSD
from accord.estimators import AccordTransformer, TwoQubitProfile, check_states
from accord.sampling import sample_states
from accord.states import make_isotropic, zero_accord_example


def batch(n=4, seed=0):
    return np.array([s.matrix for s in sample_states("general_i", n, seed)])


class TestCheckStates:
    def test_accepts_single_state_and_sequences(self):
        assert len(check_states(zero_accord_example())) == 1
        assert len(check_states(np.eye(4) / 4)) == 1
        assert len(check_states(batch(3))) == 3

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(BadDimension):
            check_states([np.eye(4) / 4, np.eye(9) / 9])

    def test_rejects_empty_and_invalid(self):
        with pytest.raises(ValueError):
            check_states([])
        with pytest.raises(NotPSD):
            check_states([np.diag([1.5, 0, 0, -0.5])])


class TestAccordTransformer:
    def test_params_round_trip(self):
        est = AccordTransformer(outer_restarts=3, random_state=5)
        assert est.get_params()["outer_restarts"] == 3
        twin = clone(est)
        assert twin.get_params() == est.get_params()
        assert est.set_params(output="omcp").output == "omcp"

    def test_fit_transform_matches_oracle(self):
        X = batch(5)
        out = AccordTransformer().fit_transform(X)
        assert out.shape == (5, 1)
        expected = [2 * oracles.omcp_two_qubit(m) - 1 for m in X]
        np.testing.assert_allclose(out[:, 0], expected, atol=1e-10)

    def test_omcp_output_and_feature_names(self):
        est = AccordTransformer(output="omcp").fit(batch(2))
        assert est.d_ == 2
        out = est.transform([make_isotropic(0.25, 2)])
        assert out[0, 0] == pytest.approx(0.5)
        assert list(est.get_feature_names_out()) == ["omcp"]

    def test_numerical_method_on_qutrits(self):
        est = AccordTransformer(method="numerical", inner_restarts=6, outer_restarts=3)
        out = est.fit_transform([make_isotropic(1.0, 3)])
        assert out[0, 0] == pytest.approx(1, abs=1e-6)

    def test_transform_checks_dimension_and_fit(self):
        with pytest.raises(NotFittedError):
            AccordTransformer().transform(batch(1))
        est = AccordTransformer().fit(batch(1))
        with pytest.raises(BadDimension):
            est.transform([np.eye(9) / 9])

    def test_bad_output_rejected(self):
        with pytest.raises(ValueError):
            AccordTransformer(output="discord").fit(batch(1))


class TestTwoQubitProfile:
    def test_columns(self):
        X = batch(4, seed=2)
        out = TwoQubitProfile(discord_restarts=8).fit_transform(X)
        assert out.shape == (4, 5)
        for m, (acc, conc, disc, chsh, mi) in zip(X, out):
            assert acc == pytest.approx(2 * oracles.omcp_two_qubit(m) - 1, abs=1e-10)
            assert conc == pytest.approx(oracles.concurrence_wootters(m), abs=1e-7)
            assert 0 <= disc <= mi + 1e-9
            assert mi == pytest.approx(oracles.mutual_information(m), abs=1e-10)
            assert chsh >= 0

    def test_in_a_pipeline(self):
        pipe = make_pipeline(TwoQubitProfile(discord_restarts=4), StandardScaler())
        out = pipe.fit_transform(batch(6))
        np.testing.assert_allclose(out.mean(axis=0), 0, atol=1e-12)
        assert list(pipe[0].get_feature_names_out()) == list(TwoQubitProfile.features)

    def test_rejects_qutrits(self):
        with pytest.raises(BadDimension):
            TwoQubitProfile().fit([np.eye(9) / 9])
