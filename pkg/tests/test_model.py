import math

import numpy as np
import pytest

from conftest import standard_demand, standard_network, standard_scenario
from fixtures import CASE_A, CASE_A_ALPHA_AT_ZERO, PARAMETER_COUNT
from pacerose.angles import AngularHistogram
from pacerose.errors import SpecMismatchError
from pacerose.estimator import ols_fit, significance_mask
from pacerose.features import ModelSpec, build_design_matrix
from pacerose.model import (
    InfluenceCurve,
    expected_sign_report,
    load_model,
    predict_pace,
    reconstruct_curve,
    save_model,
)
from pacerose.special import t_p_value
from pacerose.synth import generate_paces, sample_directions

SPEC = ModelSpec()
NAMES = SPEC.column_names


def case_a_vectors():
    coeffs = np.array([CASE_A["coefficients"][n][0] for n in NAMES])
    dof = CASE_A["n_samples"] - PARAMETER_COUNT
    mask = np.array([
        t_p_value(abs(CASE_A["coefficients"][n][2]), dof) < 0.05
        for n in NAMES
    ])
    return coeffs, mask


class TestReconstructCurve:
    def test_zero_coefficients_flat(self):
        curve = reconstruct_curve(NAMES, np.zeros(len(NAMES)), kind="alpha")
        assert np.all(curve.values == 0.0)

    def test_single_cosine_term(self):
        coeffs = np.zeros(len(NAMES))
        coeffs[NAMES.index("a_c1")] = 1.0
        curve = reconstruct_curve(NAMES, coeffs, kind="alpha")
        assert curve.value_at_zero() == pytest.approx(1.0, abs=1e-12)
        assert curve.values[0] == pytest.approx(-1.0, abs=1e-12)  # at -pi
        np.testing.assert_allclose(curve.values, np.cos(curve.offsets),
                                   atol=1e-12)

    def test_recorded_masked_alpha_at_zero(self):
        coeffs, mask = case_a_vectors()
        curve = reconstruct_curve(NAMES, coeffs, mask=mask, kind="alpha")
        assert curve.value_at_zero() == pytest.approx(CASE_A_ALPHA_AT_ZERO,
                                                      abs=0.01)
        assert curve.significance_filtered

    def test_masked_out_terms_contribute_nothing(self):
        coeffs = np.zeros(len(NAMES))
        coeffs[NAMES.index("a_c2")] = 5.0
        coeffs[NAMES.index("a_s3")] = 4.0
        mask = np.zeros(len(NAMES), dtype=bool)
        mask[NAMES.index("a_c2")] = True
        curve = reconstruct_curve(NAMES, coeffs, mask=mask, kind="alpha")
        np.testing.assert_allclose(curve.values,
                                   5.0 * np.cos(2 * curve.offsets), atol=1e-12)

    def test_linearity_in_coefficients(self):
        rng = np.random.default_rng(0)
        c1 = rng.normal(size=len(NAMES))
        c2 = rng.normal(size=len(NAMES))
        a, b = 2.5, -1.25
        lhs = reconstruct_curve(NAMES, a * c1 + b * c2, kind="beta")
        r1 = reconstruct_curve(NAMES, c1, kind="beta")
        r2 = reconstruct_curve(NAMES, c2, kind="beta")
        np.testing.assert_allclose(lhs.values, a * r1.values + b * r2.values,
                                   atol=1e-12)

    def test_grid_mean_is_zero(self):
        rng = np.random.default_rng(1)
        coeffs = rng.normal(size=len(NAMES))
        curve = reconstruct_curve(NAMES, coeffs, kind="alpha")
        assert abs(float(curve.values.mean())) < 1e-10

    def test_beta_curve_even_harmonics_period_pi(self):
        rng = np.random.default_rng(2)
        coeffs = rng.normal(size=len(NAMES))
        curve = reconstruct_curve(NAMES, coeffs, kind="beta", grid_size=256)
        half = 128
        rolled = np.roll(curve.values, half)
        np.testing.assert_allclose(curve.values, rolled, atol=1e-10)

    def test_grid_size_validated(self):
        with pytest.raises(ValueError):
            reconstruct_curve(NAMES, np.zeros(len(NAMES)), grid_size=4)

    def test_offsets_cover_half_open_interval(self):
        curve = reconstruct_curve(NAMES, np.zeros(len(NAMES)), grid_size=64)
        assert curve.offsets[0] == -math.pi
        assert curve.offsets[-1] < math.pi
        assert curve.offsets[32] == 0.0


class TestPredictPace:
    def test_uniform_histograms_give_gamma(self):
        uniform = AngularHistogram(32, np.full(32, 1.0 / 32))
        rng = np.random.default_rng(3)
        thetas = rng.uniform(0, 2 * math.pi, 60)
        y = np.full(60, 133.0)
        X, yy = build_design_matrix(y, thetas, uniform, uniform, SPEC)
        fit = ols_fit(X, yy, SPEC.column_names)
        for theta in (0.0, 1.0, 4.5):
            assert predict_pace(theta, uniform, uniform, fit, SPEC) == (
                pytest.approx(133.0, abs=1e-9)
            )

    def test_round_trip_on_noiseless_scenario(self):
        scenario = standard_scenario(n_trips=3000)
        thetas = sample_directions(scenario)
        paces, _ = generate_paces(thetas, scenario)
        X, y = build_design_matrix(paces, thetas, scenario.demand_hist,
                                   scenario.network_hist, scenario.spec)
        fit = ols_fit(X, y, scenario.spec.column_names)
        for i in range(0, 3000, 457):
            predicted = predict_pace(float(thetas[i]), scenario.demand_hist,
                                     scenario.network_hist, fit, scenario.spec)
            assert predicted == pytest.approx(float(paces[i]), abs=1e-6)

    def test_reproduces_fitted_values(self):
        scenario = standard_scenario(n_trips=2000, noise_std=25.0)
        thetas = sample_directions(scenario)
        paces, _ = generate_paces(thetas, scenario)
        X, y = build_design_matrix(paces, thetas, scenario.demand_hist,
                                   scenario.network_hist, scenario.spec)
        fit = ols_fit(X, y, scenario.spec.column_names)
        for i in range(0, 2000, 311):
            predicted = predict_pace(float(thetas[i]), scenario.demand_hist,
                                     scenario.network_hist, fit, scenario.spec)
            assert predicted == pytest.approx(float(fit.fitted_values[i]),
                                              abs=1e-10)

    def test_in_sample_mean_matches(self):
        scenario = standard_scenario(n_trips=2000, noise_std=25.0)
        thetas = sample_directions(scenario)
        paces, _ = generate_paces(thetas, scenario)
        X, y = build_design_matrix(paces, thetas, scenario.demand_hist,
                                   scenario.network_hist, scenario.spec)
        fit = ols_fit(X, y, scenario.spec.column_names)
        assert float(fit.fitted_values.mean()) == pytest.approx(
            float(y.mean()), abs=1e-8
        )

    def test_spec_mismatch_rejected(self):
        scenario = standard_scenario(n_trips=2000)
        thetas = sample_directions(scenario)
        paces, _ = generate_paces(thetas, scenario)
        X, y = build_design_matrix(paces, thetas, scenario.demand_hist,
                                   scenario.network_hist, scenario.spec)
        fit = ols_fit(X, y, scenario.spec.column_names)
        other_spec = ModelSpec(k_max=4)
        with pytest.raises(SpecMismatchError):
            predict_pace(0.0, scenario.demand_hist, scenario.network_hist,
                         fit, other_spec)


class TestExpectedSignReport:
    def curve_from(self, c1_alpha, c2_beta):
        coeffs = np.zeros(len(NAMES))
        coeffs[NAMES.index("a_c1")] = c1_alpha
        coeffs[NAMES.index("b_c2")] = c2_beta
        alpha = reconstruct_curve(NAMES, coeffs, kind="alpha")
        beta = reconstruct_curve(NAMES, coeffs, kind="beta")
        return alpha, beta

    def test_expected_signs(self):
        alpha, beta = self.curve_from(10.0, -5.0)
        text = expected_sign_report(alpha, beta)
        assert "alpha(0) = 10.0000 -> positive; matches expectation" in text
        assert "beta(0) = -5.0000 -> negative; matches expectation" in text

    def test_contrary_signs(self):
        alpha, beta = self.curve_from(-10.0, 5.0)
        text = expected_sign_report(alpha, beta)
        assert "contrary to expectation" in text

    def test_zero_curves_indeterminate(self):
        alpha, beta = self.curve_from(0.0, 0.0)
        text = expected_sign_report(alpha, beta)
        assert text.count("indeterminate (zero)") == 2

    def test_recorded_alpha_positive(self):
        coeffs, mask = case_a_vectors()
        alpha = reconstruct_curve(NAMES, coeffs, mask=mask, kind="alpha")
        beta = reconstruct_curve(NAMES, coeffs, mask=mask, kind="beta")
        text = expected_sign_report(alpha, beta)
        assert "alpha(0) = 286.2200 -> positive; matches expectation" in text


class TestModelPersistence:
    def test_save_load_round_trip(self, tmp_path):
        scenario = standard_scenario(n_trips=2000)
        thetas = sample_directions(scenario)
        paces, _ = generate_paces(thetas, scenario)
        X, y = build_design_matrix(paces, thetas, scenario.demand_hist,
                                   scenario.network_hist, scenario.spec)
        fit = ols_fit(X, y, scenario.spec.column_names)
        path = tmp_path / "model.json"
        save_model(path, fit, scenario.spec, scenario.demand_hist,
                   scenario.network_hist)
        loaded_fit, loaded_spec, d, n = load_model(path)
        assert loaded_spec == scenario.spec
        assert loaded_fit.gamma == fit.gamma
        np.testing.assert_array_equal(loaded_fit.coefficients,
                                      fit.coefficients)
        np.testing.assert_array_equal(d.values, scenario.demand_hist.values)
        for theta in (0.0, 2.0):
            assert predict_pace(theta, d, n, loaded_fit, loaded_spec) == (
                pytest.approx(predict_pace(theta, scenario.demand_hist,
                                           scenario.network_hist, fit,
                                           scenario.spec), abs=1e-12)
            )

    def test_bad_format_rejected(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text('{"format": "something-else"}')
        with pytest.raises(SpecMismatchError):
            load_model(path)


class TestInfluenceCurveType:
    def test_validation(self):
        with pytest.raises(ValueError):
            InfluenceCurve(offsets=np.array([0.0, 0.0]),
                           values=np.array([1.0, 2.0]), kind="alpha")
        with pytest.raises(ValueError):
            InfluenceCurve(offsets=np.array([0.0, 1.0]),
                           values=np.array([1.0, 2.0]), kind="delta")
