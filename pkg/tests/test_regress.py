import numpy as np
import pytest

import varioscope as vs
from varioscope.regress import fit_ols, studentized_residuals, vario_reg_prep


def make_dataset(n=50, seed=0, missing_rows=0):
    rng = np.random.default_rng(seed)
    x1 = rng.normal(size=n)
    x2 = rng.normal(size=n)
    y = 1.5 + 2.0 * x1 - 0.7 * x2 + rng.normal(0, 0.5, n)
    if missing_rows:
        x1 = x1.copy()
        x1[:missing_rows] = np.nan
    return vs.SpatialDataset(
        x=rng.uniform(0, 100, n),
        y=rng.uniform(0, 100, n),
        outcome=y,
        extras={"x1": x1, "x2": x2},
        column_names=("x", "y", "outcome", "x1", "x2"),
    )


def normal_equations_oracle(X, y):
    xtx_inv = np.linalg.inv(X.T @ X)
    return xtx_inv @ X.T @ y


def test_exact_linear_data_zero_residual():
    n = 10
    x1 = np.arange(n, dtype=float)
    ds = vs.SpatialDataset(
        x=np.zeros(n),
        y=np.arange(n, dtype=float),
        outcome=2.0 * x1,
        extras={"x1": x1},
        column_names=("x", "y", "outcome", "x1"),
    )
    fit = fit_ols(ds, "outcome", ["x1"])
    assert fit.coefficients["x1"] == pytest.approx(2.0, abs=1e-12)
    assert fit.residual_sd == pytest.approx(0.0, abs=1e-10)


def test_matches_normal_equations_oracle():
    ds = make_dataset(50, seed=1)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    X = np.column_stack([np.ones(50), ds.extras["x1"], ds.extras["x2"]])
    beta = normal_equations_oracle(X, ds.outcome)
    got = np.array(list(fit.coefficients.values()))
    np.testing.assert_allclose(got, beta, rtol=1e-9)


def test_std_errors_match_oracle():
    ds = make_dataset(60, seed=2)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    X = np.column_stack([np.ones(60), ds.extras["x1"], ds.extras["x2"]])
    resid = ds.outcome - X @ normal_equations_oracle(X, ds.outcome)
    s2 = resid @ resid / (60 - 3)
    se = np.sqrt(s2 * np.diag(np.linalg.inv(X.T @ X)))
    np.testing.assert_allclose(list(fit.std_errors.values()), se, rtol=1e-9)


def test_hat_diagonal_sums_to_p():
    fit = fit_ols(make_dataset(40, seed=3), "outcome", ["x1", "x2"])
    assert fit.leverage.sum() == pytest.approx(3.0, abs=1e-10)
    assert np.all(fit.leverage >= 0) and np.all(fit.leverage < 1)


def test_residuals_orthogonal_to_design():
    ds = make_dataset(45, seed=4)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    X = np.column_stack([np.ones(45), ds.extras["x1"], ds.extras["x2"]])
    assert np.max(np.abs(X.T @ fit.residuals)) <= 1e-8 * np.linalg.norm(ds.outcome)


def test_fitted_plus_residuals_reconstruct_response():
    ds = make_dataset(45, seed=5)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    np.testing.assert_allclose(fit.fitted + fit.residuals, ds.outcome, rtol=1e-10)


def test_studentized_hand_computed_four_points():
    # one-predictor design; h_ii = 1/n + (x_i - xbar)^2 / Sxx by hand
    xv = np.array([0.0, 1.0, 2.0, 3.0])
    yv = np.array([0.0, 1.5, 1.5, 3.0])
    ds = vs.SpatialDataset(
        x=np.zeros(4),
        y=np.zeros(4),
        outcome=yv,
        extras={"x1": xv},
        column_names=("x", "y", "outcome", "x1"),
    )
    fit = fit_ols(ds, "outcome", ["x1"])
    xbar = xv.mean()
    sxx = ((xv - xbar) ** 2).sum()
    h = 1 / 4 + (xv - xbar) ** 2 / sxx
    np.testing.assert_allclose(fit.leverage, h, atol=1e-12)
    beta1 = ((xv - xbar) * (yv - yv.mean())).sum() / sxx
    beta0 = yv.mean() - beta1 * xbar
    e = yv - beta0 - beta1 * xv
    s = np.sqrt((e @ e) / 2)
    np.testing.assert_allclose(
        studentized_residuals(fit), e / (s * np.sqrt(1 - h)), atol=1e-12
    )


def test_orthonormal_design_constant_leverage():
    n = 16
    # orthogonal design: intercept plus a +-1 contrast column
    x1 = np.tile([1.0, -1.0], n // 2)
    rng = np.random.default_rng(8)
    yv = rng.normal(size=n)
    ds = vs.SpatialDataset(
        x=np.zeros(n),
        y=np.zeros(n),
        outcome=yv,
        extras={"x1": x1},
        column_names=("x", "y", "outcome", "x1"),
    )
    fit = fit_ols(ds, "outcome", ["x1"])
    np.testing.assert_allclose(fit.leverage, 2.0 / n, atol=1e-12)
    scale = 1.0 / (fit.residual_sd * np.sqrt(1 - 2.0 / n))
    np.testing.assert_allclose(fit.studentized, fit.residuals * scale, rtol=1e-12)


def test_singular_design_names_column():
    ds = make_dataset(30, seed=6)
    extras = dict(ds.extras)
    extras["dup"] = extras["x1"].copy()
    ds2 = vs.SpatialDataset(
        x=ds.x.copy(), y=ds.y.copy(), outcome=ds.outcome.copy(),
        extras=extras, column_names=ds.column_names + ("dup",),
    )
    with pytest.raises(vs.NumericalError, match="dup|x1"):
        fit_ols(ds2, "outcome", ["x1", "x2", "dup"])


def test_missing_covariates_dropped_and_recorded():
    ds = make_dataset(50, seed=7, missing_rows=10)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    assert fit.row_index_map.size == 40
    assert fit.row_index_map.min() == 10


def test_vario_reg_prep_carries_coordinates():
    ds = make_dataset(50, seed=9)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    res_ds = vario_reg_prep(fit, ds)
    assert res_ds.n == 50
    np.testing.assert_array_equal(res_ds.x, ds.x)
    np.testing.assert_array_equal(res_ds.outcome, fit.studentized)


def test_vario_reg_prep_drops_missing_rows():
    ds = make_dataset(50, seed=10, missing_rows=10)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    res_ds = vario_reg_prep(fit, ds)
    assert res_ds.n == 40
    np.testing.assert_array_equal(res_ds.x, ds.x[10:])


def test_studentized_variance_near_one():
    ds = make_dataset(400, seed=11)
    fit = fit_ols(ds, "outcome", ["x1", "x2"])
    assert np.var(fit.studentized, ddof=1) == pytest.approx(1.0, abs=0.1)
