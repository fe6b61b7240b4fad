"""Ordinary least squares with studentized residuals.

QR-based solver; the explicit normal-equations path lives only in the
test suite as an oracle. Residuals are internally studentized:
r_i = e_i / (s * sqrt(1 - h_ii)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .dataio import SpatialDataset
from .errors import NumericalError, ValidationError


@dataclass(frozen=True)
class OlsFit:
    coefficients: dict[str, float]
    std_errors: dict[str, float]
    t_values: dict[str, float]
    p_values: dict[str, float]
    residual_sd: float
    df_residual: int
    r_squared: float
    adj_r_squared: float
    leverage: np.ndarray
    residuals: np.ndarray
    studentized: np.ndarray
    fitted: np.ndarray
    row_index_map: np.ndarray  # dataset row index for each fit row
    response: str
    predictors: tuple[str, ...]

    def summary_text(self) -> str:
        lines = ["Coefficients:"]
        width = max(len(n) for n in self.coefficients)
        lines.append(
            f"{'':<{width}}  {'Estimate':>12} {'Std. Error':>12} "
            f"{'t value':>9} {'p value':>10}"
        )
        for name in self.coefficients:
            lines.append(
                f"{name:<{width}}  {self.coefficients[name]:>12.4f} "
                f"{self.std_errors[name]:>12.4f} {self.t_values[name]:>9.3f} "
                f"{self.p_values[name]:>10.3g}"
            )
        lines.append("")
        lines.append(
            f"Residual standard error: {self.residual_sd:.4g} "
            f"on {self.df_residual} degrees of freedom"
        )
        lines.append(
            f"Multiple R-squared: {self.r_squared:.4g},  "
            f"Adjusted R-squared: {self.adj_r_squared:.4g}"
        )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "coefficients": self.coefficients,
            "std_errors": self.std_errors,
            "t_values": self.t_values,
            "p_values": self.p_values,
            "residual_sd": self.residual_sd,
            "df_residual": self.df_residual,
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "n_used": int(self.row_index_map.size),
        }


def fit_ols(
    ds: SpatialDataset, response: str, predictors: list[str]
) -> OlsFit:
    """Least squares of `response` on an intercept plus `predictors`.

    Rows with any missing value among the involved columns are dropped
    and recorded in row_index_map.
    """
    y_all = ds.column(response)
    x_cols = [ds.column(p) for p in predictors]
    keep = np.isfinite(y_all)
    for col in x_cols:
        keep &= np.isfinite(col)
    row_index_map = np.flatnonzero(keep)
    y = y_all[keep]
    n = y.size
    names = ["(Intercept)"] + list(predictors)
    p = len(names)
    if n <= p:
        raise ValidationError(f"need more than {p} complete rows, have {n}")

    X = np.column_stack([np.ones(n)] + [c[keep] for c in x_cols])
    rank = np.linalg.matrix_rank(X)
    if rank < p:
        # name a column involved in the deficiency
        for j in range(1, p):
            if np.linalg.matrix_rank(np.delete(X, j, axis=1)) == rank:
                raise NumericalError(f"singular design: column {names[j]!r} is redundant")
        raise NumericalError("singular design matrix")

    Q, R = np.linalg.qr(X)
    beta = np.linalg.solve(R, Q.T @ y)
    fitted = X @ beta
    resid = y - fitted
    df = n - p
    rss = float(resid @ resid)
    s2 = rss / df
    s = np.sqrt(s2)

    Rinv = np.linalg.inv(R)
    xtx_inv = Rinv @ Rinv.T
    se = s * np.sqrt(np.diag(xtx_inv))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = beta / se
    pvals = 2.0 * stats.t.sf(np.abs(tvals), df)

    tss = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - rss / tss if tss > 0 else float("nan")
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / df if tss > 0 else float("nan")

    leverage = np.sum(Q**2, axis=1)
    denom = s * np.sqrt(np.clip(1.0 - leverage, 0.0, None))
    if s > 0 and np.any(leverage >= 1.0 - 1e-12):
        raise NumericalError("degenerate leverage: some h_ii is numerically 1")
    studentized = resid / denom if s > 0 else np.zeros_like(resid)

    return OlsFit(
        coefficients=dict(zip(names, beta.tolist())),
        std_errors=dict(zip(names, se.tolist())),
        t_values=dict(zip(names, tvals.tolist())),
        p_values=dict(zip(names, pvals.tolist())),
        residual_sd=float(s),
        df_residual=df,
        r_squared=float(r2),
        adj_r_squared=float(adj_r2),
        leverage=leverage,
        residuals=resid,
        studentized=studentized,
        fitted=fitted,
        row_index_map=row_index_map,
        response=response,
        predictors=tuple(predictors),
    )


def studentized_residuals(fit: OlsFit) -> np.ndarray:
    return fit.studentized


def vario_reg_prep(fit: OlsFit, ds: SpatialDataset) -> SpatialDataset:
    """Attach studentized residuals to the coordinates as a new outcome.

    Rows dropped by the regression (missing covariates) are absent from
    the returned dataset.
    """
    idx = fit.row_index_map
    if idx.size == 0 or idx.max() >= ds.n:
        raise ValidationError("row index map inconsistent with dataset")
    return SpatialDataset(
        x=ds.x[idx].copy(),
        y=ds.y[idx].copy(),
        outcome=fit.studentized.copy(),
        column_names=("x", "y", "residual"),
        source_name=f"{ds.source_name}#residuals({fit.response})",
    )
