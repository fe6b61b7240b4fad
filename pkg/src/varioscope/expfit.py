"""Weighted least squares fitting of the exponential semi-variogram model.

Model: gamma(h) = 0 at h = 0, nugget + partial_sill * (1 - exp(-h/shape))
for h > 0. Weights are n_pairs / mean_dist^2 per bin. The optimizer is
Levenberg-Marquardt on log-transformed parameters, which enforces
positivity without constraint machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataio import SpatialDataset
from .empvar import EmpiricalVariogram, empirical_variogram
from .errors import NumericalError, ValidationError

_TABLE_COLUMNS = (
    "index",
    "max.dist",
    "nbins",
    "nbins.used",
    "nugget",
    "partial.sill",
    "shape",
    "prac.range",
    "RSV",
    "rel.bias",
)


@dataclass(frozen=True)
class ExpParams:
    nugget: float
    partial_sill: float
    shape: float

    def __post_init__(self):
        if self.nugget < 0 or self.partial_sill < 0 or self.shape <= 0:
            raise ValidationError(
                f"invalid parameters: nugget={self.nugget}, "
                f"partial_sill={self.partial_sill}, shape={self.shape}"
            )

    @property
    def total_variance(self) -> float:
        return self.nugget + self.partial_sill


def eval_exponential(params: ExpParams, h):
    """Semi-variogram value at lag(s) h; 0 at h = 0 by definition."""
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise ValidationError("lag distance must be nonnegative")
    out = np.where(
        h == 0,
        0.0,
        params.nugget + params.partial_sill * (1.0 - np.exp(-h / params.shape)),
    )
    return float(out) if out.ndim == 0 else out


def model_covariance(params: ExpParams, h):
    """Covariance function C(h) = total variance minus gamma(h)."""
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise ValidationError("lag distance must be nonnegative")
    out = np.where(
        h == 0,
        params.total_variance,
        params.partial_sill * np.exp(-h / params.shape),
    )
    return float(out) if out.ndim == 0 else out


def practical_range(params: ExpParams) -> float:
    """Lag beyond which covariance drops below 5% of total variance."""
    total = params.total_variance
    if params.partial_sill <= 0 or total <= 0:
        raise NumericalError("practical range undefined: no spatial structure")
    arg = params.partial_sill / (0.05 * total)
    if arg <= 1:
        raise NumericalError(
            "practical range undefined: partial sill below 5% of total variance"
        )
    return params.shape * math.log(arg)


def rsv(params: ExpParams) -> float:
    """Relative structured variability: partial sill over total variance."""
    total = params.total_variance
    if total <= 0:
        raise NumericalError("RSV undefined for zero total variance")
    return params.partial_sill / total


def relative_bias(params: ExpParams, sample_variance: float) -> float:
    """Model-implied total variance over the sample variance."""
    if sample_variance <= 0:
        raise ValidationError("sample variance must be positive")
    return params.total_variance / sample_variance


@dataclass(frozen=True)
class ExpModelFit:
    params: ExpParams
    practical_range: float  # NaN when undefined
    rsv: float
    rel_bias: float
    converged: bool
    n_iterations: int
    wls_objective: float
    max_dist: float
    nbins_requested: int
    nbins_used: int
    sample_variance: float


_FTOL = 1e-10
_XTOL = 1e-8
_MAX_ITER = 200


def _wls_fit(
    mean_dist: np.ndarray,
    gamma_hat: np.ndarray,
    weights: np.ndarray,
    x0: np.ndarray,
) -> tuple[np.ndarray, float, int, bool]:
    """Levenberg-Marquardt on u = log(c0, psill, shape).

    Returns (u, cost, iterations, converged). The log transform keeps
    all three parameters positive without explicit constraints.
    """
    sw = np.sqrt(weights)

    # keep exp() finite; u beyond this range is already a degenerate fit
    def _params(u):
        return np.exp(np.clip(u, -700.0, 700.0))

    def residuals(u):
        c0, psill, shape = _params(u)
        e = np.exp(-mean_dist / shape)
        return sw * (gamma_hat - (c0 + psill * (1.0 - e)))

    def jacobian(u):
        c0, psill, shape = _params(u)
        e = np.exp(-mean_dist / shape)
        return np.column_stack(
            [
                -sw * c0 * np.ones_like(mean_dist),
                -sw * psill * (1.0 - e),
                sw * psill * e * mean_dist / shape,
            ]
        )

    x = np.asarray(x0, dtype=float)
    f = residuals(x)
    cost = float(f @ f)
    lam = 1e-3
    converged = False
    n_iter = 0
    for n_iter in range(1, _MAX_ITER + 1):
        J = jacobian(x)
        g = J.T @ f
        jtj = J.T @ J
        if np.max(np.abs(g)) <= 1e-14 * max(cost, 1e-300):
            converged = True
            break
        accepted = False
        while lam < 1e15:
            try:
                dx = np.linalg.solve(jtj + lam * np.diag(np.diag(jtj)), -g)
            except np.linalg.LinAlgError:
                dx = np.linalg.lstsq(jtj + lam * np.eye(3), -g, rcond=None)[0]
            if np.linalg.norm(dx) <= _XTOL * (_XTOL + np.linalg.norm(x)):
                converged = True
                break
            x_new = x + dx
            with np.errstate(over="ignore", invalid="ignore"):
                f_new = residuals(x_new)
                cost_new = float(f_new @ f_new)
            if np.isfinite(cost_new) and cost_new <= cost:
                reduction = cost - cost_new
                x, f, cost = x_new, f_new, cost_new
                lam = max(lam * 0.3, 1e-12)
                accepted = True
                if reduction <= _FTOL * max(cost, 1e-300):
                    converged = True
                break
            lam *= 4.0
        if converged or not accepted:
            # no acceptable step at any damping: treat a tiny gradient as
            # convergence, otherwise report failure
            if not converged and not accepted:
                converged = bool(np.max(np.abs(g)) <= 1e-8 * max(cost, 1e-300))
            break
    return x, cost, n_iter, converged


def fit_exponential(
    ev: EmpiricalVariogram, init: ExpParams | None = None
) -> ExpModelFit:
    """Fit the three-parameter exponential model to binned estimates.

    Non-convergence is reported through the `converged` flag, not an
    exception, so bootstrap callers can filter on it.
    """
    if ev.nbins_used < 3:
        raise ValidationError(
            f"need at least 3 non-empty bins to fit 3 parameters, have {ev.nbins_used}"
        )
    mean_dist = np.array([b.mean_dist for b in ev.bins])
    gamma_hat = np.array([b.gamma_hat for b in ev.bins])
    n_pairs = np.array([b.n_pairs for b in ev.bins], dtype=float)
    weights = n_pairs / mean_dist**2

    var = ev.sample_variance
    scale = var if var > 0 else max(gamma_hat.max(), 1.0)
    floor = 1e-12 * scale
    if init is None:
        nugget0 = max(gamma_hat[0], floor)
        psill0 = max(var - nugget0, floor)
        shape0 = ev.max_dist / 3.0
    else:
        nugget0 = max(init.nugget, floor)
        psill0 = max(init.partial_sill, floor)
        shape0 = init.shape
    x0 = np.log([nugget0, psill0, shape0])

    u, cost, n_iter, converged = _wls_fit(mean_dist, gamma_hat, weights, x0)
    c0, psill, shape = np.exp(np.clip(u, -700.0, 700.0))
    params = ExpParams(nugget=float(c0), partial_sill=float(psill), shape=float(shape))

    try:
        prange = practical_range(params)
    except NumericalError:
        prange = float("nan")
    try:
        rsv_val = rsv(params)
    except NumericalError:
        rsv_val = float("nan")
    rb = relative_bias(params, var) if var > 0 else float("nan")

    converged = converged and bool(np.all(np.isfinite(u)))
    return ExpModelFit(
        params=params,
        practical_range=prange,
        rsv=rsv_val,
        rel_bias=rb,
        converged=converged,
        n_iterations=n_iter,
        wls_objective=cost,
        max_dist=ev.max_dist,
        nbins_requested=ev.nbins_requested,
        nbins_used=ev.nbins_used,
        sample_variance=var,
    )


@dataclass(frozen=True)
class ModelRow:
    index: int
    max_dist: float
    nbins: int
    nbins_used: int
    nugget: float
    partial_sill: float
    shape: float
    prac_range: float
    rsv: float
    rel_bias: float
    converged: bool
    error: str | None = None

    def to_json_dict(self) -> dict:
        def clean(v):
            return None if isinstance(v, float) and not math.isfinite(v) else v

        return {
            "index": self.index,
            "max.dist": self.max_dist,
            "nbins": self.nbins,
            "nbins.used": self.nbins_used,
            "nugget": clean(self.nugget),
            "partial.sill": clean(self.partial_sill),
            "shape": clean(self.shape),
            "prac.range": clean(self.prac_range),
            "RSV": clean(self.rsv),
            "rel.bias": clean(self.rel_bias),
            "converged": self.converged,
            "error": self.error,
        }


@dataclass(frozen=True)
class ModelTable:
    rows: tuple[ModelRow, ...]
    dataset_label: str = ""

    def to_json_dict(self) -> dict:
        return {
            "dataset_label": self.dataset_label,
            "rows": [r.to_json_dict() for r in self.rows],
        }

    def to_text(self) -> str:
        """Fixed-width table with the canonical ten column names."""
        header = _TABLE_COLUMNS
        body = []
        for r in self.rows:
            if r.error is not None:
                body.append(
                    [str(r.index), _fmt(r.max_dist), str(r.nbins)]
                    + ["failed"] * 7
                )
                continue
            body.append(
                [
                    str(r.index),
                    _fmt(r.max_dist),
                    str(r.nbins),
                    str(r.nbins_used),
                    _fmt(r.nugget),
                    _fmt(r.partial_sill),
                    _fmt(r.shape),
                    _fmt(r.prac_range),
                    _fmt(r.rsv),
                    _fmt(r.rel_bias),
                ]
            )
        widths = [
            max(len(header[c]), *(len(row[c]) for row in body)) if body else len(header[c])
            for c in range(len(header))
        ]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        for row in body:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    if isinstance(v, float) and math.isnan(v):
        return "NA"
    return f"{v:.7g}"


@dataclass(frozen=True)
class SweepResult:
    """ModelTable plus the per-row artifacts needed for plotting."""

    table: ModelTable
    variograms: tuple[EmpiricalVariogram | None, ...]
    fits: tuple[ExpModelFit | None, ...]


def _pair_meta_params(
    max_dists: list[float], nbins_list: list[int]
) -> list[tuple[float, int]]:
    if not max_dists or not nbins_list:
        raise ValidationError("max_dists and nbins_list must be non-empty")
    if len(max_dists) == 1:
        return [(max_dists[0], nb) for nb in nbins_list]
    if len(nbins_list) == 1:
        return [(md, nbins_list[0]) for md in max_dists]
    if len(max_dists) == len(nbins_list):
        return list(zip(max_dists, nbins_list))
    return [(md, nb) for md in max_dists for nb in nbins_list]


def vario_mod(
    ds: SpatialDataset,
    max_dists: list[float],
    nbins_list: list[int],
) -> SweepResult:
    """Fit one exponential model per (max_dist, nbins) combination.

    A single-element list is broadcast across the other; two equal-length
    lists are zipped; otherwise the full cross product is swept. Failed
    cells are flagged in their row, never fatal.
    """
    combos = _pair_meta_params(list(max_dists), list(nbins_list))
    rows: list[ModelRow] = []
    variograms: list[EmpiricalVariogram | None] = []
    fits: list[ExpModelFit | None] = []
    for idx, (md, nb) in enumerate(combos, start=1):
        try:
            ev = empirical_variogram(ds, md, nb)
            fit = fit_exponential(ev)
        except Exception as exc:  # per-cell failures stay in the row
            rows.append(
                ModelRow(
                    index=idx,
                    max_dist=md,
                    nbins=nb,
                    nbins_used=0,
                    nugget=float("nan"),
                    partial_sill=float("nan"),
                    shape=float("nan"),
                    prac_range=float("nan"),
                    rsv=float("nan"),
                    rel_bias=float("nan"),
                    converged=False,
                    error=str(exc),
                )
            )
            variograms.append(None)
            fits.append(None)
            continue
        rows.append(
            ModelRow(
                index=idx,
                max_dist=md,
                nbins=nb,
                nbins_used=ev.nbins_used,
                nugget=fit.params.nugget,
                partial_sill=fit.params.partial_sill,
                shape=fit.params.shape,
                prac_range=fit.practical_range,
                rsv=fit.rsv,
                rel_bias=fit.rel_bias,
                converged=fit.converged,
            )
        )
        variograms.append(ev)
        fits.append(fit)
    table = ModelTable(rows=tuple(rows), dataset_label=ds.source_name)
    return SweepResult(table=table, variograms=tuple(variograms), fits=tuple(fits))
