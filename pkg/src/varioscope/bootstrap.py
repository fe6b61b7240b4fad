"""Filtered generalized bootstrap for exponential semi-variogram parameters.

Pipeline per replicate: normal-score transform of the outcome (done once
in setup), decorrelation through the Cholesky factor of the model
covariance matrix, resampling with replacement, recorrelation, back
transformation, then a fresh variogram + exponential refit on the
original coordinates. Replicates whose refit fails to converge or whose
implied total variance exceeds threshold_factor times the sample
variance are discarded; the loop runs until B accepted replicates or an
attempt cap.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cholesky, solve_triangular
from scipy.spatial.distance import squareform, pdist
from scipy.special import ndtri

from .dataio import SpatialDataset
from .empvar import BinnedPairs
from .errors import NumericalError, ResourceError, ValidationError
from .expfit import ExpModelFit, ExpParams, fit_exponential

DISCARD_VARIANCE = "variance-threshold"
DISCARD_NONCONVERGENCE = "non-convergence"


@dataclass(frozen=True)
class TransformTable:
    """Sorted (data value, normal score) knots defining the empirical
    normal score transform and its interpolated inverse."""

    z: np.ndarray  # nondecreasing, deduplicated
    y: np.ndarray  # strictly increasing


@dataclass(frozen=True)
class BootstrapConfig:
    B: int = 1000
    threshold_factor: float = 3.0
    seed: int = 0
    max_attempt_factor: float = 10.0
    workers: int = 1

    def __post_init__(self):
        if self.B < 2:
            raise ValidationError("B must be >= 2")
        if self.threshold_factor <= 0:
            raise ValidationError("threshold_factor must be positive")
        if self.max_attempt_factor < 1:
            raise ValidationError("max_attempt_factor must be >= 1")


@dataclass(frozen=True)
class UncertaintyTable:
    rows: tuple[tuple[str, float, float], ...]  # (name, estimate, std error)
    n_accepted: int
    n_discarded: int
    discard_reasons: dict[str, int]
    seed_used: int

    def to_text(self) -> str:
        width = max(len(name) for name, _, _ in self.rows)
        lines = [f"{'':<{width}}  {'Estimate':>12}  {'Std. Error':>12}"]
        for name, est, se in self.rows:
            lines.append(f"{name:<{width}}  {est:>12.7f}  {se:>12.7f}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {"parameter": name, "estimate": est, "std_error": se}
                for name, est, se in self.rows
            ],
            "n_accepted": self.n_accepted,
            "n_discarded": self.n_discarded,
            "discard_reasons": dict(self.discard_reasons),
            "seed_used": self.seed_used,
        }


def normal_score_transform(z: np.ndarray) -> tuple[np.ndarray, TransformTable]:
    """Map data to standard-normal scores via plotting positions
    (rank - 0.5)/n with average ranks for ties."""
    z = np.asarray(z, dtype=float)
    n = z.size
    if n < 2:
        raise ValidationError("need at least 2 values to transform")
    if np.all(z == z[0]):
        raise NumericalError("all values identical: nothing to transform")
    order = np.argsort(z, kind="stable")
    ranks = np.empty(n)
    ranks[order] = np.arange(1, n + 1, dtype=float)
    # average ranks over ties
    zs = z[order]
    k = 0
    while k < n:
        m = k
        while m + 1 < n and zs[m + 1] == zs[k]:
            m += 1
        if m > k:
            ranks[order[k : m + 1]] = 0.5 * (k + 1 + m + 1)
        k = m + 1
    y = ndtri((ranks - 0.5) / n)

    pairs = sorted(set(zip(z.tolist(), y.tolist())))
    zt = np.array([p[0] for p in pairs])
    yt = np.array([p[1] for p in pairs])
    return y, TransformTable(z=zt, y=yt)


def normal_score_back_transform(
    y_star: np.ndarray, table: TransformTable
) -> np.ndarray:
    """Inverse transform by piecewise-linear interpolation; values outside
    the score range clamp to the data extremes."""
    return np.interp(np.asarray(y_star, dtype=float), table.y, table.z)


def build_covariance_matrix(coords: np.ndarray, params: ExpParams) -> np.ndarray:
    """Exponential-model covariance matrix for the given locations."""
    coords = np.asarray(coords, dtype=float)
    n = coords.shape[0]
    if n < 2:
        raise ValidationError("need at least 2 locations")
    d = squareform(pdist(coords))
    # gamma(0) = 0 by definition, so colocated points share the full variance
    C = np.where(d == 0, params.total_variance, params.partial_sill * np.exp(-d / params.shape))
    return C


_JITTER_STEPS = (0.0, 1e-10, 1e-8, 1e-6)


def _cholesky_with_jitter(C: np.ndarray) -> np.ndarray:
    base = float(np.mean(np.diag(C)))
    last = None
    for eps in _JITTER_STEPS:
        try:
            return cholesky(C + eps * base * np.eye(C.shape[0]), lower=True)
        except np.linalg.LinAlgError as exc:
            last = exc
        except Exception as exc:
            last = exc
    raise NumericalError(
        f"Cholesky factorization failed even with jitter {_JITTER_STEPS[-1]:g}*mean(diag)"
    ) from last


def decorrelate(C: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Whiten y against covariance C; returns (x, L) with L x = y."""
    if C.shape[0] != C.shape[1] or C.shape[0] != np.asarray(y).size:
        raise ValidationError("dimension mismatch between C and y")
    L = _cholesky_with_jitter(C)
    x = solve_triangular(L, y, lower=True)
    return x, L


def recorrelate(L: np.ndarray, x_star: np.ndarray) -> np.ndarray:
    """Reapply the correlation structure: y* = L x*."""
    if L.shape[1] != np.asarray(x_star).size:
        raise ValidationError("dimension mismatch between L and x*")
    return L @ x_star


@dataclass(frozen=True)
class ReplicateResult:
    params: ExpParams | None
    converged: bool


def bootstrap_replicate(
    x: np.ndarray,
    L: np.ndarray,
    table: TransformTable,
    pairs: BinnedPairs,
    rng: np.random.Generator,
    resample=None,
) -> ReplicateResult:
    """One resample -> recorrelate -> back-transform -> refit cycle.

    `resample` defaults to iid sampling with replacement; tests may pass
    the identity to verify the pipeline inverts.
    """
    if resample is None:
        x_star = x[rng.integers(0, x.size, x.size)]
    else:
        x_star = resample(x, rng)
    y_star = recorrelate(L, x_star)
    z_star = normal_score_back_transform(y_star, table)
    try:
        ev = pairs.gamma(z_star)
        fit = fit_exponential(ev)
    except Exception:
        return ReplicateResult(params=None, converged=False)
    return ReplicateResult(params=fit.params, converged=fit.converged)


def apply_filter(
    result: ReplicateResult, sample_variance: float, threshold_factor: float
) -> tuple[bool, str | None]:
    """Accept or discard a bootstrap candidate; returns (accepted, reason)."""
    if sample_variance <= 0:
        raise ValidationError("sample variance must be positive")
    if not result.converged or result.params is None:
        return False, DISCARD_NONCONVERGENCE
    if result.params.total_variance > threshold_factor * sample_variance:
        return False, DISCARD_VARIANCE
    return True, None


def par_uncertainty(
    ds: SpatialDataset,
    model: ExpModelFit,
    cfg: BootstrapConfig,
    progress_cb=None,
) -> UncertaintyTable:
    """Filtered-bootstrap standard errors for the fitted parameters.

    Deterministic given cfg.seed: each replicate draws from an RNG
    stream derived from (seed, replicate index) and candidates are
    consumed in index order, so the result is independent of the worker
    count.
    """
    obs = ds.observed_mask()
    z = ds.outcome[obs]
    coords = np.column_stack([ds.x[obs], ds.y[obs]])
    sample_variance = float(np.var(z, ddof=1))
    if sample_variance <= 0:
        raise NumericalError("outcome has zero variance")

    # setup: steps 1-4 of the pipeline, executed once
    y, table = normal_score_transform(z)
    pairs = BinnedPairs(coords[:, 0], coords[:, 1], model.max_dist, model.nbins_requested)
    gauss_fit = fit_exponential(pairs.gamma(y))
    C = build_covariance_matrix(coords, gauss_fit.params)
    x, L = decorrelate(C, y)

    max_attempts = int(np.ceil(cfg.max_attempt_factor * cfg.B))

    def run_one(index: int) -> ReplicateResult:
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, index]))
        return bootstrap_replicate(x, L, table, pairs, rng)

    accepted: list[ExpParams] = []
    reasons: Counter[str] = Counter()
    attempts = 0
    workers = max(1, cfg.workers)
    chunk = max(workers * 4, 16)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while len(accepted) < cfg.B and attempts < max_attempts:
            hi = min(attempts + chunk, max_attempts)
            indices = range(attempts, hi)
            for result in pool.map(run_one, indices):
                attempts += 1
                ok, reason = apply_filter(result, sample_variance, cfg.threshold_factor)
                if ok:
                    accepted.append(result.params)
                else:
                    reasons[reason] += 1
                if progress_cb is not None:
                    progress_cb(len(accepted), attempts - len(accepted))
                if len(accepted) >= cfg.B:
                    break

    if len(accepted) < cfg.B:
        rate = len(accepted) / attempts if attempts else 0.0
        raise ResourceError(
            f"attempt cap {max_attempts} reached with only {len(accepted)} of "
            f"{cfg.B} accepted replicates (acceptance rate {rate:.1%}); "
            f"discards: {dict(reasons)}"
        )

    theta = np.array(
        [[p.nugget, p.partial_sill, p.shape] for p in accepted[: cfg.B]]
    )
    ses = theta.std(axis=0, ddof=1)
    est = model.params
    rows = (
        ("nugget effect", est.nugget, float(ses[0])),
        ("partial sill", est.partial_sill, float(ses[1])),
        ("shape", est.shape, float(ses[2])),
    )
    return UncertaintyTable(
        rows=rows,
        n_accepted=cfg.B,
        n_discarded=int(sum(reasons.values())),
        discard_reasons=dict(reasons),
        seed_used=cfg.seed,
    )
