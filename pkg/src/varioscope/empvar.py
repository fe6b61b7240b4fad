"""Empirical semi-variogram estimation (Matheron moment estimator).

The interval (0, max_dist] is split into nbins equal-width bins with
closed right edges. Colocated pairs (distance 0) and pairs beyond
max_dist are excluded; records with missing outcome are dropped
pairwise. Empty bins are not emitted, so nbins_used <= nbins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .dataio import SpatialDataset
from .errors import NumericalError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VariogramBin:
    lower: float
    upper: float
    mean_dist: float
    n_pairs: int
    gamma_hat: float


@dataclass(frozen=True)
class EmpiricalVariogram:
    bins: tuple[VariogramBin, ...]
    max_dist: float
    nbins_requested: int
    nbins_used: int
    sample_variance: float
    n_obs: int

    def to_json_dict(self) -> dict:
        return {
            "max_dist": self.max_dist,
            "nbins_requested": self.nbins_requested,
            "nbins_used": self.nbins_used,
            "sample_variance": self.sample_variance,
            "n_obs": self.n_obs,
            "bins": [
                {
                    "lower": b.lower,
                    "upper": b.upper,
                    "mean_dist": b.mean_dist,
                    "n_pairs": b.n_pairs,
                    "gamma_hat": b.gamma_hat,
                }
                for b in self.bins
            ],
        }

    def bins_csv(self) -> str:
        lines = ["lower,upper,mean_dist,n_pairs,gamma_hat"]
        for b in self.bins:
            lines.append(
                f"{b.lower!r},{b.upper!r},{b.mean_dist!r},{b.n_pairs},{b.gamma_hat!r}"
            )
        return "\n".join(lines) + "\n"


class BinnedPairs:
    """Pair geometry prepared once so gamma can be re-evaluated cheaply.

    The bootstrap refits the variogram for every replicate on the same
    coordinates; only the outcome vector changes, so the pair indices,
    bin assignment and per-bin mean distances are cached here.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray, max_dist: float, nbins: int):
        if max_dist <= 0:
            raise ValidationError(f"max_dist must be positive, got {max_dist}")
        if nbins < 1:
            raise ValidationError(f"nbins must be >= 1, got {nbins}")
        n = x.size
        if n < 2:
            raise ValidationError("need at least 2 observations")

        d = pdist(np.column_stack([x, y]))
        keep = (d > 0) & (d <= max_dist)
        if not keep.any():
            raise NumericalError(
                f"no point pair with distance in (0, {max_dist}]"
            )
        iu, ju = np.triu_indices(n, k=1)
        self.i = iu[keep]
        self.j = ju[keep]
        self.d = d[keep]
        self.n = n
        self.max_dist = float(max_dist)
        self.nbins = int(nbins)

        edges = np.linspace(0.0, max_dist, nbins + 1)
        # closed right edge: d == edges[k] falls in bin k-1
        self.bin_idx = np.clip(
            np.searchsorted(edges, self.d, side="left") - 1, 0, nbins - 1
        )
        self.edges = edges
        self.n_pairs = np.bincount(self.bin_idx, minlength=nbins)
        with np.errstate(invalid="ignore"):
            self.mean_dist = np.where(
                self.n_pairs > 0,
                np.bincount(self.bin_idx, weights=self.d, minlength=nbins)
                / np.maximum(self.n_pairs, 1),
                np.nan,
            )

    def gamma(self, z: np.ndarray) -> EmpiricalVariogram:
        """Matheron estimate of the binned semi-variogram for outcomes z."""
        sq = (z[self.i] - z[self.j]) ** 2
        sums = np.bincount(self.bin_idx, weights=sq, minlength=self.nbins)
        bins = []
        for k in range(self.nbins):
            if self.n_pairs[k] == 0:
                continue
            bins.append(
                VariogramBin(
                    lower=float(self.edges[k]),
                    upper=float(self.edges[k + 1]),
                    mean_dist=float(self.mean_dist[k]),
                    n_pairs=int(self.n_pairs[k]),
                    gamma_hat=float(sums[k] / (2.0 * self.n_pairs[k])),
                )
            )
        return EmpiricalVariogram(
            bins=tuple(bins),
            max_dist=self.max_dist,
            nbins_requested=self.nbins,
            nbins_used=len(bins),
            sample_variance=float(np.var(z, ddof=1)),
            n_obs=int(z.size),
        )


def empirical_variogram(
    ds: SpatialDataset, max_dist: float, nbins: int
) -> EmpiricalVariogram:
    """Binned Matheron semi-variogram of the dataset's outcome column."""
    obs = ds.observed_mask()
    n_dropped = ds.n - int(obs.sum())
    if n_dropped:
        logger.warning("dropped %d record(s) with missing outcome", n_dropped)
    if obs.sum() < 2:
        raise ValidationError("need at least 2 non-missing outcomes")
    pairs = BinnedPairs(ds.x[obs], ds.y[obs], max_dist, nbins)
    return pairs.gamma(ds.outcome[obs])
