"""Pairwise Euclidean distances and their descriptive summary."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .dataio import SpatialDataset
from .errors import ValidationError


@dataclass(frozen=True)
class DistanceSet:
    """All n(n-1)/2 unordered pairwise distances, row-major pair order."""

    values: np.ndarray
    n_points: int

    @property
    def n_ordered_with_self(self) -> int:
        # n^2 convention (ordered pairs including self-pairs), for cross-checks
        return self.n_points * self.n_points


@dataclass(frozen=True)
class DistanceSummary:
    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float
    histogram: list[tuple[float, float, int]]
    n_below: dict[float, int]

    def to_json_dict(self) -> dict:
        return {
            "summary": {
                "min": self.min,
                "q1": self.q1,
                "median": self.median,
                "mean": self.mean,
                "q3": self.q3,
                "max": self.max,
            },
            "histogram": [
                {"lower": lo, "upper": hi, "count": c} for lo, hi, c in self.histogram
            ],
            "n_below": {str(t): c for t, c in self.n_below.items()},
        }


def pairwise_distances(ds: SpatialDataset) -> DistanceSet:
    """Euclidean distances for every unordered point pair."""
    if ds.n < 2:
        raise ValidationError(f"need at least 2 points, have {ds.n}")
    coords = np.column_stack([ds.x, ds.y])
    return DistanceSet(values=pdist(coords), n_points=ds.n)


def distance_summary(
    dset: DistanceSet,
    thresholds: list[float] | None = None,
    n_hist_bins: int = 30,
) -> DistanceSummary:
    """Six-number summary plus histogram and below-threshold counts.

    Quantiles use linear interpolation between order statistics.
    """
    v = dset.values
    if v.size == 0:
        raise ValidationError("empty distance set")
    q1, med, q3 = np.quantile(v, [0.25, 0.5, 0.75])
    vmax = float(v.max())
    edges = np.linspace(0.0, vmax if vmax > 0 else 1.0, n_hist_bins + 1)
    counts, _ = np.histogram(v, bins=edges)
    hist = [
        (float(edges[i]), float(edges[i + 1]), int(counts[i]))
        for i in range(n_hist_bins)
    ]
    n_below = {float(t): int((v < t).sum()) for t in (thresholds or [])}
    return DistanceSummary(
        min=float(v.min()),
        q1=float(q1),
        median=float(med),
        mean=float(v.mean()),
        q3=float(q3),
        max=vmax,
        histogram=hist,
        n_below=n_below,
    )
