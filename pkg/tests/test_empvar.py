import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import varioscope as vs
from varioscope.empvar import empirical_variogram


def _ds(x, y, z):
    return vs.SpatialDataset(
        x=np.asarray(x, dtype=float),
        y=np.asarray(y, dtype=float),
        outcome=np.asarray(z, dtype=float),
    )


def brute_force_variogram(x, y, z, max_dist, nbins):
    """Independent oracle: naive double loop, no shared binning code."""
    edges = np.linspace(0, max_dist, nbins + 1)
    sums = np.zeros(nbins)
    dsum = np.zeros(nbins)
    counts = np.zeros(nbins, dtype=int)
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            d = np.hypot(x[i] - x[j], y[i] - y[j])
            if d <= 0 or d > max_dist:
                continue
            for k in range(nbins):
                if edges[k] < d <= edges[k + 1]:
                    sums[k] += (z[i] - z[j]) ** 2
                    dsum[k] += d
                    counts[k] += 1
                    break
    gammas = {}
    for k in range(nbins):
        if counts[k]:
            gammas[k] = (
                sums[k] / (2 * counts[k]),
                dsum[k] / counts[k],
                counts[k],
            )
    return gammas


def test_collinear_example():
    ds = _ds([0, 1, 2, 3], [0, 0, 0, 0], [0, 1, 0, 1])
    ev = empirical_variogram(ds, max_dist=3, nbins=3)
    assert ev.nbins_used == 3
    assert [b.mean_dist for b in ev.bins] == [1.0, 2.0, 3.0]
    assert [b.gamma_hat for b in ev.bins] == [0.5, 0.0, 0.5]
    assert [b.n_pairs for b in ev.bins] == [3, 2, 1]


def test_constant_outcome_zero_gamma(small_dataset):
    ds = _ds(small_dataset.x, small_dataset.y, np.full(small_dataset.n, 7.0))
    ev = empirical_variogram(ds, 500, 5)
    assert all(b.gamma_hat == 0.0 for b in ev.bins)


def test_empty_bin_dropped():
    # colocated pair plus one distant point: first half of (0, 10] empty
    ds = _ds([0, 0, 10], [0, 0, 0], [1.0, 2.0, 3.0])
    ev = empirical_variogram(ds, max_dist=10, nbins=2)
    assert ev.nbins_used == 1
    assert ev.nbins_requested == 2
    assert ev.bins[0].n_pairs == 2  # the two pairs at distance 10


def test_matheron_matches_brute_force(small_dataset):
    ds = small_dataset
    ev = empirical_variogram(ds, 600, 6)
    oracle = brute_force_variogram(ds.x, ds.y, ds.outcome, 600, 6)
    got = {b: ev.bins[i] for i, b in enumerate(sorted(oracle)) }
    assert len(oracle) == ev.nbins_used
    for k, (gamma, mean_d, n_pairs) in oracle.items():
        b = got[k]
        assert b.n_pairs == n_pairs
        np.testing.assert_allclose(b.gamma_hat, gamma, rtol=1e-12)
        np.testing.assert_allclose(b.mean_dist, mean_d, rtol=1e-12)


def test_closed_right_edge_included():
    ds = _ds([0, 4], [0, 0], [0.0, 2.0])
    ev = empirical_variogram(ds, max_dist=4, nbins=2)
    assert sum(b.n_pairs for b in ev.bins) == 1
    assert ev.bins[-1].upper == 4.0


def test_pairs_beyond_max_dist_excluded():
    ds = _ds([0, 1, 100], [0, 0, 0], [0.0, 1.0, 5.0])
    ev = empirical_variogram(ds, max_dist=2, nbins=1)
    assert sum(b.n_pairs for b in ev.bins) == 1


def test_missing_outcomes_dropped_with_warning(caplog):
    ds = _ds([0, 1, 2, 3], [0, 0, 0, 0], [0, np.nan, 0, 1])
    with caplog.at_level("WARNING"):
        ev = empirical_variogram(ds, 3, 3)
    assert ev.n_obs == 3
    assert any("missing outcome" in m for m in caplog.messages)


def test_no_pair_in_range_errors():
    ds = _ds([0, 100], [0, 0], [0.0, 1.0])
    with pytest.raises(vs.NumericalError):
        empirical_variogram(ds, max_dist=1, nbins=1)


def test_bad_parameters():
    ds = _ds([0, 1], [0, 0], [0.0, 1.0])
    with pytest.raises(vs.ValidationError):
        empirical_variogram(ds, max_dist=0, nbins=1)
    with pytest.raises(vs.ValidationError):
        empirical_variogram(ds, max_dist=10, nbins=0)


@given(shift=st.floats(-100, 100, allow_nan=False))
@settings(max_examples=25, deadline=None)
def test_shift_invariance(shift):
    rng = np.random.default_rng(0)
    x, y, z = rng.uniform(0, 100, 15), rng.uniform(0, 100, 15), rng.normal(size=15)
    ev1 = empirical_variogram(_ds(x, y, z), 120, 4)
    ev2 = empirical_variogram(_ds(x, y, z + shift), 120, 4)
    for b1, b2 in zip(ev1.bins, ev2.bins):
        np.testing.assert_allclose(b2.gamma_hat, b1.gamma_hat, rtol=1e-9, atol=1e-12)


@given(a=st.floats(0.1, 50, allow_nan=False))
@settings(max_examples=25, deadline=None)
def test_scale_quadratic(a):
    rng = np.random.default_rng(1)
    x, y, z = rng.uniform(0, 100, 15), rng.uniform(0, 100, 15), rng.normal(size=15)
    ev1 = empirical_variogram(_ds(x, y, z), 120, 4)
    ev2 = empirical_variogram(_ds(x, y, a * z), 120, 4)
    np.testing.assert_allclose(ev2.sample_variance, a**2 * ev1.sample_variance, rtol=1e-9)
    for b1, b2 in zip(ev1.bins, ev2.bins):
        np.testing.assert_allclose(b2.gamma_hat, a**2 * b1.gamma_hat, rtol=1e-9)


def test_pair_count_conservation(sim_dataset):
    ds = sim_dataset
    ev = empirical_variogram(ds, 800, 10)
    d = vs.pairwise_distances(ds).values
    assert sum(b.n_pairs for b in ev.bins) == int(((d > 0) & (d <= 800)).sum())
