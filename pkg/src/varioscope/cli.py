"""Command-line front end: plots, tables and the bootstrap workflow."""

from __future__ import annotations

import functools
import json
import logging
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import bootstrap as bt
from . import dataio, distances, expfit, plots, regress, simfield
from .errors import VarioscopeError

SCHEMA_VERSION = 1

logger = logging.getLogger("varioscope")


def _out_dir(value: str | None) -> Path:
    path = Path(value or os.environ.get("VARIOSCOPE_OUT_DIR", "."))
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_json(path: Path, payload: dict):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except VarioscopeError as exc:
            click.echo(f"error ({type(exc).__name__}): {exc}", err=True)
            sys.exit(exc.exit_code)

    return wrapper


def _parse_floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


@click.group()
def main():
    """Semi-variogram exploration toolkit."""
    logging.basicConfig(level=logging.INFO, format="%(message)s")


@main.command("coords-plot")
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--out-dir", default=None, help="Output directory.")
@_handle_errors
def coords_plot(input_path, out_dir):
    """Plot observation locations, marking missing outcomes with crosses."""
    out = _out_dir(out_dir)
    ds = dataio.load_dataset(input_path)
    report = dataio.missingness_summary(ds)
    (out / "coords.svg").write_text(plots.coords_plot_svg(report))
    _write_json(out / "missingness.json", report.to_json_dict())
    click.echo(
        f"{report.n_total} points, {report.n_missing_outcome} missing outcomes"
    )
    click.echo(f"wrote {out / 'coords.svg'}")


@main.command("distance-info")
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--out-dir", default=None)
@click.option("--thresholds", default="", help="Comma-separated distance thresholds.")
@_handle_errors
def distance_info(input_path, out_dir, thresholds):
    """Six-number summary and histogram of pairwise distances."""
    out = _out_dir(out_dir)
    ds = dataio.load_dataset(input_path)
    dset = distances.pairwise_distances(ds)
    summary = distances.distance_summary(
        dset, thresholds=_parse_floats(thresholds) if thresholds else None
    )
    click.echo("Summary of distance set:")
    click.echo("   Min. 1st Qu.  Median    Mean 3rd Qu.    Max.")
    click.echo(
        f"{summary.min:7.0f} {summary.q1:7.0f} {summary.median:7.0f} "
        f"{summary.mean:7.0f} {summary.q3:7.0f} {summary.max:7.0f}"
    )
    for t, c in summary.n_below.items():
        click.echo(f"{c} of {dset.values.size} distances are below {t:g} m")
    (out / "distance_hist.svg").write_text(plots.distance_histogram_svg(summary))
    _write_json(out / "distance_info.json", summary.to_json_dict())


@main.command("vario-mod")
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--max-dist", required=True, help="Comma-separated maximal distances.")
@click.option("--nbins", required=True, help="Comma-separated bin counts.")
@click.option("--out-dir", default=None)
@click.option("--pdf", is_flag=True, help="Also assemble a multi-page PDF.")
@_handle_errors
def vario_mod_cmd(input_path, max_dist, nbins, out_dir, pdf):
    """Fit exponential semi-variogram models over a meta-parameter sweep."""
    out = _out_dir(out_dir)
    ds = dataio.load_dataset(input_path)
    sweep = expfit.vario_mod(ds, _parse_floats(max_dist), _parse_ints(nbins))
    click.echo(sweep.table.to_text(), nl=False)
    click.echo(dataio.COLUMN_ORDER_NOTICE)
    (out / "models.txt").write_text(sweep.table.to_text())
    _write_json(out / "models.json", sweep.table.to_json_dict())
    for row, ev, fit in zip(sweep.table.rows, sweep.variograms, sweep.fits):
        if ev is None:
            continue
        svg = plots.variogram_plot_svg(
            ev, fit, title=f"model {row.index}: max.dist={row.max_dist:g} nbins={row.nbins}"
        )
        (out / f"variogram_{row.index}.svg").write_text(svg)
    if pdf:
        _write_pdf(out / "variograms.pdf", sweep)
        click.echo(f"wrote {out / 'variograms.pdf'}")


def _write_pdf(path: Path, sweep: expfit.SweepResult):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.backends.backend_pdf import PdfPages

    with PdfPages(path) as pdf:
        for row, ev, fit in zip(sweep.table.rows, sweep.variograms, sweep.fits):
            if ev is None:
                continue
            fig, ax = plt.subplots()
            ax.plot(
                [b.mean_dist for b in ev.bins],
                [b.gamma_hat for b in ev.bins],
                "ko",
                fillstyle="none",
            )
            if fit is not None:
                hs = np.linspace(ev.max_dist / 200, ev.max_dist, 200)
                ax.plot(hs, expfit.eval_exponential(fit.params, hs), "b-")
            ax.set_xlabel("distance (m)")
            ax.set_ylabel("semi-variance")
            ax.set_title(f"model {row.index}: max.dist={row.max_dist:g} nbins={row.nbins}")
            pdf.savefig(fig)
            plt.close(fig)


@main.command("reg-prep")
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--response", required=True)
@click.option("--predictors", required=True, help="Comma-separated predictor columns.")
@click.option("--out-dir", default=None)
@_handle_errors
def reg_prep(input_path, response, predictors, out_dir):
    """Fit an OLS model and write studentized residuals at the coordinates."""
    out = _out_dir(out_dir)
    ds = dataio.load_dataset(input_path)
    fit = regress.fit_ols(ds, response, [p.strip() for p in predictors.split(",")])
    click.echo(fit.summary_text())
    residual_ds = regress.vario_reg_prep(fit, ds)
    dataio.save_dataset(residual_ds, out / "residuals.csv")
    _write_json(out / "regression.json", fit.to_json_dict())
    click.echo(f"wrote {out / 'residuals.csv'}")


@main.command("par-uncertainty")
@click.argument("input_path", type=click.Path(exists=True))
@click.option("--max-dist", required=True, help="Comma-separated maximal distances.")
@click.option("--nbins", required=True, help="Comma-separated bin counts.")
@click.option("--model-index", type=int, default=1, show_default=True)
@click.option("--threshold-factor", type=float, default=3.0, show_default=True)
@click.option("--b", "--B", "b_value", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out-dir", default=None)
@_handle_errors
def par_uncertainty_cmd(
    input_path, max_dist, nbins, model_index, threshold_factor, b_value, seed, workers, out_dir
):
    """Filtered-bootstrap standard errors for a selected sweep model."""
    out = _out_dir(out_dir)
    ds = dataio.load_dataset(input_path)
    sweep = expfit.vario_mod(ds, _parse_floats(max_dist), _parse_ints(nbins))
    if not (1 <= model_index <= len(sweep.fits)):
        raise click.UsageError(
            f"--model-index must be in 1..{len(sweep.fits)}"
        )
    fit = sweep.fits[model_index - 1]
    if fit is None:
        raise click.UsageError(f"model {model_index} failed to fit; pick another")
    cfg = bt.BootstrapConfig(
        B=b_value, threshold_factor=threshold_factor, seed=seed, workers=workers
    )
    table = bt.par_uncertainty(ds, fit, cfg)
    click.echo(table.to_text(), nl=False)
    _write_json(out / "uncertainty.json", table.to_json_dict())


@main.command("simulate")
@click.option("--n", type=int, default=900, show_default=True)
@click.option("--extent", type=float, default=5000.0, show_default=True)
@click.option("--nugget", type=float, default=1.0, show_default=True)
@click.option("--psill", type=float, default=4.0, show_default=True)
@click.option("--shape", type=float, default=300.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@_handle_errors
def simulate(n, extent, nugget, psill, shape, seed, out_path):
    """Simulate a Gaussian field with an exponential semi-variogram."""
    params = expfit.ExpParams(nugget=nugget, partial_sill=psill, shape=shape)
    coords = simfield.uniform_coords(n, extent, seed)
    spec = simfield.FieldSpec(params=params, coords=coords, seed=seed + 1)
    ds = simfield.simulated_dataset(spec)
    dataio.save_dataset(ds, out_path)
    click.echo(f"wrote {n} points to {out_path}")


@main.command("serve")
@click.option("--port", type=int, default=8642, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@_handle_errors
def serve(port, host):
    """Run the HTTP API for the exploration UI."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
