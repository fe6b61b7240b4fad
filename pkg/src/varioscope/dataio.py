"""Loading and summarizing geo-coded tabular datasets.

The column contract: first column x-coordinate in meters, second column
y-coordinate in meters, third column the outcome of interest. Further
columns are kept as named covariates but ignored by the variogram
machinery.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError, SchemaError, ValidationError

logger = logging.getLogger(__name__)

COLUMN_ORDER_NOTICE = (
    "Expected column order: 1st column x-coordinate (meters), "
    "2nd column y-coordinate (meters), 3rd column outcome. "
    "Further columns are kept as covariates."
)

_MISSING_TOKENS = {"", "na", "nan"}


@dataclass(frozen=True)
class SpatialDataset:
    """Immutable geo-coded observations.

    Missing outcome / covariate values are encoded as NaN. Coordinates
    are always finite.
    """

    x: np.ndarray
    y: np.ndarray
    outcome: np.ndarray
    extras: dict[str, np.ndarray] = field(default_factory=dict)
    column_names: tuple[str, ...] = ("x", "y", "outcome")
    source_name: str = ""

    def __post_init__(self):
        for arr in (self.x, self.y, self.outcome, *self.extras.values()):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def n_missing_outcome(self) -> int:
        return int(np.isnan(self.outcome).sum())

    def observed_mask(self) -> np.ndarray:
        return ~np.isnan(self.outcome)

    def column(self, name: str) -> np.ndarray:
        """Look up a column by name (outcome or covariate)."""
        if name == self.column_names[2]:
            return self.outcome
        if name in self.extras:
            return self.extras[name]
        raise ValidationError(f"unknown column {name!r}; have {list(self.column_names)}")


@dataclass(frozen=True)
class MissingnessReport:
    n_total: int
    n_missing_outcome: int
    observed_points: list[tuple[float, float]]
    missing_points: list[tuple[float, float]]

    def to_json_dict(self) -> dict:
        return {
            "n_total": self.n_total,
            "n_missing_outcome": self.n_missing_outcome,
            "observed": [list(p) for p in self.observed_points],
            "missing": [list(p) for p in self.missing_points],
        }


def _parse_cell(token: str) -> float:
    token = token.strip()
    if token.lower() in _MISSING_TOKENS:
        return np.nan
    return float(token)


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _sniff_delimiter(first_line: str) -> str:
    counts = {d: first_line.count(d) for d in (",", ";", "\t")}
    best = max(counts, key=counts.get)
    return best if counts[best] > 0 else ","


def load_dataset(source, fmt: str = "delimited") -> SpatialDataset:
    """Read a delimited table into a SpatialDataset.

    `source` may be a path or a text/byte stream. The delimiter (comma,
    semicolon or tab) and an optional header row are auto-detected: if
    the first row's first two cells do not parse as numbers it is
    treated as a header.
    """
    if fmt != "delimited":
        raise SchemaError(f"unsupported format tag {fmt!r}")

    name = ""
    if isinstance(source, (str, Path)):
        name = str(source)
        text = Path(source).read_text(encoding="utf-8")
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        name = getattr(source, "name", "")

    lines = text.splitlines()
    if not lines or all(not ln.strip() for ln in lines):
        raise SchemaError("empty input: no rows found")

    delim = _sniff_delimiter(lines[0])
    rows = list(csv.reader(io.StringIO(text), delimiter=delim))
    rows = [r for r in rows if any(c.strip() for c in r)]

    ncols = len(rows[0])
    if ncols < 3:
        raise SchemaError(
            f"need at least 3 columns (x, y, outcome); found {ncols}"
        )

    header = None
    if not (_is_number(rows[0][0]) and _is_number(rows[0][1])):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
        if not rows:
            raise SchemaError("header only, no data rows")

    if header is None:
        header = ["x", "y", "outcome"] + [f"v{i + 1}" for i in range(3, ncols)]

    data = np.empty((len(rows), ncols))
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ParseError(
                f"row {i + 1}: expected {ncols} cells, found {len(row)}"
            )
        for j, cell in enumerate(row):
            try:
                data[i, j] = _parse_cell(cell)
            except ValueError:
                raise ParseError(
                    f"row {i + 1}, column {j + 1}: cannot parse {cell!r}"
                ) from None

    bad = ~np.isfinite(data[:, 0]) | ~np.isfinite(data[:, 1])
    if bad.any():
        first = int(np.flatnonzero(bad)[0]) + 1
        raise ValidationError(f"non-finite coordinate in row {first}")

    logger.info(COLUMN_ORDER_NOTICE)

    extras = {header[j]: data[:, j].copy() for j in range(3, ncols)}
    return SpatialDataset(
        x=data[:, 0].copy(),
        y=data[:, 1].copy(),
        outcome=data[:, 2].copy(),
        extras=extras,
        column_names=tuple(header),
        source_name=name,
    )


def save_dataset(ds: SpatialDataset, path, delimiter: str = ",") -> None:
    """Write back in the standard x,y,outcome(,covariates) layout."""
    cols = [ds.x, ds.y, ds.outcome] + [ds.extras[n] for n in ds.column_names[3:]]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow(ds.column_names)
        for row in zip(*cols):
            writer.writerow(["" if np.isnan(v) else repr(float(v)) for v in row])


def missingness_summary(ds: SpatialDataset) -> MissingnessReport:
    """Partition points by whether the outcome is observed."""
    obs = ds.observed_mask()
    observed = list(zip(ds.x[obs].tolist(), ds.y[obs].tolist()))
    missing = list(zip(ds.x[~obs].tolist(), ds.y[~obs].tolist()))
    return MissingnessReport(
        n_total=ds.n,
        n_missing_outcome=ds.n_missing_outcome,
        observed_points=observed,
        missing_points=missing,
    )
