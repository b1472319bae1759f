"""Annual CSV ingestion and the empirical wage-ratio measures.

CSV schema (UTF-8, header row, comma-separated):

    year,min_wage_hourly,mean_wage_hourly,median_wage_hourly,
    nonsupervisory_wage_hourly,gdp_per_capita,deflator,gini,union_rate

Empty cells mark missing optional values. Numbers use a ``.`` decimal
point and no thousands separators; output tables follow the same
conventions and format floats with round-trip-safe precision.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import HOURS_PER_YEAR, DomainError

CSV_COLUMNS = (
    "year",
    "min_wage_hourly",
    "mean_wage_hourly",
    "median_wage_hourly",
    "nonsupervisory_wage_hourly",
    "gdp_per_capita",
    "deflator",
    "gini",
    "union_rate",
)

_REQUIRED = ("year", "min_wage_hourly", "mean_wage_hourly", "gdp_per_capita")

FIGURES = ("min-gdp-union", "min-mean-scatter", "min-gini")


class CsvValidationError(ValueError):
    """Schema violations in an annual CSV, with line numbers."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class SeriesError(ValueError):
    """A series lacks data an operation requires."""


@dataclass(frozen=True)
class AnnualObservation:
    """One year's raw nominal economy row."""

    year: int
    min_wage_hourly: float
    mean_wage_hourly: float
    gdp_per_capita: float
    median_wage_hourly: float | None = None
    nonsupervisory_wage_hourly: float | None = None
    deflator: float | None = None
    gini: float | None = None
    union_rate: float | None = None

    def __post_init__(self):
        for name in ("min_wage_hourly", "mean_wage_hourly", "gdp_per_capita"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive, got {value!r}")
        for name in ("median_wage_hourly", "nonsupervisory_wage_hourly", "deflator"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive when present, got {value!r}")
        if self.gini is not None and not 0.0 <= self.gini <= 1.0:
            raise DomainError(f"gini must lie in [0, 1], got {self.gini!r}")
        if self.union_rate is not None and not 0.0 <= self.union_rate <= 1.0:
            raise DomainError(f"union_rate must lie in [0, 1], got {self.union_rate!r}")


@dataclass(frozen=True)
class WageRatios:
    """Derived dimensionless indicators for one year."""

    year: int
    w_min: float
    w_mean: float
    min_to_mean: float
    kaitz: float | None = None
    min_to_nonsupervisory: float | None = None

    def __post_init__(self):
        if not self.w_min <= self.w_mean:
            raise DomainError(
                f"w_min {self.w_min!r} exceeds w_mean {self.w_mean!r} in {self.year}")
        if self.min_to_mean > 1.0:
            raise DomainError(f"min_to_mean above 1 in {self.year}")


@dataclass(frozen=True)
class ScatterStats:
    """OLS fit of w_mean on w_min plus the correlation coefficient."""

    slope: float
    intercept: float
    r: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("scatter needs at least two points")
        if abs(self.r) > 1.0 + 1e-12:
            raise DomainError(f"|r| must not exceed 1, got {self.r!r}")


# ---------------------------------------------------------------------------
# Loading and validation
# ---------------------------------------------------------------------------

def _parse_cell(raw: str, column: str, line: int, problems: list[str],
                as_int: bool = False):
    raw = raw.strip()
    if raw == "":
        return None
    try:
        return int(raw) if as_int else float(raw)
    except ValueError:
        problems.append(f"line {line}: column {column!r} is not numeric: {raw!r}")
        return None


def validate_rows(text: str) -> tuple[list[AnnualObservation], list[str]]:
    """Parse CSV text, returning valid rows and every schema violation found."""
    problems: list[str] = []
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        return [], ["line 1: empty file"]
    header = [h.strip() for h in header]
    if header != list(CSV_COLUMNS):
        problems.append(
            f"line 1: header must be {','.join(CSV_COLUMNS)!r}, got {','.join(header)!r}")
        return [], problems

    rows: list[AnnualObservation] = []
    seen_years: dict[int, int] = {}
    for line_no, cells in enumerate(reader, start=2):
        if len(cells) == 0 or all(c.strip() == "" for c in cells):
            continue
        if len(cells) != len(CSV_COLUMNS):
            problems.append(
                f"line {line_no}: expected {len(CSV_COLUMNS)} cells, got {len(cells)}")
            continue
        values = dict(zip(CSV_COLUMNS, cells))
        year = _parse_cell(values["year"], "year", line_no, problems, as_int=True)
        if year is None:
            continue
        parsed = {
            col: _parse_cell(values[col], col, line_no, problems)
            for col in CSV_COLUMNS if col != "year"
        }
        missing = [c for c in _REQUIRED if c != "year" and parsed[c] is None]
        if missing:
            problems.append(
                f"line {line_no}: required column(s) missing: {', '.join(missing)}")
            continue
        if year in seen_years:
            problems.append(
                f"line {line_no}: duplicate year {year} (first at line {seen_years[year]})")
            continue
        seen_years[year] = line_no
        try:
            rows.append(AnnualObservation(year=year, **parsed))
        except DomainError as exc:
            problems.append(f"line {line_no}: {exc}")
    return rows, problems


def load_annual_csv(path: str | Path) -> list[AnnualObservation]:
    """Load and validate an annual series; raises on any schema violation."""
    text = Path(path).read_text(encoding="utf-8")
    rows, problems = validate_rows(text)
    if problems:
        raise CsvValidationError(problems)
    return sorted(rows, key=lambda r: r.year)


def _check_unique_years(series: list[AnnualObservation]) -> None:
    seen: dict[int, bool] = {}
    dupes = []
    for row in series:
        if row.year in seen:
            dupes.append(row.year)
        seen[row.year] = True
    if dupes:
        raise CsvValidationError(
            [f"duplicate year {y} in series" for y in sorted(set(dupes))])


# ---------------------------------------------------------------------------
# Indicator operations
# ---------------------------------------------------------------------------

def annualize(hourly: float) -> float:
    """Annual wage for a full-time year at the hourly rate."""
    if not (math.isfinite(hourly) and hourly >= 0.0):
        raise DomainError(f"hourly wage must be non-negative, got {hourly!r}")
    return hourly * HOURS_PER_YEAR


def ratios(series: list[AnnualObservation]) -> list[WageRatios]:
    """Per-year wage ratios against per-capita GDP, annualized at 2,080 hours."""
    if not series:
        raise SeriesError("series is empty")
    _check_unique_years(series)
    out = []
    for row in series:
        w_min = annualize(row.min_wage_hourly) / row.gdp_per_capita
        w_mean = annualize(row.mean_wage_hourly) / row.gdp_per_capita
        kaitz = (row.min_wage_hourly / row.median_wage_hourly
                 if row.median_wage_hourly is not None else None)
        nonsup = (row.min_wage_hourly / row.nonsupervisory_wage_hourly
                  if row.nonsupervisory_wage_hourly is not None else None)
        out.append(WageRatios(
            year=row.year,
            w_min=w_min,
            w_mean=w_mean,
            min_to_mean=row.min_wage_hourly / row.mean_wage_hourly,
            kaitz=kaitz,
            min_to_nonsupervisory=nonsup,
        ))
    return out


def real_series(series: list[AnnualObservation],
                base_year: int) -> list[tuple[int, float, float]]:
    """Deflated annual minimum and mean wages, rebased to ``base_year``."""
    if not series:
        raise SeriesError("series is empty")
    by_year = {row.year: row for row in series}
    base = by_year.get(base_year)
    if base is None:
        raise SeriesError(f"base year {base_year} not present in series")
    if base.deflator is None:
        raise SeriesError(f"deflator missing for base year {base_year}")
    out = []
    for row in sorted(series, key=lambda r: r.year):
        if row.deflator is None:
            raise SeriesError(f"deflator missing for year {row.year}")
        scale = row.deflator / base.deflator
        out.append((
            row.year,
            annualize(row.min_wage_hourly) / scale,
            annualize(row.mean_wage_hourly) / scale,
        ))
    return out


def kaitz_divergence(series: list[AnnualObservation]) -> list[tuple[int, float, float]]:
    """(year, minimum/median, minimum/mean) per year, sorted by year.

    Years without a median are skipped with a warning rather than imputed.
    """
    out = []
    for row in sorted(series, key=lambda r: r.year):
        if row.median_wage_hourly is None:
            warnings.warn(f"year {row.year}: median missing, row skipped", stacklevel=2)
            continue
        out.append((
            row.year,
            row.min_wage_hourly / row.median_wage_hourly,
            row.min_wage_hourly / row.mean_wage_hourly,
        ))
    return out


def scatter(series: list[AnnualObservation]) -> ScatterStats:
    """Least-squares line of w_mean on w_min with the correlation coefficient."""
    rr = ratios(series)
    if len(rr) < 2:
        raise SeriesError("scatter needs at least two rows")
    x = np.array([r.w_min for r in rr])
    y = np.array([r.w_mean for r in rr])
    var_x = float(np.var(x))
    if var_x == 0.0:
        raise SeriesError("all w_min values identical; slope undefined")
    cov = float(np.mean((x - x.mean()) * (y - y.mean())))
    slope = cov / var_x
    intercept = float(y.mean() - slope * x.mean())
    var_y = float(np.var(y))
    r = 1.0 if var_y == 0.0 else cov / math.sqrt(var_x * var_y)
    r = max(-1.0, min(1.0, r))
    return ScatterStats(slope=slope, intercept=intercept, r=r, n=len(rr))


def gini_alignment(series: list[AnnualObservation]) -> float:
    """Correlation between w_min and the Gini coefficient, where observed."""
    rr = {r.year: r for r in ratios(series)}
    pairs = [(rr[row.year].w_min, row.gini) for row in series if row.gini is not None]
    if len(pairs) < 2:
        raise SeriesError("gini present for fewer than two years")
    x = np.array([p[0] for p in pairs])
    g = np.array([p[1] for p in pairs])
    if float(np.var(x)) == 0.0 or float(np.var(g)) == 0.0:
        raise SeriesError("zero variance; correlation undefined")
    return float(np.corrcoef(x, g)[0, 1])


def nonsupervisory_band(series: list[AnnualObservation], center: float = 0.40,
                        width: float = 0.012) -> list[int]:
    """Years whose minimum-to-nonsupervisory ratio lies within the band."""
    with_col = [row for row in series if row.nonsupervisory_wage_hourly is not None]
    if not with_col:
        raise SeriesError("nonsupervisory_wage_hourly column is empty")
    years = []
    for row in sorted(with_col, key=lambda r: r.year):
        ratio = row.min_wage_hourly / row.nonsupervisory_wage_hourly
        if abs(ratio - center) <= width:
            years.append(row.year)
    return years


def figure_series(series: list[AnnualObservation],
                  which: str) -> tuple[list[str], list[tuple]]:
    """Numeric content of one of the three standard figures.

    Returns (column names, rows); rows cover the years where every needed
    column is observed.
    """
    rr = {r.year: r for r in ratios(series)}
    ordered = sorted(series, key=lambda r: r.year)
    if which == "min-gdp-union":
        missing = all(row.union_rate is None for row in ordered)
        if missing:
            raise SeriesError("figure min-gdp-union: column union_rate is empty")
        rows = [(row.year, rr[row.year].w_min, rr[row.year].w_mean, row.union_rate)
                for row in ordered if row.union_rate is not None]
        return ["year", "w_min", "w_mean", "union_rate"], rows
    if which == "min-mean-scatter":
        rows = [(row.year, rr[row.year].w_min, rr[row.year].w_mean)
                for row in ordered]
        return ["year", "w_min", "w_mean"], rows
    if which == "min-gini":
        if all(row.gini is None for row in ordered):
            raise SeriesError("figure min-gini: column gini is empty")
        rows = [(row.year, rr[row.year].w_min, row.gini)
                for row in ordered if row.gini is not None]
        return ["year", "w_min", "gini"], rows
    raise ValueError(f"unknown figure {which!r}; valid: {', '.join(FIGURES)}")


def table_to_csv(columns: list[str], rows: list[tuple]) -> str:
    """Render a tidy table as CSV with round-trip-safe float formatting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else (v if isinstance(v, int) else repr(float(v)))
                         for v in row])
    return buf.getvalue()
