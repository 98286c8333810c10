"""Report emission: one JSON document, per-table CSVs, and SVG plots.

Emission is deterministic: stable key order, repr-exact floats (so CSV
tables re-parse to the same values), no timestamps. Re-running emit on
the same report produces byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import DataError
from .pipeline import REPORT_SCHEMA, RunReport
from .svgplot import acf_plot, line_plot, scree_plot

FORMATS = ("json", "csv", "svg")


def report_to_json(report: RunReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2, ensure_ascii=False) + "\n"


def load_report(path) -> RunReport:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise DataError(f"cannot load report from {path}: {err}") from None
    if data.get("schema") != REPORT_SCHEMA:
        raise DataError(f"unexpected report schema {data.get('schema')!r}")
    return RunReport(
        schema=data["schema"],
        config=data["config"],
        stages=data["stages"],
        failure=data.get("failure"),
    )


def _is_table(value) -> bool:
    return (
        isinstance(value, dict)
        and set(value.keys()) == {"columns", "rows"}
    )


def iter_tables(report: RunReport):
    """Yield (name, columns, rows) for every table in the report."""

    def walk(prefix, node):
        for key, value in node.items():
            name = f"{prefix}_{key}" if prefix else key
            if _is_table(value):
                yield name, value["columns"], value["rows"]
            elif isinstance(value, dict):
                yield from walk(name, value)

    yield from walk("", report.stages)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def table_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as err:
        raise DataError(f"cannot write {path}: {err}") from None
    return path


def _month_ticks(months, n: int = 8):
    if not months:
        return []
    step = max(1, len(months) // n)
    return [(i, months[i]) for i in range(0, len(months), step)]


def _plots(report: RunReport):
    stages = report.stages
    out = {}
    fitted = stages.get("fitted", {}).get("series")
    if fitted is not None:
        months = [row[0] for row in fitted["rows"]]
        xs = list(range(len(months)))
        series = [
            ("official", xs, [row[1] for row in fitted["rows"]]),
            ("fitted", xs, [row[2] for row in fitted["rows"]]),
        ]
        holdout = stages.get("holdout", {}).get("predictions")
        if holdout is not None:
            h_months = [row[0] for row in holdout["rows"]]
            base = len(months)
            h_xs = list(range(base, base + len(h_months)))
            series.append(("predicted", h_xs, [row[1] for row in holdout["rows"]]))
            series.append(
                ("official (holdout)", h_xs, [row[2] for row in holdout["rows"]])
            )
            months = months + h_months
        out["fitted_vs_official.svg"] = line_plot(
            series, "Fitted index vs official index", _month_ticks(months)
        )
    contribution = stages.get("contribution", {}).get("series")
    if contribution is not None:
        months = [row[0] for row in contribution["rows"]]
        xs = list(range(len(months)))
        out["contribution.svg"] = line_plot(
            [("search-volume contribution", xs, [row[1] for row in contribution["rows"]])],
            "Search-volume contribution to the fitted index",
            _month_ticks(months),
        )
    pca = stages.get("pca", {}).get("components")
    if pca is not None:
        eigenvalues = [row[1] for row in pca["rows"]]
        out["scree.svg"] = scree_plot(eigenvalues, "Eigenvalue scree")
    acf = stages.get("diagnostics", {}).get("bartlett", {}).get("acf")
    if acf is not None:
        out["acf_bands.svg"] = acf_plot(
            acf["rows"], "Residual autocorrelations with 95% bands"
        )
    return out


def emit_report(report: RunReport, out_dir, formats=FORMATS) -> list:
    """Write report.json, tables/*.csv, and plots/*.svg under ``out_dir``.

    Returns the list of written paths.
    """
    out_dir = Path(out_dir)
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise DataError(f"unknown report format(s): {sorted(unknown)}")
    written = []
    if "json" in formats:
        written.append(_write(out_dir / "report.json", report_to_json(report)))
    if "csv" in formats:
        for name, columns, rows in iter_tables(report):
            written.append(
                _write(out_dir / "tables" / f"{name}.csv", table_to_csv(columns, rows))
            )
    if "svg" in formats:
        for name, svg in _plots(report).items():
            written.append(_write(out_dir / "plots" / name, svg))
    return written
