"""Command-line interface.

Every pipeline stage is also runnable standalone on intermediate CSVs
(``resample``, ``pca``, ``adf``, ``var``, ``granger``, ``break``, ``fit``,
``predict``), so each report table can be regenerated in isolation.
Exit codes: 0 success, 2 configuration error, 3 data error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    DataError,
    NumericalError,
    TrendIndexError,
)
from .ingest import (
    MONTHLY_TOPICS,
    OFFICIAL_INDEX,
    WEEKLY_TOPICS,
    ingest_csv,
)
from .model import (
    DUMMY_LABEL,
    BreakDesign,
    build_transitional_design,
    component_terms,
    evaluate_terms,
    find_break_by_chow,
    fit_c3i,
    polarity_table,
    predict_c3i,
    resolve_force_keep,
    stepwise_ols,
    structural_break_tests,
    topic_influence,
)
from .modelio import load_model, load_pca, save_model, save_pca
from .pca import pca_fit, pca_project
from .pipeline import (
    AUTO,
    PipelineConfig,
    PipelineStageError,
    parse_overrides,
    run_pipeline,
)
from .report import emit_report, load_report, table_to_csv
from .series import align, lag, resample_weekly_to_monthly
from .svgplot import scree_plot
from .unitroot import AdfSpec, engle_granger, integration_order
from .var import ALL, granger_exclusion, var_fit

OUTDIR_ENV = "TRENDINDEX_OUTDIR"


def _int_flag(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"--{name} must be an integer, got {value!r}") from None


def _resolve_outdir(flag_value, config_value=None, default="out") -> Path:
    if flag_value:
        return Path(flag_value)
    env = os.environ.get(OUTDIR_ENV)
    if env:
        return Path(env)
    return Path(config_value if config_value else default)


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as err:
        raise DataError(f"cannot write {path}: {err}") from None


def _print_table(columns, rows, stream=None):
    stream = stream or sys.stdout
    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return f"{v:.6g}"
        return str(v)
    cells = [[fmt(v) for v in row] for row in rows]
    widths = [
        max(len(str(columns[j])), max((len(r[j]) for r in cells), default=0))
        for j in range(len(columns))
    ]
    header = "  ".join(str(c).ljust(w) for c, w in zip(columns, widths))
    print(header, file=stream)
    print("-" * len(header), file=stream)
    for row in cells:
        print("  ".join(v.ljust(w) for v, w in zip(row, widths)), file=stream)


def _emit_table(args_output, columns, rows):
    if args_output:
        _write_text(Path(args_output), table_to_csv(columns, rows))
        print(f"wrote {args_output}")
    else:
        _print_table(columns, rows)


def _monthly_csv(panel_index, labels, matrix) -> str:
    rows = [
        [str(month)] + [repr(float(v)) for v in matrix[i]]
        for i, month in enumerate(panel_index)
    ]
    lines = [",".join(["month"] + list(labels))]
    lines += [",".join(row) for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_resample(args) -> int:
    weekly = ingest_csv(args.input, WEEKLY_TOPICS)
    monthly = [resample_weekly_to_monthly(s) for s in weekly]
    panel = align(monthly)
    _write_text(Path(args.output), _monthly_csv(panel.index, panel.labels, panel.values))
    print(f"wrote {args.output} ({panel.n_rows} months x {panel.n_cols} topics)")
    return 0


def cmd_pca(args) -> int:
    panel = ingest_csv(args.topics, MONTHLY_TOPICS)
    model = pca_fit(panel, args.components)
    components = pca_project(model, panel)
    out = _resolve_outdir(args.out)
    _write_text(
        out / "components.csv",
        _monthly_csv(
            components.panel.index, components.labels, components.panel.values
        ),
    )
    explained_rows = [
        [i + 1, float(model.eigenvalues[i]), float(model.proportions[i]),
         float(model.cumulative[i])]
        for i in range(model.n_components)
    ]
    _write_text(
        out / "explained.csv",
        table_to_csv(["component", "eigenvalue", "proportion", "cumulative"],
                     explained_rows),
    )
    loading_rows = [
        [topic] + [float(v) for v in model.loadings[j]]
        for j, topic in enumerate(model.topic_labels)
    ]
    _write_text(
        out / "loadings.csv",
        table_to_csv(["topic"] + list(model.component_labels), loading_rows),
    )
    save_pca(model, out / "pca.json")
    _write_text(
        out / "scree.svg",
        scree_plot([float(v) for v in model.eigenvalues], "Eigenvalue scree"),
    )
    print(f"wrote components, loadings, explained, pca.json, scree.svg to {out}")
    return 0


def _adf_spec(args) -> AdfSpec:
    lags = args.lags
    if lags != AUTO:
        lags = _int_flag("lags", lags)
    return AdfSpec(deterministic=args.deterministic, lag_order=lags)


def cmd_adf(args) -> int:
    panel = ingest_csv(args.input, MONTHLY_TOPICS)
    labels = args.columns.split(",") if args.columns else list(panel.labels)
    spec = _adf_spec(args)
    rows = []
    for label in labels:
        series = panel.column(label.strip())
        order = integration_order(series, spec, level=args.level, max_d=args.max_diff)
        for d, res in sorted(order.evidence.items()):
            rows.append(
                [label, d, order.order, float(res.statistic), float(res.p_value),
                 res.lags_used, float(res.critical_values["1%"]),
                 float(res.critical_values["5%"])]
            )
    _emit_table(
        args.output,
        ["series", "diff", "order", "statistic", "p", "lags", "cv_1pct", "cv_5pct"],
        rows,
    )
    return 0


def cmd_var(args) -> int:
    panel = ingest_csv(args.input, MONTHLY_TOPICS)
    fit = var_fit(panel, args.lags)
    rows = [
        [eq, term, float(c), float(se), float(z), float(p)]
        for eq, term, c, se, z, p in fit.table_rows()
    ]
    _emit_table(args.output, ["equation", "term", "coef", "std_err", "z", "p"], rows)
    return 0


def cmd_granger(args) -> int:
    panel = ingest_csv(args.input, MONTHLY_TOPICS)
    if args.target not in panel.labels:
        raise ConfigError(f"target {args.target!r} not among columns")
    fit = var_fit(panel, args.lags)
    rows = []
    for label in panel.labels:
        if label == args.target:
            continue
        res = granger_exclusion(fit, args.target, label)
        rows.append(
            [label, float(res.chi2), res.df, float(res.p_value),
             res.p_value <= args.level]
        )
    res = granger_exclusion(fit, args.target, ALL)
    rows.append(
        [ALL, float(res.chi2), res.df, float(res.p_value),
         res.p_value <= args.level]
    )
    _emit_table(args.output, ["excluded", "chi2", "df", "p", "causal"], rows)
    return 0


def cmd_break(args) -> int:
    panel = ingest_csv(args.input, MONTHLY_TOPICS)
    if args.target not in panel.labels:
        raise ConfigError(f"target {args.target!r} not among columns")
    target = panel.column(args.target)
    others = [panel.column(lab) for lab in panel.labels if lab != args.target]
    target_lag = lag(target, 1).rename(f"L1.{args.target}")
    merged = align([target] + others + [target_lag])
    y = merged.values[:, 0]
    x = merged.values[:, 1:]
    origin = panel.start
    if args.t0 == AUTO:
        split, _ = find_break_by_chow(y, x)
        t0 = origin.months_until(merged.index[split - 1]) + 1
    else:
        t0 = _int_flag("t0", args.t0)
        design = BreakDesign(t0, origin)
        split = int(np.sum(design.dummy_for(merged.index) == 0.0))
    result = structural_break_tests(y, x, split)
    rows = [
        ["chow", float(result.chow_f),
         f"F({result.chow_df[0]}, {result.chow_df[1]})", float(result.p_values[0])],
        ["wald", float(result.wald), f"chi2({result.df_chi})",
         float(result.p_values[1])],
        ["lr", float(result.lr), f"chi2({result.df_chi})",
         float(result.p_values[2])],
    ]
    print(f"t0 = {t0} (break month {origin.plus(t0 - 1)})")
    _emit_table(args.output, ["test", "statistic", "df", "p"], rows)
    return 0


def _parse_summed(value, components, official, level, var_lags):
    if value == "none":
        return []
    if value == AUTO:
        spec = AdfSpec()
        summed = []
        for i in range(1, components.n_cols + 1):
            order = integration_order(
                components.column(f"C{i}"), spec, level=level, max_d=2
            )
            if order.order == "I0":
                summed.append(i)
        return summed
    return [_int_flag("summed", tok) for tok in value.split(",") if tok.strip()]


def _parse_lag_terms(value, base_series, official, var_lags, level):
    if value == "none":
        return []
    if value == AUTO:
        var_panel = align(list(base_series.values()) + [official])
        vfit = var_fit(var_panel, var_lags)
        return [
            name
            for name in base_series
            if granger_exclusion(vfit, official.label, name).p_value <= level
        ]
    return [tok.strip() for tok in value.split(",") if tok.strip()]


def cmd_fit(args) -> int:
    components = ingest_csv(args.components, MONTHLY_TOPICS)
    official = ingest_csv(args.index, OFFICIAL_INDEX)
    pca = load_pca(args.pca) if args.pca else None
    out = _resolve_outdir(args.out)

    summed = _parse_summed(
        args.summed, components, official, args.level, args.var_lags
    )
    term_defs, base_series = component_terms(components, summed)
    lag_terms = _parse_lag_terms(
        args.lag_terms, base_series, official, args.var_lags, args.granger_level
    )

    origin = components.start
    if args.t0 == AUTO:
        official_lag = lag(official, 1).rename(f"L1.{official.label}")
        merged = align([official] + list(base_series.values()) + [official_lag])
        split, _ = find_break_by_chow(merged.values[:, 0], merged.values[:, 1:])
        t0 = origin.months_until(merged.index[split - 1]) + 1
    else:
        t0 = _int_flag("t0", args.t0)
    break_design = BreakDesign(t0, origin)

    design = build_transitional_design(
        components, official, break_design, summed=summed, lag_terms=lag_terms
    )
    configured = [
        name for name in (tok.strip() for tok in args.force_keep.split(","))
        if name
    ]
    forced = resolve_force_keep(configured, design.labels)
    forced |= {DUMMY_LABEL, f"L1.{official.label}"}
    fit, trace = stepwise_ols(
        design.y, design.x, design.labels,
        threshold=args.threshold, force_keep=forced,
    )
    model = fit_c3i(fit, design, pca, force_keep=forced)
    save_model(model, out / "model.json")
    _write_text(
        out / "regression.csv",
        table_to_csv(
            ["term", "coef", "std_err", "t", "p", "ci_low", "ci_high"],
            [list(r) for r in fit.summary_rows()],
        ),
    )
    _write_text(
        out / "stepwise.csv",
        table_to_csv(
            ["step", "dropped", "p_value", "r_squared", "adj_r_squared"],
            [
                [s.step, s.dropped_term, s.p_value, s.r_squared,
                 s.adjusted_r_squared]
                for s in trace.steps
            ],
        ),
    )
    coint = engle_granger(fit.residuals)
    _write_text(
        out / "cointegration.csv",
        table_to_csv(
            ["statistic", "p", "cv_1pct", "cointegrated"],
            [[coint.statistic, coint.p_value, coint.critical_values["1%"],
              coint.cointegrated]],
        ),
    )
    if pca is not None:
        influence = topic_influence(model)
        _write_text(
            out / "influence.csv",
            table_to_csv(
                ["topic", "pre_current", "post_current", "post_previous"],
                [
                    [influence.topic_labels[j], float(influence.pre_current[j]),
                     float(influence.post_current[j]),
                     float(influence.post_previous[j])]
                    for j in range(len(influence.topic_labels))
                ],
            ),
        )
        polarity = polarity_table(influence)
        rows = []
        for quadrant in polarity.QUADRANT_ORDER:
            rows += [
                [quadrant, topic, b, c] for topic, b, c in polarity.quadrants[quadrant]
            ]
        rows += [["zero", topic, b, c] for topic, b, c in polarity.zeros]
        _write_text(
            out / "polarity.csv",
            table_to_csv(["quadrant", "topic", "current", "previous"], rows),
        )
    print(
        f"fit: R2={fit.r_squared:.4f} adjR2={fit.adjusted_r_squared:.4f} "
        f"SS={fit.root_residual:.4f}; retained {len(fit.term_labels) - 1} terms; "
        f"outputs in {out}"
    )
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    official = ingest_csv(args.index, OFFICIAL_INDEX)
    if official.label != model.official_label:
        raise DataError(
            f"index column {official.label!r} does not match the model's "
            f"{model.official_label!r}"
        )
    rows = []
    if args.topics:
        if model.pca is None:
            raise ConfigError(
                "model.json carries no PCA model; predict from --components"
            )
        panel = ingest_csv(args.topics, MONTHLY_TOPICS)
        if panel.labels != model.pca.topic_labels:
            raise DataError("topic columns do not match the model's PCA topics")
        common = align(panel.columns() + [official])
        topics = common.select(panel.labels)
        for r, month in enumerate(topics.index):
            t = model.origin.months_until(month) + 1
            if t < 2 or r < 1:
                continue
            x_prev2 = topics.values[r - 2] if r >= 2 else None
            try:
                predicted = predict_c3i(
                    model, topics.values[r], topics.values[r - 1],
                    float(common.column(official.label).values[r - 1]),
                    t, x_prev2=x_prev2,
                )
            except ValueError:
                continue  # not enough topic history yet for this regime
            rows.append(
                [str(month), float(predicted),
                 float(common.column(official.label).values[r])]
            )
    else:
        if not args.components:
            raise ConfigError("predict needs --topics or --components")
        panel = ingest_csv(args.components, MONTHLY_TOPICS)
        summed = sorted(
            td.component for td in model.term_defs.values() if td.summed and td.lag == 0
        )
        _, base_series = component_terms(panel, summed)
        lagged = [
            name for name, td in model.term_defs.items() if td.lag == 1
        ]
        series = dict(base_series)
        for lag_name in lagged:
            base = model.term_defs[lag_name]
            src = "A" if base.summed else "C"
            series[lag_name] = lag(base_series[f"{src}{base.component}"], 1).rename(
                lag_name
            )
        merged = align(list(series.values()) + [official])
        for r, month in enumerate(merged.index):
            t = model.origin.months_until(month) + 1
            if t < 2 or r < 1:
                continue
            term_values = {
                name: float(merged.column(name).values[r])
                for name in model.term_names()
            }
            predicted = evaluate_terms(
                model, term_values,
                float(merged.column(official.label).values[r - 1]), t,
            )
            rows.append(
                [str(month), float(predicted),
                 float(merged.column(official.label).values[r])]
            )
    if not rows:
        raise DataError("no months with enough history to predict")
    _emit_table(args.output, ["month", "predicted", "official"], rows)
    return 0


def cmd_pipeline(args) -> int:
    overrides = parse_overrides(args.set or [])
    config = PipelineConfig.from_file(args.config, overrides)
    out = _resolve_outdir(args.out, config.output_dir)
    formats = tuple(args.formats.split(","))
    try:
        report = run_pipeline(config)
    except PipelineStageError as err:
        emit_report(err.report, out, formats=("json",))
        print(f"error: {err}", file=sys.stderr)
        print(f"partial report written to {out / 'report.json'}", file=sys.stderr)
        return _exit_code(err.cause)
    paths = emit_report(report, out, formats=formats)
    print(f"pipeline complete: {len(report.stages)} stages, "
          f"{len(paths)} files under {out}")
    return 0


def cmd_report(args) -> int:
    report = load_report(args.report)
    out = _resolve_outdir(args.out)
    formats = tuple(args.formats.split(","))
    paths = emit_report(report, out, formats=formats)
    print(f"wrote {len(paths)} files under {out}")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trendindex",
        description="Behavioral confidence index from search-volume series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resample", help="weekly topics CSV to monthly means")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_resample)

    p = sub.add_parser("pca", help="fit PCA and project components")
    p.add_argument("--topics", required=True, help="monthly topics CSV")
    p.add_argument("--components", type=int, default=9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("adf", help="unit-root tests per column")
    p.add_argument("--input", required=True, help="monthly CSV")
    p.add_argument("--columns", default=None, help="comma list; default all")
    p.add_argument("--deterministic", default="constant",
                   choices=["none", "constant", "constant+trend"])
    p.add_argument("--lags", default=AUTO)
    p.add_argument("--level", type=float, default=0.01)
    p.add_argument("--max-diff", type=int, default=2, dest="max_diff")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_adf)

    p = sub.add_parser("var", help="vector autoregression over CSV columns")
    p.add_argument("--input", required=True)
    p.add_argument("--lags", type=int, default=2)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_var)

    p = sub.add_parser("granger", help="Granger exclusion tests")
    p.add_argument("--input", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--lags", type=int, default=2)
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_granger)

    p = sub.add_parser("break", help="structural-change tests at a break month")
    p.add_argument("--input", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--t0", default="47", help="month position, or 'auto'")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_break)

    p = sub.add_parser("fit", help="fit the piecewise index model")
    p.add_argument("--components", required=True, help="components CSV (C1..Ck)")
    p.add_argument("--index", required=True, help="official index CSV")
    p.add_argument("--pca", default=None, help="pca.json for back-projection")
    p.add_argument("--t0", default="47")
    p.add_argument("--summed", default=AUTO,
                   help="'auto', 'none', or comma list of component numbers")
    p.add_argument("--lag-terms", default=AUTO, dest="lag_terms",
                   help="'auto', 'none', or comma list of term names")
    p.add_argument("--level", type=float, default=0.01,
                   help="stationarity level for --summed auto")
    p.add_argument("--granger-level", type=float, default=0.05,
                   dest="granger_level")
    p.add_argument("--var-lags", type=int, default=2, dest="var_lags")
    p.add_argument("--threshold", type=float, default=0.1)
    p.add_argument("--force-keep", default="C1,C2,C3,C4", dest="force_keep")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="predict from a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--topics", default=None, help="raw monthly topics CSV")
    p.add_argument("--components", default=None, help="components CSV")
    p.add_argument("--index", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("pipeline", help="run the full pipeline from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", default=None)
    p.add_argument("--formats", default="json,csv,svg")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("report", help="re-emit tables/plots from report.json")
    p.add_argument("--report", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--formats", default="csv,svg")
    p.set_defaults(func=cmd_report)

    return parser


def _exit_code(err: Exception) -> int:
    if isinstance(err, ConfigError):
        return 2
    if isinstance(err, DataError):
        return 3
    if isinstance(err, NumericalError):
        return 4
    return 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TrendIndexError as err:
        print(f"error: {err}", file=sys.stderr)
        return _exit_code(err)


if __name__ == "__main__":
    sys.exit(main())
