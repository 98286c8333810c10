"""Configuration-driven end-to-end pipeline.

Stage order: ingest/resample, PCA, suitability checks, projection,
stationarity classification, VAR and exclusion tests, structural-break
tests, the two-regime design, stepwise selection, residual diagnostics,
model assembly, topic back-projection, polarity, contribution, and the
optional hold-out evaluation. A stage failure aborts the run but the
report assembled so far is preserved on the raised error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError, TrendIndexError
from .ingest import (
    MONTHLY_TOPICS,
    OFFICIAL_INDEX,
    WEEKLY_TOPICS,
    ingest_csv_with_info,
    sniff_topics_kind,
)
from .model import (
    DUMMY_LABEL,
    BreakDesign,
    bartlett_acf_check,
    build_transitional_design,
    component_terms,
    find_break_by_chow,
    fit_c3i,
    polarity_table,
    predict_c3i,
    resolve_force_keep,
    stepwise_ols,
    structural_break_tests,
    topic_influence,
    trends_contribution,
    white_test,
)
from .pca import kmo_statistic, pca_fit, pca_project, smc_vector
from .series import (
    MonthIndex,
    Panel,
    TimeSeries,
    align,
    difference,
    lag,
    resample_weekly_to_monthly,
    week_counts_by_month,
)
from .unitroot import AdfSpec, adf_test, engle_granger, integration_order
from .var import ALL, granger_exclusion, var_fit

REPORT_SCHEMA = "trendindex.report/1"
AUTO = "auto"


# ---------------------------------------------------------------------------
# configuration


_CONFIG_FIELDS = (
    "topics_csv",
    "index_csv",
    "topics_frequency",
    "k_components",
    "adf_deterministic",
    "adf_lags",
    "stationarity_level",
    "var_lags",
    "lag_selection_level",
    "break_t0",
    "stepwise_threshold",
    "force_keep",
    "summed_mode",
    "bartlett_max_lag",
    "engle_granger_lags",
    "holdout_start",
    "output_dir",
    "seed",
)


@dataclass
class PipelineConfig:
    """Run parameters; every default follows the published methodology."""

    topics_csv: str
    index_csv: str
    topics_frequency: str = AUTO  # auto | weekly | monthly
    k_components: int = 9
    adf_deterministic: str = "constant"
    adf_lags: int | str = AUTO
    stationarity_level: float = 0.01
    var_lags: int = 2
    lag_selection_level: float = 0.05
    break_t0: int | str = 47  # month position, or "auto" for max-Chow search
    stepwise_threshold: float = 0.1
    force_keep: tuple = ("C1", "C2", "C3", "C4")
    summed_mode: str = "pairwise"
    bartlett_max_lag: int | str = AUTO
    engle_granger_lags: int = 0
    holdout_start: str | None = None  # "YYYY-MM"
    output_dir: str = "out"
    seed: int = 0

    def __post_init__(self):
        if self.topics_frequency not in (AUTO, "weekly", "monthly"):
            raise ConfigError(
                f"topics_frequency must be auto/weekly/monthly, "
                f"got {self.topics_frequency!r}"
            )
        if self.k_components < 1:
            raise ConfigError("k_components must be at least 1")
        if not 0.0 < self.stationarity_level < 1.0:
            raise ConfigError("stationarity_level must be in (0, 1)")
        if not 0.0 < self.lag_selection_level < 1.0:
            raise ConfigError("lag_selection_level must be in (0, 1)")
        if not 0.0 < self.stepwise_threshold < 1.0:
            raise ConfigError("stepwise_threshold must be in (0, 1)")
        if self.break_t0 != AUTO and (
            not isinstance(self.break_t0, int) or self.break_t0 < 1
        ):
            raise ConfigError("break_t0 must be 'auto' or a positive month position")
        if self.summed_mode not in ("pairwise", "cumulative"):
            raise ConfigError("summed_mode must be pairwise or cumulative")
        if self.holdout_start is not None:
            MonthIndex.parse(self.holdout_start)

    def to_dict(self) -> dict:
        out = {}
        for name in _CONFIG_FIELDS:
            value = getattr(self, name)
            if isinstance(value, tuple):
                value = list(value)
            out[name] = value
        return out

    @classmethod
    def from_mapping(cls, mapping: dict) -> "PipelineConfig":
        unknown = sorted(set(mapping) - set(_CONFIG_FIELDS))
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        kwargs = dict(mapping)
        for key in ("topics_csv", "index_csv"):
            if key not in kwargs:
                raise ConfigError(f"missing required config key {key!r}")
        if "force_keep" in kwargs and isinstance(kwargs["force_keep"], str):
            raw = kwargs["force_keep"].strip()
            kwargs["force_keep"] = (
                tuple(part.strip() for part in raw.split(",") if part.strip())
                if raw
                else ()
            )
        for key in ("k_components", "var_lags", "engle_granger_lags", "seed"):
            if key in kwargs:
                kwargs[key] = _to_int(key, kwargs[key])
        for key in (
            "stationarity_level",
            "lag_selection_level",
            "stepwise_threshold",
        ):
            if key in kwargs:
                kwargs[key] = _to_float(key, kwargs[key])
        for key in ("adf_lags", "break_t0", "bartlett_max_lag"):
            if key in kwargs and kwargs[key] != AUTO:
                kwargs[key] = _to_int(key, kwargs[key])
        if kwargs.get("holdout_start") in ("", "none", None):
            kwargs["holdout_start"] = None
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path, overrides: dict | None = None) -> "PipelineConfig":
        mapping = parse_config_file(path)
        if overrides:
            mapping.update(overrides)
        return cls.from_mapping(mapping)


def _to_int(key, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"config key {key!r} must be an integer, got {value!r}")


def _to_float(key, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"config key {key!r} must be a number, got {value!r}")


def parse_config_file(path) -> dict:
    """Flat ``key = value`` config file; '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from None
    mapping: dict = {}
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path} line {i}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path} line {i}: empty key")
        if key in mapping:
            raise ConfigError(f"{path} line {i}: duplicate key {key!r}")
        mapping[key] = value
    return mapping


def parse_overrides(pairs) -> dict:
    """CLI ``key=value`` override strings into a mapping."""
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override {pair!r} is not of the form key=value")
        key, value = pair.split("=", 1)
        out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------------------
# report container


@dataclass
class RunReport:
    """Assembled stage outputs; serializes to a stable JSON document."""

    schema: str
    config: dict
    stages: dict = field(default_factory=dict)
    failure: dict | None = None

    def to_json_dict(self) -> dict:
        out = {"schema": self.schema, "config": self.config, "stages": self.stages}
        if self.failure is not None:
            out["failure"] = self.failure
        return out


class PipelineStageError(TrendIndexError):
    """A stage failed; carries the partial report assembled so far."""

    def __init__(self, stage: str, cause: Exception, report: RunReport):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause
        self.report = report


def _table(columns, rows) -> dict:
    return {"columns": list(columns), "rows": [list(r) for r in rows]}


def _panel_head(panel: Panel, rows: int) -> Panel:
    return Panel(panel.index[:rows], panel.labels, panel.values[:rows])


# ---------------------------------------------------------------------------
# the pipeline


def run_pipeline(config: PipelineConfig) -> RunReport:
    """Execute every stage; deterministic given config and input files."""
    report = RunReport(schema=REPORT_SCHEMA, config=config.to_dict())
    stages = report.stages

    def run_stage(name: str, fn):
        try:
            return fn()
        except TrendIndexError as err:
            report.failure = {
                "stage": name,
                "error": f"{type(err).__name__}: {err}",
            }
            raise PipelineStageError(name, err, report) from err

    # -- ingest ------------------------------------------------------------
    def stage_ingest():
        kind = config.topics_frequency
        if kind == AUTO:
            kind = (
                "weekly"
                if sniff_topics_kind(config.topics_csv) == WEEKLY_TOPICS
                else "monthly"
            )
        partial_months: list = []
        if kind == "weekly":
            weekly, dropped = ingest_csv_with_info(config.topics_csv, WEEKLY_TOPICS)
            counts = week_counts_by_month(weekly[0])
            partial_months = sorted(str(m) for m, c in counts.items() if c < 4)
            topic_series = [resample_weekly_to_monthly(s) for s in weekly]
        else:
            panel, dropped = ingest_csv_with_info(config.topics_csv, MONTHLY_TOPICS)
            topic_series = panel.columns()
        official, _ = ingest_csv_with_info(config.index_csv, OFFICIAL_INDEX)
        labels = [s.label for s in topic_series]
        if official.label in labels:
            raise DataError(
                f"official index label {official.label!r} collides with a topic"
            )
        common = align(topic_series + [official])
        topic_full = common.select(tuple(labels))
        official_full = common.column(official.label)

        if config.holdout_start is not None:
            cut = MonthIndex.parse(config.holdout_start)
            fit_rows = common.start.months_until(cut)
            if fit_rows < 12:
                raise DataError(
                    f"holdout_start {cut} leaves only {fit_rows} fitting months"
                )
            if fit_rows >= common.n_rows:
                raise DataError(
                    f"holdout_start {cut} lies beyond the data range "
                    f"{common.start}..{common.end}"
                )
        else:
            fit_rows = common.n_rows
        topic_panel = _panel_head(topic_full, fit_rows)
        official_fit = TimeSeries(
            official.label, "monthly", official_full.start,
            official_full.values[:fit_rows],
        )
        stages["ingest"] = {
            "topics_csv": str(config.topics_csv),
            "index_csv": str(config.index_csv),
            "frequency": kind,
            "dropped_columns": list(dropped),
            "topics": list(labels),
            "official_label": official.label,
            "range": [str(common.start), str(common.end)],
            "fit_range": [str(topic_panel.start), str(topic_panel.end)],
            "rows": common.n_rows,
            "fit_rows": fit_rows,
        }
        if partial_months:
            stages["ingest"]["months_under_4_weeks"] = partial_months
        return topic_full, official_full, topic_panel, official_fit

    topic_full, official_full, topic_panel, official_fit = run_stage(
        "ingest", stage_ingest
    )

    # -- pca ---------------------------------------------------------------
    def stage_pca():
        if config.k_components > topic_panel.n_cols:
            raise ConfigError(
                f"k_components={config.k_components} exceeds the "
                f"{topic_panel.n_cols} usable topics"
            )
        pca = pca_fit(topic_panel, config.k_components)
        stages["pca"] = {
            "k": pca.n_components,
            "components": _table(
                ["component", "eigenvalue", "proportion", "cumulative"],
                [
                    [i + 1, float(pca.eigenvalues[i]), float(pca.proportions[i]),
                     float(pca.cumulative[i])]
                    for i in range(pca.n_components)
                ],
            ),
            "loadings": _table(
                ["topic"] + list(pca.component_labels),
                [
                    [topic] + [float(v) for v in pca.loadings[j]]
                    for j, topic in enumerate(pca.topic_labels)
                ],
            ),
        }
        return pca

    pca = run_stage("pca", stage_pca)

    # -- suitability ---------------------------------------------------------
    def stage_suitability():
        kmo = kmo_statistic(topic_panel)
        smc = smc_vector(topic_panel)
        stages["suitability"] = {
            "kmo": float(kmo),
            "smc": _table(
                ["topic", "smc"],
                [[t, float(v)] for t, v in zip(topic_panel.labels, smc)],
            ),
        }

    run_stage("suitability", stage_suitability)

    # -- projection ----------------------------------------------------------
    def stage_project():
        components = pca_project(pca, topic_panel)
        rows = [
            [str(month)]
            + [float(v) for v in components.panel.values[i]]
            + [float(official_fit.values[i])]
            for i, month in enumerate(components.panel.index)
        ]
        stages["project"] = {
            "series": _table(
                ["month"] + list(components.labels) + [official_fit.label], rows
            )
        }
        return components

    components = run_stage("project", stage_project)

    # -- stationarity ----------------------------------------------------------
    def stage_stationarity():
        spec = AdfSpec(config.adf_deterministic, config.adf_lags)
        rows = []
        summed = []
        for label in list(components.labels) + [official_fit.label]:
            series = (
                components.panel.column(label)
                if label != official_fit.label
                else official_fit
            )
            order = integration_order(
                series, spec, level=config.stationarity_level, max_d=2
            )
            level_res = order.evidence[0]
            diff_res = order.evidence.get(1)
            if diff_res is None:
                diff_res = adf_test(difference(series, 1), spec)
            rows.append(
                [
                    label,
                    order.order,
                    float(level_res.statistic),
                    float(level_res.p_value),
                    level_res.lags_used,
                    float(diff_res.statistic),
                    float(diff_res.p_value),
                ]
            )
            if order.order == "I0" and label != official_fit.label:
                summed.append(int(label[1:]))
        stages["stationarity"] = {
            "level": config.stationarity_level,
            "deterministic": config.adf_deterministic,
            "tests": _table(
                [
                    "series",
                    "order",
                    "stat_level",
                    "p_level",
                    "lags",
                    "stat_diff",
                    "p_diff",
                ],
                rows,
            ),
            "summed_components": list(summed),
        }
        return summed

    summed = run_stage("stationarity", stage_stationarity)

    term_defs, base_series = component_terms(
        components, summed, config.summed_mode
    )

    # -- var ---------------------------------------------------------------
    def stage_var():
        var_panel = align(list(base_series.values()) + [official_fit])
        vfit = var_fit(var_panel, config.var_lags)
        stages["var"] = {
            "lag_order": config.var_lags,
            "nobs": vfit.nobs,
            "coefficients": _table(
                ["equation", "term", "coef", "std_err", "z", "p"],
                [
                    [eq, term, float(c), float(se), float(z), float(p)]
                    for eq, term, c, se, z, p in vfit.table_rows()
                ],
            ),
        }
        return vfit

    vfit = run_stage("var", stage_var)

    # -- granger -------------------------------------------------------------
    def stage_granger():
        rows = []
        causal = []
        for name in base_series:
            res = granger_exclusion(vfit, official_fit.label, name)
            is_causal = res.p_value <= config.lag_selection_level
            rows.append(
                [name, float(res.chi2), res.df, float(res.p_value), is_causal]
            )
            if is_causal:
                causal.append(name)
        res_all = granger_exclusion(vfit, official_fit.label, ALL)
        rows.append(
            [
                ALL,
                float(res_all.chi2),
                res_all.df,
                float(res_all.p_value),
                res_all.p_value <= config.lag_selection_level,
            ]
        )
        stages["granger"] = {
            "equation": official_fit.label,
            "level": config.lag_selection_level,
            "tests": _table(["excluded", "chi2", "df", "p", "causal"], rows),
            "lagged_terms": list(causal),
        }
        return causal

    lag_terms = run_stage("granger", stage_granger)

    # -- structural break ------------------------------------------------------
    def stage_break():
        origin = topic_panel.start
        official_lag = lag(official_fit, 1).rename(f"L1.{official_fit.label}")
        base_panel = align(
            [official_fit] + list(base_series.values()) + [official_lag]
        )
        y = base_panel.values[:, 0]
        x = base_panel.values[:, 1:]
        if config.break_t0 == AUTO:
            split, grid = find_break_by_chow(y, x)
            t0 = origin.months_until(base_panel.index[split - 1]) + 1
        else:
            t0 = config.break_t0
            grid = None
            design = BreakDesign(t0, origin)
            split = int(np.sum(design.dummy_for(base_panel.index) == 0.0))
        break_design = BreakDesign(t0, origin)
        tests = structural_break_tests(y, x, split)
        stages["break"] = {
            "t0": t0,
            "break_month": str(origin.plus(t0 - 1)),
            "mode": "auto" if config.break_t0 == AUTO else "fixed",
            "tests": _table(
                ["test", "statistic", "df", "p"],
                [
                    [
                        "chow",
                        float(tests.chow_f),
                        f"F({tests.chow_df[0]}, {tests.chow_df[1]})",
                        float(tests.p_values[0]),
                    ],
                    [
                        "wald",
                        float(tests.wald),
                        f"chi2({tests.df_chi})",
                        float(tests.p_values[1]),
                    ],
                    [
                        "lr",
                        float(tests.lr),
                        f"chi2({tests.df_chi})",
                        float(tests.p_values[2]),
                    ],
                ],
            ),
        }
        if grid is not None:
            stages["break"]["chow_grid"] = _table(
                ["split", "chow_f"], [[s, float(f)] for s, f in grid]
            )
        return break_design

    break_design = run_stage("break", stage_break)

    # -- transitional design -----------------------------------------------------
    def stage_design():
        design = build_transitional_design(
            components,
            official_fit,
            break_design,
            summed=summed,
            lag_terms=lag_terms,
            summed_mode=config.summed_mode,
        )
        stages["design"] = {
            "columns": ["const"] + list(design.labels),
            "rows": len(design.y),
            "t0": break_design.t0,
            "first_regime_rows": design.first_regime_rows,
        }
        return design

    design = run_stage("design", stage_design)

    # -- stepwise ------------------------------------------------------------
    def stage_stepwise():
        forced = resolve_force_keep(config.force_keep, design.labels)
        forced |= {DUMMY_LABEL, f"L1.{official_fit.label}"}
        fit, trace = stepwise_ols(
            design.y,
            design.x,
            design.labels,
            threshold=config.stepwise_threshold,
            force_keep=forced,
        )
        stages["stepwise"] = {
            "threshold": config.stepwise_threshold,
            "force_keep": sorted(forced),
            "trace": _table(
                ["step", "dropped", "p_value", "r_squared", "adj_r_squared"],
                [
                    [s.step, s.dropped_term, float(s.p_value),
                     float(s.r_squared), float(s.adjusted_r_squared)]
                    for s in trace.steps
                ],
            ),
            "regression": _table(
                ["term", "coef", "std_err", "t", "p", "ci_low", "ci_high"],
                [list(row) for row in fit.summary_rows()],
            ),
            "r_squared": float(fit.r_squared),
            "adj_r_squared": float(fit.adjusted_r_squared),
            "ss": float(fit.root_residual),
            "n": fit.n,
            "k": fit.k,
        }
        return fit

    fit = run_stage("stepwise", stage_stepwise)

    # -- diagnostics -----------------------------------------------------------
    def stage_diagnostics():
        try:
            white = white_test(fit)
            white_cross = True
        except DataError:
            # sample too small for the full cross-product design
            white = white_test(fit, cross_terms=False)
            white_cross = False
        n = len(fit.residuals)
        max_lag = config.bartlett_max_lag
        if max_lag == AUTO:
            max_lag = min(40, (n - 1) // 2)
        bart = bartlett_acf_check(fit.residuals, max_lag)
        coint = engle_granger(fit.residuals, lags=config.engle_granger_lags)
        stages["diagnostics"] = {
            "white": {
                "chi2": float(white.chi2),
                "df": white.df,
                "p": float(white.p_value),
                "cross_terms": white_cross,
                "dropped_aux_columns": len(white.dropped),
                "homoskedastic_at_5pct": white.p_value > 0.05,
            },
            "bartlett": {
                "max_lag": max_lag,
                "breaches": bart.breaches,
                "no_autocorrelation": bart.verdict,
                "acf": _table(
                    ["lag", "acf", "band", "within"],
                    [
                        [lag_, float(r), float(b), bool(w)]
                        for lag_, r, b, w in bart.rows
                    ],
                ),
            },
            "cointegration": {
                "statistic": float(coint.statistic),
                "p": float(coint.p_value),
                "critical_values": {
                    key: float(v) for key, v in coint.critical_values.items()
                },
                "lags": coint.lags_used,
                "cointegrated": bool(coint.cointegrated),
            },
        }

    run_stage("diagnostics", stage_diagnostics)

    # -- model assembly ----------------------------------------------------------
    def stage_model():
        forced = set(stages["stepwise"]["force_keep"])
        cmodel = fit_c3i(fit, design, pca, force_keep=forced)
        rows = [
            [name, float(cmodel.coefficient(name, 1)), float(cmodel.coefficient(name, 2))]
            for name in cmodel.term_names()
        ]
        stages["model"] = {
            "alpha": float(cmodel.alpha),
            "gamma0": float(cmodel.gamma0),
            "delta": float(cmodel.delta),
            "intercept_regime1": float(cmodel.constant(1)),
            "intercept_regime2": float(cmodel.constant(2)),
            "t0": cmodel.t0,
            "origin": str(cmodel.origin),
            "coefficients": _table(["term", "regime1", "regime2"], rows),
        }
        return cmodel

    cmodel = run_stage("model", stage_model)

    # -- influence ----------------------------------------------------------------
    def stage_influence():
        infl = topic_influence(cmodel)
        order_pre = np.argsort(-infl.pre_current, kind="stable")
        order_post = np.argsort(-infl.post_current, kind="stable")
        stages["influence"] = {
            "pre_constant": float(infl.pre_constant),
            "post_constant": float(infl.post_constant),
            "pre_break": _table(
                ["topic", "current", "previous"],
                [
                    [
                        infl.topic_labels[j],
                        float(infl.pre_current[j]),
                        float(infl.pre_previous[j]),
                    ]
                    for j in order_pre
                ],
            ),
            "post_break": _table(
                ["topic", "current", "previous"],
                [
                    [
                        infl.topic_labels[j],
                        float(infl.post_current[j]),
                        float(infl.post_previous[j]),
                    ]
                    for j in order_post
                ],
            ),
        }
        return infl

    influence = run_stage("influence", stage_influence)

    # -- polarity -----------------------------------------------------------------
    def stage_polarity():
        table = polarity_table(influence)
        rows = []
        for quadrant in table.QUADRANT_ORDER:
            for topic, b, c in table.quadrants[quadrant]:
                rows.append([quadrant, topic, float(b), float(c)])
        for topic, b, c in table.zeros:
            rows.append(["zero", topic, float(b), float(c)])
        stages["polarity"] = {
            "quadrants": _table(["quadrant", "topic", "current", "previous"], rows)
        }

    run_stage("polarity", stage_polarity)

    # -- fitted series ---------------------------------------------------------------
    def stage_fitted():
        fitted = fit.fitted
        rows = [
            [str(month), float(design.y[i]), float(fitted[i]),
             float(fit.residuals[i])]
            for i, month in enumerate(design.index)
        ]
        stages["fitted"] = {
            "series": _table(
                ["month", "official", "fitted", "residual"], rows
            )
        }

    run_stage("fitted", stage_fitted)

    # -- contribution ----------------------------------------------------------------
    def stage_contribution():
        contrib = trends_contribution(cmodel, topic_panel)
        rows = [
            [str(month), float(value)]
            for month, value in zip(contrib.index, contrib.values)
        ]
        stages["contribution"] = {
            "series": _table(["month", "contribution"], rows)
        }

    run_stage("contribution", stage_contribution)

    # -- holdout ---------------------------------------------------------------------
    if config.holdout_start is not None:

        def stage_holdout():
            cut = MonthIndex.parse(config.holdout_start)
            origin = cmodel.origin
            rows = []
            errors = []
            month = cut
            while month <= topic_full.end:
                r = topic_full.start.months_until(month)
                t = origin.months_until(month) + 1
                x_t = topic_full.values[r]
                x_prev = topic_full.values[r - 1] if r >= 1 else None
                x_prev2 = topic_full.values[r - 2] if r >= 2 else None
                cci_prev = float(official_full.values[r - 1])
                predicted = predict_c3i(
                    cmodel, x_t, x_prev, cci_prev, t, x_prev2=x_prev2
                )
                actual = float(official_full.values[r])
                rows.append([str(month), float(predicted), actual,
                             float(predicted - actual)])
                errors.append(predicted - actual)
                month = month.plus(1)
            stages["holdout"] = {
                "start": str(cut),
                "months": len(rows),
                "mae": float(np.mean(np.abs(errors))),
                "rmse": float(math.sqrt(np.mean(np.square(errors)))),
                "predictions": _table(
                    ["month", "predicted", "official", "error"], rows
                ),
            }

        run_stage("holdout", stage_holdout)

    return report
