"""Piecewise confidence-index model: structural-break testing, the
dummy-interaction design, backward stepwise selection, regression
diagnostics, and back-projection of the fitted model onto raw topics.

The fitted object is a two-regime affine model: before the break month
the index is alpha plus component terms; after it, every coefficient may
shift by its interaction term, while the lagged official index enters
both regimes with the same weight.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dist import chi_square, f_dist, tail_probability
from .errors import ConfigError, DataError, NumericalError
from .ols import INTERCEPT_LABEL, OlsFit, ols_fit
from .pca import ComponentSet, PcaModel, pca_back_project
from .series import MonthIndex, Panel, TimeSeries, align, lag
from .unitroot import a_transform, running_sum

DUMMY_LABEL = "dum"
INTERACTION_PREFIX = "du_"

PAIRWISE = "pairwise"
CUMULATIVE = "cumulative"


# ---------------------------------------------------------------------------
# break design and structural-change tests


@dataclass(frozen=True)
class BreakDesign:
    """Step dummy: 0 through month position t0 (1-based), 1 afterwards."""

    t0: int
    origin: MonthIndex  # month at position 1

    def position(self, month: MonthIndex) -> int:
        return self.origin.months_until(month) + 1

    def dummy_at(self, month: MonthIndex) -> float:
        return 0.0 if self.position(month) <= self.t0 else 1.0

    def dummy_for(self, months: Sequence[MonthIndex]) -> np.ndarray:
        return np.array([self.dummy_at(m) for m in months])


@dataclass(frozen=True)
class BreakTestResult:
    """Chow, Wald, and likelihood-ratio tests of a known break point."""

    chow_f: float
    chow_df: tuple
    wald: float
    lr: float
    df_chi: int
    p_values: tuple  # (chow, wald, lr)


def structural_break_tests(y, x, split: int, intercept: bool = True) -> BreakTestResult:
    """Test for a parameter change after the first ``split`` rows.

    Chow F compares the pooled residual sum against the two split-sample
    fits with df (k, n - 2k); the Wald and likelihood-ratio forms test the
    same k interaction restrictions against chi-square(k).
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    n = len(y)
    k = x.shape[1] + (1 if intercept else 0)
    n2 = n - split
    if split <= k or n2 <= k:
        raise DataError(
            f"sub-sample too small for break tests (split {split}/{n2} rows, "
            f"{k} parameters)"
        )
    pooled = ols_fit(y, x, intercept=intercept)
    first = ols_fit(y[:split], x[:split], intercept=intercept)
    second = ols_fit(y[split:], x[split:], intercept=intercept)
    ssr_r = pooled.residual_sum_sq
    ssr_u = first.residual_sum_sq + second.residual_sum_sq
    if ssr_u <= 0.0:
        raise NumericalError("split regressions fit exactly; break tests undefined")
    gap = max(0.0, ssr_r - ssr_u)
    df2 = n - 2 * k
    chow = (gap / k) / (ssr_u / df2)
    wald = gap / (ssr_u / df2)
    lr = n * math.log(ssr_r / ssr_u)
    return BreakTestResult(
        chow_f=chow,
        chow_df=(k, df2),
        wald=wald,
        lr=lr,
        df_chi=k,
        p_values=(
            tail_probability(f_dist(k, df2), chow),
            tail_probability(chi_square(k), wald),
            tail_probability(chi_square(k), lr),
        ),
    )


def find_break_by_chow(y, x, candidates: Iterable[int] | None = None,
                       intercept: bool = True):
    """Grid search for the split maximizing the Chow F statistic.

    Returns (best_split, [(split, chow_f), ...]). Default candidates trim
    15% of the sample at each end and keep both sub-samples estimable.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    n = len(y)
    k = x.shape[1] + (1 if intercept else 0)
    if candidates is None:
        lo = max(k + 1, int(math.ceil(0.15 * n)))
        hi = min(n - k - 1, int(math.floor(0.85 * n)))
        candidates = range(lo, hi + 1)
    rows = []
    best = None
    for split in candidates:
        result = structural_break_tests(y, x, split, intercept=intercept)
        rows.append((split, result.chow_f))
        if best is None or result.chow_f > best[1]:
            best = (split, result.chow_f)
    if best is None:
        raise DataError("no feasible break candidates")
    return best[0], rows


# ---------------------------------------------------------------------------
# transitional design


@dataclass(frozen=True)
class TermDef:
    """How a design term maps back to component space.

    ``component`` is 1-based; ``lag`` the offset in months; ``summed``
    marks pairwise-sum terms, whose value at t is C(t) + C(t-1).
    """

    name: str
    component: int
    lag: int
    summed: bool


@dataclass(frozen=True, eq=False)
class TransitionalDesign:
    """Regression-ready target, design matrix, and term bookkeeping."""

    y: np.ndarray
    x: np.ndarray
    labels: tuple  # design columns, intercept excluded
    index: tuple  # MonthIndex per row
    term_defs: dict  # name -> TermDef, component-backed terms only
    official_label: str
    break_design: BreakDesign

    @property
    def dummy(self) -> np.ndarray:
        return self.x[:, self.labels.index(DUMMY_LABEL)]

    @property
    def first_regime_rows(self) -> int:
        return int(np.sum(self.dummy == 0.0))


def _components_panel(components) -> Panel:
    panel = components.panel if isinstance(components, ComponentSet) else components
    expected = tuple(f"C{i}" for i in range(1, panel.n_cols + 1))
    if panel.labels != expected:
        raise DataError(
            f"component columns must be labeled C1..C{panel.n_cols} in order"
        )
    return panel


def component_terms(
    components,
    summed: Iterable[int] = (),
    summed_mode: str = PAIRWISE,
):
    """Base term series for the model: each component as-is, or its
    pairwise sum for the indices in ``summed``.

    ``components`` is a ComponentSet or a bare panel with C1..Ck columns.
    Returns (term_defs, series) dicts keyed by term name ("C3", "A5", ...).
    """
    if summed_mode not in (PAIRWISE, CUMULATIVE):
        raise ValueError(f"unknown summed_mode {summed_mode!r}")
    panel = _components_panel(components)
    summed = set(summed)
    k = panel.n_cols
    for i in summed:
        if not 1 <= i <= k:
            raise ValueError(f"summed index {i} outside 1..{k}")
    term_defs: dict = {}
    base_series: dict = {}
    for i in range(1, k + 1):
        comp = panel.column(f"C{i}")
        if i in summed:
            name = f"A{i}"
            series = (
                a_transform(comp) if summed_mode == PAIRWISE else running_sum(comp)
            )
            term_defs[name] = TermDef(name, i, 0, summed_mode == PAIRWISE)
        else:
            name = f"C{i}"
            series = comp
            term_defs[name] = TermDef(name, i, 0, False)
        base_series[name] = series.rename(name)
    return term_defs, base_series


def build_transitional_design(
    components,
    official: TimeSeries,
    break_design: BreakDesign,
    summed: Iterable[int] = (),
    lag_terms: Iterable[str] = (),
    summed_mode: str = PAIRWISE,
) -> TransitionalDesign:
    """Assemble the two-regime interaction design.

    Columns, in order: dummy; one column per component term (pairwise-sum
    form for indices in ``summed``); a break interaction for each; lag-1
    columns for the names in ``lag_terms`` and their interactions; finally
    the lagged official index, which carries no interaction. The intercept
    is added by the fitting routine.
    """
    term_defs, base_series = component_terms(components, summed, summed_mode)

    lag_series: dict = {}
    for name in lag_terms:
        if name not in base_series:
            raise ValueError(f"unknown lag term {name!r}")
        td = term_defs[name]
        lag_name = f"L1.{name}"
        lag_series[lag_name] = lag(base_series[name], 1).rename(lag_name)
        term_defs[lag_name] = TermDef(lag_name, td.component, 1, td.summed)

    official_lag_label = f"L1.{official.label}"
    official_lag = lag(official, 1).rename(official_lag_label)

    panel = align(
        [official]
        + list(base_series.values())
        + list(lag_series.values())
        + [official_lag]
    )
    index = panel.index
    y = panel.values[:, 0]
    dummy = break_design.dummy_for(index)

    cols = [dummy]
    labels = [DUMMY_LABEL]
    base_names = list(base_series)
    lag_names = list(lag_series)
    for name in base_names:
        cols.append(panel.values[:, panel.labels.index(name)])
        labels.append(name)
    for name in base_names:
        cols.append(dummy * panel.values[:, panel.labels.index(name)])
        labels.append(INTERACTION_PREFIX + name)
    for name in lag_names:
        cols.append(panel.values[:, panel.labels.index(name)])
        labels.append(name)
    for name in lag_names:
        cols.append(dummy * panel.values[:, panel.labels.index(name)])
        labels.append(INTERACTION_PREFIX + name)
    cols.append(panel.values[:, panel.labels.index(official_lag_label)])
    labels.append(official_lag_label)

    return TransitionalDesign(
        y=y,
        x=np.column_stack(cols),
        labels=tuple(labels),
        index=index,
        term_defs=term_defs,
        official_label=official.label,
        break_design=break_design,
    )


# ---------------------------------------------------------------------------
# stepwise selection


@dataclass(frozen=True)
class StepwiseStep:
    step: int
    dropped_term: str
    p_value: float  # p of the dropped term at drop time
    r_squared: float  # of the refit after the drop
    adjusted_r_squared: float


@dataclass(frozen=True)
class StepwiseTrace:
    steps: tuple

    def dropped(self) -> tuple:
        return tuple(s.dropped_term for s in self.steps)


def resolve_force_keep(force_keep: Iterable[str], labels: Sequence[str]) -> set:
    """Map configured force-keep names onto actual design labels.

    A forced component may appear under its pairwise-sum name (or vice
    versa), so "C5" resolves to "A5" when that is the term in the design.
    """
    resolved = set()
    for name in force_keep:
        if name in labels:
            resolved.add(name)
            continue
        alt = None
        if name.startswith("C"):
            alt = "A" + name[1:]
        elif name.startswith("A"):
            alt = "C" + name[1:]
        if alt is not None and alt in labels:
            resolved.add(alt)
        else:
            raise ConfigError(f"force_keep term {name!r} not in the design")
    return resolved


def stepwise_ols(
    y,
    x,
    labels: Sequence[str],
    threshold: float = 0.1,
    force_keep: Iterable[str] = (),
    intercept: bool = True,
):
    """Backward elimination: repeatedly drop the least significant term.

    Each iteration removes the single term with the largest p-value above
    ``threshold`` (never the intercept or a force-kept term) and refits,
    until every remaining term passes. Returns (final fit, trace).
    """
    x = np.asarray(x, dtype=float)
    work_labels = list(labels)
    force = set(force_keep)
    fit = ols_fit(y, x, work_labels, intercept=intercept)
    steps = []
    while True:
        worst_j = None
        worst_p = -1.0
        for j, label in enumerate(work_labels):
            if label in force:
                continue
            p = fit.p_value(label)
            if p > worst_p:
                worst_p, worst_j = p, j
        if worst_j is None or worst_p <= threshold:
            break
        dropped = work_labels[worst_j]
        if x.shape[1] == 1:
            raise NumericalError(
                "stepwise eliminated every term (empty model)"
            )
        x = np.delete(x, worst_j, axis=1)
        work_labels.pop(worst_j)
        fit = ols_fit(y, x, work_labels, intercept=intercept)
        steps.append(
            StepwiseStep(
                step=len(steps) + 1,
                dropped_term=dropped,
                p_value=worst_p,
                r_squared=fit.r_squared,
                adjusted_r_squared=fit.adjusted_r_squared,
            )
        )
    return fit, StepwiseTrace(tuple(steps))


# ---------------------------------------------------------------------------
# diagnostics


@dataclass(frozen=True)
class WhiteResult:
    chi2: float
    df: int
    p_value: float
    dropped: tuple  # auxiliary columns removed as collinear


def white_test(fit: OlsFit, x=None, cross_terms: bool = True) -> WhiteResult:
    """White heteroskedasticity test: n R-squared from regressing squared
    residuals on regressors, their squares, and (optionally) cross
    products.

    Duplicate auxiliary columns (dummy powers, dummy-interaction products)
    are removed; remaining collinear columns are dropped with a warning
    and the degrees of freedom adjusted. ``cross_terms=False`` gives the
    squares-only variant for samples too small to support the full
    auxiliary design.
    """
    if x is None:
        x = fit.design[:, 1:] if fit.has_intercept else fit.design
        base_labels = list(fit.term_labels[1:] if fit.has_intercept else fit.term_labels)
    else:
        x = np.asarray(x, dtype=float)
        base_labels = [f"x{j + 1}" for j in range(x.shape[1])]
    n, m = x.shape

    candidates = []
    for j in range(m):
        candidates.append((base_labels[j], x[:, j]))
    for j in range(m):
        candidates.append((f"{base_labels[j]}^2", x[:, j] * x[:, j]))
    if cross_terms:
        for i in range(m):
            for j in range(i + 1, m):
                candidates.append(
                    (f"{base_labels[i]}*{base_labels[j]}", x[:, i] * x[:, j])
                )

    ones = np.ones(n)
    kept: list = []
    dropped_dup = 0
    for label, col in candidates:
        if np.array_equal(col, ones):
            dropped_dup += 1
            continue
        if any(np.array_equal(col, kcol) for _, kcol in kept):
            dropped_dup += 1
            continue
        kept.append((label, col))

    # collinearity screen: Gram-Schmidt against the intercept + kept set
    basis = [ones / math.sqrt(n)]
    final = []
    dropped_collinear = []
    for label, col in kept:
        resid = col.astype(float)
        for q in basis:
            resid = resid - (q @ resid) * q
        norm2 = float(resid @ resid)
        if norm2 <= 1e-10 * max(1.0, float(col @ col)):
            dropped_collinear.append(label)
            continue
        basis.append(resid / math.sqrt(norm2))
        final.append((label, col))
    if dropped_collinear:
        warnings.warn(
            "white_test dropped collinear auxiliary columns: "
            + ", ".join(dropped_collinear),
            stacklevel=2,
        )

    df = len(final)
    if n <= df + 1:
        raise DataError(
            f"auxiliary design too large for White test (n={n}, df={df})"
        )
    aux = np.column_stack([col for _, col in final])
    e2 = fit.residuals**2
    aux_fit = ols_fit(e2, aux, intercept=True)
    stat = n * aux_fit.r_squared
    return WhiteResult(
        chi2=float(stat),
        df=df,
        p_value=tail_probability(chi_square(df), stat),
        dropped=tuple(dropped_collinear),
    )


@dataclass(frozen=True)
class BartlettResult:
    """Sample autocorrelations with Bartlett 95% bands (lag 0 excluded)."""

    rows: tuple  # (lag, acf, band, within)
    breaches: int
    verdict: bool  # True = no autocorrelation evidence

    @property
    def max_lag(self) -> int:
        return len(self.rows)


def bartlett_acf_check(residuals, max_lag: int) -> BartlettResult:
    """Autocorrelation check: each |acf(k)| against its Bartlett band
    1.96 * sqrt((1 + 2 sum_{j<k} acf(j)^2) / T).

    Verdict is "no autocorrelation" when at most 5% of lags breach.
    """
    e = np.asarray(residuals, dtype=float)
    t = len(e)
    if max_lag >= t / 2:
        raise DataError(f"max_lag must be below T/2 (T={t}, max_lag={max_lag})")
    if max_lag < 1:
        raise ValueError("max_lag must be at least 1")
    centered = e - e.mean()
    denom = float(centered @ centered)
    if denom == 0.0:
        raise DataError("residuals are constant; autocorrelation undefined")
    rows = []
    cum_r2 = 0.0
    breaches = 0
    for k in range(1, max_lag + 1):
        r = float(centered[:-k] @ centered[k:]) / denom
        band = 1.96 * math.sqrt((1.0 + 2.0 * cum_r2) / t)
        within = abs(r) <= band
        if not within:
            breaches += 1
        rows.append((k, r, band, within))
        cum_r2 += r * r
    return BartlettResult(
        rows=tuple(rows),
        breaches=breaches,
        verdict=breaches <= 0.05 * max_lag,
    )


# ---------------------------------------------------------------------------
# the fitted piecewise model


@dataclass(frozen=True, eq=False)
class ConfidenceModel:
    """Two-regime affine index model in component space.

    Regime 1 (month position t <= t0) uses ``alpha`` and the base
    coefficients; regime 2 uses ``alpha + gamma0`` and base-plus-shift
    coefficients. The lagged official index enters both regimes with
    weight ``delta``.
    """

    alpha: float
    gamma0: float
    delta: float
    betas: dict  # term name -> base coefficient
    gammas: dict  # term name -> regime-2 shift
    t0: int
    origin: MonthIndex
    retained_terms: frozenset
    term_defs: dict  # term name -> TermDef
    official_label: str
    pca: PcaModel | None = field(repr=False, default=None)
    force_keep: frozenset = frozenset()

    def regime(self, t: int) -> int:
        if t < 1:
            raise ValueError("month position must be >= 1")
        return 1 if t <= self.t0 else 2

    def constant(self, regime: int) -> float:
        return self.alpha if regime == 1 else self.alpha + self.gamma0

    def term_names(self) -> tuple:
        return tuple(sorted(set(self.betas) | set(self.gammas)))

    def coefficient(self, name: str, regime: int) -> float:
        coef = self.betas.get(name, 0.0)
        if regime == 2:
            coef += self.gammas.get(name, 0.0)
        return coef


def fit_c3i(
    fit: OlsFit,
    design: TransitionalDesign,
    pca: PcaModel | None = None,
    force_keep: Iterable[str] = (),
) -> ConfidenceModel:
    """Assemble the piecewise model from a fitted transitional regression."""
    labels = set(fit.term_labels)
    official_lag = f"L1.{design.official_label}"
    for required in (INTERCEPT_LABEL, DUMMY_LABEL, official_lag):
        if required not in labels:
            raise ValueError(f"fitted model is missing the {required!r} term")
    betas: dict = {}
    gammas: dict = {}
    for label in fit.term_labels:
        if label in (INTERCEPT_LABEL, DUMMY_LABEL, official_lag):
            continue
        if label.startswith(INTERACTION_PREFIX):
            base = label[len(INTERACTION_PREFIX):]
            if base not in design.term_defs:
                raise ValueError(f"interaction {label!r} has no known base term")
            gammas[base] = fit.coefficient(label)
        elif label in design.term_defs:
            betas[label] = fit.coefficient(label)
        else:
            raise ValueError(f"term {label!r} is not expressible in component space")
    return ConfidenceModel(
        alpha=fit.coefficient(INTERCEPT_LABEL),
        gamma0=fit.coefficient(DUMMY_LABEL),
        delta=fit.coefficient(official_lag),
        betas=betas,
        gammas=gammas,
        t0=design.break_design.t0,
        origin=design.break_design.origin,
        retained_terms=frozenset(
            label for label in fit.term_labels if label != INTERCEPT_LABEL
        ),
        term_defs=dict(design.term_defs),
        official_label=design.official_label,
        pca=pca,
        force_keep=frozenset(force_keep),
    )


# ---------------------------------------------------------------------------
# topic-space influence and prediction


@dataclass(frozen=True, eq=False)
class TopicInfluence:
    """The fitted model expressed as weights on raw topic values.

    ``pre_*`` vectors apply before the break, ``post_*`` after; the
    ``previous``/``prev2`` vectors weight the topic rows one and two
    months back (nonzero only when lagged or pairwise-sum terms were
    retained). Constants fold the regime intercept together with the
    standardization offsets.
    """

    topic_labels: tuple
    pre_current: np.ndarray
    pre_previous: np.ndarray
    pre_prev2: np.ndarray
    pre_constant: float
    post_current: np.ndarray
    post_previous: np.ndarray
    post_prev2: np.ndarray
    post_constant: float

    def vectors(self, regime: int) -> tuple:
        if regime == 1:
            return (self.pre_current, self.pre_previous, self.pre_prev2)
        return (self.post_current, self.post_previous, self.post_prev2)

    def constant(self, regime: int) -> float:
        return self.pre_constant if regime == 1 else self.post_constant

    def max_offset(self, regime: int) -> int:
        need = 0
        for offset, vec in enumerate(self.vectors(regime)):
            if np.any(vec != 0.0):
                need = offset
        return need


def topic_influence(model: ConfidenceModel, pca: PcaModel | None = None) -> TopicInfluence:
    """Back-project the component-space model onto raw topic weights."""
    pca = pca if pca is not None else model.pca
    if pca is None:
        raise ValueError("a PCA model is required for back-projection")
    n = pca.n_topics
    vectors = {1: [np.zeros(n) for _ in range(3)], 2: [np.zeros(n) for _ in range(3)]}
    constants = {1: model.alpha, 2: model.alpha + model.gamma0}
    for regime in (1, 2):
        offset_maps: list = [dict(), dict(), dict()]
        for name in model.term_names():
            td = model.term_defs.get(name)
            if td is None:
                raise ValueError(
                    f"term {name!r} is not expressible in component space"
                )
            coef = model.coefficient(name, regime)
            if coef == 0.0:
                continue
            offsets = (td.lag, td.lag + 1) if td.summed else (td.lag,)
            for offset in offsets:
                if offset > 2:
                    raise ValueError(f"term {name!r} needs topics before t-2")
                offset_maps[offset][td.component] = (
                    offset_maps[offset].get(td.component, 0.0) + coef
                )
        for offset, cmap in enumerate(offset_maps):
            if not cmap:
                continue
            vec, const = pca_back_project(pca, cmap)
            vectors[regime][offset] = vec
            constants[regime] += const
    return TopicInfluence(
        topic_labels=pca.topic_labels,
        pre_current=vectors[1][0],
        pre_previous=vectors[1][1],
        pre_prev2=vectors[1][2],
        pre_constant=constants[1],
        post_current=vectors[2][0],
        post_previous=vectors[2][1],
        post_prev2=vectors[2][2],
        post_constant=constants[2],
    )


def evaluate_terms(
    model: ConfidenceModel,
    term_values: Mapping[str, float],
    official_prev: float,
    t: int,
) -> float:
    """Evaluate the model from already-computed term values."""
    regime = model.regime(t)
    linear = 0.0
    for name in model.term_names():
        coef = model.coefficient(name, regime)
        if name not in term_values:
            raise KeyError(f"missing value for term {name!r}")
        linear += coef * term_values[name]
    return model.constant(regime) + linear + model.delta * official_prev


def _project_row(pca: PcaModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (pca.n_topics,):
        raise ValueError(
            f"topic vector has length {x.shape}, expected {pca.n_topics}"
        )
    return ((x - pca.means) / pca.sds) @ pca.loadings


def predict_c3i(
    model: ConfidenceModel,
    x_t,
    x_prev,
    cci_prev: float,
    t: int,
    x_prev2=None,
    path: str = "components",
) -> float:
    """Predict the index at month position t from raw topic vectors.

    ``path="components"`` projects the topics and evaluates the
    component-space form; ``path="topics"`` evaluates the back-projected
    topic-space form. The two agree to floating-point noise.
    ``x_prev`` (and ``x_prev2``) are only required when the active regime
    retains lagged or pairwise-sum terms reaching that far back.
    """
    if model.pca is None:
        raise ValueError("prediction from topics requires the fitted PCA model")
    regime = model.regime(t)
    if path == "topics":
        influence = topic_influence(model)
        need = influence.max_offset(regime)
        histories = (x_t, x_prev, x_prev2)
        value = influence.constant(regime)
        for offset in range(need + 1):
            if histories[offset] is None:
                raise ValueError(f"topic vector at t-{offset} required")
            row = np.asarray(histories[offset], dtype=float)
            if row.shape != (model.pca.n_topics,):
                raise ValueError("topic vector length mismatch")
            value += float(row @ influence.vectors(regime)[offset])
        return value + model.delta * cci_prev
    if path != "components":
        raise ValueError(f"unknown path {path!r}")

    comps: dict = {}

    def comp_at(offset: int) -> np.ndarray:
        if offset not in comps:
            row = (x_t, x_prev, x_prev2)[offset]
            if row is None:
                raise ValueError(f"topic vector at t-{offset} required")
            comps[offset] = _project_row(model.pca, row)
        return comps[offset]

    term_values = {}
    for name in model.term_names():
        if model.coefficient(name, regime) == 0.0:
            term_values[name] = 0.0
            continue
        td = model.term_defs[name]
        value = comp_at(td.lag)[td.component - 1]
        if td.summed:
            value += comp_at(td.lag + 1)[td.component - 1]
        term_values[name] = float(value)
    return evaluate_terms(model, term_values, cci_prev, t)


def trends_contribution(model: ConfidenceModel, panel: Panel) -> TimeSeries:
    """The pure search-volume component of the fitted index.

    Per month: the topic-space linear form of the active regime, i.e. the
    fitted value minus the regime constant and minus delta times the
    lagged official index. Leading months whose regime needs unavailable
    topic history are skipped.
    """
    influence = topic_influence(model)
    if panel.labels != influence.topic_labels:
        raise DataError("panel columns do not match the model's topics")
    values = []
    start_row = None
    for r, month in enumerate(panel.index):
        t = model.origin.months_until(month) + 1
        if t < 1:
            continue
        regime = model.regime(t)
        need = influence.max_offset(regime)
        if r < need:
            continue
        if start_row is None:
            start_row = r
        total = 0.0
        for offset in range(need + 1):
            total += float(
                panel.values[r - offset] @ influence.vectors(regime)[offset]
            )
        values.append(total)
    if start_row is None:
        raise DataError("panel has no rows with enough history for the model")
    return TimeSeries(
        "trends_contribution", "monthly", panel.index[start_row], np.array(values)
    )


# ---------------------------------------------------------------------------
# polarity classification


@dataclass(frozen=True)
class PolarityTable:
    """Topics bucketed by the signs of their current/previous influence
    after the break; zero coefficients sit in their own bucket."""

    quadrants: dict  # name -> tuple of (topic, current, previous)
    zeros: tuple

    QUADRANT_ORDER = ("pos_pos", "pos_neg", "neg_neg", "neg_pos")


def polarity_table(influence: TopicInfluence) -> PolarityTable:
    """Partition topics by sign of (post-break current, previous) weights,
    each quadrant sorted by |current| descending."""
    buckets: dict = {name: [] for name in PolarityTable.QUADRANT_ORDER}
    zeros = []
    for j, topic in enumerate(influence.topic_labels):
        b = float(influence.post_current[j])
        c = float(influence.post_previous[j])
        if b == 0.0 or c == 0.0:
            zeros.append((topic, b, c))
            continue
        if b > 0:
            name = "pos_pos" if c > 0 else "pos_neg"
        else:
            name = "neg_pos" if c > 0 else "neg_neg"
        buckets[name].append((topic, b, c))
    for name in buckets:
        buckets[name].sort(key=lambda row: (-abs(row[1]), row[0]))
    return PolarityTable(
        quadrants={name: tuple(rows) for name, rows in buckets.items()},
        zeros=tuple(zeros),
    )
