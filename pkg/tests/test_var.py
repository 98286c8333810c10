import numpy as np
import pytest

from oracles import ols_oracle
from trendindex.errors import RankDeficiencyError
from trendindex.series import MonthIndex, Panel
from trendindex.var import ALL, granger_exclusion, var_fit


def make_panel(columns: dict):
    labels = tuple(columns)
    values = np.column_stack([columns[lab] for lab in labels])
    index = tuple(MonthIndex(2006, 1).plus(i) for i in range(values.shape[0]))
    return Panel(index, labels, values)


@pytest.fixture(scope="module")
def causal_system():
    # x drives y with one lag; y never enters x
    rng = np.random.default_rng(42)
    t = 200
    x = np.empty(t)
    y = np.empty(t)
    x[0] = rng.normal()
    y[0] = rng.normal()
    for s in range(1, t):
        x[s] = 0.5 * x[s - 1] + rng.normal()
        y[s] = 0.7 * y[s - 1] + 0.3 * x[s - 1] + rng.normal()
    return make_panel({"x": x, "y": y})


class TestVarFit:
    def test_recovers_coefficients(self, causal_system):
        fit = var_fit(causal_system, lag_order=1)
        eq = fit.equations["y"]
        for term, truth in (("L1.y", 0.7), ("L1.x", 0.3)):
            j = eq.term_labels.index(term)
            assert abs(eq.coefficients[j] - truth) < 3 * eq.standard_errors[j]

    def test_matches_normal_equations_oracle(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        values = causal_system.values
        y = values[2:, 1]
        rows = [
            [1.0, values[t - 1, 0], values[t - 1, 1], values[t - 2, 0],
             values[t - 2, 1]]
            for t in range(2, values.shape[0])
        ]
        beta, se, _, _ = ols_oracle(list(y), rows)
        eq = fit.equations["y"]
        order = ["const", "L1.x", "L1.y", "L2.x", "L2.y"]
        mine = [eq.coefficient(lbl) for lbl in order]
        assert mine == pytest.approx(beta, abs=1e-9)

    def test_reconstruction(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        for label in fit.variables:
            eq = fit.equations[label]
            y = causal_system.values[2:, causal_system.labels.index(label)]
            assert np.allclose(eq.fitted + eq.residuals, y, atol=1e-10)

    def test_equal_residual_lengths(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        lengths = {len(eq.residuals) for eq in fit.equations.values()}
        assert lengths == {fit.nobs}

    def test_constant_column_is_rank_error(self):
        rng = np.random.default_rng(0)
        panel = make_panel({"a": rng.normal(size=50), "flat": np.full(50, 3.0)})
        with pytest.raises(RankDeficiencyError):
            var_fit(panel, lag_order=1)

    def test_z_table_schema(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        rows = fit.table_rows()
        assert len(rows) == 2 * 5
        for eq, term, coef, se, z, p in rows:
            assert se >= 0.0 and 0.0 <= p <= 1.0
            if se > 0:
                assert z == pytest.approx(coef / se, abs=1e-12)


class TestGranger:
    def test_true_direction_rejects(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        result = granger_exclusion(fit, "y", "x")
        assert result.p_value < 0.01
        assert result.df == 2

    def test_null_direction_does_not_reject(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        result = granger_exclusion(fit, "x", "y")
        assert result.p_value > 0.05

    def test_df_bookkeeping(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        assert granger_exclusion(fit, "y", "x").df == 2
        assert granger_exclusion(fit, "y", ALL).df == 2

    def test_all_exclusion_df_many_variables(self):
        rng = np.random.default_rng(7)
        cols = {f"v{j}": rng.normal(size=120) for j in range(9)}
        cols["target"] = rng.normal(size=120)
        fit = var_fit(make_panel(cols), lag_order=2)
        result = granger_exclusion(fit, "target", ALL)
        assert result.df == 2 * 9

    def test_invariant_under_rescaling(self, causal_system):
        fit = var_fit(causal_system, lag_order=2)
        base = granger_exclusion(fit, "y", "x")
        scaled_panel = make_panel(
            {
                "x": 1000.0 * causal_system.values[:, 0],
                "y": causal_system.values[:, 1],
            }
        )
        scaled = granger_exclusion(var_fit(scaled_panel, 2), "y", "x")
        assert scaled.chi2 == pytest.approx(base.chi2, abs=1e-8 * base.chi2)

    def test_unknown_labels(self, causal_system):
        fit = var_fit(causal_system, lag_order=1)
        with pytest.raises(KeyError):
            granger_exclusion(fit, "nope", "x")
        with pytest.raises(ValueError):
            granger_exclusion(fit, "y", "y")
