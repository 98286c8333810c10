"""Principal component analysis of the standardized topic panel.

The decomposition runs on the sample correlation matrix (search-volume
series are each normalized to their own 0-100 scale, so covariance PCA
would be scale-dependent). Eigenpairs come from the cyclic Jacobi kernel;
eigenvector signs are fixed so each column's largest-magnitude entry is
positive, which makes downstream regression coefficients reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .errors import DataError, NumericalError, RankDeficiencyError
from .series import Panel, standardize


def component_label(i: int) -> str:
    return f"C{i}"


@dataclass(frozen=True, eq=False)
class PcaModel:
    """Standardization parameters plus the retained eigenstructure."""

    means: np.ndarray
    sds: np.ndarray
    loadings: np.ndarray  # N x k, columns are unit eigenvectors
    eigenvalues: np.ndarray  # k, descending
    proportions: np.ndarray  # eigenvalue / N
    cumulative: np.ndarray
    topic_labels: tuple

    @property
    def n_topics(self) -> int:
        return self.loadings.shape[0]

    @property
    def n_components(self) -> int:
        return self.loadings.shape[1]

    @property
    def component_labels(self) -> tuple:
        return tuple(component_label(i + 1) for i in range(self.n_components))


@dataclass(frozen=True, eq=False)
class ComponentSet:
    """Projected component series sharing the source panel's month index."""

    panel: Panel
    source: PcaModel

    @property
    def labels(self) -> tuple:
        return self.panel.labels

    def series(self, label: str):
        return self.panel.column(label)


def correlation_matrix(panel: Panel) -> np.ndarray:
    z, _, _ = standardize(panel)
    return (z.values.T @ z.values) / (panel.n_rows - 1)


def pca_fit(panel: Panel, k: int) -> PcaModel:
    """Correlation-matrix PCA retaining the first k components."""
    n = panel.n_cols
    if panel.n_rows < 3:
        raise DataError("PCA needs at least 3 observations")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    z, means, sds = standardize(panel)
    corr = (z.values.T @ z.values) / (panel.n_rows - 1)
    eigvals, eigvecs = kernels.jacobi_eigh(corr)
    eigvals = np.maximum(eigvals, 0.0)

    loadings = eigvecs[:, :k].copy()
    for j in range(k):
        pivot = int(np.argmax(np.abs(loadings[:, j])))
        if loadings[pivot, j] < 0.0:
            loadings[:, j] = -loadings[:, j]

    proportions = eigvals[:k] / n
    return PcaModel(
        means=means,
        sds=sds,
        loadings=loadings,
        eigenvalues=eigvals[:k].copy(),
        proportions=proportions,
        cumulative=np.cumsum(proportions),
        topic_labels=panel.labels,
    )


def pca_project(model: PcaModel, panel: Panel) -> ComponentSet:
    """Standardize with the model's parameters and dot with each loading."""
    if panel.labels != model.topic_labels:
        missing = sorted(set(model.topic_labels) - set(panel.labels))
        extra = sorted(set(panel.labels) - set(model.topic_labels))
        raise DataError(
            "panel columns do not match the fitted topics "
            f"(missing: {missing}, unexpected: {extra})"
        )
    z = (panel.values - model.means) / model.sds
    comps = z @ model.loadings
    return ComponentSet(
        Panel(panel.index, model.component_labels, comps), model
    )


def _inverse_correlation(panel: Panel) -> np.ndarray:
    corr = correlation_matrix(panel)
    try:
        return kernels.spd_inverse(corr)
    except RankDeficiencyError as err:
        raise NumericalError(f"correlation matrix is singular ({err})") from None


def kmo_statistic(panel: Panel) -> float:
    """Kaiser-Meyer-Olkin sampling adequacy.

    Ratio of the summed squared correlations to the same sum plus summed
    squared partial (anti-image) correlations, off-diagonal entries only.
    """
    if panel.n_cols < 2:
        raise DataError("KMO needs at least 2 columns")
    corr = correlation_matrix(panel)
    off = ~np.eye(panel.n_cols, dtype=bool)
    if np.max(np.abs(corr[off])) < 1e-12:
        raise NumericalError("no common variance: all correlations are zero")
    inv = _inverse_correlation(panel)
    d = np.sqrt(np.diag(inv))
    partial = -inv / np.outer(d, d)
    r2 = float(np.sum(corr[off] ** 2))
    q2 = float(np.sum(partial[off] ** 2))
    return r2 / (r2 + q2)


def smc_vector(panel: Panel) -> np.ndarray:
    """Squared multiple correlation of each column on all the others."""
    inv = _inverse_correlation(panel)
    return 1.0 - 1.0 / np.diag(inv)


def pca_back_project(model: PcaModel, component_coeffs: Mapping[int, float]):
    """Express component-space coefficients as weights on raw topic values.

    Takes {component number (1-based) -> coefficient} and returns
    (weights, constant) such that, for a raw topic row x,
    ``x @ weights + constant`` equals the same combination of projected
    component values.
    """
    v = np.zeros(model.n_topics)
    for comp, coeff in component_coeffs.items():
        if not 1 <= comp <= model.n_components:
            raise ValueError(
                f"component {comp} outside model range 1..{model.n_components}"
            )
        v += coeff * model.loadings[:, comp - 1]
    v = v / model.sds
    constant = -float(v @ model.means)
    return v, constant
