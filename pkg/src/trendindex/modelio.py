"""JSON (de)serialization for fitted PCA and confidence models.

File schemas are documented in docs/formats.md; both carry a schema tag
so future revisions can stay readable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DataError
from .model import ConfidenceModel, TermDef
from .pca import PcaModel
from .series import MonthIndex

PCA_SCHEMA = "trendindex.pca/1"
MODEL_SCHEMA = "trendindex.model/1"


def pca_to_dict(model: PcaModel) -> dict:
    return {
        "schema": PCA_SCHEMA,
        "topic_labels": list(model.topic_labels),
        "means": model.means.tolist(),
        "sds": model.sds.tolist(),
        "loadings": model.loadings.tolist(),
        "eigenvalues": model.eigenvalues.tolist(),
        "proportions": model.proportions.tolist(),
        "cumulative": model.cumulative.tolist(),
    }


def pca_from_dict(data: dict) -> PcaModel:
    if data.get("schema") != PCA_SCHEMA:
        raise DataError(f"unexpected PCA schema {data.get('schema')!r}")
    return PcaModel(
        means=np.array(data["means"], dtype=float),
        sds=np.array(data["sds"], dtype=float),
        loadings=np.array(data["loadings"], dtype=float),
        eigenvalues=np.array(data["eigenvalues"], dtype=float),
        proportions=np.array(data["proportions"], dtype=float),
        cumulative=np.array(data["cumulative"], dtype=float),
        topic_labels=tuple(data["topic_labels"]),
    )


def model_to_dict(model: ConfidenceModel) -> dict:
    out = {
        "schema": MODEL_SCHEMA,
        "alpha": model.alpha,
        "gamma0": model.gamma0,
        "delta": model.delta,
        "betas": {k: model.betas[k] for k in sorted(model.betas)},
        "gammas": {k: model.gammas[k] for k in sorted(model.gammas)},
        "t0": model.t0,
        "origin": str(model.origin),
        "official_label": model.official_label,
        "retained_terms": sorted(model.retained_terms),
        "force_keep": sorted(model.force_keep),
        "term_defs": {
            name: {
                "component": td.component,
                "lag": td.lag,
                "summed": td.summed,
            }
            for name, td in sorted(model.term_defs.items())
        },
    }
    if model.pca is not None:
        out["pca"] = pca_to_dict(model.pca)
    return out


def model_from_dict(data: dict) -> ConfidenceModel:
    if data.get("schema") != MODEL_SCHEMA:
        raise DataError(f"unexpected model schema {data.get('schema')!r}")
    term_defs = {
        name: TermDef(name, td["component"], td["lag"], td["summed"])
        for name, td in data["term_defs"].items()
    }
    pca = pca_from_dict(data["pca"]) if "pca" in data else None
    return ConfidenceModel(
        alpha=float(data["alpha"]),
        gamma0=float(data["gamma0"]),
        delta=float(data["delta"]),
        betas={k: float(v) for k, v in data["betas"].items()},
        gammas={k: float(v) for k, v in data["gammas"].items()},
        t0=int(data["t0"]),
        origin=MonthIndex.parse(data["origin"]),
        retained_terms=frozenset(data["retained_terms"]),
        term_defs=term_defs,
        official_label=data["official_label"],
        pca=pca,
        force_keep=frozenset(data.get("force_keep", ())),
    )


def save_model(model: ConfidenceModel, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8"
    )


def load_model(path) -> ConfidenceModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise DataError(f"cannot load model from {path}: {err}") from None
    return model_from_dict(data)


def save_pca(model: PcaModel, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(pca_to_dict(model), indent=2) + "\n", encoding="utf-8"
    )


def load_pca(path) -> PcaModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise DataError(f"cannot load PCA model from {path}: {err}") from None
    return pca_from_dict(data)
