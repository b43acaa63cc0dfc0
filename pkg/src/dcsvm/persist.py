"""Save and load trained models.

The on-disk format is a self-describing JSON document: a format tag, a
version number, a sha256 checksum of the canonical payload, and the
payload itself (dataset metadata, kernel, hyperparameters, every
binary classifier, the likelihood table, and the tree).  Numbers are
written with full repr precision, so a load(save(m)) round trip
reproduces predictions exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import FeatureScale
from .errors import ModelFormatError
from .kernels import KernelSpec
from .svm import BinarySvmModel, SvmHyperParams
from .table import AllPredictionsTable
from .tree import DcsvmModel, Inner, Leaf, Node

MODEL_FORMAT = "dcsvm-model"
MODEL_VERSION = 1


@dataclass
class ModelBundle:
    """A model plus the preprocessing needed to apply it to raw inputs."""

    model: DcsvmModel
    scaler: FeatureScale | None = None
    hp: SvmHyperParams | None = None
    dataset_name: str | None = None


def _tree_to_jsonable(node: Node):
    if isinstance(node, Leaf):
        return {"label": node.label}
    return {
        "pair": list(node.pair),
        "left": _tree_to_jsonable(node.left),
        "right": _tree_to_jsonable(node.right),
    }


def _tree_from_jsonable(obj) -> Node:
    if "label" in obj:
        return Leaf(int(obj["label"]))
    return Inner(
        (int(obj["pair"][0]), int(obj["pair"][1])),
        _tree_from_jsonable(obj["left"]),
        _tree_from_jsonable(obj["right"]),
    )


def _floats(a) -> list:
    return [float(v) for v in np.asarray(a, dtype=np.float64).ravel()]


def _matrix(a) -> list:
    return [[float(v) for v in row] for row in np.atleast_2d(np.asarray(a, dtype=np.float64))]


def _digest(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_model(bundle: ModelBundle | DcsvmModel, path) -> None:
    """Write a model bundle (or bare model) to `path`."""
    if isinstance(bundle, DcsvmModel):
        bundle = ModelBundle(bundle)
    model = bundle.model
    kernel = model.classifiers[model.table.rows[0]].kernel
    payload = {
        "meta": {
            "d": model.d,
            "k": len(model.labels),
            "labels": list(model.labels),
            "dataset": bundle.dataset_name,
            "scaling": None
            if bundle.scaler is None
            else {"lo": _floats(bundle.scaler.lo), "hi": _floats(bundle.scaler.hi)},
        },
        "kernel": {
            "kind": kernel.kind,
            "gamma": kernel.gamma,
            "degree": kernel.degree,
            "coef0": kernel.coef0,
        },
        "hyperparams": None
        if bundle.hp is None
        else {"C": bundle.hp.C, "tol": bundle.hp.tol, "max_passes": bundle.hp.max_passes},
        "theta": model.theta,
        "strategy": model.strategy,
        "classifiers": [
            {
                "pair": list(pair),
                "support_vectors": _matrix(clf.support_vectors),
                "alphas": _floats(clf.alphas),
                "bias": clf.bias,
                "kernel": {
                    "kind": clf.kernel.kind,
                    "gamma": clf.kernel.gamma,
                    "degree": clf.kernel.degree,
                    "coef0": clf.kernel.coef0,
                },
                "converged": clf.converged,
            }
            for pair, clf in sorted(model.classifiers.items())
        ],
        "table": {
            "labels": list(model.table.labels),
            "toward_i": _matrix(model.table.toward_i),
        },
        "tree": _tree_to_jsonable(model.tree),
    }
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "sha256": _digest(payload),
        "payload": payload,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")


def load_model(path) -> ModelBundle:
    """Read a model bundle, verifying format, version, and checksum."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such model file: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"{path}: not a valid model file ({exc})")
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelFormatError(f"{path}: not a {MODEL_FORMAT} file")
    version = doc.get("version")
    if version != MODEL_VERSION:
        raise ModelFormatError(
            f"{path}: unsupported model version {version} (this build reads {MODEL_VERSION})"
        )
    payload = doc.get("payload")
    if payload is None or doc.get("sha256") != _digest(payload):
        raise ModelFormatError(f"{path}: checksum mismatch; file is corrupt")

    def kernel_from(obj) -> KernelSpec:
        return KernelSpec(
            kind=obj["kind"],
            gamma=obj["gamma"],
            degree=obj["degree"],
            coef0=obj["coef0"],
        )

    classifiers = {}
    for entry in payload["classifiers"]:
        pair = (int(entry["pair"][0]), int(entry["pair"][1]))
        classifiers[pair] = BinarySvmModel(
            pair=pair,
            support_vectors=np.array(entry["support_vectors"], dtype=np.float64),
            alphas=np.array(entry["alphas"], dtype=np.float64),
            bias=float(entry["bias"]),
            kernel=kernel_from(entry["kernel"]),
            converged=bool(entry["converged"]),
        )
    labels = [int(l) for l in payload["table"]["labels"]]
    table = AllPredictionsTable(
        labels,
        [pair for pair in sorted(classifiers) if pair[0] in labels and pair[1] in labels],
        np.array(payload["table"]["toward_i"], dtype=np.float64),
    )
    model = DcsvmModel(
        tree=_tree_from_jsonable(payload["tree"]),
        classifiers=classifiers,
        table=table,
        theta=float(payload["theta"]),
        strategy=payload["strategy"],
    )
    scaling = payload["meta"].get("scaling")
    scaler = None
    if scaling is not None:
        scaler = FeatureScale(
            np.array(scaling["lo"], dtype=np.float64),
            np.array(scaling["hi"], dtype=np.float64),
        )
    hp_obj = payload.get("hyperparams")
    hp = None
    if hp_obj is not None:
        hp = SvmHyperParams(
            C=float(hp_obj["C"]),
            tol=float(hp_obj["tol"]),
            max_passes=int(hp_obj["max_passes"]),
        )
    return ModelBundle(
        model=model,
        scaler=scaler,
        hp=hp,
        dataset_name=payload["meta"].get("dataset"),
    )
