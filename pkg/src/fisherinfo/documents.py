"""JSON document schemas for models, POVMs and channels.

Complex numbers are encoded as [re, im] pairs; matrices as row-major
nested lists of pairs.  A model document declares a unitary family
(generator, initial state, pass count) and optionally a list of fixed
channels to compose.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DocumentError, FisherinfoError
from .optimize import ModelFamily
from .quantum import DensityMatrix, KrausChannel, Povm, pure_state


def _complex_from_pair(v, where: str) -> complex:
    if (not isinstance(v, (list, tuple)) or len(v) != 2
            or not all(isinstance(x, (int, float)) for x in v)):
        raise DocumentError(f"{where}: expected an [re, im] pair, got {v!r}")
    return complex(float(v[0]), float(v[1]))


def matrix_from_pairs(rows, dim: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise DocumentError(f"{where}: expected {dim} rows")
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise DocumentError(f"{where}: row {i} must have {dim} entries")
        for j, v in enumerate(row):
            out[i, j] = _complex_from_pair(v, f"{where}[{i}][{j}]")
    return out


def vector_from_pairs(entries, dim: int, where: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != dim:
        raise DocumentError(f"{where}: expected {dim} entries")
    return np.array([_complex_from_pair(v, f"{where}[{k}]") for k, v in enumerate(entries)])


def pairs_from_matrix(a: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(a, dtype=complex)]


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: top level must be an object")
    return doc


def _dim_of(doc: dict, path: str) -> int:
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise DocumentError(f"{path}: 'dim' must be a positive integer")
    return dim


def model_from_document(doc: dict, where: str = "model") -> tuple[ModelFamily, DensityMatrix]:
    """Build the model family and its declared initial state."""
    dim = _dim_of(doc, where)
    if doc.get("kind") != "unitary":
        raise DocumentError(f"{where}: unsupported kind {doc.get('kind')!r}")
    passes = doc.get("passes", 1)
    if not isinstance(passes, int) or passes < 1:
        raise DocumentError(f"{where}: 'passes' must be a positive integer")
    try:
        generator = matrix_from_pairs(doc.get("generator"), dim, f"{where}.generator")
        amplitudes = vector_from_pairs(doc.get("initial_state"), dim, f"{where}.initial_state")
        family = ModelFamily(generator, passes)
        rho0 = pure_state(amplitudes)
        for k, entry in enumerate(doc.get("compose", [])):
            if not isinstance(entry, dict):
                raise DocumentError(f"{where}.compose[{k}] must be an object")
            placement = entry.get("placement", "post")
            if placement not in ("pre", "post"):
                raise DocumentError(f"{where}.compose[{k}]: bad placement {placement!r}")
            kraus_rows = entry.get("kraus")
            if not isinstance(kraus_rows, list) or not kraus_rows:
                raise DocumentError(f"{where}.compose[{k}]: 'kraus' must be a nonempty list")
            kraus = [matrix_from_pairs(m, dim, f"{where}.compose[{k}].kraus[{j}]")
                     for j, m in enumerate(kraus_rows)]
            family = family.with_channel(KrausChannel(kraus), placement)
    except DocumentError:
        raise
    except FisherinfoError as exc:
        raise DocumentError(f"{where}: {exc}") from None
    return family, rho0


def povm_from_document(doc: dict, where: str = "povm") -> Povm:
    dim = _dim_of(doc, where)
    effects_rows = doc.get("effects")
    if not isinstance(effects_rows, list) or not effects_rows:
        raise DocumentError(f"{where}: 'effects' must be a nonempty list")
    effects = [matrix_from_pairs(m, dim, f"{where}.effects[{k}]")
               for k, m in enumerate(effects_rows)]
    labels = doc.get("labels")
    try:
        return Povm(effects, labels)
    except FisherinfoError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def load_model_document(path: str) -> tuple[ModelFamily, DensityMatrix]:
    return model_from_document(_read_json(path), path)


def load_povm_document(path: str) -> Povm:
    return povm_from_document(_read_json(path), path)


def state_to_pairs(rho: DensityMatrix) -> list:
    return pairs_from_matrix(rho.mat)


def povm_to_document(povm: Povm) -> dict:
    return {
        "dim": povm.dim,
        "effects": [pairs_from_matrix(e) for e in povm.effects],
        "labels": list(povm.labels),
    }
