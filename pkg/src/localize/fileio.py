"""JSON file formats for the command line tools.

Complex entries are encoded as two-element ``[re, im]`` arrays. All numbers
are printed with 17 significant digits so that write/read round-trips are
exact for float64 and outputs diff cleanly across implementations. Parsing
failures carry the path of the offending field.

Matrix files:   {"dim": n, "data": [[[re, im], ...] x n] x n}
Subspace files: {"ambient_dim": n, "vectors": [[[re, im], ...] x n, ...]}
                (vectors need not be orthonormal; they are orthonormalized
                on load and near-dependent vectors are rejected)
Probe files:    {"dim": n, "probes": [{"vector": [...], "weight": w}, ...]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import FileFormatError
from .linalg import DEFAULT_TOL, Subspace, ToleranceConfig

__all__ = [
    "format_float",
    "dumps_json",
    "matrix_payload",
    "vector_payload",
    "subspace_payload",
    "parse_matrix",
    "parse_vector",
    "parse_subspace",
    "parse_probes",
    "load_json",
    "load_matrix",
    "load_subspace",
    "load_probes",
]


def format_float(value: float) -> str:
    """Decimal encoding with 17 significant digits (exact float64 round-trip)."""
    return f"{float(value):.17g}"


def _emit(node, pieces: list, indent: int) -> None:
    pad = "  " * indent
    if isinstance(node, dict):
        if not node:
            pieces.append("{}")
            return
        pieces.append("{\n")
        for i, (key, val) in enumerate(node.items()):
            pieces.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(val, pieces, indent + 1)
            pieces.append(",\n" if i < len(node) - 1 else "\n")
        pieces.append(pad + "}")
    elif isinstance(node, (list, tuple)):
        seq = list(node)
        if not seq:
            pieces.append("[]")
            return
        simple = all(isinstance(x, (bool, int, float)) for x in seq)
        if simple:
            pieces.append("[" + ", ".join(_scalar(x) for x in seq) + "]")
            return
        pieces.append("[\n")
        for i, val in enumerate(seq):
            pieces.append(pad + "  ")
            _emit(val, pieces, indent + 1)
            pieces.append(",\n" if i < len(seq) - 1 else "\n")
        pieces.append(pad + "]")
    else:
        pieces.append(_scalar(node))


def _scalar(node) -> str:
    if node is None:
        return "null"
    if isinstance(node, bool):
        return "true" if node else "false"
    if isinstance(node, (int, np.integer)):
        return str(int(node))
    if isinstance(node, (float, np.floating)):
        return format_float(float(node))
    if isinstance(node, str):
        return json.dumps(node)
    raise FileFormatError(f"cannot serialize value of type {type(node).__name__}")


def dumps_json(obj) -> str:
    """Deterministic JSON text: insertion-ordered keys, 17-digit floats."""
    pieces: list = []
    _emit(obj, pieces, 0)
    pieces.append("\n")
    return "".join(pieces)


def vector_payload(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec, dtype=np.complex128)]


def matrix_payload(arr: np.ndarray) -> dict:
    mat = np.asarray(arr, dtype=np.complex128)
    return {
        "dim": int(mat.shape[0]),
        "data": [vector_payload(row) for row in mat],
    }


def subspace_payload(sub: Subspace) -> dict:
    return {
        "ambient_dim": int(sub.ambient_dim),
        "vectors": [vector_payload(col) for col in sub.basis.T],
    }


def _want(doc, key, kind, path):
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: expected an object")
    if key not in doc:
        raise FileFormatError(f"{path}: missing field {key!r}")
    value = doc[key]
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise FileFormatError(f"{path}.{key}: expected an integer")
    elif not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else " or ".join(k.__name__ for k in kind)
        raise FileFormatError(f"{path}.{key}: expected {names}")
    return value


def _pair(node, path) -> complex:
    if (
        not isinstance(node, (list, tuple))
        or len(node) != 2
        or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in node)
    ):
        raise FileFormatError(f"{path}: expected a two-element [re, im] array")
    return complex(float(node[0]), float(node[1]))


def parse_vector(node, path, dim: int | None = None) -> np.ndarray:
    if not isinstance(node, list):
        raise FileFormatError(f"{path}: expected a list of [re, im] pairs")
    if dim is not None and len(node) != dim:
        raise FileFormatError(f"{path}: expected {dim} entries, found {len(node)}")
    return np.array([_pair(x, f"{path}[{i}]") for i, x in enumerate(node)], dtype=np.complex128)


def parse_matrix(doc, path: str = "matrix") -> np.ndarray:
    dim = _want(doc, "dim", int, path)
    if dim < 1:
        raise FileFormatError(f"{path}.dim: must be at least 1, got {dim}")
    data = _want(doc, "data", list, path)
    if len(data) != dim:
        raise FileFormatError(f"{path}.data: expected {dim} rows, found {len(data)}")
    rows = [parse_vector(row, f"{path}.data[{i}]", dim) for i, row in enumerate(data)]
    return np.array(rows, dtype=np.complex128)


def parse_subspace(doc, tol: ToleranceConfig = DEFAULT_TOL, path: str = "subspace") -> Subspace:
    """Parse and orthonormalize a subspace file.

    Vectors are orthonormalized in order (modified Gram-Schmidt); a vector
    whose residual against the preceding ones falls below ``rank_tol``
    relative to its own norm is rejected as near-dependent, so a loaded
    subspace always has one basis vector per input vector.
    """
    ambient = _want(doc, "ambient_dim", int, path)
    if ambient < 1:
        raise FileFormatError(f"{path}.ambient_dim: must be at least 1, got {ambient}")
    raw = _want(doc, "vectors", list, path)
    columns: list[np.ndarray] = []
    for k, node in enumerate(raw):
        vec = parse_vector(node, f"{path}.vectors[{k}]", ambient)
        original = float(np.linalg.norm(vec))
        if original <= 0.0:
            raise FileFormatError(f"{path}.vectors[{k}]: zero vector cannot span")
        for b in columns:
            vec = vec - np.vdot(b, vec) * b
        residual = float(np.linalg.norm(vec))
        if residual < tol.rank_tol * original:
            raise FileFormatError(
                f"{path}.vectors[{k}]: nearly dependent on the preceding vectors "
                f"(residual {residual:.3e} of norm {original:.3e})"
            )
        columns.append(vec / residual)
    if not columns:
        return Subspace.zero(ambient)
    if len(columns) > ambient:
        raise FileFormatError(f"{path}.vectors: more vectors than ambient dimension")
    return Subspace(np.stack(columns, axis=1))


def parse_probes(doc, path: str = "probes") -> tuple[int, list[tuple[np.ndarray, float]]]:
    dim = _want(doc, "dim", int, path)
    if dim < 1:
        raise FileFormatError(f"{path}.dim: must be at least 1, got {dim}")
    raw = _want(doc, "probes", list, path)
    if not raw:
        raise FileFormatError(f"{path}.probes: need at least one probe")
    probes = []
    for k, node in enumerate(raw):
        where = f"{path}.probes[{k}]"
        vec = parse_vector(_want(node, "vector", list, where), f"{where}.vector", dim)
        weight = _want(node, "weight", (int, float), where)
        if isinstance(weight, bool):
            raise FileFormatError(f"{where}.weight: expected a number")
        probes.append((vec, float(weight)))
    return dim, probes


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_matrix(path) -> np.ndarray:
    return parse_matrix(load_json(path), str(path))


def load_subspace(path, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    return parse_subspace(load_json(path), tol, str(path))


def load_probes(path) -> tuple[int, list[tuple[np.ndarray, float]]]:
    return parse_probes(load_json(path), str(path))
