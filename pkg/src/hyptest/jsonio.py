"""JSON encodings of matrices and family parameters.

A matrix is ``{"dim": d, "re": [[...]], "im": [[...]]}`` with row-major
nested lists; ``"im"`` may be omitted for real matrices. Floats go through
``json`` with Python's shortest round-trip repr, so emitting and reading
back is bit-exact.
"""
import json
import math

import numpy as np

from .composite import FamilyParams
from .errors import ParseError
from .linalg import as_hermitian


def _load(text_or_obj):
    if isinstance(text_or_obj, (str, bytes)):
        try:
            return json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    return text_or_obj


def _real_block(obj, key, dim):
    rows = obj[key]
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f'"{key}" must be a list of {dim} rows')
    for row in rows:
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f'"{key}" must be a {dim}x{dim} matrix')
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise ParseError(f'"{key}" entries must be finite numbers, got {x!r}')
    return np.array(rows, dtype=float)


def matrix_from_json(text_or_obj, hermitian=True):
    """Decode a matrix; validated as Hermitian unless ``hermitian=False``."""
    obj = _load(text_or_obj)
    if not isinstance(obj, dict) or "re" not in obj:
        raise ParseError('matrix JSON must be an object with at least "re"')
    re_rows = obj["re"]
    dim = obj.get("dim", len(re_rows) if isinstance(re_rows, list) else None)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError(f'"dim" must be a positive integer, got {dim!r}')
    m = _real_block(obj, "re", dim).astype(complex)
    if obj.get("im") is not None:
        m += 1j * _real_block(obj, "im", dim)
    return as_hermitian(m) if hermitian else m


def matrix_to_obj(m):
    m = np.asarray(m)
    obj = {"dim": int(m.shape[0]), "re": np.real(m).tolist()}
    if np.iscomplexobj(m) and np.any(np.imag(m)):
        obj["im"] = np.imag(m).tolist()
    return obj


def matrix_to_json(m):
    return json.dumps(matrix_to_obj(m))


def read_matrix(path):
    with open(path) as fh:
        return matrix_from_json(fh.read())


def params_from_json(text_or_obj):
    obj = _load(text_or_obj)
    if not isinstance(obj, dict):
        raise ParseError("parameter JSON must be an object")
    for key, x in obj.items():
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ParseError(f'parameter "{key}" must be a number, got {x!r}')
    return FamilyParams.from_dict(obj)


def params_to_json(params):
    return json.dumps(params.as_dict())


def read_params(path):
    with open(path) as fh:
        return params_from_json(fh.read())
