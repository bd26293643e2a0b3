"""Instance files: JSON with ``n``, ``m`` and ``coefficients``.

``coefficients`` holds ``n + 1`` matrices in ascending degree order, each an
``m x m`` array of ``[re, im]`` pairs.  Floats are written in Python's
shortest round-trip form, so a dump/load cycle is lossless.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Union

import numpy as np

from .errors import CauchyRadiusError
from .matrix import MatrixPoly


class InstanceFormatError(CauchyRadiusError, ValueError):
    pass


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InstanceFormatError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise InstanceFormatError(f"{where}: non-finite value")
    return x


def parse_instance(doc: dict) -> MatrixPoly:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance must be a JSON object")
    for key in ("n", "m", "coefficients"):
        if key not in doc:
            raise InstanceFormatError(f"missing field {key!r}")
    n, m = doc["n"], doc["m"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceFormatError(f"n must be a positive integer, got {n!r}")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InstanceFormatError(f"m must be a positive integer, got {m!r}")
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list) or len(coeffs) != n + 1:
        raise InstanceFormatError(f"coefficients must be a list of n+1 = {n + 1} matrices")
    out = np.empty((n + 1, m, m), dtype=np.complex128)
    for j, mat in enumerate(coeffs):
        if not isinstance(mat, list) or len(mat) != m:
            raise InstanceFormatError(f"coefficients[{j}] must have {m} rows")
        for r, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != m:
                raise InstanceFormatError(f"coefficients[{j}][{r}] must have {m} entries")
            for c, pair in enumerate(row):
                where = f"coefficients[{j}][{r}][{c}]"
                if not isinstance(pair, list) or len(pair) != 2:
                    raise InstanceFormatError(f"{where}: expected [re, im]")
                out[j, r, c] = complex(_number(pair[0], where), _number(pair[1], where))
    if not np.any(out[n]):
        raise InstanceFormatError("leading coefficient (degree n) is the null matrix")
    return MatrixPoly(out)


def loads(text: str) -> MatrixPoly:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    return parse_instance(doc)


def load(path: Union[str, Path]) -> MatrixPoly:
    return loads(Path(path).read_text())


def to_document(p: MatrixPoly) -> dict:
    return {
        "n": p.degree,
        "m": p.dim,
        "coefficients": [
            [[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in p.coeffs
        ],
    }


def dumps(p: MatrixPoly) -> str:
    return json.dumps(to_document(p))


def dump(p: MatrixPoly, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(p) + "\n")
