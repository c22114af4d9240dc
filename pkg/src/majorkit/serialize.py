"""JSON and CSV encodings of rationals, matrices, vectors and operators.

Matrices are ``{"rows": n, "cols": m, "data": [["p/q", ...], ...]}``; a
bare list of rows is accepted on input.  Operators are
``{"n": n, "m": m, "blocks": [[matrix, ...], ...]}`` or ``{"vecop": matrix}``.
Entries may be integers or ``"p/q"`` strings; floats are rejected.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, List, Sequence, Union

from .errors import ParseError, ShapeError
from .exact import Permutation, RMatrix, RVector, format_rational, to_fraction
from .preservers import OperatorGrid, VectorOperator

SCHEMA = "majorkit/1"


def parse_entry(x: Any) -> Fraction:
    if isinstance(x, float):
        raise ParseError(f"floating point value {x!r} is not accepted; write it as a \"p/q\" string")
    return to_fraction(x)


def matrix_from_json(obj: Any) -> RMatrix:
    if isinstance(obj, dict):
        if "data" not in obj:
            raise ParseError("matrix object needs a \"data\" field")
        data = obj["data"]
        rows, cols = obj.get("rows"), obj.get("cols")
    else:
        data, rows, cols = obj, None, None
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError("matrix data must be a non-empty list of rows")
    M = RMatrix([[parse_entry(x) for x in r] for r in data])
    if rows is not None and rows != M.n_rows or cols is not None and cols != M.n_cols:
        raise ShapeError(f"declared shape {rows}x{cols} does not match data {M.n_rows}x{M.n_cols}")
    return M


def vector_from_json(obj: Any) -> RVector:
    """A flat list, ``{"data": [...]}``, or a single-column matrix."""
    if isinstance(obj, dict):
        obj = obj.get("data")
    if isinstance(obj, list) and obj and all(isinstance(r, list) for r in obj):
        M = matrix_from_json(obj)
        if M.n_cols != 1:
            raise ShapeError(f"expected a vector, got a {M.n_rows}x{M.n_cols} matrix")
        return M.col(0)
    if not isinstance(obj, list) or not obj:
        raise ParseError("vector must be a non-empty list")
    return tuple(parse_entry(x) for x in obj)


def matrix_to_json(M: RMatrix) -> dict:
    return {"rows": M.n_rows, "cols": M.n_cols, "data": [[format_rational(x) for x in r] for r in M.rows]}


def vector_to_json(v: Sequence[Fraction]) -> List[str]:
    return [format_rational(x) for x in v]


def operator_from_json(obj: Any) -> Union[VectorOperator, OperatorGrid]:
    if not isinstance(obj, dict):
        raise ParseError("operator must be a JSON object with \"vecop\" or \"blocks\"")
    if "vecop" in obj:
        return VectorOperator(matrix_from_json(obj["vecop"]))
    if "blocks" not in obj:
        raise ParseError("operator object needs \"vecop\" or \"blocks\"")
    grid = OperatorGrid(tuple(tuple(matrix_from_json(b) for b in row) for row in obj["blocks"]))
    if obj.get("n", grid.n) != grid.n or obj.get("m", grid.m) != grid.m:
        raise ShapeError(f"declared n, m = {obj.get('n')}, {obj.get('m')} do not match blocks ({grid.n}, {grid.m})")
    return grid


def operator_to_json(op: Union[VectorOperator, OperatorGrid]) -> dict:
    if isinstance(op, VectorOperator):
        return {"vecop": matrix_to_json(op.matrix)}
    return {"n": op.n, "m": op.m, "blocks": [[matrix_to_json(b) for b in row] for row in op.blocks]}


def permutation_to_json(P: Permutation) -> List[int]:
    """One-based images: position j holds the row of the 1 in column j."""
    return P.one_based()


def to_jsonable(x: Any) -> Any:
    """Recursively encode fractions, matrices, permutations and operators."""
    if x is None or isinstance(x, (bool, str, int)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, RMatrix):
        return matrix_to_json(x)
    if isinstance(x, Permutation):
        return permutation_to_json(x)
    if isinstance(x, (VectorOperator, OperatorGrid)):
        return operator_to_json(x)
    if isinstance(x, dict):
        return {k: to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def parse_csv(text: str) -> RMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].lstrip().startswith("#")]
    if not rows:
        raise ParseError("empty CSV input")
    return RMatrix([[parse_entry(x.strip()) for x in r] for r in rows])


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _looks_like_json(text: str) -> bool:
    return text.lstrip()[:1] in ("[", "{")


def load_json(path: str) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_matrix(path: str) -> RMatrix:
    text = read_text(path)
    if _looks_like_json(text):
        try:
            return matrix_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_csv(text)


def load_vector(path: str) -> RVector:
    text = read_text(path)
    if _looks_like_json(text):
        try:
            return vector_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    M = parse_csv(text)
    if M.n_rows == 1:
        return M.row(0)
    if M.n_cols == 1:
        return M.col(0)
    raise ShapeError(f"expected a vector, got a {M.n_rows}x{M.n_cols} matrix")


def load_operator(path: str) -> Union[VectorOperator, OperatorGrid]:
    return operator_from_json(load_json(path))


def matrix_to_csv(M: RMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in M.rows:
        writer.writerow(format_rational(x) for x in r)
    return buf.getvalue()


def payload_to_csv(payload: dict) -> str:
    """Flatten a result payload: scalars as ``key,value``; matrices as a ``# key`` header plus rows."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")

    def emit(prefix: str, value: Any) -> None:
        if isinstance(value, dict) and "data" in value and "rows" in value:
            out.write(f"# {prefix}\n")
            for r in value["data"]:
                writer.writerow(r)
        elif isinstance(value, dict):
            for k, v in value.items():
                emit(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, v in enumerate(value):
                emit(f"{prefix}[{i}]", v)
        elif isinstance(value, list):
            writer.writerow([prefix] + [str(v) for v in value])
        else:
            if isinstance(value, bool):
                value = str(value).lower()
            writer.writerow([prefix, "" if value is None else value])

    emit("", payload)
    return out.getvalue()
