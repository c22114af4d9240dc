import json
from fractions import Fraction

import pytest
from hypothesis import given

from majorkit.errors import ParseError, ShapeError
from majorkit.exact import Permutation, RMatrix
from majorkit.preservers import OperatorGrid, VectorOperator
from majorkit.serialize import (
    load_matrix,
    load_vector,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    operator_from_json,
    operator_to_json,
    parse_csv,
    payload_to_csv,
    to_jsonable,
    vector_from_json,
)
from strategies import matrices

F = Fraction


@given(matrices())
def test_matrix_json_round_trip(M):
    assert matrix_from_json(json.loads(json.dumps(matrix_to_json(M)))) == M


@given(matrices())
def test_matrix_csv_round_trip(M):
    assert parse_csv(matrix_to_csv(M)) == M


def test_bare_list_and_string_entries():
    assert matrix_from_json([[1, "1/2"], ["-3", 0]]) == RMatrix([[1, F(1, 2)], [-3, 0]])


def test_float_rejected():
    with pytest.raises(ParseError, match="p/q"):
        matrix_from_json([[0.5]])


def test_declared_shape_checked():
    with pytest.raises(ShapeError):
        matrix_from_json({"rows": 2, "cols": 1, "data": [[1]]})


def test_vectors():
    assert vector_from_json(["1/3", 2]) == (F(1, 3), F(2))
    assert vector_from_json([[1], [2]]) == (F(1), F(2))
    with pytest.raises(ShapeError):
        vector_from_json([[1, 2], [3, 4]])


def test_operator_round_trips():
    grid = OperatorGrid([[RMatrix.identity(2), RMatrix.zeros(2)], [RMatrix.ones(2), RMatrix.identity(2)]])
    vec = VectorOperator(RMatrix([[1, F(2, 3)], [0, 1]]))
    for op in (grid, vec):
        assert operator_from_json(json.loads(json.dumps(operator_to_json(op)))) == op
    with pytest.raises(ShapeError):
        operator_from_json({"n": 3, "m": 2, "blocks": operator_to_json(grid)["blocks"]})


def test_permutations_are_one_based():
    assert to_jsonable(Permutation([1, 0, 2])) == Permutation([1, 0, 2]).one_based()
    assert Permutation.from_one_based(to_jsonable(Permutation([2, 0, 1]))) == Permutation([2, 0, 1])


def test_loading_files(tmp_path):
    j = tmp_path / "m.json"
    j.write_text("[[1, 2], [3, 4]]")
    c = tmp_path / "m.csv"
    c.write_text("# comment\n1,2\n3,4\n")
    v = tmp_path / "v.csv"
    v.write_text("1/2,1/2\n")
    assert load_matrix(str(j)) == load_matrix(str(c)) == RMatrix([[1, 2], [3, 4]])
    assert load_vector(str(v)) == (F(1, 2), F(1, 2))
    bad = tmp_path / "bad.json"
    bad.write_text("[[1, 2]")
    with pytest.raises(ParseError):
        load_matrix(str(bad))


def test_payload_csv_layout():
    text = payload_to_csv(to_jsonable({"verdict": "holds", "ok": True, "witness": RMatrix([[1]]), "v": [F(1, 2)]}))
    assert text.splitlines() == ["verdict,holds", "ok,true", "# witness", "1", "v,1/2"]
