import json
import subprocess
import sys

import pytest

from majorkit.cli import run
from majorkit.exact import RMatrix
from majorkit.preservers import decompose_operator
from majorkit.serialize import operator_to_json

I2 = RMatrix.identity(2)


def sum_gap(X):
    s = X.column_sums()
    return I2 * (s[0] - s[1]) + X


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write


def call(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip().startswith("{") else out.out), out.err


def test_check_strong_holds_and_fails(capsys, files):
    A = files("A.json", [[1, 1], [1, 1]])
    B = files("B.json", [[2, 0], [0, 2]])
    code, out, _ = call(capsys, ["check", "--kind", "strong", "-A", A, "-B", B])
    assert code == 0 and out["verdict"] == "holds" and out["witness"]["rows"] == 2
    code, out, _ = call(capsys, ["check", "--kind", "strong", "--method", "lp", "-A", B, "-B", A])
    assert code == 1 and out["verdict"] == "fails" and "certificate" in out


def test_check_vector_and_equiv(capsys, files):
    a, b = files("a.json", [1, 1, 1]), files("b.json", [3, 0, 0])
    assert call(capsys, ["check", "--kind", "vector", "-A", a, "-B", b])[0] == 0
    assert call(capsys, ["check", "--kind", "vector", "-A", b, "-B", a])[0] == 1
    c = files("c.json", [0, 3, 0])
    code, out, _ = call(capsys, ["check", "--kind", "vector-equiv", "-A", c, "-B", b])
    assert code == 0 and out["permutation"] == [2, 1, 3]


def test_check_directional_refutes(capsys, files):
    A, B = files("A.json", [[1, 0], [0, 1]]), files("B.json", [[1, 1], [0, 0]])
    code, out, _ = call(capsys, ["check", "--kind", "directional", "-A", A, "-B", B])
    assert code == 1 and out["verdict"] == "refuted" and "direction" in out


def test_witness_vector_lists_t_transforms(capsys, files):
    a, b = files("a.json", [2, 2, 2]), files("b.json", [6, 0, 0])
    code, out, _ = call(capsys, ["witness", "--kind", "vector", "-A", a, "-B", b])
    assert code == 0 and 1 <= len(out["t_transforms"]) <= 2


def test_reduce_rejects_mu_for_diag(capsys, files):
    A = files("A.json", [[1]])
    code, _, err = call(capsys, ["reduce", "--method", "diag", "--mu", "2", "-A", A, "-B", A])
    assert code == 2 and json.loads(err)["error"]


def test_theta_and_birkhoff(capsys, files):
    code, out, _ = call(capsys, ["theta", "-A", files("A.json", [[1, 0], [1, 0]])])
    assert code == 0 and out["theta"]["data"] == [["1/2", "1/2"], ["1/2", "1/2"]]
    code, out, _ = call(capsys, ["birkhoff", "-D", files("D.json", [[1, 0], [0, 1]])])
    assert code == 0 and out["count"] == 1 and out["terms"][0]["weight"] == "1"


def test_gen_is_reproducible(capsys):
    first = call(capsys, ["gen", "--kind", "ds", "--n", "4", "--seed", "3"])
    assert first == call(capsys, ["gen", "--kind", "ds", "--n", "4", "--seed", "3"])


def test_classify_cs_and_fuzz(capsys, files):
    op = files("op.json", operator_to_json(decompose_operator(sum_gap, 2, 2)))
    code, out, _ = call(capsys, ["classify", "--target", "cs", "--op", op])
    assert code == 0 and out["form"] == "CSForm" and out["constraint_ok"] and out["verified"]
    code, out, _ = call(capsys, ["classify", "--target", "strong", "--op", op])
    assert code == 1 and out["form"] is None
    code, out, _ = call(capsys, ["fuzz", "--op", op, "--relation", "strong", "--domain", "all"])
    assert code == 1 and out["counterexample"]["verified"]
    code, out, _ = call(capsys, ["fuzz", "--op", op, "--relation", "strong", "--domain", "cs", "--trials", "20"])
    assert code == 0 and out["counterexample"] is None


def test_classify_zerosum_reports_alpha(capsys, files):
    op = files("op.json", {"vecop": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, out, _ = call(capsys, ["classify", "--target", "zerosum", "--op", op])
    assert code == 0 and out["alpha"] == "1"


def test_suite_subset(capsys):
    code, out, _ = call(capsys, ["suite", "--sizes", "2x1,3x2", "--cases", "3", "--only", "sim-strong,+J"])
    assert code == 0 and out["passed"] and [r["property"] for r in out["results"]] == ["sim-strong", "+J"]


def test_csv_output(capsys, files):
    A = files("A.csv", "1,0\n0,1\n")
    code, out, _ = call(capsys, ["check", "--kind", "strong", "--format", "csv", "-A", A, "-B", A])
    assert code == 0 and "verdict,holds" in out


@pytest.mark.parametrize(
    "argv",
    [["frobnicate"], ["check", "--kind", "strong"], ["suite", "--sizes", "3by2"], ["gen", "--kind", "ds"]],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, argv)
    assert code == 2 and "error" in json.loads(err)


def test_decimal_input_exits_2_with_hint(capsys, files):
    A = files("A.json", [["0.5"]])
    code, _, err = call(capsys, ["check", "--kind", "strong", "-A", A, "-B", A])
    assert code == 2 and "p/q" in json.loads(err)["message"]


def test_shape_mismatch_exits_2(capsys, files):
    code, _, _ = call(capsys, ["check", "--kind", "strong", "-A", files("A.json", [[1]]), "-B", files("B.json", [[1, 2]])])
    assert code == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "D.json"
    p.write_text("[[1]]")
    proc = subprocess.run([sys.executable, "-m", "majorkit", "birkhoff", "-D", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 1
