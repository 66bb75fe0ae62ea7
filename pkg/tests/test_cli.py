import json
import subprocess
import sys

import numpy as np
import pytest

from doobcolor import formats
from doobcolor.cli import format_matrix, main, parse_matrix, run


def call(capsys, *argv):
    code = main(["--json", *map(str, argv)])
    out = json.loads(capsys.readouterr().out)
    return code, out


def test_matrix_text():
    S = parse_matrix("0 6; 2 4")
    assert S.tolist() == [[0, 6], [2, 4]] and format_matrix(S) == "0 6; 2 4"
    with pytest.raises(ValueError):
        parse_matrix("1 2; 3")


def test_info(capsys):
    code, out = call(capsys, "info", 2, 1)
    assert code == 0 and out["result"]["degree"] == 15 and out["result"]["eigenvalues"][0] == 15
    assert sum(out["result"]["multiplicities"]) == 4**5


def test_construct_and_verify(tmp_path, capsys):
    path = tmp_path / "c.pc1"
    code, out = call(capsys, "construct", "bc", 6, 2, "-o", path)
    assert code == 0 and out["result"]["quotient"] == [[0, 6], [2, 4]]
    code, out = call(capsys, "verify", path)
    assert code == 0 and out["result"]["quotient"] == [[0, 6], [2, 4]]
    code, out = call(capsys, "verify", path, "--quotient", "0 6; 2 4")
    assert code == 0
    code, out = call(capsys, "verify", path, "--quotient", "1 5; 2 4")
    assert code == 1 and "witness" in out["result"]
    assert call(capsys, "verify", path, "--crc")[0] == 2


def test_corrupted_coloring_gives_witness(tmp_path, capsys):
    path = tmp_path / "mds.pc1"
    assert call(capsys, "construct", "mds", 1, 1, "-o", path)[0] == 0
    col = formats.read(path)
    colors = col.colors.astype(np.int64).copy()
    colors[37] = colors[37] % 4 + 1
    col.__init__(col.spec, colors, k=4)
    formats.write(path, col)
    code, out = call(capsys, "verify", path)
    assert code == 1 and out["status"] == "fail"
    w = out["result"]["witness"]
    assert out["result"]["observed"] != out["result"]["expected"]
    from doobcolor.graph import GraphSpec, distance_indices
    assert distance_indices(GraphSpec(1, 1), w, 37) <= 1


def test_code_files(tmp_path, capsys):
    prefix = tmp_path / "mf"
    code, out = call(capsys, "construct", "multifold", 0, 5, "-o", prefix)
    assert code == 0 and out["result"]["codes"] == 16 and len(out["result"]["written"]) == 16
    first = tmp_path / "mf.0.code1"
    code, out = call(capsys, "verify", first, "--mu", 1)
    assert code == 0
    code, out = call(capsys, "verify", first, "--crc")
    assert code == 0 and out["result"]["intersection_array"] == [15, 1]
    assert call(capsys, "verify", first, "--mu", 2)[0] == 1
    assert call(capsys, "verify", first, "--quotient", "0 1; 1 0")[0] == 2


def test_rad2_without_writing(tmp_path, capsys):
    code, out = call(capsys, "construct", "rad2", 0, 16, "--b", 1, "-o", tmp_path / "r.code1",
                     "--samples", 200)
    assert code == 0
    assert out["result"]["intersection_array"] == [[48, 15], [1, 48]]
    assert out["result"]["written"] is None and not (tmp_path / "r.code1").exists()


def test_recipe_file(tmp_path, capsys):
    r = tmp_path / "x.recipe"
    r.write_text("split 1\n  multiply 2 0\n    perfect 0 1\n")
    code, out = call(capsys, "construct", "recipe", r)
    assert code == 0 and out["result"]["spec"] == "D(1,6)" and out["result"]["k"] == 16


def test_admissible(capsys):
    code, out = call(capsys, "admissible", 5, 3, "--spec", 1, 0)
    assert code == 0 and out["result"]["a"] == 8 and out["result"]["necessary_conditions"]["passed"]
    code, out = call(capsys, "admissible", 5, 2)
    assert code == 0 and out["result"]["a"] is None


def test_search(tmp_path, capsys):
    code, out = call(capsys, "search", "code", 0, 1)
    assert code == 0
    code, out = call(capsys, "search", "code", 0, 2)
    assert code == 1 and out["result"]["outcome"] == "Unsatisfiable"
    code, out = call(capsys, "search", "code", 0, 5, "--nodes", 20)
    assert code == 3 and out["result"]["outcome"] == "BudgetExhausted"
    path = tmp_path / "s.pc1"
    code, out = call(capsys, "search", "coloring", 0, 2, "--quotient", "0 6; 2 4", "-o", path)
    assert code == 0 and formats.read(path).k == 2
    code, out = call(capsys, "search", "additive", 1, 3)
    assert code == 0
    fam = tmp_path / "fam.json"
    code, out = call(capsys, "search", "family", 1, 0, "--c", 3, "-o", fam)
    assert code == 0 and len(json.loads(fam.read_text())) == 8


@pytest.mark.parametrize("argv", [
    ["construct", "bc", 5, 2],
    ["construct", "bc", 255, 1],
    ["construct", "frob", 1],
    ["construct", "bc", 6],
    ["construct", "rad2", 0, 24, "--b", 1],
    ["construct", "threej", 0, 3],
    ["search", "coloring", 0, 2],
    ["verify", "/nonexistent/file.pc1"],
])
def test_bad_input_exit_2(argv, capsys):
    assert call(capsys, *argv)[0] == 2


def test_bad_file_format(tmp_path, capsys):
    p = tmp_path / "bad.pc1"
    p.write_text("pc1 m=0 n=1 k=2\n1 2 3 1\n")
    assert call(capsys, "verify", p)[0] == 2


def test_text_output(capsys):
    rep = run(["info", "1", "0"])
    assert rep.code == 0 and "status: ok" in rep.render()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "doobcolor", "admissible", "3", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "infinity-admissible" in res.stdout


def test_shipped_reference_code(capsys):
    from importlib import resources

    path = resources.files("doobcolor.data").joinpath("d21_perfect.code1")
    code, out = call(capsys, "verify", path, "--mu", 1, "--crc")
    assert code == 0 and out["result"]["intersection_array"] == [15, 1]
