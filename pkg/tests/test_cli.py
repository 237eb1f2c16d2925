import json
import subprocess
import sys

import pytest

from triplepoints.cli import main
from triplepoints.datasets import builtin
from triplepoints.fileio import format_incidence, parse_arrangement


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_verify_sporadic(capsys):
    code, out, _ = run(capsys, "verify", "@f11_19")
    assert code == 0
    assert out.splitlines()[0] == "t3=57 t2=0"


def test_verify_f7(capsys):
    code, out, _ = run(capsys, "verify", "@f7_13")
    assert code == 0 and out.splitlines()[0] == "t3=23 t2=9"


def test_verify_against(capsys):
    assert run(capsys, "verify", "@f11_16", "--against", "@matroid16_37")[0] == 0
    code, data = run_json(capsys, "verify", "@qeps_16", "--against", "@matroid16_37")
    assert code == 1 and data["discrepancy"] == [1, 4, 6]
    code, data = run_json(capsys, "verify", "@qeps_16", "--against", "@matroid16_37", "--relabel")
    assert code == 0 and data["match"]
    assert run(capsys, "verify", "@f11_16", "--against", "@fano")[0] == 1


def test_verify_input_errors(capsys, tmp_path):
    dup = tmp_path / "dup.txt"
    dup.write_text("field 5 1\nn 2\n1 0 0\n2 0 0\n")
    code, _, err = run(capsys, "verify", str(dup))
    assert code == 2 and "same line" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("field 5 1\nn 3\n1 0 0\n")
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "verify", "@nope")[0] == 2


def test_realize_fano(capsys):
    code, out, _ = run(capsys, "realize", "@fano", "--field", "2", "1")
    assert code == 0
    assert out.startswith("F_2: found")
    text = out.split("\n", 1)[1]
    assert parse_arrangement(text).n == 7


def test_realize_fano_f3(capsys):
    code, data = run_json(capsys, "realize", "@fano", "--field", "3", "1")
    assert code == 1 and data["results"][0]["status"] == "exhausted"


def test_realize_sts13_all_fields(capsys):
    code, data = run_json(capsys, "realize", "@sts13_1", "--all-fields-up-to", "13")
    assert code == 1
    assert [r["q"] for r in data["results"]] == [2, 3, 4, 5, 7, 8, 9, 11, 13]
    assert all(r["status"] == "exhausted" for r in data["results"])


def test_realize_pg32(capsys):
    code, data = run_json(capsys, "realize", "@pg:3,2", "--field", "2", "4")
    assert code == 0 and data["results"][0]["status"] == "found"


def test_realize_no_frame(capsys, tmp_path):
    f = tmp_path / "pencil.txt"
    f.write_text("n 5\n1 2 3 4\n")
    code, data = run_json(capsys, "realize", str(f), "--field", "2", "1")
    assert code == 1 and data["results"][0]["status"] == "no_frame"


def test_realize_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("TRIPLEPOINTS_SEARCH_FIELD_CAP", "4")
    assert run(capsys, "realize", "@fano", "--field", "5", "1")[0] == 2


def test_realize_workers_same_output(capsys):
    _, one = run_json(capsys, "realize", "@pg:3,2", "--field", "2", "4", "--workers", "1")
    _, two = run_json(capsys, "realize", "@pg:3,2", "--field", "2", "4", "--workers", "2")
    assert one["results"][0]["arrangement"] == two["results"][0]["arrangement"]


def test_construct(capsys, tmp_path):
    code, data = run_json(capsys, "construct", "--k", "3", "--q", "2")
    assert code == 0
    assert data["m"] == 4 and data["lines"] == 15 and data["t_vector"] == {"3": 35}
    assert data["seed"] == 0
    out = tmp_path / "pg32.txt"
    assert run(capsys, "construct", "--k", "2", "--q", "2", "--out", str(out))[0] == 0
    assert parse_arrangement(out.read_text()).n == 7


def test_construct_pg42(capsys):
    code, data = run_json(capsys, "construct", "--k", "4", "--q", "2", "--seed", "5")
    assert code == 0 and data["lines"] == 31 and data["t_vector"] == {"3": 155} and data["seed"] == 5


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--s-range", "12", "19")
    assert code == 0
    assert out.splitlines()[0] == "s U3 20 26 28 35 37 44 48 57"
    code, data = run_json(capsys, "table", "--s-range", "9", "9")
    assert data["rows"] == [{"s": 9, "U3": 12, "achieved": 12, "source": "dual_hesse (found over F_4)"}]
    _, data = run_json(capsys, "table", "--s-range", "14", "14")
    assert data["rows"][0]["achieved"] == 28
    assert run(capsys, "table", "--s-range", "5", "3")[0] == 2


@pytest.mark.parametrize("name,order,transitive", [("dual_hesse", 432, True), ("sporadic19", 57, True), ("fano", 168, True)])
def test_aut(capsys, name, order, transitive):
    code, data = run_json(capsys, "aut", "@" + name)
    assert code == 0 and data["order"] == order and data["transitive_on_blocks"] is transitive


@pytest.mark.parametrize("name,gens", [("fano", 8), ("sts13_2", 27)])
def test_ideal(capsys, tmp_path, name, gens):
    out = tmp_path / "ideal.txt"
    code, data = run_json(capsys, "ideal", "@" + name, "--out", str(out))
    assert code == 0 and data["generators"] == gens
    assert out.read_text().splitlines()[3] == f"generators {gens}"


def test_ideal_single_block(capsys, tmp_path):
    f = tmp_path / "one.txt"
    f.write_text("n 3\n1 2 3\n")
    code, out, _ = run(capsys, "ideal", str(f))
    assert code == 0 and "generators 2" in out


def test_show_and_delete(capsys):
    code, out, _ = run(capsys, "show", "@fano")
    assert out == format_incidence(builtin("fano"))
    code, data = run_json(capsys, "show", "@pg:3,2", "--delete", "1")
    assert data["t_vector"]["3"] == 28


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "triplepoints", "table", "--s-range", "12", "19"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "s U3 20 26 28 35 37 44 48 57"
