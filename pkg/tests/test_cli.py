import json
import subprocess
import sys

import pytest

from halfcanon.cli import main


@pytest.fixture
def b0_file(tmp_path):
    path = tmp_path / "b0.pres"
    assert main(["builtin", "B0", "--seed", "7", "--out", str(path)]) == 0
    return path


@pytest.fixture
def a1_file(tmp_path):
    path = tmp_path / "a1.pres"
    assert main(["builtin", "A1", "--seed", "2", "--out", str(path)]) == 0
    return path


def test_builtin_to_stdout(capsys):
    assert main(["builtin", "CanA", "--seed", "1", "--field", "q"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("format CanA;\nseed 1;\nfield q;\n")


def test_check_text(b0_file, capsys):
    assert main(["check", str(b0_file)]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("format B0  seed 7  field gf 32003")
    assert lines[-1] == "verdict: pass"
    assert any(line.startswith("PASS    node_point") for line in lines)


def test_check_json_is_deterministic(b0_file, capsys):
    assert main(["check", str(b0_file), "--json", "--deterministic"]) == 0
    first = capsys.readouterr().out
    assert main(["check", str(b0_file), "--json", "--deterministic"]) == 0
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert data["verdict"] == "pass" and data["format"] == "B0"
    assert all(c["ms"] == 0 for c in data["checks"])


def test_check_failing_presentation(tmp_path, capsys):
    path = tmp_path / "bad.pres"
    path.write_text("format A0;\nvars y1:2 y2:2 z1:3 z2:3;\nideal:\n z1^2;\n z2^2 - y1^3 - y2^3;\nend\n")
    assert main(["check", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL    side_conditions" in out and "f6 must be nonzero" in out
    assert out.endswith("verdict: fail\n")


def test_hilbert(a1_file, capsys):
    assert main(["hilbert", str(a1_file), "--expand", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["(1 - t^10) / ((1 - t) * (1 - t^2) * (1 - t^5))", "1 1 2 2 3 4 5"]


def test_resolve(b0_file, tmp_path, capsys):
    betti = tmp_path / "out.betti"
    assert main(["resolve", str(b0_file), "--betti-out", str(betti)]) == 0
    out = capsys.readouterr().out
    assert out.endswith("step 6: 32^1\n")
    assert betti.read_text() == out


def test_resolve_too_long(b0_file, capsys):
    assert main(["resolve", str(b0_file), "--max-length", "2"]) == 1
    assert "error" in capsys.readouterr().err


def test_subring(a1_file, capsys):
    assert main(["subring", str(a1_file), "--gens", "Y1=x^2,Y2=y,U=x*z"]) == 0
    out = capsys.readouterr().out
    assert "vars Y1:2 Y2:2 U:6;" in out
    ideal = out.split("ideal:\n", 1)[1].split("end\n", 1)[0]
    gens = [g for g in ideal.split(";") if g.strip()]
    assert len(gens) == 1 and gens[0].strip().startswith("U^2 - ")


def test_ggs_count(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text("components: 0, 0\nedges: (1,2) (1,2)\n")
    assert main(["ggs-count", str(path)]) == 0
    assert capsys.readouterr().out == "2\n"
    assert main(["ggs-count", str(path), "--b1", "3"]) == 0
    assert capsys.readouterr().out == "8\n"


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent/file.pres"],
    ["builtin", "A0", "--seed", "1", "--field", "10"],
    ["subring", "__A1__", "--gens", "Y1"],
])
def test_usage_errors_exit_2(argv, a1_file, capsys):
    argv = [str(a1_file) if a == "__A1__" else a for a in argv]
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("halfcanon ")


def test_parse_errors_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.pres"
    path.write_text("vars x:1;\nideal:\n x +;\nend\n")
    assert main(["hilbert", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err
    graph = tmp_path / "g.graph"
    graph.write_text("components: 1, 1\n")
    assert main(["ggs-count", str(graph)]) == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["builtin", "Z9", "--seed", "1"])
    assert info.value.code == 2


def test_module_entry_point(a1_file):
    proc = subprocess.run([sys.executable, "-m", "halfcanon", "hilbert", str(a1_file)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("(1 - t^10)")
