import pytest

from kvis import fixtures
from kvis.cli import main


def run(capsys, *argv):
    code = main(["run", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_star8_windows(capsys):
    code, out, _ = run(capsys, "--algo", "const", "--report", "windows", "--scene", "fixtures/poly_star8")
    lines = out.splitlines()
    assert code == 0
    assert sum(l.startswith("W ") for l in lines) == 16
    assert lines[-1].startswith("STATS ") and lines[-1].endswith("windows=8")


def test_convex_has_no_windows(capsys):
    code, out, _ = run(capsys, "--algo", "batch-all", "--workspace", "4", "--scene", "fixtures/convex32")
    assert code == 0 and out.splitlines()[-1].endswith("windows=0")


def test_strict_budget_exit_3(capsys):
    code, _, err = run(capsys, "--algo", "batch-crit", "--workspace", "2", "--strict", "--budget", "40", "--scene", "comb16")
    assert code == 3 and "budget" in err and err.count("\n") == 1


def test_default_budget_suffices(capsys):
    for algo in ("const", "batch-all", "batch-crit"):
        code, _, _ = run(capsys, "--algo", algo, "--workspace", "3", "--strict", "--report", "boundary", "--scene", "comb16")
        assert code == 0


def test_bad_scene_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.scene"
    p.write_text("kvis 1\npolygon 3\n0 0\n1 0\n")
    code, out, err = run(capsys, "--scene", str(p))
    assert code == 2 and out == "" and err.startswith("kvis: line")


def test_degenerate_scene_exit_2(tmp_path, capsys):
    p = tmp_path / "deg.scene"
    p.write_text("kvis 1\npolygon 4\n0 0\n4 0\n4 4\n0 4\nquery 2 2\nk 0\n")
    code, _, err = run(capsys, "--scene", str(p))
    assert code == 2 and "kvis:" in err


def test_output_is_deterministic(capsys):
    args = ("--algo", "batch-all", "--workspace", "2", "--report", "boundary", "--scene", "poly_fig2")
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    assert a == b and "CHORD" in a and "ARC" in a


def test_oracle_and_const_agree_on_windows(capsys):
    def wlines(algo):
        return sorted(l for l in run(capsys, "--algo", algo, "--scene", "holes1")[1].splitlines() if l.startswith("W"))

    assert wlines("oracle") == wlines("const")


def test_svg(tmp_path, capsys):
    svg = tmp_path / "f2.svg"
    code, _, _ = run(capsys, "--report", "boundary", "--scene", "poly_fig2", "--svg", str(svg))
    text = svg.read_text()
    assert code == 0 and text.count('class="window"') == 1 and 'id="q"' in text
    convex = tmp_path / "c.svg"
    run(capsys, "--report", "boundary", "--scene", "convex32", "--svg", str(convex))
    assert 'class="window"' not in convex.read_text()


def test_generated_scene_and_parts(capsys):
    code, out, _ = run(capsys, "--gen", "segments,8", "--seed", "3", "--k", "1", "--report", "parts")
    assert code == 0 and "ARC" in out
    assert run(capsys, "--gen", "nope,8")[0] == 2
    assert run(capsys, "--report", "parts", "--scene", "poly_fig1")[0] == 2


def test_bench_cli(tmp_path, capsys):
    assert main(["bench", "--grid", "n=32", "s=1,2", "k=0", "profile=star", "--algo", "batch-all"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "algo,n,k,s,c,reads,peak_words,emitted,wall_ns" and len(rows) == 3
    assert all(r.endswith(",") for r in rows[1:])
    assert main(["bench", "--grid", "q=1"]) == 2
