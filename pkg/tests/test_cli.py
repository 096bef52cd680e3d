import pytest

from algebra.poly import t_power
from checks.suites import moy_annulus
from webs.diagram import UP, Slice, SlicedDiagram, render_web
from webs.library import closure, theta
from webs.moy_graph import render_moy
from worker import BROKER_URL
from snweb import render_value, run


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run_output(argv, capsys):
    assert run(argv) == 0
    return capsys.readouterr().out.strip()


def test_eval_builtin_in_q(capsys):
    assert run(["eval", "-n", "3", "--builtin", "unknot", "--var", "q"]) == 0
    assert capsys.readouterr().out.strip() == "q^-2 + 1 + q^2"


def test_eval_file(tmp_path, capsys):
    path = _write(tmp_path, "theta.json", render_web(theta(2)))
    assert run(["eval", path, "--var", "q"]) == 0
    assert capsys.readouterr().out.strip() == "1 + q^2"


def test_n_flag_overrides_file(tmp_path, capsys):
    path = _write(tmp_path, "theta.json", render_web(theta(2)))
    overridden = run_output(["statesum", "-n", "3", path, "--var", "q"], capsys)
    assert overridden == run_output(["eval", "--builtin", "theta", "-n", "3", "--var", "q"], capsys)
    assert overridden != "1 + q^2"


def test_statesum_resolves_crossings(capsys):
    assert run_output(["statesum", "-n", "2", "--builtin", "trefoil"], capsys) == run_output(
        ["eval", "-n", "2", "--builtin", "trefoil"], capsys
    )


def test_var_a_falls_back_to_t_away_from_two(capsys):
    assert run(["eval", "-n", "3", "--builtin", "unknot", "--var", "A"]) == 0
    captured = capsys.readouterr()
    assert captured.out.strip() == "t^-6 + 1 + t^6"
    assert "note:" in captured.err


def test_render_value_q_fallback():
    text, note = render_value(t_power(1), "q", 3)
    assert text == "t"
    assert "t^3" in note


def test_moy_command(tmp_path, capsys):
    path = _write(tmp_path, "annulus.json", render_moy(moy_annulus(3, 1)))
    assert run(["moy", path, "--var", "q"]) == 0
    out = capsys.readouterr().out
    assert "bracket: q^-2 + 1 + q^2" in out
    assert "original_bracket: q^-1 + 1 + q" in out
    assert "eta: 0" in out


def test_singular_command(tmp_path, capsys):
    vertex = closure(SlicedDiagram(3, (Slice("x4", 0),), (UP, UP)))
    path = _write(tmp_path, "vertex.json", render_web(vertex))
    assert run(["singular", path, "--var", "q"]) == 0
    assert capsys.readouterr().out.strip() == "q^-3 + 2*q^-1 + 2*q + q^3"


def test_kauffman_command(capsys):
    assert run(["kauffman", "--builtin", "trefoil"]) == 0
    assert "ok: true" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "missing.json"],
        ["eval", "-n", "1", "--builtin", "unknot"],
        ["eval"],
        ["eval", "x.json", "--builtin", "unknot"],
        ["eval", "--builtin", "nope"],
        ["frobnicate"],
        ["check", "--suite", "kuperberg", "-n", "2"],
        ["check", "--suite", "closed", "--size", "0"],
    ],
)
def test_input_errors_exit_with_one(argv, capsys):
    assert run(argv) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_file_exits_with_one(tmp_path, capsys):
    path = _write(tmp_path, "bad.json", '{"n": 3, "slices": [{"gen": "cupE", "at": 0}]}')
    assert run(["eval", path]) == 1
    assert "error:" in capsys.readouterr().err


@pytest.mark.skipif(bool(BROKER_URL), reason="runs Celery eagerly")
def test_check_command(capsys):
    assert run(["check", "--suite", "closed", "--size", "1", "-n", "2", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "suite: closed" in out
    assert "failures: []" in out
