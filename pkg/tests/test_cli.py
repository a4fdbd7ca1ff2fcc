from __future__ import annotations

import io
import json

import pytest

from specrec.cli.main import run
from specrec.cli.parser import parse_expression
from specrec.curve import bergman
from specrec.exact_arith import slot


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue().splitlines()


def records(lines):
    return [json.loads(l) for l in lines]


def test_mixed_a100():
    code, out = call("mixed", "--curve", "ising", "--k", "1", "--l", "1", "--json")
    assert code == 0
    (rec,) = records(out)
    assert rec["kind"] == "mixed_W" and rec["key"] == {"g": 0, "k": 1, "l": 1}
    assert parse_expression(rec["payload"]) == -bergman(slot(0), slot(1))


def test_mixed_h_seed():
    code, out = call("mixed", "--curve", "airy", "--kind", "h", "--json")
    assert code == 0 and records(out)[0]["payload"] == "1"


def test_complexity_bound_exit():
    code, _ = call("mixed", "--curve", "airy", "--g", "3", "--k", "4", "--l", "4")
    assert code == 3


def test_unknown_check_exit(capsys):
    code, _ = call("check", "bogus", "--curve", "airy")
    assert code == 2
    assert "unknown check" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.curve"
    bad.write_text("x = z^(1/2)\ny = z\n")
    assert call("invariants", "--curve", str(bad))[0] == 2
    assert "line 1, column 9" in capsys.readouterr().err
    assert call("invariants", "--curve", "nowhere")[0] == 2
    assert call("invariants")[0] == 2


def test_invariants_initial_data():
    code, out = call("invariants", "--curve", "airy", "--g-max", "0", "--n-max", "2", "--json")
    assert code == 0
    recs = records(out)
    assert [(r["key"]["g"], r["key"]["n"]) for r in recs] == [(0, 1), (0, 2)]
    assert recs[0]["payload"] == "0"
    assert parse_expression(recs[1]["payload"]) == bergman(slot(0), slot(1))


def test_free_energy_record():
    code, out = call("invariants", "--curve", "gaussian", "--g-max", "2", "--n-max", "1", "--json")
    assert code == 0
    fe = [r for r in records(out) if r["kind"] == "free_energy"]
    assert fe == [{"kind": "free_energy", "curve": "gaussian", "key": {"g": 2}, "payload": "-1/240"}]


def test_bigfloat_free_energy_record():
    code, out = call("invariants", "--curve", "gaussian", "--g-max", "2", "--n-max", "0",
                     "--backend", "bigfloat", "--precision", "128", "--json")
    assert code == 0
    (rec,) = records(out)
    assert abs(float(rec["payload"]) + 1 / 240) < 1e-15


def test_check_lines_and_exit():
    code, out = call("check", "f-symmetry", "--curve", "airy", "--curve", "gaussian", "--g", "2")
    assert code == 1
    recs = records(out)
    assert [(r["curve"], r["verdict"]) for r in recs] == [("airy", "pass"), ("gaussian", "fail")]
    code, out = call("check", "a100", "--curve", "airy", "--curve", "ising")
    assert code == 0 and len(out) == 2


def test_check_parameter_grid(monkeypatch):
    monkeypatch.setenv("SPECREC_THREADS", "3")
    code, out = call("check", "w-symmetry", "--curve", "gaussian", "--k", "0,1", "--l", "1,2")
    assert code == 0
    assert [(r["params"]["k"], r["params"]["l"]) for r in records(out)] == [(0, 1), (0, 2), (1, 1), (1, 2)]


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("SPECREC_THREADS", "zero")
    assert call("check", "a100", "--curve", "airy")[0] == 2


def test_output_is_deterministic():
    a = call("invariants", "--curve", "ising", "--g-max", "1", "--n-max", "2")
    b = call("invariants", "--curve", "ising", "--g-max", "1", "--n-max", "2")
    assert a == b and a[0] == 0


def test_series_catalan():
    code, out = call("series", "--curve", "gaussian", "--of", "y", "--at", "infinity_x", "--terms", "8", "--json")
    assert code == 0
    (rec,) = records(out)
    odd = [c for e, c in rec["payload"] if e % 2]
    assert odd == ["1", "1", "2", "5"]


def test_series_genus_one_moments():
    code, out = call("series", "--curve", "gaussian", "--of", "omega", "--at", "infinity_x", "--terms", "5")
    assert code == 0
    assert out == ["(1/x)^5: 1", "(1/x)^6: 0", "(1/x)^7: 10", "(1/x)^8: 0", "(1/x)^9: 70"]


@pytest.mark.parametrize("argv", [("--of", "w"), ("--at", "nowhere"), ("--terms", "0")])
def test_series_usage(argv):
    assert call("series", "--curve", "airy", *argv)[0] == 2
