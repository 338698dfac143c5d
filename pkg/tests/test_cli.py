import json
import os

import pytest

from rikit.cli import run
from rikit.samples import DEFAULT_SEED
from rikit.verify import run_indexed

NORM_DOC = {
    "space": {"kind": "lp", "p": "2"},
    "function": {
        "type": "profile",
        "pieces": [{"from": "0", "to": "4", "coeff": "1", "exp": "0"}],
        "tail": {"kind": "zero"},
    },
}

HLP_DOC = {
    "functions": [
        {"type": "profile",
         "pieces": [{"from": "0", "to": "1", "coeff": "2", "exp": "0"}],
         "tail": {"kind": "zero"}},
        {"type": "profile",
         "pieces": [{"from": "0", "to": "3", "coeff": "1", "exp": "0"}],
         "tail": {"kind": "zero"}},
    ]
}

AC_DOC = {
    "space": {"kind": "weak_marcinkiewicz", "phi": {"coeff": "1", "exp": "1"}},
    "function": {
        "type": "profile",
        "pieces": [{"from": "0", "to": "1", "coeff": "1", "exp": "0"}],
        "tail": {"kind": "power", "coeff": "1", "exp": "-1"},
    },
}

SIM_DOC = {
    "space": {"kind": "lp", "p": "1"},
    "function": {
        "type": "profile",
        "pieces": [{"from": "0", "to": "1", "coeff": "1", "exp": "-1/4"}],
        "tail": {"kind": "zero"},
    },
    "family": {"kind": "head"},
    "params": {"k_max": 16},
}


def spec_file(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_norm_pinned_output(tmp_path, capsys):
    code = run(["norm", "--spec", spec_file(tmp_path, NORM_DOC)])
    assert code == 0
    assert capsys.readouterr().out == "2 (exact)\n"


def test_hlp_pinned_output(tmp_path, capsys):
    code = run(["hlp", "--spec", spec_file(tmp_path, HLP_DOC)])
    assert code == 1
    assert capsys.readouterr().out == "not majorized; witness t=1\n"


def test_ac_test_pinned_output(tmp_path, capsys):
    code = run(["ac-test", "--spec", spec_file(tmp_path, AC_DOC)])
    assert code == 1
    assert capsys.readouterr().out == "notAC (tail limit = 1)\n"


def test_rearrange_prints_pieces(tmp_path, capsys):
    doc = {
        "function": {
            "type": "step",
            "base": {"kind": "nonatomic"},
            "pieces": [
                {"from": "2", "to": "3", "value": "1"},
                {"from": "5", "to": "6", "value": "3"},
            ],
        }
    }
    code = run(["rearrange", "--spec", spec_file(tmp_path, doc)])
    assert code == 0
    out = capsys.readouterr().out
    assert out == "[0, 1): 3\n[1, 2): 1\ntail [2, inf): 0\n"


def test_represent_reports_both_sides(tmp_path, capsys):
    doc = {
        "space": {"kind": "l1_cap_linf"},
        "function": {
            "type": "step",
            "base": {"kind": "nonatomic"},
            "pieces": [{"from": "0", "to": "2", "value": "3"}],
        },
    }
    code = run(["represent", "--spec", spec_file(tmp_path, doc)])
    assert code == 0
    out = capsys.readouterr().out
    assert "lhs: 9 (exact)" in out
    assert "rhs: 9 (exact)" in out
    assert "identity holds" in out


def test_ac_simulate_csv_layout(tmp_path, capsys):
    code = run(["ac-simulate", "--spec", spec_file(tmp_path, SIM_DOC)])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,norm,flag"
    assert lines[1].split(",") == ["1", "1.3333333333333333", "exact"]
    assert lines[2].endswith("approx")
    assert lines[-1].split(",") == ["16", "0.16666666666666666", "exact"]


def test_ac_simulate_out_is_deterministic(tmp_path):
    spec = spec_file(tmp_path, SIM_DOC)
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert run(["ac-simulate", "--spec", spec, "--out", a]) == 0
    assert run(["ac-simulate", "--spec", spec, "--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_plot_writes_a_figure_next_to_the_csv(tmp_path):
    spec = spec_file(tmp_path, SIM_DOC)
    out = str(tmp_path / "decay.csv")
    assert run(["ac-simulate", "--spec", spec, "--out", out, "--plot"]) == 0
    figure = tmp_path / "decay.png"
    assert figure.exists() and figure.stat().st_size > 0


def test_plot_without_out_is_an_input_error(tmp_path, capsys):
    code = run(["ac-simulate", "--spec", spec_file(tmp_path, SIM_DOC), "--plot"])
    assert code == 2
    assert "--plot needs --out" in capsys.readouterr().err


def test_dump_spec_round_trips(tmp_path, capsys):
    spec = spec_file(tmp_path, NORM_DOC)
    assert run(["norm", "--spec", spec, "--dump-spec"]) == 0
    text = capsys.readouterr().out
    redumped = tmp_path / "canon.json"
    redumped.write_text(text)
    assert run(["norm", "--spec", str(redumped), "--dump-spec"]) == 0
    assert capsys.readouterr().out == text


def test_seed_override_lands_in_dump(tmp_path, capsys):
    assert run(["norm", "--spec", spec_file(tmp_path, NORM_DOC), "--seed", "42",
                "--dump-spec"]) == 0
    assert json.loads(capsys.readouterr().out)["params"]["seed"] == 42


def test_missing_spec_file_is_exit_2(capsys):
    assert run(["norm", "--spec", "/nonexistent/path.json"]) == 2
    assert "cannot read spec file" in capsys.readouterr().err


def test_malformed_document_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"space": {"kind": "lp", "p": 0.5}}')
    assert run(["norm", "--spec", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "space.p" in err


def test_missing_required_parts_is_exit_2(tmp_path, capsys):
    doc = {"space": {"kind": "lp", "p": "1"}}
    assert run(["norm", "--spec", spec_file(tmp_path, doc)]) == 2
    assert "exactly one function" in capsys.readouterr().err


def test_bad_rikit_log_value_exits_2(tmp_path, monkeypatch):
    monkeypatch.setenv("RIKIT_LOG", "loud")
    with pytest.raises(SystemExit) as info:
        run(["norm", "--spec", spec_file(tmp_path, NORM_DOC)])
    assert info.value.code == 2


def test_verify_criterion_entry_point_is_picklable_shape():
    result = run_indexed((7, DEFAULT_SEED))
    assert result.number == 8
    assert result.passed
    assert result.line().startswith("criterion 8: PASS")
