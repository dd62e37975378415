import json
import subprocess
import sys
from pathlib import Path

import pytest

from qzeta import serialize
from qzeta.cli import main, parse_complex, parse_sweep_spec, run_sweep
from qzeta.errors import QZetaInputError
from qzeta.raabe import verify
from qzeta.zeta import SeriesConfig

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def reserialize(text):
    return serialize.dumps(json.loads(text)) + "\n"


# -- golden files -----------------------------------------------------------


def test_golden_eval(capsys):
    code, out, _ = run(capsys, "eval", "phi", "--k", "2", "--z", "0.5", "--s", "2", "--a", "1")
    assert code == 0
    assert out == (GOLDEN / "eval_phi.txt").read_text()


def test_golden_integrate(capsys):
    code, out, _ = run(capsys, "integrate", "--q", "2", "--power", "-0.5", "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "integrate_power.json").read_text()


def test_golden_verify(capsys):
    argv = ["verify", "ra1", "--k", "2", "--z", "0.4", "--s", "0.3", "--q", "2", "--tol", "1e-9", "--format", "json"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / "verify_ra1.json").read_text()


def test_golden_sweep(capsys):
    code, out, _ = run(capsys, "sweep", str(GOLDEN / "sweep_ra1.txt"))
    assert code == 0
    assert out == (GOLDEN / "sweep_ra1.json").read_text()


@pytest.mark.parametrize("name", ["integrate_power.json", "verify_ra1.json", "sweep_ra1.json"])
def test_golden_json_round_trips(name):
    text = (GOLDEN / name).read_text()
    assert reserialize(text) == text


# -- examples ---------------------------------------------------------------


def value_line(out):
    return next(line for line in out.splitlines() if line.startswith("value:")).split()[1]


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "phi", "--k", "1", "--z", "0", "--s", "2", "--a", "3")
    assert code == 0 and float(value_line(out)) == pytest.approx(1 / 9, rel=1e-15)
    code, out, _ = run(capsys, "eval", "li", "--k", "1", "--z", "0.5", "--s", "1")
    assert code == 0 and float(value_line(out)) == pytest.approx(0.69314718055994531, rel=1e-15)
    code, out, _ = run(capsys, "eval", "riemann", "--s", "2")
    assert code == 0 and float(value_line(out)) == pytest.approx(1.6449340668482264, rel=1e-15)


def test_eval_prints_seventeen_digits(capsys):
    _, out, _ = run(capsys, "eval", "li", "--k", "1", "--z", "0.5", "--s", "1")
    assert len(value_line(out).replace(".", "").lstrip("0")) == 17


def test_integrate_text_reports_closed_form(capsys):
    code, out, _ = run(capsys, "integrate", "--q", "2", "--power", "1")
    assert code == 0
    fields = dict(line.split(": ") for line in out.strip().splitlines())
    assert float(fields["jackson"]) == pytest.approx(1 / 3, abs=1e-15)
    assert float(fields["delta"]) < 1e-12


def test_integrate_without_closed_form(capsys):
    code, out, _ = run(capsys, "integrate", "--q", "2", "--power", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["closed_form"] == [pytest.approx(1 / 7, abs=1e-15), 0]
    code, out, _ = run(capsys, "integrate", "--q", "2", "--s", "-2", "--format", "json")
    assert json.loads(out)["jackson"][0] == pytest.approx(1 / 7, abs=1e-15)


def test_verify_text_and_out_file(capsys, tmp_path):
    dest = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "thm12", "--k", "3", "--z", "0.3", "--s", "1.5", "--a", "0.7", "--out", str(dest))
    assert code == 0
    assert out.rstrip().endswith("PASSED")
    record = json.loads(dest.read_text())
    assert record["identity"] == "thm12" and record["passed"] is True
    assert list(record) == list(serialize.REPORT_KEYS)


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "ra1", "--k", "1", "--z", "0.5", "--s", "0.5", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.split(",") == list(serialize.CSV_COLUMNS)
    cells = dict(zip(header.split(","), row.split(",")))
    assert cells["passed"] == "true" and cells["z_re"] == "0.5" and cells["z_im"] == "0"


# -- exit codes -------------------------------------------------------------


@pytest.mark.parametrize(
    "argv,code,message",
    [
        (["integrate", "--q", "1", "--power", "1"], 1, "q must exceed 1"),
        (["verify", "ra1", "--k", "1", "--z", "0.5", "--s", "2", "--q", "2"], 1, "region violation: Re(s)<1 required"),
        (["verify", "ra9", "--s", "1"], 1, "error"),
        (["eval", "phi", "--s", "1+"], 1, "not a complex literal"),
        (["eval", "phi", "--k", "1", "--z", "1", "--s", "0.5"], 1, "Re(s)>k required when |z|=1"),
        (["integrate", "--q", "2"], 1, "exactly one of"),
        (["integrate", "--q", "2", "--power", "-1"], 1, "not integrable"),
        (["eval", "li", "--k", "1", "--z", "0.99", "--s", "1", "--max-terms", "50"], 2, ""),
        (["verify", "ra1", "--k", "1", "--z", "0.99", "--s", "0.5", "--max-terms", "50"], 2, "not converged"),
        (["verify", "ra3", "--k", "2", "--z", "0.6", "--s", "3"], 2, ""),
    ],
)
def test_exit_codes(capsys, argv, code, message):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert message in err


def test_argparse_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_module_entry_point_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "qzeta.cli", "integrate", "--q", "0.5", "--power", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert "q must exceed 1" in proc.stderr


def test_env_max_terms_override(capsys, monkeypatch):
    argv = ["eval", "li", "--k", "1", "--z", "0.99", "--s", "1"]
    assert run(capsys, *argv)[0] == 0
    monkeypatch.setenv("QZETA_MAX_TERMS", "50")
    assert run(capsys, *argv)[0] == 2
    monkeypatch.setenv("QZETA_MAX_TERMS", "many")
    code, _, err = run(capsys, *argv)
    assert code == 1 and "QZETA_MAX_TERMS" in err


# -- complex literals -------------------------------------------------------


@pytest.mark.parametrize(
    "text,value",
    [("2", 2), ("-1.5", -1.5), ("0.3+0.4i", 0.3 + 0.4j), ("2-1i", 2 - 1j), ("i", 1j), ("-i", -1j), ("1e-3-2e2i", 1e-3 - 200j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1 + 2i", "i2", "1+2j", "nan", "inf", "1+2i+3i", "abc"])
def test_parse_complex_rejects(text):
    with pytest.raises(QZetaInputError):
        parse_complex(text)


# -- sweeps -----------------------------------------------------------------


def test_sweep_spec_single_line():
    spec = parse_sweep_spec("identity=ra1; k=1,2,3; z=0.3,0.5+0.2i; s=0.5,-1; q=1.5,2; tol=1e-9")
    assert spec.k_values == [1, 2, 3]
    assert spec.z_values == [0.3, 0.5 + 0.2j]
    assert len(list(spec.points())) == 24
    assert spec.tolerance == 1e-9


@pytest.mark.parametrize(
    "text,line",
    [
        ("identity=ra1\nk=1\nz=0.3\ns=0.5\nq=", "line 5"),
        ("identity=ra1\nk=1\nz=0.3\ns=0.5\nq=2,,3", "line 5"),
        ("identity=ra1\nk=0\nz=0.3\ns=0.5\nq=2", "line 2"),
        ("identity=ra1\nk=1\nz=0.3\ns=0.5\nq=1", "line 5"),
        ("identity=ra1\nk=1\nz=0.3\ns=0.5\nq=2\ncolour=red", "line 6"),
        ("identity=ra1\nk=1\nz=0.3\ns=0.5", "missing required key 'q'"),
        ("identity=ra1\nk=1\nk=2\nz=0.3\ns=0.5\nq=2", "line 3"),
        ("identity=ra1\njunk\n", "line 2"),
        ("identity=ra1\nk=1\nz=0.3\ns=0.5\nq=2\ntol=0", "line 6"),
    ],
)
def test_sweep_parse_errors(text, line):
    with pytest.raises(QZetaInputError) as info:
        parse_sweep_spec(text)
    assert line in str(info.value)


def test_sweep_empty_q_list_exits_one(capsys, tmp_path):
    spec = tmp_path / "bad.txt"
    spec.write_text("identity=ra1\nk=1\nz=0.3\ns=0.5\nq=\n")
    code, _, err = run(capsys, "sweep", str(spec))
    assert code == 1
    assert "line 5" in err


def test_sweep_ra1_grid_with_out_of_region_point(capsys, tmp_path):
    spec = tmp_path / "grid.txt"
    out = tmp_path / "grid.json"
    spec.write_text(f"identity=ra1; k=1,2,3; z=0.3,0.5+0.2i; s=0.5,1.5; q=2\nout={out}\n")
    code, stdout, _ = run(capsys, "sweep", str(spec), "--jobs", "4")
    assert code == 0
    result = json.loads(out.read_text())
    assert result["summary"] == {"passed": 6, "failed": 0, "skipped": 6, "total": 12}
    assert stdout == "passed: 6 failed: 0 skipped: 6\n"
    skipped = [r for r in result["reports"] if r["skipped"]]
    assert all(r["params"]["s"] == [1.5, 0] and r["skip_reason"] == "Re(s)<1 required" for r in skipped)


def test_sweep_ra2_ra3_marks_shared_rhs():
    spec = parse_sweep_spec("identity=ra2,ra3; k=1; z=0.6; s=3; q=2")
    reports = run_sweep(spec)["reports"]
    assert [r["rhs_shared"] for r in reports] == [True, True]
    assert reports[0]["rhs"] == reports[1]["rhs"]


def test_sweep_equals_single_verifies():
    spec = parse_sweep_spec("identity=ra1,lemma31,thm12; k=1,2; z=0.3+0.1i; s=0.5,-1; q=2; a=0.5")
    result = run_sweep(spec, SeriesConfig(), jobs=3)
    points = list(spec.points())
    assert len(points) == len(result["reports"])
    for (ident, k, z, s, q, a, r), rec in zip(points, result["reports"]):
        rep = verify(ident, k, z, s, q if q is not None else 2.0, a=a, r=r, tolerance=spec.tolerance)
        assert rec == serialize.report_to_dict(rep)


def test_sweep_parallel_matches_serial():
    spec = parse_sweep_spec("identity=ra1; k=1,2; z=0.3,0.4+0.3i; s=0.5,-0.5; q=1.5,2")
    assert run_sweep(spec, jobs=1) == run_sweep(spec, jobs=4)


def test_sweep_csv(capsys, tmp_path):
    spec = tmp_path / "grid.txt"
    spec.write_text("identity=cor_ra1w,cor_ra2w; s=0.5,2\nq=2\n")
    code, out, _ = run(capsys, "sweep", str(spec), "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0].split(",") == list(serialize.CSV_COLUMNS)
    assert len(lines) == 5
    assert code == 0


def test_report_json_round_trip_with_negative_zero():
    rep = verify("ra1", 1, complex(0.3, -0.0), -0.5, 2)
    text = serialize.dumps(serialize.report_to_dict(rep)) + "\n"
    assert "-0," not in text and "-0]" not in text
    assert reserialize(text) == text
