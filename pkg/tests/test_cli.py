import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from burgess.cli import SCAN_COLUMNS, format_rows, main, parse_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    return parse_csv(text)


def test_moment_examples(capsys):
    code, out, _ = run(capsys, "moment", "--p", "7", "--e", "3", "--h", "2", "--r", "1")
    row = rows_of(out)[0]
    assert code == 0
    assert row["value"] == "10" and row["ok"] == "true"
    assert float(row["bound_lo"]) == pytest.approx(24.58, abs=0.01)
    _, out, _ = run(capsys, "moment", "--p", "5", "--e", "2", "--h", "1", "--r", "1")
    assert rows_of(out)[0]["value"] == "4"
    _, out, _ = run(capsys, "moment", "--p", "7", "--e", "3", "--h", "7", "--r", "1")
    assert rows_of(out)[0]["value"] == "0"


def test_verify_moment_bound(capsys):
    code, out, _ = run(capsys, "verify-lemma2", "--p", "7", "--p-min", "7", "--h", "2", "--r", "1")
    summary = rows_of(out)[0]
    assert code == 0
    assert (summary["characters"], summary["failures"]) == ("5", "0")
    code, out, _ = run(capsys, "verify-lemma2", "--p", "3", "--h", "1", "--r", "1")
    assert rows_of(out)[0]["characters"] == "1"
    code, _, err = run(capsys, "verify-lemma2", "--p", "20000", "--h", "1", "--r", "1")
    assert code == 2 and "limit" in err


def test_fractions_and_approx(capsys):
    code, out, _ = run(capsys, "fractions", "--a", "1", "--b", "0", "--x-max", "7")
    row = rows_of(out)[0]
    assert code == 0 and int(row["count"]) >= 1
    assert float(row["lower_bound_lo"]) == pytest.approx(0.5835, abs=1e-4)
    code, out, _ = run(capsys, "approx", "--n", "1", "--p", "3", "--H", "2")
    row = rows_of(out)[0]
    assert (row["a"], row["b"], row["ok"]) == ("1", "0", "true")


def test_intervals_on_witness(capsys):
    code, out, _ = run(capsys, "intervals", "--p", "2753", "--e", "1376", "--n", "1282",
                       "--H", "14", "--h", "1", "--format", "json")
    rows = json.loads(out)
    summary = rows[-1]
    assert code == 0
    assert summary["kind"] == "summary" and summary["ok"] is True
    assert summary["count"] == len(rows) - 1 >= summary["required"]


def test_intervals_reports_violated_hypothesis(capsys):
    code, _, err = run(capsys, "intervals", "--p", "2003", "--n", "0", "--H", "14", "--h", "1")
    assert code == 2 and "H^3 <= (2h-1)p" in err


def test_bounds_and_thresholds(capsys):
    code, out, _ = run(capsys, "bounds", "--p", "5e18")
    row = rows_of(out)[0]
    assert code == 0
    assert 7.05 < float(row["Cg_lo"]) <= float(row["Cg_hi"]) < 7.06
    code, _, err = run(capsys, "bounds", "--p", "1e4")
    assert code == 2 and "5*10^4" in err
    code, out, _ = run(capsys, "thresholds")
    rows = rows_of(out)
    assert code == 0
    assert [(r["constant"], r["ok"]) for r in rows] == [("353/50", "true"), ("7", "true")]


def test_max_run_and_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "max-run", "--p", "13", "--order", "2")
    row = rows_of(out)[0]
    assert (row["H"], row["N"], row["value_num"], row["value_den"]) == ("4", "4", "1", "2")
    path = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "scan", "--p", "100", "--out", str(path))
    text = path.read_text()
    assert code == 0
    assert text.splitlines()[0] == ",".join(SCAN_COLUMNS)
    assert len(rows_of(text)) == 24
    assert rows_of(text)[0]["burgess_lo"] == ""


def test_scan_deterministic_across_jobs(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "scan", "--p", "30000", "--jobs", "1", "--out", str(a))
    run(capsys, "scan", "--p", "30000", "--jobs", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--order", "2")
    row = rows_of(out)[0]
    assert code == 0 and row["p"] == "2753"
    code, _, err = run(capsys, "witness", "--limit", "1000")
    assert code == 1 and "no witness" in err


def test_usage_errors(capsys):
    assert run(capsys, "moment", "--p", "8", "--e", "1", "--h", "1", "--r", "1")[0] == 2
    assert run(capsys, "moment", "--p", "7")[0] == 2
    assert run(capsys, "moment", "--p", "7", "--e", "6", "--h", "1", "--r", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--order", "x"])
    assert exc.value.code == 2


def test_unwritable_output_path(capsys, tmp_path):
    bad = tmp_path / "missing" / "out.csv"
    code, _, err = run(capsys, "thresholds", "--out", str(bad))
    assert code == 2 and str(bad) in err


scalars = st.one_of(st.integers(-10**20, 10**20), st.floats(allow_nan=False, allow_infinity=False),
                    st.booleans(), st.none(), st.text(max_size=8))


@given(st.lists(st.dictionaries(st.sampled_from(["p", "H", "x_lo", "x_hi", "ok"]), scalars), min_size=1))
def test_json_round_trip(rows):
    assert json.loads(format_rows(rows, "json")) == rows


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_csv_floats_round_trip(x):
    text = format_rows([{"x": x}], "csv")
    assert float(rows_of(text)[0]["x"]) == x


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "burgess", "approx", "--n", "1", "--p", "3", "--H", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1,3,2,1,0" in proc.stdout
