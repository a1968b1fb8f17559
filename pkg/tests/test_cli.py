import csv
import io
import json

import pytest
from click.testing import CliRunner

from ekrperm import ekr_verify as ev
from ekrperm.cli import format_reports, main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)
    return invoke


def test_version(run):
    assert run("--version").exit_code == 0


def test_report_csv(run):
    r = run("report", "--group", "PSL(2,5)", "--group", "Z5:Z4")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.stdout)))
    assert rows[0] == list(ev.EkrReport.CSV_COLUMNS)
    by_name = {row[1]: row for row in rows[1:]}
    assert by_name["PSL(2,5)"][-1] == "Y"
    assert by_name["Z5:Z4"][-1] == "N"


def test_report_is_deterministic(run):
    args = ("report", "--max-degree", "7", "--format", "json")
    a, b = run(*args), run(*args)
    assert a.exit_code == b.exit_code == 0
    assert a.stdout == b.stdout
    assert all("group" in d for d in json.loads(a.stdout))


def test_report_jobs_same_output(run):
    one = run("report", "--max-degree", "7")
    two = run("report", "--max-degree", "7", "--jobs", "2")
    assert one.stdout == two.stdout


def test_report_cap_skips(run):
    r = run("report", "--group", "M12", "--cap", "1000", "--format", "json")
    assert r.exit_code == 0
    d = json.loads(r.stdout)[0]
    assert d["verdict"]["strict"] == "unknown" and "skipped" in d["notes"][0]


def test_report_extended_oracle(run, tmp_path):
    out = tmp_path / "r.json"
    r = run("report", "--max-degree", "6", "--mode", "extended", "--format", "json", "-o", str(out))
    assert r.exit_code == 0
    data = json.loads(out.read_text())
    assert all(d["oracle"] in ("yes", "no") for d in data)


def test_unknown_group(run):
    r = CliRunner().invoke(main, ["report", "--group", "nope"])
    assert r.exit_code == 2


def test_inconsistency_exit_code(monkeypatch, run):
    real = ev.strict_ekr_verdict

    def fake(*a, **k):
        rep = real(*a, **k)
        rep.oracle = "no" if rep.strict == "yes" else "yes"
        rep.strict = "yes" if rep.oracle == "no" else "no"
        return rep
    monkeypatch.setattr(ev, "strict_ekr_verdict", fake)
    r = run("report", "--group", "PSL(2,5)")
    assert r.exit_code == 1


@pytest.mark.parametrize("target,want", [
    ("gamma:5,5", "{24^2, 4^36, 0^50, -6^32}"),
    ("psl:5", "{20^1, 5^16, 0^18, -4^25}"),
    ("complete:4", "{3^1, -1^3}"),
])
def test_spectrum(run, target, want):
    r = run("spectrum", target)
    assert r.exit_code == 0 and r.stdout.strip() == want


def test_spectrum_class_option(run):
    assert run("spectrum", "sym:5", "--class", "5").stdout == run("spectrum", "gamma:5,5").stdout


def test_spectrum_graph_files(run, tmp_path):
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    r = run("spectrum", "alt:4", "--dot", str(dot), "--json", str(js))
    assert r.exit_code == 0
    assert dot.read_text().startswith("graph")
    assert json.loads(js.read_text())["vertices"] == 12


def test_conjecture_lines(run):
    r = run("conjecture", "char-bound", "5..7")
    lines = r.stdout.splitlines()
    assert [ln.split()[2] for ln in lines] == ["pass", "fail", "pass"]
    assert r.exit_code == 0


def test_conjecture_psl_rank(run):
    r = run("conjecture", "psl-rank", "3..7")
    assert [ln.split()[:3] for ln in r.stdout.splitlines()] == [
        ["psl-rank", "3", "fail"], ["psl-rank", "5", "pass"], ["psl-rank", "7", "pass"]]


def test_conjecture_limit(run):
    r = CliRunner().invoke(main, ["conjecture", "char-bound", "40"])
    assert r.exit_code == 2


def test_format_reports_round_trip():
    from ekrperm import families as fam
    reps = [ev.strict_ekr_verdict(fam.psl2(4))]
    assert json.loads(format_reports(reps, "json"))[0]["order"] == 60
    assert format_reports(reps, "csv").count("\n") == 2


def test_conjecture_value_out_of_domain():
    r = CliRunner().invoke(main, ["conjecture", "char-bound", "1..3"])
    assert r.exit_code == 2 and "at least 2" in r.output
