import json
import subprocess
import sys

import pytest

from pgverify import cli
from pgverify.report import VerificationReport, parse_text_verdicts
from pgverify.verdict import Verdict, combine


def run(*argv):
    return cli.run(list(argv))


def test_catalog():
    code, text = run("catalog", "--format", "json")
    assert code == 0
    rows = json.loads(text)["catalog"]
    assert {"spec": "heisenberg:3", "order": 27} == {k: rows[5][k] for k in ("spec", "order")}
    code, text = run("catalog", "--format", "text")
    assert "extraspecial5:3" in text


def test_check_chi_on_rank_one_group_is_inapplicable():
    code, text = run("check-chi", "--group", "cyclic:9")
    report = json.loads(text)
    assert code == 0
    assert report["schema"] == 1
    assert report["hypotheses"]["rank_three"] == "fail"
    assert report["summary"] == "inapplicable"
    assert all(s["verdict"] == "inapplicable" for s in report["sections"])
    assert all(s["anchor"] for s in report["sections"])


def test_check_biset_and_rank1():
    code, text = run("check-biset", "--group", "heisenberg:3")
    assert code == 0 and json.loads(text)["summary"] == "pass"
    code, text = run("check-rank1", "--group", "heisenberg:3", "--format", "text")
    assert code == 0 and "[pass] rank_one_star_diagram" in text


def test_table_command():
    code, text = run("table", "--group", "cyclic:3", "--format", "text")
    assert code == 0
    assert "[pass] character_table_exact" in text
    assert text.count("conductor 3") == 3
    code, text = run("table", "--group", "heisenberg:3")
    report = json.loads(text)
    assert report["extra"]["degrees"] == [1] * 9 + [3, 3]
    assert report["extra"]["table"].count("conductor") == 11


@pytest.mark.parametrize("argv", [
    ["check-chi", "--group", "nosuch:3"],
    ["check-chi"],
    ["check-rank1", "--group", "cyclic:9", "--n", "5"],
    ["check-biset", "--group", "cyclic:9", "--triple", "1ff", "7", "1"],
    ["check-biset", "--group", "cyclic:9", "--triple", "1ff", "1", "1"],
    ["check-chi", "--group", "cyclic:9", "--triple", "1", "1", "1"],
    ["check-chi", "--group", "cyclic:9", "--jobs", "0"],
    ["check-chi", "--group", "file:/nonexistent/path"],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    proc = subprocess.run([sys.executable, "-m", "pgverify.cli", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_failure_exit_code(monkeypatch, capsys):
    bad = Verdict.of("biset_bijection_sweep", False, "claim", {"H": "7"})
    monkeypatch.setattr(cli, "sweep_mu", lambda *a, **k: bad)
    assert cli.main(["check-biset", "--group", "cyclic:9"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["summary"] == "fail" and report["sections"][0]["witness"] == {"H": "7"}


def test_output_file_and_max_order(tmp_path):
    out = tmp_path / "r.json"
    code, text = run("check-all", "--group", "heisenberg:3", "--output", str(out))
    assert code == 0 and text == ""
    report = VerificationReport.from_json(out.read_text())
    assert report.summary == "pass"
    code, text = run("check-all", "--group", "heisenberg:3", "--max-order", "9")
    data = json.loads(text)
    assert data["summary"] == "inapplicable"
    assert all("--max-order" in s["details"]["reason"] for s in data["sections"])


def test_round_trip_and_formats():
    code, js = run("check-all", "--group", "elemab:3,2")
    rep = VerificationReport.from_json(js)
    assert rep.to_json() == js
    code, txt = run("check-all", "--group", "elemab:3,2", "--format", "text")
    assert parse_text_verdicts(txt) == rep.verdicts()
    assert txt.rstrip().endswith("summary: pass")


def test_report_rejects_tampering():
    code, js = run("check-biset", "--group", "cyclic:9")
    data = json.loads(js)
    data["summary"] = "fail"
    with pytest.raises(ValueError):
        VerificationReport.from_json(json.dumps(data))
    data["schema"] = 2
    with pytest.raises(ValueError):
        VerificationReport.from_json(json.dumps(data))


def test_timings_only_when_requested():
    _, plain = run("check-rank1", "--group", "cyclic:9")
    _, timed = run("check-rank1", "--group", "cyclic:9", "--timings")
    assert "wall_time" not in plain and "wall_time" in timed


def test_deterministic_across_jobs():
    a = run("check-all", "--group", "heisenberg:3", "--jobs", "1")
    b = run("check-all", "--group", "heisenberg:3", "--jobs", "2")
    c = run("check-all", "--group", "heisenberg:3")
    assert a == b == c


def test_verdict_helpers():
    parts = [Verdict.of("x", True), Verdict.inapplicable("y", "n/a")]
    assert combine("z", parts).passed
    assert combine("z", [Verdict.inapplicable("y", "n/a")]).status == "inapplicable"
    bad = combine("z", parts + [Verdict.of("w", False, "", {"k": 1})])
    assert bad.failed and bad.witness == {"part": "w", "k": 1}
    assert Verdict.from_dict(bad.to_dict()).to_dict() == bad.to_dict()
    with pytest.raises(ValueError):
        Verdict("q", "maybe")
