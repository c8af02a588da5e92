from __future__ import annotations

import json

import pytest

from dividing_lines.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_USAGE, run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(tmp_path, capsys):
    p = tmp_path / "t.csv"
    p.write_text("0,1\n1,0\n")
    code, out, _ = run(capsys, "validate", "--input", str(p))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["valid"] and doc["n_rows"] == 2
    assert doc["provenance"]["tool"] == "dividing-lines"


def test_validate_ragged_csv(tmp_path, capsys):
    p = tmp_path / "t.csv"
    p.write_text("0,1\n1\n")
    code, _, err = run(capsys, "validate", "--input", str(p))
    assert code == EXIT_INVALID
    assert err.strip()


def test_validate_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "validate", "--input", str(tmp_path / "absent.csv"))
    assert code == EXIT_INVALID


def test_usage_errors(tmp_path, capsys):
    p = tmp_path / "t.csv"
    p.write_text("0,1\n")
    assert run(capsys, "analyze", "--input", str(p), "--s", "2", "--r", "1")[0] == EXIT_USAGE
    assert run(capsys, "analyze", "--no-such-flag")[0] == EXIT_USAGE
    assert run(capsys, "no-such-command")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_budget_exit(tmp_path, capsys):
    p = tmp_path / "t.csv"
    p.write_text("\n".join(",".join("1" for _ in range(3)) for _ in range(40)) + "\n")
    code, _, _ = run(capsys, "talagrand", "--input", str(p), "--kmax", "3")
    assert code == EXIT_BUDGET


def test_generate_analyze_validate_pipeline(tmp_path, capsys):
    table = tmp_path / "t.json"
    report = tmp_path / "report.json"
    code, _, _ = run(
        capsys, "generate", "--kind", "half_graph", "--n", "5", "--out", str(table)
    )
    assert code == EXIT_OK
    code, _, _ = run(
        capsys, "analyze", "--input", str(table), "--out", str(report)
    )
    assert code == EXIT_OK
    doc = json.loads(report.read_text())
    assert doc["ladder"]["length"] == 5
    assert doc["schema"] == "dl-report/1"
    code, out, _ = run(
        capsys, "analyze", "--input", str(table), "--validate-report", str(report)
    )
    assert code == EXIT_OK
    assert json.loads(out)["revalidated"] is True


def test_analyze_text_output(tmp_path, capsys):
    table = tmp_path / "t.json"
    run(capsys, "generate", "--kind", "half_graph", "--n", "3", "--out", str(table))
    code, out, _ = run(capsys, "analyze", "--input", str(table), "--output", "text")
    assert code == EXIT_OK
    assert "ladder:" in out and "{" not in out.splitlines()[0]


def test_generate_cantor_with_target(tmp_path, capsys):
    table = tmp_path / "c.json"
    target = tmp_path / "target.json"
    code, _, _ = run(
        capsys, "generate", "--kind", "cantor_example", "--m", "2", "--L", "4",
        "--out", str(table), "--target-out", str(target),
    )
    assert code == EXIT_OK
    doc = json.loads(table.read_text())
    assert len(doc["entries"]) == 16
    tgt = json.loads(target.read_text())["target"]
    assert len(tgt) == 16 and set(tgt) <= {0.0, 1.0}


def test_talagrand_exact_and_mc(tmp_path, capsys):
    table = tmp_path / "t.json"
    run(capsys, "generate", "--kind", "half_graph", "--n", "4", "--out", str(table))
    code, out, _ = run(capsys, "talagrand", "--input", str(table), "--kmax", "2")
    assert code == EXIT_OK
    exact = json.loads(out)
    assert [r["k"] for r in exact["reports"]] == [1, 2]
    code, out, _ = run(
        capsys, "talagrand", "--input", str(table), "--kmax", "1",
        "--mc-samples", "500", "--seed", "11",
    )
    assert code == EXIT_OK
    mc = json.loads(out)
    assert mc["reports"][0]["mode"] == "mc"
    assert mc["reports"][0]["samples"] == 500


def test_dichotomy_scan_cli(capsys):
    code, out, _ = run(
        capsys, "dichotomy-scan", "--kind", "random_table", "--rows", "4",
        "--cols", "4", "--trials", "5", "--seed", "2",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["trials"] == 5
    assert len(doc["trial_digests"]) == 5


def test_mazur_cli(tmp_path, capsys):
    table = tmp_path / "t.json"
    target = tmp_path / "tgt.json"
    run(capsys, "generate", "--kind", "half_graph", "--n", "4", "--out", str(table))
    target.write_text(json.dumps({"target": [1.0, 1.0, 1.0, 0.0]}))
    code, out, _ = run(
        capsys, "mazur", "--table", str(table), "--cols", "1,2,3", "--target", str(target)
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["weights"]) == 3
    assert doc["achieved"] >= 0.0


def test_reports_byte_identical_across_runs(tmp_path, capsys):
    table = tmp_path / "t.json"
    report = tmp_path / "r.json"
    outs = []
    for _ in range(2):
        run(capsys, "generate", "--kind", "random_table", "--rows", "5", "--cols", "5",
            "--seed", "13", "--out", str(table))
        run(capsys, "analyze", "--input", str(table), "--out", str(report))
        outs.append((table.read_bytes(), report.read_bytes()))
    assert outs[0] == outs[1]
