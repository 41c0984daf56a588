from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from homesim.cli import cli


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def run_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "r1"
    result = CliRunner().invoke(cli, ["run", "--template", "studio", "--seed", "42",
                                      "--hours", "24", "--out", str(out)])
    assert result.exit_code == 0, result.output
    return out


def test_run_writes_archive_and_manifest(run_dir):
    archive = run_dir / "archive"
    for name in ("manifest.json", "config.json", "traces.json", "scenarios.json",
                 "events.jsonl", "digests.json"):
        assert (archive / name).exists()
    manifest = json.loads((run_dir / "run_manifest.json").read_text())
    assert manifest["seed"] == 42
    assert manifest["exit_status"] == 0
    assert manifest["omega"]["template"] == "studio"


def test_generate_counts(runner):
    result = runner.invoke(cli, ["generate", "--template", "mansion", "--seed", "42"])
    assert result.exit_code == 0
    assert "rooms=21" in result.output
    assert "devices=97" in result.output
    assert "inhabitants=6" in result.output


def test_generate_unknown_template(runner):
    result = runner.invoke(cli, ["generate", "--template", "castle"])
    assert result.exit_code == 1
    assert "unknown template" in result.output


def test_run_gamma_out_of_range(runner, tmp_path):
    result = runner.invoke(cli, ["run", "--template", "studio", "--threat",
                                 "denial_of_service", "--gamma", "1.5",
                                 "--hours", "1", "--out", str(tmp_path / "x")])
    assert result.exit_code == 1
    assert "gamma" in result.output


def test_reproduce_fresh_run(runner, run_dir):
    result = runner.invoke(cli, ["reproduce", str(run_dir / "run_manifest.json")])
    assert result.exit_code == 0
    assert "byte-identical" in result.output


def test_reproduce_after_edit_diverges(runner, run_dir, tmp_path):
    import shutil

    copy = tmp_path / "r1-copy"
    shutil.copytree(run_dir, copy)
    manifest = json.loads((copy / "run_manifest.json").read_text())
    manifest["archive"] = str(copy / "archive")
    manifest["omega"]["duration_s"] = 3600.0  # edited config
    (copy / "run_manifest.json").write_text(json.dumps(manifest))
    result = runner.invoke(cli, ["reproduce", str(copy / "run_manifest.json")])
    assert result.exit_code == 1
    assert "diverged" in result.output


def test_import_tampered_exits_two(runner, run_dir, tmp_path):
    import shutil

    copy = tmp_path / "tampered"
    shutil.copytree(run_dir / "archive", copy)
    target = copy / "events.jsonl"
    data = bytearray(target.read_bytes())
    data[10] ^= 0x01
    target.write_bytes(bytes(data))
    result = runner.invoke(cli, ["import", "--archive", str(copy)])
    assert result.exit_code == 2
    assert "digest mismatch" in result.output


def test_export_then_import(runner, run_dir, tmp_path):
    dst = tmp_path / "exported"
    result = runner.invoke(cli, ["export", "--archive", str(run_dir / "archive"),
                                 "--out", str(dst)])
    assert result.exit_code == 0
    result = runner.invoke(cli, ["import", "--archive", str(dst)])
    assert result.exit_code == 0
    assert "exp_id=" in result.output


def test_inject_and_eval_threat(runner, run_dir, tmp_path):
    out = tmp_path / "injected"
    result = runner.invoke(cli, ["inject", "--archive", str(run_dir / "archive"),
                                 "--threat", "ransomware", "--gamma", "0.6",
                                 "--out", str(out)])
    assert result.exit_code == 0, result.output
    eval_out = tmp_path / "eval"
    result = runner.invoke(cli, ["eval", "threat", "--archive", str(out / "archive"),
                                 "--out", str(eval_out)])
    assert result.exit_code == 0, result.output
    table = (eval_out / "threat_fidelity.csv").read_text()
    assert "ransomware" in table
    assert (eval_out / "threat_fidelity.png").exists()


def test_verify_command(runner, run_dir, tmp_path):
    report = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", "--artifact", str(run_dir / "archive"),
                                 "--out", str(report)])
    assert result.exit_code == 0, result.output
    assert "outcome=approve" in result.output
    doc = json.loads(report.read_text())
    assert len(doc["reports"]) == 6


def test_sweep_seeds(runner, tmp_path):
    out = tmp_path / "sweep"
    result = runner.invoke(cli, ["sweep", "--template", "studio", "--hours", "1",
                                 "--param", "template=studio,one_bedroom",
                                 "--param", "duration_s=1800,3600",
                                 "--seed-base", "42", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "seed=42" in result.output and "seed=45" in result.output
    rows = (out / "sweep_runs.csv").read_text().splitlines()
    assert len(rows) == 5  # header + 4 runs
    assert (out / "run-003" / "events.jsonl").exists()


def test_kb_ingest_query(runner, tmp_path):
    doc = tmp_path / "cve.md"
    doc.write_text("CVE-2024-0001 affects zigbee smart locks; mitigations pending.")
    idx = tmp_path / "idx"
    result = runner.invoke(cli, ["kb", "ingest", "--index", str(idx),
                                 "--adapter", "threat", str(doc)])
    assert result.exit_code == 0, result.output
    result = runner.invoke(cli, ["kb", "query", "--index", str(idx),
                                 "--mode", "hybrid", "--k", "3",
                                 "zigbee smart locks"])
    assert result.exit_code == 0
    assert "cve:0000" in result.output


def test_kb_duplicate_doc_exits_one(runner, tmp_path):
    doc = tmp_path / "note.txt"
    doc.write_text("hub pairing instructions")
    idx = tmp_path / "idx2"
    assert runner.invoke(cli, ["kb", "ingest", "--index", str(idx), "--adapter",
                               "device", str(doc)]).exit_code == 0
    result = runner.invoke(cli, ["kb", "ingest", "--index", str(idx), "--adapter",
                                 "device", str(doc)])
    assert result.exit_code == 1
    assert "duplicate" in result.output


def test_eval_ir_outputs(runner, tmp_path):
    idx = tmp_path / "idx3"
    docs = []
    for i in range(6):
        p = tmp_path / f"doc{i}.txt"
        p.write_text(f"knowledge fragment {i} mentions beacon-{i} extensively")
        docs.append(str(p))
    assert runner.invoke(cli, ["kb", "ingest", "--index", str(idx), "--adapter",
                               "academic", *docs]).exit_code == 0
    queries = tmp_path / "queries.json"
    queries.write_text(json.dumps([
        {"query": f"beacon-{i} fragment", "relevant": [f"doc{i}:0000"]} for i in range(6)]))
    out = tmp_path / "ir"
    result = runner.invoke(cli, ["eval", "ir", "--index", str(idx),
                                 "--queries", str(queries), "--k", "1,3,5",
                                 "--out", str(out)])
    assert result.exit_code == 0, result.output
    table = (out / "ir_metrics.csv").read_text().splitlines()
    assert table[0].startswith("mode,precision@1")
    assert len(table) == 4  # header + hybrid/semantic/keyword
    assert (out / "ir_at_k.png").exists()
    assert (out / "ir_summary.png").exists()


def test_eval_quality_and_diversity(runner, run_dir, tmp_path):
    out2 = tmp_path / "r2"
    assert runner.invoke(cli, ["run", "--template", "one_bedroom", "--seed", "42",
                               "--hours", "24", "--out", str(out2)]).exit_code == 0
    qdir = tmp_path / "quality"
    result = runner.invoke(cli, ["eval", "quality",
                                 "--archive", str(run_dir / "archive"),
                                 "--archive", str(out2 / "archive"),
                                 "--out", str(qdir)])
    assert result.exit_code == 0, result.output
    assert (qdir / "quality.csv").exists()
    assert (qdir / "quality_normalized.csv").exists()
    assert (qdir / "quality_heatmap.png").exists()

    ddir = tmp_path / "diversity"
    result = runner.invoke(cli, ["eval", "diversity",
                                 "--archive", str(run_dir / "archive"),
                                 "--archive", str(out2 / "archive"),
                                 "--out", str(ddir)])
    assert result.exit_code == 0, result.output
    assert (ddir / "diversity.csv").exists()
    assert (ddir / "diversity.png").exists()
    assert (ddir / "scaling.png").exists()


def test_eval_msim_with_packaged_schema(runner, run_dir, tmp_path):
    from homesim.catalog import default_data_dir

    schema = default_data_dir() / "reference_schema.json"
    out = tmp_path / "msim"
    result = runner.invoke(cli, ["eval", "msim", "--archive", str(run_dir / "archive"),
                                 "--schema", str(schema), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert (out / "msim.csv").exists()
    assert "combined=" in result.output


def test_csv_format_flag(runner, tmp_path):
    out = tmp_path / "csvrun"
    result = runner.invoke(cli, ["run", "--template", "studio", "--seed", "7",
                                 "--hours", "2", "--out", str(out),
                                 "--format", "csv"])
    assert result.exit_code == 0
    csv_path = out / "archive" / "events.csv"
    assert csv_path.exists()
    header = csv_path.read_text().splitlines()[0]
    assert header.startswith("timestamp,device_id,device_type,category,room,protocol,event_kind")
    assert header.endswith("taxonomy_7")
    # the CSV projection is digest-covered, so replays must reproduce it too
    result = runner.invoke(cli, ["reproduce", str(out / "run_manifest.json")])
    assert result.exit_code == 0, result.output


def test_simulate_alias_dump_traces(runner, tmp_path):
    out = tmp_path / "sim"
    result = runner.invoke(cli, ["simulate", "--template", "studio", "--hours", "1",
                                 "--out", str(out), "--dump-traces"])
    assert result.exit_code == 0
    assert "traces=" in result.output
    assert (out / "archive" / "traces.json").exists()


def test_sweep_seed_alias(runner, tmp_path):
    out = tmp_path / "sw"
    result = runner.invoke(cli, ["sweep", "--template", "studio", "--hours", "1",
                                 "--param", "duration_s=1800,3600",
                                 "--seed", "7", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "seed=7" in result.output and "seed=8" in result.output
