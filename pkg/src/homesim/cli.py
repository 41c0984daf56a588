"""Command-line entry point.

Exit codes: 0 success, 1 validation/configuration error, 2 integrity error,
3 internal error. All randomness flows from --seed (default 42). No command
mutates its inputs; outputs land only under --out.
"""

from __future__ import annotations

import functools
import json
import shutil
import sys
import tempfile
import time
from pathlib import Path

import click

from . import ENGINE_VERSION
from .catalog import CatalogError, SimulationEvent, load_catalogs, validate_home
from .homegen import GenerationRequest, generate_home
from .metrics import (
    abc,
    alf,
    dataset_quality,
    diversity_profile,
    mean_average_precision,
    min_max_normalize,
    mrr,
    msim,
    ndcg_at_k,
    precision_at_k,
    recall_at_k,
)
from .retrieval import (
    HashedNgramEmbedding,
    KnowledgeIndex,
    ProviderError,
    RetrievalError,
)
from .runtime import (
    IntegrityError,
    SimulationParameters,
    ThreatRequest,
    export_experiment,
    import_experiment,
    run_simulation,
    sweep as run_sweep,
)
from .verification import Artifact, VerificationError, run_pipeline
from . import report as rpt

DEFAULT_SEED = 42


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def handled(fn):
    """Map domain exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except IntegrityError as exc:
            _fail(2, str(exc))
        except (CatalogError, RetrievalError, ProviderError, VerificationError,
                ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
            _fail(1, str(exc))
        except click.ClickException:
            raise
        except Exception as exc:  # pragma: no cover - defensive
            _fail(3, f"internal error: {type(exc).__name__}: {exc}")

    return wrapper


def _catalogs(catalog_path):
    return load_catalogs(catalog_path)


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    tmp.replace(path)


@click.group()
def cli():
    """Deterministic smart-home simulation, retrieval, and evaluation toolkit."""


# ---------------------------------------------------------------------------
# generate / run / inject
# ---------------------------------------------------------------------------

@cli.command()
@click.option("--template", required=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--rooms", type=int, default=None, help="Room-count override.")
@click.option("--density-mult", type=float, default=1.0, show_default=True)
@click.option("--catalog", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), default=None, help="Write home.json here.")
@handled
def generate(template, seed, rooms, density_mult, catalog, out):
    """Generate one home configuration and validate it."""
    catalogs = _catalogs(catalog)
    request = GenerationRequest(template=template, seed=seed, room_count=rooms,
                                density_multiplier=density_mult)
    config = generate_home(request, catalogs)
    violations = validate_home(config, catalogs)
    click.echo(f"template={template} rooms={len(config.rooms)} "
               f"devices={len(config.devices)} inhabitants={len(config.inhabitants)} "
               f"violations={len(violations)}")
    if out:
        out_path = Path(out) / "home.json" if not str(out).endswith(".json") else Path(out)
        _write_json(out_path, config.to_dict())
        click.echo(f"wrote {out_path}")
    if violations:
        _fail(1, "; ".join(violations[:5]))


def _build_omega(params_file, template, hours, threat, gamma, window,
                 taxonomy_level, density_mult, rooms) -> SimulationParameters:
    if params_file:
        omega = SimulationParameters.from_dict(json.loads(Path(params_file).read_text()))
    else:
        omega = SimulationParameters(template=template or "studio")
    from dataclasses import replace

    if template:
        omega = replace(omega, template=template)
    if hours is not None:
        omega = replace(omega, duration_s=hours * 3600.0)
    if rooms is not None:
        omega = replace(omega, room_count=rooms)
    if density_mult is not None:
        omega = replace(omega, density_multiplier=density_mult)
    if taxonomy_level is not None:
        omega = replace(omega, taxonomy_level=taxonomy_level)
    if threat:
        win = tuple(float(w) * 3600.0 for w in window) if window else None
        requests = tuple(ThreatRequest(threat_type=t, gamma=gamma, window=win)
                         for t in threat)
        omega = replace(omega, threats=omega.threats + requests)
    return omega


def _execute_run(omega: SimulationParameters, seed: int, catalogs, out: Path,
                 fmt: str, catalog_path) -> Path:
    events, record, artifacts = run_simulation(omega, seed, catalogs)
    archive = Path(out) / "archive"
    export_experiment(record, events, artifacts, archive, write_csv=(fmt == "csv"))
    manifest = {
        "command": "run",
        "seed": seed,
        "omega": omega.to_dict(),
        "archive": str(archive),
        "format": fmt,
        "engine_version": ENGINE_VERSION,
        "catalog_version": catalogs.version,
        "catalog_path": str(catalog_path) if catalog_path else None,
        "exit_status": 0,
        "created_at": time.time(),
    }
    _write_json(Path(out) / "run_manifest.json", manifest)
    click.echo(f"exp_id={record.exp_id}")
    click.echo(f"events={len(events)} archive={archive}")
    return archive


@cli.command()
@click.option("--template", default=None)
@click.option("--params", "params_file", type=click.Path(exists=True), default=None,
              help="JSON parameter file; flags take precedence.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--hours", type=float, default=None, help="Simulated duration in hours.")
@click.option("--threat", multiple=True, help="Threat type to inject (repeatable).")
@click.option("--gamma", type=float, default=0.5, show_default=True)
@click.option("--window", nargs=2, type=float, default=None,
              help="Attack window in hours: START END.")
@click.option("--taxonomy-level", type=int, default=None)
@click.option("--density-mult", type=float, default=None)
@click.option("--rooms", type=int, default=None)
@click.option("--catalog", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), required=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl",
              show_default=True)
@click.option("--dump-traces", is_flag=True,
              help="Echo the exported presence/activity trace file path.")
@handled
def run(template, params_file, seed, hours, threat, gamma, window, taxonomy_level,
        density_mult, rooms, catalog, out, fmt, dump_traces):
    """Run the full pipeline and export a verified archive."""
    catalogs = _catalogs(catalog)
    omega = _build_omega(params_file, template, hours, threat, gamma, window,
                         taxonomy_level, density_mult, rooms)
    archive = _execute_run(omega, seed, catalogs, Path(out), fmt, catalog)
    if dump_traces:
        click.echo(f"traces={archive / 'traces.json'}")


@cli.command()
@click.option("--archive", "archive_path", type=click.Path(exists=True), required=True)
@click.option("--threat", required=True)
@click.option("--gamma", type=float, default=0.5, show_default=True)
@click.option("--window", nargs=2, type=float, default=None,
              help="Attack window in hours: START END.")
@click.option("--targets", default=None, help="Comma-separated device ids.")
@click.option("--theta-vuln", type=float, default=None)
@click.option("--taxonomy-level", type=int, default=None)
@click.option("--catalog", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), required=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl")
@handled
def inject(archive_path, threat, gamma, window, targets, theta_vuln, taxonomy_level,
           catalog, out, fmt):
    """Add an attack scenario to an existing run; benign traffic is unchanged."""
    from dataclasses import replace

    catalogs = _catalogs(catalog)
    record, _events, _artifacts, warnings = import_experiment(Path(archive_path))
    for w in warnings:
        click.echo(f"warning: {w}", err=True)
    win = tuple(float(w) * 3600.0 for w in window) if window else None
    request = ThreatRequest(
        threat_type=threat, gamma=gamma, window=win, theta_vuln=theta_vuln,
        targets=tuple(targets.split(",")) if targets else None)
    omega = replace(record.omega, threats=record.omega.threats + (request,))
    if taxonomy_level is not None:
        omega = replace(omega, taxonomy_level=taxonomy_level)
    _execute_run(omega, record.seed, catalogs, Path(out), fmt, catalog)


# ---------------------------------------------------------------------------
# verify / export / import / sweep / reproduce
# ---------------------------------------------------------------------------

def _load_artifact(path: Path) -> Artifact:
    path = Path(path)
    if path.is_dir():
        record, events, artifacts, warnings = import_experiment(path)
        for w in warnings:
            click.echo(f"warning: {w}", err=True)
        return Artifact(config=artifacts["config"], scenarios=artifacts["scenarios"],
                        events=[e.to_dict() for e in events],
                        omega=record.omega.to_dict())
    doc = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(doc, list):
        return Artifact(scenarios=doc)
    return Artifact(config=doc)


@cli.command()
@click.option("--artifact", "artifact_path", type=click.Path(exists=True), required=True,
              help="Archive directory or a config/scenario JSON file.")
@click.option("--kb", "kb_path", type=click.Path(exists=True), default=None)
@click.option("--catalog", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), default=None, help="Write the report JSON here.")
@handled
def verify(artifact_path, kb_path, catalog, out):
    """Run the six-stage validation pipeline and print the gate decision."""
    catalogs = _catalogs(catalog)
    kb = KnowledgeIndex.load(Path(kb_path), HashedNgramEmbedding()) if kb_path else None
    artifact = _load_artifact(Path(artifact_path))
    reports, decision = run_pipeline(artifact, catalogs, kb)
    for r in reports:
        click.echo(f"{r.stage:9s} score={r.score:.2f} findings={len(r.findings)}")
    click.echo(f"confidence={decision.confidence:.4f} outcome={decision.outcome}")
    if decision.outcome != "approve":
        click.echo(f"explanation: {decision.explanation}")
    if out:
        _write_json(Path(out), {"reports": [r.to_dict() for r in reports],
                                "decision": decision.to_dict()})


@cli.command("export")
@click.option("--archive", "archive_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), required=True)
@handled
def export_cmd(archive_path, out):
    """Verify an archive and copy it to a new location."""
    import_experiment(Path(archive_path))  # integrity check
    dst = Path(out)
    if dst.exists():
        _fail(1, f"destination {dst} already exists")
    shutil.copytree(archive_path, dst)
    click.echo(f"exported to {dst}")


@cli.command("import")
@click.option("--archive", "archive_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default=None,
              help="Copy the verified archive here.")
@handled
def import_cmd(archive_path, out):
    """Verify archive integrity and print its identity."""
    record, events, _artifacts, warnings = import_experiment(Path(archive_path))
    for w in warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(f"exp_id={record.exp_id} seed={record.seed} events={len(events)} "
               f"engine={record.engine_version}")
    if out:
        dst = Path(out)
        if dst.exists():
            _fail(1, f"destination {dst} already exists")
        shutil.copytree(archive_path, dst)
        click.echo(f"imported to {dst}")


@cli.command()
@click.option("--template", default="studio", show_default=True)
@click.option("--hours", type=float, default=24.0, show_default=True)
@click.option("--param", "params", multiple=True, metavar="NAME=V1,V2",
              help="Grid axis (repeatable): template, gamma, duration_s, "
                   "density_multiplier, taxonomy_level.")
@click.option("--threat", multiple=True)
@click.option("--seed-base", "--seed", "seed_base", type=int, default=DEFAULT_SEED,
              show_default=True)
@click.option("--catalog", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), required=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl")
@handled
def sweep(template, hours, params, threat, seed_base, catalog, out, fmt):
    """Cartesian-product parameter sweep; run j uses seed seed_base + j."""
    catalogs = _catalogs(catalog)
    base = SimulationParameters(
        template=template, duration_s=hours * 3600.0,
        threats=tuple(ThreatRequest(threat_type=t) for t in threat))
    grid: dict[str, list] = {}
    for spec in params:
        if "=" not in spec:
            raise ValueError(f"bad --param {spec!r}; expected NAME=V1,V2")
        name, _, raw = spec.partition("=")
        values: list = []
        for item in raw.split(","):
            try:
                values.append(float(item) if "." in item or item.lstrip("-").isdigit()
                              and name != "template" else item)
            except ValueError:
                values.append(item)
        if name in ("duration_s", "gamma", "density_multiplier"):
            values = [float(v) for v in values]
        elif name == "taxonomy_level":
            values = [int(float(v)) for v in values]
        grid[name] = values
    if not grid:
        raise ValueError("sweep needs at least one --param axis")
    records = run_sweep(base, grid, seed_base, catalogs, out_dir=Path(out),
                        write_csv=(fmt == "csv"))
    rows = [[j, r.seed, r.exp_id] for j, r in enumerate(records)]
    rpt.write_table(Path(out) / "sweep_runs.csv", ["run", "seed", "exp_id"], rows)
    for j, r in enumerate(records):
        click.echo(f"run {j}: seed={r.seed} exp_id={r.exp_id}")


@cli.command()
@click.argument("manifest_path", type=click.Path(exists=True))
@handled
def reproduce(manifest_path):
    """Re-run from a run manifest and byte-compare against the stored archive."""
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    if manifest.get("engine_version") != ENGINE_VERSION:
        _fail(1, f"engine version mismatch: manifest {manifest.get('engine_version')}, "
                 f"running {ENGINE_VERSION}")
    catalogs = _catalogs(manifest.get("catalog_path"))
    if manifest.get("catalog_version") != catalogs.version:
        _fail(1, f"catalog version mismatch: manifest {manifest.get('catalog_version')}, "
                 f"loaded {catalogs.version}")
    omega = SimulationParameters.from_dict(manifest["omega"])
    events, record, artifacts = run_simulation(omega, manifest["seed"], catalogs)
    with tempfile.TemporaryDirectory() as tmp:
        fresh = export_experiment(record, events, artifacts, Path(tmp) / "archive",
                                  write_csv=(manifest.get("format") == "csv"))
        stored = Path(manifest["archive"])
        diffs = _compare_archives(stored, fresh)
    if diffs:
        _fail(1, "reproduction diverged: " + ", ".join(diffs))
    click.echo(f"reproduced exp_id={record.exp_id}: archives byte-identical")


def _compare_archives(a: Path, b: Path) -> list[str]:
    names = sorted({p.name for p in a.iterdir() if p.is_file()}
                   | {p.name for p in b.iterdir() if p.is_file()})
    diffs = []
    for name in names:
        fa, fb = a / name, b / name
        if not fa.exists() or not fb.exists():
            diffs.append(f"{name} (missing)")
        elif fa.read_bytes() != fb.read_bytes():
            diffs.append(name)
    return diffs


# ---------------------------------------------------------------------------
# kb
# ---------------------------------------------------------------------------

@cli.group()
def kb():
    """Knowledge-base ingestion and querying."""


@kb.command("ingest")
@click.option("--index", "index_dir", type=click.Path(), required=True)
@click.option("--adapter", type=click.Choice(["academic", "threat", "device"]),
              required=True)
@click.argument("files", nargs=-1, type=click.Path(exists=True), required=True)
@handled
def kb_ingest(index_dir, adapter, files):
    """Ingest documents into the keyword + vector index."""
    provider = HashedNgramEmbedding()
    index_dir = Path(index_dir)
    if (index_dir / "meta.json").exists():
        index = KnowledgeIndex.load(index_dir, provider)
    else:
        index = KnowledgeIndex(provider)
    total = 0
    for f in files:
        n = index.ingest_file(Path(f), adapter)
        click.echo(f"{f}: {n} chunks")
        total += n
    index.save(index_dir)
    click.echo(f"indexed {total} chunks across {len(files)} documents "
               f"({len(index)} total)")


@kb.command("query")
@click.option("--index", "index_dir", type=click.Path(exists=True), required=True)
@click.option("--mode", type=click.Choice(["hybrid", "semantic", "keyword"]),
              default="hybrid", show_default=True)
@click.option("--k", type=int, default=10, show_default=True)
@click.argument("query")
@handled
def kb_query(index_dir, mode, k, query):
    """Query the index and print the ranked chunks."""
    index = KnowledgeIndex.load(Path(index_dir), HashedNgramEmbedding())
    results = index.retrieve(query, k=k, mode=mode)
    chunk_by_id = {c.chunk_id: c for c in index.chunks}
    for i, r in enumerate(results, start=1):
        chunk = chunk_by_id[r.chunk_id]
        preview = " ".join(chunk.tokens[:12])
        click.echo(f"{i:2d}. {r.chunk_id} score={r.score:.6f} [{chunk.adapter}] {preview}")


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

@cli.group("eval")
def eval_group():
    """Evaluation harness: metric tables with companion figures."""


@eval_group.command("ir")
@click.option("--index", "index_dir", type=click.Path(exists=True), required=True)
@click.option("--queries", "queries_file", type=click.Path(exists=True), required=True,
              help='JSON: [{"query": ..., "relevant": [chunk ids]}].')
@click.option("--k", "ks_raw", default="1,5,10,20", show_default=True)
@click.option("--out", type=click.Path(), required=True)
@handled
def eval_ir(index_dir, queries_file, ks_raw, out):
    """Precision/recall/nDCG at K plus MRR and MAP, per retrieval mode."""
    index = KnowledgeIndex.load(Path(index_dir), HashedNgramEmbedding())
    queries = json.loads(Path(queries_file).read_text(encoding="utf-8"))
    ks = [int(k) for k in ks_raw.split(",")]
    per_mode = {}
    for mode in ("hybrid", "semantic", "keyword"):
        rankings = []
        judgments = []
        for q in queries:
            results = index.retrieve(q["query"], k=max(ks), mode=mode)
            rankings.append([r.chunk_id for r in results])
            judgments.append(set(q["relevant"]))
        stats = {}
        for k in ks:
            stats[f"precision@{k}"] = sum(precision_at_k(r, j, k)
                                          for r, j in zip(rankings, judgments)) / len(queries)
            stats[f"recall@{k}"] = sum(recall_at_k(r, j, k)
                                       for r, j in zip(rankings, judgments)) / len(queries)
            stats[f"ndcg@{k}"] = sum(ndcg_at_k(r, j, k)
                                     for r, j in zip(rankings, judgments)) / len(queries)
        stats["mrr"] = mrr(rankings, judgments)
        stats["map"] = mean_average_precision(rankings, judgments)
        per_mode[mode] = stats

    header = ["mode"] + [f"{m}@{k}" for m in ("precision", "recall", "ndcg") for k in ks] \
        + ["mrr", "map"]
    rows = []
    for mode, stats in per_mode.items():
        rows.append([mode] + [round(stats[f"{m}@{k}"], 6)
                              for m in ("precision", "recall", "ndcg") for k in ks]
                    + [round(stats["mrr"], 6), round(stats["map"], 6)])
    table = rpt.write_table(Path(out) / "ir_metrics.csv", header, rows)
    figures = rpt.ir_figures(per_mode, ks, Path(out))
    click.echo(f"wrote {table}")
    for f in figures:
        click.echo(f"wrote {f}")


def _load_archive_events(path: Path) -> tuple[list[SimulationEvent], dict]:
    record, events, artifacts, warnings = import_experiment(Path(path))
    for w in warnings:
        click.echo(f"warning: {w}", err=True)
    return events, artifacts


@eval_group.command("threat")
@click.option("--archive", "archive_path", type=click.Path(exists=True), required=True)
@click.option("--catalog", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), required=True)
@handled
def eval_threat(archive_path, catalog, out):
    """ABC and ALF per injected threat scenario."""
    catalogs = _catalogs(catalog)
    events, artifacts = _load_archive_events(Path(archive_path))
    registry = catalogs.threat_registry
    rows = []
    for s in artifacts["scenarios"]:
        threat_type = s["threat_type"]
        spec = registry.spec(threat_type)
        scenario_events = [e for e in events if e.scenario_id == s["scenario_id"]]
        alf_r = alf(scenario_events)
        row = {"threat_type": threat_type,
               "alf_coverage": alf_r.coverage, "alf_ordering": alf_r.ordering_valid,
               "alf_pass": alf_r.passed}
        if spec.indicators:
            abc_r = abc(scenario_events, spec.indicators)
            row.update({"abc_matched": abc_r.matched, "abc_total": abc_r.total,
                        "abc_coverage": abc_r.coverage, "abc_pass": abc_r.passed})
        else:
            row.update({"abc_matched": 0, "abc_total": 0, "abc_coverage": 0.0,
                        "abc_pass": False})
        rows.append(row)
    if not rows:
        _fail(1, "archive contains no attack scenarios")
    header = ["threat_type", "abc_matched", "abc_total", "abc_coverage", "abc_pass",
              "alf_coverage", "alf_ordering", "alf_pass"]
    table = rpt.write_table(Path(out) / "threat_fidelity.csv", header,
                            [[r[h] for h in header] for r in rows])
    figures = rpt.threat_figures(rows, Path(out))
    click.echo(f"wrote {table}")
    for f in figures:
        click.echo(f"wrote {f}")


@eval_group.command("msim")
@click.option("--archive", "archive_path", type=click.Path(exists=True), required=True)
@click.option("--schema", "schema_file", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), required=True)
@handled
def eval_msim(archive_path, schema_file, out):
    """Message similarity of generated telemetry against a reference schema."""
    events, _ = _load_archive_events(Path(archive_path))
    schema = json.loads(Path(schema_file).read_text(encoding="utf-8"))
    covered = [e for e in events if e.device_type in schema]
    skipped = {e.device_type for e in events} - set(schema)
    if skipped:
        click.echo(f"note: {len(skipped)} device types not in schema, skipped: "
                   f"{', '.join(sorted(skipped)[:8])}...", err=True)
    if not covered:
        _fail(1, "no events match the reference schema's device types")
    result = msim(covered, schema)
    header = ["field_coverage", "type_compat", "range_overlap", "semantic_sim", "combined"]
    row = [round(getattr(result, h), 6) for h in header]
    table = rpt.write_table(Path(out) / "msim.csv", header, [row])
    click.echo(f"wrote {table}")
    click.echo(" ".join(f"{h}={v}" for h, v in zip(header, row)))


@eval_group.command("quality")
@click.option("--archive", "archives", type=click.Path(exists=True), multiple=True,
              required=True, help="Repeatable; 2+ archives enable normalization.")
@click.option("--out", type=click.Path(), required=True)
@handled
def eval_quality(archives, out):
    """Seven-dimension dataset quality table (+ heatmap when comparing)."""
    names, profiles = [], []
    for a in archives:
        events, _ = _load_archive_events(Path(a))
        names.append(Path(a).parent.name or Path(a).name)
        profiles.append(dataset_quality(events))
    metric_names = ["scale", "feature_count", "balance", "attack_diversity",
                    "temporal_uniformity", "source_diversity", "taxonomy_depth"]
    raw = {m: [getattr(p, m) for p in profiles] for m in metric_names}
    header = ["metric"] + names
    rows = [[m] + [round(v, 6) if isinstance(v, float) else v for v in raw[m]]
            for m in metric_names]
    table = rpt.write_table(Path(out) / "quality.csv", header, rows)
    click.echo(f"wrote {table}")
    if len(archives) >= 2:
        normalized, flags = min_max_normalize({m: [float(v) for v in raw[m]]
                                               for m in metric_names})
        norm_rows = [[m] + [round(v, 6) for v in normalized[m]] + [flags[m]]
                     for m in metric_names]
        ntable = rpt.write_table(Path(out) / "quality_normalized.csv",
                                 header + ["constant_row"], norm_rows)
        figure = rpt.quality_heatmap(metric_names, names, normalized, raw, Path(out))
        click.echo(f"wrote {ntable}")
        click.echo(f"wrote {figure}")


@eval_group.command("diversity")
@click.option("--archive", "archives", type=click.Path(exists=True), multiple=True,
              required=True)
@click.option("--out", type=click.Path(), required=True)
@handled
def eval_diversity(archives, out):
    """Normalized entropy and Gini of the event distribution per archive."""
    rows = []
    for a in archives:
        events, artifacts = _load_archive_events(Path(a))
        d = diversity_profile(events)
        rows.append({"name": Path(a).parent.name or Path(a).name,
                     "devices": len(artifacts["config"]["devices"]),
                     "events": len(events),
                     "unique_types": d.unique_types,
                     "unique_categories": d.unique_categories,
                     "type_entropy": round(d.type_entropy, 6),
                     "category_entropy": round(d.category_entropy, 6),
                     "gini": round(d.gini, 6)})
    header = ["name", "devices", "events", "unique_types", "unique_categories",
              "type_entropy", "category_entropy", "gini"]
    table = rpt.write_table(Path(out) / "diversity.csv", header,
                            [[r[h] for h in header] for r in rows])
    figures = rpt.diversity_figures(rows, Path(out))
    click.echo(f"wrote {table}")
    for f in figures:
        click.echo(f"wrote {f}")


cli.add_command(run, name="simulate")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
