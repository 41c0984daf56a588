"""Seed-controlled end-to-end simulation runs.

A run is a pure function of (catalog version, engine version, seed, parameter
set): generate home -> simulate behavior -> generate attack scenarios ->
merge events in timestamp order -> label everything. Each stage draws from
its own salted stream, so adding a threat scenario never shifts a benign
event. Archives are directories of canonically-serialized artifacts plus a
digest file; import verifies integrity before anything is trusted.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, replace
from itertools import product
from pathlib import Path
from typing import Optional

from . import ENGINE_VERSION
from .behavior import PresenceTrace, diurnal_period, simulate_behavior
from .canon import canonical_json, digest_of, file_digest, sha256_hex, stable_hash64
from .catalog import Catalogs, HomeConfiguration, InhabitantProfile, SimulationEvent
from .homegen import GenerationRequest, generate_home
from .rng import Stream, derive_stream
from .threats import AttackScenario, generate_scenario, label_all, select_targets

ARCHIVE_FORMAT_VERSION = 1
DAY_SECONDS = 86400.0


class IntegrityError(Exception):
    """An archive artifact failed digest verification."""


@dataclass(frozen=True)
class ThreatRequest:
    threat_type: str
    gamma: float = 0.5
    window: Optional[tuple[float, float]] = None   # default: middle half of the run
    theta_vuln: Optional[float] = None
    targets: Optional[tuple[str, ...]] = None

    def to_dict(self) -> dict:
        return {"threat_type": self.threat_type, "gamma": self.gamma,
                "window": list(self.window) if self.window else None,
                "theta_vuln": self.theta_vuln,
                "targets": list(self.targets) if self.targets else None}

    @classmethod
    def from_dict(cls, d: dict) -> "ThreatRequest":
        return cls(threat_type=d["threat_type"], gamma=float(d.get("gamma", 0.5)),
                   window=tuple(d["window"]) if d.get("window") else None,
                   theta_vuln=d.get("theta_vuln"),
                   targets=tuple(d["targets"]) if d.get("targets") else None)


@dataclass(frozen=True)
class SimulationParameters:
    """Complete run configuration; hashed into the experiment identity."""

    template: str
    room_count: Optional[int] = None
    density_multiplier: float = 1.0
    residents: Optional[tuple[InhabitantProfile, ...]] = None  # None = template default
    threats: tuple[ThreatRequest, ...] = ()
    duration_s: float = DAY_SECONDS
    compression: float = 1440.0
    protocols: Optional[tuple[str, ...]] = None                # None = all catalog protocols
    taxonomy_level: int = 7

    def validate(self, catalogs: Catalogs) -> None:
        if self.duration_s <= 0:
            raise ValueError("duration must be > 0")
        if self.compression < 1:
            raise ValueError("time compression must be >= 1")
        if self.protocols is not None:
            if not self.protocols:
                raise ValueError("protocol subset must be non-empty")
            unknown = set(self.protocols) - set(catalogs.protocols)
            if unknown:
                raise ValueError(f"unknown protocols: {sorted(unknown)}")
        if not (1 <= self.taxonomy_level <= 7):
            raise ValueError("taxonomy_level must lie in [1,7]")
        for req in self.threats:
            if not (0.0 <= req.gamma <= 1.0):
                raise ValueError(f"gamma {req.gamma} outside [0,1]")
            catalogs.threat_registry.spec(req.threat_type)

    def to_dict(self) -> dict:
        return {
            "template": self.template,
            "room_count": self.room_count,
            "density_multiplier": self.density_multiplier,
            "residents": [p.to_dict() for p in self.residents] if self.residents else None,
            "threats": [t.to_dict() for t in self.threats],
            "duration_s": self.duration_s,
            "compression": self.compression,
            "protocols": list(self.protocols) if self.protocols else None,
            "taxonomy_level": self.taxonomy_level,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimulationParameters":
        return cls(
            template=d["template"],
            room_count=d.get("room_count"),
            density_multiplier=float(d.get("density_multiplier", 1.0)),
            residents=tuple(InhabitantProfile.from_dict(p) for p in d["residents"])
            if d.get("residents") else None,
            threats=tuple(ThreatRequest.from_dict(t) for t in d.get("threats", [])),
            duration_s=float(d.get("duration_s", DAY_SECONDS)),
            compression=float(d.get("compression", 1440.0)),
            protocols=tuple(d["protocols"]) if d.get("protocols") else None,
            taxonomy_level=int(d.get("taxonomy_level", 7)),
        )


@dataclass
class ExperimentRecord:
    seed: int
    omega: SimulationParameters
    engine_version: str
    catalog_version: str
    exp_id: str
    artifact_digests: dict[str, str]
    timestamp: float = 0.0   # wall time; kept out of the archive so replays are byte-identical

    def to_manifest(self) -> dict:
        return {
            "format_version": ARCHIVE_FORMAT_VERSION,
            "exp_id": self.exp_id,
            "seed": self.seed,
            "engine_version": self.engine_version,
            "catalog_version": self.catalog_version,
            "omega": self.omega.to_dict(),
            "artifacts": self.artifact_digests,
        }


def experiment_id(seed: int, omega: SimulationParameters, version: str) -> str:
    """Stable digest over the canonical (seed, parameters, version) triple."""
    return digest_of({"seed": seed, "omega": omega.to_dict(), "version": version})


# ---------------------------------------------------------------------------
# Benign traffic emission
# ---------------------------------------------------------------------------

def _activation_by_category(traces: list[PresenceTrace], profiles: list[InhabitantProfile],
                            tick_index: int, t: float, catalogs: Catalogs,
                            ) -> dict[str, tuple[float, str]]:
    """Best (likelihood, inhabitant) per device category at one tick."""
    best: dict[str, tuple[float, str]] = {}
    for trace, profile in zip(traces, profiles):
        if tick_index >= len(trace.present) or not trace.present[tick_index]:
            continue
        state = trace.activity[tick_index]
        if state is None:
            continue
        allowed = catalogs.chi.get(profile.kind, ())
        context_row = catalogs.phi_context.get(state, {})
        temporal = catalogs.phi_temporal[diurnal_period(t)]
        tech = catalogs.phi_tech["floor"] + catalogs.phi_tech["slope"] * profile.tech_savviness
        for category, affinity in context_row.items():
            if category not in allowed:
                continue
            f = temporal * tech * affinity
            if f > best.get(category, (0.0, ""))[0]:
                best[category] = (f, profile.id)
    return best


def emit_benign_events(config: HomeConfiguration, traces: list[PresenceTrace],
                       profiles: list[InhabitantProfile], catalogs: Catalogs,
                       stream: Stream, duration_s: float,
                       enabled_protocols: set[str]) -> list[SimulationEvent]:
    """Periodic telemetry plus presence-driven state changes for every device.

    Devices whose protocols are all disabled stay silent. Devices without a
    telemetry interval still emit one daily check-in so every placed device
    appears in the log.
    """
    events: list[SimulationEvent] = []
    tick = float(config.behavior_params.get("tick_seconds", 60))
    n_ticks = int(duration_s // tick)

    devices = sorted(config.devices, key=lambda d: d.id)
    dev_protocol: dict[str, str] = {}
    for dev in devices:
        entry = catalogs.device_types[dev.type_name]
        usable = [p for p in entry.protocols if p in enabled_protocols]
        if usable:
            dev_protocol[dev.id] = usable[0]

    # Periodic reporting: network devices emit packets, the rest telemetry.
    for dev in devices:
        if dev.id not in dev_protocol:
            continue
        entry = catalogs.device_types[dev.type_name]
        interval = entry.telemetry_interval_s if entry.telemetry_interval_s > 0 else DAY_SECONDS
        offset = stable_hash64(dev.id) % int(interval)
        kind = "network-packet" if dev.category == "network" else "telemetry"
        t = float(offset)
        while t < duration_s:
            payload = {}
            for fname in sorted(entry.value_ranges):
                lo, hi = entry.value_ranges[fname]
                payload[fname] = round(stream.uniform(lo, hi), 3)
            if kind == "network-packet":
                payload["bytes"] = int(stream.uniform(60, 600))
                peers = config.network.get(dev.id, ())
                payload["peer"] = peers[0] if peers else dev.id
            events.append(SimulationEvent(
                timestamp=round(t, 6), device_id=dev.id, device_type=dev.type_name,
                category=dev.category, room_id=dev.room_id,
                protocol=dev_protocol[dev.id], event_kind=kind, payload=payload,
            ))
            t += interval

    # Presence-driven state changes.
    state_of = {d.id: catalogs.device_types[d.type_name].states[0] for d in devices}
    transitions_from: dict[str, dict[str, list[str]]] = {}
    for dev in devices:
        entry = catalogs.device_types[dev.type_name]
        table: dict[str, list[str]] = {}
        for src, dst in entry.transitions:
            table.setdefault(src, []).append(dst)
        transitions_from[dev.id] = table

    for k in range(n_ticks):
        t = k * tick
        best = _activation_by_category(traces, profiles, k, t, catalogs)
        if not best:
            continue
        for dev in devices:
            if dev.id not in dev_protocol:
                continue
            hit = best.get(dev.category)
            if hit is None:
                continue
            activation, inhabitant_id = hit
            entry = catalogs.device_types[dev.type_name]
            p = min(1.0, activation) * entry.activation_rate
            if p <= 0.0:
                continue
            if stream.random() >= p:
                continue
            options = transitions_from[dev.id].get(state_of[dev.id])
            if not options:
                continue
            new_state = options[0] if len(options) == 1 else options[stream.randrange(len(options))]
            state_of[dev.id] = new_state
            events.append(SimulationEvent(
                timestamp=round(t + stream.uniform(0.0, tick), 6),
                device_id=dev.id, device_type=dev.type_name, category=dev.category,
                room_id=dev.room_id, protocol=dev_protocol[dev.id],
                event_kind="state-change",
                payload={"state": new_state,
                         "power_w": entry.power_profile.get(new_state, 0.0)},
                inhabitant_id=inhabitant_id,
            ))
    return events


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

def run_simulation(omega: SimulationParameters, seed: int, catalogs: Catalogs,
                   ) -> tuple[list[SimulationEvent], ExperimentRecord, dict]:
    """Execute the full pipeline; returns (events, record, artifacts).

    `artifacts` carries the intermediate outputs (config, traces, scenarios)
    for export and verification.
    """
    omega.validate(catalogs)

    request = GenerationRequest(template=omega.template, seed=seed,
                                room_count=omega.room_count,
                                density_multiplier=omega.density_multiplier)
    config = generate_home(request, catalogs)
    if omega.residents is not None:
        config = replace(config, inhabitants=omega.residents)
    profiles = sorted(config.inhabitants, key=lambda p: p.id)

    window = (0.0, omega.duration_s)
    traces = simulate_behavior(config, profiles, window, derive_stream(seed, "behavior"), catalogs)

    enabled = set(omega.protocols) if omega.protocols else set(catalogs.protocols)
    benign = emit_benign_events(config, traces, profiles, catalogs,
                                derive_stream(seed, "traffic"), omega.duration_s, enabled)

    scenarios: list[AttackScenario] = []
    registry = catalogs.threat_registry
    for i, req in enumerate(omega.threats):
        spec = registry.spec(req.threat_type)
        theta = req.theta_vuln if req.theta_vuln is not None else registry.defaults["theta_vuln"]
        targets = list(req.targets) if req.targets else select_targets(
            list(config.devices), spec, theta, catalogs)
        t_window = req.window or (0.25 * omega.duration_s, 0.75 * omega.duration_s)
        if not (0.0 <= t_window[0] < t_window[1] <= omega.duration_s):
            raise ValueError(f"threat window {t_window} outside simulation horizon")
        scenarios.append(generate_scenario(
            spec, targets, t_window, req.gamma, derive_stream(seed, f"threat/{i}"),
            catalogs, list(config.devices), scenario_id=f"scn-{i:02d}"))

    events = list(benign)
    for scenario in scenarios:
        events.extend(scenario.events)
    events.sort(key=lambda e: (e.timestamp, e.device_id, e.event_kind))
    label_all(events, scenarios, omega.taxonomy_level)

    artifacts = {
        "config": config.to_dict(),
        "traces": [tr.to_dict() for tr in traces],
        "scenarios": [s.to_dict() for s in scenarios],
    }
    digests = {
        "config": digest_of(artifacts["config"]),
        "traces": digest_of(artifacts["traces"]),
        "scenarios": digest_of(artifacts["scenarios"]),
        "events": sha256_hex(events_jsonl(events)),
    }
    record = ExperimentRecord(
        seed=seed, omega=omega, engine_version=ENGINE_VERSION,
        catalog_version=catalogs.version,
        exp_id=experiment_id(seed, omega, ENGINE_VERSION),
        artifact_digests=digests, timestamp=time.time(),
    )
    return events, record, artifacts


# ---------------------------------------------------------------------------
# Serialization: JSONL event log and CSV projection
# ---------------------------------------------------------------------------

BASE_COLUMNS = ["timestamp", "device_id", "device_type", "category", "room",
                "protocol", "event_kind"]
LABEL_COLUMNS = ["verdict", "threat_type", "technique", "confidence"] + [
    f"taxonomy_{i}" for i in range(1, 8)]


def events_jsonl(events: list[SimulationEvent]) -> str:
    return "".join(canonical_json(e.to_dict()) + "\n" for e in events)


def parse_events_jsonl(text: str) -> list[SimulationEvent]:
    return [SimulationEvent.from_dict(json.loads(line))
            for line in text.splitlines() if line.strip()]


def csv_columns(events: list[SimulationEvent]) -> list[str]:
    payload_keys = sorted({k for e in events for k in e.payload})
    return BASE_COLUMNS + payload_keys + LABEL_COLUMNS


def write_events_csv(events: list[SimulationEvent], path: Path) -> list[str]:
    columns = csv_columns(events)
    payload_keys = columns[len(BASE_COLUMNS):-len(LABEL_COLUMNS)]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for e in events:
            label = e.label
            tax = list(label.taxonomy_path) if label else []
            tax += [""] * (7 - len(tax))
            row = [repr(e.timestamp) if isinstance(e.timestamp, float) else e.timestamp,
                   e.device_id, e.device_type, e.category, e.room_id,
                   e.protocol, e.event_kind]
            row += [e.payload.get(k, "") for k in payload_keys]
            row += [label.verdict if label else "",
                    (label.threat_type or "") if label else "",
                    (label.attack_technique or "") if label else "",
                    label.confidence if label else ""]
            row += tax
            writer.writerow(row)
    return columns


# ---------------------------------------------------------------------------
# Archive export / import
# ---------------------------------------------------------------------------

ARTIFACT_FILES = {
    "config": "config.json",
    "traces": "traces.json",
    "scenarios": "scenarios.json",
    "events": "events.jsonl",
}


def export_experiment(record: ExperimentRecord, events: list[SimulationEvent],
                      artifacts: dict, out_dir: Path, write_csv: bool = False) -> Path:
    """Write the archive directory: manifest, artifacts, and the digest file."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def dump(name: str, obj) -> None:
        (out_dir / name).write_text(
            json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n",
            encoding="utf-8")

    dump("config.json", artifacts["config"])
    dump("traces.json", artifacts["traces"])
    dump("scenarios.json", artifacts["scenarios"])
    (out_dir / "events.jsonl").write_text(events_jsonl(events), encoding="utf-8")
    if write_csv:
        write_events_csv(events, out_dir / "events.csv")
    dump("manifest.json", record.to_manifest())

    digests = {}
    for name in sorted(p.name for p in out_dir.iterdir()
                       if p.is_file() and p.name != "digests.json"):
        digests[name] = file_digest(out_dir / name)
    dump("digests.json", {"format_version": ARCHIVE_FORMAT_VERSION, "files": digests})
    return out_dir


def import_experiment(path: Path) -> tuple[ExperimentRecord, list[SimulationEvent], dict, list[str]]:
    """Load and verify an archive; raises IntegrityError naming any tampered file."""
    path = Path(path)
    digest_file = path / "digests.json"
    if not digest_file.exists():
        raise IntegrityError(f"missing digest file in {path}")
    digests = json.loads(digest_file.read_text(encoding="utf-8"))
    for name, expected in sorted(digests["files"].items()):
        target = path / name
        if not target.exists():
            raise IntegrityError(f"archive artifact missing: {name}")
        actual = file_digest(target)
        if actual != expected:
            raise IntegrityError(f"digest mismatch for artifact {name}")

    manifest = json.loads((path / "manifest.json").read_text(encoding="utf-8"))
    warnings = []
    if manifest["engine_version"] != ENGINE_VERSION:
        warnings.append(
            f"archive was produced by engine {manifest['engine_version']}, "
            f"running {ENGINE_VERSION}; experiment id preserved")

    omega = SimulationParameters.from_dict(manifest["omega"])
    recomputed = experiment_id(manifest["seed"], omega, manifest["engine_version"])
    if recomputed != manifest["exp_id"]:
        raise IntegrityError("manifest exp_id does not match its stored fields")
    record = ExperimentRecord(
        seed=manifest["seed"], omega=omega,
        engine_version=manifest["engine_version"],
        catalog_version=manifest["catalog_version"],
        exp_id=manifest["exp_id"],
        artifact_digests=manifest["artifacts"],
    )
    events = parse_events_jsonl((path / "events.jsonl").read_text(encoding="utf-8"))
    artifacts = {
        "config": json.loads((path / "config.json").read_text(encoding="utf-8")),
        "traces": json.loads((path / "traces.json").read_text(encoding="utf-8")),
        "scenarios": json.loads((path / "scenarios.json").read_text(encoding="utf-8")),
    }
    loaded_digests = {name: digest_of(artifacts[name])
                      for name in ("config", "traces", "scenarios")}
    loaded_digests["events"] = sha256_hex(events_jsonl(events))
    for name, expected in record.artifact_digests.items():
        if loaded_digests.get(name) != expected:
            raise IntegrityError(f"manifest digest mismatch for artifact {name}")
    return record, events, artifacts, warnings


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

SWEEP_FIELDS = {"template", "duration_s", "density_multiplier", "gamma", "taxonomy_level"}


def _apply_override(omega: SimulationParameters, key: str, value) -> SimulationParameters:
    if key == "gamma":
        threats = tuple(replace(t, gamma=float(value)) for t in omega.threats)
        return replace(omega, threats=threats)
    if key not in SWEEP_FIELDS:
        raise ValueError(f"unsupported sweep parameter: {key}")
    return replace(omega, **{key: value})


def sweep(base: SimulationParameters, grid: dict[str, list], seed_base: int,
          catalogs: Catalogs, out_dir: Optional[Path] = None,
          write_csv: bool = False) -> list[ExperimentRecord]:
    """Cartesian-product runs; run j uses seed seed_base + j in enumeration order."""
    if not grid:
        raise ValueError("sweep grid must be non-empty")
    keys = list(grid)
    records = []
    for j, combo in enumerate(product(*(grid[k] for k in keys))):
        omega = base
        for key, value in zip(keys, combo):
            omega = _apply_override(omega, key, value)
        seed_j = seed_base + j
        events, record, artifacts = run_simulation(omega, seed_j, catalogs)
        if out_dir is not None:
            export_experiment(record, events, artifacts,
                              Path(out_dir) / f"run-{j:03d}", write_csv=write_csv)
        records.append(record)
    return records
