from __future__ import annotations

from dataclasses import replace

import pytest

from homesim import ENGINE_VERSION
from homesim.runtime import (
    IntegrityError,
    SimulationParameters,
    ThreatRequest,
    csv_columns,
    events_jsonl,
    experiment_id,
    export_experiment,
    import_experiment,
    run_simulation,
    sweep,
    write_events_csv,
)


@pytest.fixture(scope="module")
def studio_run(catalogs):
    omega = SimulationParameters(template="studio", duration_s=86400.0)
    return run_simulation(omega, 42, catalogs)


@pytest.fixture(scope="module")
def mixed_run(catalogs):
    omega = SimulationParameters(
        template="family_house", duration_s=86400.0,
        threats=(ThreatRequest("denial_of_service", gamma=0.5),))
    return run_simulation(omega, 42, catalogs)


# -- determinism ----------------------------------------------------------------

def test_replay_identical_digests(catalogs, studio_run):
    omega = SimulationParameters(template="studio", duration_s=86400.0)
    events2, record2, _ = run_simulation(omega, 42, catalogs)
    _, record1, _ = studio_run[0], studio_run[1], studio_run[2]
    assert record1.artifact_digests == record2.artifact_digests
    assert record1.exp_id == record2.exp_id


def test_seed_changes_event_digest(catalogs, studio_run):
    omega = SimulationParameters(template="studio", duration_s=86400.0)
    _, record43, _ = run_simulation(omega, 43, catalogs)
    assert studio_run[1].artifact_digests["events"] != record43.artifact_digests["events"]


def test_benign_only_studio_all_devices_emit(catalogs, studio_run):
    events, _, artifacts = studio_run
    assert {e.device_id for e in events} == {d["id"] for d in artifacts["config"]["devices"]}
    assert len(artifacts["config"]["devices"]) == 7
    assert all(e.label and e.label.verdict == "benign" for e in events)


def test_event_log_sorted_with_tiebreak(catalogs, mixed_run):
    events, _, _ = mixed_run
    keys = [(e.timestamp, e.device_id, e.event_kind) for e in events]
    assert keys == sorted(keys)


def test_attack_events_confined_to_window(catalogs, mixed_run):
    events, record, artifacts = mixed_run
    scenario = artifacts["scenarios"][0]
    lo, hi = scenario["window"]
    attack = [e for e in events if e.label.verdict == "attack"]
    assert attack
    assert all(lo <= e.timestamp <= hi for e in attack)


def test_stream_isolation_threats_leave_benign_untouched(catalogs, mixed_run):
    benign_omega = SimulationParameters(template="family_house", duration_s=86400.0)
    benign_events, _, _ = run_simulation(benign_omega, 42, catalogs)
    mixed_events = mixed_run[0]
    mixed_benign = [(e.timestamp, e.device_id, e.event_kind)
                    for e in mixed_events if e.scenario_id is None]
    plain = [(e.timestamp, e.device_id, e.event_kind) for e in benign_events]
    assert mixed_benign == plain


def test_payloads_respect_value_ranges(catalogs, studio_run):
    events, _, _ = studio_run
    for e in events:
        if e.event_kind != "telemetry":
            continue
        entry = catalogs.device_types[e.device_type]
        for fname, value in e.payload.items():
            if fname in entry.value_ranges:
                lo, hi = entry.value_ranges[fname]
                assert lo <= value <= hi


def test_protocol_filter_silences_devices(catalogs):
    omega = SimulationParameters(template="studio", duration_s=3600.0,
                                 protocols=("Zigbee",))
    events, _, _ = run_simulation(omega, 42, catalogs)
    assert all(e.protocol == "Zigbee" for e in events)


def test_invalid_parameters_rejected(catalogs):
    with pytest.raises(ValueError):
        run_simulation(SimulationParameters(template="studio", duration_s=0.0), 42, catalogs)
    with pytest.raises(ValueError):
        run_simulation(SimulationParameters(template="studio", protocols=()), 42, catalogs)
    with pytest.raises(ValueError):
        run_simulation(SimulationParameters(
            template="studio",
            threats=(ThreatRequest("denial_of_service", gamma=1.5),)), 42, catalogs)


def test_compression_is_metadata_only(catalogs):
    """Time compression never changes event content, only the recorded factor."""
    fast = SimulationParameters(template="studio", duration_s=7200.0, compression=1440.0)
    slow = SimulationParameters(template="studio", duration_s=7200.0, compression=60.0)
    _, rec_fast, _ = run_simulation(fast, 42, catalogs)
    _, rec_slow, _ = run_simulation(slow, 42, catalogs)
    assert rec_fast.artifact_digests == rec_slow.artifact_digests
    assert rec_fast.exp_id != rec_slow.exp_id  # the factor is still part of the identity


# -- experiment identity ----------------------------------------------------------

def test_experiment_id_stable(catalogs):
    omega = SimulationParameters(template="studio")
    assert experiment_id(42, omega, "1.0") == experiment_id(42, omega, "1.0")
    assert experiment_id(42, omega, "1.0") != experiment_id(43, omega, "1.0")
    assert experiment_id(42, omega, "1.0") != experiment_id(42, omega, "1.1")


def test_experiment_id_field_order_invariant(catalogs):
    omega = SimulationParameters(template="studio", duration_s=3600.0, taxonomy_level=3)
    d = omega.to_dict()
    permuted = {k: d[k] for k in reversed(list(d))}
    omega2 = SimulationParameters.from_dict(permuted)
    assert experiment_id(42, omega, ENGINE_VERSION) == experiment_id(42, omega2, ENGINE_VERSION)


# -- export / import ---------------------------------------------------------------

def test_export_import_round_trip(catalogs, studio_run, tmp_path):
    events, record, artifacts = studio_run
    first = export_experiment(record, events, artifacts, tmp_path / "a")
    record2, events2, artifacts2, warnings = import_experiment(first)
    assert not warnings
    assert record2.exp_id == record.exp_id
    assert events_jsonl(events2) == events_jsonl(events)
    second = export_experiment(record2, events2, artifacts2, tmp_path / "b")
    for name in ("manifest.json", "config.json", "traces.json", "scenarios.json",
                 "events.jsonl", "digests.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_tampered_artifact_detected(catalogs, studio_run, tmp_path):
    events, record, artifacts = studio_run
    archive = export_experiment(record, events, artifacts, tmp_path / "t")
    target = archive / "events.jsonl"
    data = bytearray(target.read_bytes())
    data[50] ^= 0x01
    target.write_bytes(bytes(data))
    with pytest.raises(IntegrityError, match="events.jsonl"):
        import_experiment(archive)


def test_missing_artifact_detected(catalogs, studio_run, tmp_path):
    events, record, artifacts = studio_run
    archive = export_experiment(record, events, artifacts, tmp_path / "m")
    (archive / "traces.json").unlink()
    with pytest.raises(IntegrityError, match="traces.json"):
        import_experiment(archive)


def test_newer_engine_version_warns_preserves_id(catalogs, studio_run, tmp_path):
    events, record, artifacts = studio_run
    aged = replace(record, engine_version="0.0.9",
                   exp_id=experiment_id(record.seed, record.omega, "0.0.9"))
    archive = export_experiment(aged, events, artifacts, tmp_path / "v")
    record2, _, _, warnings = import_experiment(archive)
    assert warnings and "0.0.9" in warnings[0]
    assert record2.exp_id == aged.exp_id


def test_inconsistent_manifest_exp_id_rejected(catalogs, studio_run, tmp_path):
    events, record, artifacts = studio_run
    forged = replace(record, exp_id="0" * 64)
    archive = export_experiment(forged, events, artifacts, tmp_path / "f")
    with pytest.raises(IntegrityError, match="exp_id"):
        import_experiment(archive)


# -- sweeps -------------------------------------------------------------------------

def test_sweep_seed_derivation(catalogs):
    base = SimulationParameters(template="studio", duration_s=3600.0,
                                threats=(ThreatRequest("denial_of_service"),))
    grid = {"template": ["studio", "one_bedroom"], "gamma": [0.1, 0.9]}
    records = sweep(base, grid, 42, catalogs)
    assert [r.seed for r in records] == [42, 43, 44, 45]
    assert len(records) == 4
    # enumeration order: rightmost axis fastest
    combos = [(r.omega.template, r.omega.threats[0].gamma) for r in records]
    assert combos == [("studio", 0.1), ("studio", 0.9),
                      ("one_bedroom", 0.1), ("one_bedroom", 0.9)]


def test_sweep_replay_identical(catalogs):
    base = SimulationParameters(template="studio", duration_s=3600.0)
    grid = {"duration_s": [1800.0, 3600.0]}
    a = sweep(base, grid, 42, catalogs)
    b = sweep(base, grid, 42, catalogs)
    assert [r.exp_id for r in a] == [r.exp_id for r in b]
    assert [r.artifact_digests for r in a] == [r.artifact_digests for r in b]


def test_sweep_requires_grid(catalogs):
    with pytest.raises(ValueError):
        sweep(SimulationParameters(template="studio"), {}, 42, catalogs)


# -- CSV projection ------------------------------------------------------------------

def test_csv_columns_stable_order(catalogs, mixed_run, tmp_path):
    events, _, _ = mixed_run
    columns = csv_columns(events)
    assert columns[:7] == ["timestamp", "device_id", "device_type", "category",
                           "room", "protocol", "event_kind"]
    assert columns[-11:] == ["verdict", "threat_type", "technique", "confidence",
                             "taxonomy_1", "taxonomy_2", "taxonomy_3", "taxonomy_4",
                             "taxonomy_5", "taxonomy_6", "taxonomy_7"]
    payload = columns[7:-11]
    assert payload == sorted(payload)

    out = tmp_path / "events.csv"
    write_events_csv(events, out)
    header = out.read_text().splitlines()[0]
    assert header.split(",") == columns
    assert len(out.read_text().splitlines()) == len(events) + 1
