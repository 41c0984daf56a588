from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homesim.homegen import GenerationRequest, generate_home
from homesim.runtime import SimulationParameters, ThreatRequest, run_simulation
from homesim.verification import (
    STAGES,
    Artifact,
    ValidatorReport,
    VerificationError,
    aggregate_confidence,
    gate,
    run_pipeline,
    run_stage,
)


@pytest.fixture(scope="module")
def valid_artifact(catalogs):
    omega = SimulationParameters(template="studio", duration_s=7200.0,
                                 threats=(ThreatRequest("denial_of_service", gamma=0.4,
                                                        window=(1800.0, 5400.0)),))
    events, record, artifacts = run_simulation(omega, 42, catalogs)
    return Artifact(config=artifacts["config"], scenarios=artifacts["scenarios"],
                    events=[e.to_dict() for e in events], omega=omega.to_dict())


# -- stages -----------------------------------------------------------------------

def test_valid_config_physical_perfect(catalogs, valid_artifact):
    report = run_stage("physical", valid_artifact, catalogs)
    assert report.score == 1.0
    assert not report.findings


def test_full_pipeline_approves_generated_run(catalogs, valid_artifact):
    reports, decision = run_pipeline(valid_artifact, catalogs)
    assert [r.stage for r in reports] == list(STAGES)
    assert decision.outcome == "approve"
    assert decision.confidence == 1.0


def test_schema_stage_flags_missing_room(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs).to_dict()
    config["devices"][0].pop("room_id")
    report = run_stage("schema", Artifact(config=config), catalogs)
    assert report.score < 1.0
    assert any(f.severity == "error" for f in report.findings)


def test_semantic_stage_flags_nonexistent_room(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs).to_dict()
    config["devices"][0]["room_id"] = "room-77"
    report = run_stage("semantic", Artifact(config=config), catalogs)
    assert any("missing room" in f.message for f in report.findings)


def test_security_stage_flags_gamma_range(catalogs):
    scenarios = [{"scenario_id": "scn-00", "threat_type": "denial_of_service",
                  "targets": ["dev-000"], "window": [0.0, 600.0], "gamma": 1.4,
                  "phase_plan": [], "techniques": ["T1498"]}]
    report = run_stage("security", Artifact(scenarios=scenarios), catalogs)
    assert any("gamma" in f.message for f in report.findings)
    assert report.score <= 0.8


def test_business_stage_flags_pinned_count(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs).to_dict()
    config["devices"] = config["devices"][:5]  # template pins 7
    report = run_stage("business", Artifact(config=config), catalogs)
    assert any("pins" in f.message for f in report.findings)


def test_factual_stage_skips_without_kb(catalogs, valid_artifact):
    report = run_stage("factual", valid_artifact, catalogs, kb=None)
    assert report.score == 1.0
    assert any("skipped" in f.message for f in report.findings)


def test_factual_stage_with_kb(catalogs, valid_artifact):
    from homesim.retrieval import HashedNgramEmbedding, KnowledgeIndex

    kb = KnowledgeIndex(HashedNgramEmbedding())
    kb.ingest("attack-notes", "Network denial of service maps to technique T1498 and T1499",
              "threat")
    report = run_stage("factual", valid_artifact, catalogs, kb=kb)
    assert report.score >= 0.9


def test_unsupported_pairing_rejected(catalogs):
    with pytest.raises(VerificationError, match="does not support"):
        run_stage("physical", Artifact(scenarios=[]), catalogs)
    with pytest.raises(VerificationError, match="unknown stage"):
        run_stage("vibes", Artifact(config={}), catalogs)


def test_idempotent_reports(catalogs, valid_artifact):
    a = [r.to_dict() for r in run_pipeline(valid_artifact, catalogs)[0]]
    b = [r.to_dict() for r in run_pipeline(valid_artifact, catalogs)[0]]
    assert a == b


# -- aggregation (weighted geometric product) ---------------------------------------

def _reports(scores):
    return [ValidatorReport(stage=s, score=v) for s, v in zip(STAGES, scores)]


def test_all_ones_aggregate_to_one():
    assert aggregate_confidence(_reports([1.0] * 6)) == 1.0


def test_single_zero_annihilates():
    assert aggregate_confidence(_reports([1.0, 0.0, 1.0, 1.0, 1.0, 1.0])) == 0.0


def test_single_imperfect_score_passes_through():
    assert aggregate_confidence(_reports([0.9, 1, 1, 1, 1, 1])) == pytest.approx(0.9, abs=1e-12)


def test_zero_weight_ignores_stage():
    conf = aggregate_confidence(_reports([0.0, 1, 1, 1, 1, 1]), weights={"schema": 0.0})
    assert conf == 1.0


def test_missing_stage_rejected():
    with pytest.raises(VerificationError, match="missing stage"):
        aggregate_confidence(_reports([1.0] * 6)[:5])


@settings(max_examples=100, deadline=None)
@given(scores=st.lists(st.floats(min_value=0.001, max_value=1.0), min_size=6, max_size=6),
       weights=st.lists(st.floats(min_value=0.0, max_value=3.0), min_size=6, max_size=6))
def test_aggregation_matches_direct_product(scores, weights):
    wmap = dict(zip(STAGES, weights))
    got = aggregate_confidence(_reports(scores), wmap)
    expected = 1.0
    for v, w in zip(scores, weights):
        expected *= v ** w
    expected = min(1.0, max(0.0, expected))
    assert got == pytest.approx(expected, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(scores=st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=6, max_size=6),
       idx=st.integers(min_value=0, max_value=5),
       bump=st.floats(min_value=0.0, max_value=0.5))
def test_aggregation_monotone_in_stage_score(scores, idx, bump):
    raised = list(scores)
    raised[idx] = min(1.0, raised[idx] + bump)
    assert aggregate_confidence(_reports(raised)) >= aggregate_confidence(_reports(scores)) - 1e-12


# -- gate ---------------------------------------------------------------------------

@pytest.mark.parametrize("confidence,outcome", [
    (0.90, "approve"), (0.85, "approve"), (0.75, "review"),
    (0.70, "review"), (0.6999, "reject"), (0.50, "reject"), (0.0, "reject"),
])
def test_gate_thresholds(confidence, outcome):
    assert gate(confidence).outcome == outcome


def test_reject_carries_explanation(catalogs):
    reports = _reports([0.5, 1, 1, 1, 1, 1])
    reports[0].findings.append(
        __import__("homesim.verification", fromlist=["Finding"]).Finding(
            "error", "broken schema", "config"))
    decision = gate(aggregate_confidence(reports), reports)
    assert decision.outcome == "reject"
    assert "broken schema" in decision.explanation


def test_gate_range_check():
    with pytest.raises(VerificationError):
        gate(1.5)
