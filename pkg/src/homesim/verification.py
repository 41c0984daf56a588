"""Six-stage artifact validation with confidence gating.

Stages (schema, physical, semantic, factual, security, business) each score
an artifact in [0, 1]; stage scores combine as a weighted geometric product
and the gate routes the result: >= 0.85 approve, [0.70, 0.85) review,
< 0.70 reject. Stages operate on raw parsed documents, not validated
domain objects, so malformed artifacts can still be inspected and scored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import jsonschema

from .catalog import Catalogs
from .schemas import SCHEMAS

STAGES = ("schema", "physical", "semantic", "factual", "security", "business")

APPROVE_THRESHOLD = 0.85
REVIEW_THRESHOLD = 0.70

ERROR_PENALTY = 0.20
WARNING_PENALTY = 0.05

MAX_DURATION_S = 31 * 86400.0


class VerificationError(Exception):
    pass


@dataclass
class Finding:
    severity: str        # "error" | "warning" | "info"
    message: str
    location: str

    def to_dict(self) -> dict:
        return {"severity": self.severity, "message": self.message, "location": self.location}


@dataclass
class ValidatorReport:
    stage: str
    score: float
    findings: list[Finding] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"stage": self.stage, "score": self.score,
                "findings": [f.to_dict() for f in self.findings]}


@dataclass
class GateDecision:
    confidence: float
    outcome: str         # approve | review | reject
    explanation: str

    def to_dict(self) -> dict:
        return {"confidence": self.confidence, "outcome": self.outcome,
                "explanation": self.explanation}


@dataclass
class Artifact:
    """Raw (unvalidated) run documents; any subset may be present."""

    config: Optional[dict] = None
    scenarios: Optional[list] = None
    events: Optional[list] = None      # list of raw event dicts
    omega: Optional[dict] = None

    def kinds(self) -> set[str]:
        out = set()
        if self.config is not None:
            out.add("config")
        if self.scenarios is not None:
            out.add("scenarios")
        if self.events is not None:
            out.add("events")
        return out


def _score(findings: list[Finding]) -> float:
    errors = sum(1 for f in findings if f.severity == "error")
    warnings = sum(1 for f in findings if f.severity == "warning")
    return max(0.0, 1.0 - ERROR_PENALTY * errors - WARNING_PENALTY * warnings)


def _schema_stage(artifact: Artifact, catalogs: Catalogs, kb) -> list[Finding]:
    findings = []
    checks = [("config", artifact.config, SCHEMAS["home_config"]),
              ("scenarios", artifact.scenarios, SCHEMAS["scenario_list"])]
    for name, doc, schema in checks:
        if doc is None:
            continue
        validator = jsonschema.Draft202012Validator(schema)
        for err in sorted(validator.iter_errors(doc), key=str)[:20]:
            findings.append(Finding("error", err.message,
                                    f"{name}/{'/'.join(str(p) for p in err.absolute_path)}"))
    if artifact.events is not None:
        for i, e in enumerate(artifact.events):
            if not isinstance(e, dict) or "timestamp" not in e or "device_id" not in e:
                findings.append(Finding("error", "event missing timestamp/device_id", f"events/{i}"))
                break
    return findings


def _physical_stage(artifact: Artifact, catalogs: Catalogs, kb) -> list[Finding]:
    findings = []
    config = artifact.config
    if config is None:
        return findings
    rooms = config.get("rooms", [])
    total_area = 0.0
    for r in rooms:
        area = r.get("area", 0)
        total_area += area if isinstance(area, (int, float)) else 0
        if not isinstance(area, (int, float)) or area <= 0:
            findings.append(Finding("error", "room area must be positive", f"rooms/{r.get('id')}"))
        if r.get("capacity", 0) < 1:
            findings.append(Finding("error", "room capacity must be >= 1", f"rooms/{r.get('id')}"))
    template = catalogs.templates.get(config.get("template_name", ""))
    if template and total_area > 0:
        lo, hi = template.device_density_bounds
        mult = float(config.get("behavior_params", {}).get("density_multiplier", 1.0))
        n = len(config.get("devices", []))
        if not (lo * mult * total_area - 0.5 <= n <= hi * mult * total_area + 0.5):
            findings.append(Finding("error",
                                    f"device count {n} outside density bounds", "devices"))
    return findings


def _semantic_stage(artifact: Artifact, catalogs: Catalogs, kb) -> list[Finding]:
    findings = []
    config = artifact.config
    if config is not None:
        room_types = {r.get("id"): r.get("room_type") for r in config.get("rooms", [])}
        for d in config.get("devices", []):
            entry = catalogs.device_types.get(d.get("type_name", ""))
            if entry is None:
                findings.append(Finding("error", f"unknown device type {d.get('type_name')}",
                                        f"devices/{d.get('id')}"))
                continue
            rt = room_types.get(d.get("room_id"))
            if rt is None:
                findings.append(Finding("error", "device placed in missing room",
                                        f"devices/{d.get('id')}"))
            elif catalogs.compat.get(entry.category, rt) <= 0:
                findings.append(Finding("error", f"zero compatibility: {entry.category} in {rt}",
                                        f"devices/{d.get('id')}"))
    if artifact.events is not None:
        valid = set(catalogs.protocols)
        bad = {e.get("protocol") for e in artifact.events} - valid
        for proto in sorted(str(b) for b in bad):
            findings.append(Finding("error", f"unknown protocol {proto}", "events"))
    return findings


def _factual_stage(artifact: Artifact, catalogs: Catalogs, kb) -> list[Finding]:
    """Cross-check threat claims against the knowledge index, when one is attached."""
    if kb is None:
        return [Finding("info", "factual stage skipped: no knowledge index attached", "kb")]
    findings = []
    for s in artifact.scenarios or []:
        threat_type = s.get("threat_type", "")
        for tid in s.get("techniques", []):
            hits = kb.retrieve(f"{threat_type} {tid}", k=3, mode="hybrid")
            if not hits:
                findings.append(Finding("warning",
                                        f"no supporting document for technique {tid}",
                                        f"scenarios/{s.get('scenario_id')}"))
    return findings


def _security_stage(artifact: Artifact, catalogs: Catalogs, kb) -> list[Finding]:
    findings = []
    horizon = None
    if artifact.omega is not None:
        horizon = artifact.omega.get("duration_s")
    for s in artifact.scenarios or []:
        loc = f"scenarios/{s.get('scenario_id')}"
        gamma = s.get("gamma")
        if not isinstance(gamma, (int, float)) or not (0.0 <= gamma <= 1.0):
            findings.append(Finding("error", f"gamma {gamma} outside [0,1]", loc))
        window = s.get("window", [None, None])
        if (not isinstance(window, (list, tuple)) or len(window) != 2
                or not all(isinstance(w, (int, float)) for w in window)
                or window[0] >= window[1] or window[0] < 0):
            findings.append(Finding("error", f"malformed attack window {window}", loc))
        elif horizon is not None and window[1] > horizon:
            findings.append(Finding("error", "attack window exceeds simulation horizon", loc))
    if artifact.omega is not None:
        for t in artifact.omega.get("threats", []):
            theta = t.get("theta_vuln")
            if theta is not None and not (0.0 <= theta <= 1.0):
                findings.append(Finding("error", f"theta_vuln {theta} outside [0,1]", "omega/threats"))
    return findings


def _business_stage(artifact: Artifact, catalogs: Catalogs, kb) -> list[Finding]:
    findings = []
    config = artifact.config
    if config is not None:
        template = catalogs.templates.get(config.get("template_name", ""))
        if template is None:
            findings.append(Finding("error", f"unknown template {config.get('template_name')}",
                                    "config/template_name"))
        else:
            overridden = config.get("behavior_params", {}).get("density_multiplier", 1.0) != 1.0
            if len(config.get("rooms", [])) != template.room_count:
                findings.append(Finding("warning", "room count differs from template", "rooms"))
            if (template.device_count is not None and not overridden
                    and len(config.get("devices", [])) != template.device_count):
                findings.append(Finding("error",
                                        f"template pins {template.device_count} devices, "
                                        f"found {len(config.get('devices', []))}", "devices"))
            if len(config.get("inhabitants", [])) != template.default_inhabitants:
                findings.append(Finding("warning", "household size differs from template",
                                        "inhabitants"))
    if artifact.omega is not None:
        duration = artifact.omega.get("duration_s", 0)
        if not (0 < duration <= MAX_DURATION_S):
            findings.append(Finding("error", f"duration {duration} outside (0, {MAX_DURATION_S}]",
                                    "omega/duration_s"))
    return findings


_STAGE_FUNCS = {
    "schema": _schema_stage,
    "physical": _physical_stage,
    "semantic": _semantic_stage,
    "factual": _factual_stage,
    "security": _security_stage,
    "business": _business_stage,
}

# Which artifact kinds each stage can say anything about.
_STAGE_INPUTS = {
    "schema": {"config", "scenarios", "events"},
    "physical": {"config"},
    "semantic": {"config", "events"},
    "factual": {"config", "scenarios", "events"},
    "security": {"scenarios"},
    "business": {"config"},
}


def run_stage(stage: str, artifact: Artifact, catalogs: Catalogs, kb=None) -> ValidatorReport:
    if stage not in _STAGE_FUNCS:
        raise VerificationError(f"unknown stage: {stage}")
    present = artifact.kinds()
    if present and not (_STAGE_INPUTS[stage] & present):
        raise VerificationError(
            f"stage {stage} does not support artifacts of kind {sorted(present)}")
    findings = _STAGE_FUNCS[stage](artifact, catalogs, kb)
    return ValidatorReport(stage=stage, score=_score(findings), findings=findings)


def run_pipeline(artifact: Artifact, catalogs: Catalogs, kb=None,
                 weights: Optional[dict[str, float]] = None,
                 ) -> tuple[list[ValidatorReport], GateDecision]:
    reports = []
    for stage in STAGES:
        present = artifact.kinds()
        if present and not (_STAGE_INPUTS[stage] & present):
            reports.append(ValidatorReport(stage=stage, score=1.0, findings=[
                Finding("info", f"stage {stage} not applicable to this artifact", stage)]))
        else:
            reports.append(run_stage(stage, artifact, catalogs, kb))
    confidence = aggregate_confidence(reports, weights)
    return reports, gate(confidence, reports)


def aggregate_confidence(reports: list[ValidatorReport],
                         weights: Optional[dict[str, float]] = None) -> float:
    """Weighted geometric product of the six stage scores."""
    by_stage = {r.stage: r for r in reports}
    missing = set(STAGES) - set(by_stage)
    if missing:
        raise VerificationError(f"missing stage reports: {sorted(missing)}")
    weights = weights or {}
    confidence = 1.0
    for stage in STAGES:
        w = weights.get(stage, 1.0)
        if w < 0:
            raise VerificationError("stage weights must be >= 0")
        v = by_stage[stage].score
        if w == 0:
            continue
        if v == 0.0:
            return 0.0
        confidence *= v ** w
    return min(1.0, max(0.0, confidence))


def gate(confidence: float, reports: Optional[list[ValidatorReport]] = None) -> GateDecision:
    if not (0.0 <= confidence <= 1.0):
        raise VerificationError("confidence must lie in [0,1]")
    if confidence >= APPROVE_THRESHOLD:
        outcome = "approve"
    elif confidence >= REVIEW_THRESHOLD:
        outcome = "review"
    else:
        outcome = "reject"
    problems = []
    for r in reports or []:
        problems.extend(f"[{r.stage}] {f.message}" for f in r.findings
                        if f.severity == "error")
    if outcome == "approve":
        explanation = "all stages within tolerance"
    elif problems:
        explanation = "; ".join(problems[:5])
    else:
        explanation = f"confidence {confidence:.3f} below approval threshold"
    return GateDecision(confidence=confidence, outcome=outcome, explanation=explanation)
