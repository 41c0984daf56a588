"""Threat scenario generation and ground-truth labeling.

A scenario runs a threat spec against vulnerability-selected targets through
the six-phase kill chain (reconnaissance, initial access, execution,
persistence, exfiltration, cleanup), with the intensity parameter scaling
event rate up and stealth down. Every emitted event is labelable to a
hierarchical taxonomy of up to seven levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import (
    ATTACK,
    BENIGN,
    Catalogs,
    DeviceInstance,
    Label,
    SimulationEvent,
    TAXONOMY_MAX_DEPTH,
    ThreatSpec,
)
from .rng import Stream

PHASES = ("reconnaissance", "initial_access", "execution", "persistence",
          "exfiltration", "cleanup")

CONFIDENCE_FLOOR = 0.5


@dataclass(frozen=True)
class AttackScenario:
    scenario_id: str
    threat: ThreatSpec
    targets: tuple[str, ...]              # device ids
    window: tuple[float, float]
    gamma: float
    rate: float                           # effective events/min
    stealth: float                        # effective stealth
    phase_plan: tuple[tuple[str, float, float], ...]   # (phase, start, end)
    events: tuple[SimulationEvent, ...]
    no_op: bool = False

    def to_dict(self) -> dict:
        return {
            "scenario_id": self.scenario_id,
            "threat_type": self.threat.threat_type,
            "category": self.threat.category,
            "targets": list(self.targets),
            "window": list(self.window),
            "gamma": self.gamma,
            "rate": self.rate,
            "stealth": self.stealth,
            "phase_plan": [[p, s, e] for p, s, e in self.phase_plan],
            "event_count": len(self.events),
            "techniques": list(self.threat.techniques),
            "no_op": self.no_op,
        }


def select_targets(devices: list[DeviceInstance], threat: ThreatSpec,
                   theta_vuln: float, catalogs: Catalogs) -> list[str]:
    """Devices whose vulnerability score strictly exceeds the threshold."""
    if not devices:
        raise ValueError("select_targets requires a non-empty device list")
    if not (0.0 <= theta_vuln <= 1.0):
        raise ValueError("theta_vuln must lie in [0,1]")
    registry = catalogs.threat_registry
    return sorted(d.id for d in devices if registry.vuln_score(threat, d.category) > theta_vuln)


def modulate_intensity(threat: ThreatSpec, gamma: float,
                       k_rate: float = 2.0, k_stealth: float = 1.0) -> tuple[float, float]:
    """Effective (rate, stealth): rate scales up with gamma, stealth down (floored at 0)."""
    if not (0.0 <= gamma <= 1.0):
        raise ValueError("gamma must lie in [0,1]")
    rate = threat.base_rate * (1.0 + gamma * k_rate)
    stealth = max(0.0, threat.base_stealth * (1.0 - gamma * k_stealth))
    return rate, stealth


def generate_scenario(threat: ThreatSpec, targets: list[str], window: tuple[float, float],
                      gamma: float, stream: Stream, catalogs: Catalogs,
                      devices: list[DeviceInstance], scenario_id: str) -> AttackScenario:
    """Plan phase sub-windows and timed attack events; deterministic per stream."""
    start, end = window
    if end <= start:
        raise ValueError("scenario window must have positive length")
    defaults = catalogs.threat_registry.defaults
    rate, stealth = modulate_intensity(threat, gamma, defaults["k_rate"], defaults["k_stealth"])

    if not targets:
        return AttackScenario(scenario_id=scenario_id, threat=threat, targets=(),
                              window=window, gamma=gamma, rate=rate, stealth=stealth,
                              phase_plan=(), events=(), no_op=True)

    total_weight = sum(w for _, w in threat.phase_templates)
    span = end - start
    plan = []
    cursor = start
    for phase, weight in threat.phase_templates:
        duration = span * (weight / total_weight)
        plan.append((phase, cursor, cursor + duration))
        cursor += duration

    device_by_id = {d.id: d for d in devices}
    events = []
    n = 0
    for phase, p_start, p_end in plan:
        minutes = (p_end - p_start) / 60.0
        count = max(1, round(rate * minutes))
        step = (p_end - p_start) / count
        for i in range(count):
            t = p_start + (i + 0.5) * step + stream.uniform(-0.25, 0.25) * step
            target_id = targets[n % len(targets)]
            device = device_by_id[target_id]
            lo, hi = threat.bytes_range
            payload = dict(threat.signature)
            payload["bytes"] = int(stream.uniform(lo, hi + 1))
            payload["target_category"] = device.category
            events.append(SimulationEvent(
                timestamp=round(min(max(t, p_start), p_end), 6),
                device_id=target_id,
                device_type=device.type_name,
                category=device.category,
                room_id=device.room_id,
                protocol=threat.protocol,
                event_kind="network-packet",
                payload=payload,
                scenario_id=scenario_id,
                phase=phase,
            ))
            n += 1

    events.sort(key=lambda e: (e.timestamp, e.device_id))
    return AttackScenario(
        scenario_id=scenario_id, threat=threat, targets=tuple(targets), window=window,
        gamma=gamma, rate=rate, stealth=stealth,
        phase_plan=tuple(plan), events=tuple(events), no_op=False,
    )


def taxonomy_for(scenario: AttackScenario) -> tuple[str, ...]:
    """Full seven-level hierarchical label, coarse to fine, ending in a technique id."""
    threat = scenario.threat
    return (
        "malicious",
        threat.category,
        threat.threat_type,
        "multi_phase" if len(scenario.phase_plan) > 1 else "single_phase",
        threat.protocol,
        threat.tactic,
        threat.techniques[0],
    )


def label_event(event: SimulationEvent, scenarios: list[AttackScenario],
                taxonomy_level: int) -> Label:
    """Ground-truth label: scenario-stamped events are attacks, all else benign."""
    if not (1 <= taxonomy_level <= TAXONOMY_MAX_DEPTH):
        raise ValueError(f"taxonomy_level must lie in [1,{TAXONOMY_MAX_DEPTH}]")
    if event.scenario_id is not None:
        by_id = {s.scenario_id: s for s in scenarios}
        scenario = by_id.get(event.scenario_id)
        if scenario is not None:
            confidence = max(CONFIDENCE_FLOOR, 1.0 - scenario.stealth)
            path = taxonomy_for(scenario)[:taxonomy_level]
            return Label(verdict=ATTACK, threat_type=scenario.threat.threat_type,
                         attack_technique=scenario.threat.techniques[0],
                         confidence=round(confidence, 6), taxonomy_path=path)
    return Label(verdict=BENIGN, threat_type=None, attack_technique=None,
                 confidence=1.0, taxonomy_path=("benign",))


def label_all(events: list[SimulationEvent], scenarios: list[AttackScenario],
              taxonomy_level: int) -> None:
    by_id = {s.scenario_id: s for s in scenarios}
    benign = Label(verdict=BENIGN, threat_type=None, attack_technique=None,
                   confidence=1.0, taxonomy_path=("benign",))
    cache: dict[str, Label] = {}
    for event in events:
        sid = event.scenario_id
        if sid is None or sid not in by_id:
            event.label = benign
            continue
        if sid not in cache:
            scenario = by_id[sid]
            confidence = max(CONFIDENCE_FLOOR, 1.0 - scenario.stealth)
            cache[sid] = Label(
                verdict=ATTACK, threat_type=scenario.threat.threat_type,
                attack_technique=scenario.threat.techniques[0],
                confidence=round(confidence, 6),
                taxonomy_path=taxonomy_for(scenario)[:taxonomy_level])
        event.label = cache[sid]


# ---------------------------------------------------------------------------
# Indicator predicates (used by the ABC evaluation metric)
# ---------------------------------------------------------------------------

def indicator_fires(indicator: dict, events: list[SimulationEvent]) -> bool:
    """Evaluate one registry indicator rule against an event stream."""
    kind = indicator["kind"]
    params = indicator.get("params", {})

    if kind == "min_event_rate":
        if len(events) < 2:
            return False
        span_min = (max(e.timestamp for e in events) - min(e.timestamp for e in events)) / 60.0
        if span_min <= 0:
            return False
        return len(events) / span_min >= params["per_min"]

    if kind == "payload_flag":
        want = params.get("value", True)
        hits = sum(1 for e in events if e.payload.get(params["field"]) == want)
        return hits >= params.get("min_count", 1)

    if kind == "payload_field_above":
        hits = sum(1 for e in events
                   if isinstance(e.payload.get(params["field"]), (int, float))
                   and e.payload[params["field"]] >= params["min"])
        return hits >= params.get("min_count", 1)

    if kind == "phase_present":
        return any(e.phase == params["phase"] for e in events)

    if kind == "distinct_targets":
        return len({e.device_id for e in events}) >= params["min"]

    if kind == "protocol_match":
        return any(e.protocol == params["protocol"] for e in events)

    if kind == "protocol_concentration":
        if not events:
            return False
        counts: dict[str, int] = {}
        for e in events:
            counts[e.protocol] = counts.get(e.protocol, 0) + 1
        return max(counts.values()) / len(events) >= params["min_fraction"]

    if kind == "total_bytes":
        total = sum(e.payload.get("bytes", 0) for e in events
                    if isinstance(e.payload.get("bytes"), (int, float)))
        return total >= params["min"]

    if kind == "target_category":
        hits = sum(1 for e in events if e.payload.get("target_category") == params["category"])
        return hits >= params.get("min_count", 1)

    raise ValueError(f"unknown indicator kind: {kind}")
