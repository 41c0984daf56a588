"""Domain types and the versioned data catalogs.

Catalogs are immutable after load and safe for concurrent reads. All counts
are validated at load time: 12 protocols, 15 room types, 16 device
categories, 16 activity states, and a device registry whose declared size
must match its contents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .canon import digest_of

EXPECTED_PROTOCOLS = 12
EXPECTED_ROOM_TYPES = 15
EXPECTED_CATEGORIES = 16
EXPECTED_ACTIVITIES = 16

PROB_TOL = 1e-9


class CatalogError(ValueError):
    """Raised when a catalog file is missing, malformed, or inconsistent."""


@dataclass(frozen=True)
class ResidenceTemplate:
    name: str
    room_count: int
    floor_area: float
    device_density_bounds: tuple[float, float]
    room_type_distribution: dict[str, float]
    default_inhabitants: int
    device_count: Optional[int] = None  # pinned total when the template fixes one

    def validate(self, room_types: set[str]) -> None:
        if self.room_count < 1 or self.default_inhabitants < 1:
            raise CatalogError(f"template {self.name}: counts must be positive")
        lo, hi = self.device_density_bounds
        if not (0 <= lo <= hi):
            raise CatalogError(f"template {self.name}: density bounds must satisfy 0 <= lo <= hi")
        total = sum(self.room_type_distribution.values())
        if abs(total - 1.0) > PROB_TOL:
            raise CatalogError(f"template {self.name}: room distribution sums to {total}")
        unknown = set(self.room_type_distribution) - room_types
        if unknown:
            raise CatalogError(f"template {self.name}: unknown room types {sorted(unknown)}")


@dataclass(frozen=True)
class Room:
    id: str
    room_type: str
    area: float
    coordinates: tuple[float, float]
    adjacency: frozenset[str]
    capacity: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "room_type": self.room_type,
            "area": self.area,
            "coordinates": list(self.coordinates),
            "adjacency": sorted(self.adjacency),
            "capacity": self.capacity,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Room":
        return cls(
            id=d["id"], room_type=d["room_type"], area=d["area"],
            coordinates=(d["coordinates"][0], d["coordinates"][1]),
            adjacency=frozenset(d["adjacency"]), capacity=d["capacity"],
        )


@dataclass(frozen=True)
class DeviceCatalogEntry:
    type_name: str
    category: str
    protocols: tuple[str, ...]
    power_profile: dict[str, float]
    states: tuple[str, ...]
    transitions: tuple[tuple[str, str], ...]
    base_density: float
    value_ranges: dict[str, tuple[float, float]]
    telemetry_interval_s: float
    activation_rate: float

    def validate(self, protocols: set[str]) -> None:
        if not self.protocols:
            raise CatalogError(f"device {self.type_name}: protocols must be non-empty")
        unknown = set(self.protocols) - protocols
        if unknown:
            raise CatalogError(f"device {self.type_name}: unknown protocols {sorted(unknown)}")
        declared = set(self.states)
        for src, dst in self.transitions:
            if src not in declared or dst not in declared:
                raise CatalogError(
                    f"device {self.type_name}: transition {src}->{dst} references undeclared state")
        if self.base_density < 0:
            raise CatalogError(f"device {self.type_name}: base_density must be >= 0")


@dataclass(frozen=True)
class DeviceInstance:
    id: str
    type_name: str
    category: str
    room_id: str
    network_address: str

    def to_dict(self) -> dict:
        return {
            "id": self.id, "type_name": self.type_name, "category": self.category,
            "room_id": self.room_id, "network_address": self.network_address,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceInstance":
        return cls(id=d["id"], type_name=d["type_name"], category=d["category"],
                   room_id=d["room_id"], network_address=d["network_address"])


@dataclass(frozen=True)
class Schedule:
    wake: float           # hour of day
    sleep: float          # hour of day
    work_start: Optional[float] = None
    work_end: Optional[float] = None
    work_from_home: bool = False

    def to_dict(self) -> dict:
        return {"wake": self.wake, "sleep": self.sleep, "work_start": self.work_start,
                "work_end": self.work_end, "work_from_home": self.work_from_home}

    @classmethod
    def from_dict(cls, d: dict) -> "Schedule":
        return cls(wake=d["wake"], sleep=d["sleep"], work_start=d.get("work_start"),
                   work_end=d.get("work_end"), work_from_home=d.get("work_from_home", False))


INHABITANT_KINDS = ("adult", "child", "elderly", "teenager", "pet")


@dataclass(frozen=True)
class InhabitantProfile:
    id: str
    kind: str
    schedule: Schedule
    tech_savviness: float
    variation_sigma: float

    def validate(self) -> None:
        if self.kind not in INHABITANT_KINDS:
            raise CatalogError(f"inhabitant {self.id}: unknown kind {self.kind}")
        if not (0.0 <= self.tech_savviness <= 1.0):
            raise CatalogError(f"inhabitant {self.id}: tech_savviness outside [0,1]")
        if self.variation_sigma < 0:
            raise CatalogError(f"inhabitant {self.id}: variation_sigma must be >= 0")
        if self.schedule.wake == self.schedule.sleep:
            raise CatalogError(f"inhabitant {self.id}: wake and sleep times must differ")
        if self.kind == "pet" and self.schedule.work_start is not None:
            raise CatalogError(f"inhabitant {self.id}: pets have no work hours")

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "schedule": self.schedule.to_dict(),
                "tech_savviness": self.tech_savviness, "variation_sigma": self.variation_sigma}

    @classmethod
    def from_dict(cls, d: dict) -> "InhabitantProfile":
        return cls(id=d["id"], kind=d["kind"], schedule=Schedule.from_dict(d["schedule"]),
                   tech_savviness=d["tech_savviness"], variation_sigma=d["variation_sigma"])


@dataclass(frozen=True)
class HomeConfiguration:
    template_name: str
    rooms: tuple[Room, ...]
    devices: tuple[DeviceInstance, ...]
    network: dict[str, tuple[str, ...]]   # device id -> hub/peer ids
    inhabitants: tuple[InhabitantProfile, ...]
    behavior_params: dict
    seed: int
    catalog_version: str

    def room_by_id(self) -> dict[str, Room]:
        return {r.id: r for r in self.rooms}

    def to_dict(self) -> dict:
        return {
            "template_name": self.template_name,
            "rooms": [r.to_dict() for r in self.rooms],
            "devices": [d.to_dict() for d in self.devices],
            "network": {k: list(v) for k, v in sorted(self.network.items())},
            "inhabitants": [p.to_dict() for p in self.inhabitants],
            "behavior_params": self.behavior_params,
            "seed": self.seed,
            "catalog_version": self.catalog_version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HomeConfiguration":
        return cls(
            template_name=d["template_name"],
            rooms=tuple(Room.from_dict(r) for r in d["rooms"]),
            devices=tuple(DeviceInstance.from_dict(x) for x in d["devices"]),
            network={k: tuple(v) for k, v in d["network"].items()},
            inhabitants=tuple(InhabitantProfile.from_dict(p) for p in d["inhabitants"]),
            behavior_params=d["behavior_params"],
            seed=d["seed"],
            catalog_version=d["catalog_version"],
        )


BENIGN = "benign"
ATTACK = "attack"
TAXONOMY_MAX_DEPTH = 7


@dataclass(frozen=True)
class Label:
    verdict: str                           # benign | attack
    threat_type: Optional[str]
    attack_technique: Optional[str]
    confidence: float
    taxonomy_path: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "threat_type": self.threat_type,
                "attack_technique": self.attack_technique, "confidence": self.confidence,
                "taxonomy_path": list(self.taxonomy_path)}

    @classmethod
    def from_dict(cls, d: dict) -> "Label":
        return cls(verdict=d["verdict"], threat_type=d.get("threat_type"),
                   attack_technique=d.get("attack_technique"), confidence=d["confidence"],
                   taxonomy_path=tuple(d["taxonomy_path"]))


EVENT_KINDS = ("state-change", "telemetry", "network-packet")


@dataclass
class SimulationEvent:
    timestamp: float                       # simulated seconds from run start
    device_id: str
    device_type: str
    category: str
    room_id: str
    protocol: str
    event_kind: str
    payload: dict
    inhabitant_id: Optional[str] = None
    scenario_id: Optional[str] = None      # stamped on attack events
    phase: Optional[str] = None            # kill-chain phase for attack events
    label: Optional[Label] = None

    def to_dict(self) -> dict:
        return {
            "timestamp": self.timestamp, "device_id": self.device_id,
            "device_type": self.device_type, "category": self.category,
            "room_id": self.room_id, "protocol": self.protocol,
            "event_kind": self.event_kind, "payload": self.payload,
            "inhabitant_id": self.inhabitant_id, "scenario_id": self.scenario_id,
            "phase": self.phase,
            "label": self.label.to_dict() if self.label else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimulationEvent":
        return cls(
            timestamp=d["timestamp"], device_id=d["device_id"], device_type=d["device_type"],
            category=d["category"], room_id=d["room_id"], protocol=d["protocol"],
            event_kind=d["event_kind"], payload=d["payload"],
            inhabitant_id=d.get("inhabitant_id"), scenario_id=d.get("scenario_id"),
            phase=d.get("phase"),
            label=Label.from_dict(d["label"]) if d.get("label") else None,
        )


@dataclass(frozen=True)
class ThreatSpec:
    threat_type: str
    category: str
    base_rate: float                 # events per simulated minute
    base_stealth: float
    protocol: str
    tactic: str
    signature: dict
    bytes_range: tuple[int, int]
    techniques: tuple[str, ...]      # MITRE ATT&CK technique ids
    phase_templates: tuple[tuple[str, float], ...]   # (phase, relative duration)
    indicators: tuple[dict, ...]
    stub: bool = False

    def validate(self, phases: list[str], categories: list[str], protocols: set[str]) -> None:
        if not (0.0 <= self.base_stealth <= 1.0):
            raise CatalogError(f"threat {self.threat_type}: base_stealth outside [0,1]")
        if self.category not in categories:
            raise CatalogError(f"threat {self.threat_type}: unknown category {self.category}")
        if self.protocol not in protocols:
            raise CatalogError(f"threat {self.threat_type}: unknown protocol {self.protocol}")
        if not self.techniques:
            raise CatalogError(f"threat {self.threat_type}: at least one technique id required")
        order = [phases.index(p) for p, _ in self.phase_templates]
        if order != sorted(order) or len(set(order)) != len(order):
            raise CatalogError(f"threat {self.threat_type}: phases out of canonical order")


@dataclass(frozen=True)
class ThreatRegistry:
    version: str
    phases: tuple[str, ...]
    categories: tuple[str, ...]
    defaults: dict
    vuln: dict[str, dict[str, float]]     # threat category -> device category -> [0,1]
    threats: dict[str, ThreatSpec]

    def spec(self, threat_type: str) -> ThreatSpec:
        try:
            return self.threats[threat_type]
        except KeyError:
            raise CatalogError(f"unknown threat type: {threat_type}") from None

    def vuln_score(self, threat: ThreatSpec, device_category: str) -> float:
        return self.vuln.get(threat.category, {}).get(device_category, 0.2)


class CompatibilityMatrix:
    """Category-room placement affinity; every pair is present (default 0)."""

    def __init__(self, entries: dict[str, dict[str, float]],
                 categories: list[str], room_types: list[str]):
        self._matrix: dict[tuple[str, str], float] = {}
        for cat in categories:
            row = entries.get(cat, {})
            for rt in room_types:
                v = float(row.get(rt, 0.0))
                if not (0.0 <= v <= 1.0):
                    raise CatalogError(f"compat({cat},{rt}) = {v} outside [0,1]")
                self._matrix[(cat, rt)] = v

    def get(self, category: str, room_type: str) -> float:
        return self._matrix[(category, room_type)]

    def items(self):
        return self._matrix.items()


@dataclass(frozen=True)
class Catalogs:
    """Immutable bundle of every loaded catalog."""

    version: str
    content_digest: str
    protocols: tuple[str, ...]
    protocol_families: dict[str, str]
    room_types: dict[str, dict]           # name -> {"capacity": int}
    categories: tuple[str, ...]
    activities: tuple[str, ...]
    device_types: dict[str, DeviceCatalogEntry]
    templates: dict[str, ResidenceTemplate]
    compat: CompatibilityMatrix
    activity_model: dict
    inhabitant_kinds: dict[str, dict]
    household_mix: list[list[str]]
    chi: dict[str, tuple[str, ...]]
    activity_rooms: dict[str, tuple[str, ...]]
    phi_temporal: dict[str, float]
    phi_tech: dict[str, float]
    phi_context: dict[str, dict[str, float]]
    threat_registry: ThreatRegistry

    def template(self, name: str) -> ResidenceTemplate:
        try:
            return self.templates[name]
        except KeyError:
            raise CatalogError(f"unknown template: {name}") from None

    def category_density(self, category: str) -> float:
        return sum(e.base_density for e in self.device_types.values() if e.category == category)

    def types_in_category(self, category: str) -> list[DeviceCatalogEntry]:
        return sorted((e for e in self.device_types.values() if e.category == category),
                      key=lambda e: e.type_name)


def _read_json(path: Path) -> dict:
    if not path.exists():
        raise CatalogError(f"catalog file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog file {path.name} is not valid JSON: {exc}") from exc
    if "schema_version" not in doc:
        raise CatalogError(f"catalog file {path.name} missing mandatory schema_version")
    return doc


def default_data_dir() -> Path:
    return Path(str(resources.files("homesim") / "data"))


def load_catalogs(path: Optional[str | Path] = None) -> Catalogs:
    """Load the catalog bundle from a directory holding catalog.json + threats.json.

    With no path, loads the packaged default catalog.
    """
    base = Path(path) if path is not None else default_data_dir()
    raw = _read_json(base / "catalog.json")
    raw_threats = _read_json(base / "threats.json")

    protocols = list(raw["protocols"])
    if len(protocols) != EXPECTED_PROTOCOLS or len(set(protocols)) != len(protocols):
        raise CatalogError(f"expected {EXPECTED_PROTOCOLS} distinct protocols, got {len(protocols)}")
    families = dict(raw["protocol_families"])
    if set(families) != set(protocols):
        raise CatalogError("protocol_families must cover exactly the declared protocols")

    room_types = dict(raw["room_types"])
    if len(room_types) != EXPECTED_ROOM_TYPES:
        raise CatalogError(f"expected {EXPECTED_ROOM_TYPES} room types, got {len(room_types)}")
    for name, info in room_types.items():
        if int(info["capacity"]) < 1:
            raise CatalogError(f"room type {name}: capacity must be >= 1")

    categories = list(raw["categories"])
    if len(categories) != EXPECTED_CATEGORIES or len(set(categories)) != len(categories):
        raise CatalogError(f"expected {EXPECTED_CATEGORIES} distinct categories")

    activities = list(raw["activities"])
    if len(activities) != EXPECTED_ACTIVITIES or len(set(activities)) != len(activities):
        raise CatalogError(f"expected {EXPECTED_ACTIVITIES} distinct activities")

    raw_devices = raw["device_types"]
    if not raw_devices:
        raise CatalogError("empty catalog: no device types declared")
    declared = int(raw["device_type_count"])
    if declared != len(raw_devices):
        raise CatalogError(
            f"device registry declares {declared} types but contains {len(raw_devices)}")
    device_types = {}
    proto_set = set(protocols)
    for name, d in raw_devices.items():
        if d["category"] not in categories:
            raise CatalogError(f"device {name}: unknown category {d['category']}")
        entry = DeviceCatalogEntry(
            type_name=name,
            category=d["category"],
            protocols=tuple(d["protocols"]),
            power_profile={k: float(v) for k, v in d["power_profile"].items()},
            states=tuple(d["states"]),
            transitions=tuple((a, b) for a, b in d["transitions"]),
            base_density=float(d["base_density"]),
            value_ranges={k: (float(v[0]), float(v[1])) for k, v in d["value_ranges"].items()},
            telemetry_interval_s=float(d["telemetry_interval_s"]),
            activation_rate=float(d["activation_rate"]),
        )
        entry.validate(proto_set)
        device_types[name] = entry

    templates = {}
    for name, t in raw["templates"].items():
        tpl = ResidenceTemplate(
            name=name,
            room_count=int(t["room_count"]),
            floor_area=float(t["floor_area"]),
            device_density_bounds=(float(t["density_bounds"][0]), float(t["density_bounds"][1])),
            room_type_distribution={k: float(v) for k, v in t["room_type_distribution"].items()},
            default_inhabitants=int(t["default_inhabitants"]),
            device_count=t.get("device_count"),
        )
        tpl.validate(set(room_types))
        templates[name] = tpl

    compat = CompatibilityMatrix(raw["compat"], categories, list(room_types))

    model = raw["activity_model"]
    for kind, prefs in model["preferences"].items():
        for period, weights in prefs.items():
            unknown = set(weights) - set(activities)
            if unknown:
                raise CatalogError(f"activity model {kind}/{period}: unknown activities {sorted(unknown)}")

    phi_context = {}
    for act, row in raw["phi_context"].items():
        if act not in activities:
            raise CatalogError(f"phi_context: unknown activity {act}")
        phi_context[act] = {k: float(v) for k, v in row.items()}

    registry = _load_threats(raw_threats, categories, proto_set)

    bundle = Catalogs(
        version=str(raw["catalog_version"]),
        content_digest=digest_of([raw, raw_threats]),
        protocols=tuple(protocols),
        protocol_families=families,
        room_types=room_types,
        categories=tuple(categories),
        activities=tuple(activities),
        device_types=device_types,
        templates=templates,
        compat=compat,
        activity_model=model,
        inhabitant_kinds=raw["inhabitant_kinds"],
        household_mix=raw["household_mix"],
        chi={k: tuple(v) for k, v in raw["chi"].items()},
        activity_rooms={k: tuple(v) for k, v in raw["activity_rooms"].items()},
        phi_temporal={k: float(v) for k, v in raw["phi_temporal"].items()},
        phi_tech={k: float(v) for k, v in raw["phi_tech"].items()},
        phi_context=phi_context,
        threat_registry=registry,
    )
    return bundle


def _load_threats(raw: dict, device_categories: list[str], protocols: set[str]) -> ThreatRegistry:
    phases = list(raw["phases"])
    categories = list(raw["categories"])
    vuln = {}
    for tcat, row in raw["vuln"].items():
        if tcat not in categories:
            raise CatalogError(f"vuln table: unknown threat category {tcat}")
        for dcat, v in row.items():
            if dcat not in device_categories:
                raise CatalogError(f"vuln table: unknown device category {dcat}")
            if not (0.0 <= float(v) <= 1.0):
                raise CatalogError(f"vuln({tcat},{dcat}) outside [0,1]")
        vuln[tcat] = {k: float(v) for k, v in row.items()}

    threats = {}
    for name, t in raw["threats"].items():
        if name in threats:
            raise CatalogError(f"duplicate threat type {name}")
        spec = ThreatSpec(
            threat_type=name,
            category=t["category"],
            base_rate=float(t["base_rate"]),
            base_stealth=float(t["base_stealth"]),
            protocol=t["protocol"],
            tactic=t["tactic"],
            signature=dict(t["signature"]),
            bytes_range=(int(t["bytes_range"][0]), int(t["bytes_range"][1])),
            techniques=tuple(t["techniques"]),
            phase_templates=tuple((p, float(w)) for p, w in t["phases"]),
            indicators=tuple(t["indicators"]),
            stub=bool(t.get("stub", False)),
        )
        spec.validate(phases, categories, protocols)
        threats[name] = spec

    return ThreatRegistry(
        version=str(raw["registry_version"]),
        phases=tuple(phases),
        categories=tuple(categories),
        defaults={k: float(v) for k, v in raw["defaults"].items()},
        vuln=vuln,
        threats=threats,
    )


def validate_home(config: HomeConfiguration, catalogs: Catalogs) -> list[str]:
    """Check every HomeConfiguration invariant; returns violations (empty = valid)."""
    violations = []
    rooms = {r.id: r for r in config.rooms}
    if len(rooms) != len(config.rooms):
        violations.append("duplicate room ids")
    for r in config.rooms:
        if r.area <= 0:
            violations.append(f"room {r.id}: area must be > 0")
        if r.capacity < 1:
            violations.append(f"room {r.id}: capacity must be >= 1")
        if r.room_type not in catalogs.room_types:
            violations.append(f"room {r.id}: unknown room type {r.room_type}")
        for other in r.adjacency:
            if other not in rooms:
                violations.append(f"room {r.id}: adjacent to missing room {other}")
            elif r.id not in rooms[other].adjacency:
                violations.append(f"adjacency not symmetric between {r.id} and {other}")

    seen_devices = set()
    for d in config.devices:
        if d.id in seen_devices:
            violations.append(f"duplicate device id {d.id}")
        seen_devices.add(d.id)
        if d.room_id not in rooms:
            violations.append(f"device {d.id}: references missing room {d.room_id}")
        entry = catalogs.device_types.get(d.type_name)
        if entry is None:
            violations.append(f"device {d.id}: unknown type {d.type_name}")
        elif entry.category != d.category:
            violations.append(f"device {d.id}: category mismatch with catalog")
        elif d.room_id in rooms:
            if catalogs.compat.get(entry.category, rooms[d.room_id].room_type) <= 0:
                violations.append(
                    f"device {d.id}: zero compatibility with room type "
                    f"{rooms[d.room_id].room_type}")

    template = catalogs.templates.get(config.template_name)
    if template is None:
        violations.append(f"unknown template {config.template_name}")
    else:
        total_area = sum(r.area for r in config.rooms)
        lo, hi = template.device_density_bounds
        mult = float(config.behavior_params.get("density_multiplier", 1.0))
        n = len(config.devices)
        if not (lo * mult * total_area - 0.5 <= n <= hi * mult * total_area + 0.5):
            violations.append(
                f"device count {n} outside density bounds "
                f"[{lo * mult * total_area:.1f}, {hi * mult * total_area:.1f}]")

    for p in config.inhabitants:
        try:
            p.validate()
        except CatalogError as exc:
            violations.append(str(exc))

    for dev_id in config.network:
        if dev_id not in seen_devices:
            violations.append(f"network entry for unknown device {dev_id}")
    return violations
