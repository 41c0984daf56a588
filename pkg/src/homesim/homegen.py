"""Template-driven home generation.

Pipeline: template selection -> room instantiation (type sampling + area
split) -> compatibility-weighted device placement -> network topology.
Room sampling and device placement consume disjoint salted streams, so
changing one stage's draws never perturbs another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .catalog import (
    Catalogs,
    CatalogError,
    DeviceInstance,
    HomeConfiguration,
    InhabitantProfile,
    ResidenceTemplate,
    Room,
    Schedule,
    validate_home,
)
from .rng import Stream, derive_stream

ROOM_AREA_ALPHA = 2  # symmetric Dirichlet shape for the floor-area split


@dataclass(frozen=True)
class GenerationRequest:
    template: str
    seed: int
    room_count: Optional[int] = None       # override
    density_multiplier: float = 1.0        # override

    def __post_init__(self):
        if self.density_multiplier <= 0:
            raise ValueError("density_multiplier must be > 0")
        if self.room_count is not None and self.room_count < 1:
            raise ValueError("room_count override must be >= 1")

    def to_dict(self) -> dict:
        return {"template": self.template, "seed": self.seed,
                "room_count": self.room_count, "density_multiplier": self.density_multiplier}


def select_template(request: GenerationRequest, catalogs: Catalogs) -> ResidenceTemplate:
    base = catalogs.template(request.template)
    if request.room_count is None:
        return base
    return ResidenceTemplate(
        name=base.name, room_count=request.room_count, floor_area=base.floor_area,
        device_density_bounds=base.device_density_bounds,
        room_type_distribution=base.room_type_distribution,
        default_inhabitants=base.default_inhabitants,
        device_count=base.device_count,
    )


def instantiate_rooms(template: ResidenceTemplate, catalogs: Catalogs, stream: Stream) -> list[Room]:
    """Sample room types from the template distribution and split the floor area."""
    names = sorted(template.room_type_distribution)
    weights = [template.room_type_distribution[n] for n in names]
    types = [names[stream.weighted_index(weights)] for _ in range(template.room_count)]

    shares = stream.dirichlet(ROOM_AREA_ALPHA, template.room_count)
    areas = [template.floor_area * s for s in shares]
    # Exact partition: assign the residual to the last room.
    areas[-1] = template.floor_area - sum(areas[:-1])

    rooms = []
    x = 0.0
    for i, (rt, area) in enumerate(zip(types, areas)):
        width = math.sqrt(area)
        rooms.append(Room(
            id=f"room-{i:02d}", room_type=rt, area=area,
            coordinates=(round(x + width / 2.0, 6), 0.0),
            adjacency=frozenset(), capacity=int(catalogs.room_types[rt]["capacity"]),
        ))
        x += width

    adjacency = _room_adjacency(rooms, stream)
    return [Room(id=r.id, room_type=r.room_type, area=r.area, coordinates=r.coordinates,
                 adjacency=frozenset(adjacency[r.id]), capacity=r.capacity)
            for r in rooms]


def _room_adjacency(rooms: list[Room], stream: Stream) -> dict[str, set[str]]:
    """Hallway-spine adjacency when hallways exist, else a random spanning tree."""
    adj: dict[str, set[str]] = {r.id: set() for r in rooms}

    def connect(a: str, b: str) -> None:
        adj[a].add(b)
        adj[b].add(a)

    hallways = [r for r in rooms if r.room_type == "hallway"]
    if hallways:
        for i in range(1, len(hallways)):
            connect(hallways[i - 1].id, hallways[i].id)
        for i, r in enumerate(rooms):
            if r.room_type == "hallway":
                continue
            spine = hallways[i % len(hallways)]
            connect(r.id, spine.id)
    else:
        for i in range(1, len(rooms)):
            j = stream.randrange(i)
            connect(rooms[i].id, rooms[j].id)
    return adj


def place_devices(rooms: list[Room], catalogs: Catalogs, stream: Stream,
                  density_multiplier: float = 1.0,
                  target_count: Optional[int] = None,
                  count_bounds: Optional[tuple[int, int]] = None) -> list[DeviceInstance]:
    """Poisson placement with mean density * area * compat per (room, type).

    A deterministic calibration pass then trims the lowest-weight placements
    or adds the highest-weight missing candidates until the total matches
    `target_count` (pinned templates) or falls inside `count_bounds`.
    """
    if not rooms:
        raise ValueError("place_devices requires at least one room")

    entries = sorted(catalogs.device_types.values(), key=lambda e: e.type_name)
    placements: list[tuple[float, str, str]] = []   # (weight, room_id, type_name)
    for room in rooms:
        for entry in entries:
            compat = catalogs.compat.get(entry.category, room.room_type)
            mean = entry.base_density * density_multiplier * room.area * compat
            if mean <= 0:
                continue
            count = stream.poisson(mean)
            placements.extend((mean, room.id, entry.type_name) for _ in range(count))

    lo = hi = None
    if target_count is not None:
        lo = hi = target_count
    elif count_bounds is not None:
        lo, hi = count_bounds

    if hi is not None and len(placements) > hi:
        placements.sort(key=lambda p: (-p[0], p[1], p[2]))
        del placements[hi:]
    if lo is not None and len(placements) < lo:
        # Top-ups rotate across categories (best candidate of each in turn)
        # so calibration fills the home with a mixed device population
        # instead of many copies of the single heaviest type.
        by_category: dict[str, list[tuple[float, str, str]]] = {}
        for room in rooms:
            for entry in entries:
                compat = catalogs.compat.get(entry.category, room.room_type)
                w = entry.base_density * density_multiplier * room.area * compat
                if w > 0:
                    by_category.setdefault(entry.category, []).append((w, room.id, entry.type_name))
        for cands in by_category.values():
            cands.sort(key=lambda p: (-p[0], p[1], p[2]))
        order = sorted(by_category, key=lambda c: (-by_category[c][0][0], c))
        i = 0
        while len(placements) < lo:
            cands = by_category[order[i % len(order)]]
            placements.append(cands[(i // len(order)) % len(cands)])
            i += 1

    placements.sort(key=lambda p: (p[1], p[2], -p[0]))
    devices = []
    for idx, (_, room_id, type_name) in enumerate(placements):
        devices.append(DeviceInstance(
            id=f"dev-{idx:03d}",
            type_name=type_name,
            category=catalogs.device_types[type_name].category,
            room_id=room_id,
            network_address=f"10.0.{idx // 250}.{idx % 250 + 1}",
        ))
    return devices


def build_network(devices: list[DeviceInstance], catalogs: Catalogs) -> dict[str, tuple[str, ...]]:
    """Assign one hub role per protocol family and connect every device to its hubs."""
    if not devices:
        raise ValueError("build_network requires at least one device")

    def families_of(dev: DeviceInstance) -> list[str]:
        entry = catalogs.device_types[dev.type_name]
        return sorted({catalogs.protocol_families[p] for p in entry.protocols})

    used_families = sorted({f for d in devices for f in families_of(d)})

    def hub_rank(dev: DeviceInstance) -> tuple:
        entry = catalogs.device_types[dev.type_name]
        return (0 if dev.category == "network" else 1, -len(entry.protocols), dev.id)

    hubs: dict[str, str] = {}
    for fam in used_families:
        members = [d for d in devices if fam in families_of(d)]
        hubs[fam] = min(members, key=hub_rank).id

    primary = hubs[used_families[0]]
    network: dict[str, set[str]] = {d.id: set() for d in devices}
    for dev in devices:
        for fam in families_of(dev):
            hub = hubs[fam]
            if hub != dev.id:
                network[dev.id].add(hub)
                network[hub].add(dev.id)
    for fam, hub in hubs.items():
        if hub != primary:
            network[hub].add(primary)
            network[primary].add(hub)
    return {dev_id: tuple(sorted(peers)) for dev_id, peers in network.items()}


def network_is_connected(network: dict[str, tuple[str, ...]]) -> bool:
    if not network:
        return False
    seen = set()
    stack = [next(iter(sorted(network)))]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(network[node])
    return len(seen) == len(network)


def default_inhabitants(template: ResidenceTemplate, catalogs: Catalogs,
                        stream: Stream) -> list[InhabitantProfile]:
    """Derive the household from the template head count, with schedule jitter."""
    mix = catalogs.household_mix
    count = template.default_inhabitants
    kinds = list(mix[count]) if count < len(mix) else list(mix[-1])
    while len(kinds) < count:
        kinds.append("adult")

    profiles = []
    for i, kind in enumerate(kinds):
        base = catalogs.inhabitant_kinds[kind]
        jitter = round(stream.uniform(-0.5, 0.5), 4)
        profiles.append(InhabitantProfile(
            id=f"res-{i}",
            kind=kind,
            schedule=Schedule(
                wake=round((base["wake"] + jitter) % 24.0, 4),
                sleep=base["sleep"],
                work_start=base["work_start"],
                work_end=base["work_end"],
                work_from_home=bool(base["work_from_home"]),
            ),
            tech_savviness=float(base["tech_savviness"]),
            variation_sigma=float(base["variation_sigma"]),
        ))
    return profiles


def generate_home(request: GenerationRequest, catalogs: Catalogs) -> HomeConfiguration:
    """Full deterministic generation; a pure function of (catalog, request)."""
    template = select_template(request, catalogs)

    rooms = instantiate_rooms(template, catalogs, derive_stream(request.seed, "rooms"))

    target = None
    bounds = None
    lo, hi = template.device_density_bounds
    area = template.floor_area
    mult = request.density_multiplier
    if template.device_count is not None:
        target = round(template.device_count * mult)
    else:
        bounds = (math.ceil(lo * mult * area), max(math.ceil(lo * mult * area), math.floor(hi * mult * area)))
    devices = place_devices(rooms, catalogs, derive_stream(request.seed, "devices"),
                            density_multiplier=request.density_multiplier,
                            target_count=target, count_bounds=bounds)

    network = build_network(devices, catalogs)
    inhabitants = default_inhabitants(template, catalogs, derive_stream(request.seed, "residents"))

    config = HomeConfiguration(
        template_name=template.name,
        rooms=tuple(rooms),
        devices=tuple(devices),
        network=network,
        inhabitants=tuple(inhabitants),
        behavior_params={
            "tick_seconds": catalogs.activity_model["tick_seconds"],
            "phi_tech": catalogs.phi_tech,
            "phi_temporal": catalogs.phi_temporal,
            "density_multiplier": request.density_multiplier,
        },
        seed=request.seed,
        catalog_version=catalogs.version,
    )
    violations = validate_home(config, catalogs)
    if violations:
        raise CatalogError(f"generated home fails validation: {violations[:3]}")
    return config
