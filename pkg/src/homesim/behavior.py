"""Multi-inhabitant presence, activity, and device-interaction modeling.

Activity sequences follow a time-inhomogeneous Markov chain over the 16
catalog activity states, with one row-stochastic transition matrix per
(inhabitant kind, diurnal period). Presence derives from schedule blocks
with Gaussian per-inhabitant variation; interaction likelihood is the
product of temporal, proficiency, and context factors; device activation
takes the max over inhabitants. Room assignment enforces per-room capacity
with spill to the nearest adjacent room.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Catalogs, DeviceInstance, HomeConfiguration, InhabitantProfile, Room
from .rng import Stream

PERIODS = ("morning", "daytime", "evening", "night")

HOUR = 3600.0
DAY = 86400.0


def diurnal_period(t: float) -> str:
    """Half-open daily intervals: morning [06,09), daytime [09,17), evening [17,21), night [21,06)."""
    h = (t / HOUR) % 24.0
    if 6.0 <= h < 9.0:
        return "morning"
    if 9.0 <= h < 17.0:
        return "daytime"
    if 17.0 <= h < 21.0:
        return "evening"
    return "night"


@dataclass(frozen=True)
class ActivityModel:
    states: tuple[str, ...]
    index: dict[str, int]
    matrices: dict[str, dict[str, list[list[float]]]]   # kind -> period -> row-stochastic matrix
    initial_state: dict[str, str]
    forbidden: dict[str, frozenset[str]]

    def matrix(self, kind: str, period: str) -> list[list[float]]:
        return self.matrices[kind][period]


def build_activity_model(catalogs: Catalogs) -> ActivityModel:
    """Expand the catalog preference weights into per-kind, per-period matrices."""
    spec = catalogs.activity_model
    states = tuple(catalogs.activities)
    index = {s: i for i, s in enumerate(states)}
    forbidden = {k: frozenset(v) for k, v in spec.get("forbidden", {}).items()}
    default_sp = spec["self_prob_default"]
    overrides = spec.get("self_prob_overrides", {})

    matrices: dict[str, dict[str, list[list[float]]]] = {}
    for kind, prefs_by_period in spec["preferences"].items():
        banned = forbidden.get(kind, frozenset())
        matrices[kind] = {}
        for period in PERIODS:
            prefs = prefs_by_period.get(period, {})
            matrix = []
            for s in states:
                sp = overrides.get(s, {}).get(period, default_sp[kind])
                weights = [
                    0.0 if (s2 == s or s2 in banned) else float(prefs.get(s2, 0.0))
                    for s2 in states
                ]
                z = sum(weights)
                if z <= 0.0:
                    row = [0.0] * len(states)
                    row[index[s]] = 1.0
                else:
                    row = [(1.0 - sp) * w / z for w in weights]
                    row[index[s]] = sp
                total = sum(row)
                if abs(total - 1.0) > 1e-9:
                    raise ValueError(f"row for {kind}/{period}/{s} sums to {total}")
                matrix.append(row)
            matrices[kind][period] = matrix
    return ActivityModel(states=states, index=index, matrices=matrices,
                         initial_state=dict(spec["initial_state"]), forbidden=forbidden)


def schedule_presence(profile: InhabitantProfile, t: float) -> float:
    """Piecewise-constant at-home probability from the schedule.

    1 outside work blocks, 0 while at work (unless working from home), 0.5
    during the half-hour transitions around work start and end.
    """
    s = profile.schedule
    if s.work_start is None or s.work_end is None or s.work_from_home:
        return 1.0
    h = (t / HOUR) % 24.0
    ws, we = s.work_start, s.work_end
    if ws <= h < we:
        return 0.0
    if ws - 0.5 <= h < ws or we <= h < we + 0.5:
        return 0.5
    return 1.0


def apply_presence_noise(base: float, sigma: float, stream: Stream) -> float:
    """Multiplicative Gaussian variation, clamped into [0,1] after the product."""
    eps = stream.normal(0.0, sigma)
    return min(1.0, max(0.0, base * (1.0 + eps)))


def presence_probability(profile: InhabitantProfile, t: float, stream: Stream) -> float:
    """Schedule probability with per-inhabitant variation, clamped to [0,1]."""
    return apply_presence_noise(schedule_presence(profile, t), profile.variation_sigma, stream)


def activity_step(model: ActivityModel, kind: str, state: str, t: float, stream: Stream) -> str:
    if state not in model.index:
        raise ValueError(f"unknown activity state: {state}")
    row = model.matrix(kind, diurnal_period(t))[model.index[state]]
    return model.states[stream.weighted_index(row)]


def phi_tech(savviness: float, params: dict[str, float]) -> float:
    return params["floor"] + params["slope"] * savviness


def interaction_likelihood(profile: InhabitantProfile, t: float, state: str,
                           category: str, catalogs: Catalogs) -> float:
    """Temporal x proficiency x context product; non-decreasing in tech-savviness."""
    temporal = catalogs.phi_temporal[diurnal_period(t)]
    tech = phi_tech(profile.tech_savviness, catalogs.phi_tech)
    context = catalogs.phi_context.get(state, {}).get(category, 0.0)
    return temporal * tech * context


@dataclass
class PresenceTrace:
    inhabitant_id: str
    kind: str
    start: float
    tick_seconds: float
    present: list[bool]
    activity: list[str | None]   # None while absent
    room: list[str | None]

    def tick_of(self, t: float) -> int:
        return int((t - self.start) // self.tick_seconds)

    def to_dict(self) -> dict:
        return {
            "inhabitant_id": self.inhabitant_id, "kind": self.kind, "start": self.start,
            "tick_seconds": self.tick_seconds,
            "present": [1 if p else 0 for p in self.present],
            "activity": self.activity, "room": self.room,
        }


def device_activation(device: DeviceInstance, traces: list[PresenceTrace],
                      profiles: list[InhabitantProfile], t: float,
                      catalogs: Catalogs) -> float:
    """Max over inhabitants of compat * presence * activity factor, clamped to [0,1]."""
    if len(traces) != len(profiles):
        raise ValueError("traces and profiles must align")
    best = 0.0
    for trace, profile in zip(traces, profiles):
        if catalogs and device.category not in catalogs.chi.get(profile.kind, ()):
            continue
        k = trace.tick_of(t)
        if k < 0 or k >= len(trace.present) or not trace.present[k]:
            continue
        state = trace.activity[k]
        if state is None:
            continue
        f = interaction_likelihood(profile, t, state, device.category, catalogs)
        if f > best:
            best = f
    return min(1.0, max(0.0, best))


def assign_rooms(occupants: list[tuple[InhabitantProfile, str]], rooms: list[Room],
                 stream: Stream, catalogs: Catalogs) -> dict[str, str]:
    """Assign each present inhabitant a room for their activity.

    Processes inhabitants in id order; never exceeds a room's capacity;
    overflow spills breadth-first through adjacency to the nearest room with
    free capacity. Raises if the home cannot hold everyone.
    """
    total_capacity = sum(r.capacity for r in rooms)
    if len(occupants) > total_capacity:
        raise ValueError(f"occupancy {len(occupants)} exceeds home capacity {total_capacity}")

    by_id = {r.id: r for r in rooms}
    load: dict[str, int] = {r.id: 0 for r in rooms}
    assignment: dict[str, str] = {}

    for profile, activity in sorted(occupants, key=lambda o: o[0].id):
        preferred_types = catalogs.activity_rooms.get(activity, ())
        start = None
        for rt in preferred_types:
            candidates = sorted((r for r in rooms if r.room_type == rt),
                                key=lambda r: (load[r.id], r.id))
            if candidates:
                start = candidates[0]
                break
        if start is None:
            candidates = sorted(rooms, key=lambda r: (load[r.id], r.id))
            start = candidates[0] if len(candidates) == 1 else stream.choice(
                [c for c in candidates if load[c.id] == load[candidates[0].id]])

        placed = _place_with_spill(start, by_id, load)
        assignment[profile.id] = placed
        load[placed] += 1
    return assignment


def _place_with_spill(start: Room, by_id: dict[str, Room], load: dict[str, int]) -> str:
    if load[start.id] < start.capacity:
        return start.id
    seen = {start.id}
    frontier = [start.id]
    while frontier:
        next_frontier = []
        for rid in frontier:
            for nb in sorted(by_id[rid].adjacency):
                if nb in seen:
                    continue
                seen.add(nb)
                if load[nb] < by_id[nb].capacity:
                    return nb
                next_frontier.append(nb)
        frontier = next_frontier
    # Disconnected leftovers: fall back to any room with free capacity.
    for rid in sorted(by_id):
        if load[rid] < by_id[rid].capacity:
            return rid
    raise ValueError("no room with free capacity")


def simulate_behavior(home: HomeConfiguration, profiles: list[InhabitantProfile],
                      window: tuple[float, float], stream: Stream,
                      catalogs: Catalogs) -> list[PresenceTrace]:
    """Step every inhabitant through the window; one trace per inhabitant.

    Inhabitants advance in id order each tick, so output is independent of
    any outer parallelism. Activity transitions happen only at tick
    boundaries.
    """
    start, end = window
    if end <= start:
        raise ValueError("window must have positive length")
    model = build_activity_model(catalogs)
    tick = float(home.behavior_params.get("tick_seconds", 60))
    n_ticks = int((end - start) // tick)

    ordered = sorted(profiles, key=lambda p: p.id)
    traces = {
        p.id: PresenceTrace(inhabitant_id=p.id, kind=p.kind, start=start, tick_seconds=tick,
                            present=[], activity=[], room=[])
        for p in ordered
    }
    current = {p.id: model.initial_state[p.kind] for p in ordered}
    rooms = list(home.rooms)

    for k in range(n_ticks):
        t = start + k * tick
        occupants: list[tuple[InhabitantProfile, str]] = []
        for p in ordered:
            prob = presence_probability(p, t, stream)
            here = stream.random() < prob
            state = activity_step(model, p.kind, current[p.id], t, stream)
            current[p.id] = state
            tr = traces[p.id]
            tr.present.append(here)
            tr.activity.append(state if here else None)
            if here:
                occupants.append((p, state))
            else:
                tr.room.append(None)
        placed = assign_rooms(occupants, rooms, stream, catalogs) if occupants else {}
        for p, _ in occupants:
            traces[p.id].room.append(placed[p.id])
    return [traces[p.id] for p in ordered]
