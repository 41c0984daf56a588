from __future__ import annotations

import pytest

from homesim.behavior import (
    ActivityModel,
    PresenceTrace,
    activity_step,
    assign_rooms,
    build_activity_model,
    device_activation,
    diurnal_period,
    interaction_likelihood,
    presence_probability,
    schedule_presence,
    simulate_behavior,
)
from homesim.catalog import InhabitantProfile, Room, Schedule
from homesim.homegen import GenerationRequest, generate_home
from homesim.rng import derive_stream

HOUR = 3600.0


def _profile(kind="adult", sigma=0.0, work=True, wfh=False, tech=0.7, pid="res-0"):
    return InhabitantProfile(
        id=pid, kind=kind,
        schedule=Schedule(wake=6.5, sleep=23.0,
                          work_start=9.0 if work else None,
                          work_end=17.0 if work else None,
                          work_from_home=wfh),
        tech_savviness=tech, variation_sigma=sigma)


# -- diurnal periods ----------------------------------------------------------

@pytest.mark.parametrize("hour,expected", [
    (5.99, "night"), (6.0, "morning"), (8.99, "morning"), (9.0, "daytime"),
    (16.99, "daytime"), (17.0, "evening"), (20.99, "evening"), (21.0, "night"),
    (23.5, "night"), (0.0, "night"),
])
def test_diurnal_boundaries_half_open(hour, expected):
    assert diurnal_period(hour * HOUR) == expected
    assert diurnal_period(hour * HOUR + 86400.0) == expected  # next day too


# -- presence (Eq. with schedule + Gaussian variation) -------------------------

def test_presence_one_during_sleep_no_noise():
    p = _profile(sigma=0.0, work=True)
    # 03:00, asleep at home, commuter
    assert presence_probability(p, 3 * HOUR, derive_stream(1, "b")) == 1.0


def test_presence_zero_at_office_hours():
    p = _profile(sigma=0.0, work=True)
    assert presence_probability(p, 11 * HOUR, derive_stream(1, "b")) == 0.0


def test_presence_transition_half_hours():
    p = _profile(sigma=0.0)
    assert schedule_presence(p, 8.75 * HOUR) == 0.5
    assert schedule_presence(p, 17.25 * HOUR) == 0.5


def test_presence_wfh_always_home():
    p = _profile(sigma=0.0, wfh=True)
    assert presence_probability(p, 11 * HOUR, derive_stream(1, "b")) == 1.0


def test_presence_clamped_mean_matches_quadrature_oracle():
    """Empirical mean of clamp(0.9 * (1 + eps)) vs the analytic truncated mean.

    The raw product has mean 0.9; the oracle accounts for the [0,1] clamp.
    """
    from homesim.behavior import apply_presence_noise
    from scipy import stats

    base, sigma = 0.9, 0.5
    # X ~ Normal(base, (base * sigma)^2) clamped to [0, 1]:
    # E = P(X>1)*1 + integral of x phi(x) over [0, 1]
    mu, sd = base, base * sigma
    a, b = (0 - mu) / sd, (1 - mu) / sd
    phi = stats.norm
    expected = (phi.sf(b) * 1.0
                + mu * (phi.cdf(b) - phi.cdf(a))
                - sd * (phi.pdf(b) - phi.pdf(a)))

    stream = derive_stream(77, "presence-mc")
    n = 10_000
    mean = sum(apply_presence_noise(base, sigma, stream) for _ in range(n)) / n
    assert mean == pytest.approx(expected, abs=0.02)
    # clamping pulls the raw mean 0.9 down by the upper-tail mass
    assert expected == pytest.approx(0.77, abs=0.01)


# -- activity chain -----------------------------------------------------------

def test_matrices_row_stochastic(catalogs):
    model = build_activity_model(catalogs)
    for kind, by_period in model.matrices.items():
        for period, matrix in by_period.items():
            for row in matrix:
                assert abs(sum(row) - 1.0) <= 1e-9
                assert all(x >= 0.0 for x in row)


def test_deterministic_row_always_transitions(catalogs):
    model = build_activity_model(catalogs)
    states = model.states
    forced = {kind: {p: [[0.0] * len(states) for _ in states] for p in ("morning", "daytime", "evening", "night")}
              for kind in model.matrices}
    for kind in forced:
        for p in forced[kind]:
            for i in range(len(states)):
                forced[kind][p][i][(i + 1) % len(states)] = 1.0
    m2 = ActivityModel(states=states, index=model.index, matrices=forced,
                       initial_state=model.initial_state, forbidden=model.forbidden)
    nxt = activity_step(m2, "adult", states[0], 10 * HOUR, derive_stream(1, "a"))
    assert nxt == states[1]


def test_step_frequencies_match_row(catalogs):
    """100k draws from one row agree with the row probabilities within 1% abs."""
    model = build_activity_model(catalogs)
    state = "cooking"
    t = 18 * HOUR  # evening
    row = model.matrix("adult", "evening")[model.index[state]]
    stream = derive_stream(99, "mc-steps")
    counts = {s: 0 for s in model.states}
    n = 100_000
    for _ in range(n):
        counts[activity_step(model, "adult", state, t, stream)] += 1
    for s, p in zip(model.states, row):
        assert abs(counts[s] / n - p) < 0.01


def test_period_matrices_differ(catalogs):
    model = build_activity_model(catalogs)
    assert model.matrix("adult", "morning") != model.matrix("adult", "night")


def test_unknown_state_rejected(catalogs):
    model = build_activity_model(catalogs)
    with pytest.raises(ValueError, match="unknown activity state"):
        activity_step(model, "adult", "levitating", 0.0, derive_stream(1, "a"))


def test_pet_never_enters_forbidden_states(catalogs):
    model = build_activity_model(catalogs)
    stream = derive_stream(5, "pets")
    state = model.initial_state["pet"]
    banned = model.forbidden["pet"]
    for k in range(5000):
        state = activity_step(model, "pet", state, k * 60.0, stream)
        assert state not in banned


# -- interaction likelihood (temporal * tech * context) -------------------------

def test_context_zero_annihilates(catalogs):
    p = _profile()
    assert interaction_likelihood(p, 19 * HOUR, "sleeping", "entertainment", catalogs) == 0.0


def test_tech_floor_scales(catalogs):
    p0 = _profile(tech=0.0)
    t = 19 * HOUR
    value = interaction_likelihood(p0, t, "entertainment", "entertainment", catalogs)
    expected = catalogs.phi_temporal["evening"] * 0.1 * \
        catalogs.phi_context["entertainment"]["entertainment"]
    assert value == pytest.approx(expected, rel=1e-12)


def test_monotone_in_tech_savviness(catalogs):
    t = 19 * HOUR
    lo = interaction_likelihood(_profile(tech=0.5), t, "entertainment", "audio", catalogs)
    hi = interaction_likelihood(_profile(tech=1.0), t, "entertainment", "audio", catalogs)
    assert hi >= lo


# -- device activation (max over inhabitants) -----------------------------------

def _trace(pid, kind, present, activity, start=0.0, tick=60.0):
    return PresenceTrace(inhabitant_id=pid, kind=kind, start=start, tick_seconds=tick,
                         present=present, activity=activity,
                         room=[None] * len(present))


def test_activation_zero_when_nobody_home(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    device = config.devices[0]
    p = _profile()
    tr = _trace("res-0", "adult", [False], [None])
    assert device_activation(device, [tr], [p], 0.0, catalogs) == 0.0


def test_activation_max_over_inhabitants(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    device = next(d for d in config.devices if d.category == "audio")
    p1 = _profile(tech=0.2, pid="res-0")
    p2 = _profile(tech=1.0, pid="res-1")
    t1 = _trace("res-0", "adult", [True], ["entertainment"])
    t2 = _trace("res-1", "adult", [True], ["entertainment"])
    solo1 = device_activation(device, [t1], [p1], 0.0, catalogs)
    solo2 = device_activation(device, [t2], [p2], 0.0, catalogs)
    both = device_activation(device, [t1, t2], [p1, p2], 0.0, catalogs)
    assert both == max(solo1, solo2)
    assert 0.0 <= both <= 1.0


# -- room capacity ---------------------------------------------------------------

def _room(rid, rtype, capacity, adjacency=()):
    return Room(id=rid, room_type=rtype, area=10.0, coordinates=(0.0, 0.0),
                adjacency=frozenset(adjacency), capacity=capacity)


def test_bathroom_capacity_one_relocates_second(catalogs):
    rooms = [_room("r0", "bathroom", 1, ["r1"]), _room("r1", "hallway", 6, ["r0"])]
    a = _profile(pid="res-0")
    b = _profile(pid="res-1")
    placed = assign_rooms([(a, "personal_care"), (b, "personal_care")],
                          rooms, derive_stream(1, "rooms"), catalogs)
    assert sorted(placed.values()) == ["r0", "r1"]


def test_living_room_admits_eight(catalogs):
    rooms = [_room("r0", "living_room", 8)]
    people = [(_profile(pid=f"res-{i}"), "socializing") for i in range(8)]
    placed = assign_rooms(people, rooms, derive_stream(1, "rooms"), catalogs)
    assert all(v == "r0" for v in placed.values())


def test_single_inhabitant_admitted(catalogs):
    rooms = [_room("r0", "bedroom", 6)]
    placed = assign_rooms([(_profile(), "sleeping")], rooms, derive_stream(1, "r"), catalogs)
    assert placed == {"res-0": "r0"}


def test_over_capacity_errors(catalogs):
    rooms = [_room("r0", "bathroom", 1)]
    people = [(_profile(pid=f"res-{i}"), "idle") for i in range(2)]
    with pytest.raises(ValueError, match="exceeds home capacity"):
        assign_rooms(people, rooms, derive_stream(1, "r"), catalogs)


# -- full behavior simulation ----------------------------------------------------

def test_simulate_deterministic(catalogs):
    config = generate_home(GenerationRequest(template="family_house", seed=42), catalogs)
    profiles = sorted(config.inhabitants, key=lambda p: p.id)
    a = simulate_behavior(config, profiles, (0.0, 86400.0), derive_stream(42, "behavior"), catalogs)
    b = simulate_behavior(config, profiles, (0.0, 86400.0), derive_stream(42, "behavior"), catalogs)
    assert [t.to_dict() for t in a] == [t.to_dict() for t in b]


def test_trace_totality_and_capacity(catalogs):
    config = generate_home(GenerationRequest(template="family_house", seed=42), catalogs)
    profiles = sorted(config.inhabitants, key=lambda p: p.id)
    traces = simulate_behavior(config, profiles, (0.0, 86400.0),
                               derive_stream(42, "behavior"), catalogs)
    n_ticks = 1440
    capacities = {r.id: r.capacity for r in config.rooms}
    assert all(len(t.present) == n_ticks for t in traces)
    for tr in traces:
        for k in range(n_ticks):
            if tr.present[k]:
                assert tr.activity[k] is not None
                assert tr.room[k] in capacities
            else:
                assert tr.activity[k] is None and tr.room[k] is None
    for k in range(n_ticks):
        load: dict[str, int] = {}
        for tr in traces:
            if tr.room[k] is not None:
                load[tr.room[k]] = load.get(tr.room[k], 0) + 1
        for rid, n in load.items():
            assert n <= capacities[rid]


def test_pet_trace_has_no_working(catalogs):
    config = generate_home(GenerationRequest(template="mansion", seed=42), catalogs)
    profiles = sorted(config.inhabitants, key=lambda p: p.id)
    assert any(p.kind == "pet" for p in profiles)
    traces = simulate_behavior(config, profiles, (0.0, 86400.0),
                               derive_stream(42, "behavior"), catalogs)
    for tr, p in zip(traces, profiles):
        if p.kind == "pet":
            assert "working" not in {a for a in tr.activity if a}


def test_window_must_be_positive(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    with pytest.raises(ValueError, match="positive length"):
        simulate_behavior(config, list(config.inhabitants), (100.0, 100.0),
                          derive_stream(1, "b"), catalogs)
