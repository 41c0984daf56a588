from __future__ import annotations

import pytest

from homesim.catalog import CatalogError, validate_home
from homesim.homegen import (
    GenerationRequest,
    build_network,
    generate_home,
    instantiate_rooms,
    network_is_connected,
    place_devices,
    select_template,
)
from homesim.rng import derive_stream


def test_select_template_studio(catalogs):
    t = select_template(GenerationRequest(template="studio", seed=1), catalogs)
    assert t.room_count == 3


def test_select_template_mansion(catalogs):
    t = select_template(GenerationRequest(template="mansion", seed=1), catalogs)
    assert t.room_count == 21


def test_select_template_unknown(catalogs):
    with pytest.raises(CatalogError, match="unknown template"):
        select_template(GenerationRequest(template="castle", seed=1), catalogs)


def test_select_template_room_override(catalogs):
    t = select_template(GenerationRequest(template="studio", seed=1, room_count=5), catalogs)
    assert t.room_count == 5


# -- rooms --------------------------------------------------------------------

def test_rooms_deterministic(catalogs):
    t = catalogs.templates["studio"]
    a = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    b = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    assert a == b
    assert len(a) == 3


def test_family_house_room_count(catalogs):
    t = catalogs.templates["family_house"]
    rooms = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    assert len(rooms) == 13


def test_degenerate_distribution_all_bedrooms(catalogs):
    from dataclasses import replace

    t = replace(catalogs.templates["studio"],
                room_type_distribution={"bedroom": 1.0})
    rooms = instantiate_rooms(t, catalogs, derive_stream(7, "rooms"))
    assert all(r.room_type == "bedroom" for r in rooms)


def test_areas_partition_floor_area(catalogs):
    t = catalogs.templates["mansion"]
    rooms = instantiate_rooms(t, catalogs, derive_stream(3, "rooms"))
    assert abs(sum(r.area for r in rooms) - t.floor_area) < 1e-9
    assert all(r.area > 0 for r in rooms)


def test_adjacency_symmetric_and_connected(catalogs):
    t = catalogs.templates["mansion"]
    rooms = instantiate_rooms(t, catalogs, derive_stream(5, "rooms"))
    by_id = {r.id: r for r in rooms}
    for r in rooms:
        for other in r.adjacency:
            assert r.id in by_id[other].adjacency
    seen = set()
    stack = [rooms[0].id]
    while stack:
        rid = stack.pop()
        if rid in seen:
            continue
        seen.add(rid)
        stack.extend(by_id[rid].adjacency)
    assert seen == set(by_id)


# -- devices ------------------------------------------------------------------

def test_zero_compat_places_nothing(catalogs):
    # kitchen appliances have zero affinity with bathrooms
    t = catalogs.templates["studio"]
    rooms = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    for seed in range(20):
        devices = place_devices(rooms, catalogs, derive_stream(seed, "devices"))
        by_room_type = {r.id: r.room_type for r in rooms}
        for d in devices:
            if by_room_type[d.room_id] == "bathroom":
                assert d.category != "kitchen"


def test_mansion_pinned_device_total(catalogs):
    t = catalogs.templates["mansion"]
    rooms = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    devices = place_devices(rooms, catalogs, derive_stream(42, "devices"),
                            target_count=t.device_count)
    assert len(devices) == 97


def test_compat_soundness(catalogs):
    config = generate_home(GenerationRequest(template="family_house", seed=42), catalogs)
    by_room = {r.id: r.room_type for r in config.rooms}
    for d in config.devices:
        assert catalogs.compat.get(d.category, by_room[d.room_id]) > 0


def test_area_doubling_doubles_expected_count(catalogs):
    """Monte-Carlo check that placement means scale linearly with room area."""
    from dataclasses import replace

    t = catalogs.templates["studio"]
    rooms_small = instantiate_rooms(t, catalogs, derive_stream(0, "rooms"))
    rooms_big = [replace(r, area=2 * r.area) for r in rooms_small]

    def mean_count(rooms):
        stream = derive_stream(1234, "mc-devices")
        total = 0
        for i in range(1000):
            total += len(place_devices(rooms, catalogs, stream.spawn(f"run{i}")))
        return total / 1000

    small, big = mean_count(rooms_small), mean_count(rooms_big)
    assert big / small == pytest.approx(2.0, rel=0.05)


# -- network ------------------------------------------------------------------

def test_single_device_is_own_hub(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    network = build_network([config.devices[0]], catalogs)
    assert network == {config.devices[0].id: ()}
    assert network_is_connected(network)


def test_studio_network_connected_no_orphans(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    assert network_is_connected(config.network)
    multi = {d for dev_id, peers in config.network.items() for d in (dev_id, *peers)}
    assert multi == {d.id for d in config.devices}


def test_two_protocol_families_two_hubs(catalogs):
    config = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    wifi_only = [d for d in config.devices
                 if catalogs.device_types[d.type_name].protocols[0] == "WiFi"][:1]
    zigbee = [d for d in config.devices
              if "Zigbee" in catalogs.device_types[d.type_name].protocols][:1]
    assert wifi_only and zigbee
    network = build_network(wifi_only + zigbee, catalogs)
    # inter-hub link exists, so both devices carry a hub role and connect
    assert network_is_connected(network)
    assert all(peers for peers in network.values())


# -- full generation ----------------------------------------------------------

def test_generate_home_bit_identical(catalogs):
    a = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    b = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    assert a.to_dict() == b.to_dict()


def test_generate_home_seed_sensitivity(catalogs):
    a = generate_home(GenerationRequest(template="studio", seed=42), catalogs)
    b = generate_home(GenerationRequest(template="studio", seed=43), catalogs)
    assert a.to_dict() != b.to_dict()


def test_mansion_full_counts(catalogs):
    config = generate_home(GenerationRequest(template="mansion", seed=42), catalogs)
    assert len(config.rooms) == 21
    assert len(config.devices) == 97
    assert len(config.inhabitants) == 6
    assert validate_home(config, catalogs) == []


def test_room_layout_independent_of_device_stream(catalogs):
    """Rooms and devices draw from disjoint salted streams."""
    t = catalogs.templates["family_house"]
    rooms_before = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    # burn arbitrary draws on the device stream, then regenerate rooms
    s = derive_stream(42, "devices")
    for _ in range(1000):
        s.u64()
    rooms_after = instantiate_rooms(t, catalogs, derive_stream(42, "rooms"))
    assert rooms_before == rooms_after


def test_density_bounds_hold_for_unpinned_templates(catalogs):
    for name in ("one_bedroom", "townhouse"):
        config = generate_home(GenerationRequest(template=name, seed=42), catalogs)
        assert validate_home(config, catalogs) == []


def test_density_multiplier_scales(catalogs):
    base = generate_home(GenerationRequest(template="family_house", seed=42), catalogs)
    boosted = generate_home(GenerationRequest(template="family_house", seed=42,
                                              density_multiplier=1.5), catalogs)
    assert len(boosted.devices) > len(base.devices)
    assert validate_home(boosted, catalogs) == []


def test_invalid_request_rejected():
    with pytest.raises(ValueError):
        GenerationRequest(template="studio", seed=1, density_multiplier=0.0)
    with pytest.raises(ValueError):
        GenerationRequest(template="studio", seed=1, room_count=0)
