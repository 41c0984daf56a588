"""Published JSON Schemas for the exported document formats."""

from __future__ import annotations

_ROOM = {
    "type": "object",
    "required": ["id", "room_type", "area", "coordinates", "adjacency", "capacity"],
    "properties": {
        "id": {"type": "string"},
        "room_type": {"type": "string"},
        "area": {"type": "number"},
        "coordinates": {"type": "array", "items": {"type": "number"},
                        "minItems": 2, "maxItems": 2},
        "adjacency": {"type": "array", "items": {"type": "string"}},
        "capacity": {"type": "integer", "minimum": 1},
    },
}

_DEVICE = {
    "type": "object",
    "required": ["id", "type_name", "category", "room_id", "network_address"],
    "properties": {
        "id": {"type": "string"},
        "type_name": {"type": "string"},
        "category": {"type": "string"},
        "room_id": {"type": "string"},
        "network_address": {"type": "string"},
    },
}

_INHABITANT = {
    "type": "object",
    "required": ["id", "kind", "schedule", "tech_savviness", "variation_sigma"],
    "properties": {
        "id": {"type": "string"},
        "kind": {"enum": ["adult", "child", "elderly", "teenager", "pet"]},
        "schedule": {"type": "object", "required": ["wake", "sleep"]},
        "tech_savviness": {"type": "number", "minimum": 0, "maximum": 1},
        "variation_sigma": {"type": "number", "minimum": 0},
    },
}

HOME_CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["template_name", "rooms", "devices", "network", "inhabitants",
                 "behavior_params", "seed", "catalog_version"],
    "properties": {
        "template_name": {"type": "string"},
        "rooms": {"type": "array", "items": _ROOM, "minItems": 1},
        "devices": {"type": "array", "items": _DEVICE},
        "network": {"type": "object"},
        "inhabitants": {"type": "array", "items": _INHABITANT},
        "behavior_params": {"type": "object"},
        "seed": {"type": "integer"},
        "catalog_version": {"type": "string"},
    },
}

SCENARIO_LIST_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["scenario_id", "threat_type", "targets", "window", "gamma", "phase_plan"],
        "properties": {
            "scenario_id": {"type": "string"},
            "threat_type": {"type": "string"},
            "targets": {"type": "array", "items": {"type": "string"}},
            "window": {"type": "array", "minItems": 2, "maxItems": 2},
            "gamma": {"type": "number"},
            "phase_plan": {"type": "array"},
            "techniques": {"type": "array", "items": {"type": "string"}},
        },
    },
}

SCHEMAS = {
    "home_config": HOME_CONFIG_SCHEMA,
    "scenario_list": SCENARIO_LIST_SCHEMA,
}
