#!/usr/bin/env python3
"""Regenerate the default data files under src/homesim/data/.

The catalog is project data: counts are fixed (12 protocols, 15 room types,
16 device categories, 118 device types, 16 activities, 22 threat types in 7
categories), while individual densities, rates, and affinity weights are
tunable here. Run this script after editing and commit the JSON output.
"""

from __future__ import annotations

import json
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "homesim" / "data"

PROTOCOLS = [
    "WiFi", "Zigbee", "Z-Wave", "Bluetooth", "BLE", "Matter",
    "Thread", "MQTT", "HTTP", "CoAP", "Ethernet", "Modbus",
]

PROTOCOL_FAMILIES = {
    "WiFi": "ip", "Ethernet": "ip", "HTTP": "ip", "MQTT": "ip", "CoAP": "ip",
    "Zigbee": "mesh", "Z-Wave": "mesh", "Thread": "mesh", "Matter": "mesh",
    "Bluetooth": "pan", "BLE": "pan",
    "Modbus": "serial",
}

# Capacities: bathroom 1, kitchen 4, living room 8; all other types 6.
ROOM_TYPES = {
    "living_room": 8,
    "bedroom": 6,
    "kitchen": 4,
    "bathroom": 1,
    "office": 6,
    "garage": 6,
    "hallway": 6,
    "garden": 6,
    "dining_room": 6,
    "laundry": 6,
    "basement": 6,
    "attic": 6,
    "balcony": 6,
    "storage": 6,
    "entrance": 6,
}

CATEGORIES = [
    "security", "lighting", "climate", "entertainment", "kitchen", "health",
    "energy", "network", "sensor", "appliance", "cleaning", "irrigation",
    "access_control", "camera", "audio", "wearable",
]

ACTIVITIES = [
    "sleeping", "waking_up", "personal_care", "eating", "cooking", "working",
    "studying", "cleaning", "laundry", "entertainment", "exercising",
    "socializing", "relaxing", "gardening", "playing", "idle",
]

# Device-count density per type, devices/m2, by commonness tier.
TIER_DENSITY = {"ubiquitous": 0.012, "common": 0.006, "occasional": 0.003, "rare": 0.0012}

# (states, transitions, activation_rate) per archetype. activation_rate scales
# the per-tick chance that a behavior-driven interaction emits a state change.
ARCHETYPES = {
    "switch": (["off", "on"], [["off", "on"], ["on", "off"]], 0.45),
    "sensor_active": (["idle", "active"], [["idle", "active"], ["active", "idle"]], 0.55),
    "sensor_passive": (["idle", "alert"], [["idle", "alert"], ["alert", "idle"]], 0.03),
    "reporter": (["online"], [], 0.0),
    "network_node": (["online", "degraded"], [["online", "degraded"], ["degraded", "online"]], 0.01),
    "media": (["off", "idle", "playing"],
              [["off", "idle"], ["idle", "off"], ["idle", "playing"], ["playing", "idle"]], 0.40),
    "appliance_cycle": (["off", "running"], [["off", "running"], ["running", "off"]], 0.20),
    "lock": (["locked", "unlocked"], [["locked", "unlocked"], ["unlocked", "locked"]], 0.25),
    "camera_unit": (["idle", "recording"], [["idle", "recording"], ["recording", "idle"]], 0.25),
    "hvac": (["idle", "heating", "cooling"],
             [["idle", "heating"], ["heating", "idle"], ["idle", "cooling"], ["cooling", "idle"]], 0.18),
}

BATTERY = {"battery": [5.0, 100.0]}

# type_name -> (tier, archetype, protocols, on_watts, telemetry_interval_s, value_ranges)
DEVICE_TYPES = {
    # security (8)
    "alarm_panel": ("common", "reporter", ["WiFi", "Ethernet"], 6.0, 1800, {"zone_count": [1, 16]}),
    "door_sensor": ("common", "sensor_passive", ["Zigbee", "Z-Wave"], 0.3, 3600, BATTERY),
    "window_sensor": ("common", "sensor_passive", ["Zigbee", "Z-Wave"], 0.3, 3600, BATTERY),
    "glass_break_sensor": ("occasional", "sensor_passive", ["Zigbee"], 0.4, 3600, BATTERY),
    "siren": ("occasional", "switch", ["Zigbee", "WiFi"], 4.0, 0, {}),
    "keypad": ("occasional", "reporter", ["Zigbee", "BLE"], 1.0, 3600, BATTERY),
    "panic_button": ("rare", "sensor_passive", ["BLE", "Zigbee"], 0.1, 7200, BATTERY),
    "security_gateway": ("rare", "network_node", ["Ethernet", "WiFi"], 5.0, 600, {"sessions": [0, 40]}),
    # lighting (8)
    "smart_bulb": ("ubiquitous", "switch", ["Zigbee", "WiFi", "Matter"], 9.0, 0, {"level": [0.0, 100.0]}),
    "dimmer_switch": ("common", "switch", ["Z-Wave", "Zigbee"], 2.0, 0, {"level": [0.0, 100.0]}),
    "light_strip": ("common", "switch", ["WiFi", "Matter"], 18.0, 0, {"level": [0.0, 100.0]}),
    "ceiling_light": ("common", "switch", ["Zigbee", "Matter"], 24.0, 0, {"level": [0.0, 100.0]}),
    "outdoor_light": ("occasional", "switch", ["WiFi", "Zigbee"], 30.0, 0, {"level": [0.0, 100.0]}),
    "wall_switch": ("common", "switch", ["Z-Wave", "Zigbee"], 1.0, 0, {}),
    "night_light": ("occasional", "switch", ["BLE", "Zigbee"], 2.0, 0, {"level": [0.0, 100.0]}),
    "pathway_light": ("rare", "switch", ["Zigbee"], 12.0, 0, {"level": [0.0, 100.0]}),
    # climate (8)
    "thermostat": ("common", "hvac", ["WiFi", "Zigbee", "Matter"], 3.5, 1800,
                   {"temperature": [15.0, 30.0], "setpoint": [16.0, 26.0], "humidity": [25.0, 65.0]}),
    "radiator_valve": ("common", "hvac", ["Zigbee", "Z-Wave"], 1.2, 3600,
                       {"temperature": [15.0, 30.0], "valve_open": [0.0, 100.0]}),
    "ceiling_fan": ("occasional", "switch", ["WiFi", "Zigbee"], 60.0, 0, {"speed": [0.0, 3.0]}),
    "air_purifier": ("occasional", "appliance_cycle", ["WiFi"], 45.0, 900, {"pm25": [1.0, 80.0]}),
    "humidifier": ("occasional", "appliance_cycle", ["WiFi", "BLE"], 30.0, 900, {"humidity": [25.0, 65.0]}),
    "dehumidifier": ("rare", "appliance_cycle", ["WiFi"], 180.0, 900, {"humidity": [25.0, 75.0]}),
    "ac_unit": ("occasional", "hvac", ["WiFi", "Modbus"], 900.0, 600, {"temperature": [16.0, 32.0]}),
    "heated_floor": ("rare", "hvac", ["Modbus", "WiFi"], 400.0, 900, {"temperature": [18.0, 29.0]}),
    # entertainment (8)
    "smart_tv": ("common", "media", ["WiFi", "Ethernet", "HTTP"], 110.0, 0, {"volume": [0.0, 100.0]}),
    "streaming_box": ("common", "media", ["WiFi", "Ethernet", "HTTP"], 8.0, 0, {"volume": [0.0, 100.0]}),
    "game_console": ("occasional", "media", ["WiFi", "Ethernet"], 160.0, 0, {}),
    "projector": ("rare", "media", ["WiFi", "HTTP"], 250.0, 0, {}),
    "av_receiver": ("rare", "media", ["Ethernet", "HTTP"], 90.0, 0, {"volume": [0.0, 100.0]}),
    "media_server": ("rare", "network_node", ["Ethernet"], 25.0, 900, {"streams": [0, 6]}),
    "tv_backlight": ("occasional", "switch", ["WiFi", "BLE"], 10.0, 0, {"level": [0.0, 100.0]}),
    "remote_hub": ("occasional", "reporter", ["WiFi", "BLE"], 2.0, 3600, BATTERY),
    # kitchen (9)
    "smart_fridge": ("common", "reporter", ["WiFi", "MQTT"], 120.0, 1800,
                     {"temperature": [1.0, 8.0], "door_open_count": [0, 40]}),
    "smart_oven": ("occasional", "appliance_cycle", ["WiFi", "MQTT"], 2400.0, 1800, {"temperature": [20.0, 250.0]}),
    "dishwasher": ("occasional", "appliance_cycle", ["WiFi", "MQTT"], 1500.0, 1800, {"cycle_minutes": [30.0, 180.0]}),
    "coffee_maker": ("common", "appliance_cycle", ["WiFi", "BLE"], 900.0, 0, {"water_level": [0.0, 100.0]}),
    "microwave": ("occasional", "appliance_cycle", ["WiFi"], 1100.0, 0, {}),
    "range_hood": ("rare", "switch", ["WiFi"], 120.0, 0, {"speed": [0.0, 3.0]}),
    "kettle": ("occasional", "appliance_cycle", ["WiFi", "BLE"], 2000.0, 0, {"temperature": [20.0, 100.0]}),
    "slow_cooker": ("rare", "appliance_cycle", ["WiFi"], 250.0, 0, {"temperature": [40.0, 95.0]}),
    "wine_cooler": ("rare", "reporter", ["WiFi"], 90.0, 1800, {"temperature": [6.0, 18.0]}),
    # health (7)
    "sleep_monitor": ("occasional", "reporter", ["BLE", "WiFi"], 2.0, 3600,
                      {"heart_rate": [40.0, 100.0], "respiration": [8.0, 22.0]}),
    "air_quality_monitor": ("occasional", "reporter", ["WiFi", "Zigbee"], 3.0, 1800,
                            {"pm25": [1.0, 80.0], "co2_ppm": [380.0, 1800.0]}),
    "baby_monitor": ("rare", "camera_unit", ["WiFi"], 5.0, 600, {"noise_db": [20.0, 90.0]}),
    "medication_dispenser": ("rare", "reporter", ["WiFi", "BLE"], 2.0, 3600, BATTERY),
    "smart_scale": ("occasional", "sensor_passive", ["BLE", "WiFi"], 1.0, 0, {"weight_kg": [2.0, 180.0]}),
    "pulse_oximeter_dock": ("rare", "reporter", ["BLE"], 1.0, 3600, {"spo2": [90.0, 100.0]}),
    "fall_detector": ("rare", "sensor_passive", ["BLE", "Zigbee"], 0.5, 3600, BATTERY),
    # energy (7)
    "smart_meter": ("common", "reporter", ["Modbus", "Zigbee"], 2.0, 1800, {"power_w": [40.0, 5000.0]}),
    "smart_plug": ("ubiquitous", "switch", ["WiFi", "Zigbee", "Matter"], 1.0, 3600, {"power_w": [0.0, 1800.0]}),
    "solar_inverter": ("rare", "reporter", ["Modbus", "Ethernet"], 15.0, 300, {"output_w": [0.0, 6000.0]}),
    "battery_storage": ("rare", "reporter", ["Modbus", "Ethernet"], 10.0, 600, {"charge_pct": [5.0, 100.0]}),
    "ev_charger": ("rare", "appliance_cycle", ["WiFi", "Modbus"], 7200.0, 900, {"session_kwh": [0.0, 60.0]}),
    "energy_monitor": ("occasional", "reporter", ["WiFi", "Zigbee"], 2.0, 1800, {"power_w": [40.0, 5000.0]}),
    "load_controller": ("rare", "switch", ["Modbus", "Zigbee"], 3.0, 1800, {}),
    # network (7)
    "wifi_router": ("common", "network_node", ["WiFi", "Ethernet"], 12.0, 60,
                    {"throughput_mbps": [1.0, 400.0], "clients": [1, 30]}),
    "mesh_node": ("occasional", "network_node", ["WiFi", "Ethernet"], 9.0, 90,
                  {"throughput_mbps": [1.0, 250.0], "clients": [0, 15]}),
    "zigbee_hub": ("common", "network_node", ["Zigbee", "Ethernet"], 4.0, 600, {"nodes": [1, 40]}),
    "zwave_hub": ("occasional", "network_node", ["Z-Wave", "Ethernet"], 4.0, 600, {"nodes": [1, 40]}),
    "bluetooth_gateway": ("rare", "network_node", ["Bluetooth", "BLE", "WiFi"], 3.0, 900, {"nodes": [0, 20]}),
    "nas_server": ("rare", "network_node", ["Ethernet", "HTTP"], 35.0, 900, {"disk_pct": [10.0, 95.0]}),
    "iot_gateway": ("rare", "network_node", ["Ethernet", "MQTT", "CoAP"], 6.0, 600, {"sessions": [0, 60]}),
    # sensor (9)
    "motion_sensor": ("ubiquitous", "sensor_active", ["Zigbee", "Z-Wave", "BLE"], 0.4, 300, BATTERY),
    "temperature_sensor": ("common", "reporter", ["Zigbee", "Thread"], 0.3, 1800,
                           {"temperature": [12.0, 32.0], **BATTERY}),
    "humidity_sensor": ("common", "reporter", ["Zigbee", "Thread"], 0.3, 1800,
                        {"humidity": [20.0, 75.0], **BATTERY}),
    "smoke_detector": ("common", "sensor_passive", ["Zigbee", "Z-Wave"], 0.5, 7200,
                       {"smoke_level": [0.0, 0.05], **BATTERY}),
    "co_detector": ("occasional", "sensor_passive", ["Zigbee", "Z-Wave"], 0.5, 7200,
                    {"co_ppm": [0.0, 5.0], **BATTERY}),
    "water_leak_sensor": ("occasional", "sensor_passive", ["Zigbee", "Z-Wave"], 0.3, 7200,
                          {"moisture": [0.0, 0.1], **BATTERY}),
    "contact_sensor": ("common", "sensor_passive", ["Zigbee", "BLE"], 0.3, 3600, BATTERY),
    "light_sensor": ("occasional", "reporter", ["Zigbee", "Thread"], 0.3, 3600,
                     {"illuminance": [0.0, 2000.0], **BATTERY}),
    "pressure_mat": ("rare", "sensor_active", ["Zigbee"], 0.3, 1800, {"pressure": [0.0, 150.0]}),
    # appliance (8)
    "washing_machine": ("occasional", "appliance_cycle", ["WiFi", "MQTT"], 800.0, 1800, {"cycle_minutes": [20.0, 160.0]}),
    "dryer": ("occasional", "appliance_cycle", ["WiFi", "MQTT"], 2200.0, 1800, {"cycle_minutes": [20.0, 120.0]}),
    "water_heater": ("rare", "appliance_cycle", ["Modbus", "WiFi"], 3000.0, 1800, {"temperature": [35.0, 75.0]}),
    "towel_warmer": ("rare", "switch", ["WiFi"], 120.0, 0, {}),
    "aquarium_controller": ("rare", "reporter", ["WiFi"], 40.0, 1800, {"temperature": [22.0, 28.0], "ph": [6.0, 8.5]}),
    "pet_feeder": ("rare", "appliance_cycle", ["WiFi", "BLE"], 4.0, 0, {"portion_g": [10.0, 120.0]}),
    "sump_pump": ("rare", "sensor_passive", ["Z-Wave", "Modbus"], 450.0, 3600, {"run_minutes": [0.0, 30.0]}),
    "garage_heater": ("rare", "appliance_cycle", ["Modbus", "WiFi"], 1500.0, 1800, {"temperature": [5.0, 25.0]}),
    # cleaning (6)
    "robot_vacuum": ("occasional", "appliance_cycle", ["WiFi", "MQTT"], 35.0, 1800, {"dustbin_pct": [0.0, 100.0]}),
    "robot_mop": ("rare", "appliance_cycle", ["WiFi", "MQTT"], 30.0, 1800, {"tank_pct": [0.0, 100.0]}),
    "window_cleaner": ("rare", "appliance_cycle", ["WiFi", "BLE"], 70.0, 0, {}),
    "pool_cleaner": ("rare", "appliance_cycle", ["WiFi"], 180.0, 3600, {}),
    "uv_sanitizer": ("rare", "switch", ["BLE", "WiFi"], 40.0, 0, {}),
    "central_vacuum": ("rare", "switch", ["Modbus"], 1400.0, 0, {}),
    # irrigation (6)
    "sprinkler_controller": ("occasional", "appliance_cycle", ["WiFi", "CoAP"], 8.0, 3600, {"zone": [1, 8]}),
    "soil_moisture_sensor": ("occasional", "reporter", ["Zigbee", "CoAP"], 0.3, 3600, {"moisture": [5.0, 60.0], **BATTERY}),
    "drip_controller": ("rare", "appliance_cycle", ["CoAP", "WiFi"], 5.0, 3600, {"flow_lpm": [0.1, 4.0]}),
    "rain_gauge": ("rare", "reporter", ["Zigbee"], 0.3, 3600, {"rain_mm": [0.0, 40.0], **BATTERY}),
    "water_valve": ("rare", "switch", ["Z-Wave", "CoAP"], 2.0, 0, {}),
    "greenhouse_controller": ("rare", "reporter", ["CoAP", "Modbus"], 10.0, 1800,
                              {"temperature": [10.0, 40.0], "humidity": [30.0, 90.0]}),
    # access_control (7)
    "smart_lock": ("common", "lock", ["Zigbee", "Z-Wave", "BLE"], 0.8, 3600, BATTERY),
    "garage_door_opener": ("occasional", "lock", ["WiFi", "Z-Wave"], 300.0, 3600, {}),
    "gate_controller": ("rare", "lock", ["Z-Wave", "Modbus"], 150.0, 3600, {}),
    "doorbell": ("common", "sensor_active", ["WiFi", "BLE"], 2.0, 1800, BATTERY),
    "intercom": ("rare", "reporter", ["WiFi", "Ethernet"], 4.0, 3600, {}),
    "nfc_reader": ("rare", "sensor_passive", ["BLE", "WiFi"], 1.5, 3600, {}),
    "elevator_controller": ("rare", "reporter", ["Modbus", "Ethernet"], 50.0, 1800, {"trips": [0, 60]}),
    # camera (6)
    "indoor_camera": ("common", "camera_unit", ["WiFi", "HTTP"], 5.0, 900,
                      {"bitrate_kbps": [400.0, 4000.0], "motion_score": [0.0, 1.0]}),
    "outdoor_camera": ("common", "camera_unit", ["WiFi", "HTTP", "Ethernet"], 7.0, 180,
                       {"bitrate_kbps": [400.0, 4000.0], "motion_score": [0.0, 1.0]}),
    "doorbell_camera": ("occasional", "camera_unit", ["WiFi", "HTTP"], 4.0, 600,
                        {"bitrate_kbps": [300.0, 2000.0], **BATTERY}),
    "ptz_camera": ("rare", "camera_unit", ["Ethernet", "HTTP"], 12.0, 900, {"bitrate_kbps": [500.0, 6000.0]}),
    "floodlight_camera": ("rare", "camera_unit", ["WiFi", "HTTP"], 25.0, 600, {"bitrate_kbps": [400.0, 4000.0]}),
    "peephole_camera": ("rare", "camera_unit", ["WiFi", "BLE"], 2.0, 900, {"bitrate_kbps": [200.0, 1500.0], **BATTERY}),
    # audio (7)
    "smart_speaker": ("common", "media", ["WiFi", "BLE", "HTTP"], 6.0, 0, {"volume": [0.0, 100.0]}),
    "soundbar": ("occasional", "media", ["WiFi", "HTTP"], 40.0, 0, {"volume": [0.0, 100.0]}),
    "multiroom_amp": ("rare", "media", ["Ethernet", "HTTP"], 60.0, 0, {"volume": [0.0, 100.0]}),
    "voice_assistant": ("common", "media", ["WiFi", "BLE"], 4.0, 0, {"volume": [0.0, 100.0]}),
    "turntable_dock": ("rare", "media", ["Bluetooth", "WiFi"], 15.0, 0, {}),
    "intercom_speaker": ("rare", "media", ["WiFi", "Ethernet"], 5.0, 0, {"volume": [0.0, 100.0]}),
    "bathroom_speaker": ("rare", "media", ["Bluetooth", "BLE"], 8.0, 0, {"volume": [0.0, 100.0]}),
    # wearable (7)
    "fitness_tracker_dock": ("occasional", "reporter", ["BLE", "WiFi"], 1.0, 1800, {"steps": [0, 30000], **BATTERY}),
    "smartwatch_dock": ("occasional", "reporter", ["BLE", "WiFi"], 1.5, 1800, BATTERY),
    "sleep_headband_dock": ("rare", "reporter", ["BLE"], 1.0, 3600, BATTERY),
    "gps_tag": ("rare", "reporter", ["BLE", "Bluetooth"], 0.3, 3600, BATTERY),
    "emergency_pendant": ("rare", "sensor_passive", ["BLE", "Zigbee"], 0.3, 7200, BATTERY),
    "smart_ring_dock": ("rare", "reporter", ["BLE"], 0.5, 3600, BATTERY),
    "posture_sensor": ("rare", "reporter", ["BLE"], 0.3, 3600, BATTERY),
}

CATEGORY_OF = {}
for _cat, _names in {
    "security": ["alarm_panel", "door_sensor", "window_sensor", "glass_break_sensor",
                 "siren", "keypad", "panic_button", "security_gateway"],
    "lighting": ["smart_bulb", "dimmer_switch", "light_strip", "ceiling_light",
                 "outdoor_light", "wall_switch", "night_light", "pathway_light"],
    "climate": ["thermostat", "radiator_valve", "ceiling_fan", "air_purifier",
                "humidifier", "dehumidifier", "ac_unit", "heated_floor"],
    "entertainment": ["smart_tv", "streaming_box", "game_console", "projector",
                      "av_receiver", "media_server", "tv_backlight", "remote_hub"],
    "kitchen": ["smart_fridge", "smart_oven", "dishwasher", "coffee_maker", "microwave",
                "range_hood", "kettle", "slow_cooker", "wine_cooler"],
    "health": ["sleep_monitor", "air_quality_monitor", "baby_monitor", "medication_dispenser",
               "smart_scale", "pulse_oximeter_dock", "fall_detector"],
    "energy": ["smart_meter", "smart_plug", "solar_inverter", "battery_storage",
               "ev_charger", "energy_monitor", "load_controller"],
    "network": ["wifi_router", "mesh_node", "zigbee_hub", "zwave_hub",
                "bluetooth_gateway", "nas_server", "iot_gateway"],
    "sensor": ["motion_sensor", "temperature_sensor", "humidity_sensor", "smoke_detector",
               "co_detector", "water_leak_sensor", "contact_sensor", "light_sensor", "pressure_mat"],
    "appliance": ["washing_machine", "dryer", "water_heater", "towel_warmer",
                  "aquarium_controller", "pet_feeder", "sump_pump", "garage_heater"],
    "cleaning": ["robot_vacuum", "robot_mop", "window_cleaner", "pool_cleaner",
                 "uv_sanitizer", "central_vacuum"],
    "irrigation": ["sprinkler_controller", "soil_moisture_sensor", "drip_controller",
                   "rain_gauge", "water_valve", "greenhouse_controller"],
    "access_control": ["smart_lock", "garage_door_opener", "gate_controller", "doorbell",
                       "intercom", "nfc_reader", "elevator_controller"],
    "camera": ["indoor_camera", "outdoor_camera", "doorbell_camera", "ptz_camera",
               "floodlight_camera", "peephole_camera"],
    "audio": ["smart_speaker", "soundbar", "multiroom_amp", "voice_assistant",
              "turntable_dock", "intercom_speaker", "bathroom_speaker"],
    "wearable": ["fitness_tracker_dock", "smartwatch_dock", "sleep_headband_dock", "gps_tag",
                 "emergency_pendant", "smart_ring_dock", "posture_sensor"],
}.items():
    for _n in _names:
        CATEGORY_OF[_n] = _cat

# Category-room placement affinity in [0, 1]; pairs not listed default to 0.
COMPAT = {
    "security": {"entrance": 0.9, "hallway": 0.6, "garage": 0.5, "basement": 0.4,
                 "living_room": 0.3, "garden": 0.3, "storage": 0.3, "attic": 0.2,
                 "balcony": 0.2, "office": 0.2, "dining_room": 0.2, "laundry": 0.2,
                 "bedroom": 0.15, "kitchen": 0.1},
    "lighting": {"living_room": 0.9, "bedroom": 0.8, "kitchen": 0.8, "dining_room": 0.8,
                 "hallway": 0.7, "office": 0.7, "bathroom": 0.6, "entrance": 0.6,
                 "garage": 0.5, "laundry": 0.5, "garden": 0.4, "basement": 0.4,
                 "balcony": 0.4, "attic": 0.3, "storage": 0.3},
    "climate": {"living_room": 0.8, "bedroom": 0.8, "office": 0.6, "dining_room": 0.5,
                "bathroom": 0.5, "kitchen": 0.4, "attic": 0.4, "basement": 0.3,
                "laundry": 0.3, "hallway": 0.2, "garage": 0.1, "entrance": 0.1,
                "balcony": 0.1, "storage": 0.1},
    "entertainment": {"living_room": 0.9, "bedroom": 0.5, "basement": 0.4, "office": 0.3,
                      "dining_room": 0.2, "kitchen": 0.1, "attic": 0.1, "garden": 0.1,
                      "balcony": 0.1, "garage": 0.1},
    "kitchen": {"kitchen": 0.95, "dining_room": 0.25, "basement": 0.05},
    "health": {"bedroom": 0.7, "bathroom": 0.5, "living_room": 0.4, "office": 0.3,
               "kitchen": 0.1, "hallway": 0.05},
    "energy": {"garage": 0.6, "basement": 0.5, "laundry": 0.4, "kitchen": 0.3,
               "office": 0.3, "living_room": 0.3, "storage": 0.3, "hallway": 0.2,
               "attic": 0.2, "balcony": 0.2, "garden": 0.2, "bedroom": 0.2,
               "entrance": 0.1, "dining_room": 0.1, "bathroom": 0.1},
    "network": {"office": 0.9, "basement": 0.8, "attic": 0.7, "storage": 0.7,
                "hallway": 0.5, "garage": 0.2, "entrance": 0.2, "living_room": 0.1,
                "bedroom": 0.1, "dining_room": 0.1, "kitchen": 0.1, "laundry": 0.1},
    "sensor": {"hallway": 0.8, "entrance": 0.7, "basement": 0.6, "garage": 0.5,
               "laundry": 0.5, "attic": 0.4, "storage": 0.4, "bedroom": 0.3,
               "kitchen": 0.3, "bathroom": 0.3, "dining_room": 0.3, "office": 0.3,
               "balcony": 0.3, "garden": 0.3, "living_room": 0.1},
    "appliance": {"laundry": 0.8, "basement": 0.5, "garage": 0.4, "kitchen": 0.3,
                  "storage": 0.3, "bathroom": 0.2, "attic": 0.1, "living_room": 0.1,
                  "garden": 0.1, "bedroom": 0.05},
    "cleaning": {"living_room": 0.5, "hallway": 0.5, "kitchen": 0.4, "bedroom": 0.3,
                 "dining_room": 0.3, "office": 0.3, "bathroom": 0.2, "basement": 0.2,
                 "garden": 0.2, "laundry": 0.2, "storage": 0.2, "garage": 0.2,
                 "entrance": 0.2, "balcony": 0.1, "attic": 0.1},
    "irrigation": {"garden": 0.9, "balcony": 0.5, "garage": 0.1, "basement": 0.05},
    "access_control": {"entrance": 0.9, "garage": 0.7, "hallway": 0.3, "garden": 0.2,
                       "basement": 0.1, "storage": 0.1, "balcony": 0.1,
                       "living_room": 0.1, "office": 0.1},
    "camera": {"garden": 0.6, "entrance": 0.5, "hallway": 0.4, "balcony": 0.3,
               "basement": 0.2, "garage": 0.2, "office": 0.2, "storage": 0.2,
               "living_room": 0.1, "attic": 0.1, "dining_room": 0.1, "kitchen": 0.1,
               "laundry": 0.05},
    "audio": {"living_room": 0.8, "bedroom": 0.5, "kitchen": 0.4, "office": 0.4,
              "dining_room": 0.4, "bathroom": 0.3, "basement": 0.2, "garden": 0.2,
              "balcony": 0.2, "hallway": 0.2, "attic": 0.1, "garage": 0.1,
              "entrance": 0.1, "laundry": 0.1},
    "wearable": {"bedroom": 0.6, "bathroom": 0.3, "living_room": 0.3, "office": 0.3,
                 "hallway": 0.1},
}

TEMPLATES = {
    "studio": {
        "room_count": 3, "floor_area": 35.0, "density_bounds": [0.1, 0.32],
        "default_inhabitants": 1, "device_count": 7,
        "room_type_distribution": {"living_room": 0.45, "kitchen": 0.30, "bathroom": 0.25},
    },
    "one_bedroom": {
        "room_count": 4, "floor_area": 55.0, "density_bounds": [0.1, 0.32],
        "default_inhabitants": 2, "device_count": None,
        "room_type_distribution": {"living_room": 0.30, "bedroom": 0.25, "kitchen": 0.25, "bathroom": 0.20},
    },
    "townhouse": {
        "room_count": 8, "floor_area": 120.0, "density_bounds": [0.1, 0.33],
        "default_inhabitants": 3, "device_count": None,
        "room_type_distribution": {"bedroom": 0.22, "living_room": 0.16, "bathroom": 0.14,
                                   "kitchen": 0.12, "hallway": 0.10, "office": 0.08,
                                   "entrance": 0.07, "laundry": 0.06, "storage": 0.05},
    },
    "family_house": {
        "room_count": 13, "floor_area": 180.0, "density_bounds": [0.12, 0.34],
        "default_inhabitants": 4, "device_count": 41,
        "room_type_distribution": {"bedroom": 0.26, "bathroom": 0.15, "living_room": 0.12,
                                   "kitchen": 0.10, "dining_room": 0.10, "garage": 0.07,
                                   "laundry": 0.06, "office": 0.05, "entrance": 0.05,
                                   "hallway": 0.04},
    },
    "mansion": {
        "room_count": 21, "floor_area": 450.0, "density_bounds": [0.12, 0.33],
        "default_inhabitants": 6, "device_count": 97,
        "room_type_distribution": {"hallway": 0.16, "bedroom": 0.13, "bathroom": 0.10,
                                   "garden": 0.08, "living_room": 0.07, "basement": 0.06,
                                   "entrance": 0.06, "office": 0.06, "kitchen": 0.05,
                                   "attic": 0.05, "storage": 0.05, "balcony": 0.04,
                                   "dining_room": 0.04, "garage": 0.03, "laundry": 0.02},
    },
}

INHABITANT_KINDS = {
    "adult": {"wake": 6.5, "sleep": 23.0, "work_start": 9.0, "work_end": 17.0,
              "work_from_home": False, "tech_savviness": 0.7, "variation_sigma": 0.1},
    "teenager": {"wake": 7.0, "sleep": 23.5, "work_start": 8.0, "work_end": 15.0,
                 "work_from_home": False, "tech_savviness": 0.9, "variation_sigma": 0.15},
    "child": {"wake": 7.0, "sleep": 20.5, "work_start": 8.0, "work_end": 14.0,
              "work_from_home": False, "tech_savviness": 0.4, "variation_sigma": 0.15},
    "elderly": {"wake": 6.0, "sleep": 22.0, "work_start": None, "work_end": None,
                "work_from_home": False, "tech_savviness": 0.3, "variation_sigma": 0.1},
    "pet": {"wake": 6.0, "sleep": 22.0, "work_start": None, "work_end": None,
            "work_from_home": False, "tech_savviness": 0.0, "variation_sigma": 0.2},
}

# Household composition by head count; index i gives the kind of inhabitant i.
HOUSEHOLD_MIX = [[],
                 ["adult"],
                 ["adult", "adult"],
                 ["adult", "adult", "child"],
                 ["adult", "adult", "child", "teenager"],
                 ["adult", "adult", "child", "teenager", "elderly"],
                 ["adult", "adult", "child", "teenager", "elderly", "pet"]]

# Per-kind activity preference weights by diurnal period (unnormalized).
# The loader expands these into row-stochastic 16x16 transition matrices.
_ADULT_PREFS = {
    "morning": {"waking_up": 4, "personal_care": 5, "eating": 4, "cooking": 3,
                "working": 2, "cleaning": 1, "exercising": 1.5, "idle": 1, "relaxing": 1},
    "daytime": {"working": 6, "eating": 2, "cooking": 1.5, "cleaning": 1.5, "laundry": 1,
                "studying": 0.5, "relaxing": 1, "socializing": 1, "idle": 1, "gardening": 0.5},
    "evening": {"cooking": 4, "eating": 4, "entertainment": 5, "socializing": 3,
                "relaxing": 3, "personal_care": 1.5, "cleaning": 1, "idle": 1},
    "night": {"sleeping": 12, "personal_care": 1, "entertainment": 0.8, "relaxing": 0.5, "idle": 0.3},
}
_TEEN_PREFS = {
    "morning": {"waking_up": 4, "personal_care": 4, "eating": 4, "studying": 2,
                "entertainment": 1, "idle": 1},
    "daytime": {"studying": 6, "eating": 2, "entertainment": 2, "socializing": 2,
                "playing": 1.5, "exercising": 1, "idle": 1},
    "evening": {"entertainment": 5, "socializing": 3, "eating": 3, "studying": 2,
                "playing": 2, "personal_care": 1.5, "idle": 1},
    "night": {"sleeping": 10, "entertainment": 1.5, "personal_care": 0.8, "idle": 0.3},
}
_CHILD_PREFS = {
    "morning": {"waking_up": 4, "personal_care": 3, "eating": 4, "playing": 2, "studying": 1.5},
    "daytime": {"studying": 5, "playing": 3, "eating": 2, "entertainment": 1.5, "idle": 1},
    "evening": {"playing": 4, "entertainment": 3, "eating": 3, "personal_care": 2, "socializing": 1.5},
    "night": {"sleeping": 14, "personal_care": 0.5},
}
_ELDERLY_PREFS = {
    "morning": {"waking_up": 4, "personal_care": 4, "eating": 4, "exercising": 2,
                "gardening": 1.5, "relaxing": 2, "idle": 1},
    "daytime": {"relaxing": 4, "gardening": 2, "cooking": 2, "eating": 2, "cleaning": 1.5,
                "socializing": 1.5, "entertainment": 2, "idle": 1.5},
    "evening": {"eating": 4, "entertainment": 4, "relaxing": 3, "socializing": 2, "personal_care": 1.5},
    "night": {"sleeping": 14, "personal_care": 1, "idle": 0.3},
}
_PET_PREFS = {
    "morning": {"waking_up": 3, "eating": 3, "playing": 3, "idle": 2, "exercising": 1.5},
    "daytime": {"sleeping": 4, "idle": 3, "playing": 2.5, "eating": 1, "exercising": 1},
    "evening": {"playing": 3, "eating": 3, "idle": 2, "socializing": 1.5},
    "night": {"sleeping": 14, "idle": 0.5},
}

ACTIVITY_MODEL = {
    "tick_seconds": 60,
    "periods": {"morning": [6, 9], "daytime": [9, 17], "evening": [17, 21], "night": [21, 6]},
    "preferences": {"adult": _ADULT_PREFS, "teenager": _TEEN_PREFS, "child": _CHILD_PREFS,
                    "elderly": _ELDERLY_PREFS, "pet": _PET_PREFS},
    "forbidden": {"pet": ["working", "studying", "cooking", "cleaning", "laundry", "gardening"],
                  "child": ["working"]},
    "self_prob_default": {"adult": 0.88, "teenager": 0.86, "child": 0.85, "elderly": 0.90, "pet": 0.86},
    "self_prob_overrides": {"sleeping": {"night": 0.995, "daytime": 0.97, "morning": 0.95, "evening": 0.97},
                            "working": {"daytime": 0.96},
                            "studying": {"daytime": 0.95},
                            "entertainment": {"evening": 0.94}},
    "initial_state": {"adult": "sleeping", "teenager": "sleeping", "child": "sleeping",
                      "elderly": "sleeping", "pet": "sleeping"},
}

# Device-interaction context: activity -> category affinity; unlisted pairs are 0.
PHI_CONTEXT = {
    "sleeping": {"health": 0.3, "sensor": 0.15, "climate": 0.2, "security": 0.1, "wearable": 0.2},
    "waking_up": {"lighting": 0.7, "climate": 0.4, "audio": 0.4, "sensor": 0.3, "wearable": 0.3},
    "personal_care": {"lighting": 0.5, "sensor": 0.4, "health": 0.5, "audio": 0.3, "climate": 0.2,
                      "wearable": 0.3},
    "eating": {"kitchen": 0.5, "lighting": 0.4, "audio": 0.4, "sensor": 0.3, "entertainment": 0.2},
    "cooking": {"kitchen": 0.9, "sensor": 0.4, "lighting": 0.5, "audio": 0.3, "climate": 0.2,
                "energy": 0.2, "cleaning": 0.1},
    "working": {"network": 0.7, "lighting": 0.5, "climate": 0.4, "energy": 0.3, "audio": 0.2,
                "sensor": 0.2, "entertainment": 0.1},
    "studying": {"network": 0.5, "lighting": 0.5, "audio": 0.2, "sensor": 0.2, "climate": 0.3},
    "cleaning": {"cleaning": 0.8, "appliance": 0.4, "lighting": 0.4, "sensor": 0.3, "energy": 0.2,
                 "audio": 0.3},
    "laundry": {"appliance": 0.8, "sensor": 0.3, "lighting": 0.3, "energy": 0.2},
    "entertainment": {"entertainment": 0.9, "audio": 0.6, "lighting": 0.5, "network": 0.3,
                      "climate": 0.3, "kitchen": 0.1, "sensor": 0.2},
    "exercising": {"wearable": 0.7, "health": 0.5, "audio": 0.5, "sensor": 0.3, "climate": 0.3},
    "socializing": {"audio": 0.5, "lighting": 0.5, "entertainment": 0.4, "kitchen": 0.3,
                    "sensor": 0.3, "camera": 0.1},
    "relaxing": {"audio": 0.5, "lighting": 0.4, "entertainment": 0.4, "climate": 0.3, "sensor": 0.2},
    "gardening": {"irrigation": 0.8, "sensor": 0.3, "camera": 0.2, "lighting": 0.2, "energy": 0.2},
    "playing": {"entertainment": 0.6, "audio": 0.4, "lighting": 0.4, "sensor": 0.3},
    "idle": {"sensor": 0.3, "lighting": 0.2, "audio": 0.2, "network": 0.1, "climate": 0.1},
}

PHI_TEMPORAL = {"morning": 0.8, "daytime": 0.6, "evening": 1.0, "night": 0.15}

# Inhabitant-device compatibility (chi): which categories each kind interacts with.
CHI = {
    "adult": CATEGORIES,
    "teenager": [c for c in CATEGORIES if c not in ("irrigation",)],
    "child": [c for c in CATEGORIES if c not in ("kitchen", "appliance", "energy",
                                                 "access_control", "irrigation")],
    "elderly": [c for c in CATEGORIES if c not in ("wearable",)],
    "pet": ["sensor", "camera", "security"],
}

# Preferred room types per activity, in assignment order.
ACTIVITY_ROOMS = {
    "sleeping": ["bedroom", "living_room"],
    "waking_up": ["bedroom", "living_room"],
    "personal_care": ["bathroom", "bedroom"],
    "eating": ["dining_room", "kitchen", "living_room"],
    "cooking": ["kitchen"],
    "working": ["office", "living_room", "bedroom"],
    "studying": ["office", "bedroom", "living_room"],
    "cleaning": ["kitchen", "living_room", "bathroom", "bedroom", "hallway"],
    "laundry": ["laundry", "bathroom", "kitchen"],
    "entertainment": ["living_room", "bedroom", "basement"],
    "exercising": ["living_room", "basement", "garden", "garage"],
    "socializing": ["living_room", "dining_room", "garden", "balcony"],
    "relaxing": ["living_room", "bedroom", "balcony", "garden"],
    "gardening": ["garden", "balcony", "garage"],
    "playing": ["living_room", "bedroom", "garden", "basement"],
    "idle": ["living_room", "hallway", "bedroom"],
}

# ---------------------------------------------------------------------------
# Threat registry
# ---------------------------------------------------------------------------

PHASES = ["reconnaissance", "initial_access", "execution", "persistence",
          "exfiltration", "cleanup"]

THREAT_CATEGORIES = ["availability", "botnet", "interception", "surveillance",
                     "data_theft", "manipulation", "credential_access"]

# Device-category susceptibility per threat category; unlisted pairs get 0.2.
VULN = {
    "availability": {"network": 0.9, "camera": 0.7, "entertainment": 0.6, "audio": 0.55,
                     "energy": 0.55, "climate": 0.4, "sensor": 0.3},
    "botnet": {"camera": 0.85, "network": 0.8, "entertainment": 0.6, "audio": 0.55,
               "appliance": 0.55, "cleaning": 0.5, "sensor": 0.3},
    "interception": {"network": 0.9, "security": 0.7, "access_control": 0.65,
                     "camera": 0.6, "energy": 0.55, "health": 0.4},
    "surveillance": {"camera": 0.9, "audio": 0.45, "security": 0.4, "sensor": 0.3},
    "data_theft": {"network": 0.8, "camera": 0.7, "health": 0.65, "wearable": 0.6,
                   "security": 0.55, "sensor": 0.4},
    "manipulation": {"access_control": 0.8, "security": 0.75, "climate": 0.6,
                     "appliance": 0.6, "lighting": 0.55, "kitchen": 0.55, "energy": 0.5},
    "credential_access": {"access_control": 0.85, "network": 0.75, "security": 0.7,
                          "camera": 0.6, "wearable": 0.5},
}

THREATS = {
    "denial_of_service": {
        "category": "availability", "base_rate": 12.0, "base_stealth": 0.2,
        "protocol": "WiFi", "tactic": "impact",
        "techniques": ["T1498", "T1499"],
        "signature": {"attack_vector": "syn_flood", "flag_syn": True},
        "bytes_range": [400, 1400],
        "phases": [["reconnaissance", 0.2], ["execution", 0.8]],
        "indicators": [
            {"id": "dos-rate-spike", "kind": "min_event_rate", "params": {"per_min": 8.0}},
            {"id": "dos-protocol-flood", "kind": "protocol_concentration", "params": {"min_fraction": 0.9}},
            {"id": "dos-multi-target", "kind": "distinct_targets", "params": {"min": 2}},
        ],
    },
    "botnet_recruitment": {
        "category": "botnet", "base_rate": 3.0, "base_stealth": 0.5,
        "protocol": "HTTP", "tactic": "command_and_control",
        "techniques": ["T1584.005", "T1071.001"],
        "signature": {"attack_vector": "c2_beacon", "flag_beacon": True},
        "bytes_range": [200, 900],
        "phases": [["reconnaissance", 0.15], ["initial_access", 0.2],
                   ["execution", 0.35], ["persistence", 0.3]],
        "indicators": [
            {"id": "bot-beacon-traffic", "kind": "payload_flag",
             "params": {"field": "flag_beacon", "value": True, "min_count": 5}},
            {"id": "bot-device-spread", "kind": "distinct_targets", "params": {"min": 3}},
            {"id": "bot-persistence-phase", "kind": "phase_present", "params": {"phase": "persistence"}},
        ],
    },
    "man_in_the_middle": {
        "category": "interception", "base_rate": 4.0, "base_stealth": 0.7,
        "protocol": "Ethernet", "tactic": "credential_access",
        "techniques": ["T1557"],
        "signature": {"attack_vector": "arp_spoof", "flag_arp_anomaly": True},
        "bytes_range": [100, 700],
        "phases": [["reconnaissance", 0.1], ["initial_access", 0.15], ["execution", 0.35],
                   ["persistence", 0.2], ["exfiltration", 0.2]],
        "indicators": [
            {"id": "mitm-arp-anomaly", "kind": "payload_flag",
             "params": {"field": "flag_arp_anomaly", "value": True, "min_count": 3}},
            {"id": "mitm-relay-protocol", "kind": "protocol_match", "params": {"protocol": "Ethernet"}},
            {"id": "mitm-capture-phase", "kind": "phase_present", "params": {"phase": "exfiltration"}},
        ],
    },
    "surveillance": {
        "category": "surveillance", "base_rate": 2.0, "base_stealth": 0.8,
        "protocol": "HTTP", "tactic": "collection",
        "techniques": ["T1125", "T1123"],
        "signature": {"attack_vector": "stream_hijack"},
        "bytes_range": [20000, 80000],
        "phases": [["reconnaissance", 0.25], ["initial_access", 0.25], ["exfiltration", 0.5]],
        "indicators": [
            {"id": "surv-camera-focus", "kind": "target_category",
             "params": {"category": "camera", "min_count": 3}},
            {"id": "surv-stream-volume", "kind": "total_bytes", "params": {"min": 500000}},
            {"id": "surv-exfil-phase", "kind": "phase_present", "params": {"phase": "exfiltration"}},
        ],
    },
    "resource_exhaustion": {
        "category": "availability", "base_rate": 8.0, "base_stealth": 0.3,
        "protocol": "MQTT", "tactic": "impact",
        "techniques": ["T1496"],
        "signature": {"attack_vector": "request_flood", "flag_flood": True},
        "bytes_range": [300, 1200],
        "phases": [["reconnaissance", 0.2], ["initial_access", 0.2], ["execution", 0.6]],
        "indicators": [
            {"id": "rex-rate-spike", "kind": "min_event_rate", "params": {"per_min": 6.0}},
            {"id": "rex-request-flood", "kind": "payload_flag",
             "params": {"field": "flag_flood", "value": True, "min_count": 10}},
            # Host-level load readings are not part of the generated traffic.
            {"id": "rex-cpu-saturation", "kind": "payload_field_above",
             "params": {"field": "cpu_load", "min": 0.95, "min_count": 10}},
        ],
    },
    "data_exfiltration": {
        "category": "data_theft", "base_rate": 2.5, "base_stealth": 0.75,
        "protocol": "HTTP", "tactic": "exfiltration",
        "techniques": ["T1048", "T1041"],
        "signature": {"attack_vector": "data_staging"},
        "bytes_range": [5000, 50000],
        "phases": [["reconnaissance", 0.1], ["initial_access", 0.15], ["execution", 0.25],
                   ["persistence", 0.2], ["exfiltration", 0.3]],
        "indicators": [
            {"id": "dex-exfil-phase", "kind": "phase_present", "params": {"phase": "exfiltration"}},
            {"id": "dex-outbound-volume", "kind": "total_bytes", "params": {"min": 200000}},
            # DNS tunneling is a distinct exfiltration channel this type does not use.
            {"id": "dex-dns-tunnel", "kind": "payload_flag",
             "params": {"field": "flag_dns_tunnel", "value": True, "min_count": 3}},
        ],
    },
    "device_tampering": {
        "category": "manipulation", "base_rate": 2.0, "base_stealth": 0.6,
        "protocol": "Zigbee", "tactic": "impact",
        "techniques": ["T1565"],
        "signature": {"attack_vector": "state_override", "flag_override": True},
        "bytes_range": [60, 400],
        "phases": [["initial_access", 0.3], ["execution", 0.5], ["cleanup", 0.2]],
        "indicators": [
            {"id": "tam-state-override", "kind": "payload_flag",
             "params": {"field": "flag_override", "value": True, "min_count": 3}},
            {"id": "tam-cleanup-phase", "kind": "phase_present", "params": {"phase": "cleanup"}},
            # Firmware attestation events are outside the generated surface.
            {"id": "tam-firmware-mismatch", "kind": "payload_flag",
             "params": {"field": "flag_firmware_mismatch", "value": True, "min_count": 1}},
        ],
    },
    "ransomware": {
        "category": "manipulation", "base_rate": 5.0, "base_stealth": 0.4,
        "protocol": "HTTP", "tactic": "impact",
        "techniques": ["T1486"],
        "signature": {"attack_vector": "lockout", "flag_lockout": True},
        "bytes_range": [500, 3000],
        "phases": [["initial_access", 0.25], ["execution", 0.5], ["persistence", 0.25]],
        "indicators": [
            {"id": "rw-lockout-burst", "kind": "payload_flag",
             "params": {"field": "flag_lockout", "value": True, "min_count": 5}},
            {"id": "rw-rate-spike", "kind": "min_event_rate", "params": {"per_min": 4.0}},
            # No ransom-note artifact is modeled in device traffic.
            {"id": "rw-ransom-note", "kind": "payload_flag",
             "params": {"field": "flag_ransom_note", "value": True, "min_count": 1}},
        ],
    },
    "credential_theft": {
        "category": "credential_access", "base_rate": 1.2, "base_stealth": 0.85,
        "protocol": "HTTP", "tactic": "credential_access",
        "techniques": ["T1110", "T1555"],
        "signature": {"attack_vector": "auth_probe", "flag_auth_probe": True},
        "bytes_range": [150, 600],
        "phases": [["reconnaissance", 0.2], ["initial_access", 0.3],
                   ["execution", 0.3], ["exfiltration", 0.2]],
        "indicators": [
            # Application-layer probing stays far below network brute-force rates.
            {"id": "ct-bruteforce-rate", "kind": "min_event_rate", "params": {"per_min": 30.0}},
            {"id": "ct-account-lockout", "kind": "payload_flag",
             "params": {"field": "flag_account_lockout", "value": True, "min_count": 3}},
            {"id": "ct-auth-probe", "kind": "payload_flag",
             "params": {"field": "flag_auth_probe", "value": True, "min_count": 3}},
        ],
    },
}

# Registry-extensible stubs: typed and targetable, but without tuned indicator
# rules; they reuse category defaults.
THREAT_STUBS = {
    "eavesdropping": ("interception", ["T1040"], [["reconnaissance", 0.4], ["execution", 0.6]]),
    "replay_attack": ("interception", ["T1557"], [["reconnaissance", 0.3], ["execution", 0.7]]),
    "spoofing": ("manipulation", ["T1036"], [["initial_access", 0.4], ["execution", 0.6]]),
    "brute_force": ("credential_access", ["T1110"], [["execution", 1.0]]),
    "port_scanning": ("surveillance", ["T1046"], [["reconnaissance", 1.0]]),
    "privilege_escalation": ("credential_access", ["T1068"], [["initial_access", 0.4], ["execution", 0.6]]),
    "rogue_device": ("botnet", ["T1200"], [["initial_access", 0.5], ["persistence", 0.5]]),
    "dns_tunneling": ("data_theft", ["T1048.003"], [["execution", 0.5], ["exfiltration", 0.5]]),
    "protocol_fuzzing": ("availability", ["T1499.004"], [["reconnaissance", 0.3], ["execution", 0.7]]),
    "firmware_tampering": ("manipulation", ["T1601"], [["initial_access", 0.3], ["execution", 0.4], ["persistence", 0.3]]),
    "command_injection": ("manipulation", ["T1059"], [["initial_access", 0.5], ["execution", 0.5]]),
    "crypto_mining": ("availability", ["T1496"], [["initial_access", 0.3], ["execution", 0.4], ["persistence", 0.3]]),
    "energy_fraud": ("availability", ["T1565.001"], [["initial_access", 0.5], ["execution", 0.5]]),
}


# ---------------------------------------------------------------------------
# Reference message schema for realism evaluation
# ---------------------------------------------------------------------------

FIELD_TAGS = {
    "temperature": ["temp", "thermal", "degrees"],
    "setpoint": ["target", "temperature", "set"],
    "humidity": ["moisture", "humidity", "rh"],
    "battery": ["battery", "charge", "power"],
    "power_w": ["power", "watts", "consumption"],
    "state": ["state", "status", "mode"],
    "level": ["level", "brightness", "intensity"],
    "throughput_mbps": ["throughput", "bandwidth", "speed"],
    "clients": ["clients", "connections", "devices"],
    "bitrate_kbps": ["bitrate", "stream", "video"],
    "motion_score": ["motion", "activity", "detection"],
    "pm25": ["particulate", "air", "quality"],
    "co2_ppm": ["carbon", "co2", "air"],
    "illuminance": ["light", "lux", "brightness"],
    "moisture": ["moisture", "water", "wetness"],
    "smoke_level": ["smoke", "fire", "detection"],
    "co_ppm": ["carbon", "monoxide", "gas"],
    "heart_rate": ["heart", "pulse", "bpm"],
    "respiration": ["breathing", "respiration", "rate"],
    "volume": ["volume", "audio", "loudness"],
    "nodes": ["nodes", "devices", "mesh"],
    "pressure": ["pressure", "force", "weight"],
    "steps": ["steps", "activity", "count"],
    "cycle_minutes": ["cycle", "duration", "minutes"],
    "water_level": ["water", "level", "tank"],
    "zone_count": ["zones", "areas", "count"],
    "door_open_count": ["door", "open", "count"],
    "valve_open": ["valve", "open", "position"],
    "speed": ["speed", "fan", "rate"],
    "sessions": ["sessions", "connections", "count"],
    "disk_pct": ["disk", "storage", "capacity"],
    "peer": ["peer", "hub", "link"],
    "bytes": ["bytes", "size", "payload"],
}


def build_reference_schema() -> dict:
    """Reference message shapes for the common device types.

    Expected numeric ranges are deliberately a little narrower than the
    generator's, the way an external capture under specific conditions
    would be, so range overlap scores below 1.
    """
    schema = {}
    for name, (tier, archetype, protocols, on_watts, interval, ranges) in DEVICE_TYPES.items():
        if tier == "rare":
            continue
        fields = {}
        for fname, (lo, hi) in ranges.items():
            span = hi - lo
            fields[fname] = {
                "type": "number",
                "range": [round(lo + 0.15 * span, 3), round(hi - 0.1 * span, 3)],
                "tags": FIELD_TAGS.get(fname, [fname]),
            }
        states, transitions, _ = ARCHETYPES[archetype]
        if transitions:
            fields["state"] = {"type": "string", "tags": FIELD_TAGS["state"]}
            fields["power_w"] = {"type": "number",
                                 "range": [0.0, round(on_watts * 1.1, 3)],
                                 "tags": FIELD_TAGS["power_w"]}
        if fields:
            schema[name] = {"category": CATEGORY_OF[name], "fields": fields}
    return schema


def build_device_types() -> dict:
    out = {}
    for name, (tier, archetype, protocols, on_watts, interval, ranges) in DEVICE_TYPES.items():
        states, transitions, activation = ARCHETYPES[archetype]
        idle_watts = round(min(0.5, on_watts * 0.1), 3)
        power = {}
        for s in states:
            if s in ("off", "idle", "locked"):
                power[s] = idle_watts
            elif s == "degraded":
                power[s] = round(on_watts * 0.5, 3)
            else:
                power[s] = on_watts
        out[name] = {
            "category": CATEGORY_OF[name],
            "protocols": protocols,
            "states": states,
            "transitions": transitions,
            "power_profile": power,
            "base_density": TIER_DENSITY[tier],
            "value_ranges": ranges,
            "telemetry_interval_s": interval,
            "activation_rate": activation,
        }
    return out


def build_catalog() -> dict:
    return {
        "schema_version": 1,
        "catalog_version": "1.0.0",
        "protocols": PROTOCOLS,
        "protocol_families": PROTOCOL_FAMILIES,
        "room_types": {name: {"capacity": cap} for name, cap in ROOM_TYPES.items()},
        "categories": CATEGORIES,
        "activities": ACTIVITIES,
        "device_type_count": len(DEVICE_TYPES),
        "device_types": build_device_types(),
        "templates": TEMPLATES,
        "compat": COMPAT,
        "activity_model": ACTIVITY_MODEL,
        "inhabitant_kinds": INHABITANT_KINDS,
        "household_mix": HOUSEHOLD_MIX,
        "chi": CHI,
        "activity_rooms": ACTIVITY_ROOMS,
        "phi_temporal": PHI_TEMPORAL,
        "phi_tech": {"floor": 0.1, "slope": 0.9},
        "phi_context": PHI_CONTEXT,
    }


def build_threats() -> dict:
    threats = {}
    for name, spec in THREATS.items():
        threats[name] = dict(spec)
        threats[name]["stub"] = False
    for name, (category, techniques, phases) in THREAT_STUBS.items():
        threats[name] = {
            "category": category, "base_rate": 2.0, "base_stealth": 0.5,
            "protocol": "WiFi", "tactic": "impact", "techniques": techniques,
            "signature": {"attack_vector": name}, "bytes_range": [100, 1000],
            "phases": phases, "indicators": [], "stub": True,
        }
    return {
        "schema_version": 1,
        "registry_version": "1.0.0",
        "phases": PHASES,
        "categories": THREAT_CATEGORIES,
        "defaults": {"k_rate": 2.0, "k_stealth": 1.0, "theta_vuln": 0.5},
        "vuln": VULN,
        "threats": threats,
    }


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    catalog = build_catalog()
    threats = build_threats()
    reference = build_reference_schema()
    (OUT_DIR / "catalog.json").write_text(json.dumps(catalog, indent=2, sort_keys=True) + "\n")
    (OUT_DIR / "threats.json").write_text(json.dumps(threats, indent=2, sort_keys=True) + "\n")
    (OUT_DIR / "reference_schema.json").write_text(json.dumps(reference, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT_DIR / 'catalog.json'} ({len(catalog['device_types'])} device types)")
    print(f"wrote {OUT_DIR / 'threats.json'} ({len(threats['threats'])} threat types)")
    print(f"wrote {OUT_DIR / 'reference_schema.json'} ({len(reference)} device types)")


if __name__ == "__main__":
    main()
