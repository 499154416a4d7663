"""JSON config loading for geometry and actuator constants.

Schema (all keys optional; unknown keys are ignored):

    {
      "section_length_m": 0.16,
      "actuator_radius_m": 0.02,
      "phi_max_rad": 3.141592653589793,
      "pma_free_length_m": 0.15,
      "pma_max_extension_ratio": 0.5,
      "pma_max_pressure_pa": 700e3,
      "pma_deadzone_pa": 90e3
    }
"""

from __future__ import annotations

import json

from .arc_geometry import RobotGeometry
from .errors import DataError
from .pma import PmaSpec

_GEOMETRY_KEYS = {
    "section_length_m": "section_length",
    "actuator_radius_m": "actuator_radius",
    "phi_max_rad": "phi_max",
}

_PMA_KEYS = {
    "pma_free_length_m": "free_length",
    "pma_max_extension_ratio": "max_extension_ratio",
    "pma_max_pressure_pa": "max_pressure",
    "pma_deadzone_pa": "deadzone_pressure",
}


def _read(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DataError(f"{path}: config must be a JSON object")
    return data


def _pick(data: dict, keys: dict[str, str], path: str) -> dict:
    kwargs = {}
    for file_key, attr in keys.items():
        if file_key in data:
            value = data[file_key]
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise DataError(f"{path}: {file_key} must be a number, got {value!r}")
            kwargs[attr] = float(value)
    return kwargs


def load_geometry(path: str) -> RobotGeometry:
    data = _read(path)
    return RobotGeometry(**_pick(data, _GEOMETRY_KEYS, path))


def load_pma_spec(path: str) -> PmaSpec:
    data = _read(path)
    return PmaSpec(**_pick(data, _PMA_KEYS, path))
