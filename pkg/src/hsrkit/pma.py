"""Pneumatic artificial muscle (PMA) free-extension model.

Thin-walled silicone PMAs reinforced against radial expansion extend
axially under pressure.  Below the deadzone the wall absorbs the pressure
and nothing moves; above it, free extension is modelled as a linear ramp
up to the rated maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, OverpressureError


@dataclass(frozen=True)
class PmaSpec:
    free_length: float = 0.15          # unpressurised length [m]
    max_extension_ratio: float = 0.5   # extension at max pressure / free length
    max_pressure: float = 700e3        # rated maximum [Pa]
    deadzone_pressure: float = 90e3    # no motion below this [Pa]

    def __post_init__(self):
        if not (self.free_length > 0.0 and math.isfinite(self.free_length)):
            raise DomainError(f"free_length must be > 0, got {self.free_length}")
        if not (0.0 < self.max_extension_ratio <= 1.0):
            raise DomainError(
                f"max_extension_ratio must be in (0, 1], got {self.max_extension_ratio}"
            )
        if not 0.0 <= self.deadzone_pressure < self.max_pressure:
            raise DomainError(
                "need 0 <= deadzone_pressure < max_pressure, got "
                f"({self.deadzone_pressure}, {self.max_pressure})"
            )


def free_extension(spec: PmaSpec, pressure: float) -> float:
    """Unloaded axial extension [m] at the given pressure [Pa].

    Zero through the deadzone, then linear in (pressure - deadzone) up to
    free_length * max_extension_ratio at max_pressure.
    """
    if not math.isfinite(pressure) or pressure < 0.0:
        raise DomainError(f"pressure must be finite and >= 0, got {pressure}")
    if pressure > spec.max_pressure:
        raise OverpressureError(
            f"pressure {pressure:g} Pa exceeds rated maximum {spec.max_pressure:g} Pa"
        )
    if pressure <= spec.deadzone_pressure:
        return 0.0
    span = spec.max_pressure - spec.deadzone_pressure
    frac = (pressure - spec.deadzone_pressure) / span
    return spec.free_length * spec.max_extension_ratio * frac
