"""Exception types shared across the library.

The CLI maps these onto exit codes (see hsrkit.cli), so library code should
raise the most specific class that applies.
"""


class DomainError(ValueError):
    """An argument falls outside the physically meaningful domain."""


class ConstraintError(DomainError):
    """A joint state violates the fixed-length closure constraint."""


class OutOfDomainError(DomainError):
    """A query lies outside the measured region of an empirical map."""


class OverpressureError(DomainError):
    """A commanded pressure exceeds the actuator's rated maximum."""


class DataError(ValueError):
    """Malformed, degenerate, or inconsistent input data."""


class IndeterminateStiffnessError(ValueError):
    """The applied perturbation produced no measurable bend change."""


class InfeasibleStiffnessError(ValueError):
    """Requested stiffness cannot be realised at the requested bend.

    Carries the achievable closed interval so callers can report it.
    """

    def __init__(self, k_requested: float, k_min: float, k_max: float):
        self.k_requested = k_requested
        self.k_min = k_min
        self.k_max = k_max
        super().__init__(
            f"stiffness {k_requested:g} Nm/rad not achievable at this bend; "
            f"achievable [{k_min:g}, {k_max:g}]"
        )


class NoGraspError(RuntimeError):
    """No finger touches the object in the commanded configuration."""
