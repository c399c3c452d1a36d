"""Exception hierarchy shared by all gravshift modules."""

from __future__ import annotations

__all__ = [
    "GravshiftError",
    "DimensionError",
    "DomainError",
    "ConfigurationError",
    "RegistryError",
    "ImpactError",
    "ConvergenceError",
]


class GravshiftError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(GravshiftError, TypeError):
    """Arithmetic or an operation was attempted on incompatible dimensions."""


class DomainError(GravshiftError, ValueError):
    """Input lies outside the validity domain of a formula.

    Raised for interior field points, strong-field potentials
    (|phi|/c^2 >= 1), approximation-domain violations (a/r too large)
    and non-positive photon energies.
    """


class ConfigurationError(GravshiftError, ValueError):
    """A field point, registry reference or state combination is inconsistent."""


class RegistryError(ConfigurationError):
    """A registry file failed to parse or validate."""


class ImpactError(GravshiftError, RuntimeError):
    """A traced ray hit a body surface instead of escaping.

    Attributes
    ----------
    body : str
        Name of the body that was struck.
    closest_approach_m : float
        Center distance at which the trace stopped.
    """

    def __init__(self, body: str, closest_approach_m: float):
        super().__init__(
            f"ray impacted body '{body}' (closest approach {closest_approach_m:.6e} m)"
        )
        self.body = body
        self.closest_approach_m = closest_approach_m


class ConvergenceError(GravshiftError, RuntimeError):
    """The ray integrator could not reach the termination radius."""
