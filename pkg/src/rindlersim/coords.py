"""Coordinate maps between an inertial observer and a uniformly
accelerated one, in 1+1 dimensions with natural units (c = hbar = 1).

The accelerated observer with proper acceleration a sits at constant
position chi = 1/a in its adapted coordinates (tau, chi) and covers the
right wedge x > |t| of the inertial plane:

    t = chi * sinh(tau / chi),    x = chi * cosh(tau / chi)

The inverse map is chi = sqrt(x^2 - t^2), tau = chi * arctanh(t / x).
All operations here are pure functions; the left/future/past wedges are
out of scope and horizon contact is an error, never a NaN.
"""

from dataclasses import dataclass
import math

from .errors import CoordinateDomainError, HorizonError

__all__ = [
    "Acceleration",
    "MinkowskiEvent",
    "RindlerEvent",
    "Boost",
    "in_right_wedge",
    "rindler_to_minkowski",
    "minkowski_to_rindler",
    "boost_of",
    "u_of_delta",
]


@dataclass(frozen=True)
class Acceleration:
    """Proper acceleration a > 0 (units of inverse length)."""

    a: float

    def __post_init__(self):
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise CoordinateDomainError(f"acceleration must be positive, got {self.a}")


@dataclass(frozen=True)
class MinkowskiEvent:
    """Inertial-frame event (t, x)."""

    t: float
    x: float


@dataclass(frozen=True)
class RindlerEvent:
    """Accelerated-frame event (tau, chi), chi > 0."""

    tau: float
    chi: float

    def __post_init__(self):
        if not (self.chi > 0.0 and math.isfinite(self.chi)):
            raise CoordinateDomainError(f"chi must be positive, got {self.chi}")


@dataclass(frozen=True)
class Boost:
    """Instantaneous boost of the accelerated observer relative to the
    inertial frame that coincides with it at t = tau = 0.

    rapidity = a * tau, velocity = tanh(rapidity), and the dimensionless
    position u = a * x = cosh(rapidity) along the trajectory.
    """

    rapidity: float
    velocity: float
    u: float


def in_right_wedge(t: float, x: float) -> bool:
    """True when the event (t, x) lies strictly inside the right wedge."""
    return x > abs(t)


def rindler_to_minkowski(e: RindlerEvent) -> MinkowskiEvent:
    """Map (tau, chi) to (t, x); the image always lies in the right wedge."""
    ratio = e.tau / e.chi
    return MinkowskiEvent(t=e.chi * math.sinh(ratio), x=e.chi * math.cosh(ratio))


def minkowski_to_rindler(e: MinkowskiEvent) -> RindlerEvent:
    """Map a right-wedge event (t, x) to (tau, chi).

    Raises HorizonError for x <= |t|: the event is on or beyond the
    horizon and carries no accelerated-frame coordinates.
    """
    if not in_right_wedge(e.t, e.x):
        raise HorizonError(
            f"event (t={e.t}, x={e.x}) is on or beyond the horizon x = |t|"
        )
    # factored form avoids cancellation when x is close to |t|
    chi = math.sqrt((e.x - e.t) * (e.x + e.t))
    tau = chi * math.atanh(e.t / e.x)
    return RindlerEvent(tau=tau, chi=chi)


def boost_of(a: Acceleration, tau: float) -> Boost:
    """Boost parameters after proper time tau at acceleration a."""
    phi = a.a * tau
    return Boost(rapidity=phi, velocity=math.tanh(phi), u=math.cosh(phi))


def u_of_delta(delta: float) -> float:
    """Dimensionless position u = cosh(arctanh(1 - delta)) for a
    near-light-speed observer with velocity v = 1 - delta.

    Computed as 1/sqrt(delta*(2 - delta)), which is exact for
    v in (-1, 1) and avoids cancellation for small delta.
    """
    if not (0.0 < delta < 1.0):
        raise CoordinateDomainError(f"delta must lie in (0, 1), got {delta}")
    return 1.0 / math.sqrt(delta * (2.0 - delta))
