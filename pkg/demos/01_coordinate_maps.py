"""Walk through the coordinate maps between an inertial observer and a
uniformly accelerated one.

The accelerated observer sits at fixed chi = 1/a in its own (tau, chi)
coordinates; seen from the inertial frame it traces the hyperbola
x^2 - t^2 = chi^2 inside the right wedge x > |t|.  This script round-trips
events through both maps, follows one trajectory, and shows how the
boost velocity saturates toward the speed of light while the rapidity
keeps growing linearly in proper time.
"""

import numpy as np

from rindlersim import (
    Acceleration,
    HorizonError,
    MinkowskiEvent,
    RindlerEvent,
    boost_of,
    minkowski_to_rindler,
    rindler_to_minkowski,
    u_of_delta,
)

a = Acceleration(1.0)

print("=== One trajectory, chi = 1/a = 1 ===")
print(f"{'tau':>6} {'t':>12} {'x':>12} {'sqrt(x^2-t^2)':>15} {'v=tanh(a tau)':>14}")
for tau in np.linspace(0.0, 3.0, 7):
    event = rindler_to_minkowski(RindlerEvent(tau=float(tau), chi=1.0))
    radius = np.sqrt((event.x - event.t) * (event.x + event.t))
    boost = boost_of(a, float(tau))
    print(f"{tau:6.2f} {event.t:12.6f} {event.x:12.6f} {radius:15.12f} {boost.velocity:14.9f}")

print()
print("=== Round trips are exact ===")
for tau, chi in [(0.0, 0.5), (1.0, 1.0), (-2.0, 3.0)]:
    forward = rindler_to_minkowski(RindlerEvent(tau=tau, chi=chi))
    back = minkowski_to_rindler(forward)
    print(
        f"(tau={tau:5.2f}, chi={chi:4.2f}) -> (t={forward.t:9.6f}, x={forward.x:9.6f})"
        f" -> (tau={back.tau:17.15f}, chi={back.chi:17.15f})"
    )

print()
print("=== The horizon x = |t| is a hard edge ===")
for t, x in [(1.0, 1.0), (2.0, 1.5)]:
    try:
        minkowski_to_rindler(MinkowskiEvent(t=t, x=x))
    except HorizonError as exc:
        print(f"(t={t}, x={x}): {exc}")

print()
print("=== Dimensionless position u = a*x vs velocity ===")
print("u = cosh(rapidity) grows without bound while v = tanh(rapidity) -> 1:")
for delta in (0.5, 0.1, 0.01, 0.001251):
    v = 1.0 - delta
    print(f"  v = {v:9.6f}  ->  u = {u_of_delta(delta):10.4f}")
print("the u = 20 edge of the coefficient scans corresponds to v = 0.998749")
