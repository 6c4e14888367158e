"""Coefficients of the enlarged-space generator -i[f(x) I + g(x) sigma_x] d/dx.

Everything is expressed through the dimensionless position u = a*x >= 1
and the two auxiliary quantities

    s = sqrt(u^2 - 1),        r = arctanh(s / u),

in terms of which the closed forms read

    D = u + s - u*r                      (shared denominator)
    f = (u + s) * (1 - r/2) / D
    g = r * (s - u) / (2 * D)

so that f + g = 1 identically: the inertial combination psi_e + psi_o
keeps obeying the original massless transport equation.  D has a single
root u_star ~ 3.624 where the even/odd system cannot be inverted into
Dirac-like form; coefficients are undefined inside a small margin
around it.

`coefficients_via_inversion` rebuilds (f, g) from the even/odd
derivative-operator expansion and a literal 2x2 matrix inversion.  It
is kept deliberately independent of the closed forms above and acts as
a derivation oracle for them (g's denominator is easy to get wrong by
hand; the matrix route and the sum rule pin it down).

Small-velocity and near-light-speed approximations of (f, g) are
provided as `galileo_coefficients` and `ultra_coefficients`.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coords import Acceleration
from .errors import CoordinateDomainError, SingularityError

__all__ = [
    "CoefficientPoint",
    "SingularPoint",
    "UltraParams",
    "SINGULAR_EPS",
    "COEFFICIENT_CAP",
    "ULTRA_SINGULAR_MARGIN",
    "hyperbolic_factors",
    "denominator",
    "coefficients",
    "coefficient_arrays",
    "coefficients_via_inversion",
    "find_singularity",
    "galileo_coefficients",
    "ultra_f_delta",
    "ultra_f_delta_coarse",
    "ultra_params",
    "ultra_coefficients",
    "bisect",
]

# |D| at or below this is treated as singular.
SINGULAR_EPS = 1e-9
# window validation additionally rejects |f| above this cap
COEFFICIENT_CAP = 10.0
# minimum allowed distance of log(delta/2) from the singular value -4
ULTRA_SINGULAR_MARGIN = 0.5

_SINGULAR_BRACKET = (1.001, 20.0)


@dataclass(frozen=True)
class CoefficientPoint:
    """Sampled generator coefficients at dimensionless position u."""

    u: float
    f: float
    g: float
    denominator: float


@dataclass(frozen=True)
class SingularPoint:
    """Location where the generator denominator vanishes."""

    u_star: float
    x_star: float
    v_star: float


@dataclass(frozen=True)
class UltraParams:
    """Near-light-speed expansion parameter and its coefficient."""

    delta: float
    f_delta: float


def hyperbolic_factors(u):
    """Return (s, r) = (sqrt(u^2-1), arctanh(s/u)) for scalar or array u >= 1."""
    u = np.asarray(u, dtype=float)
    if np.any(u < 1.0):
        raise CoordinateDomainError("u = a*x must be >= 1 (right-wedge positions only)")
    s = np.sqrt((u - 1.0) * (u + 1.0))
    r = np.arctanh(s / u)
    return s, r


def denominator(u):
    """Shared denominator D(u) = u + s - u*r; scalar in, scalar out."""
    s, r = hyperbolic_factors(u)
    result = np.asarray(u, dtype=float) + s - np.asarray(u, dtype=float) * r
    return float(result) if result.ndim == 0 else result


def coefficient_arrays(u, eps: float = SINGULAR_EPS):
    """Vectorized (f, g, D) over an array of u values.

    Raises SingularityError if any sample sits within eps of the root
    of D; callers wanting flagged scans should pre-mask instead.
    """
    u = np.asarray(u, dtype=float)
    s, r = hyperbolic_factors(u)
    D = u + s - u * r
    if np.any(np.abs(D) <= eps):
        bad = float(u.reshape(-1)[int(np.argmin(np.abs(D)))])
        raise SingularityError(f"generator denominator vanishes near u = {bad}")
    f = (u + s) * (1.0 - r / 2.0) / D
    g = r * (s - u) / (2.0 * D)
    return f, g, D


def coefficients(u: float, eps: float = SINGULAR_EPS) -> CoefficientPoint:
    """Closed-form generator coefficients at a single position u >= 1."""
    f, g, D = coefficient_arrays(float(u), eps=eps)
    return CoefficientPoint(u=float(u), f=float(f), g=float(g), denominator=float(D))


def coefficients_via_inversion(u: float, eps: float = SINGULAR_EPS) -> CoefficientPoint:
    """Generator coefficients derived by inverting the even/odd operator system.

    The even/odd split of the time and space derivatives expands as

        dt_{e,o} = 1/2 [dt +- (s dx + u dt)]
        dx_{e,o} = 1/2 [dx +- ((u - s*r) dx + (s - u*r) dt)]

    Collecting the dt and dx coefficient matrices A and B of the
    two-component system i A dt Psi = -i B dx Psi and forming
    M = A^{-1} B yields M = f I + g sigma_x.  A is singular exactly
    where the closed-form denominator vanishes (det A = D).
    """
    u = float(u)
    s, r = hyperbolic_factors(u)
    s, r = float(s), float(r)

    # dt coefficients: from the dt_{e,o} expansion and the dt part of dx_{e,o}
    a_even = 0.5 * (1.0 + u) + 0.5 * (s - u * r)
    a_odd = 0.5 * (1.0 - u) - 0.5 * (s - u * r)
    # dx coefficients: from the dx part of dt_{e,o} and the dx_{e,o} expansion
    b_even = 0.5 * s + 0.5 * (1.0 + u - s * r)
    b_odd = -0.5 * s + 0.5 * (1.0 - u + s * r)

    A = np.array([[a_even, a_odd], [a_odd, a_even]])
    B = np.array([[b_even, b_odd], [b_odd, b_even]])
    det = float(np.linalg.det(A))
    if abs(det) <= eps:
        raise SingularityError(
            f"even/odd time-derivative matrix is singular at u = {u} (det = {det})"
        )
    M = np.linalg.solve(A, B)
    f = 0.5 * float(M[0, 0] + M[1, 1])
    g = 0.5 * float(M[0, 1] + M[1, 0])
    return CoefficientPoint(u=u, f=f, g=g, denominator=det)


def bisect(fn, lo: float, hi: float, xtol: float = 1e-12, max_iter: int = 200) -> float:
    """Bisection root of fn on [lo, hi]; requires a sign change."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError(f"no sign change of target function on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0 or (hi - lo) < xtol:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def find_singularity(a: Acceleration) -> SingularPoint:
    """Locate the denominator root u_star by bisection on [1.001, 20].

    Also reports the physical position x_star = u_star / a and the
    boost velocity there, v_star = sqrt(1 - 1/u_star^2).
    """
    u_star = bisect(denominator, *_SINGULAR_BRACKET, xtol=1e-12)
    v_star = math.sqrt(1.0 - 1.0 / (u_star * u_star))
    return SingularPoint(u_star=u_star, x_star=u_star / a.a, v_star=v_star)


def galileo_coefficients(v: float) -> CoefficientPoint:
    """Small-velocity limit f = 1 + v/2, g = -v/2.

    Valid for |v| << 1; enforced up to |v| <= 0.2 with a warning beyond
    0.1.  The denominator concept does not apply in this regime, so the
    returned point carries NaN there.
    """
    if abs(v) > 0.2:
        raise CoordinateDomainError(
            f"small-velocity coefficients need |v| <= 0.2, got {v}"
        )
    if abs(v) > 0.1:
        warnings.warn(
            f"small-velocity approximation is marginal at |v| = {abs(v)} > 0.1",
            stacklevel=2,
        )
    u = 1.0 / math.sqrt((1.0 - v) * (1.0 + v))
    return CoefficientPoint(u=u, f=1.0 + v / 2.0, g=-v / 2.0, denominator=math.nan)


def ultra_f_delta(delta: float, margin: float = ULTRA_SINGULAR_MARGIN) -> float:
    """Expansion coefficient f(delta) = -delta / (2 (1 + 4/log(delta/2))).

    delta = 1 - v must stay away from the singular value where
    log(delta/2) = -4; `margin` bounds |log(delta/2) + 4| from below.
    """
    if not (0.0 < delta < 1.0):
        raise CoordinateDomainError(f"delta must lie in (0, 1), got {delta}")
    log_half = math.log(delta / 2.0)
    if abs(log_half + 4.0) <= margin:
        raise SingularityError(
            f"delta = {delta} is within the singular margin: |log(delta/2) + 4| = "
            f"{abs(log_half + 4.0):.3g} <= {margin}"
        )
    return -delta / (2.0 * (1.0 + 4.0 / log_half))


def ultra_f_delta_coarse(delta: float) -> float:
    """Leading-order coefficient without the log correction, -delta/2."""
    return -delta / 2.0


def ultra_params(delta: float, margin: float = ULTRA_SINGULAR_MARGIN) -> UltraParams:
    return UltraParams(delta=delta, f_delta=ultra_f_delta(delta, margin=margin))


def ultra_coefficients(
    delta: float, margin: float = ULTRA_SINGULAR_MARGIN
) -> CoefficientPoint:
    """Near-light-speed limit f = 1 + f_delta, g = -f_delta.

    As delta -> 0 this reduces to the trivial generator (f, g) = (1, 0):
    at v = 1 the frame change is an ordinary time-independent boost and
    leaves the transport dynamics invariant.
    """
    fd = ultra_f_delta(delta, margin=margin)
    u = 1.0 / math.sqrt(delta * (2.0 - delta))
    return CoefficientPoint(u=u, f=1.0 + fd, g=-fd, denominator=math.nan)
