"""Scenario orchestration: strict config loading, coefficient scans,
singularity reports, evolution runs and limit-comparison tables.

Serialization rules, chosen for bit-stable diffs: CSV files use '.'
decimals, shortest round-trip float formatting, LF line endings and
UTF-8; report JSON uses sorted keys and no timestamps, so identical
configurations produce byte-identical outputs.  Config files are JSON
with a fixed field set; unknown fields are rejected outright.
"""

import json
import math
import os
import warnings
from dataclasses import dataclass

import numpy as np

from .coords import Acceleration
from .embedding import Grid
from .errors import ConfigError
from .evolution import (
    EvolutionResult,
    GridWindow,
    SolverConfig,
    WavepacketSpec,
    build_generator,
    evolve,
)
from .hamiltonian import (
    COEFFICIENT_CAP,
    SINGULAR_EPS,
    coefficients,
    find_singularity,
    galileo_coefficients,
    hyperbolic_factors,
    ultra_coefficients,
    ultra_f_delta,
)

__all__ = [
    "SimulationConfig",
    "load_config",
    "cmd_coeffs",
    "cmd_singularity",
    "cmd_evolve",
    "cmd_limits",
    "SNAPSHOT_HEADER",
]

SNAPSHOT_HEADER = (
    "x,Re(ψᵉ),Im(ψᵉ),Re(ψᵒ),Im(ψᵒ),"
    "Re(ψ),Im(ψ),Re(ψ'),Im(ψ')"
)

_SCHEME_ALIASES = {
    "central4": "central4",
    "central-4th-order": "central4",
    "upwind1": "upwind1",
    "upwind-1st-order": "upwind1",
}


@dataclass(frozen=True)
class SimulationConfig:
    a: Acceleration
    window: GridWindow
    packet: WavepacketSpec
    solver: SolverConfig
    mode: str
    delta: float | None
    output_dir: str | None

    def physics_dict(self) -> dict:
        """Configuration echo for reports; deliberately excludes the
        output directory so reruns into different places stay
        byte-identical."""
        d = {
            "a": self.a.a,
            "window": {
                "x_min": self.window.x_min,
                "x_max": self.window.x_max,
                "N": self.window.n,
            },
            "packet": {
                "x0": self.packet.x0,
                "sigma": self.packet.sigma,
                "k0": self.packet.k0,
                "amplitude": self.packet.amplitude,
            },
            "time": {
                "t_final": self.solver.t_final,
                "cfl": self.solver.cfl,
                "snapshot_stride": self.solver.snapshot_stride,
            },
            "scheme": {
                "derivative": self.solver.scheme,
                "boundary": self.solver.boundary,
            },
            "mode": self.mode if self.delta is None else {"kind": self.mode, "delta": self.delta},
        }
        return d


def _require_keys(section: dict, allowed: set, required: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) {sorted(unknown)} in {where}")
    missing = required - set(section)
    if missing:
        raise ConfigError(f"missing field(s) {sorted(missing)} in {where}")


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise ConfigError(f"{where} must be finite, got {value!r}")
    return float(value)


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where} must be an integer, got {value!r}")
    return value


def load_config(source) -> SimulationConfig:
    """Build a validated SimulationConfig from a dict, JSON text path or
    file object.  Fails closed: unknown fields are errors."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    elif hasattr(source, "read"):
        raw = json.load(source)
    else:
        raw = source
    if not isinstance(raw, dict):
        raise ConfigError("configuration root must be a JSON object")

    _require_keys(
        raw,
        allowed={"a", "window", "packet", "time", "scheme", "mode", "output_dir"},
        required={"a", "window", "packet", "time"},
        where="configuration",
    )

    a_val = _as_number(raw["a"], "a")
    if a_val <= 0:
        raise ConfigError(f"a must be positive, got {a_val}")
    a = Acceleration(a_val)

    win = raw["window"]
    _require_keys(win, {"x_min", "x_max", "N"}, {"x_min", "x_max", "N"}, "window")
    window = GridWindow(
        x_min=_as_number(win["x_min"], "window.x_min"),
        x_max=_as_number(win["x_max"], "window.x_max"),
        n=_as_int(win["N"], "window.N"),
        a=a,
    )

    pk = raw["packet"]
    _require_keys(pk, {"x0", "sigma", "k0", "amplitude"}, {"x0", "sigma"}, "packet")
    packet = WavepacketSpec(
        x0=_as_number(pk["x0"], "packet.x0"),
        sigma=_as_number(pk["sigma"], "packet.sigma"),
        k0=_as_number(pk.get("k0", 0.0), "packet.k0"),
        amplitude=_as_number(pk.get("amplitude", 1.0), "packet.amplitude"),
    )

    tm = raw["time"]
    _require_keys(tm, {"t_final", "cfl", "snapshot_stride"}, {"t_final"}, "time")
    scheme_raw = raw.get("scheme", {})
    _require_keys(scheme_raw, {"derivative", "boundary"}, set(), "scheme")
    derivative = scheme_raw.get("derivative", "central4")
    if derivative not in _SCHEME_ALIASES:
        raise ConfigError(f"unknown derivative scheme {derivative!r}")
    solver = SolverConfig(
        scheme=_SCHEME_ALIASES[derivative],
        boundary=scheme_raw.get("boundary", "sponge"),
        cfl=_as_number(tm.get("cfl", 0.5), "time.cfl"),
        t_final=_as_number(tm["t_final"], "time.t_final"),
        snapshot_stride=_as_int(tm.get("snapshot_stride", 1), "time.snapshot_stride"),
    )

    mode_raw = raw.get("mode", "exact")
    delta = None
    if isinstance(mode_raw, str):
        mode = mode_raw
    elif isinstance(mode_raw, dict):
        _require_keys(mode_raw, {"kind", "delta"}, {"kind"}, "mode")
        mode = mode_raw["kind"]
        if "delta" in mode_raw:
            delta = _as_number(mode_raw["delta"], "mode.delta")
    else:
        raise ConfigError(f"mode must be a string or object, got {mode_raw!r}")
    if mode not in ("exact", "galileo", "ultra"):
        raise ConfigError(f"unknown mode {mode!r}")
    if mode == "ultra" and delta is None:
        raise ConfigError("mode 'ultra' requires a delta parameter")
    if mode != "ultra" and delta is not None:
        raise ConfigError(f"mode {mode!r} takes no delta parameter")

    output_dir = raw.get("output_dir")
    if output_dir is not None and not isinstance(output_dir, str):
        raise ConfigError("output_dir must be a string path")

    # re-validate the physics invariants at load, before any run starts:
    # window geometry, singular-band exclusion and mode preconditions
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        build_generator(window, mode=mode, delta=delta)
    if not (window.x_min < packet.x0 < window.x_max):
        raise ConfigError(
            f"packet center {packet.x0} lies outside window "
            f"[{window.x_min}, {window.x_max}]"
        )

    return SimulationConfig(
        a=a,
        window=window,
        packet=packet,
        solver=solver,
        mode=mode,
        delta=delta,
        output_dir=output_dir,
    )


def _fmt(value: float) -> str:
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(value))


def _write_csv(path, header: str, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(header + "\n")
        for row in rows:
            handle.write(",".join(row) + "\n")


def cmd_coeffs(
    a: Acceleration, u_min: float, u_max: float, samples: int, out_path
) -> list:
    """Scan (u, f, g, D) over [u_min, u_max] and write a CSV.

    Rows where the coefficients are unusable (|D| <= eps or |f| above
    the coefficient cap) carry empty f and g fields and the flag
    'singular' in the regime_flag column.
    """
    if not (1.0 <= u_min < u_max):
        raise ConfigError(f"need 1 <= u_min < u_max, got [{u_min}, {u_max}]")
    if samples < 2:
        raise ConfigError(f"need at least 2 samples, got {samples}")
    u = np.linspace(u_min, u_max, samples)
    s, r = hyperbolic_factors(u)
    D = u + s - u * r
    near_zero = np.abs(D) <= SINGULAR_EPS
    safe_D = np.where(near_zero, 1.0, D)
    f = (u + s) * (1.0 - r / 2.0) / safe_D
    g = r * (s - u) / (2.0 * safe_D)
    flagged = near_zero | (np.abs(f) > COEFFICIENT_CAP)

    rows = []
    for i in range(samples):
        if flagged[i]:
            rows.append([_fmt(u[i]), "", "", _fmt(D[i]), "singular"])
        else:
            rows.append([_fmt(u[i]), _fmt(f[i]), _fmt(g[i]), _fmt(D[i]), ""])
    _write_csv(out_path, "u,f,g,D,regime_flag", rows)
    return rows


def cmd_singularity(a: Acceleration) -> dict:
    """Singular-point report: root location, velocity there, and the
    near-light-speed estimate of the singular velocity for comparison."""
    point = find_singularity(a)
    delta_star = 2.0 * math.exp(-4.0)  # root of log(delta/2) = -4
    return {
        "a": a.a,
        "u_star": point.u_star,
        "x_star": point.x_star,
        "v_star": point.v_star,
        "ultra_delta_star": delta_star,
        "ultra_v_estimate": 1.0 - delta_star,
    }


def _complex_dict(z: complex) -> dict:
    return {"im": z.imag, "re": z.real}


def _report_payload(config: SimulationConfig, result: EvolutionResult) -> dict:
    rows = []
    for row in result.report:
        rows.append(
            {
                "t": row.t,
                "norm_even": row.norm_even,
                "norm_odd": row.norm_odd,
                "norm_inertial": row.norm_inertial,
                "norm_rindler": row.norm_rindler,
                "x_inertial": row.x_inertial,
                "x_rindler": row.x_rindler,
                "corr_identity": _complex_dict(row.corr_identity),
                "corr_position": _complex_dict(row.corr_position),
            }
        )
    return {"config": config.physics_dict(), "rows": rows}


def cmd_evolve(config: SimulationConfig, out_dir=None) -> dict:
    """Run one evolution; write per-snapshot CSVs and the report JSON.

    Returns a small manifest with the written paths and the in-memory
    result.  Reruns with an identical configuration are byte-identical.
    """
    target = out_dir if out_dir is not None else config.output_dir
    if target is None:
        raise ConfigError("no output directory given (config output_dir or out_dir)")
    os.makedirs(target, exist_ok=True)

    result = evolve(
        config.packet,
        config.window,
        config.solver,
        mode=config.mode,
        delta=config.delta,
    )

    grid = config.window.grid()
    x = grid.points()
    snapshot_paths = []
    for index, state in enumerate(result.snapshots):
        inertial = state.even + state.odd
        rindler = state.even - state.odd
        rows = [
            [
                _fmt(x[i]),
                _fmt(state.even[i].real),
                _fmt(state.even[i].imag),
                _fmt(state.odd[i].real),
                _fmt(state.odd[i].imag),
                _fmt(inertial[i].real),
                _fmt(inertial[i].imag),
                _fmt(rindler[i].real),
                _fmt(rindler[i].imag),
            ]
            for i in range(grid.n)
        ]
        path = os.path.join(target, f"snapshot_{index:06d}.csv")
        _write_csv(path, SNAPSHOT_HEADER, rows)
        snapshot_paths.append(path)

    report_path = os.path.join(target, "report.json")
    with open(report_path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(_report_payload(config, result), handle, indent=2, sort_keys=True)
        handle.write("\n")

    return {
        "report_path": report_path,
        "snapshot_paths": snapshot_paths,
        "result": result,
    }


def cmd_limits(regime: str, values, out_path) -> list:
    """Comparison table between exact coefficients and a limit regime.

    galileo: v, f_exact, f_limit, |difference| and the bound v^2.
    ultra: delta, g_exact at the matching position, -f_delta and their
    relative deviation.
    """
    rows = []
    if regime == "galileo":
        for v in values:
            v = float(v)
            limit = galileo_coefficients(v)
            exact = coefficients(limit.u)
            diff = abs(exact.f - limit.f)
            rows.append([_fmt(v), _fmt(exact.f), _fmt(limit.f), _fmt(diff), _fmt(v * v)])
        _write_csv(out_path, "v,f_exact,f_limit,abs_diff,bound_v2", rows)
    elif regime == "ultra":
        for delta in values:
            delta = float(delta)
            fd = ultra_f_delta(delta)
            limit = ultra_coefficients(delta)
            exact = coefficients(limit.u)
            rel = abs(exact.g - (-fd)) / abs(fd)
            rows.append([_fmt(delta), _fmt(exact.g), _fmt(-fd), _fmt(rel)])
        _write_csv(out_path, "delta,g_exact,minus_f_delta,rel_deviation", rows)
    else:
        raise ConfigError(f"unknown limit regime {regime!r}")
    return rows
