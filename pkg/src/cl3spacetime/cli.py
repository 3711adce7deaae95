"""Command-line front end.

Usage::

    cl3st boost --speed 0.6 --axis 1,0,0 --field '{"E":[0,1,0],"B":[0,0,0]}'
    cl3st rotate --vector 1,0,0 --theta 90 --deg --axis 0,0,1
    cl3st compton --lambda-i 1 --theta 3.14159265 --m 1 --units natural
    cl3st compton --lambda-i 1 --sweep 18 > sweep.csv
    cl3st wavepacket --sigma 1 --k0 10 --t 0.5 > packet.csv
    cl3st wavepacket --sigma 1 --k0 10 --t 0.5 --fit
    cl3st check --suite all --seed 42

JSON goes to stdout with sorted keys, so identical arguments give identical
bytes.  Exit status is 0 on success, 1 when a check fails and 2 for usage
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import constants

from .algebra import Multivector
from .checks import DEFAULT_TOLERANCES, SUITES, run_suites
from .errors import CliffordError
from .exponential import rapidity_from_speed
from .interactions import compton_solve_multivector, compton_wavelength_shift
from .lorentz import FieldMultivector, aligned_event, boost_event, boost_field, rotate
from .schrodinger import (
    QuadratureSpec,
    WavePacketParams,
    closed_form_values,
    fit_spread,
    phase_rotation_rate,
    quadrature_values,
    spread,
)
from .spacetime import Event

__all__ = ["RunConfig", "UsageError", "load_config", "main", "run"]

UNITS_ENV_VAR = "CL3ST_UNITS"
DEFAULT_SEED = 42
UNIT_SYSTEMS = ("natural", "si")
FORMATS = ("json", "csv")


class UsageError(Exception):
    """Bad command-line input; reported on stderr with exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    units: str = "natural"
    format: str | None = None
    seed: int = DEFAULT_SEED
    tolerances: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.units not in UNIT_SYSTEMS:
            raise UsageError(f"units: expected one of {', '.join(UNIT_SYSTEMS)}, got {self.units!r}")
        if self.format is not None and self.format not in FORMATS:
            raise UsageError(f"format: expected one of {', '.join(FORMATS)}, got {self.format!r}")
        for name in self.tolerances:
            if name not in DEFAULT_TOLERANCES:
                raise UsageError(f"tolerance.{name}: unknown check name")

    @property
    def c(self) -> float:
        return constants.c if self.units == "si" else 1.0

    @property
    def h(self) -> float:
        return constants.h if self.units == "si" else 2 * math.pi

    @property
    def hbar(self) -> float:
        return constants.hbar if self.units == "si" else 1.0

    @property
    def electron_mass(self) -> float:
        return constants.m_e if self.units == "si" else 1.0


def _parse_config_value(key: str, value: str, where: str):
    if key == "seed":
        try:
            return int(value)
        except ValueError:
            raise UsageError(f"{where}: seed must be an integer, got {value!r}") from None
    if key.startswith("tolerance."):
        try:
            tol = float(value)
        except ValueError:
            raise UsageError(f"{where}: {key} must be a number, got {value!r}") from None
        if not (math.isfinite(tol) and tol >= 0):
            raise UsageError(f"{where}: {key} must be finite and non-negative")
        return tol
    return value


def load_config(path: str | os.PathLike) -> dict:
    """Read a ``key = value`` file; ``#`` starts a comment.

    Accepted keys are ``units``, ``format``, ``seed`` and ``tolerance.<check>``.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"config: cannot read {path}: {exc.strerror}") from None
    out: dict = {"tolerances": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path}:{lineno}"
        if "=" not in line:
            raise UsageError(f"{where}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("tolerance."):
            name = key[len("tolerance."):]
            if name not in DEFAULT_TOLERANCES:
                raise UsageError(f"{where}: unknown check name in key {key!r}")
            out["tolerances"][name] = _parse_config_value(key, value, where)
        elif key in ("units", "format", "seed"):
            out[key] = _parse_config_value(key, value, where)
        else:
            raise UsageError(f"{where}: unknown config key {key!r}")
    return out


def _triple(text: str, name: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--{name}: expected three comma-separated numbers, got {text!r}")
    try:
        values = np.array([float(p) for p in parts])
    except ValueError:
        raise UsageError(f"--{name}: expected three comma-separated numbers, got {text!r}") from None
    if not np.all(np.isfinite(values)):
        raise UsageError(f"--{name}: components must be finite")
    return values


def _pair(text: str, name: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        a, b = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--{name}: expected two comma-separated numbers, got {text!r}") from None
    return a, b


def _axis(text: str, name: str = "axis") -> np.ndarray:
    a = _triple(text, name)
    n = float(np.linalg.norm(a))
    if n == 0.0:
        raise UsageError(f"--{name}: axis must be non-zero")
    return a / n


def _json_arg(text: str, name: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"--{name}: cannot read {text[1:]}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{name}: malformed JSON ({exc.msg} at position {exc.pos})") from None


def _angle(value: float, deg: bool) -> float:
    return math.radians(value) if deg else value


def _vector_list(v) -> list[float]:
    return [float(a) for a in v]


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _dump_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def _multivector_csv(M: Multivector) -> str:
    return _dump_csv(["s", "e1", "e2", "e3", "e23", "e31", "e12", "e123"], [M.to_csv_row()])


def cmd_boost(args, cfg: RunConfig) -> tuple[str, int]:
    if args.speed is not None:
        if not 0.0 <= args.speed < 1.0:
            raise UsageError(f"--speed: must satisfy 0 <= v/c < 1, got {args.speed!r}")
        phi = rapidity_from_speed(args.speed)
    else:
        phi = args.phi
    if not math.isfinite(phi):
        raise UsageError("--phi: rapidity must be finite")
    axis = _axis(args.axis)
    report = {"command": "boost", "phi": phi, "speed": math.tanh(phi), "axis": _vector_list(axis), "units": cfg.units}
    if args.field is not None:
        data = _json_arg(args.field, "field")
        if isinstance(data, dict) and "c" not in data:
            data = {**data, "c": cfg.c}
        try:
            F = FieldMultivector.from_dict(data)
        except CliffordError as exc:
            raise UsageError(f"--field: {exc}") from None
        out = boost_field(F, phi, axis)
        report.update(input={"field": F.to_dict()}, output={"field": out.to_dict()})
        result = out.as_multivector()
    else:
        data = _json_arg(args.event, "event")
        if isinstance(data, dict) and "c" not in data:
            data = {**data, "c": cfg.c}
        try:
            if isinstance(data, dict) and isinstance(data.get("t"), (int, float)) and not isinstance(data["t"], bool):
                # A scalar time is laid along the direction the boost requires.
                extra = set(data) - {"x", "t", "c"}
                if extra:
                    raise UsageError(f"--event: unknown event field(s): {sorted(extra)}")
                X = aligned_event(Event.from_dict({**data, "t": [0.0, 0.0, 0.0]}).x, float(data["t"]), axis, data["c"])
            else:
                X = Event.from_dict(data)
            out = boost_event(X, phi, axis)
        except CliffordError as exc:
            raise UsageError(f"--event: {exc}") from None
        report.update(input={"event": X.to_dict()}, output={"event": out.to_dict()})
        result = out.as_multivector()
    if cfg.format == "csv":
        return _multivector_csv(result), 0
    return _dump_json(report), 0


def cmd_rotate(args, cfg: RunConfig) -> tuple[str, int]:
    v = _triple(args.vector, "vector")
    axis = _axis(args.axis)
    theta = _angle(args.theta, args.deg)
    out = rotate(v, theta, axis)
    if cfg.format == "csv":
        return _multivector_csv(out), 0
    report = {
        "command": "rotate",
        "vector": _vector_list(v),
        "axis": _vector_list(axis),
        "theta": theta,
        "result": _vector_list(out.v),
    }
    return _dump_json(report), 0


def _compton_row(lambda_i: float, theta: float, m: float, cfg: RunConfig) -> dict:
    lambda_f, ledger = compton_solve_multivector(lambda_i, theta, m, cfg.h, cfg.c)
    return {
        "theta": theta,
        "lambda_f": lambda_f,
        "shift": lambda_f - lambda_i,
        "shift_formula": compton_wavelength_shift(lambda_i, theta, m, cfg.h, cfg.c),
        "ledger_residual_norm": ledger.residual().norm(),
    }


COMPTON_COLUMNS = ("theta", "lambda_f", "shift", "shift_formula", "ledger_residual_norm")


def cmd_compton(args, cfg: RunConfig) -> tuple[str, int]:
    m = cfg.electron_mass if args.m is None else args.m
    if args.sweep is not None:
        if args.sweep < 1:
            raise UsageError("--sweep: number of angles must be at least 1")
        rows = []
        for k in range(1, args.sweep + 1):
            theta = math.pi * k / args.sweep
            row = _compton_row(args.lambda_i, theta, m, cfg)
            if args.deg:
                row["theta"] = math.degrees(theta)
            rows.append([row[c] for c in COMPTON_COLUMNS])
        return _dump_csv(COMPTON_COLUMNS, rows), 0
    if args.theta is None:
        raise UsageError("--theta: required unless --sweep is given")
    theta = _angle(args.theta, args.deg)
    row = _compton_row(args.lambda_i, theta, m, cfg)
    if cfg.format == "csv":
        return _dump_csv(COMPTON_COLUMNS, [[row[c] for c in COMPTON_COLUMNS]]), 0
    row.update(command="compton", lambda_i=args.lambda_i, m=m, h=cfg.h, c=cfg.c, units=cfg.units)
    return _dump_json(row), 0


WAVEPACKET_COLUMNS = ("x", "re", "im", "modulus", "analytic_modulus")


def cmd_wavepacket(args, cfg: RunConfig) -> tuple[str, int]:
    m = cfg.electron_mass if args.m is None else args.m
    hbar = cfg.hbar if args.hbar is None else args.hbar
    params = WavePacketParams(args.sigma, args.k0, m, hbar)
    quad = QuadratureSpec(args.method, args.nodes)
    if args.fit:
        if args.window is not None:
            window = _pair(args.window, "window")
        else:
            # Start well after the arctan transient, whose time scale is m / (hbar sigma^2).
            tau = m / (hbar * args.sigma**2)
            window = (10 * tau, 20 * tau)
        report = {
            "command": "wavepacket",
            "t": args.t,
            "spread_fit": fit_spread(params, args.t, quad=quad),
            "spread_formula": spread(params, args.t),
            "phase_rate_fit": phase_rotation_rate(params, window),
            "phase_window": list(window),
            "w0": params.w0,
        }
        return _dump_json(report), 0
    if cfg.format == "json":
        raise UsageError("--format: wavepacket samples are written as CSV; use --fit for JSON")
    if args.samples < 2:
        raise UsageError("--samples: need at least 2 sample points")
    if args.x_range is not None:
        lo, hi = _pair(args.x_range, "x-range")
        if not hi > lo:
            raise UsageError("--x-range: upper end must exceed lower end")
    else:
        centre, half = params.group_velocity * args.t, 4 * spread(params, args.t)
        lo, hi = centre - half, centre + half
    x = np.linspace(lo, hi, args.samples)
    psi = quadrature_values(params, x, args.t, quad)
    exact = closed_form_values(params, x, args.t)
    rows = zip(x, psi.real, psi.imag, np.abs(psi), np.abs(exact))
    return _dump_csv(WAVEPACKET_COLUMNS, rows), 0


def cmd_check(args, cfg: RunConfig) -> tuple[str, int]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    tolerances = {**DEFAULT_TOLERANCES, **cfg.tolerances}
    results = run_suites(names, cfg.seed, tolerances)
    passed = all(r.passed for r in results)
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check_name", "residual", "tolerance", "pass"])
        for r in results:
            writer.writerow([r.check_name, repr(float(r.residual)), repr(float(r.tolerance)), str(r.passed).lower()])
        text = buf.getvalue()
    else:
        report = {
            "command": "check",
            "seed": cfg.seed,
            "suites": names,
            "results": [r.to_dict() for r in results],
            "pass": passed,
        }
        text = _dump_json(report)
    return text, 0 if passed else 1


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="key = value file with units, format, seed and tolerance.<check> entries")
    g.add_argument("--units", choices=UNIT_SYSTEMS,
                   help=f"natural (c = hbar = 1) or si; default from ${UNITS_ENV_VAR}, else natural")
    g.add_argument("--format", choices=FORMATS, help="output format where a command offers both")
    g.add_argument("--seed", type=int, help=f"seed for randomised suites (default {DEFAULT_SEED})")
    g.add_argument("--tolerance", action="append", default=[], metavar="CHECK=VALUE",
                   help="override one check tolerance; may be repeated")
    g.add_argument("-o", "--output", help="write to this file instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="cl3st", description="Spacetime calculations in the Clifford algebra Cl(3,0).")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("boost", parents=[common], help="boost an electromagnetic field or an event")
    rate = p.add_mutually_exclusive_group(required=True)
    rate.add_argument("--phi", type=float, help="rapidity")
    rate.add_argument("--speed", type=float, help="frame speed as a fraction of c")
    p.add_argument("--axis", required=True, help="boost direction x,y,z (normalised)")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--field", help='field JSON {"E":[..],"B":[..],"c":..}, inline or @file')
    what.add_argument("--event", help='event JSON {"x":[..],"t":[..] or number,"c":..}, inline or @file')
    p.set_defaults(handler=cmd_boost)

    p = sub.add_parser("rotate", parents=[common], help="rotate a vector about an axis")
    p.add_argument("--vector", required=True, help="x,y,z")
    p.add_argument("--theta", type=float, required=True, help="angle, anticlockwise about the axis")
    p.add_argument("--axis", required=True, help="rotation axis x,y,z (normalised)")
    p.add_argument("--deg", action="store_true", help="angle is in degrees")
    p.set_defaults(handler=cmd_rotate)

    p = sub.add_parser("compton", parents=[common], help="Compton scattering off a resting electron")
    p.add_argument("--lambda-i", type=float, required=True, help="incident wavelength")
    p.add_argument("--theta", type=float, help="scattering angle")
    p.add_argument("--deg", action="store_true", help="angles are in degrees")
    p.add_argument("--m", type=float, help="target mass (default: electron mass, 1 in natural units)")
    p.add_argument("--sweep", type=int, metavar="N", help="emit CSV for N angles evenly spaced in (0, pi]")
    p.set_defaults(handler=cmd_compton)

    p = sub.add_parser("wavepacket", parents=[common], help="sample or fit a free Gaussian wave packet")
    p.add_argument("--sigma", type=float, required=True, help="momentum-space width")
    p.add_argument("--k0", type=float, required=True, help="central wave number")
    p.add_argument("--m", type=float, help="particle mass (default: electron mass, 1 in natural units)")
    p.add_argument("--hbar", type=float, help="reduced Planck constant (default from --units)")
    p.add_argument("--t", type=float, default=0.0, help="time (default 0)")
    p.add_argument("--x-range", help="lo,hi (default: 4 spreads either side of the centre)")
    p.add_argument("--samples", type=int, default=201, help="number of x samples (default 201)")
    p.add_argument("--method", choices=("auto", "hermite", "simpson"), default="auto", help="quadrature rule")
    p.add_argument("--nodes", type=int, default=200, help="quadrature nodes (default 200)")
    p.add_argument("--fit", action="store_true", help="emit fitted spread and phase rate as JSON")
    p.add_argument("--window", help="t0,t1 time window for the phase-rate fit")
    p.set_defaults(handler=cmd_wavepacket)

    p = sub.add_parser("check", parents=[common], help="run seeded numerical self-checks")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.set_defaults(handler=cmd_check)
    return parser


def _resolve_config(args) -> RunConfig:
    settings: dict = {"tolerances": {}}
    env_units = os.environ.get(UNITS_ENV_VAR)
    if env_units:
        if env_units not in UNIT_SYSTEMS:
            raise UsageError(f"${UNITS_ENV_VAR}: expected one of {', '.join(UNIT_SYSTEMS)}, got {env_units!r}")
        settings["units"] = env_units
    if args.config:
        settings.update(load_config(args.config))
    for key in ("units", "format", "seed"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    tolerances = dict(settings.pop("tolerances"))
    for item in args.tolerance:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tolerance: expected CHECK=VALUE, got {item!r}")
        tolerances[name.strip()] = _parse_config_value("tolerance." + name.strip(), value.strip(), "--tolerance")
    return replace(RunConfig(**settings), tolerances=tolerances)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve_config(args)
        text, status = args.handler(args, cfg)
    except UsageError as exc:
        print(f"cl3st {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (CliffordError, ValueError) as exc:
        print(f"cl3st {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())
