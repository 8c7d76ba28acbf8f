"""``eprfw`` command line: geometry dumps, transport checks, Bell sweeps, verify.

Configuration precedence is command-line flags over ``key=value`` config-file
entries over built-in defaults.  Angles are radians unless ``--degrees`` is
given, which converts angle inputs (``--phi`` and phi sweep bounds) on the way
in.  Numbers are serialized with 17 significant digits so that parsing an
emitted file reproduces them exactly; identical configurations produce
byte-identical output.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import __version__, epr, geometry, kinematics, transport, verify
from .geometry import SpacetimePoint, StringGeometry
from .kinematics import CircularWorldline

EXIT_OK, EXIT_CHECK_FAILURE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

BELL_COLUMNS = (
    "alpha", "xi", "Phi", "theta", "norm",
    "chsh_direct", "chsh_closed", "chsh_restored", "restored_residual",
)

SWEEP_VARS = ("alpha", "xi", "phi")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 0.5
    xi: float | None = None
    beta: float | None = None
    rho: float = 2.0
    phi: float = math.pi
    c: float = 1.0
    steps: int | None = None  # per-command defaults: transport 1024, verify 65536
    sweep: tuple[str, float, float, int] | None = None
    out: str | None = None
    format: str = "csv"
    degrees: bool = False

    def resolved_xi(self) -> float:
        if self.xi is not None and self.beta is not None:
            raise UsageError("give exactly one of xi and beta (v/c), not both")
        if self.beta is not None:
            return kinematics.xi_from_beta(self.beta)
        return self.xi if self.xi is not None else 0.0

    def validate(self) -> "RunConfig":
        if not 0.0 < self.alpha <= 1.0:
            raise UsageError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.rho <= 0.0:
            raise UsageError(f"rho: on string axis: rho must be positive, got {self.rho}")
        if self.c <= 0.0:
            raise UsageError(f"c must be positive, got {self.c}")
        if self.steps is not None and self.steps < 1:
            raise UsageError(f"steps must be >= 1, got {self.steps}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format}")
        if self.beta is not None and not 0.0 <= self.beta < 1.0:
            raise UsageError(f"beta (v/c) must lie in [0, 1), got {self.beta}")
        if self.xi is not None and self.xi < 0.0:
            raise UsageError(f"xi must be non-negative, got {self.xi}")
        if self.sweep is not None:
            var, _, _, count = self.sweep
            if var not in SWEEP_VARS:
                raise UsageError(f"sweep variable must be one of {SWEEP_VARS}, got {var!r}")
            if count < 1:
                raise UsageError(f"sweep count must be >= 1, got {count}")
        self.resolved_xi()
        return self


def _parse_sweep(text: str) -> tuple[str, float, float, int]:
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError(f"sweep must be <var>:<start>:<stop>:<count>, got {text!r}")
    var = parts[0].strip().lower()
    try:
        start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise UsageError(f"bad sweep argument {text!r}: {exc}") from None
    return var, start, stop, count


_CONFIG_CASTS = {
    "alpha": float, "xi": float, "beta": float, "rho": float, "phi": float,
    "c": float, "steps": int, "sweep": _parse_sweep, "out": str, "format": str,
}


def read_config_file(path: str) -> dict:
    """Parse a plain ``key=value`` config file; ``#`` starts a comment."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "degrees":
                if value.lower() not in ("true", "false", "1", "0"):
                    raise UsageError(f"{path}:{lineno}: degrees must be true/false")
                values[key] = value.lower() in ("true", "1")
            elif key in _CONFIG_CASTS:
                try:
                    values[key] = _CONFIG_CASTS[key](value)
                except ValueError as exc:
                    raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
            else:
                raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = replace(cfg, **read_config_file(args.config))
    overrides = {}
    for name in ("alpha", "xi", "beta", "rho", "phi", "c", "steps", "out", "format"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "sweep", None) is not None:
        overrides["sweep"] = _parse_sweep(args.sweep)
    if getattr(args, "degrees", False):
        overrides["degrees"] = True
    cfg = replace(cfg, **overrides).validate()
    if cfg.degrees:
        cfg = replace(cfg, phi=math.radians(cfg.phi))
        if cfg.sweep is not None and cfg.sweep[0] == "phi":
            var, start, stop, count = cfg.sweep
            cfg = replace(cfg, sweep=(var, math.radians(start), math.radians(stop), count))
    return cfg


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def sweep_points(cfg: RunConfig) -> list[RunConfig]:
    """Expand the sweep into per-point configs, in deterministic input order."""
    if cfg.sweep is None:
        return [cfg]
    var, start, stop, count = cfg.sweep
    values = np.linspace(start, stop, count)
    points = []
    for value in values:
        if var == "xi":
            points.append(replace(cfg, xi=float(value), beta=None))
        else:
            points.append(replace(cfg, **{var: float(value)}))
    return points


def _write_text(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "alpha": cfg.alpha,
        "xi": cfg.resolved_xi(),
        "rho": cfg.rho,
        "phi": cfg.phi,
        "c": cfg.c,
        "steps": cfg.steps,  # null means per-command default
        "sweep": list(cfg.sweep) if cfg.sweep else None,
        "format": cfg.format,
    }


# ------------------------------------------------------------- subcommands


def cmd_geometry(cfg: RunConfig) -> int:
    geom = StringGeometry(cfg.alpha, c=cfg.c)
    pt = SpacetimePoint(rho=cfg.rho, phi=0.0)
    wl = CircularWorldline(geom, rho=cfg.rho, xi=cfg.resolved_xi())
    accel = kinematics.proper_acceleration(wl)
    lines = [f"geometry at alpha={_fmt(cfg.alpha)} rho={_fmt(cfg.rho)} xi={_fmt(wl.xi)} c={_fmt(cfg.c)}"]
    g = geometry.metric_at(geom, pt)
    lines.append("metric diag(g) = " + " ".join(_fmt(g[i, i]) for i in range(4)))
    tet = geometry.tetrad_at(geom, pt)
    lines.append("tetrad diag(e^a_mu) = " + " ".join(_fmt(tet.e[i, i]) for i in range(4)))
    names = "t rho z phi".split()
    gam = geometry.christoffel_at(geom, pt)
    gam_fd = geometry.christoffel_fd(geom, pt)
    lines.append("christoffel nonzeros (closed | finite-difference oracle):")
    for idx in np.argwhere(np.abs(gam) > 1e-14):
        lam, mu, nu = idx
        lines.append(
            f"  Gamma^{names[lam]}_{{{names[mu]} {names[nu]}}} = {_fmt(gam[lam, mu, nu])} | {_fmt(gam_fd[lam, mu, nu])}"
        )
    forms = {
        "omega": (geometry.spin_connection_at(geom, pt), geometry.spin_connection_fd(geom, pt)),
        "tau": (geometry.fw_connection_at(geom, pt, accel), None),
        "Omega": (geometry.total_connection_at(geom, pt, accel), None),
    }
    for label, (closed, oracle) in forms.items():
        lines.append(f"{label}[mu, a, b] nonzeros" + (" (closed | oracle):" if oracle is not None else ":"))
        found = np.argwhere(np.abs(closed) > 1e-14)
        if found.size == 0:
            lines.append("  all components zero")
        for idx in found:
            mu, a, b = idx
            entry = f"  {label}_{names[mu]}^{a}_{b} = {_fmt(closed[mu, a, b])}"
            if oracle is not None:
                entry += f" | {_fmt(oracle[mu, a, b])}"
            lines.append(entry)
    _write_text(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_transport(cfg: RunConfig) -> int:
    geom = StringGeometry(cfg.alpha, c=cfg.c)
    xi = cfg.resolved_xi()
    steps = cfg.steps if cfg.steps is not None else 1024
    lines = [f"transport at alpha={_fmt(cfg.alpha)} xi={_fmt(xi)} Phi={_fmt(cfg.phi)} steps={steps}"]
    for direction in (+1, -1):
        wl = CircularWorldline(geom, rho=cfg.rho, xi=xi, direction=direction)
        params = transport.transport_params(wl, cfg.phi)
        op = transport.transport_closed_form(params)
        num = transport.transport_numeric(wl, cfg.phi, steps)
        lines.append(f"particle toward phi={'+' if direction > 0 else '-'}Phi:")
        lines.append(f"  eta1={_fmt(params.eta1)} eta2={_fmt(params.eta2)} theta={_fmt(params.theta)}")
        lines.append(f"  Xi closed form rows: [{_fmt(op[0, 0].real)} {_fmt(op[0, 1].real)}] [{_fmt(op[1, 0].real)} {_fmt(op[1, 1].real)}]")
        lines.append(f"  det(Xi) - 1 = {_fmt(abs(np.linalg.det(op) - 1.0))}")
        lines.append(f"  numeric (N={steps}) max deviation = {_fmt(np.abs(num - op).max())}")
        unitarity = np.abs(op.conj().T @ op - np.eye(2)).max()
        lines.append(f"  unitarity deviation |Xi'Xi - I| = {_fmt(unitarity)}")
    lines.append(f"wigner angle theta = {_fmt(transport.wigner_angle(cfg.alpha, xi, cfg.phi))}")
    _write_text(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def bell_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    for point in sweep_points(cfg):
        report = epr.bell_report(point.alpha, point.resolved_xi(), point.phi, c=point.c)
        rows.append(
            {
                "alpha": report.alpha,
                "xi": report.xi,
                "Phi": report.Phi,
                "theta": report.theta,
                "norm": report.norm,
                "chsh_direct": report.chsh_direct,
                "chsh_closed": report.chsh_closed,
                "chsh_restored": report.chsh_restored,
                "restored_residual": report.restored_residual,
            }
        )
    return rows


def render_bell(cfg: RunConfig, rows: list[dict]) -> str:
    if cfg.format == "csv":
        lines = [",".join(BELL_COLUMNS)]
        lines += [",".join(_fmt(row[col]) for col in BELL_COLUMNS) for row in rows]
        return "\n".join(lines) + "\n"
    payload = {
        "version": __version__,
        "config": _config_echo(cfg),
        "rows": rows,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cmd_bell(cfg: RunConfig) -> int:
    _write_text(cfg, render_bell(cfg, bell_rows(cfg)))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, inject_omega_sign_flip: bool = False) -> int:
    steps_dense = cfg.steps if cfg.steps is not None else 65536
    results = verify.run_checks(inject_omega_sign_flip=inject_omega_sign_flip, steps_dense=steps_dense)
    lines = [result.line() for result in results]
    failed = [result for result in results if not result.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    text = "\n".join(lines) + "\n"
    if cfg.format == "json":
        payload = {
            "version": __version__,
            "checks": [
                {
                    "name": result.name,
                    "tolerance": result.tolerance,
                    "observed": result.observed,
                    "passed": result.passed,
                    "note": result.note,
                }
                for result in results
            ],
            "passed": not failed,
        }
        _write_text(cfg, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        if cfg.out is not None:
            sys.stdout.write(text)  # keep the human-readable lines visible
    else:
        _write_text(cfg, text)
    return EXIT_OK if not failed else EXIT_CHECK_FAILURE


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file ('#' comments)")
    common.add_argument("--alpha", type=float, help="deficit factor in (0, 1]")
    common.add_argument("--xi", type=float, help="rapidity (v/c = tanh xi)")
    common.add_argument("--beta", type=float, help="speed ratio v/c in [0, 1)")
    common.add_argument("--rho", type=float, help="orbit radius")
    common.add_argument("--phi", type=float, help="observer azimuth Phi")
    common.add_argument("--c", type=float, help="speed of light")
    common.add_argument("--steps", type=int, help="integrator step count N")
    common.add_argument("--sweep", help="<var>:<start>:<stop>:<count> over alpha|xi|phi")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--degrees", action="store_true", default=None,
                        help="interpret angle inputs in degrees")
    parser = argparse.ArgumentParser(
        prog="eprfw",
        description="EPR spin correlations around a cosmic string via Fermi-Walker transport",
    )
    parser.add_argument("--version", action="version", version=f"eprfw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("geometry", parents=[common], help="dump metric, tetrad, and connection components")
    sub.add_parser("transport", parents=[common], help="dump transport parameters and operators")
    sub.add_parser("bell", parents=[common], help="Bell/CHSH report rows (CSV or JSON)")
    vparser = sub.add_parser("verify", parents=[common], help="run the self-verification battery")
    vparser.add_argument("--inject-omega-sign-flip", action="store_true",
                         help="corrupt the spin connection to prove the checks catch it")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "geometry":
            return cmd_geometry(cfg)
        if args.command == "transport":
            return cmd_transport(cfg)
        if args.command == "bell":
            return cmd_bell(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, inject_omega_sign_flip=args.inject_omega_sign_flip)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ValueError) as exc:
        print(f"eprfw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"eprfw: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
