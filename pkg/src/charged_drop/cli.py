"""Command-line surface.

Subcommands: ``two solve``, ``two sweep``, ``two boundary``,
``charges optimize``, ``charges converge``, ``regime map``, ``nondim``.
Flags override the optional TOML config file; CHARGED_DROP_OUT overrides the
output directory.  Diagnostics go to stderr, data to stdout and files.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover - py310 path
    import tomli as tomllib

from . import charges, regime, svg, two_charge, unduloid
from .errors import ChargedDropError, DomainError

__all__ = ["PhysicalParams", "nondimensionalize", "run", "main"]

_PI = math.pi


@dataclass(frozen=True)
class PhysicalParams:
    """Material lengths: solvation radius, capillary length, Bjerrum length."""

    r0: float
    r_sigma: float
    rB: float

    def __post_init__(self):
        if min(self.r0, self.r_sigma, self.rB) <= 0.0:
            raise DomainError("all physical lengths must be positive")


def nondimensionalize(p: PhysicalParams) -> dict:
    """rho = r0/r_sigma, lambda = rB/r_sigma, gamma = lambda/rho^3."""
    rho = p.r0 / p.r_sigma
    lam = p.rB / p.r_sigma
    return {"rho": rho, "lambda": lam, "gamma": lam / rho ** 3}


# -- plumbing -----------------------------------------------------------------

def _parse_floats(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise DomainError(f"bad float list {text!r}") from exc
    if not values:
        raise DomainError(f"empty list {text!r}")
    return values


def _parse_ints(text: str) -> list[int]:
    return [int(round(v)) for v in _parse_floats(text)]


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _pick(flag_value, config: dict, section: str, key: str, default):
    """Flag > config file > default."""
    if flag_value is not None:
        return flag_value
    if section in config and key in config[section]:
        return config[section][key]
    return default


def _out_dir(args, config) -> Path:
    env = os.environ.get("CHARGED_DROP_OUT")
    chosen = env or _pick(args.out_dir, config, "output", "out_dir", ".")
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise DomainError(f"out_dir {path} is not writable")
    return path


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path: Path, fieldnames, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_fmt_cell(row[k]) for k in fieldnames])


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _emit_rows(rows, fieldnames, fmt: str, out: Path, stem: str) -> Path:
    if fmt == "json":
        path = out / f"{stem}.json"
        _write_json(path, rows)
    else:
        path = out / f"{stem}.csv"
        _write_csv(path, fieldnames, rows)
    print(f"wrote {path}", file=sys.stderr)
    return path


def _parallel_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- subcommand handlers -------------------------------------------------------

def _cmd_two_solve(args, config) -> int:
    eps = _pick(args.eps, config, "two", "eps", None)
    gamma = _pick(args.gamma, config, "two", "gamma", None)
    if eps is None or gamma is None:
        raise DomainError("two solve needs --eps and --gamma")
    polish = not args.no_polish
    sol = two_charge.minimize(float(eps), float(gamma), polish=polish)
    print(json.dumps(sol.as_record(), indent=2))
    wants_out = (args.out_dir is not None or "output" in config
                 or os.environ.get("CHARGED_DROP_OUT"))
    if args.plot == "svg" or wants_out:
        out = _out_dir(args, config)
        a, _t0 = unduloid.contact_params(sol.c_star, sol.h_star, sol.eps)
        rows = unduloid.sample_profile(a, sol.c_star, 400)
        csv_path = out / "two_solve_profile.csv"
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t", "x", "z"])
            for row in rows:
                writer.writerow([f"{v!r}" for v in row])
        print(f"wrote {csv_path}", file=sys.stderr)
        if args.plot == "svg":
            svg.emit_plot("profile", rows, out / "two_solve_profile.svg")
            print(f"wrote {out / 'two_solve_profile.svg'}", file=sys.stderr)
    return 0


def _cmd_two_sweep(args, config) -> int:
    eps_list = _pick(args.eps_list and _parse_floats(args.eps_list), config, "two", "eps_list", None)
    gamma_list = _pick(args.gamma_list and _parse_floats(args.gamma_list), config, "two", "gamma_list", None)
    if not eps_list or not gamma_list:
        raise DomainError("two sweep needs --eps-list and --gamma-list")
    polish = bool(args.polish)
    grid = [(float(e), float(g)) for e in sorted(eps_list) for g in sorted(gamma_list)]
    records = _parallel_map(
        lambda pair: two_charge.minimize(pair[0], pair[1], polish=polish).as_record(),
        grid, args.threads)
    out = _out_dir(args, config)
    fields = list(records[0].keys())
    _emit_rows(records, fields, args.format, out, "two_sweep")
    return 0


def _cmd_two_boundary(args, config) -> int:
    eps_list = _pick(args.eps_list and _parse_floats(args.eps_list), config, "two", "eps_list", None)
    if not eps_list:
        raise DomainError("two boundary needs --eps-list")
    rel_width = float(_pick(args.rel_width, config, "two", "rel_width", 1e-6))
    rows = regime.two_charge_boundary_curve([float(e) for e in eps_list],
                                            rel_width=rel_width)
    records = [{"eps": e, "gamma_c": g, "gamma_c_eps": ge} for e, g, ge in rows]
    out = _out_dir(args, config)
    _emit_rows(records, ["eps", "gamma_c", "gamma_c_eps"], args.format, out, "two_boundary")
    if args.plot == "svg":
        svg.emit_plot("boundary_curve", rows, out / "two_boundary.svg")
        print(f"wrote {out / 'two_boundary.svg'}", file=sys.stderr)
    return 0


def _charges_opts(args, config) -> charges.OptimizeOptions:
    return charges.OptimizeOptions(
        restarts=int(_pick(args.restarts, config, "charges", "restarts", 8)),
        tol=float(_pick(args.tol, config, "charges", "tol", 1e-9)),
        max_iter=int(_pick(args.max_iter, config, "charges", "max_iter", 100_000)),
    )


def _cmd_charges_optimize(args, config) -> int:
    n = _pick(args.n, config, "charges", "n", None)
    if n is None:
        raise DomainError("charges optimize needs --n")
    eps = float(_pick(args.eps, config, "charges", "eps", 1e-3))
    radius = float(_pick(args.R, config, "charges", "R", 1.0))
    seed = int(_pick(args.seed, config, "charges", "seed", 0))
    cfg = charges.optimize(int(n), eps, radius, seed, _charges_opts(args, config))
    record = charges.config_record(cfg)
    print(json.dumps(record, indent=2))
    if args.out_dir is not None or "output" in config or os.environ.get("CHARGED_DROP_OUT"):
        out = _out_dir(args, config)
        _write_json(out / "charges_optimize.json", record)
        print(f"wrote {out / 'charges_optimize.json'}", file=sys.stderr)
    return 0


def _cmd_charges_converge(args, config) -> int:
    n_list = _pick(args.n_list and _parse_ints(args.n_list), config, "charges", "n_list", None)
    if not n_list:
        raise DomainError("charges converge needs --n-list")
    eps = float(_pick(args.eps, config, "charges", "eps", 1e-3))
    radius = float(_pick(args.R, config, "charges", "R", 1.0))
    seed = int(_pick(args.seed, config, "charges", "seed", 0))
    shell_delta = float(_pick(args.shell_delta, config, "charges", "shell_delta", 1e-6))
    opts = _charges_opts(args, config)

    def one(n: int) -> dict:
        cfg = charges.optimize(n, eps, radius, seed, opts)
        stats = charges.uniformity_stats(cfg, shell_delta)
        return {"n": n, **stats}

    records = _parallel_map(one, sorted(n_list), args.threads)
    out = _out_dir(args, config)
    _emit_rows(records, ["n", "shell_fraction", "riesz_gap", "cap_discrepancy"],
               args.format, out, "charges_converge")
    if args.plot == "svg":
        svg.emit_plot("uniformity", records, out / "charges_converge.svg")
        print(f"wrote {out / 'charges_converge.svg'}", file=sys.stderr)
    return 0


def _cmd_regime_map(args, config) -> int:
    eps_list = _pick(args.eps_list and _parse_floats(args.eps_list), config, "regime", "eps", None)
    gamma_list = _pick(args.gamma_list and _parse_floats(args.gamma_list), config, "regime", "gamma", None)
    n_list = _pick(args.n_list and _parse_ints(args.n_list), config, "regime", "n", None)
    if not (eps_list and gamma_list and n_list):
        raise DomainError("regime map needs --eps-list, --gamma-list and --n-list")
    constants = regime.ClassifierConstants(
        C_threshold=float(_pick(args.c_threshold, config, "regime", "C_threshold", 32.0 * _PI)),
        gamma0=float(_pick(args.gamma0, config, "regime", "gamma0", 64.0 * _PI)),
        delta0=float(_pick(args.delta0, config, "regime", "delta0", 1e-2)),
    )
    cells = regime.sweep(eps_list, gamma_list, n_list, constants)
    records = [{
        "eps": cell.eps, "gamma": cell.gamma, "n": cell.n, "label": cell.label.value,
        "split_energy": cell.split_energy, "classical_estimate": cell.classical_estimate,
    } for cell in cells]
    out = _out_dir(args, config)
    _emit_rows(records, list(regime.REGIME_CSV_FIELDS), args.format, out, "regime_map")
    return 0


def _cmd_nondim(args, config) -> int:
    r0 = _pick(args.r0, config, "nondim", "r0", None)
    r_sigma = _pick(args.rsigma, config, "nondim", "rsigma", None)
    rb = _pick(args.rb, config, "nondim", "rb", None)
    if r0 is None or r_sigma is None or rb is None:
        raise DomainError("nondim needs --r0, --rsigma and --rb")
    print(json.dumps(nondimensionalize(PhysicalParams(float(r0), float(r_sigma), float(rb)))))
    return 0


# -- parser -------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="TOML config file; flags override it")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--plot", choices=("none", "svg"), default="none")
    parser.add_argument("--out-dir", dest="out_dir", default=None)
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="sweep parallelism cap")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charged-drop",
        description="Discrete-charge drop solver: two-charge unduloid minimizers, "
                    "many-charge optimization, existence phase diagrams.")
    top = parser.add_subparsers(dest="command", required=True)

    two = top.add_parser("two", help="two-charge exact solver")
    two_sub = two.add_subparsers(dest="subcommand", required=True)

    p = two_sub.add_parser("solve", help="minimize at one (eps, gamma)")
    p.add_argument("--eps", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--no-polish", action="store_true",
                   help="skip the high-precision relocalization of h*")
    _add_common(p)
    p.set_defaults(handler=_cmd_two_solve)

    p = two_sub.add_parser("sweep", help="grid of (eps, gamma) solves")
    p.add_argument("--eps-list")
    p.add_argument("--gamma-list")
    p.add_argument("--polish", action="store_true")
    _add_common(p)
    p.set_defaults(handler=_cmd_two_sweep)

    p = two_sub.add_parser("boundary", help="existence threshold gamma_c(eps)")
    p.add_argument("--eps-list")
    p.add_argument("--rel-width", dest="rel_width", type=float,
                   help="bisection relative width (default 1e-6)")
    _add_common(p)
    p.set_defaults(handler=_cmd_two_boundary)

    chg = top.add_parser("charges", help="many-charge optimization")
    chg_sub = chg.add_subparsers(dest="subcommand", required=True)

    p = chg_sub.add_parser("optimize", help="minimize the Coulomb configuration")
    p.add_argument("--n", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--R", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iter", dest="max_iter", type=int)
    _add_common(p)
    p.set_defaults(handler=_cmd_charges_optimize)

    p = chg_sub.add_parser("converge", help="uniformity diagnostics over n")
    p.add_argument("--n-list")
    p.add_argument("--eps", type=float)
    p.add_argument("--R", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iter", dest="max_iter", type=int)
    p.add_argument("--shell-delta", dest="shell_delta", type=float)
    _add_common(p)
    p.set_defaults(handler=_cmd_charges_converge)

    reg = top.add_parser("regime", help="phase-diagram classification")
    reg_sub = reg.add_subparsers(dest="subcommand", required=True)

    p = reg_sub.add_parser("map", help="classify a (eps, gamma, n) grid")
    p.add_argument("--eps-list")
    p.add_argument("--gamma-list")
    p.add_argument("--n-list")
    p.add_argument("--c-threshold", dest="c_threshold", type=float)
    p.add_argument("--gamma0", type=float)
    p.add_argument("--delta0", type=float)
    _add_common(p)
    p.set_defaults(handler=_cmd_regime_map)

    p = top.add_parser("nondim", help="physical lengths to (rho, lambda, gamma)")
    p.add_argument("--r0", type=float)
    p.add_argument("--rsigma", type=float)
    p.add_argument("--rb", type=float)
    _add_common(p)
    p.set_defaults(handler=_cmd_nondim)

    return parser


def run(argv) -> int:
    """Parse and execute; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _load_config(args.config)
        return args.handler(args, config)
    except ChargedDropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main() -> None:  # console entry point
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
