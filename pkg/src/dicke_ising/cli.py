"""Command-line front end.

Subcommands: ising-spectrum, polaritons, saturation, fn-correction, oracle.
Common flags: --config (INI file, sections chain/cavity/sweep/output/oracle),
--out, --format csv|json, --threads.  CLI flags override config values.

Exit codes: 0 ok, 2 validation error, 3 domain error, 4 oracle hard-check
failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, ValidationError
from .sweep import (FIGURE_RECIPES, fn_correction_table, ising_spectrum_table,
                    load_config, oracle_report, parse_values, polariton_table,
                    resolve, saturation_table, write_table)


def _add_common(parser):
    parser.add_argument("--config", help="INI config file")
    parser.add_argument("--out", help="output path (default stdout name per command)")
    parser.add_argument("--format", choices=("csv", "json"), dest="fmt")
    parser.add_argument("--threads", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicke-ising",
        description="Spectra of the transverse-field dipole chain and its cavity polaritons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ising-spectrum", help="matter-sector dispersions")
    _add_common(p)
    p.add_argument("--n-dipoles", dest="n_dipoles", help="value, list, or a:b:n sweep")
    p.add_argument("--omega0", type=float)
    p.add_argument("--eta", help="value, list, or a:b:n sweep")
    p.add_argument("--modes", help="'all', 'first:j', or comma list of mode indices")
    p.add_argument("--no-numeric", action="store_true",
                   help="skip the self-consistent HP column")
    p.add_argument("--figure", choices=("fig1", "fig2a", "fig2b"))

    p = sub.add_parser("polaritons", help="polariton branches over the zone")
    _add_common(p)
    p.add_argument("--eta", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--n-dipoles", dest="n_dipoles", type=int,
                   help="finite N adds the full light-matter columns; 0 = thermodynamic")
    p.add_argument("--k-points", dest="k_points", type=int)
    p.add_argument("--figure", choices=("fig4", "fig5"))

    p = sub.add_parser("saturation", help="coupling saturation vs |eta|")
    _add_common(p)
    p.add_argument("--eta", help="value, list, or a:b:n sweep (within [0, 0.25])")
    p.add_argument("--n-dipoles", dest="n_dipoles", type=int)
    p.add_argument("--no-numeric", action="store_true")
    p.add_argument("--figure", choices=("fig6",))

    p = sub.add_parser("fn-correction", help="finite-size retardation correction")
    _add_common(p)
    p.add_argument("--n-dipoles", dest="n_dipoles", help="list of N values")
    p.add_argument("--delta", help="list of delta values")

    p = sub.add_parser("oracle", help="dense-diagonalization comparison report")
    _add_common(p)
    p.add_argument("--n-dipoles", dest="n_dipoles", type=int)
    p.add_argument("--omega0", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--photon-cutoff", dest="photon_cutoff", type=int)
    p.add_argument("--checks", help="comma list: spin, dicke, all")
    return parser


def _cmd_ising_spectrum(args, config) -> int:
    flags = vars(args)
    recipe = FIGURE_RECIPES.get(args.figure, {}) if args.figure else {}
    if "eta_start" in recipe:
        eta_default = f"{recipe['eta_start']}:{recipe['eta_stop']}:{recipe['eta_count']}"
    else:
        eta_default = str(recipe.get("eta", 0.1))
    if "n_start" in recipe:
        n_default = f"{recipe['n_start']}:{recipe['n_stop']}:{recipe['n_count']}"
    else:
        n_default = str(recipe.get("n_dipoles", 100))
    eta_spec = str(resolve(flags, config, "chain.eta", eta_default))
    n_spec = str(resolve(flags, config, "chain.n_dipoles", n_default))
    omega0 = float(resolve(flags, config, "chain.omega0", 1.0))
    modes = str(resolve(flags, config, "chain.modes", recipe.get("modes", "all")))
    threads = int(resolve(flags, config, "sweep.threads", 1))
    numeric = not args.no_numeric
    n_values = [int(round(v)) for v in parse_values(n_spec)]
    eta_values = parse_values(eta_spec)
    columns, rows = ising_spectrum_table(n_values, omega0, eta_values, modes,
                                         include_numeric=numeric, threads=threads)
    meta = {"command": "ising-spectrum", "chain.eta": eta_spec,
            "chain.n_dipoles": n_spec, "chain.omega0": omega0,
            "chain.modes": modes, "numeric": numeric, "threads": threads}
    _write(args, config, columns, rows, meta, default_name="ising_spectrum")
    return 0


def _cmd_polaritons(args, config) -> int:
    flags = vars(args)
    recipe = FIGURE_RECIPES.get(args.figure, {}) if args.figure else {}
    eta = float(resolve(flags, config, "chain.eta", recipe.get("eta", -0.05)))
    n_dip = int(resolve(flags, config, "chain.n_dipoles", 0))
    omega0 = float(resolve(flags, config, "chain.omega0", 1.0))
    k_points = int(resolve(flags, config, "sweep.k_points", 400))
    threads = int(resolve(flags, config, "sweep.threads", 1))
    if "panels" in recipe and args.delta is None and args.nu is None:
        panels = recipe["panels"]
    else:
        delta = float(resolve(flags, config, "cavity.delta", 4.0))
        nu = float(resolve(flags, config, "cavity.nu", 0.2))
        panels = [(delta, nu)]
    columns, rows = polariton_table(eta, panels, omega0=omega0, n_dipoles=n_dip,
                                    k_points=k_points, threads=threads)
    meta = {"command": "polaritons", "chain.eta": eta, "chain.n_dipoles": n_dip,
            "chain.omega0": omega0, "sweep.k_points": k_points,
            "panels": ";".join(f"delta={d},nu={v}" for d, v in panels),
            "threads": threads}
    if args.figure:
        meta["figure"] = args.figure
    _write(args, config, columns, rows, meta, default_name="polaritons")
    return 0


def _cmd_saturation(args, config) -> int:
    flags = vars(args)
    recipe = FIGURE_RECIPES["fig6"] if args.figure == "fig6" else {}
    default_spec = (f"{recipe['eta_start']}:{recipe['eta_stop']}:{recipe['eta_count']}"
                    if recipe else "0.0:0.2:41")
    eta_spec = str(resolve(flags, config, "sweep.eta", default_spec))
    n_dip = int(resolve(flags, config, "chain.n_dipoles", 200))
    threads = int(resolve(flags, config, "sweep.threads", 1))
    eta_values = parse_values(eta_spec)
    if any(not 0 <= v <= 0.25 for v in eta_values):
        raise ValidationError("saturation eta range must lie within [0, 0.25]")
    columns, rows = saturation_table(eta_values, include_numeric=not args.no_numeric,
                                     n_dipoles=n_dip, threads=threads)
    meta = {"command": "saturation", "sweep.eta": eta_spec,
            "chain.n_dipoles": n_dip, "numeric": not args.no_numeric,
            "threads": threads}
    _write(args, config, columns, rows, meta, default_name="saturation")
    return 0


def _cmd_fn_correction(args, config) -> int:
    flags = vars(args)
    n_spec = str(resolve(flags, config, "sweep.n_dipoles", "100,1000,10000,100000"))
    d_spec = str(resolve(flags, config, "sweep.delta", "4,16"))
    threads = int(resolve(flags, config, "sweep.threads", 1))
    n_values = [int(round(v)) for v in parse_values(n_spec)]
    delta_values = parse_values(d_spec)
    columns, rows = fn_correction_table(n_values, delta_values, threads=threads)
    meta = {"command": "fn-correction", "sweep.n_dipoles": n_spec,
            "sweep.delta": d_spec, "threads": threads}
    _write(args, config, columns, rows, meta, default_name="fn_correction")
    return 0


def _cmd_oracle(args, config) -> int:
    flags = vars(args)
    fmt = args.fmt or config.get("output.format", "json")
    if fmt != "json":
        raise ValidationError("oracle reports are JSON only")
    report = oracle_report(
        n_dipoles=int(resolve(flags, config, "oracle.n_dipoles", 10)),
        omega0=float(resolve(flags, config, "chain.omega0", 1.0)),
        eta=float(resolve(flags, config, "chain.eta", 0.15)),
        nu=float(resolve(flags, config, "cavity.nu", 0.1)),
        photon_cutoff=int(resolve(flags, config, "oracle.photon_cutoff", 8)),
        checks=str(resolve(flags, config, "oracle.checks", "spin")),
        hard_tolerance=float(resolve(flags, config, "oracle.hard_tolerance", 1e-10)),
    )
    out = args.out or "oracle_report.json"
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {out} ({len(report['checks'])} checks, "
          f"{report['hard_failures']} hard failures)")
    return 4 if report["hard_failures"] else 0


def _write(args, config, columns, rows, meta, default_name: str):
    fmt = args.fmt or config.get("output.format", "csv")
    out = args.out or config.get("output.path", f"{default_name}.{fmt}")
    meta = dict(meta)
    meta["output.format"] = fmt
    write_table(out, fmt, columns, rows, meta)
    print(f"wrote {out} ({len(rows)} rows)")


_COMMANDS = {
    "ising-spectrum": _cmd_ising_spectrum,
    "polaritons": _cmd_polaritons,
    "saturation": _cmd_saturation,
    "fn-correction": _cmd_fn_correction,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = {}
    try:
        config = load_config(args.config)
        code = _COMMANDS[args.command](args, config)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return code


if __name__ == "__main__":
    sys.exit(main())
