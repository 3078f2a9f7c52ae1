"""Parameter sweeps, figure recipes, and machine-readable table output.

Tables are plain (columns, rows) pairs; CSV files carry '#'-prefixed header
lines with the resolved configuration (sorted keys) and the package version so
every output is reproducible byte for byte.  Energies are emitted in units of
omega0.
"""
from __future__ import annotations

import configparser
import json
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .cavity import (CavityParams, FiniteSizeCorrection, branch_energies,
                     crossing_point, finite_size_correction, photon_frequency,
                     renormalized_cavity, saturation_ratio,
                     saturation_ratio_numeric, _matter_energy_weight)
from .chain import ApproximationTag, ChainParams, pekar_grid
from .errors import ValidationError
from .hp1 import hp1_energy_perturbative, hp1_numeric_spectrum
from .ising import bose_energy, fermion_energy
from .oracle import (bdg_spin_chain, ed_dicke_ising, ed_spin_chain,
                     many_body_from_quasiparticles)

# frozen figure parameter sets
FIGURE_RECIPES = {
    "fig1": {"eta_start": 0.0, "eta_stop": 0.25, "eta_count": 126,
             "n_dipoles": 100, "modes": "1"},
    "fig2a": {"eta": -0.05, "n_start": 10, "n_stop": 200, "n_count": 96,
              "modes": "1,2"},
    "fig2b": {"eta": -0.2, "n_start": 10, "n_stop": 200, "n_count": 96,
              "modes": "1,2"},
    "fig4": {"eta": -0.05, "panels": [(4.0, 0.05), (16.0, 0.05), (4.0, 0.2), (16.0, 0.2)]},
    "fig5": {"eta": -0.2, "panels": [(4.0, 0.05), (16.0, 0.05), (4.0, 0.2), (16.0, 0.2)]},
    "fig6": {"eta_start": 0.0, "eta_stop": 0.2, "eta_count": 81},
}


def parse_values(spec: str) -> list[float]:
    """'a:b:n' -> n evenly spaced values; 'x,y,z' -> list; 'x' -> [x]."""
    spec = spec.strip()
    if ":" in spec:
        start, stop, count = spec.split(":")
        return [float(v) for v in np.linspace(float(start), float(stop), int(count))]
    return [float(v) for v in spec.split(",")]


def parse_modes(spec: str, n: int) -> list[int]:
    spec = spec.strip().lower()
    if spec == "all":
        return list(range(1, n + 1))
    if spec.startswith("first:"):
        return list(range(1, int(spec.split(":")[1]) + 1))
    modes = [int(v) for v in spec.split(",")]
    for l in modes:
        if not 1 <= l <= n:
            raise ValidationError(f"mode index {l} outside 1..{n}")
    return modes


def load_config(path: str | None) -> dict[str, str]:
    """Flat 'section.key' -> value mapping from an INI-style file."""
    if path is None:
        return {}
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValidationError(f"config file not found: {path}")
    flat = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            flat[f"{section}.{key}"] = value
    return flat


def resolve(flags: dict, config: dict[str, str], key: str, default):
    """Precedence: CLI flag > config file > default."""
    flag_key = key.split(".")[-1]
    if flags.get(flag_key) is not None:
        return flags[flag_key]
    if key in config:
        return config[key]
    return default


def _parallel(fn, items, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def ising_spectrum_table(n_values: list[int], omega0: float, eta_values: list[float],
                         modes_spec: str, include_numeric: bool = True,
                         threads: int = 1):
    """One row per (parameter point, mode): k and the three dispersions / omega0."""
    columns = ["n_dipoles", "omega0", "eta", "l", "k",
               "e_fermion", "e_bose", "e_hp1", "e_hp1_numeric"]

    def point_rows(point):
        n, eta = point
        params = ChainParams(n_dipoles=n, omega0=omega0, eta=eta)
        grid = pekar_grid(params)
        e_f = fermion_energy(grid.k, params) / omega0
        e_b = bose_energy(grid.k, params) / omega0
        e_h = hp1_energy_perturbative(grid.k, params) / omega0
        if include_numeric:
            e_n = hp1_numeric_spectrum(params) / omega0
        else:
            e_n = np.full(n, math.nan)
        rows = []
        for l in parse_modes(modes_spec, n):
            i = l - 1
            rows.append((n, omega0, eta, l, grid.k[i],
                         e_f[i], e_b[i], e_h[i], e_n[i]))
        return rows

    points = [(n, eta) for n in n_values for eta in eta_values]
    rows = [row for block in _parallel(point_rows, points, threads) for row in block]
    return columns, rows


def polariton_table(eta: float, panels: list[tuple[float, float]], omega0: float = 1.0,
                    n_dipoles: int = 0, k_points: int = 400, threads: int = 1):
    """Dense-k polariton branches for schemes Bose and first-order HP.

    panels: list of (delta, nu).  n_dipoles = 0 means the thermodynamic limit
    (retardation correction dropped, no full-LM columns); a finite value adds
    the shifted lower branch of the full light-matter scheme.
    """
    finite = n_dipoles > 0
    chain_n = n_dipoles if finite else 1000  # grid size only enters loop sums
    chain = ChainParams(n_dipoles=chain_n, omega0=omega0, eta=eta)
    columns = ["panel", "delta", "nu", "eta", "k", "k_over_kc",
               "omega_cavity", "omega_cavity_renorm",
               "e_matter_bose", "e_matter_hp1",
               "e_lower_bose", "e_upper_bose", "e_lower_hp1", "e_upper_hp1"]
    if finite:
        columns += ["e_lower_hp1_full", "e_upper_hp1_full"]

    kvec = np.linspace(0.0, math.pi, k_points + 2)[1:-1]

    def panel_rows(item):
        index, (delta, nu) = item
        cav_b = CavityParams(nu=nu, delta=delta, chain=chain, tag=ApproximationTag.BOSE)
        cav_h = CavityParams(nu=nu, delta=delta, chain=chain,
                             tag=ApproximationTag.HOLSTEIN_PRIMAKOFF1)
        kc = crossing_point(cav_h)
        om = photon_frequency(kvec, cav_h)
        omt, coupling_tilde = renormalized_cavity(kvec, cav_h)
        rows = []
        e_b, f_b = _matter_energy_weight(kvec, cav_b)
        e_h, f_h = _matter_energy_weight(kvec, cav_h)
        lo_b, up_b = branch_energies(omt, e_b, coupling_tilde * f_b)
        lo_h, up_h = branch_energies(omt, e_h, coupling_tilde * f_h)
        if finite:
            shift = nu * nu * omega0 * finite_size_correction(chain_n, delta).grid_sum
            lo_full, up_full = lo_h + shift, up_h
        for i, k in enumerate(kvec):
            row = (f"panel{index}", delta, nu, eta, k, k / kc,
                   om[i] / omega0, omt[i] / omega0,
                   e_b[i] / omega0, e_h[i] / omega0,
                   lo_b[i] / omega0, up_b[i] / omega0,
                   lo_h[i] / omega0, up_h[i] / omega0)
            if finite:
                row = row + (lo_full[i] / omega0, up_full[i] / omega0)
            rows.append(row)
        return rows

    rows = [row for block in _parallel(panel_rows, list(enumerate(panels, 1)), threads)
            for row in block]
    return columns, rows


def saturation_table(eta_values: list[float], include_numeric: bool = True,
                     n_dipoles: int = 200, omega0: float = 1.0, threads: int = 1):
    columns = ["eta_abs", "ratio_order2", "ratio_numeric"]

    def row(eta):
        second = saturation_ratio(eta)
        if include_numeric and eta != 0.0:
            params = ChainParams(n_dipoles=n_dipoles, omega0=omega0, eta=abs(eta))
            numeric = saturation_ratio_numeric(params)
        else:
            numeric = 1.0 if eta == 0.0 else math.nan
        return (abs(eta), second, numeric)

    return columns, _parallel(row, eta_values, threads)


def fn_correction_table(n_values: list[int], delta_values: list[float],
                        threads: int = 1):
    columns = ["n_dipoles", "delta", "f_grid_sum", "f_closed_form", "rel_difference"]

    def row(item):
        n, delta = item
        corr: FiniteSizeCorrection = finite_size_correction(n, delta)
        return (n, delta, corr.grid_sum, corr.closed_form, corr.relative_difference)

    items = [(n, d) for n in n_values for d in delta_values]
    return columns, _parallel(row, items, threads)


# ---------------------------------------------------------------------------
# oracle report
# ---------------------------------------------------------------------------

def oracle_report(n_dipoles: int = 10, omega0: float = 1.0, eta: float = 0.15,
                  nu: float = 0.1, photon_cutoff: int = 8,
                  checks: str = "spin", hard_tolerance: float = 1e-10) -> dict:
    """Analytic-vs-oracle comparisons; 'spin' checks are hard, the rest report."""
    params = ChainParams(n_dipoles=n_dipoles, omega0=omega0, eta=eta)
    wanted = {c.strip() for c in checks.split(",")}
    if "all" in wanted:
        wanted = {"spin", "dicke"}
    report = {"version": __version__,
              "config": {"n_dipoles": n_dipoles, "omega0": omega0, "eta": eta,
                         "nu": nu, "photon_cutoff": photon_cutoff,
                         "checks": ",".join(sorted(wanted)),
                         "hard_tolerance": hard_tolerance},
              "checks": []}

    def add(name, kind, analytic, oracle, tolerance=None):
        delta = abs(analytic - oracle)
        entry = {"name": name, "kind": kind, "analytic": analytic,
                 "oracle": oracle, "abs_delta": delta}
        if tolerance is not None:
            entry["tolerance"] = tolerance
            entry["pass"] = bool(delta <= tolerance)
        report["checks"].append(entry)

    if "spin" in wanted:
        ed = ed_spin_chain(params)
        bdg = bdg_spin_chain(params)
        rebuilt = many_body_from_quasiparticles(bdg)
        worst = float(np.max(np.abs(ed.eigenvalues - rebuilt)))
        report["checks"].append({"name": "ed_vs_bdg_spectrum", "kind": "hard",
                                 "analytic": 0.0, "oracle": worst,
                                 "abs_delta": worst, "tolerance": hard_tolerance,
                                 "pass": bool(worst <= hard_tolerance)})
        grid = pekar_grid(params)
        analytic = np.sort(fermion_energy(grid.k, params))
        add("pekar_dispersion_vs_bdg", "soft",
            0.0, float(np.max(np.abs(analytic - bdg.eigenvalues))))
        add("ground_energy_pekar_vs_ed", "soft",
            0.5 * (n_dipoles * omega0 - float(np.sum(analytic))),
            ed.ground_energy)
        add("lowest_gap_vs_min_dispersion", "soft",
            float(analytic[0]),
            float(ed.eigenvalues[1] - ed.eigenvalues[0]))

    if "dicke" in wanted:
        dicke = ed_dicke_ising(params, nu=nu, photon_cutoff=photon_cutoff)
        gaps = dicke.eigenvalues[1:] - dicke.eigenvalues[0]
        grid = pekar_grid(params)
        mode_l = int(np.argmin(np.abs(bose_energy(grid.k, params) - omega0))) + 1
        k = grid.k[mode_l - 1]
        cav = CavityParams(nu=nu, delta=1.0, chain=params, tag=ApproximationTag.BOSE)
        # analytic branches at the coupled mode; the standing-wave profile
        # carries the collective coupling sqrt((N+1)/N) * nu * omega0
        om_eff = nu * omega0 * math.sqrt((n_dipoles + 1) / n_dipoles)
        omt = math.sqrt(omega0**2 + 4 * om_eff**2)
        coupling_tilde = om_eff * math.sqrt(omega0 / omt)
        e, f = _matter_energy_weight(float(k), cav)
        lower, upper = branch_energies(omt, float(e), coupling_tilde * float(f))
        # lowest gap is the lower polariton; the upper one hides among the
        # uncoupled matter lines, so the nearest low-lying gap is reported
        window = gaps[: 4 * n_dipoles]
        nearest_upper = float(window[np.argmin(np.abs(window - float(upper)))])
        add("dicke_lower_gap_vs_hopfield", "soft", float(lower), float(gaps[0]))
        add("dicke_upper_gap_vs_hopfield_nearest", "soft", float(upper), nearest_upper)

    report["hard_failures"] = sum(1 for c in report["checks"]
                                  if c["kind"] == "hard" and not c.get("pass", True))
    return report


# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------

def _format_value(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.17g}"


def write_csv(path: str, columns: list[str], rows: list[tuple], meta: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# dicke-ising {__version__}\n")
        for key in sorted(meta):
            fh.write(f"# {key} = {meta[key]}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_format_value(v) for v in row) + "\n")


def write_json(path: str, columns: list[str], rows: list[tuple], meta: dict):
    payload = {"version": __version__, "config": dict(sorted(meta.items())),
               "columns": columns,
               "rows": [[v if isinstance(v, str) else float(v) for v in row]
                        for row in rows]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def write_table(path: str, fmt: str, columns, rows, meta):
    if fmt == "csv":
        write_csv(path, columns, rows, meta)
    elif fmt == "json":
        write_json(path, columns, rows, meta)
    else:
        raise ValidationError(f"unknown output format {fmt!r}")
