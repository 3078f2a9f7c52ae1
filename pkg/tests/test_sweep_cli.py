import json
from pathlib import Path

import pytest

from dicke_ising.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(argv):
    return main(argv)


def read_table(path):
    columns, rows = None, []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            continue
        if columns is None:
            columns = line.split(",")
        else:
            rows.append(line.split(","))
    return columns, rows


def test_ising_spectrum_uncoupled(tmp_path):
    out = tmp_path / "flat.csv"
    assert run(["ising-spectrum", "--eta", "0", "--n-dipoles", "12",
                "--modes", "all", "--out", str(out)]) == 0
    columns, rows = read_table(out)
    assert columns == ["n_dipoles", "omega0", "eta", "l", "k",
                       "e_fermion", "e_bose", "e_hp1", "e_hp1_numeric"]
    assert len(rows) == 12
    for row in rows:
        for col in ("e_fermion", "e_bose", "e_hp1", "e_hp1_numeric"):
            assert float(row[columns.index(col)]) == 1.0


def test_ising_spectrum_schemes_split(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run(["ising-spectrum", "--eta", "0.2", "--n-dipoles", "100",
                "--modes", "1", "--out", str(out)]) == 0
    columns, rows = read_table(out)
    row = {c: float(v) for c, v in zip(columns, rows[0])}
    assert abs(row["e_hp1"] - row["e_fermion"]) < 0.01
    assert row["e_fermion"] - row["e_bose"] == pytest.approx(0.0584, abs=2e-3)
    assert abs(row["e_hp1_numeric"] - row["e_fermion"]) < 0.03


def test_validation_failure_exit_code(tmp_path):
    assert run(["ising-spectrum", "--eta", "0.4",
                "--out", str(tmp_path / "x.csv")]) == 2


def test_domain_failure_exit_code(tmp_path):
    # delta < 1: cavity line never reaches the matter branch
    assert run(["polaritons", "--delta", "0.5", "--nu", "0.0", "--eta", "0.0",
                "--k-points", "11", "--out", str(tmp_path / "x.csv")]) == 3


def test_polaritons_decoupled_columns(tmp_path):
    out = tmp_path / "pol.csv"
    assert run(["polaritons", "--nu", "0", "--delta", "4", "--eta", "-0.1",
                "--k-points", "51", "--out", str(out)]) == 0
    columns, rows = read_table(out)
    for raw in rows:
        row = {c: float(v) for c, v in zip(columns, raw) if c != "panel"}
        cavity_line = row["omega_cavity_renorm"]
        matter = row["e_matter_bose"]
        assert row["e_lower_bose"] == pytest.approx(min(cavity_line, matter), abs=1e-13)
        assert row["e_upper_bose"] == pytest.approx(max(cavity_line, matter), abs=1e-13)


def test_polaritons_finite_n_adds_full_columns(tmp_path):
    out = tmp_path / "pol.csv"
    assert run(["polaritons", "--nu", "0.2", "--delta", "4", "--eta", "-0.2",
                "--n-dipoles", "60", "--k-points", "21", "--out", str(out)]) == 0
    columns, rows = read_table(out)
    assert columns[-2:] == ["e_lower_hp1_full", "e_upper_hp1_full"]
    from dicke_ising import finite_size_correction
    shift = 0.2**2 * finite_size_correction(60, 4.0).grid_sum
    for raw in rows:
        row = {c: v for c, v in zip(columns, raw)}
        assert float(row["e_lower_hp1_full"]) - float(row["e_lower_hp1"]) == \
            pytest.approx(shift, abs=1e-12)


def test_ising_spectrum_size_sweep_curves_coincide(tmp_path):
    # weak coupling: the three dispersions nearly coincide at every chain size
    out = tmp_path / "nsweep.csv"
    assert run(["ising-spectrum", "--eta", "-0.05", "--n-dipoles", "10,50,200",
                "--modes", "1,2", "--out", str(out)]) == 0
    columns, rows = read_table(out)
    assert len(rows) == 6
    for raw in rows:
        row = {c: float(v) for c, v in zip(columns, raw)}
        values = [row["e_fermion"], row["e_bose"], row["e_hp1"],
                  row["e_hp1_numeric"]]
        assert max(values) - min(values) < 0.01


def test_saturation_command(tmp_path):
    out = tmp_path / "sat.csv"
    assert run(["saturation", "--eta", "0.0,0.2", "--n-dipoles", "120",
                "--out", str(out)]) == 0
    columns, rows = read_table(out)
    last = {c: float(v) for c, v in zip(columns, rows[-1])}
    assert last["ratio_order2"] == pytest.approx(0.98, abs=1e-12)
    assert last["ratio_numeric"] == pytest.approx(0.98, abs=0.002)
    assert run(["saturation", "--eta", "0.3", "--out", str(tmp_path / "y.csv")]) == 2


def test_fn_correction_command(tmp_path):
    out = tmp_path / "fn.json"
    assert run(["fn-correction", "--n-dipoles", "1000", "--delta", "4",
                "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["columns"] == ["n_dipoles", "delta", "f_grid_sum",
                                  "f_closed_form", "rel_difference"]
    (row,) = payload["rows"]
    assert row[2] > row[3] > 0


def test_oracle_command(tmp_path):
    out = tmp_path / "oracle.json"
    assert run(["oracle", "--n-dipoles", "8", "--eta", "0.15",
                "--checks", "all", "--photon-cutoff", "6", "--nu", "0.1",
                "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["hard_failures"] == 0
    names = {c["name"] for c in report["checks"]}
    assert "ed_vs_bdg_spectrum" in names
    assert "dicke_lower_gap_vs_hopfield" in names
    hard = next(c for c in report["checks"] if c["kind"] == "hard")
    assert hard["pass"] and hard["abs_delta"] <= 1e-10
    assert run(["oracle", "--format", "csv", "--out", str(tmp_path / "z.csv")]) == 2


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[chain]\neta = 0.1\nn_dipoles = 10\nmodes = 1\n"
                   "[output]\nformat = csv\n")
    out1 = tmp_path / "a.csv"
    assert run(["ising-spectrum", "--config", str(cfg), "--out", str(out1)]) == 0
    columns, rows = read_table(out1)
    assert float(rows[0][columns.index("eta")]) == 0.1
    out2 = tmp_path / "b.csv"
    assert run(["ising-spectrum", "--config", str(cfg), "--eta", "0.2",
                "--out", str(out2)]) == 0
    columns, rows = read_table(out2)
    assert float(rows[0][columns.index("eta")]) == 0.2
    assert run(["ising-spectrum", "--config", str(tmp_path / "nope.ini"),
                "--out", str(tmp_path / "c.csv")]) == 2


def test_determinism_across_runs_and_threads(tmp_path):
    args = ["polaritons", "--eta", "-0.05", "--nu", "0.2", "--delta", "4",
            "--k-points", "40"]
    paths = [tmp_path / f"run{i}.csv" for i in range(3)]
    assert run(args + ["--out", str(paths[0])]) == 0
    assert run(args + ["--out", str(paths[1])]) == 0
    assert run(args + ["--threads", "3", "--out", str(paths[2])]) == 0
    # identical config (thread count included) -> identical bytes
    assert paths[0].read_bytes() == paths[1].read_bytes()
    # a different worker count only changes the resolved-config header
    strip = lambda p: [l for l in p.read_text().splitlines() if not l.startswith("#")]
    assert strip(paths[0]) == strip(paths[2])


@pytest.mark.parametrize("figure", ["fig4", "fig5"])
def test_figure_goldens_are_byte_stable(figure, tmp_path):
    out = tmp_path / f"{figure}.csv"
    assert run(["polaritons", "--figure", figure, "--k-points", "101",
                "--out", str(out)]) == 0
    golden = GOLDEN / f"{figure}.csv"
    assert out.read_bytes() == golden.read_bytes()


def test_json_output_roundtrip(tmp_path):
    out = tmp_path / "spec.json"
    assert run(["ising-spectrum", "--eta", "0.05", "--n-dipoles", "8",
                "--modes", "1,2", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["version"]
    assert payload["config"]["command"] == "ising-spectrum"
    assert len(payload["rows"]) == 2
