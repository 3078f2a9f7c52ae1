import math
from itertools import product

import numpy as np
import pytest

from dicke_ising import (ChainParams, NoConvergence, ParamsMismatch,
                         fermion_energy, hp1_coefficients_numeric,
                         hp1_coefficients_perturbative, hp1_energy,
                         hp1_energy_perturbative, hp1_ground_energy,
                         hp1_numeric_spectrum, hp1_solution_perturbative,
                         kernels_eval, pair_residual, pekar_grid)
from dicke_ising.hp1 import _loop_sums, _mode_energy


# ---------------------------------------------------------------------------
# brute-force operator-algebra oracle
#
# Build the chain Hamiltonian (Bose part + first nonlinear correction) on a
# periodic momentum grid directly in the Bogoliubov d-basis, normal order it,
# and read off the pair-creation and diagonal quadratic coefficients.  These
# must reproduce `pair_residual` (x2, both members of a +-k pair hit the same
# operator) and `_mode_energy` exactly, for arbitrary coefficient tables.
# ---------------------------------------------------------------------------

def _normal_order(ops, coef, out):
    for i in range(len(ops) - 1):
        (d1, m1), (d2, m2) = ops[i], ops[i + 1]
        if (not d1) and d2:
            swapped = ops[:i] + (ops[i + 1], ops[i]) + ops[i + 2:]
            _normal_order(swapped, coef, out)
            if m1 == m2:
                _normal_order(ops[:i] + ops[i + 2:], coef, out)
            return
    dags = tuple(sorted(m for d, m in ops if d))
    anns = tuple(sorted(m for d, m in ops if not d))
    out[(dags, anns)] = out.get((dags, anns), 0.0 + 0.0j) + coef


def _site_expansions(n, alpha, beta):
    conj = lambda m: (-m) % n
    site_b, site_bd = [], []
    for site in range(n):
        b_terms, bd_terms = [], []
        for m in range(n):
            phase = np.exp(2j * np.pi * m * site / n) / math.sqrt(n)
            b_terms.append((phase * alpha[m], (False, m)))
            b_terms.append((phase * beta[m], (True, conj(m))))
            bd_terms.append((phase.conjugate() * alpha[m], (True, m)))
            bd_terms.append((phase.conjugate() * beta[m], (False, conj(m))))
        site_b.append(b_terms)
        site_bd.append(bd_terms)
    return site_b, site_bd


def _accumulate(factors, scale, out):
    for combo in product(*factors):
        coef = scale
        ops = []
        for c, op in combo:
            coef *= c
            ops.append(op)
        _normal_order(tuple(ops), coef, out)


def _brute_force_quadratic(n, alpha, beta, w0, j):
    site_b, site_bd = _site_expansions(n, alpha, beta)
    x = [site_b[s] + site_bd[s] for s in range(n)]
    out = {}
    for s in range(n):
        _accumulate([site_bd[s], site_b[s]], w0, out)
        _accumulate([x[s], x[(s + 1) % n]], j, out)
        for neighbour in (x[(s - 1) % n], x[(s + 1) % n]):
            _accumulate([site_bd[s], site_bd[s], site_b[s], neighbour], -j / 2, out)
            _accumulate([site_bd[s], site_b[s], site_b[s], neighbour], -j / 2, out)
    conj = lambda m: (-m) % n
    pair = {}
    diag = {}
    for q in range(n):
        if conj(q) == q:
            continue
        pair[q] = out.get((tuple(sorted((q, conj(q)))), ()), 0.0)
        diag[q] = out.get(((q,), (q,)), 0.0)
    return pair, diag


@pytest.mark.parametrize("seed", [0, 1])
def test_residual_and_energy_match_operator_algebra(seed):
    n = 5
    rng = np.random.default_rng(seed)
    conj = lambda m: (-m) % n
    beta = np.zeros(n)
    for m in range(n):
        if beta[m] == 0.0:
            value = rng.uniform(-0.4, 0.4)
            beta[m] = beta[conj(m)] = value
    alpha = np.sqrt(1.0 + beta * beta)
    cosk = np.cos(2 * np.pi * np.arange(n) / n)
    w0, j = 1.0, 0.22
    params = ChainParams(n_dipoles=n, omega0=w0, eta=j / w0)

    pair, diag = _brute_force_quadratic(n, alpha, beta, w0, j)
    # evaluate the loop-sum forms on the same (periodic) grid
    residual = pair_residual(beta, cosk, params)
    energy = _mode_energy(beta, cosk, params, _loop_sums(alpha, beta, cosk))
    for q in pair:
        assert pair[q].imag == pytest.approx(0.0, abs=1e-12)
        assert diag[q].imag == pytest.approx(0.0, abs=1e-12)
        assert pair[q].real == pytest.approx(2 * residual[q], abs=1e-12)
        assert diag[q].real == pytest.approx(energy[q], abs=1e-12)


# ---------------------------------------------------------------------------
# perturbative coefficients
# ---------------------------------------------------------------------------

def test_perturbative_coefficients_zero_coupling():
    pair = hp1_coefficients_perturbative(1.2, 0.0)
    assert (pair.alpha, pair.beta) == (1.0, 0.0)


def test_perturbative_coefficients_midzone_and_edge():
    pair = hp1_coefficients_perturbative(math.pi / 2, 0.1)
    assert pair.beta == pytest.approx(-0.1**2 / 2, abs=1e-15)
    assert pair.alpha == pytest.approx(1.0, abs=1e-4)
    pair = hp1_coefficients_perturbative(0.0, 0.2)
    assert pair.beta == pytest.approx(-0.2 + 1.5 * 0.04, abs=1e-15)  # -0.14
    assert pair.alpha**2 - pair.beta**2 == pytest.approx(1.0, abs=1e-12)


def test_perturbative_energy_values():
    p = ChainParams(10, 1.0, 0.0)
    assert hp1_energy_perturbative(0.7, p) == 1.0
    p = ChainParams(10, 1.0, 0.2)
    assert hp1_energy_perturbative(math.pi / 2, p) == pytest.approx(1.08, abs=1e-14)


def test_perturbative_energy_tracks_exact_dispersion():
    p = ChainParams(100, 1.0, 0.15)
    k = pekar_grid(p).k
    diff = np.abs(hp1_energy_perturbative(k, p) - fermion_energy(k, p))
    assert diff.max() <= 10 * 0.15**3


# ---------------------------------------------------------------------------
# numeric solver
# ---------------------------------------------------------------------------

def test_numeric_solver_uncoupled_chain():
    sol = hp1_coefficients_numeric(ChainParams(12, 1.0, 0.0))
    assert sol.residual_norm == 0.0
    assert np.all(sol.betas == 0.0)
    assert np.all(sol.alphas == 1.0)


def test_numeric_solver_matches_perturbative_at_small_coupling():
    eta = 0.02
    p = ChainParams(40, 1.0, eta)
    sol = hp1_coefficients_numeric(p)
    pert = hp1_solution_perturbative(p)
    assert np.abs(sol.betas - pert.betas).max() <= 10 * eta**3


def test_numeric_solver_moderate_coupling():
    p = ChainParams(40, 1.0, 0.2)
    sol = hp1_coefficients_numeric(p)
    assert sol.residual_norm <= 1e-10
    for pair in sol.pairs[:: 13]:
        assert pair.alpha**2 - pair.beta**2 == pytest.approx(1.0, abs=1e-12)
    energies = hp1_numeric_spectrum(p, sol)
    target = hp1_energy_perturbative(sol.grid.k, p)
    assert np.abs(energies - target).max() <= 10 * 0.2**3


def test_numeric_solver_reports_nonconvergence():
    with pytest.raises(NoConvergence):
        hp1_coefficients_numeric(ChainParams(20, 1.0, 0.2), tol=1e-10, max_iter=1)


def test_hp1_energy_methods_and_guards():
    p = ChainParams(30, 1.0, 0.15)
    sol = hp1_coefficients_numeric(p)
    k_on = float(sol.grid.k[10])
    on_grid = hp1_energy(k_on, p, sol)
    assert on_grid == pytest.approx(hp1_numeric_spectrum(p, sol)[10], abs=1e-12)
    # off-grid evaluation interpolates smoothly between neighbours
    k_off = 0.5 * (sol.grid.k[10] + sol.grid.k[11])
    e_off = hp1_energy(float(k_off), p, sol)
    lo, hi = sorted((on_grid, hp1_energy(float(sol.grid.k[11]), p, sol)))
    assert lo < e_off < hi
    pert = hp1_solution_perturbative(p)
    assert hp1_energy(1.0, p, pert) == pytest.approx(hp1_energy_perturbative(1.0, p))
    with pytest.raises(ParamsMismatch):
        hp1_energy(1.0, ChainParams(30, 1.0, 0.1), sol)


def test_ground_energy():
    assert hp1_ground_energy(ChainParams(5, 1.0, 0.0)) == 0.0
    # N=3 grid sum: cos k (1 - cos k) over {pi/4, pi/2, 3pi/4} equals -1
    assert hp1_ground_energy(ChainParams(3, 1.0, 0.2)) == pytest.approx(-0.04, abs=1e-14)
    # per-dipole magnitude tends to eta^2/2
    value = hp1_ground_energy(ChainParams(4000, 1.0, 0.2)) / 4000
    assert value == pytest.approx(-0.02, rel=1e-3)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def test_kernels_with_empty_table():
    sol = hp1_coefficients_numeric(ChainParams(9, 1.0, 0.0))
    k, kp = float(sol.grid.k[1]), float(sol.grid.k[6])
    f, g, h = kernels_eval(sol, k, kp)
    assert f == 0.0
    assert g == pytest.approx(2 * math.cos(kp), abs=1e-15)
    assert h == 0.0


def test_kernels_deterministic_and_finite():
    p = ChainParams(9, 1.0, 0.1)
    sol = hp1_solution_perturbative(p)
    k, kp = float(sol.grid.k[2]), float(sol.grid.k[4])
    first = kernels_eval(sol, k, kp)
    second = kernels_eval(sol, k, kp)
    assert first == second
    assert all(math.isfinite(v) for v in first)


def test_kernels_vanish_midzone():
    # every term carries cos k or cos k': at k = k' = pi/2 all three vanish
    p = ChainParams(99, 1.0, 0.1)  # l = 50 sits exactly at pi/2
    sol = hp1_solution_perturbative(p)
    k = float(sol.grid.k[49])
    assert k == pytest.approx(math.pi / 2, abs=1e-15)
    f, g, h = kernels_eval(sol, k, k)
    assert f == pytest.approx(0.0, abs=1e-15)
    assert g == pytest.approx(0.0, abs=1e-15)
    assert h == pytest.approx(0.0, abs=1e-15)


def test_kernels_require_grid_momenta():
    sol = hp1_solution_perturbative(ChainParams(9, 1.0, 0.1))
    with pytest.raises(ParamsMismatch):
        kernels_eval(sol, 0.123, float(sol.grid.k[0]))
