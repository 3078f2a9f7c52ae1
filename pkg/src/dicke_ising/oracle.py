"""Brute-force ground truth: dense diagonalization oracles.

Three independent routes against which the analytic spectra are checked:

* `ed_spin_chain`   - the 2^N spin Hamiltonian, built literally from
                      w0 sum_n s+_n s-_n + J sum_n (s+_n + s-_n)(s+_{n+1} + s-_{n+1})
                      with open boundaries, bit i of the basis index encoding
                      the excitation of site i (site 0 = lowest bit).
* `bdg_spin_chain`  - the quadratic fermion problem as a 2N x 2N symmetric
                      eigenproblem, no plane-wave ansatz; the spin mapping is
                      exact for the open chain, so the reconstructed many-body
                      spectrum must match `ed_spin_chain` to round-off.
* `ed_dicke_ising`  - one standing-wave photon mode (profile sqrt(2) sin(k n))
                      coupled to the chain through the (a - a+)(s- - s+)
                      quadratures, with the photon self-interaction
                      (Omega0^2/omega0)(a + a+)^2 kept explicitly so the
                      cavity-renormalization claim is tested, not assumed.

Dense symmetric solvers only; caps keep everything desk-scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain import ChainParams, pekar_grid
from .errors import CutoffUnconverged, TooLarge
from .ising import bose_energy

ED_SITE_CAP = 14
BDG_SITE_CAP = 10_000
DICKE_DIM_CAP = 20_000


@dataclass(frozen=True)
class DenseSpectrum:
    """Eigenvalues (ascending) of one dense diagonalization."""

    dimension: int
    eigenvalues: np.ndarray = field(repr=False)
    ground_energy: float | None = None
    ground_vector_observables: dict[int, float] | None = None


def _spin_hamiltonian(params: ChainParams) -> np.ndarray:
    n, w0, j = params.n_dipoles, params.omega0, params.j
    dim = 1 << n
    idx = np.arange(dim)
    occupancy = np.zeros(dim)
    for b in range(n):
        occupancy += (idx >> b) & 1
    h = np.zeros((dim, dim))
    h[idx, idx] = w0 * occupancy
    for bond in range(n - 1):
        mask = (1 << bond) | (1 << (bond + 1))
        h[idx, idx ^ mask] += j
    return h


def ed_spin_chain(params: ChainParams, site_populations: bool = False,
                  cap: int = ED_SITE_CAP) -> DenseSpectrum:
    """Full 2^N spectrum of the chain; optionally ground-state <s+ s-> per site."""
    n = params.n_dipoles
    if n > cap:
        raise TooLarge(f"dense spin ED capped at N = {cap}, asked for {n}")
    h = _spin_hamiltonian(params)
    if not site_populations:
        eigenvalues = np.linalg.eigvalsh(h)
        return DenseSpectrum(dimension=h.shape[0], eigenvalues=eigenvalues,
                             ground_energy=float(eigenvalues[0]))
    eigenvalues, vectors = np.linalg.eigh(h)
    ground = vectors[:, 0]
    weights = ground * ground
    idx = np.arange(h.shape[0])
    populations = {site: float(np.sum(weights * ((idx >> site) & 1)))
                   for site in range(n)}
    return DenseSpectrum(dimension=h.shape[0], eigenvalues=eigenvalues,
                         ground_energy=float(eigenvalues[0]),
                         ground_vector_observables=populations)


def bdg_spin_chain(params: ChainParams) -> DenseSpectrum:
    """Quasiparticle energies of the quadratic fermion problem (open chain).

    eigenvalues: the N non-negative quasiparticle energies, ascending;
    ground_energy: all negative modes filled, (tr A - sum E)/2.
    """
    n, w0, j = params.n_dipoles, params.omega0, params.j
    if n > BDG_SITE_CAP:
        raise TooLarge(f"BdG capped at N = {BDG_SITE_CAP}, asked for {n}")
    a = np.zeros((n, n))
    b = np.zeros((n, n))
    np.fill_diagonal(a, w0)
    for site in range(n - 1):
        a[site, site + 1] = a[site + 1, site] = j
        b[site, site + 1] = j
        b[site + 1, site] = -j
    m = np.block([[a, b], [-b, -a]])
    spectrum = np.linalg.eigvalsh(m)
    quasiparticles = spectrum[n:]  # ascending non-negative half
    ground = 0.5 * (np.trace(a) - math.fsum(quasiparticles))
    return DenseSpectrum(dimension=2 * n, eigenvalues=quasiparticles,
                         ground_energy=float(ground))


def many_body_from_quasiparticles(spectrum: DenseSpectrum) -> np.ndarray:
    """All 2^N occupation sums of a quasiparticle spectrum, sorted ascending."""
    energies = np.array([spectrum.ground_energy])
    for e in spectrum.eigenvalues:
        energies = np.concatenate([energies, energies + e])
    energies.sort()
    return energies


def _dicke_hamiltonian(params: ChainParams, nu: float, cutoff: int,
                       photon_freq: float, mode_l: int) -> np.ndarray:
    n, w0 = params.n_dipoles, params.omega0
    omega_c = nu * w0                      # collective coupling
    chi = omega_c / math.sqrt(n)
    diamagnetic = omega_c * omega_c / w0

    spin_dim = 1 << n
    ph_dim = cutoff + 1
    h_spin = _spin_hamiltonian(params)

    # photon block: w a+a + D (a + a+)^2
    levels = np.arange(ph_dim)
    h_ph = np.diag(photon_freq * levels.astype(float))
    x = np.zeros((ph_dim, ph_dim))          # a + a+
    root = np.sqrt(levels[1:].astype(float))
    x[levels[:-1], levels[1:]] = root
    x[levels[1:], levels[:-1]] = root
    h_ph += diamagnetic * (x @ x)

    p = np.zeros((ph_dim, ph_dim))           # a - a+ (real antisymmetric)
    p[levels[:-1], levels[1:]] = root
    p[levels[1:], levels[:-1]] = -root

    # matter quadrature sum_n u_n (s-_n - s+_n), standing-wave profile
    k = mode_l * math.pi / (n + 1)
    idx = np.arange(spin_dim)
    y = np.zeros((spin_dim, spin_dim))
    for site in range(n):
        u = math.sqrt(2.0) * math.sin(k * (site + 1))
        flipped = idx ^ (1 << site)
        excited = ((idx >> site) & 1).astype(bool)
        # s- lowers the excited states, s+ raises the rest
        y[flipped[excited], idx[excited]] += u       # s- matrix elements
        y[flipped[~excited], idx[~excited]] -= u     # -s+ matrix elements
    h = (np.kron(np.eye(ph_dim), h_spin) + np.kron(h_ph, np.eye(spin_dim))
         + chi * np.kron(p, y))
    return h


def ed_dicke_ising(params: ChainParams, nu: float, photon_cutoff: int,
                   photon_freq: float | None = None, mode_l: int | None = None,
                   check_cutoff: bool = True,
                   dim_cap: int = DICKE_DIM_CAP) -> DenseSpectrum:
    """Dense spectrum of the chain coupled to a single resonant photon mode.

    The low-lying gaps play the role of finite-size polariton energies at the
    coupled momentum.  Cutoff convergence is verified by doubling unless
    check_cutoff is False.
    """
    n = params.n_dipoles
    dim = (1 << n) * (photon_cutoff + 1)
    if dim > dim_cap:
        raise TooLarge(f"Dicke ED dimension {dim} exceeds cap {dim_cap}")
    if photon_freq is None:
        photon_freq = params.omega0
    if mode_l is None:
        grid = pekar_grid(params)
        mode_l = int(np.argmin(np.abs(bose_energy(grid.k, params) - photon_freq))) + 1

    h = _dicke_hamiltonian(params, nu, photon_cutoff, photon_freq, mode_l)
    eigenvalues = np.linalg.eigvalsh(h)

    if check_cutoff:
        dim2 = (1 << n) * (2 * photon_cutoff + 1)
        if dim2 > dim_cap:
            raise TooLarge(
                f"cutoff-doubling check needs dimension {dim2} > cap {dim_cap}; "
                "lower the cutoff or pass check_cutoff=False"
            )
        h2 = _dicke_hamiltonian(params, nu, 2 * photon_cutoff, photon_freq, mode_l)
        ref = np.linalg.eigvalsh(h2)
        gaps = eigenvalues[1:4] - eigenvalues[0]
        gaps2 = ref[1:4] - ref[0]
        drift = np.max(np.abs(gaps - gaps2) / np.maximum(np.abs(gaps2), 1e-300))
        if drift > 1e-6:
            raise CutoffUnconverged(
                f"lowest gaps moved by {drift:.2e} relative when doubling the cutoff"
            )
    return DenseSpectrum(dimension=dim, eigenvalues=eigenvalues,
                         ground_energy=float(eigenvalues[0]))
