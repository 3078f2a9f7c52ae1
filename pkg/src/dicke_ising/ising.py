"""Matter-sector diagonalizations: exact fermionic and Bose-approximation.

Exact route (Jordan-Wigner fermions):

    E_F(k) = sqrt(omega0^2 + 4 J^2 + 4 J omega0 cos k)
    E_F^0  = (N omega0 - sum_k E_F(k)) / 2

Bose route (leading Holstein-Primakoff truncation):

    E_B(k) = sqrt(omega0^2 + 4 J omega0 cos k)
    E_B^0  = (sum_k E_B(k) - N omega0) / 2

Both ground energies are <= 0 and agree per dipole to O(eta^3); they are kept
verbatim under their own tags (the two routes are written with opposite sign
conventions around N*omega0).

Bogoliubov coefficients are stored in the convention b_k = alpha d_k
+ beta d^+_{-k} for the bosonic case (so beta_B ~ -eta cos k at small eta) and
d_F,k = alpha c_k + beta c^+_{-k} for the fermionic one.  With this choice the
quadrature weight alpha - beta of the bosonic pair equals
sqrt(E_B(k)/omega0) exactly, which saturates the no-go bound.
"""
from __future__ import annotations

import math

import numpy as np

from .chain import ApproximationTag, BogoliubovPair, ChainParams, ModeSpectrum, pekar_grid
from .errors import ComplexEnergy, DegenerateNormalization

_DENOM_FLOOR = 1e-300


def fermion_energy(k, params: ChainParams):
    """Exact single-particle energy; k may be a scalar or an array in (0, pi)."""
    w0, j = params.omega0, params.j
    rad = w0 * w0 + 4 * j * j + 4 * j * w0 * np.cos(k)
    return np.sqrt(rad)


def fermion_ground_energy(params: ChainParams) -> float:
    grid = pekar_grid(params)
    return 0.5 * (params.n_dipoles * params.omega0
                  - math.fsum(fermion_energy(grid.k, params)))


def fermion_bogoliubov(k: float, params: ChainParams) -> BogoliubovPair:
    """Fermionic rotation coefficients; alpha^2 + beta^2 = 1."""
    w0, j = params.omega0, params.j
    e = float(fermion_energy(k, params))
    a = w0 + 2 * j * np.cos(k) + e
    b = -2 * j * np.sin(k)
    denom = math.hypot(a, b)
    if denom < _DENOM_FLOOR:
        raise DegenerateNormalization(f"fermionic normalization underflow at k={k}")
    return BogoliubovPair(k=float(k), alpha=a / denom, beta=b / denom,
                          statistics="fermionic")


def bose_energy(k, params: ChainParams):
    """Bose-approximation single-particle energy; real for |eta| <= 0.25 on (0, pi)."""
    w0, j = params.omega0, params.j
    rad = w0 * w0 + 4 * j * w0 * np.cos(k)
    if np.any(rad < 0):
        raise ComplexEnergy(
            f"E_B radicand negative at eta={params.eta}: left the validity domain"
        )
    return np.sqrt(rad)


def bose_ground_energy(params: ChainParams) -> float:
    grid = pekar_grid(params)
    return 0.5 * (math.fsum(bose_energy(grid.k, params))
                  - params.n_dipoles * params.omega0)


def _bose_alpha_beta(k, params: ChainParams):
    """Vectorized bosonic coefficients (convention b = alpha d + beta d^+)."""
    w0, j = params.omega0, params.j
    e = bose_energy(k, params)
    a = w0 + 2 * j * np.cos(k) + e
    rad = a * a - 4 * j * j * np.cos(k) ** 2
    denom = np.sqrt(rad)
    if np.any(denom < _DENOM_FLOOR):
        raise DegenerateNormalization(f"bosonic normalization underflow at k={k}")
    return a / denom, -2 * j * np.cos(k) / denom


def bose_bogoliubov(k: float, params: ChainParams) -> BogoliubovPair:
    """Bosonic squeeze coefficients; alpha^2 - beta^2 = 1."""
    alpha, beta = _bose_alpha_beta(float(k), params)
    return BogoliubovPair(k=float(k), alpha=float(alpha), beta=float(beta),
                          statistics="bosonic")


def virtual_population(params: ChainParams) -> float:
    """Ground-state occupancy per site, (1/N) sum_k beta_B(k)^2 = eta^2/2 + O(eta^3)."""
    grid = pekar_grid(params)
    _, beta = _bose_alpha_beta(grid.k, params)
    return math.fsum(beta * beta) / params.n_dipoles


def mode_spectrum(tag: ApproximationTag, params: ChainParams) -> ModeSpectrum:
    """Spectrum of one scheme on the full momentum grid.

    The two Holstein-Primakoff tags share the matter spectrum (they differ only
    in how the cavity couples); their energies here are the second-order ones.
    """
    from .hp1 import hp1_energy_perturbative, hp1_ground_energy

    grid = pekar_grid(params)
    if tag is ApproximationTag.FERMION_EXACT:
        return ModeSpectrum(tag, params, fermion_energy(grid.k, params),
                            fermion_ground_energy(params))
    if tag is ApproximationTag.BOSE:
        return ModeSpectrum(tag, params, bose_energy(grid.k, params),
                            bose_ground_energy(params))
    return ModeSpectrum(tag, params, hp1_energy_perturbative(grid.k, params),
                        hp1_ground_energy(params))
