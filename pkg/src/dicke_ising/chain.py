"""Domain types for the dipole chain: parameters, momentum grid, tags.

Conventions (hbar = 1): a chain of N two-level dipoles with transition
frequency omega0 and nearest-neighbour coupling J = eta * omega0.  Open
boundaries quantize the quasi-momentum on the grid k(l) = l*pi/(N+1),
l = 1..N, so every k lies strictly inside (0, pi).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ChainTooShort, NonPositiveFrequency, OutOfNormalPhase

ETA_MAX = 0.25  # ferromagnetic transition of the normalised Ising coupling

CANONICAL_TOL = 1e-12


class ApproximationTag(Enum):
    """Which diagonalization scheme produced a spectrum or coefficient set."""

    FERMION_EXACT = "fermion_exact"
    BOSE = "bose"
    HOLSTEIN_PRIMAKOFF1 = "hp1"
    HOLSTEIN_PRIMAKOFF1_FULL_LM = "hp1_full"

    @property
    def column_suffix(self) -> str:
        return {"fermion_exact": "fermion", "bose": "bose",
                "hp1": "hp1", "hp1_full": "hp1_full"}[self.value]


BOSONIC_TAGS = (
    ApproximationTag.BOSE,
    ApproximationTag.HOLSTEIN_PRIMAKOFF1,
    ApproximationTag.HOLSTEIN_PRIMAKOFF1_FULL_LM,
)


@dataclass(frozen=True)
class ChainParams:
    """Matter-sector configuration.

    n_dipoles: number of dipoles N (>= 2).
    omega0:    transition frequency (> 0, sets the energy unit).
    eta:       dimensionless Ising coupling J/omega0, |eta| <= 0.25.
    """

    n_dipoles: int
    omega0: float
    eta: float

    def __post_init__(self):
        if int(self.n_dipoles) != self.n_dipoles or self.n_dipoles < 2:
            raise ChainTooShort(f"n_dipoles must be an integer >= 2, got {self.n_dipoles}")
        if not self.omega0 > 0:
            raise NonPositiveFrequency(f"omega0 must be > 0, got {self.omega0}")
        if abs(self.eta) > ETA_MAX:
            raise OutOfNormalPhase(
                f"|eta| = {abs(self.eta)} exceeds the normal-phase bound {ETA_MAX}"
            )

    @property
    def j(self) -> float:
        """Ising coupling in energy units."""
        return self.eta * self.omega0


def validate(params: ChainParams) -> ChainParams:
    """Re-run the invariant checks; total and idempotent."""
    return ChainParams(params.n_dipoles, params.omega0, params.eta)


@dataclass(frozen=True)
class MomentumGrid:
    """Open-chain momentum grid k(l) = l*pi/(N+1), l = 1..N."""

    n: int
    l: np.ndarray = field(repr=False)
    k: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.n


def pekar_grid(params: ChainParams) -> MomentumGrid:
    """Full momentum grid for the chain; k strictly increasing in (0, pi)."""
    n = params.n_dipoles
    l = np.arange(1, n + 1)
    return MomentumGrid(n=n, l=l, k=l * (np.pi / (n + 1)))


@dataclass(frozen=True)
class BogoliubovPair:
    """One mode's Bogoliubov coefficients.

    statistics "fermionic": alpha^2 + beta^2 = 1 (rotation);
    statistics "bosonic":   alpha^2 - beta^2 = 1 (squeeze).
    Bosonic pairs use the convention b_k = alpha*d_k + beta*d^+_{-k}.
    """

    k: float
    alpha: float
    beta: float
    statistics: str

    def __post_init__(self):
        if self.statistics == "fermionic":
            err = abs(self.alpha**2 + self.beta**2 - 1.0)
        elif self.statistics == "bosonic":
            err = abs(self.alpha**2 - self.beta**2 - 1.0)
        else:
            raise ValueError(f"unknown statistics {self.statistics!r}")
        if err > CANONICAL_TOL:
            raise ValueError(
                f"canonical relation violated by {err:.2e} for {self.statistics} pair"
            )


@dataclass(frozen=True)
class ModeSpectrum:
    """Per-mode single-particle energies plus the ground-state energy."""

    tag: ApproximationTag
    params: ChainParams
    energies: np.ndarray = field(repr=False)
    ground_energy: float = 0.0

    def __post_init__(self):
        if len(self.energies) != self.params.n_dipoles:
            raise ValueError("energies must align with the momentum grid")
        if np.any(self.energies < 0) or np.any(~np.isfinite(self.energies)):
            raise ValueError("single-particle energies must be finite and >= 0")
