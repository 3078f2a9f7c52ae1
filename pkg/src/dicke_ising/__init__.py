"""Excitation spectra of the transverse-field dipole chain and its cavity polaritons.

Three matter-sector diagonalizations (exact fermionic, Bose approximation,
first-order Holstein-Primakoff), the Hopfield polariton problem of the chain
coupled to a linear cavity branch, and dense-diagonalization oracles that
cross-check every analytic formula.
"""

__version__ = "0.1.0"

from .chain import (ApproximationTag, BogoliubovPair, ChainParams, ETA_MAX,
                    ModeSpectrum, MomentumGrid, pekar_grid, validate)
from .errors import (ChainTooShort, ComplexEnergy, ComplexPolariton,
                     CutoffUnconverged, DegenerateBranches,
                     DegenerateNormalization, DickeIsingError, DomainError,
                     NoConvergence, NoCrossing, NonPositiveFrequency,
                     OutOfNormalPhase, ParamsMismatch, ResonanceDivergence,
                     TooLarge, ValidationError)
from .ising import (bose_bogoliubov, bose_energy, bose_ground_energy,
                    fermion_bogoliubov, fermion_energy, fermion_ground_energy,
                    mode_spectrum, virtual_population)
from .hp1 import (HP1Solution, hp1_coefficients_numeric,
                  hp1_coefficients_perturbative, hp1_energy,
                  hp1_energy_perturbative, hp1_ground_energy,
                  hp1_numeric_spectrum, hp1_solution_perturbative, kernels_eval,
                  pair_residual)
from .cavity import (CavityParams, FiniteSizeCorrection, HopfieldMatrix,
                     PolaritonMode, branch_energies, crossing_point,
                     effective_coupling, finite_size_correction,
                     ground_state_energy, hopfield_coefficients,
                     hopfield_matrix, no_go_margin, photon_frequency,
                     polariton_energies, polariton_perturbative,
                     renormalized_cavity, saturation_ratio,
                     saturation_ratio_numeric)
from .oracle import (DenseSpectrum, bdg_spin_chain, ed_dicke_ising,
                     ed_spin_chain, many_body_from_quasiparticles)

__all__ = [
    "ApproximationTag", "BogoliubovPair", "ChainParams", "ETA_MAX",
    "ModeSpectrum", "MomentumGrid", "pekar_grid", "validate",
    "bose_bogoliubov", "bose_energy", "bose_ground_energy",
    "fermion_bogoliubov", "fermion_energy", "fermion_ground_energy",
    "mode_spectrum", "virtual_population",
    "HP1Solution", "hp1_coefficients_numeric", "hp1_coefficients_perturbative",
    "hp1_energy", "hp1_energy_perturbative", "hp1_ground_energy",
    "hp1_numeric_spectrum", "hp1_solution_perturbative", "kernels_eval",
    "pair_residual",
    "CavityParams", "FiniteSizeCorrection", "HopfieldMatrix", "PolaritonMode",
    "branch_energies", "crossing_point", "effective_coupling",
    "finite_size_correction", "ground_state_energy", "hopfield_coefficients",
    "hopfield_matrix", "no_go_margin", "photon_frequency", "polariton_energies",
    "polariton_perturbative", "renormalized_cavity", "saturation_ratio",
    "saturation_ratio_numeric",
    "DenseSpectrum", "bdg_spin_chain", "ed_dicke_ising", "ed_spin_chain",
    "many_body_from_quasiparticles",
    "DickeIsingError", "ValidationError", "DomainError", "ChainTooShort",
    "NonPositiveFrequency", "OutOfNormalPhase", "ComplexEnergy",
    "ComplexPolariton", "CutoffUnconverged", "DegenerateBranches",
    "DegenerateNormalization", "NoConvergence", "NoCrossing", "ParamsMismatch",
    "ResonanceDivergence", "TooLarge",
]
