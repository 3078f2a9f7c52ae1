"""Photonic sector and polariton diagonalization.

The cavity branch is parametrized by its slope delta = omega_BZ / omega0:
omega(k) = omega0 * delta * k / pi on the dimensionless zone (0, pi).  The
photon self-interaction (strength Omega0^2 / omega0, with Omega0 = nu*omega0
the collective coupling) renormalizes it to

    omega~(k) = sqrt(omega(k)^2 + 4 Omega0^2),
    Omega~(k) = Omega0 * sqrt(omega0 / omega~(k)),

after which one cavity mode couples to one matter mode with strength
Lambda(k) = Omega~(k) * F(k), F = alpha - beta the matter quadrature weight.
The quadratic problem per mode is the 4x4 metric eigenproblem built by
`hopfield_matrix`; its positive eigenvalues have the closed form

    E_pm^2 = (omega~^2 + E^2 +- D) / 2,
    D = sqrt((omega~^2 - E^2)^2 + 16 Lambda^2 omega~ E).

The lower branch stays positive exactly while F <= sqrt(E/omega0); the Bose
matter sector saturates that bound, the first-order Holstein-Primakoff one
sits below it by eta^2/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain import (ApproximationTag, BOSONIC_TAGS, BogoliubovPair, ChainParams,
                    pekar_grid)
from .errors import (ComplexPolariton, DegenerateBranches, NoCrossing,
                     ResonanceDivergence, ValidationError)
from .hp1 import (HP1Solution, _beta_at, hp1_coefficients_numeric,
                  hp1_energy_perturbative, hp1_ground_energy)
from .ising import _bose_alpha_beta, bose_energy, bose_ground_energy

RESONANCE_GUARD = 1e-6
DEGENERACY_GUARD = 1e-12


@dataclass(frozen=True)
class CavityParams:
    """Light-matter configuration on top of a validated chain."""

    nu: float           # collective coupling Omega0 / omega0
    delta: float        # cavity slope omega_BZ / omega0
    chain: ChainParams
    tag: ApproximationTag = ApproximationTag.HOLSTEIN_PRIMAKOFF1

    def __post_init__(self):
        if self.nu < 0:
            raise ValidationError(f"nu must be >= 0, got {self.nu}")
        if not self.delta > 0:
            raise ValidationError(f"delta must be > 0, got {self.delta}")
        if self.tag not in BOSONIC_TAGS:
            raise ValidationError(
                "cavity coupling needs a bosonic matter sector; "
                f"got tag {self.tag}"
            )

    @property
    def omega0(self) -> float:
        return self.chain.omega0

    @property
    def collective_coupling(self) -> float:
        return self.nu * self.chain.omega0


@dataclass(frozen=True)
class HopfieldMatrix:
    """4x4 mixing matrix in the basis [a_k, d_k, a^+_{-k}, d^+_{-k}]."""

    omega_tilde: float
    matter_energy: float
    coupling: float
    entries: np.ndarray = field(repr=False)
    metric: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class PolaritonMode:
    """Lower/upper branch energies and (optionally) Hopfield coefficients."""

    k: float
    lower: float
    upper: float
    tag: ApproximationTag
    coeffs: dict | None = None

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper):
            raise ValueError(
                f"branch ordering violated: lower={self.lower}, upper={self.upper}"
            )
        if self.coeffs is not None:
            for sign in ("minus", "plus"):
                norm = (self.coeffs[f"x_{sign}"] ** 2 + self.coeffs[f"y_{sign}"] ** 2
                        - self.coeffs[f"w_{sign}"] ** 2 - self.coeffs[f"z_{sign}"] ** 2)
                if abs(norm - 1.0) > 1e-10:
                    raise ValueError(f"bosonic normalization off by {norm - 1.0:.2e}")


def photon_frequency(k, cavity: CavityParams):
    """Bare cavity dispersion, linear up to omega_BZ = delta * omega0 at k = pi."""
    return cavity.omega0 * cavity.delta * np.asarray(k) / np.pi


def renormalized_cavity(k, cavity: CavityParams):
    """(omega~, Omega~) after absorbing the photon self-interaction."""
    om = photon_frequency(k, cavity)
    om0 = cavity.collective_coupling
    omt = np.sqrt(om * om + 4 * om0 * om0)  # > 0 for every k in (0, pi)
    coupling = om0 * np.sqrt(cavity.omega0 / omt)
    if np.ndim(k) == 0:
        return float(omt), float(coupling)
    return omt, coupling


def _matter_energy_weight(k, cavity: CavityParams):
    """(E_matter, F = alpha - beta) for the configured bosonic scheme.

    The first-order Holstein-Primakoff weight keeps the consistent
    second-order polynomial 1 + eta cos k + eta^2 (1/2 - 3 cos^2 k / 2):
    substituting alpha = sqrt(1 + beta^2) instead would inject an incomplete
    O(eta^3) piece that pushes F above the stability bound sqrt(E/omega0)
    near eta = 0.25, k -> pi.
    """
    chain = cavity.chain
    if cavity.tag is ApproximationTag.BOSE:
        e = bose_energy(k, chain)
        alpha, beta = _bose_alpha_beta(k, chain)
        return e, alpha - beta
    e = hp1_energy_perturbative(k, chain)
    eta, c = chain.eta, np.cos(k)
    return e, 1.0 + eta * c + eta * eta * (0.5 - 1.5 * c * c)


def effective_coupling(k: float, cavity: CavityParams,
                       matter_pair: BogoliubovPair) -> float:
    """Lambda = Omega~(k) * (alpha - beta) for a bosonic matter pair."""
    if matter_pair.statistics != "bosonic":
        raise ValidationError("effective coupling needs a bosonic matter pair")
    _, coupling_tilde = renormalized_cavity(k, cavity)
    return float(coupling_tilde * (matter_pair.alpha - matter_pair.beta))


def hopfield_matrix(omega_tilde: float, matter_energy: float,
                    coupling: float) -> HopfieldMatrix:
    """Build the 4x4 mixing matrix; its spectrum is {+-E_minus, +-E_plus}."""
    wt, e, lam = float(omega_tilde), float(matter_energy), float(coupling)
    entries = np.array([
        [wt, -lam, 0.0, lam],
        [-lam, e, lam, 0.0],
        [0.0, -lam, -wt, lam],
        [-lam, 0.0, lam, -e],
    ])
    return HopfieldMatrix(omega_tilde=wt, matter_energy=e, coupling=lam,
                          entries=entries, metric=np.diag([1.0, 1.0, -1.0, -1.0]))


def branch_energies(omega_tilde, matter_energy, coupling):
    """Closed-form (E_minus, E_plus) of the 4x4 problem, vectorized.

    E_minus is evaluated through E_minus^2 = (omega~ E (omega~ E - 4 Lambda^2))
    / E_plus^2 to avoid the cancellation in (omega~^2 + E^2 - D)/2.
    """
    wt = np.asarray(omega_tilde, dtype=float)
    e = np.asarray(matter_energy, dtype=float)
    lam = np.asarray(coupling, dtype=float)
    disc = (wt * wt - e * e) ** 2 + 16 * lam * lam * wt * e
    delta_k = np.sqrt(disc)
    upper = np.sqrt((wt * wt + e * e + delta_k) / 2.0)
    prod = wt * e * (wt * e - 4 * lam * lam)
    if np.any(prod < -1e-12 * np.maximum(wt, e) ** 4):
        raise ComplexPolariton("lower branch squared went negative")
    lower = np.sqrt(np.maximum(prod, 0.0)) / upper
    return lower, upper


def polariton_energies(k: float, cavity: CavityParams) -> PolaritonMode:
    """Exact branch energies at one momentum for the configured scheme.

    For the full light-matter scheme the lower branch picks up the
    finite-size shift + nu^2 * omega0 * F(N); the branches otherwise coincide
    with the first-order Holstein-Primakoff ones.
    """
    omt, coupling_tilde = renormalized_cavity(k, cavity)
    e, weight = _matter_energy_weight(k, cavity)
    lam = coupling_tilde * weight
    lower, upper = branch_energies(omt, e, lam)
    lower, upper = float(lower), float(upper)
    if cavity.tag is ApproximationTag.HOLSTEIN_PRIMAKOFF1_FULL_LM:
        corr = finite_size_correction(cavity.chain.n_dipoles, cavity.delta)
        lower += cavity.nu**2 * cavity.omega0 * corr.grid_sum
    return PolaritonMode(k=float(k), lower=lower, upper=upper, tag=cavity.tag)


def hopfield_coefficients(k: float, cavity: CavityParams) -> PolaritonMode:
    """Branch energies plus normalized eigenvector components (x, y, w, z).

    Components follow the closed form of the metric eigenproblem; the y and z
    entries carry the sign that makes each vector an actual eigenvector of
    `hopfield_matrix` (the opposite convention corresponds to the gauge
    Lambda -> -Lambda).  Normalization is x^2 + y^2 - w^2 - z^2 = 1.
    """
    omt, coupling_tilde = renormalized_cavity(k, cavity)
    e, weight = _matter_energy_weight(k, cavity)
    lam = coupling_tilde * weight
    lower, upper = branch_energies(omt, e, lam)
    lower, upper = float(lower), float(upper)
    if upper - lower < DEGENERACY_GUARD * cavity.omega0:
        raise DegenerateBranches(f"|E+ - E-| below guard at k={k}")
    coeffs = {}
    if lam == 0.0:
        # decoupled limit: each branch is purely cavity or purely matter
        matter_lower = e <= omt
        coeffs["x_minus"], coeffs["y_minus"] = (0.0, 1.0) if matter_lower else (1.0, 0.0)
        coeffs["x_plus"], coeffs["y_plus"] = (1.0, 0.0) if matter_lower else (0.0, 1.0)
        coeffs["w_minus"] = coeffs["z_minus"] = 0.0
        coeffs["w_plus"] = coeffs["z_plus"] = 0.0
    else:
        for name, epm in (("minus", lower), ("plus", upper)):
            u = np.array([
                omt + epm,
                -2 * lam * omt / (epm - e),
                -(omt - epm),
                -2 * lam * omt / (epm + e),
            ])
            norm2 = u[0] ** 2 + u[1] ** 2 - u[2] ** 2 - u[3] ** 2
            v = u / math.sqrt(norm2)
            coeffs[f"x_{name}"], coeffs[f"y_{name}"] = float(v[0]), float(v[1])
            coeffs[f"w_{name}"], coeffs[f"z_{name}"] = float(v[2]), float(v[3])
    return PolaritonMode(k=float(k), lower=lower, upper=upper, tag=cavity.tag,
                         coeffs=coeffs)


def polariton_perturbative(k: float, cavity: CavityParams,
                           scheme: ApproximationTag):
    """Second-order branch formulas in eta and nu (resonance denominators).

    scheme selects which matter expansion enters the lower branch; the full
    light-matter scheme adds + nu^2 * F(N) inside the nu^2 bracket.
    """
    if scheme not in BOSONIC_TAGS:
        raise ValidationError(f"perturbative branches need a bosonic scheme, got {scheme}")
    w0 = cavity.omega0
    om = float(photon_frequency(k, cavity))
    if abs(om - w0) < RESONANCE_GUARD * w0:
        raise ResonanceDivergence(
            f"omega(k) within {RESONANCE_GUARD}*omega0 of resonance at k={k}"
        )
    eta, nu = cavity.chain.eta, cavity.nu
    c = math.cos(k)
    denom = om * om - w0 * w0
    upper = om + 2 * w0 * w0 * om * nu * nu / denom
    if scheme is ApproximationTag.BOSE:
        matter = 1 + 2 * eta * c - 2 * eta * eta * c * c
        lower = w0 * matter - 2 * w0**3 * nu * nu / denom
    else:
        matter = 1 + 2 * eta * c + 2 * eta * eta * (1 - c * c)
        bracket = 2 * w0 * w0 / denom
        if scheme is ApproximationTag.HOLSTEIN_PRIMAKOFF1_FULL_LM:
            corr = finite_size_correction(cavity.chain.n_dipoles, cavity.delta)
            bracket -= corr.grid_sum
        lower = w0 * matter - w0 * nu * nu * bracket
    return lower, upper


def no_go_margin(k: float, cavity: CavityParams) -> float:
    """sqrt(E_matter/omega0) - F; >= 0 in the normal phase, 0 for the Bose tag."""
    e, weight = _matter_energy_weight(k, cavity)
    return float(np.sqrt(e / cavity.omega0) - weight)


def saturation_ratio(eta: float) -> float:
    """Second-order saturation of the collective coupling, 1 - eta^2/2.

    This is the ratio of the X-quadrature (b + b^+) weights of the two matter
    schemes; the ground-state population eta^2/2 of virtual excitations eats
    that fraction of the oscillator strength.  Because canonical pairs obey
    (alpha+beta)(alpha-beta) = 1, the conjugate quadrature weight F = alpha -
    beta used in `effective_coupling` scales with the reciprocal 1 + eta^2/2.
    """
    return 1.0 - 0.5 * eta * eta


def saturation_ratio_numeric(params: ChainParams,
                             solution: HP1Solution | None = None,
                             k: float = math.pi / 2) -> float:
    """Nonperturbative saturation ratio from the self-consistent coefficients.

    Evaluates (alpha~ + beta~) / (alpha_B + beta_B) at momentum k (continuous;
    defaults to mid-zone where odd-order corrections cancel).
    """
    if solution is None:
        solution = hp1_coefficients_numeric(params)
    beta = _beta_at(k, solution)
    alpha = math.sqrt(1.0 + beta * beta)
    alpha_b, beta_b = _bose_alpha_beta(k, params)
    return (alpha + beta) / (alpha_b + beta_b)


@dataclass(frozen=True)
class FiniteSizeCorrection:
    """Direct grid sum and log closed form of the retardation correction."""

    n_dipoles: int
    delta: float
    grid_sum: float
    closed_form: float

    @property
    def relative_difference(self) -> float:
        return (self.grid_sum - self.closed_form) / self.closed_form


def finite_size_correction(n_dipoles: int, delta: float) -> FiniteSizeCorrection:
    """F(N): grid sum (1/N) sum_k 1/(2 w_k (1 + w_k)) vs (1/2 delta) log((N+delta)/(1+delta)).

    w_k = delta*l/(N+1) is the bare cavity branch in units of omega0.  The two
    values differ by ~ Euler-Mascheroni/(2 delta) at large N (the closed form
    replaces the harmonic sum by its integral); `relative_difference` reports
    it.  Both vanish for delta -> inf and along the fixed-cavity-length
    thermodynamic limit delta ~ N -> inf.
    """
    if n_dipoles < 1 or delta <= 0:
        raise ValidationError("finite_size_correction needs N >= 1, delta > 0")
    l = np.arange(1, n_dipoles + 1, dtype=float)
    om = delta * l / (n_dipoles + 1)
    terms = 1.0 / (2.0 * om * (1.0 + om) * n_dipoles)
    grid = math.fsum(terms)
    closed = math.log((n_dipoles + delta) / (1.0 + delta)) / (2.0 * delta)
    return FiniteSizeCorrection(n_dipoles=n_dipoles, delta=delta,
                                grid_sum=grid, closed_form=closed)


def crossing_point(cavity: CavityParams, rtol: float = 1e-12) -> float:
    """Momentum where the renormalized cavity branch meets the matter branch.

    Bisection on omega~(k) - E_matter(k) over (0, pi); requires a sign change
    (delta > 1 in practice so the cavity line reaches the matter energy).
    """
    def gap(k: float) -> float:
        omt, _ = renormalized_cavity(k, cavity)
        e, _ = _matter_energy_weight(k, cavity)
        return float(omt - e)

    lo, hi = 1e-9, math.pi - 1e-9
    glo, ghi = gap(lo), gap(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0:
        raise NoCrossing(
            f"cavity branch stays on one side of the matter branch (delta={cavity.delta})"
        )
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        gm = gap(mid)
        if gm == 0.0:
            return mid
        if glo * gm < 0:
            hi = mid
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)


def ground_state_energy(cavity: CavityParams) -> float:
    """Coupled-system ground energy over the grid.

    sum_k (E_minus + E_plus - omega~(k) - E_matter(k)) + matter ground energy,
    accumulated in ascending mode order with compensated summation.
    """
    grid = pekar_grid(cavity.chain)
    terms = []
    for k in grid.k:
        mode = polariton_energies(float(k), cavity)
        omt, _ = renormalized_cavity(float(k), cavity)
        e, _ = _matter_energy_weight(float(k), cavity)
        terms.append(mode.lower + mode.upper - omt - float(e))
    if cavity.tag is ApproximationTag.BOSE:
        e0 = bose_ground_energy(cavity.chain)
    else:
        e0 = hp1_ground_energy(cavity.chain)
    return math.fsum(terms) + e0
