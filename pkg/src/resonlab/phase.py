"""Cavity-free superradiance thresholds and the (rho, T) phase diagram.

A two-level medium resonantly coupled to radiation condenses into a
coherent ground state when the quasi-particle density exceeds

    rho_c = 2 eps0 eps / (pol . d10)^2

and the temperature stays below

    T_c(rho) = eps / (k_B ln((rho + rho_c) / (rho - rho_c))),   rho > rho_c,

for gap eps, transition dipole d10 and photon polarization pol.  Both
inequalities are strict: boundary points classify as normal, and
rho <= rho_c is normal at any temperature (T_c is undefined there).

Classification depends only on the normalized coordinates
(rho / rho_c, k_B T / eps); grids are emitted in those units.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import SI, PhysicalConstants
from .errors import ValidationError


class Phase(str, enum.Enum):
    SUPERRADIANT = "superradiant"
    NORMAL = "normal"


@dataclass(frozen=True)
class QuasiParticleSpec:
    """Two-level quasi-particle coupled to one resonant photon mode."""

    eps_gap: float   # two-level gap eps = hbar * Omega [J]
    d10: tuple[float, float, float]   # transition dipole [C m]
    pol: tuple[float, float, float]   # photon polarization (unit vector)

    def __post_init__(self):
        if not self.eps_gap > 0.0:
            raise ValidationError("eps_gap must be positive")
        pol = np.asarray(self.pol, dtype=float)
        d10 = np.asarray(self.d10, dtype=float)
        if pol.shape != (3,) or d10.shape != (3,):
            raise ValidationError("pol and d10 must be 3-vectors")
        if abs(float(np.linalg.norm(pol)) - 1.0) > 1e-12:
            raise ValidationError("pol must be a unit vector (|pol| = 1 within 1e-12)")

    @property
    def pol_dot_d10(self) -> float:
        return float(np.dot(self.pol, self.d10))


@dataclass(frozen=True)
class PhasePoint:
    rho: float       # [m^-3]
    T: float         # [K]
    phase: Phase


def critical_density(spec: QuasiParticleSpec,
                     consts: PhysicalConstants = SI) -> float:
    """Threshold density rho_c = 2 eps0 eps / (pol . d10)^2 [m^-3]."""
    coupling = spec.pol_dot_d10
    if coupling == 0.0:
        raise ValidationError(
            "pol is orthogonal to d10: threshold density is infinite"
        )
    return 2.0 * consts.eps0 * spec.eps_gap / coupling**2


def critical_temperature(rho: float, rho_c: float, eps_gap: float,
                         consts: PhysicalConstants = SI) -> float:
    """Boil-off temperature T_c(rho) [K]; defined only for rho > rho_c."""
    if not rho > rho_c:
        raise ValidationError(
            "rho <= rho_c: no superradiance at any temperature"
        )
    return eps_gap / (consts.k_B * math.log((rho + rho_c) / (rho - rho_c)))


def classify_phase(rho: float, T: float, spec: QuasiParticleSpec,
                   consts: PhysicalConstants = SI) -> PhasePoint:
    """Strict two-condition classification; ties resolve to normal."""
    if rho < 0.0 or T < 0.0:
        raise ValidationError("rho and T must be non-negative")
    rho_c = critical_density(spec, consts)
    if rho > rho_c and T < critical_temperature(rho, rho_c, spec.eps_gap, consts):
        return PhasePoint(rho, T, Phase.SUPERRADIANT)
    return PhasePoint(rho, T, Phase.NORMAL)


@dataclass(frozen=True)
class PhaseDiagram:
    """Grid classification in normalized coordinates.

    ``superradiant[i, j]`` corresponds to ``rho_over_rhoc[i]``,
    ``kT_over_eps[j]``.
    """

    rho_over_rhoc: np.ndarray    # (nx,)
    kT_over_eps: np.ndarray      # (ny,)
    superradiant: np.ndarray     # (nx, ny) bool

    def iter_rows(self):
        """Yield (rho_over_rhoc, kT_over_eps, phase) row-major."""
        for i, r in enumerate(self.rho_over_rhoc):
            for j, t in enumerate(self.kT_over_eps):
                phase = Phase.SUPERRADIANT if self.superradiant[i, j] else Phase.NORMAL
                yield float(r), float(t), phase


def phase_diagram(spec: QuasiParticleSpec, rho_grid, T_grid,
                  consts: PhysicalConstants = SI) -> PhaseDiagram:
    """Classify every (rho, T) grid point; grids are absolute SI values.

    Uses the same scalar comparisons as :func:`classify_phase`, so shared
    points agree exactly.
    """
    rho = np.asarray(rho_grid, dtype=float)
    T = np.asarray(T_grid, dtype=float)
    if rho.size == 0 or T.size == 0:
        raise ValidationError("grids must be non-empty")
    if np.any(np.diff(rho) <= 0.0) or np.any(np.diff(T) <= 0.0):
        raise ValidationError("grids must be strictly ascending")
    if rho[0] < 0.0 or T[0] < 0.0:
        raise ValidationError("rho and T must be non-negative")

    rho_c = critical_density(spec, consts)
    above = rho > rho_c
    tc = np.full(rho.shape, -np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (rho[above] + rho_c) / (rho[above] - rho_c)
        tc[above] = spec.eps_gap / (consts.k_B * np.log(ratio))
    sr = above[:, None] & (T[None, :] < tc[:, None])

    return PhaseDiagram(
        rho_over_rhoc=rho / rho_c,
        kT_over_eps=consts.k_B * T / spec.eps_gap,
        superradiant=sr,
    )
