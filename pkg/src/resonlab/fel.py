"""Steady state of the collective wave-particle instability in myelinated axons.

The saturated transverse field modulus and the gain time of the ion-solvated
water laser mechanism follow two closed power laws in the ion density rho and
the permanent water polarization P_z:

    A0 = c_A * rho^(2/3) * P_z^(1/3),     c_A ~= 2.6e-22 SI
    t  = c_t * rho^(-1/3) * P_z^(-2/3),   c_t ~= 8.1e-5  SI

with rho = N/V for the sodium ions migrated during one action potential in
the volume V ~= pi l_a^2 l_r / 4 of a single myelin run.  The bundled preset
(axon diameter 10 um, run length 1 mm, 1e6 ions over 100 sheaths,
P_z ~= 4.9e-7) reproduces A0 ~= 5.1e-13 and t ~= 2.6e-6 s, the latter of the
same order as the 1 mm / (150 m/s) ~= 6.7e-6 s conduction timescale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

# Fitted steady-state prefactors, taken verbatim (opaque; derived in the
# source references, not re-derived here).
C_A = 2.6e-22   # m^3 kg s^-2 A^-1
C_T = 8.1e-5    # m^-1 s


@dataclass(frozen=True)
class AxonPreset:
    """Neuronal parameter set; defaults are the published working point."""

    l_a: float = 1.0e-5       # axon diameter [m]
    l_r: float = 1.0e-3       # myelin run length [m]
    n_ms: int = 100           # myelin sheaths per axon (50..100 typical)
    N_total: float = 1.0e6    # Na+ migrated per action potential, all sheaths
    v_cond: float = 150.0     # conduction velocity [m/s]
    dU: float = 0.1           # firing-resting potential difference [V]
    E0z: float = 100.0        # axial static field dU/l_r [V/m]
    P_z: float = 4.9e-7       # permanent water polarization (dimensionless)

    def __post_init__(self):
        for name in ("l_a", "l_r", "v_cond", "dU", "E0z", "P_z"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"preset field {name} must be positive")
        if self.n_ms < 1:
            raise ValidationError("n_ms must be a positive count")
        if self.N_total < 0.0:
            raise ValidationError("N_total must be non-negative")


#: Parameter set behind the published numbers (n_ms at the upper end of the
#: 50..100 range, which matches them most closely).
PAPER_PRESET = AxonPreset()


@dataclass(frozen=True)
class SteadyState:
    """Saturated field modulus and gain time at a working point."""

    rho: float        # ion number density [m^-3]
    P_z: float        # polarization used
    A0: float         # saturated transverse field modulus [V s/m]
    t_gain: float     # gain time [s]
    c_A: float = C_A
    c_t: float = C_T


def ion_density(preset: AxonPreset) -> float:
    """Na+ number density per myelin run, rho = (N_total/n_ms) / (pi l_a^2 l_r / 4)."""
    volume = math.pi * preset.l_a**2 * preset.l_r / 4.0
    if volume <= 0.0:
        raise ValidationError("run volume must be positive")
    return (preset.N_total / preset.n_ms) / volume


def steady_state(rho: float, P_z: float) -> SteadyState:
    """Evaluate the two steady-state power laws at (rho, P_z)."""
    if not rho > 0.0:
        raise ValidationError("rho must be positive")
    if not 0.0 < P_z <= 1.0:
        raise ValidationError("P_z must lie in (0, 1]")
    A0 = C_A * rho ** (2.0 / 3.0) * P_z ** (1.0 / 3.0)
    t_gain = C_T * rho ** (-1.0 / 3.0) * P_z ** (-2.0 / 3.0)
    return SteadyState(rho=rho, P_z=P_z, A0=A0, t_gain=t_gain)


def conduction_time(preset: AxonPreset) -> float:
    """Dynamical timescale of propagation over one run, l_r / v_cond [s]."""
    return preset.l_r / preset.v_cond


def gain_ratio(state: SteadyState, preset: AxonPreset) -> float:
    """Gain time over conduction time; ~0.39 for the bundled preset."""
    return state.t_gain / conduction_time(preset)
