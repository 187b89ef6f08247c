"""Physical constants, energy-spin operators and the truncated-rotor model.

Every module in the package consumes the same small set of SI constants,
plus the water-rotor quantities of the two-level truncation:

* the 2x2 energy-spin matrices ``s1, s2, s3`` over the basis (|e>, |g>),
  obeying ``[s_i, s_j] = i eps_ijk s_k`` with entries +-1/2, +-i/2,
* the rotational gap ``eps_w`` of water, fixed by the wavenumber
  ``eps_w / (hbar c) ~= 160 cm^-1 = 1.6e4 m^-1``,
* the coherence length ``l_c = 2 pi hbar c / eps_w ~= 400 um`` (the
  wavelength of a resonant photon),
* the truncated dipole operator ``d_tr = (-d0 s1, -d0 s2, 0)`` and the
  semi-classical coupling ``H_int = -A . d_tr_dot`` against a classical
  radiation field.

All quantities are plain SI floats with documented units; there is no
runtime unit system.  A ``NATURAL`` constant set (hbar = eps0 = c = kB = 1)
is provided for dimensionless dynamics scenes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy import constants as sp

from .errors import ValidationError

# Rotational two-level gap of water as a wavenumber, eps_w / (hbar c) [m^-1].
WATER_GAP_WAVENUMBER = 1.6e4

# Spatial-superposition decoherence time of migrated ions in a firing
# neuron [s].  Imported as a constant; never derived here.
NEURAL_DECOHERENCE_TIME = 1e-20


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants used throughout, overridable from CLI configs."""

    hbar: float = sp.hbar          # J s
    k_B: float = sp.k              # J/K
    eps0: float = sp.epsilon_0     # F/m
    mu0: float = sp.mu_0           # H/m
    c: float = sp.c                # m/s
    eps_w: float = WATER_GAP_WAVENUMBER * sp.hbar * sp.c   # J, water rotational gap
    t_dec: float = NEURAL_DECOHERENCE_TIME                 # s

    def __post_init__(self):
        for name in ("hbar", "k_B", "eps0", "mu0", "c", "eps_w", "t_dec"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"constant {name} must be strictly positive")
        wavenumber = self.eps_w / (self.hbar * self.c)
        if abs(wavenumber / WATER_GAP_WAVENUMBER - 1.0) > 0.01:
            raise ValidationError(
                "eps_w/(hbar c) = %.4g m^-1 deviates from the water gap "
                "1.6e4 m^-1 by more than 1%%" % wavenumber
            )

    def with_overrides(self, **kwargs) -> "PhysicalConstants":
        return replace(self, **kwargs)


#: Default SI constant set.
SI = PhysicalConstants()

#: Dimensionless set for normalized dynamics scenes: hbar = eps0 = c = kB = 1,
#: gap kept at the same wavenumber so the invariant check still holds.
NATURAL = PhysicalConstants(
    hbar=1.0, k_B=1.0, eps0=1.0, mu0=1.0, c=1.0,
    eps_w=WATER_GAP_WAVENUMBER, t_dec=NEURAL_DECOHERENCE_TIME,
)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinMatrices:
    """Energy-spin 2x2 matrices over (|e>, |g>); Hermitian, traceless."""

    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray

    def as_tuple(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.s1, self.s2, self.s3)


def energy_spin_matrices() -> SpinMatrices:
    """Pseudo-spin-1/2 generators of the two-level energy space.

    Basis order is (|e>, |g>), so s3 = diag(1/2, -1/2).
    """
    s1 = _readonly(np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex))
    s2 = _readonly(np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex))
    s3 = _readonly(np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex))
    return SpinMatrices(s1, s2, s3)


def coherence_length(consts: PhysicalConstants = SI) -> float:
    """Resonance wavelength l_c = 2 pi hbar c / eps_w [m] (~400 um for water)."""
    if consts.eps_w <= 0.0:
        raise ValidationError("eps_w must be positive")
    return 2.0 * np.pi * consts.hbar * consts.c / consts.eps_w


@dataclass(frozen=True)
class RotorModel:
    """Two-level truncation of the rotating water molecule.

    ``h_free`` is the 4x4 free Hamiltonian (eps_w/2) diag(1,1,1,-1) over
    (|1,1>, |1,0>, |1,-1>, |0,0|); ``d_tr`` the truncated dipole triple in
    the 2-space; ``a_ext`` a classical radiation amplitude [V s/m].
    """

    d_tilde0: float                      # dipole constant [C m]
    h_free: np.ndarray                   # 4x4 real diagonal [J]
    d_tr: tuple[np.ndarray, np.ndarray, np.ndarray]   # 2x2 complex [C m]
    a_ext: np.ndarray                    # 3-vector [V s/m]


def make_rotor_model(d_tilde0: float, a_ext,
                     consts: PhysicalConstants = SI) -> RotorModel:
    spins = energy_spin_matrices()
    h_free = _readonly(0.5 * consts.eps_w * np.diag([1.0, 1.0, 1.0, -1.0]))
    d_tr = (
        _readonly(-d_tilde0 * spins.s1),
        _readonly(-d_tilde0 * spins.s2),
        _readonly(np.zeros((2, 2), dtype=complex)),
    )
    a = np.asarray(a_ext, dtype=float)
    if a.shape != (3,):
        raise ValidationError("a_ext must be a 3-vector")
    return RotorModel(d_tilde0=d_tilde0, h_free=h_free, d_tr=d_tr,
                      a_ext=_readonly(a))


def dipole_velocity(model: RotorModel,
                    consts: PhysicalConstants = SI) -> tuple[np.ndarray, ...]:
    """Heisenberg dipole velocity (i/hbar) [eps_w s3, d_tr] componentwise.

    The free part restricted to the 2-space acts as eps_w * s3; the
    additive constant drops from the commutator.
    """
    s3 = energy_spin_matrices().s3
    h2 = consts.eps_w * s3
    return tuple(
        (1j / consts.hbar) * (h2 @ comp - comp @ h2) for comp in model.d_tr
    )


def rotor_hamiltonians(model: RotorModel,
                       consts: PhysicalConstants = SI
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Free 4x4 Hamiltonian and 2x2 interaction H_int = -a_ext . d_tr_dot."""
    d_dot = dipole_velocity(model, consts)
    h_int = -sum(model.a_ext[i] * d_dot[i] for i in range(3))
    return model.h_free, h_int
