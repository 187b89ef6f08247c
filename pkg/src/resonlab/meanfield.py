"""Mean-field dynamics of resonant photon modes coupled to energy spins.

The expectation-value closure of the Heisenberg equations for a coherence
domain couples complex mode amplitudes ``<q_k>, <p_k>`` (one per member of
a +-k-paired resonant mode set, reality constraint ``q_{-k} = conj(q_k)``)
to one real classical spin 3-vector per element:

    qdot_k  =  Omega p_{-k} - sum_i lambda_{k,i} s1_i e^{-i k.x_i}
    pdot_{-k} = -Omega q_k + sum_i lambda_{k,i} s2_i e^{-i k.x_i}
    s1dot_i = -Omega s2_i - sum_k lambda_{k,i} q_{-k} s3_i e^{-i k.x_i}
    s2dot_i =  Omega s1_i + sum_k lambda_{k,i} p_k  s3_i e^{-i k.x_i}
    s3dot_i =  sum_k lambda_{k,i} (q_{-k} s1_i - p_k s2_i) e^{-i k.x_i}

with coupling ``lambda_{k,i} = -sqrt(Omega/(eps0 hbar V)) pol_k . d10_i``.
Spin sums are taken real after +-k pairing (for elements away from the
origin the paired sum is real exactly when the reality constraint holds;
the explicit real part fixes the convention).

The flow is Hamiltonian: it conserves the energy

    H = (hbar/2) sum_k Omega (p_{-k} p_k + q_k q_{-k}) + eps_gap sum_i s3_i
        - hbar sum_{k,i} lambda_{k,i} (q_{-k} s2_i + p_k s1_i) e^{-i k.x_i}

and every spin norm, and commutes with the global U(1) rotation that mixes
(q, p) and (s1, s2).  The spontaneously broken stationary family

    <q_k> = (v sin(theta0)/Omega) sum_i lambda_{k,i} e^{-i k.x_i}
    <p_{-k}> = (v cos(theta0)/Omega) sum_i lambda_{k,i} e^{-i k.x_i}
    s1 = v cos(theta0),  s2 = v sin(theta0),
    s3_i = -Omega^2 / sum_k lambda_{k,i} sum_j lambda_{k,j} e^{-i k.(x_i-x_j)}

is an exact fixed point for any (v, theta0); members differing in theta0
are related by the U(1) transformation.

Integration is fixed-step RK4 with the reality constraint re-symmetrized
each step, dispatched to a compiled kernel when available (see
``resonlab._kernels``).  A convenient normalized setup uses
``constants.NATURAL`` (hbar = eps0 = c = 1) with Omega = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import _kernels, _meanfield_py
from .constants import SI, PhysicalConstants
from .errors import NumericalError, ValidationError
from .phase import QuasiParticleSpec

#: Tolerance on the reality constraint q_{-k} = conj(q_k).
REALITY_TOL = 1e-10
#: Allowed spin-norm excess over 1/2.
SPIN_NORM_TOL = 1e-9
#: Resolution guard: dt * Omega must stay below this.
RESOLUTION_GUARD = 0.1
#: Relative tolerance on |k| = Omega / c.
RESONANCE_RTOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ModeSet:
    """Resonant +-k-paired photon modes and their element couplings."""

    k_vectors: np.ndarray    # (K, 3) [1/m]
    pols: np.ndarray         # (K, 3) unit polarization per mode
    omega: float             # common resonance angular frequency [rad/s]
    volume: float            # domain volume [m^3]
    lambdas: np.ndarray      # (K, I) couplings [1/s]
    positions: np.ndarray    # (I, 3) element positions [m]
    pair: np.ndarray         # (K,) index of the -k partner
    phases: np.ndarray       # (K, I) exp(-i k . x_i)

    @property
    def n_modes(self) -> int:
        return self.k_vectors.shape[0]

    @property
    def n_elements(self) -> int:
        return self.positions.shape[0]

    @property
    def lam_phase(self) -> np.ndarray:
        """lambda_{k,i} exp(-i k.x_i), the matrix the kernels consume."""
        return self.lambdas * self.phases


class MeanFieldDerivative(NamedTuple):
    q: np.ndarray
    p: np.ndarray
    spins: np.ndarray


@dataclass(frozen=True)
class MeanFieldState:
    """Dynamical snapshot: mode amplitudes, spins, positions, time."""

    q: np.ndarray          # (K,) complex <q_k>
    p: np.ndarray          # (K,) complex <p_k>
    spins: np.ndarray      # (I, 3) real
    positions: np.ndarray  # (I, 3) [m]
    time: float = 0.0      # [s]

    def __post_init__(self):
        q = _readonly(np.array(self.q, dtype=complex))
        p = _readonly(np.array(self.p, dtype=complex))
        spins = _readonly(np.array(self.spins, dtype=float))
        positions = _readonly(np.array(self.positions, dtype=float))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "spins", spins)
        object.__setattr__(self, "positions", positions)
        if q.ndim != 1 or p.shape != q.shape:
            raise ValidationError("q and p must be 1-D arrays of equal length")
        if spins.ndim != 2 or spins.shape[1] != 3:
            raise ValidationError("spins must have shape (n_elements, 3)")
        if positions.shape != spins.shape:
            raise ValidationError("positions must have shape (n_elements, 3)")
        norms = np.linalg.norm(spins, axis=1)
        if np.any(norms > 0.5 + SPIN_NORM_TOL):
            raise ValidationError(
                f"spin norm {norms.max():.12f} exceeds 1/2"
            )

    def spin_norms(self) -> np.ndarray:
        return np.linalg.norm(self.spins, axis=1)

    def reality_defect(self, m: "ModeSet") -> float:
        dq = np.max(np.abs(self.q[m.pair] - np.conj(self.q)), initial=0.0)
        dp = np.max(np.abs(self.p[m.pair] - np.conj(self.p)), initial=0.0)
        return float(max(dq, dp))


@dataclass(frozen=True)
class VevAnsatz:
    """Constants (v, theta0) of the broken-symmetry stationary family."""

    v_amp: float
    theta0: float

    def __post_init__(self):
        if self.v_amp < 0.0:
            raise ValidationError("v_amp must be non-negative")
        if not 0.0 <= self.theta0 < 2.0 * np.pi:
            raise ValidationError("theta0 must lie in [0, 2 pi)")


def paired_k_vectors(directions, omega: float,
                     consts: PhysicalConstants = SI) -> np.ndarray:
    """Stack +-(Omega/c) k_hat pairs for the given direction list."""
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    norms = np.linalg.norm(dirs, axis=1)
    if np.any(norms == 0.0):
        raise ValidationError("mode directions must be non-zero")
    unit = dirs / norms[:, None]
    k_mag = omega / consts.c
    return np.concatenate([k_mag * unit, -k_mag * unit], axis=0)


def make_modes(specs, positions, volume: float, k_list,
               pols=None, consts: PhysicalConstants = SI) -> ModeSet:
    """Assemble a ModeSet, enforcing resonance and +-k pairing.

    ``specs`` is one QuasiParticleSpec shared by every element or a
    sequence with one per element; all gaps must agree (a resonant set has
    a single Omega).  Polarizations default to the spec's photon
    polarization for every mode and must satisfy transversality and the
    parity convention pol(-k) = pol(k).
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    if positions.ndim != 2 or positions.shape[1] != 3:
        raise ValidationError("positions must have shape (n_elements, 3)")
    if isinstance(specs, QuasiParticleSpec):
        specs = [specs] * positions.shape[0]
    specs = list(specs)
    if len(specs) != positions.shape[0]:
        raise ValidationError("one spec per element required")
    if volume <= 0.0:
        raise ValidationError("volume must be positive")

    gaps = np.array([s.eps_gap for s in specs])
    if np.any(np.abs(gaps / gaps[0] - 1.0) > 1e-12):
        raise ValidationError("all elements must share one resonance gap")
    omega = gaps[0] / consts.hbar

    k = np.atleast_2d(np.asarray(k_list, dtype=float))
    if k.shape[1] != 3:
        raise ValidationError("k_list must have shape (n_modes, 3)")
    k_mag = np.linalg.norm(k, axis=1)
    target = omega / consts.c
    if np.any(np.abs(k_mag / target - 1.0) > RESONANCE_RTOL):
        raise ValidationError(
            "off-resonance mode: every |k| must equal Omega/c within 1e-9"
        )

    if pols is None:
        pols = np.tile(np.asarray(specs[0].pol, dtype=float), (k.shape[0], 1))
    else:
        pols = np.atleast_2d(np.asarray(pols, dtype=float))
        if pols.shape != k.shape:
            raise ValidationError("one polarization per mode required")
    if np.any(np.abs(np.einsum("ki,ki->k", k, pols)) > RESONANCE_RTOL * k_mag):
        raise ValidationError("polarizations must be transverse to k")

    pair = np.full(k.shape[0], -1, dtype=np.intp)
    for a in range(k.shape[0]):
        if pair[a] >= 0:
            continue
        matches = [
            b for b in range(k.shape[0])
            if b != a and pair[b] < 0
            and np.all(np.abs(k[b] + k[a]) <= RESONANCE_RTOL * target)
            and np.all(np.abs(pols[b] - pols[a]) <= 1e-12)
        ]
        if len(matches) != 1:
            raise ValidationError(
                f"mode {a} has no unique -k partner; the mode set must be "
                "closed under k -> -k with equal polarizations"
            )
        pair[a], pair[matches[0]] = matches[0], a

    d10 = np.array([s.d10 for s in specs], dtype=float)          # (I, 3)
    coupl = pols @ d10.T                                         # (K, I)
    lambdas = -np.sqrt(omega / (consts.eps0 * consts.hbar * volume)) * coupl
    phases = np.exp(-1j * (k @ positions.T))                     # (K, I)

    return ModeSet(
        k_vectors=_readonly(k), pols=_readonly(pols), omega=float(omega),
        volume=float(volume), lambdas=_readonly(lambdas),
        positions=_readonly(positions), pair=_readonly(pair),
        phases=_readonly(phases),
    )


def _check_consistent(state: MeanFieldState, m: ModeSet) -> None:
    if state.q.shape[0] != m.n_modes or state.spins.shape[0] != m.n_elements:
        raise ValidationError("state shape does not match the mode set")
    if not np.array_equal(state.positions, m.positions):
        raise ValidationError("state positions differ from the mode set's")
    scale = max(1.0, float(np.max(np.abs(state.q), initial=0.0)),
                float(np.max(np.abs(state.p), initial=0.0)))
    if state.reality_defect(m) > REALITY_TOL * scale:
        raise ValidationError(
            "reality constraint q_{-k} = conj(q_k) violated beyond 1e-10"
        )


def eom_rhs(state: MeanFieldState, m: ModeSet) -> MeanFieldDerivative:
    """Time derivative of the mean-field system at ``state``."""
    _check_consistent(state, m)
    qdot, pdot, sdot = _meanfield_py.rhs(
        state.q, state.p, state.spins, m.omega, m.lam_phase, m.pair
    )
    return MeanFieldDerivative(q=qdot, p=pdot, spins=sdot)


def integrate(state: MeanFieldState, m: ModeSet, dt: float, steps: int,
              record_every: int = 1) -> list[MeanFieldState]:
    """Fixed-step RK4 trajectory; deterministic, first entry is ``state``.

    The resolution guard requires dt * Omega < 0.1; the reality constraint
    is re-symmetrized after every step.
    """
    _check_consistent(state, m)
    if steps < 0 or record_every < 1:
        raise ValidationError("steps must be >= 0 and record_every >= 1")
    if dt <= 0.0 or dt * m.omega >= RESOLUTION_GUARD:
        raise ValidationError(
            f"resolution guard: dt * Omega = {dt * m.omega:.3g} must be "
            f"positive and < {RESOLUTION_GUARD}; try dt <= "
            f"{0.05 / m.omega:.3e}"
        )
    q_traj, p_traj, s_traj = _kernels.rk4_trajectory(
        state.q, state.p, state.spins, m.lam_phase, m.pair, m.omega,
        dt, steps, record_every,
    )
    return [
        MeanFieldState(
            q=q_traj[r], p=p_traj[r], spins=s_traj[r],
            positions=m.positions, time=state.time + r * record_every * dt,
        )
        for r in range(q_traj.shape[0])
    ]


def hamiltonian(state: MeanFieldState, m: ModeSet,
                consts: PhysicalConstants = SI) -> float:
    """Conserved energy of the mean-field flow [J]."""
    _check_consistent(state, m)
    q_minus = state.q[m.pair]
    p_minus = state.p[m.pair]
    field = 0.5 * m.omega * np.sum(p_minus * state.p + state.q * q_minus)
    spin = m.omega * np.sum(state.spins[:, 2])
    lam_phase = m.lam_phase
    inter = np.sum(lam_phase.T @ q_minus * state.spins[:, 1]
                   + lam_phase.T @ state.p * state.spins[:, 0])
    return consts.hbar * float(np.real(field + spin - inter))


def u1_transform(state: MeanFieldState, theta: float,
                 m: ModeSet) -> MeanFieldState:
    """Global U(1) rotation mixing (q, p_{-k}) and (s1, s2); s3 fixed."""
    _check_consistent(state, m)
    c, s = np.cos(theta), np.sin(theta)
    p_minus = state.p[m.pair]
    q_new = state.q * c - p_minus * s
    p_minus_new = state.q * s + p_minus * c
    p_new = np.empty_like(state.p)
    p_new[m.pair] = p_minus_new
    spins = state.spins.copy()
    spins[:, 0] = state.spins[:, 0] * c + state.spins[:, 1] * s
    spins[:, 1] = -state.spins[:, 0] * s + state.spins[:, 1] * c
    return replace(state, q=q_new, p=p_new, spins=spins)


def stationary_state(ansatz: VevAnsatz, m: ModeSet) -> MeanFieldState:
    """Exact fixed point of the flow for constants (v, theta0).

    Raises NumericalError when the geometric coupling sum
    sum_k lambda_{k,i} sum_j lambda_{k,j} e^{-i k.(x_i - x_j)} vanishes for
    some element (degenerate geometry).  Note the resulting spins must be
    physical: the coupling must be strong enough that
    v^2 + (Omega^2 / |sum|)^2 <= 1/4.
    """
    lam_phase = m.lam_phase
    mode_sums = lam_phase.sum(axis=1)                       # (K,)
    denom = lam_phase.T @ np.conj(mode_sums)                # (I,)
    denom_re = np.real(denom)
    scale = float(np.max(np.abs(lam_phase), initial=0.0)) ** 2 * m.n_modes
    if np.any(np.abs(np.imag(denom)) > 1e-10 * max(scale, 1e-300)):
        raise NumericalError("geometric coupling sum is not real; "
                             "mode set is not +-k closed")
    if np.any(np.abs(denom_re) <= 1e-14 * max(scale, 1e-300)):
        raise NumericalError(
            "degenerate geometry: the coupling sum vanishes for an element"
        )
    v, th = ansatz.v_amp, ansatz.theta0
    q = (v * np.sin(th) / m.omega) * mode_sums
    p = np.empty_like(q)
    p[m.pair] = (v * np.cos(th) / m.omega) * mode_sums
    spins = np.empty((m.n_elements, 3))
    spins[:, 0] = v * np.cos(th)
    spins[:, 1] = v * np.sin(th)
    spins[:, 2] = -m.omega**2 / denom_re
    return MeanFieldState(q=q, p=p, spins=spins, positions=m.positions,
                          time=0.0)


def field_profile(state: MeanFieldState, m: ModeSet,
                  consts: PhysicalConstants = SI, points=None) -> np.ndarray:
    """Classical vector potential A_c(x) at the given points [V s/m].

    A_c(x) = Re sum_k sqrt(hbar/(eps0 Omega V)) <q_k> pol_k e^{i k.x}.
    """
    _check_consistent(state, m)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != 3:
        raise ValidationError("points must have shape (n_points, 3)")
    amp = np.sqrt(consts.hbar / (consts.eps0 * m.omega * m.volume))
    waves = np.exp(1j * (pts @ m.k_vectors.T))              # (P, K)
    return np.real(waves * state.q[None, :] * amp) @ m.pols
