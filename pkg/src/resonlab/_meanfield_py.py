"""Pure-python (numpy) kernel for the mean-field spin-boson integrator.

Reference semantics for the compiled twin in ``_meanfield_cy``: the two
kernels implement the same equations and re-symmetrization, and may differ
only in floating-point summation order.

State layout: complex mode amplitudes ``q, p`` of shape (K,), real spins
``s`` of shape (I, 3).  ``lam_phase[k, i] = lambda_{k,i} exp(-i k.x_i)``
and ``pair[k]`` is the index of the ``-k`` partner mode.

Equations of motion (expectation-value closure of the Heisenberg system,
hbar = 1, spin sums taken real after +-k pairing):

    qdot_k   = Omega p_{-k} - sum_i lam_phase[k,i] s1_i
    pdot_k   = -Omega q_{-k} + sum_i conj(lam_phase)[k,i] s2_i
    alpha_i  = Re sum_k lam_phase[k,i] q_{-k}
    beta_i   = Re sum_k lam_phase[k,i] p_k
    s1dot_i  = -Omega s2_i - alpha_i s3_i
    s2dot_i  =  Omega s1_i + beta_i s3_i
    s3dot_i  =  alpha_i s1_i - beta_i s2_i
"""

from __future__ import annotations

import numpy as np

KERNEL_NAME = "python"


def rhs(q, p, s, omega, lam_phase, pair):
    """Time derivatives (qdot, pdot, sdot) of the mean-field system."""
    q_minus = q[pair]
    p_minus = p[pair]
    s1, s2, s3 = s[:, 0], s[:, 1], s[:, 2]
    qdot = omega * p_minus - lam_phase @ s1.astype(complex)
    pdot = -omega * q_minus + np.conj(lam_phase) @ s2.astype(complex)
    alpha = np.real(lam_phase.T @ q_minus)
    beta = np.real(lam_phase.T @ p)
    sdot = np.empty_like(s)
    sdot[:, 0] = -omega * s2 - alpha * s3
    sdot[:, 1] = omega * s1 + beta * s3
    sdot[:, 2] = alpha * s1 - beta * s2
    return qdot, pdot, sdot


def _symmetrize(q, pair):
    return 0.5 * (q + np.conj(q[pair]))


def rk4_trajectory(q0, p0, s0, lam_phase, pair, omega, dt, steps,
                   record_every=1):
    """Fixed-step RK4 trajectory with per-step reality re-symmetrization.

    Returns (q_traj, p_traj, s_traj) with the initial state in row 0 and a
    row every ``record_every`` steps (the final step is always recorded
    when ``steps`` is a multiple of ``record_every``).
    """
    q = np.array(q0, dtype=complex)
    p = np.array(p0, dtype=complex)
    s = np.array(s0, dtype=float)
    n_rec = steps // record_every + 1
    q_traj = np.empty((n_rec, q.size), dtype=complex)
    p_traj = np.empty((n_rec, p.size), dtype=complex)
    s_traj = np.empty((n_rec,) + s.shape, dtype=float)
    q_traj[0], p_traj[0], s_traj[0] = q, p, s

    row = 1
    for step in range(1, steps + 1):
        k1q, k1p, k1s = rhs(q, p, s, omega, lam_phase, pair)
        k2q, k2p, k2s = rhs(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p,
                            s + 0.5 * dt * k1s, omega, lam_phase, pair)
        k3q, k3p, k3s = rhs(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p,
                            s + 0.5 * dt * k2s, omega, lam_phase, pair)
        k4q, k4p, k4s = rhs(q + dt * k3q, p + dt * k3p,
                            s + dt * k3s, omega, lam_phase, pair)
        q = q + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        p = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        s = s + (dt / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        q = _symmetrize(q, pair)
        p = _symmetrize(p, pair)
        if step % record_every == 0:
            q_traj[row], p_traj[row], s_traj[row] = q, p, s
            row += 1
    return q_traj[:row], p_traj[:row], s_traj[:row]
