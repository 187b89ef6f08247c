# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the mean-field spin-boson RK4 integrator.

Same equations and re-symmetrization as ``_meanfield_py`` (the pure-python
fallback); explicit loops over the small mode/element counts remove the
per-step array-dispatch overhead that dominates long trajectories.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

KERNEL_NAME = "cython"

ctypedef cnp.complex128_t cplx
ctypedef cnp.float64_t f64
ctypedef Py_ssize_t idx


cdef void _rhs(cplx[::1] q, cplx[::1] p, f64[:, ::1] s,
               double omega, cplx[:, ::1] lam_phase, idx[::1] pair,
               cplx[::1] qdot, cplx[::1] pdot, f64[:, ::1] sdot) noexcept:
    cdef idx K = q.shape[0]
    cdef idx I = s.shape[0]
    cdef idx k, i
    cdef cplx acc, c
    cdef double alpha, beta
    for k in range(K):
        acc = 0
        for i in range(I):
            acc = acc + lam_phase[k, i] * s[i, 0]
        qdot[k] = omega * p[pair[k]] - acc
        acc = 0
        for i in range(I):
            acc = acc + lam_phase[k, i].conjugate() * s[i, 1]
        pdot[k] = -omega * q[pair[k]] + acc
    for i in range(I):
        alpha = 0.0
        beta = 0.0
        for k in range(K):
            c = lam_phase[k, i]
            alpha = alpha + (c * q[pair[k]]).real
            beta = beta + (c * p[k]).real
        sdot[i, 0] = -omega * s[i, 1] - alpha * s[i, 2]
        sdot[i, 1] = omega * s[i, 0] + beta * s[i, 2]
        sdot[i, 2] = alpha * s[i, 0] - beta * s[i, 1]


def rk4_trajectory(q0, p0, s0, lam_phase, pair, double omega, double dt,
                   long steps, long record_every=1):
    """Fixed-step RK4 trajectory; mirrors the python kernel's contract."""
    cdef cplx[::1] q = np.array(q0, dtype=np.complex128)
    cdef cplx[::1] p = np.array(p0, dtype=np.complex128)
    cdef f64[:, ::1] s = np.array(s0, dtype=np.float64)
    cdef cplx[:, ::1] lp = np.array(lam_phase, dtype=np.complex128, order="C")
    cdef idx[::1] pr = np.array(pair, dtype=np.intp)

    cdef idx K = q.shape[0]
    cdef idx I = s.shape[0]
    cdef idx n_rec = steps // record_every + 1

    q_traj = np.empty((n_rec, K), dtype=np.complex128)
    p_traj = np.empty((n_rec, K), dtype=np.complex128)
    s_traj = np.empty((n_rec, I, 3), dtype=np.float64)
    cdef cplx[:, ::1] qt = q_traj
    cdef cplx[:, ::1] pt = p_traj
    cdef f64[:, :, ::1] st = s_traj

    cdef cplx[::1] k1q = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k2q = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k3q = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k4q = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k1p = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k2p = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k3p = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] k4p = np.empty(K, dtype=np.complex128)
    cdef f64[:, ::1] k1s = np.empty((I, 3), dtype=np.float64)
    cdef f64[:, ::1] k2s = np.empty((I, 3), dtype=np.float64)
    cdef f64[:, ::1] k3s = np.empty((I, 3), dtype=np.float64)
    cdef f64[:, ::1] k4s = np.empty((I, 3), dtype=np.float64)
    cdef cplx[::1] qw = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] pw = np.empty(K, dtype=np.complex128)
    cdef f64[:, ::1] sw = np.empty((I, 3), dtype=np.float64)
    cdef cplx[::1] qn = np.empty(K, dtype=np.complex128)
    cdef cplx[::1] pn = np.empty(K, dtype=np.complex128)

    cdef idx row = 1, step, k, i, a
    cdef double h6 = dt / 6.0

    for k in range(K):
        qt[0, k] = q[k]
        pt[0, k] = p[k]
    for i in range(I):
        for a in range(3):
            st[0, i, a] = s[i, a]

    for step in range(1, steps + 1):
        _rhs(q, p, s, omega, lp, pr, k1q, k1p, k1s)
        for k in range(K):
            qw[k] = q[k] + 0.5 * dt * k1q[k]
            pw[k] = p[k] + 0.5 * dt * k1p[k]
        for i in range(I):
            for a in range(3):
                sw[i, a] = s[i, a] + 0.5 * dt * k1s[i, a]
        _rhs(qw, pw, sw, omega, lp, pr, k2q, k2p, k2s)
        for k in range(K):
            qw[k] = q[k] + 0.5 * dt * k2q[k]
            pw[k] = p[k] + 0.5 * dt * k2p[k]
        for i in range(I):
            for a in range(3):
                sw[i, a] = s[i, a] + 0.5 * dt * k2s[i, a]
        _rhs(qw, pw, sw, omega, lp, pr, k3q, k3p, k3s)
        for k in range(K):
            qw[k] = q[k] + dt * k3q[k]
            pw[k] = p[k] + dt * k3p[k]
        for i in range(I):
            for a in range(3):
                sw[i, a] = s[i, a] + dt * k3s[i, a]
        _rhs(qw, pw, sw, omega, lp, pr, k4q, k4p, k4s)
        for k in range(K):
            q[k] = q[k] + h6 * (k1q[k] + 2.0 * k2q[k] + 2.0 * k3q[k] + k4q[k])
            p[k] = p[k] + h6 * (k1p[k] + 2.0 * k2p[k] + 2.0 * k3p[k] + k4p[k])
        for i in range(I):
            for a in range(3):
                s[i, a] = s[i, a] + h6 * (k1s[i, a] + 2.0 * k2s[i, a]
                                          + 2.0 * k3s[i, a] + k4s[i, a])
        # reality re-symmetrization: q_{-k} = conj(q_k) up to roundoff
        for k in range(K):
            qn[k] = 0.5 * (q[k] + q[pr[k]].conjugate())
            pn[k] = 0.5 * (p[k] + p[pr[k]].conjugate())
        for k in range(K):
            q[k] = qn[k]
            p[k] = pn[k]
        if step % record_every == 0:
            for k in range(K):
                qt[row, k] = q[k]
                pt[row, k] = p[k]
            for i in range(I):
                for a in range(3):
                    st[row, i, a] = s[i, a]
            row += 1
    return q_traj[:row], p_traj[:row], s_traj[:row]
