# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step integration kernels.

Mirrors _reference.py operation-for-operation; keep the two files in sync
so the backends stay bitwise interchangeable.
"""

from libc.math cimport cos, sin, exp, tan, fabs, isfinite

import numpy as np

KIND_CONSTANT = 0
KIND_OSCILLATORY = 1
KIND_POWER_LAW = 2
KIND_EXPONENTIAL = 3

GEO_DONE = 0
GEO_DOMAIN_EXIT = 1
GEO_DRIFT_FAIL = 2


cdef inline double _intensity(int kind, double g, double lam, double t) noexcept nogil:
    cdef double u
    if kind == 0:
        return g
    if kind == 1:
        return g * cos(lam * t)
    if kind == 2:
        u = 1.0 + lam * t
        return g / (u * u)
    return g * exp(-lam * t)


cdef inline void _prop_deriv(int kind, double g, double lam, double phase_rate,
                             double long_rate, double t,
                             double ar, double ai, double br, double bi,
                             double* d) noexcept nogil:
    cdef double wh = _intensity(kind, g, lam, t)
    cdef double ph = phase_rate * t
    cdef double wr = wh * cos(ph)
    cdef double wi = wh * sin(ph)
    d[0] = long_rate * ai - wi * br + wr * bi
    d[1] = -long_rate * ar + wr * br + wi * bi
    d[2] = wi * ar - wr * ai + long_rate * bi
    d[3] = -wr * ar - wi * ai - long_rate * br


def propagator_rk4(int kind, double g, double lam, double phase_rate,
                   double long_rate, double t_max, double dt,
                   Py_ssize_t record_every=1):
    """See _reference.propagator_rk4."""
    cdef Py_ssize_t n = max(1, <Py_ssize_t>(t_max / dt + 0.5))
    cdef double h = t_max / n

    cdef Py_ssize_t n_rec = n // record_every + 1
    if n % record_every:
        n_rec += 1
    t_arr = np.empty(n_rec)
    a_arr = np.empty(n_rec, dtype=np.complex128)
    b_arr = np.empty(n_rec, dtype=np.complex128)
    cdef double[::1] t_out = t_arr
    cdef double complex[::1] a_out = a_arr
    cdef double complex[::1] b_out = b_arr

    cdef double ar = 1.0, ai = 0.0, br = 0.0, bi = 0.0
    cdef double k1[4]
    cdef double k2[4]
    cdef double k3[4]
    cdef double k4[4]
    cdef double t, t1, drift
    cdef double max_drift = 0.0
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef Py_ssize_t i, j = 1

    t_out[0] = 0.0
    a_out[0] = 1.0
    b_out[0] = 0.0

    with nogil:
        for i in range(1, n + 1):
            t = (i - 1) * h
            _prop_deriv(kind, g, lam, phase_rate, long_rate, t, ar, ai, br, bi, k1)
            _prop_deriv(kind, g, lam, phase_rate, long_rate, t + half,
                        ar + half * k1[0], ai + half * k1[1],
                        br + half * k1[2], bi + half * k1[3], k2)
            _prop_deriv(kind, g, lam, phase_rate, long_rate, t + half,
                        ar + half * k2[0], ai + half * k2[1],
                        br + half * k2[2], bi + half * k2[3], k3)
            t1 = i * h
            _prop_deriv(kind, g, lam, phase_rate, long_rate, t1,
                        ar + h * k3[0], ai + h * k3[1],
                        br + h * k3[2], bi + h * k3[3], k4)
            ar = ar + sixth * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
            ai = ai + sixth * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
            br = br + sixth * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
            bi = bi + sixth * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])

            drift = fabs(ar * ar + ai * ai + br * br + bi * bi - 1.0)
            if drift > max_drift:
                max_drift = drift

            if i % record_every == 0 or i == n:
                t_out[j] = t1
                a_out[j].real = ar
                a_out[j].imag = ai
                b_out[j].real = br
                b_out[j].imag = bi
                j += 1

    return t_arr[:j], a_arr[:j], b_arr[:j], max_drift


cdef inline double _geo_coeff(int kind, double lam, double th) noexcept nogil:
    if kind == 0:
        return 0.0
    if kind == 1:
        return lam * tan(lam * th)
    if kind == 2:
        return 2.0 * lam / (1.0 + lam * th)
    return lam


cdef inline double _speed_factor(int kind, double lam, double th) noexcept nogil:
    cdef double u
    if kind == 0:
        return 1.0
    if kind == 1:
        return fabs(cos(lam * th))
    if kind == 2:
        u = 1.0 + lam * th
        return 1.0 / (u * u)
    return exp(-lam * th)


def geodesic_rk4(int kind, double lam, double theta0, double thetadot0,
                 double xi0, double xi_max, double dxi,
                 Py_ssize_t record_every=1, double blowup_ratio=1e4,
                 double drift_tol=1e-6):
    """See _reference.geodesic_rk4."""
    cdef Py_ssize_t n = max(1, <Py_ssize_t>((xi_max - xi0) / dxi + 0.5))
    cdef double h = (xi_max - xi0) / n

    cdef Py_ssize_t n_rec = n // record_every + 3
    xi_arr = np.empty(n_rec)
    th_arr = np.empty(n_rec)
    td_arr = np.empty(n_rec)
    cdef double[::1] xi_out = xi_arr
    cdef double[::1] th_out = th_arr
    cdef double[::1] td_out = td_arr

    cdef double th = theta0, td = thetadot0
    cdef double v0 = _speed_factor(kind, lam, theta0) * thetadot0
    cdef double cap = blowup_ratio * max(fabs(thetadot0), 1e-300)
    cdef int status = GEO_DONE
    cdef double max_drift = 0.0
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef double k1t, k1d, k2t, k2d, k3t, k3d, k4t, k4d
    cdef double t2, t3, t4, th_new, td_new, drift
    cdef Py_ssize_t i, j = 1, last_rec = 0, i_done = 0

    xi_out[0] = xi0
    th_out[0] = theta0
    td_out[0] = thetadot0

    with nogil:
        for i in range(1, n + 1):
            k1t = td
            k1d = _geo_coeff(kind, lam, th) * td * td
            t2 = td + half * k1d
            k2t = t2
            k2d = _geo_coeff(kind, lam, th + half * k1t) * t2 * t2
            t3 = td + half * k2d
            k3t = t3
            k3d = _geo_coeff(kind, lam, th + half * k2t) * t3 * t3
            t4 = td + h * k3d
            k4t = t4
            k4d = _geo_coeff(kind, lam, th + h * k3t) * t4 * t4
            th_new = th + sixth * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
            td_new = td + sixth * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)

            if (not isfinite(th_new)) or (not isfinite(td_new)) or fabs(td_new) > cap:
                status = 1  # GEO_DOMAIN_EXIT
                break

            drift = fabs(_speed_factor(kind, lam, th_new) * td_new / v0 - 1.0)
            if drift > drift_tol:
                if fabs(td_new) > 10.0 * fabs(thetadot0):
                    status = 1  # GEO_DOMAIN_EXIT
                else:
                    status = 2  # GEO_DRIFT_FAIL
                break
            if drift > max_drift:
                max_drift = drift

            th = th_new
            td = td_new
            i_done = i
            if i % record_every == 0 or i == n:
                xi_out[j] = xi0 + i * h
                th_out[j] = th
                td_out[j] = td
                last_rec = i
                j += 1

    if i_done and last_rec != i_done:
        xi_out[j] = xi0 + i_done * h
        th_out[j] = th
        td_out[j] = td
        j += 1

    return xi_arr[:j], th_arr[:j], td_arr[:j], status, max_drift
