"""Pure-Python reference kernels.

These mirror the compiled Cython kernels operation-for-operation (same
expressions, same evaluation order) so that both backends produce bitwise
identical trajectories on IEEE-754 doubles. Keep the two files in sync.
"""

import math

import numpy as np

KIND_CONSTANT = 0
KIND_OSCILLATORY = 1
KIND_POWER_LAW = 2
KIND_EXPONENTIAL = 3


def _intensity(kind, g, lam, t):
    # transverse driving rate at time t (units of g)
    if kind == KIND_CONSTANT:
        return g
    if kind == KIND_OSCILLATORY:
        return g * math.cos(lam * t)
    if kind == KIND_POWER_LAW:
        u = 1.0 + lam * t
        return g / (u * u)
    return g * math.exp(-lam * t)


def _prop_deriv(kind, g, lam, phase_rate, long_rate, t, ar, ai, br, bi):
    # d/dt of (Re a, Im a, Re b, Im b) for
    #   da/dt = -i*L*a + i*w*conj(b),  db/dt = -i*w*conj(a) - i*L*b
    # with w = intensity(t) * exp(i*phase_rate*t) and L the longitudinal rate.
    wh = _intensity(kind, g, lam, t)
    ph = phase_rate * t
    wr = wh * math.cos(ph)
    wi = wh * math.sin(ph)
    return (
        long_rate * ai - wi * br + wr * bi,
        -long_rate * ar + wr * br + wi * bi,
        wi * ar - wr * ai + long_rate * bi,
        -wr * ar - wi * ai - long_rate * br,
    )


def propagator_rk4(kind, g, lam, phase_rate, long_rate, t_max, dt, record_every=1):
    """Fixed-step classical RK4 for the two-level propagator amplitudes.

    Integrates the four real degrees of freedom of (alpha, beta) from
    (1, 0) at t = 0 to t_max with n = round(t_max/dt) uniform steps; no
    renormalization is applied.  Returns (t, alpha, beta, max_drift) where
    max_drift is the largest |(|alpha|^2 + |beta|^2) - 1| seen at any step.
    """
    n = max(1, int(round(t_max / dt)))
    h = t_max / n

    n_rec = n // record_every + 1
    if n % record_every:
        n_rec += 1
    t_out = np.empty(n_rec)
    a_out = np.empty(n_rec, dtype=np.complex128)
    b_out = np.empty(n_rec, dtype=np.complex128)

    ar, ai, br, bi = 1.0, 0.0, 0.0, 0.0
    t_out[0] = 0.0
    a_out[0] = 1.0
    b_out[0] = 0.0
    j = 1
    max_drift = 0.0
    half = 0.5 * h
    sixth = h / 6.0

    for i in range(1, n + 1):
        t = (i - 1) * h
        k1 = _prop_deriv(kind, g, lam, phase_rate, long_rate, t, ar, ai, br, bi)
        k2 = _prop_deriv(
            kind, g, lam, phase_rate, long_rate, t + half,
            ar + half * k1[0], ai + half * k1[1], br + half * k1[2], bi + half * k1[3],
        )
        k3 = _prop_deriv(
            kind, g, lam, phase_rate, long_rate, t + half,
            ar + half * k2[0], ai + half * k2[1], br + half * k2[2], bi + half * k2[3],
        )
        t1 = i * h
        k4 = _prop_deriv(
            kind, g, lam, phase_rate, long_rate, t1,
            ar + h * k3[0], ai + h * k3[1], br + h * k3[2], bi + h * k3[3],
        )
        ar = ar + sixth * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        ai = ai + sixth * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        br = br + sixth * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        bi = bi + sixth * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])

        drift = abs(ar * ar + ai * ai + br * br + bi * bi - 1.0)
        if drift > max_drift:
            max_drift = drift

        if i % record_every == 0 or i == n:
            t_out[j] = t1
            a_out[j] = complex(ar, ai)
            b_out[j] = complex(br, bi)
            j += 1

    return t_out[:j], a_out[:j], b_out[:j], max_drift


def _geo_coeff(kind, lam, th):
    # theta'' = coeff(theta) * theta'^2
    if kind == KIND_CONSTANT:
        return 0.0
    if kind == KIND_OSCILLATORY:
        return lam * math.tan(lam * th)
    if kind == KIND_POWER_LAW:
        return 2.0 * lam / (1.0 + lam * th)
    return lam


def _speed_factor(kind, lam, th):
    # sqrt(metric) up to the constant coupling prefactor
    if kind == KIND_CONSTANT:
        return 1.0
    if kind == KIND_OSCILLATORY:
        return abs(math.cos(lam * th))
    if kind == KIND_POWER_LAW:
        u = 1.0 + lam * th
        return 1.0 / (u * u)
    return math.exp(-lam * th)


GEO_DONE = 0
GEO_DOMAIN_EXIT = 1
GEO_DRIFT_FAIL = 2


def geodesic_rk4(kind, lam, theta0, thetadot0, xi0, xi_max, dxi,
                 record_every=1, blowup_ratio=1e4, drift_tol=1e-6):
    """Fixed-step RK4 for the optimum-path equation theta'' = c(theta)*theta'^2.

    The conserved speed sqrt(metric)*theta' is the local error monitor:
    every accepted step keeps its relative drift within drift_tol.  A
    drift violation (or the blowup_ratio velocity cap) with a strongly
    grown velocity means the run reached a singular boundary of the
    closed-form domain -> status GEO_DOMAIN_EXIT; a violation at moderate
    velocity means the step cannot track the local curvature -> status
    GEO_DRIFT_FAIL.  Returns (xi, theta, theta_dot, status, max_drift).
    """
    n = max(1, int(round((xi_max - xi0) / dxi)))
    h = (xi_max - xi0) / n

    n_rec = n // record_every + 3  # stride records + final + safety
    xi_out = np.empty(n_rec)
    th_out = np.empty(n_rec)
    td_out = np.empty(n_rec)

    th, td = theta0, thetadot0
    xi_out[0] = xi0
    th_out[0] = theta0
    td_out[0] = thetadot0
    j = 1
    last_rec = 0

    v0 = _speed_factor(kind, lam, theta0) * thetadot0
    cap = blowup_ratio * max(abs(thetadot0), 1e-300)
    status = GEO_DONE
    max_drift = 0.0
    half = 0.5 * h
    sixth = h / 6.0

    i_done = 0
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

        if not (math.isfinite(th_new) and math.isfinite(td_new)) or abs(td_new) > cap:
            status = GEO_DOMAIN_EXIT
            break

        drift = abs(_speed_factor(kind, lam, th_new) * td_new / v0 - 1.0)
        if drift > drift_tol:
            # near a pole the speed monitor fires on the approach itself
            status = GEO_DOMAIN_EXIT if abs(td_new) > 10.0 * abs(thetadot0) else GEO_DRIFT_FAIL
            break
        if drift > max_drift:
            max_drift = drift

        th, td = th_new, td_new
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

    return xi_out[:j], th_out[:j], td_out[:j], status, max_drift
