"""Pure-Python adaptive integrator for the adiabatic-frame amplitude equations.

Fallback for ``_ckernel``; both implement the same Dormand-Prince 5(4)
scheme with identical step control so their results agree to rounding.

State layout ``y`` (7 reals)::

    [Re C0, Im C0, Re C+, Im C+, Re C-, Im C-, Phi]

where ``Phi(t) = int_0^t eps dt'`` is the dynamical phase of the bright
states. Model vector layout (see ``dynamics.model_vector``)::

    [kind, z0, v, direction, omega_T, cos(theta), sin(theta), rho0, waist0,
     alpha0, T0, tW, r0, g0, delta]

with kind 0 = constant velocity, 1 = harmonic, 2 = 3D straight line.
"""

import math

NY = 7
SQRT2 = math.sqrt(2.0)
TWO_PI = 2.0 * math.pi

C2, C3, C4, C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63 = 9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0
A64, A65 = 49.0 / 176.0, -5103.0 / 18656.0
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
E1, E3, E4 = -71.0 / 57600.0, 71.0 / 16695.0, -71.0 / 1920.0
E5, E6, E7 = 17253.0 / 339200.0, -22.0 / 525.0, 1.0 / 40.0

SAFETY, MIN_FACTOR, MAX_FACTOR = 0.9, 0.2, 10.0
H_UNDERFLOW = 1e-15


def _make_rhs(model):
    kind = int(model[0])
    z0, v, direction, omega_T, cos_th, sin_th, rho0, waist0 = (float(x) for x in model[1:9])
    alpha0, T0, tW, r0, g0, delta = (float(x) for x in model[9:15])
    tw2 = tW * tW
    zr = math.pi * waist0 * waist0

    if kind == 0:

        def chi(t):
            return math.sin(2.0 * math.pi * (z0 + direction * v * t))

    elif kind == 1:

        def chi(t):
            return math.sin(2.0 * math.pi * (z0 + direction * v / omega_T * math.sin(omega_T * t)))

    else:

        def chi(t):
            z = z0 + v * cos_th * t
            s = v * sin_th * t
            rho = rho0 * rho0 + s * s
            w2 = waist0 * waist0 * (1.0 + (z / zr) * (z / zr))
            return waist0 / math.sqrt(w2) * math.exp(-rho / w2) * math.sin(2.0 * math.pi * z)

    def rhs(t, y):
        d = t - T0
        a = alpha0 * math.exp(-(d * d) / tw2)
        ad = -2.0 * d / tw2 * a
        ra = r0 * a
        K = r0 * ad / (SQRT2 * (1.0 + ra * ra))
        eps = chi(t) * g0 * math.sqrt(1.0 + ra * ra)
        phi = y[6]
        thp = phi + delta * t
        thm = -phi + delta * t
        cp, sp = math.cos(thp), math.sin(thp)
        cm, sm = math.cos(thm), math.sin(thm)
        c0r, c0i, cpr, cpi, cmr, cmi = y[0], y[1], y[2], y[3], y[4], y[5]
        dy = [
            -K * ((cpr * cp + cpi * sp) + (cmr * cm + cmi * sm)),
            -K * ((cpi * cp - cpr * sp) + (cmi * cm - cmr * sm)),
            K * (c0r * cp - c0i * sp),
            K * (c0i * cp + c0r * sp),
            K * (c0r * cm - c0i * sm),
            K * (c0i * cm + c0r * sm),
            eps,
        ]
        if delta != 0.0:
            hd = 0.5 * delta
            c2 = math.cos(2.0 * phi)
            s2 = math.sin(2.0 * phi)
            xr = cmr * c2 - cmi * s2 + cpr
            xi = cmi * c2 + cmr * s2 + cpi
            dy[2] += -hd * xi
            dy[3] += hd * xr
            xr = cpr * c2 + cpi * s2 + cmr
            xi = cpi * c2 - cpr * s2 + cmi
            dy[4] += -hd * xi
            dy[5] += hd * xr
        return dy

    return rhs


def rhs(t, y, model):
    """Derivative of the 7-component real state at time ``t``."""
    return _make_rhs(model)(float(t), [float(x) for x in y])


def integrate(y0, t0, t1, model, rtol, atol, hmax, h0, max_steps):
    """Integrate from ``t0`` to ``t1``.

    Returns ``(y, steps, rejected, max_norm_drift, status, t_reached)`` with
    status 0 = ok, 1 = step-size underflow, 2 = step budget exhausted.
    """
    f = _make_rhs(model)
    y = [float(x) for x in y0]
    t, h = float(t0), min(float(h0), float(hmax))
    rng = range(NY)
    norm0 = sum(y[i] * y[i] for i in range(6))
    drift = 0.0
    steps = rejected = status = 0
    k1 = f(t, y)

    while t < t1:
        if steps >= max_steps:
            status = 2
            break
        if t1 - t <= 1e-14 * (1.0 + abs(t1)):
            t = t1
            break
        if h < H_UNDERFLOW:
            status = 1
            break
        if t + h > t1:
            h = t1 - t

        k2 = f(t + C2 * h, [y[i] + h * A21 * k1[i] for i in rng])
        k3 = f(t + C3 * h, [y[i] + h * (A31 * k1[i] + A32 * k2[i]) for i in rng])
        k4 = f(t + C4 * h, [y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]) for i in rng])
        k5 = f(
            t + C5 * h,
            [y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]) for i in rng],
        )
        k6 = f(
            t + h,
            [
                y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
                for i in rng
            ],
        )
        yn = [
            y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
            for i in rng
        ]
        k7 = f(t + h, yn)

        err = 0.0
        for i in rng:
            e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(yn[i]))
            err += (e / sc) * (e / sc)
        err = math.sqrt(err / NY)

        if err <= 1.0:
            t = t + h
            y, k1 = yn, k7
            steps += 1
            norm = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3] + y[4] * y[4] + y[5] * y[5]
            drift = max(drift, abs(norm - norm0))
            factor = MAX_FACTOR if err == 0.0 else min(MAX_FACTOR, SAFETY * err**-0.2)
            h = min(h * factor, hmax)
        else:
            rejected += 1
            h = h * max(MIN_FACTOR, SAFETY * err**-0.2)

    return y, steps, rejected, drift, status, t
