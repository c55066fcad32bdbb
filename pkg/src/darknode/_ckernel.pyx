# cython: language_level=3
"""Compiled adaptive integrator for the adiabatic-frame amplitude equations.

Mirrors ``_pykernel`` operation for operation; see that module for the
state layout and the model vector.
"""

from libc.math cimport sin, cos, exp, sqrt, fabs, pow, M_PI

cdef enum:
    NY = 7

cdef double SQRT2 = sqrt(2.0)

ctypedef struct Model:
    int kind
    double z0, v, direction, omega_T, cos_th, sin_th, rho0, waist0
    double alpha0, T0, tW, r0, g0, delta


cdef Model _unpack(double[:] m):
    cdef Model md
    md.kind = <int> m[0]
    md.z0 = m[1]
    md.v = m[2]
    md.direction = m[3]
    md.omega_T = m[4]
    md.cos_th = m[5]
    md.sin_th = m[6]
    md.rho0 = m[7]
    md.waist0 = m[8]
    md.alpha0 = m[9]
    md.T0 = m[10]
    md.tW = m[11]
    md.r0 = m[12]
    md.g0 = m[13]
    md.delta = m[14]
    return md


cdef inline double _chi(double t, Model* md) nogil:
    cdef double z, rho, zr, w2, s
    if md.kind == 0:
        z = md.z0 + md.direction * md.v * t
        return sin(2.0 * M_PI * z)
    if md.kind == 1:
        z = md.z0 + md.direction * md.v / md.omega_T * sin(md.omega_T * t)
        return sin(2.0 * M_PI * z)
    z = md.z0 + md.v * md.cos_th * t
    s = md.v * md.sin_th * t
    rho = md.rho0 * md.rho0 + s * s
    zr = M_PI * md.waist0 * md.waist0
    w2 = md.waist0 * md.waist0 * (1.0 + (z / zr) * (z / zr))
    return md.waist0 / sqrt(w2) * exp(-rho / w2) * sin(2.0 * M_PI * z)


cdef inline void _rhs(double t, double* y, Model* md, double* dy) nogil:
    cdef double d = t - md.T0
    cdef double a = md.alpha0 * exp(-(d * d) / (md.tW * md.tW))
    cdef double ad = -2.0 * d / (md.tW * md.tW) * a
    cdef double ra = md.r0 * a
    cdef double K = md.r0 * ad / (SQRT2 * (1.0 + ra * ra))
    cdef double eps = _chi(t, md) * md.g0 * sqrt(1.0 + ra * ra)
    cdef double phi = y[6]
    cdef double thp = phi + md.delta * t
    cdef double thm = -phi + md.delta * t
    cdef double cp = cos(thp), sp = sin(thp)
    cdef double cm = cos(thm), sm = sin(thm)
    cdef double c0r = y[0], c0i = y[1], cpr = y[2], cpi = y[3], cmr = y[4], cmi = y[5]
    cdef double c2, s2, xr, xi, hd
    # C0' = -K (C+ e^{-i th+} + C- e^{-i th-})
    dy[0] = -K * ((cpr * cp + cpi * sp) + (cmr * cm + cmi * sm))
    dy[1] = -K * ((cpi * cp - cpr * sp) + (cmi * cm - cmr * sm))
    # C+' = K C0 e^{i th+}, C-' = K C0 e^{i th-}
    dy[2] = K * (c0r * cp - c0i * sp)
    dy[3] = K * (c0i * cp + c0r * sp)
    dy[4] = K * (c0r * cm - c0i * sm)
    dy[5] = K * (c0i * cm + c0r * sm)
    if md.delta != 0.0:
        hd = 0.5 * md.delta
        c2 = cos(2.0 * phi)
        s2 = sin(2.0 * phi)
        # + i delta/2 (C- e^{2i phi} + C+)
        xr = cmr * c2 - cmi * s2 + cpr
        xi = cmi * c2 + cmr * s2 + cpi
        dy[2] += -hd * xi
        dy[3] += hd * xr
        # + i delta/2 (C+ e^{-2i phi} + C-)
        xr = cpr * c2 + cpi * s2 + cmr
        xi = cpi * c2 - cpr * s2 + cmi
        dy[4] += -hd * xi
        dy[5] += hd * xr
    dy[6] = eps


def rhs(double t, double[:] y, double[:] model):
    """Derivative of the 7-component real state at time ``t``."""
    cdef Model md = _unpack(model)
    cdef double yy[NY]
    cdef double dy[NY]
    cdef int i
    for i in range(NY):
        yy[i] = y[i]
    _rhs(t, yy, &md, dy)
    return [dy[i] for i in range(NY)]


# Dormand-Prince 5(4) tableau
cdef double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0
cdef double A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = -71.0 / 57600.0, E3 = 71.0 / 16695.0, E4 = -71.0 / 1920.0
cdef double E5 = 17253.0 / 339200.0, E6 = -22.0 / 525.0, E7 = 1.0 / 40.0

cdef double SAFETY = 0.9, MIN_FACTOR = 0.2, MAX_FACTOR = 10.0
cdef double H_UNDERFLOW = 1e-15


def integrate(double[:] y0, double t0, double t1, double[:] model,
              double rtol, double atol, double hmax, double h0, long max_steps):
    """Integrate from ``t0`` to ``t1``.

    Returns ``(y, steps, rejected, max_norm_drift, status, t_reached)`` with
    status 0 = ok, 1 = step-size underflow, 2 = step budget exhausted.
    """
    cdef Model md = _unpack(model)
    cdef double y[NY]
    cdef double yn[NY]
    cdef double tmp[NY]
    cdef double k1[NY]
    cdef double k2[NY]
    cdef double k3[NY]
    cdef double k4[NY]
    cdef double k5[NY]
    cdef double k6[NY]
    cdef double k7[NY]
    cdef double t = t0, h = h0, err, sc, e, factor, norm0, norm, drift = 0.0
    cdef long steps = 0, rejected = 0
    cdef int i, status = 0

    for i in range(NY):
        y[i] = y0[i]
    norm0 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3] + y[4] * y[4] + y[5] * y[5]
    if h > hmax:
        h = hmax
    _rhs(t, y, &md, k1)

    with nogil:
        while t < t1:
            if steps >= max_steps:
                status = 2
                break
            if t1 - t <= 1e-14 * (1.0 + fabs(t1)):
                t = t1
                break
            if h < H_UNDERFLOW:
                status = 1
                break
            if t + h > t1:
                h = t1 - t

            for i in range(NY):
                tmp[i] = y[i] + h * A21 * k1[i]
            _rhs(t + C2 * h, tmp, &md, k2)
            for i in range(NY):
                tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
            _rhs(t + C3 * h, tmp, &md, k3)
            for i in range(NY):
                tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
            _rhs(t + C4 * h, tmp, &md, k4)
            for i in range(NY):
                tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
            _rhs(t + C5 * h, tmp, &md, k5)
            for i in range(NY):
                tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i]
                                     + A64 * k4[i] + A65 * k5[i])
            _rhs(t + h, tmp, &md, k6)
            for i in range(NY):
                yn[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i]
                                    + B5 * k5[i] + B6 * k6[i])
            _rhs(t + h, yn, &md, k7)

            err = 0.0
            for i in range(NY):
                e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i]
                         + E6 * k6[i] + E7 * k7[i])
                sc = atol + rtol * (fabs(y[i]) if fabs(y[i]) > fabs(yn[i]) else fabs(yn[i]))
                err += (e / sc) * (e / sc)
            err = sqrt(err / NY)

            if err <= 1.0:
                t = t + h
                for i in range(NY):
                    y[i] = yn[i]
                    k1[i] = k7[i]
                steps += 1
                norm = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]
                        + y[4] * y[4] + y[5] * y[5])
                if fabs(norm - norm0) > drift:
                    drift = fabs(norm - norm0)
                if err == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = SAFETY * pow(err, -0.2)
                    if factor > MAX_FACTOR:
                        factor = MAX_FACTOR
                h = h * factor
                if h > hmax:
                    h = hmax
            else:
                rejected += 1
                factor = SAFETY * pow(err, -0.2)
                if factor < MIN_FACTOR:
                    factor = MIN_FACTOR
                h = h * factor

    return [y[i] for i in range(NY)], steps, rejected, drift, status, t
