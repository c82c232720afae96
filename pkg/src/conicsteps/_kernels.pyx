# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels.

Same surface and operation order as ``conicsteps._kernels_py``; see that
module for documentation.  ``conicsteps._backend`` prefers this module when
the extension was built.
"""
from libc.math cimport cos, cosh, fabs, fmod, sin, sinh, sqrt

cdef double TWO_PI = 6.283185307179586476925287
cdef double INF = float("inf")
cdef double _STEP_TOL = 1e-13
cdef int _MAX_HALVINGS = 60


cdef inline double _hyp(double x, double y):
    # Same op sequence as the pure-Python twin (not libm hypot) so the two
    # backends stay bit-identical.
    cdef double ax = fabs(x)
    cdef double ay = fabs(y)
    cdef double t, r
    if ax < ay:
        t = ax
        ax = ay
        ay = t
    if ax == 0.0:
        return 0.0
    r = ay / ax
    return ax * sqrt(1.0 + r * r)


# ---------------------------------------------------------------- residuals

cpdef double ellipse_residual(double a, double b, double x, double y):
    cdef double c = sqrt(a * a - b * b)
    return _hyp(x + c, y) + _hyp(x - c, y) - 2.0 * a


cpdef double parabola_residual(double p, double x, double y):
    return _hyp(x, y - p) - fabs(y + p)


cpdef double hyperbola_residual(double a, double b, double x, double y):
    cdef double c = sqrt(a * a + b * b)
    cdef double d_minus = _hyp(x + c, y)
    cdef double d_plus = _hyp(x - c, y)
    if x > 0.0:
        return d_minus - d_plus - 2.0 * a
    return d_plus - d_minus - 2.0 * a


# ---------------------------------------------------------------- gradients

cpdef tuple ellipse_gradient(double a, double b, double x, double y):
    return (2.0 * x / (a * a), 2.0 * y / (b * b))


cpdef tuple parabola_gradient(double p, double x, double y):
    return (2.0 * x, -4.0 * p)


cpdef tuple hyperbola_gradient(double a, double b, double x, double y):
    return (2.0 * x / (a * a), -2.0 * y / (b * b))


# ----------------------------------------------------------- parametrization

cpdef tuple ellipse_point(double a, double b, double t):
    return (a * cos(t), b * sin(t))


cpdef tuple parabola_point(double p, double t):
    return (t, t * t / (4.0 * p))


cpdef tuple hyperbola_point(double a, double b, int sigma, double t):
    return (sigma * a * cosh(t), b * sinh(t))


# ----------------------------------------------------------- quadratic roots

cpdef tuple quadratic_roots(double A, double B, double C, double merge_sep):
    cdef double disc, thr, thr2, noise, sq, q, r0, r1
    if A == 0.0:
        if B == 0.0:
            return (0, 0.0, 0.0)
        return (1, -C / B, 0.0)
    disc = B * B - 4.0 * A * C
    thr = merge_sep * fabs(A)
    thr2 = thr * thr
    noise = 16.0 * 2.220446049250313e-16 * (B * B + fabs(4.0 * A * C))
    if noise > thr2:
        thr2 = noise
    if disc <= thr2:
        if disc < -thr2:
            return (0, 0.0, 0.0)
        return (1, -B / (2.0 * A), 0.0)
    sq = sqrt(disc)
    if B > 0.0:
        q = -(B + sq) / 2.0
    elif B < 0.0:
        q = -(B - sq) / 2.0
    else:
        q = sq / 2.0
    r0 = q / A
    r1 = C / q
    if r0 <= r1:
        return (2, r0, r1)
    return (2, r1, r0)


cpdef tuple ellipse_ray_coeffs(double a, double b, double ox, double oy,
                               double dx, double dy):
    cdef double aa = a * a
    cdef double bb = b * b
    cdef double A = dx * dx / aa + dy * dy / bb
    cdef double B = 2.0 * (ox * dx / aa + oy * dy / bb)
    cdef double C = ox * ox / aa + oy * oy / bb - 1.0
    return (A, B, C)


cpdef tuple parabola_ray_coeffs(double p, double ox, double oy,
                                double dx, double dy):
    cdef double A = dx * dx
    cdef double B = 2.0 * ox * dx - 4.0 * p * dy
    cdef double C = ox * ox - 4.0 * p * oy
    return (A, B, C)


cpdef tuple hyperbola_ray_coeffs(double a, double b, double ox, double oy,
                                 double dx, double dy):
    cdef double aa = a * a
    cdef double bb = b * b
    cdef double A = dx * dx / aa - dy * dy / bb
    cdef double B = 2.0 * (ox * dx / aa - oy * dy / bb)
    cdef double C = ox * ox / aa - oy * oy / bb - 1.0
    return (A, B, C)


# ----------------------------------------------------------- nearest point

cdef inline double _ellipse_g(double a, double b, double qx, double qy, double t):
    cdef double ct = cos(t)
    cdef double st = sin(t)
    return -(qx - a * ct) * (a * st) + (qy - b * st) * (b * ct)


cpdef tuple ellipse_nearest_param(double a, double b, double qx, double qy,
                                  int grid, int max_iter):
    cdef double best_t = 0.0
    cdef double best_d = INF
    cdef double step = TWO_PI / grid
    cdef double t, px, py, d, ct, st, gv, gp, dt
    cdef int i, halvings
    for i in range(grid):
        t = i * step
        px = a * cos(t)
        py = b * sin(t)
        d = (px - qx) * (px - qx) + (py - qy) * (py - qy)
        if d < best_d:
            best_d = d
            best_t = t
    t = best_t
    for i in range(max_iter):
        ct = cos(t)
        st = sin(t)
        gv = -(qx - a * ct) * (a * st) + (qy - b * st) * (b * ct)
        gp = (-a * a * st * st
              - b * b * ct * ct
              - a * ct * (qx - a * ct)
              - b * st * (qy - b * st))
        if gp == 0.0:
            return (t, 0)
        dt = -gv / gp
        halvings = 0
        while halvings < _MAX_HALVINGS and fabs(_ellipse_g(a, b, qx, qy, t + dt)) > fabs(gv):
            dt *= 0.5
            halvings += 1
        t += dt
        if fabs(dt) <= _STEP_TOL * (1.0 + fabs(t)):
            t = fmod(t, TWO_PI)
            if t < 0.0:
                t += TWO_PI
            return (t, 1)
    return (t, 0)


cdef inline double _parabola_g(double p, double qx, double qy, double t):
    return (qx - t) + (qy - t * t / (4.0 * p)) * (t / (2.0 * p))


cpdef tuple parabola_nearest_param(double p, double qx, double qy,
                                   double lo, double hi, int grid, int max_iter):
    cdef double best_t = lo
    cdef double best_d = INF
    cdef double step = (hi - lo) / (grid - 1)
    cdef double t, px, py, d, gv, gp, dt
    cdef int i, halvings
    for i in range(grid):
        t = lo + i * step
        px = t
        py = t * t / (4.0 * p)
        d = (px - qx) * (px - qx) + (py - qy) * (py - qy)
        if d < best_d:
            best_d = d
            best_t = t
    t = best_t
    for i in range(max_iter):
        gv = (qx - t) + (qy - t * t / (4.0 * p)) * (t / (2.0 * p))
        gp = -1.0 - (t / (2.0 * p)) * (t / (2.0 * p)) + (qy - t * t / (4.0 * p)) / (2.0 * p)
        if gp == 0.0:
            return (t, 0)
        dt = -gv / gp
        halvings = 0
        while halvings < _MAX_HALVINGS and fabs(_parabola_g(p, qx, qy, t + dt)) > fabs(gv):
            dt *= 0.5
            halvings += 1
        t += dt
        if fabs(dt) <= _STEP_TOL * (1.0 + fabs(t)):
            return (t, 1)
    return (t, 0)


cdef inline double _hyperbola_g(double a, double b, int sigma,
                                double qx, double qy, double t):
    cdef double ch = cosh(t)
    cdef double sh = sinh(t)
    return (qx - sigma * a * ch) * (sigma * a * sh) + (qy - b * sh) * (b * ch)


cpdef tuple hyperbola_nearest_param(double a, double b, int sigma,
                                    double qx, double qy,
                                    double lo, double hi, int grid, int max_iter):
    cdef double best_t = lo
    cdef double best_d = INF
    cdef double step = (hi - lo) / (grid - 1)
    cdef double t, px, py, d, ch, sh, gv, gp, dt
    cdef int i, halvings
    for i in range(grid):
        t = lo + i * step
        px = sigma * a * cosh(t)
        py = b * sinh(t)
        d = (px - qx) * (px - qx) + (py - qy) * (py - qy)
        if d < best_d:
            best_d = d
            best_t = t
    t = best_t
    for i in range(max_iter):
        ch = cosh(t)
        sh = sinh(t)
        gv = (qx - sigma * a * ch) * (sigma * a * sh) + (qy - b * sh) * (b * ch)
        gp = (-a * a * sh * sh
              - b * b * ch * ch
              + sigma * a * ch * (qx - sigma * a * ch)
              + b * sh * (qy - b * sh))
        if gp == 0.0:
            return (t, 0)
        dt = -gv / gp
        halvings = 0
        while halvings < _MAX_HALVINGS and fabs(_hyperbola_g(a, b, sigma, qx, qy, t + dt)) > fabs(gv):
            dt *= 0.5
            halvings += 1
        t += dt
        if fabs(dt) <= _STEP_TOL * (1.0 + fabs(t)):
            return (t, 1)
    return (t, 0)
