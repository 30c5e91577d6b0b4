"""Numba-compiled kernel implementations.

Signature-compatible with :mod:`vortexlab._kernels_numpy`.  The evolution
kernels are fused aggressively: one pass forms the discrete Laplacian, a
second computes the whole right-hand side per point straight from the xi and
zeta stencil windows (numerators recomputed in registers rather than staged
through scratch arrays) and applies the Runge-Kutta stage update in the same
sweep.  Every output element is a fixed expression of the inputs, so results
do not depend on call order or thread count.
"""

from __future__ import annotations



import numpy as np
from numba import njit, prange

GHOST = 2

_JIT = dict(cache=True, fastmath=True)


def alloc(nx: int, ny: int) -> np.ndarray:
    return np.zeros((ny + 5, nx + 4), dtype=np.float64)


@njit(**_JIT)
def fill_ghosts(a, nx, ny, periodic_y):
    for j in range(2, ny + 3):
        a[j, 0] = a[j, nx]
        a[j, 1] = a[j, nx + 1]
        a[j, nx + 2] = a[j, 2]
        a[j, nx + 3] = a[j, 3]
    if periodic_y:
        for i in range(nx + 4):
            a[ny + 2, i] = a[2, i]
            a[1, i] = a[ny + 1, i]
            a[0, i] = a[ny, i]
            a[ny + 3, i] = a[3, i]
            a[ny + 4, i] = a[4, i]
    else:
        for i in range(nx + 4):
            a[1, i] = a[3, i]
            a[0, i] = a[4, i]
            a[ny + 3, i] = a[ny + 1, i]
            a[ny + 4, i] = a[ny, i]


@njit(**_JIT)
def fill_ghosts_x(a, nx, ny):
    for j in range(2, ny + 3):
        a[j, 0] = a[j, nx]
        a[j, 1] = a[j, nx + 1]
        a[j, nx + 2] = a[j, 2]
        a[j, nx + 3] = a[j, 3]


@njit(**_JIT)
def dx(a, out, nx, ny, hx):
    f = 1.0 / (12.0 * hx)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = (-a[j, i + 2] + 8.0 * a[j, i + 1]
                         - 8.0 * a[j, i - 1] + a[j, i - 2]) * f


@njit(**_JIT)
def dy(a, out, nx, ny, hy):
    f = 1.0 / (12.0 * hy)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = (-a[j + 2, i] + 8.0 * a[j + 1, i]
                         - 8.0 * a[j - 1, i] + a[j - 2, i]) * f


@njit(**_JIT)
def dxx(a, out, nx, ny, hx):
    f = 1.0 / (12.0 * hx * hx)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = (-a[j, i + 2] + 16.0 * a[j, i + 1] - 30.0 * a[j, i]
                         + 16.0 * a[j, i - 1] - a[j, i - 2]) * f


@njit(**_JIT)
def dyy(a, out, nx, ny, hy):
    f = 1.0 / (12.0 * hy * hy)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = (-a[j + 2, i] + 16.0 * a[j + 1, i] - 30.0 * a[j, i]
                         + 16.0 * a[j - 1, i] - a[j - 2, i]) * f


@njit(**_JIT)
def dxxx(a, out, nx, ny, hx):
    f = 1.0 / (2.0 * hx ** 3)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = (a[j, i + 2] - 2.0 * a[j, i + 1]
                         + 2.0 * a[j, i - 1] - a[j, i - 2]) * f


@njit(**_JIT)
def mixed_x_yy(a, out, nx, ny, hx, hy):
    f = 1.0 / (144.0 * hx * hy * hy)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            c2 = (-a[j + 2, i + 2] + 16.0 * a[j + 1, i + 2] - 30.0 * a[j, i + 2]
                  + 16.0 * a[j - 1, i + 2] - a[j - 2, i + 2])
            c1 = (-a[j + 2, i + 1] + 16.0 * a[j + 1, i + 1] - 30.0 * a[j, i + 1]
                  + 16.0 * a[j - 1, i + 1] - a[j - 2, i + 1])
            m1 = (-a[j + 2, i - 1] + 16.0 * a[j + 1, i - 1] - 30.0 * a[j, i - 1]
                  + 16.0 * a[j - 1, i - 1] - a[j - 2, i - 1])
            m2 = (-a[j + 2, i - 2] + 16.0 * a[j + 1, i - 2] - 30.0 * a[j, i - 2]
                  + 16.0 * a[j - 1, i - 2] - a[j - 2, i - 2])
            out[j, i] = (-c2 + 8.0 * c1 - 8.0 * m1 + m2) * f


@njit(**_JIT)
def laplacian(a, out, nx, ny, hx, hy):
    fx = 1.0 / (12.0 * hx * hx)
    fy = 1.0 / (12.0 * hy * hy)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = (-a[j, i + 2] + 16.0 * a[j, i + 1] - 30.0 * a[j, i]
                         + 16.0 * a[j, i - 1] - a[j, i - 2]) * fx \
                      + (-a[j + 2, i] + 16.0 * a[j + 1, i] - 30.0 * a[j, i]
                         + 16.0 * a[j - 1, i] - a[j - 2, i]) * fy


@njit(inline="always")
def _jac2_point(z, x, j, i):
    jdd = (z[j, i + 1] - z[j, i - 1]) * (x[j + 1, i] - x[j - 1, i]) \
        - (z[j + 1, i] - z[j - 1, i]) * (x[j, i + 1] - x[j, i - 1])
    jdc = z[j, i + 1] * (x[j + 1, i + 1] - x[j - 1, i + 1]) \
        - z[j, i - 1] * (x[j + 1, i - 1] - x[j - 1, i - 1]) \
        - z[j + 1, i] * (x[j + 1, i + 1] - x[j + 1, i - 1]) \
        + z[j - 1, i] * (x[j - 1, i + 1] - x[j - 1, i - 1])
    jcd = -(x[j, i + 1] * (z[j + 1, i + 1] - z[j - 1, i + 1])
            - x[j, i - 1] * (z[j + 1, i - 1] - z[j - 1, i - 1])
            - x[j + 1, i] * (z[j + 1, i + 1] - z[j + 1, i - 1])
            + x[j - 1, i] * (z[j - 1, i + 1] - z[j - 1, i - 1]))
    return jdd + jdc + jcd


@njit(inline="always")
def _jdc4_point(z, x, j, i):
    return (
        -z[j, i + 2] * (-x[j + 2, i + 2] + 8.0 * x[j + 1, i + 2] - 8.0 * x[j - 1, i + 2] + x[j - 2, i + 2])
        + 8.0 * z[j, i + 1] * (-x[j + 2, i + 1] + 8.0 * x[j + 1, i + 1] - 8.0 * x[j - 1, i + 1] + x[j - 2, i + 1])
        - 8.0 * z[j, i - 1] * (-x[j + 2, i - 1] + 8.0 * x[j + 1, i - 1] - 8.0 * x[j - 1, i - 1] + x[j - 2, i - 1])
        + z[j, i - 2] * (-x[j + 2, i - 2] + 8.0 * x[j + 1, i - 2] - 8.0 * x[j - 1, i - 2] + x[j - 2, i - 2])
        + z[j + 2, i] * (-x[j + 2, i + 2] + 8.0 * x[j + 2, i + 1] - 8.0 * x[j + 2, i - 1] + x[j + 2, i - 2])
        - 8.0 * z[j + 1, i] * (-x[j + 1, i + 2] + 8.0 * x[j + 1, i + 1] - 8.0 * x[j + 1, i - 1] + x[j + 1, i - 2])
        + 8.0 * z[j - 1, i] * (-x[j - 1, i + 2] + 8.0 * x[j - 1, i + 1] - 8.0 * x[j - 1, i - 1] + x[j - 1, i - 2])
        - z[j - 2, i] * (-x[j - 2, i + 2] + 8.0 * x[j - 2, i + 1] - 8.0 * x[j - 2, i - 1] + x[j - 2, i - 2])
    )


@njit(inline="always")
def _jac4_point(z, x, j, i):
    xnz = -z[j, i + 2] + 8.0 * z[j, i + 1] - 8.0 * z[j, i - 1] + z[j, i - 2]
    ynz = -z[j + 2, i] + 8.0 * z[j + 1, i] - 8.0 * z[j - 1, i] + z[j - 2, i]
    xnx = -x[j, i + 2] + 8.0 * x[j, i + 1] - 8.0 * x[j, i - 1] + x[j, i - 2]
    ynx = -x[j + 2, i] + 8.0 * x[j + 1, i] - 8.0 * x[j - 1, i] + x[j - 2, i]
    jdd = xnz * ynx - ynz * xnx
    return jdd + _jdc4_point(z, x, j, i) - _jdc4_point(x, z, j, i)


@njit(cache=True)  # no fastmath: keeps J(u, u) and the discrete sums exactly zero
def jacobian2(z, x, out, nx, ny, hx, hy):
    f = 1.0 / (4.0 * hx * hy) / 3.0
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = _jac2_point(z, x, j, i) * f


@njit(cache=True)  # no fastmath: keeps J(u, u) and the discrete sums exactly zero
def jacobian4(z, x, out, nx, ny, hx, hy):
    f = 1.0 / (144.0 * hx * hy) / 3.0
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            out[j, i] = _jac4_point(z, x, j, i) * f


@njit(inline="always")
def _transport_point(src, j, i, p, q, a2, inv12hx, inv2hx3, inv144xyy):
    """Scalar advection + dispersion terms evaluated from the src window."""
    dxv = (-src[j, i + 2] + 8.0 * src[j, i + 1]
           - 8.0 * src[j, i - 1] + src[j, i - 2]) * inv12hx
    dxxx_v = (src[j, i + 2] - 2.0 * src[j, i + 1]
              + 2.0 * src[j, i - 1] - src[j, i - 2]) * inv2hx3
    c2 = (-src[j + 2, i + 2] + 16.0 * src[j + 1, i + 2] - 30.0 * src[j, i + 2]
          + 16.0 * src[j - 1, i + 2] - src[j - 2, i + 2])
    c1 = (-src[j + 2, i + 1] + 16.0 * src[j + 1, i + 1] - 30.0 * src[j, i + 1]
          + 16.0 * src[j - 1, i + 1] - src[j - 2, i + 1])
    m1 = (-src[j + 2, i - 1] + 16.0 * src[j + 1, i - 1] - 30.0 * src[j, i - 1]
          + 16.0 * src[j - 1, i - 1] - src[j - 2, i - 1])
    m2 = (-src[j + 2, i - 2] + 16.0 * src[j + 1, i - 2] - 30.0 * src[j, i - 2]
          + 16.0 * src[j - 1, i - 2] - src[j - 2, i - 2])
    dxyy_v = (-c2 + 8.0 * c1 - 8.0 * m1 + m2) * inv144xyy
    return a2 * src[j, i] * dxv + p * (dxxx_v + dxyy_v) + q * dxv


@njit(**_JIT)
def _lap_pass(a, zeta, nx, ny, inv12hx2, inv12hy2, periodic_y):
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            zeta[j, i] = (-a[j, i + 2] + 16.0 * a[j, i + 1] - 30.0 * a[j, i]
                          + 16.0 * a[j, i - 1] - a[j, i - 2]) * inv12hx2 \
                       + (-a[j + 2, i] + 16.0 * a[j + 1, i] - 30.0 * a[j, i]
                          + 16.0 * a[j - 1, i] - a[j - 2, i]) * inv12hy2
    fill_ghosts(zeta, nx, ny, periodic_y)


@njit(parallel=True, **_JIT)
def _stage_pass(src, zeta, base, stage, acc, pcoef, qterm, a2, jc, jac_order,
                nx, ny, hx, hy, acoef, bcoef, accmul, basemul):
    """k = rhs(src); acc = accmul*acc + basemul*base + acoef*k;
    stage = base + bcoef*k.

    Branch-free stage bookkeeping ((accmul, basemul) = (0, 1) initializes the
    accumulator, (1, 0) accumulates) keeps the sweep a pure element-wise map:
    bit-identical for any thread count.
    """
    inv12hx = 1.0 / (12.0 * hx)
    inv2hx3 = 1.0 / (2.0 * hx ** 3)
    inv144xyy = 1.0 / (144.0 * hx * hy * hy)
    jfac4 = jc / (144.0 * hx * hy) / 3.0
    jfac2 = jc / (4.0 * hx * hy) / 3.0
    for j in prange(2, ny + 3):
        p = pcoef[j - 2]
        q = qterm[j - 2]
        if jc == 0.0:
            for i in range(2, nx + 2):
                k = _transport_point(src, j, i, p, q, a2, inv12hx, inv2hx3, inv144xyy)
                acc[j, i] = accmul * acc[j, i] + basemul * base[j, i] + acoef * k
                stage[j, i] = base[j, i] + bcoef * k
        elif jac_order == 4:
            for i in range(2, nx + 2):
                k = _transport_point(src, j, i, p, q, a2, inv12hx, inv2hx3, inv144xyy) \
                    + jfac4 * _jac4_point(zeta, src, j, i)
                acc[j, i] = accmul * acc[j, i] + basemul * base[j, i] + acoef * k
                stage[j, i] = base[j, i] + bcoef * k
        else:
            for i in range(2, nx + 2):
                k = _transport_point(src, j, i, p, q, a2, inv12hx, inv2hx3, inv144xyy) \
                    + jfac2 * _jac2_point(zeta, src, j, i)
                acc[j, i] = accmul * acc[j, i] + basemul * base[j, i] + acoef * k
                stage[j, i] = base[j, i] + bcoef * k


@njit(parallel=True, **_JIT)
def _rhs_pass(src, zeta, out, pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy):
    inv12hx = 1.0 / (12.0 * hx)
    inv2hx3 = 1.0 / (2.0 * hx ** 3)
    inv144xyy = 1.0 / (144.0 * hx * hy * hy)
    jfac4 = jc / (144.0 * hx * hy) / 3.0
    jfac2 = jc / (4.0 * hx * hy) / 3.0
    for j in prange(2, ny + 3):
        p = pcoef[j - 2]
        q = qterm[j - 2]
        if jc == 0.0:
            for i in range(2, nx + 2):
                out[j, i] = _transport_point(src, j, i, p, q, a2,
                                             inv12hx, inv2hx3, inv144xyy)
        elif jac_order == 4:
            for i in range(2, nx + 2):
                out[j, i] = _transport_point(src, j, i, p, q, a2,
                                             inv12hx, inv2hx3, inv144xyy) \
                    + jfac4 * _jac4_point(zeta, src, j, i)
        else:
            for i in range(2, nx + 2):
                out[j, i] = _transport_point(src, j, i, p, q, a2,
                                             inv12hx, inv2hx3, inv144xyy) \
                    + jfac2 * _jac2_point(zeta, src, j, i)


@njit(**_JIT)
def rhs(xi, out, zeta, pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy, periodic_y):
    """d(xi)/dT of the shear-flow vorticity equation family (fused)."""
    _lap_pass(xi, zeta, nx, ny, 1.0 / (12.0 * hx * hx), 1.0 / (12.0 * hy * hy), periodic_y)
    _rhs_pass(xi, zeta, out, pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy)
    fill_ghosts(out, nx, ny, periodic_y)


_EXP_MASK = np.uint64(0x7FF)
_EXP_SHIFT = np.uint64(52)


@njit(cache=True)
def _first_nonfinite(a, nx, ny):
    # Bit-level IEEE check (exponent all ones = inf/nan): float comparisons
    # would be folded away when this code is inlined into fastmath callers.
    bits = a.view(np.uint64)
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            if (bits[j, i] >> _EXP_SHIFT) & _EXP_MASK == _EXP_MASK:
                return j - 2, i - 2
    return -1, -1


@njit(**_JIT)
def _copy_interior(dst, src, nx, ny):
    for j in range(2, ny + 3):
        for i in range(2, nx + 2):
            dst[j, i] = src[j, i]


@njit(**_JIT)
def rk4_advance(xi, zeta, sa, sb, acc, pcoef, qterm, a2, jc, jac_order,
                nx, ny, hx, hy, periodic_y, dt, nsteps):
    """March ``nsteps`` classical RK4 steps in place.

    Returns ``(steps_done, blew_up, j_bad, i_bad)``; on blow-up ``xi`` still
    holds the last finite state (the poisoned update is never written back).
    """
    ihx2 = 1.0 / (12.0 * hx * hx)
    ihy2 = 1.0 / (12.0 * hy * hy)
    for n in range(nsteps):
        _lap_pass(xi, zeta, nx, ny, ihx2, ihy2, periodic_y)
        _stage_pass(xi, zeta, xi, sa, acc, pcoef, qterm, a2, jc, jac_order,
                    nx, ny, hx, hy, dt / 6.0, dt / 2.0, 0.0, 1.0)
        fill_ghosts(sa, nx, ny, periodic_y)

        _lap_pass(sa, zeta, nx, ny, ihx2, ihy2, periodic_y)
        _stage_pass(sa, zeta, xi, sb, acc, pcoef, qterm, a2, jc, jac_order,
                    nx, ny, hx, hy, dt / 3.0, dt / 2.0, 1.0, 0.0)
        fill_ghosts(sb, nx, ny, periodic_y)

        _lap_pass(sb, zeta, nx, ny, ihx2, ihy2, periodic_y)
        _stage_pass(sb, zeta, xi, sa, acc, pcoef, qterm, a2, jc, jac_order,
                    nx, ny, hx, hy, dt / 3.0, dt, 1.0, 0.0)
        fill_ghosts(sa, nx, ny, periodic_y)

        _lap_pass(sa, zeta, nx, ny, ihx2, ihy2, periodic_y)
        _stage_pass(sa, zeta, xi, sb, acc, pcoef, qterm, a2, jc, jac_order,
                    nx, ny, hx, hy, dt / 6.0, 0.0, 1.0, 0.0)

        bj, bi = _first_nonfinite(acc, nx, ny)
        if bj >= 0:
            return n, True, bj, bi
        _copy_interior(xi, acc, nx, ny)
        fill_ghosts(xi, nx, ny, periodic_y)
    return nsteps, False, -1, -1


@njit(**_JIT)
def leapfrog_advance(xi_prev, xi, zeta, sa, acc, pcoef, qterm, a2, jc, jac_order,
                     nx, ny, hx, hy, periodic_y, dt, nsteps, ra_coef):
    """March ``nsteps`` leapfrog steps with a Robert-Asselin time filter."""
    ihx2 = 1.0 / (12.0 * hx * hx)
    ihy2 = 1.0 / (12.0 * hy * hy)
    for n in range(nsteps):
        _lap_pass(xi, zeta, nx, ny, ihx2, ihy2, periodic_y)
        _stage_pass(xi, zeta, xi_prev, sa, acc, pcoef, qterm, a2, jc, jac_order,
                    nx, ny, hx, hy, 2.0 * dt, 0.0, 0.0, 1.0)
        bj, bi = _first_nonfinite(acc, nx, ny)
        if bj >= 0:
            return n, True, bj, bi
        # filter the middle level, then rotate
        for j in range(2, ny + 3):
            for i in range(2, nx + 2):
                xi_prev[j, i] = xi[j, i] + ra_coef * (xi_prev[j, i] - 2.0 * xi[j, i] + acc[j, i])
        fill_ghosts(xi_prev, nx, ny, periodic_y)
        _copy_interior(xi, acc, nx, ny)
        fill_ghosts(xi, nx, ny, periodic_y)
    return nsteps, False, -1, -1


@njit(**_JIT)
def radial_classify(a0, c, dr, r_max):
    """Classify a shooting amplitude: +1 overshoots (crosses zero),
    -1 undershoots (turns back up or survives to r_max)."""
    phi = a0 + (c * a0 - a0 * a0) * dr * dr / 4.0
    psi = (c * a0 - a0 * a0) * dr / 2.0
    r = dr
    n = int(r_max / dr)
    for _ in range(n):
        k1p = psi
        k1q = c * phi - phi * phi - psi / r
        r2 = r + 0.5 * dr
        p2 = phi + 0.5 * dr * k1p
        q2 = psi + 0.5 * dr * k1q
        k2p = q2
        k2q = c * p2 - p2 * p2 - q2 / r2
        p3 = phi + 0.5 * dr * k2p
        q3 = psi + 0.5 * dr * k2q
        k3p = q3
        k3q = c * p3 - p3 * p3 - q3 / r2
        r4 = r + dr
        p4 = phi + dr * k3p
        q4 = psi + dr * k3q
        k4p = q4
        k4q = c * p4 - p4 * p4 - q4 / r4
        phi += dr * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        psi += dr * (k1q + 2.0 * k2q + 2.0 * k3q + k4q) / 6.0
        r = r4
        if phi < 0.0:
            return 1
        if psi > 0.0:
            return -1
    return -1


@njit(**_JIT)
def radial_march(a0, c, dr, n_steps, out_phi):
    """Tabulate the shooting trajectory onto out_phi[0..n_steps]; stops early
    when the trajectory misbehaves and returns the last reliable index."""
    out_phi[0] = a0
    phi = a0 + (c * a0 - a0 * a0) * dr * dr / 4.0
    psi = (c * a0 - a0 * a0) * dr / 2.0
    out_phi[1] = phi
    r = dr
    last = 1
    for i in range(2, n_steps + 1):
        k1p = psi
        k1q = c * phi - phi * phi - psi / r
        r2 = r + 0.5 * dr
        p2 = phi + 0.5 * dr * k1p
        q2 = psi + 0.5 * dr * k1q
        k2p = q2
        k2q = c * p2 - p2 * p2 - q2 / r2
        p3 = phi + 0.5 * dr * k2p
        q3 = psi + 0.5 * dr * k2q
        k3p = q3
        k3q = c * p3 - p3 * p3 - q3 / r2
        r4 = r + dr
        p4 = phi + dr * k3p
        q4 = psi + dr * k3q
        k4p = q4
        k4q = c * p4 - p4 * p4 - q4 / r4
        phi += dr * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        psi += dr * (k1q + 2.0 * k2q + 2.0 * k3q + k4q) / 6.0
        r = r4
        if phi < 0.0 or psi > 0.0:
            break
        out_phi[i] = phi
        last = i
    return last
