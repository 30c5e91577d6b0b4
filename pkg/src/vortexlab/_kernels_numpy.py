"""Pure-numpy kernel implementations.

All kernels operate on padded arrays of shape ``(ny + 5, nx + 4)``: the
interior holds ``ny + 1`` sample rows (both channel walls included) by ``nx``
periodic sample columns, surrounded by two ghost layers on every side.  The
numba backend (:mod:`vortexlab._kernels_numba`) implements the same
signatures with fused loops; this module is the readable reference and the
fallback when numba is unavailable.
"""

from __future__ import annotations

import numpy as np

GHOST = 2


def alloc(nx: int, ny: int) -> np.ndarray:
    return np.zeros((ny + 5, nx + 4), dtype=np.float64)


def _int(a: np.ndarray, nx: int, ny: int, dj: int = 0, di: int = 0) -> np.ndarray:
    """Interior view shifted by (dj, di) grid cells (dj: +y, di: +x)."""
    return a[2 + dj:ny + 3 + dj, 2 + di:nx + 2 + di]


def fill_ghosts(a: np.ndarray, nx: int, ny: int, periodic_y: bool) -> None:
    """Fill ghost cells: periodic wrap in x, even reflection (free-slip) or
    periodic wrap in y.  For periodic y the top wall row duplicates the
    bottom one and is kept in sync here."""
    a[2:ny + 3, 0] = a[2:ny + 3, nx]
    a[2:ny + 3, 1] = a[2:ny + 3, nx + 1]
    a[2:ny + 3, nx + 2] = a[2:ny + 3, 2]
    a[2:ny + 3, nx + 3] = a[2:ny + 3, 3]
    if periodic_y:
        a[ny + 2, :] = a[2, :]
        a[1, :] = a[ny + 1, :]
        a[0, :] = a[ny, :]
        a[ny + 3, :] = a[3, :]
        a[ny + 4, :] = a[4, :]
    else:
        a[1, :] = a[3, :]
        a[0, :] = a[4, :]
        a[ny + 3, :] = a[ny + 1, :]
        a[ny + 4, :] = a[ny, :]


def fill_ghosts_x(a: np.ndarray, nx: int, ny: int) -> None:
    """Fill only the periodic x ghost columns (interior rows)."""
    a[2:ny + 3, 0] = a[2:ny + 3, nx]
    a[2:ny + 3, 1] = a[2:ny + 3, nx + 1]
    a[2:ny + 3, nx + 2] = a[2:ny + 3, 2]
    a[2:ny + 3, nx + 3] = a[2:ny + 3, 3]


# ---------------------------------------------------------------------------
# derivative stencils (interior only; caller refreshes output ghosts)
# ---------------------------------------------------------------------------

def dx(a, out, nx, ny, hx):
    f = 1.0 / (12.0 * hx)
    _int(out, nx, ny)[:] = (
        -_int(a, nx, ny, 0, 2) + 8.0 * _int(a, nx, ny, 0, 1)
        - 8.0 * _int(a, nx, ny, 0, -1) + _int(a, nx, ny, 0, -2)
    ) * f


def dy(a, out, nx, ny, hy):
    f = 1.0 / (12.0 * hy)
    _int(out, nx, ny)[:] = (
        -_int(a, nx, ny, 2, 0) + 8.0 * _int(a, nx, ny, 1, 0)
        - 8.0 * _int(a, nx, ny, -1, 0) + _int(a, nx, ny, -2, 0)
    ) * f


def dxx(a, out, nx, ny, hx):
    f = 1.0 / (12.0 * hx * hx)
    _int(out, nx, ny)[:] = (
        -_int(a, nx, ny, 0, 2) + 16.0 * _int(a, nx, ny, 0, 1) - 30.0 * _int(a, nx, ny)
        + 16.0 * _int(a, nx, ny, 0, -1) - _int(a, nx, ny, 0, -2)
    ) * f


def dyy(a, out, nx, ny, hy):
    f = 1.0 / (12.0 * hy * hy)
    _int(out, nx, ny)[:] = (
        -_int(a, nx, ny, 2, 0) + 16.0 * _int(a, nx, ny, 1, 0) - 30.0 * _int(a, nx, ny)
        + 16.0 * _int(a, nx, ny, -1, 0) - _int(a, nx, ny, -2, 0)
    ) * f


def dxxx(a, out, nx, ny, hx):
    f = 1.0 / (2.0 * hx ** 3)
    _int(out, nx, ny)[:] = (
        _int(a, nx, ny, 0, 2) - 2.0 * _int(a, nx, ny, 0, 1)
        + 2.0 * _int(a, nx, ny, 0, -1) - _int(a, nx, ny, 0, -2)
    ) * f


def _yy_num(a, nx, ny, di=0):
    """Numerator of the second y-derivative stencil at x-offset di."""
    return (
        -_int(a, nx, ny, 2, di) + 16.0 * _int(a, nx, ny, 1, di)
        - 30.0 * _int(a, nx, ny, 0, di)
        + 16.0 * _int(a, nx, ny, -1, di) - _int(a, nx, ny, -2, di)
    )


def mixed_x_yy(a, out, nx, ny, hx, hy):
    """Fused 20-point stencil for the third derivative along x, y, y."""
    f = 1.0 / (144.0 * hx * hy * hy)
    _int(out, nx, ny)[:] = (
        -_yy_num(a, nx, ny, 2) + 8.0 * _yy_num(a, nx, ny, 1)
        - 8.0 * _yy_num(a, nx, ny, -1) + _yy_num(a, nx, ny, -2)
    ) * f


def laplacian(a, out, nx, ny, hx, hy):
    fx = 1.0 / (12.0 * hx * hx)
    fy = 1.0 / (12.0 * hy * hy)
    _int(out, nx, ny)[:] = (
        -_int(a, nx, ny, 0, 2) + 16.0 * _int(a, nx, ny, 0, 1) - 30.0 * _int(a, nx, ny)
        + 16.0 * _int(a, nx, ny, 0, -1) - _int(a, nx, ny, 0, -2)
    ) * fx + _yy_num(a, nx, ny) * fy


# ---------------------------------------------------------------------------
# Arakawa advection
# ---------------------------------------------------------------------------

def jacobian2(z, x, out, nx, ny, hx, hy):
    """Second-order Arakawa average (J_DD + J_DC + J_CD) / 3."""
    f = 1.0 / (4.0 * hx * hy) / 3.0

    def sz(dj, di):
        return _int(z, nx, ny, dj, di)

    def sx(dj, di):
        return _int(x, nx, ny, dj, di)

    jdd = (sz(0, 1) - sz(0, -1)) * (sx(1, 0) - sx(-1, 0)) \
        - (sz(1, 0) - sz(-1, 0)) * (sx(0, 1) - sx(0, -1))
    jdc = sz(0, 1) * (sx(1, 1) - sx(-1, 1)) - sz(0, -1) * (sx(1, -1) - sx(-1, -1)) \
        - sz(1, 0) * (sx(1, 1) - sx(1, -1)) + sz(-1, 0) * (sx(-1, 1) - sx(-1, -1))
    # J_CD(z, x) := -J_DC(x, z)
    jcd = -(sx(0, 1) * (sz(1, 1) - sz(-1, 1)) - sx(0, -1) * (sz(1, -1) - sz(-1, -1))
            - sx(1, 0) * (sz(1, 1) - sz(1, -1)) + sx(-1, 0) * (sz(-1, 1) - sz(-1, -1)))
    _int(out, nx, ny)[:] = (jdd + jdc + jcd) * f


def _xnum(a, nx, ny, dj=0, di=0):
    """Numerator of the fourth-order first x-derivative, shifted by (dj, di)."""
    return (
        -_int(a, nx, ny, dj, di + 2) + 8.0 * _int(a, nx, ny, dj, di + 1)
        - 8.0 * _int(a, nx, ny, dj, di - 1) + _int(a, nx, ny, dj, di - 2)
    )


def _ynum(a, nx, ny, dj=0, di=0):
    """Numerator of the fourth-order first y-derivative, shifted by (dj, di)."""
    return (
        -_int(a, nx, ny, dj + 2, di) + 8.0 * _int(a, nx, ny, dj + 1, di)
        - 8.0 * _int(a, nx, ny, dj - 1, di) + _int(a, nx, ny, dj - 2, di)
    )


def _jdc4(z, x, nx, ny):
    """Fourth-order J_DC numerator combination (no 1/144hl factor)."""
    return (
        -_int(z, nx, ny, 0, 2) * _ynum(x, nx, ny, 0, 2)
        + 8.0 * _int(z, nx, ny, 0, 1) * _ynum(x, nx, ny, 0, 1)
        - 8.0 * _int(z, nx, ny, 0, -1) * _ynum(x, nx, ny, 0, -1)
        + _int(z, nx, ny, 0, -2) * _ynum(x, nx, ny, 0, -2)
        + _int(z, nx, ny, 2, 0) * _xnum(x, nx, ny, 2, 0)
        - 8.0 * _int(z, nx, ny, 1, 0) * _xnum(x, nx, ny, 1, 0)
        + 8.0 * _int(z, nx, ny, -1, 0) * _xnum(x, nx, ny, -1, 0)
        - _int(z, nx, ny, -2, 0) * _xnum(x, nx, ny, -2, 0)
    )


def jacobian4(z, x, out, nx, ny, hx, hy):
    """Fourth-order extension of the Arakawa average."""
    f = 1.0 / (144.0 * hx * hy) / 3.0
    jdd = _xnum(z, nx, ny) * _ynum(x, nx, ny) - _ynum(z, nx, ny) * _xnum(x, nx, ny)
    _int(out, nx, ny)[:] = (jdd + _jdc4(z, x, nx, ny) - _jdc4(x, z, nx, ny)) * f


# ---------------------------------------------------------------------------
# fused evolution right-hand side
# ---------------------------------------------------------------------------

def _rhs_interior(src, zeta, pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy):
    """Right-hand-side values on the interior as a fresh array block."""
    inv12hx = 1.0 / (12.0 * hx)
    inv2hx3 = 1.0 / (2.0 * hx ** 3)
    inv144xyy = 1.0 / (144.0 * hx * hy * hy)

    dxv = _xnum(src, nx, ny) * inv12hx
    dxxx_v = (
        _int(src, nx, ny, 0, 2) - 2.0 * _int(src, nx, ny, 0, 1)
        + 2.0 * _int(src, nx, ny, 0, -1) - _int(src, nx, ny, 0, -2)
    ) * inv2hx3
    dxyy_v = (
        -_yy_num(src, nx, ny, 2) + 8.0 * _yy_num(src, nx, ny, 1)
        - 8.0 * _yy_num(src, nx, ny, -1) + _yy_num(src, nx, ny, -2)
    ) * inv144xyy
    out = a2 * _int(src, nx, ny) * dxv \
        + pcoef[:, None] * (dxxx_v + dxyy_v) + qterm[:, None] * dxv

    if jc != 0.0:
        if jac_order == 4:
            jdd = _xnum(zeta, nx, ny) * _ynum(src, nx, ny) \
                - _ynum(zeta, nx, ny) * _xnum(src, nx, ny)
            jac = (jdd + _jdc4(zeta, src, nx, ny) - _jdc4(src, zeta, nx, ny)) \
                * (1.0 / (144.0 * hx * hy) / 3.0)
        else:
            jbuf = alloc(nx, ny)
            jacobian2(zeta, src, jbuf, nx, ny, hx, hy)
            jac = _int(jbuf, nx, ny)
        out += jc * jac
    return out


def _lap_pass(a, zeta, nx, ny, hx, hy, periodic_y):
    laplacian(a, zeta, nx, ny, hx, hy)
    fill_ghosts(zeta, nx, ny, periodic_y)


def rhs(xi, out, zeta, pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy, periodic_y):
    """d(xi)/dT for the shear-flow vorticity equation family.

    out = a2*xi*D_x(xi) + P(y)*(D_xxx + D_xyy)(xi) + qterm(y)*D_x(xi)
          + jc*J[lap(xi), xi]

    ``pcoef``/``qterm`` are per-row coefficient vectors; ``a2`` and ``jc``
    carry the model's scalar-nonlinearity and Jacobian prefactors.  Ghosts of
    ``xi`` must be current; ghosts of ``out`` are refreshed.
    """
    _lap_pass(xi, zeta, nx, ny, hx, hy, periodic_y)
    _int(out, nx, ny)[:] = _rhs_interior(xi, zeta, pcoef, qterm, a2, jc,
                                         jac_order, nx, ny, hx, hy)
    fill_ghosts(out, nx, ny, periodic_y)


# ---------------------------------------------------------------------------
# time stepping
# ---------------------------------------------------------------------------

def rk4_advance(xi, zeta, sa, sb, acc, pcoef, qterm, a2, jc, jac_order,
                nx, ny, hx, hy, periodic_y, dt, nsteps):
    """March ``nsteps`` classical RK4 steps in place.

    Returns ``(steps_done, blew_up, j_bad, i_bad)``; on blow-up ``xi`` still
    holds the last finite state (the poisoned update is never written back).
    """
    xi_i = _int(xi, nx, ny)
    sa_i = _int(sa, nx, ny)
    sb_i = _int(sb, nx, ny)
    acc_i = _int(acc, nx, ny)
    args = (pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy)
    for n in range(nsteps):
        _lap_pass(xi, zeta, nx, ny, hx, hy, periodic_y)
        k = _rhs_interior(xi, zeta, *args)
        acc_i[:] = xi_i + (dt / 6.0) * k
        sa_i[:] = xi_i + (dt / 2.0) * k
        fill_ghosts(sa, nx, ny, periodic_y)

        _lap_pass(sa, zeta, nx, ny, hx, hy, periodic_y)
        k = _rhs_interior(sa, zeta, *args)
        acc_i += (dt / 3.0) * k
        sb_i[:] = xi_i + (dt / 2.0) * k
        fill_ghosts(sb, nx, ny, periodic_y)

        _lap_pass(sb, zeta, nx, ny, hx, hy, periodic_y)
        k = _rhs_interior(sb, zeta, *args)
        acc_i += (dt / 3.0) * k
        sa_i[:] = xi_i + dt * k
        fill_ghosts(sa, nx, ny, periodic_y)

        _lap_pass(sa, zeta, nx, ny, hx, hy, periodic_y)
        k = _rhs_interior(sa, zeta, *args)
        acc_i += (dt / 6.0) * k

        if not np.isfinite(acc_i).all():
            bad = np.argwhere(~np.isfinite(acc_i))[0]
            return n, True, int(bad[0]), int(bad[1])
        xi_i[:] = acc_i
        fill_ghosts(xi, nx, ny, periodic_y)
    return nsteps, False, -1, -1


def leapfrog_advance(xi_prev, xi, zeta, sa, acc, pcoef, qterm, a2, jc, jac_order,
                     nx, ny, hx, hy, periodic_y, dt, nsteps, ra_coef):
    """March ``nsteps`` leapfrog steps with a Robert-Asselin time filter."""
    xp_i = _int(xi_prev, nx, ny)
    xi_i = _int(xi, nx, ny)
    acc_i = _int(acc, nx, ny)
    args = (pcoef, qterm, a2, jc, jac_order, nx, ny, hx, hy)
    for n in range(nsteps):
        _lap_pass(xi, zeta, nx, ny, hx, hy, periodic_y)
        k = _rhs_interior(xi, zeta, *args)
        acc_i[:] = xp_i + (2.0 * dt) * k
        if not np.isfinite(acc_i).all():
            bad = np.argwhere(~np.isfinite(acc_i))[0]
            return n, True, int(bad[0]), int(bad[1])
        # filter the middle level, then rotate
        xp_i[:] = xi_i + ra_coef * (xp_i - 2.0 * xi_i + acc_i)
        fill_ghosts(xi_prev, nx, ny, periodic_y)
        xi_i[:] = acc_i
        fill_ghosts(xi, nx, ny, periodic_y)
    return nsteps, False, -1, -1


# ---------------------------------------------------------------------------
# radial solitary-profile shooting (sequential scalar march)
# ---------------------------------------------------------------------------

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
