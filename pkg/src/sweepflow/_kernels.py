"""Jitted computational core.

Everything here operates on plain float64 arrays; the public modules wrap
these kernels with validated, documented interfaces.  The per-point update
used by the Gauss-Seidel sweep and the per-line evaluation used by the
Runge-Kutta iterator both call the same face-flux kernel, so the two paths
produce bitwise-identical residuals on identical data.

Grid lines are described by *segments*: maximal runs of fluid points along a
row or column, each with six frozen closure states (three per end) stored in
a ghost bank that is refreshed once per sweep/stage.  Internal walls (the
forward-step faces, the thin plate) are segment ends with reflective
closures, so the kernels never special-case geometry.

Scheme codes: 0 linear-us, 1 weno-us, 2 weno-es, 3 hybrid-us.
Flux codes: 0 LLF, 1 HLLC.
Weno parameter vector wp: [eps, gu1, gu2, gu3, ge1, ge2, ge3].
"""

import numpy as np
from numba import njit

_jit = {"cache": True, "nogil": True}

# ---------------------------------------------------------------------------
# pointwise interpolation
# ---------------------------------------------------------------------------


@njit(**_jit)
def us_linear_value(a0, a1, a2, a3, a4):
    # quartic through the five points, evaluated at the right half-point
    return (3.0 * a0 - 20.0 * a1 + 90.0 * a2 + 60.0 * a3 - 5.0 * a4) / 128.0


@njit(**_jit)
def us_betas(a0, a1, a2, a3, a4):
    b1 = (
        1228889.0 * a1 * a1
        + (-3495756.0 * a2 - 601771.0 * a0 + 2100862.0 * a3 - 461113.0 * a4) * a1
        + 82364.0 * a0 * a0
        + (799977.0 * a2 - 461113.0 * a3 + 98179.0 * a4) * a0
        + 1228889.0 * a3 * a3
        + (-3495756.0 * a2 - 601771.0 * a4) * a3
        + 2695779.0 * a2 * a2
        + 799977.0 * a2 * a4
        + 82364.0 * a4 * a4
    ) / 60480.0
    b2 = (a1 - a2) * (a1 - a2)
    b3 = (a2 - a3) * (a2 - a3)
    return b1, b2, b3


@njit(**_jit)
def us_weights(a0, a1, a2, a3, a4, eps, g1, g2, g3):
    b1, b2, b3 = us_betas(a0, a1, a2, a3, a4)
    tau = 0.5 * (abs(b1 - b2) + abs(b1 - b3))
    tau = tau * tau
    w1 = g1 * (1.0 + tau / (eps + b1))
    w2 = g2 * (1.0 + tau / (eps + b2))
    w3 = g3 * (1.0 + tau / (eps + b3))
    s = w1 + w2 + w3
    return w1 / s, w2 / s, w3 / s


@njit(**_jit)
def us_weno_value(a0, a1, a2, a3, a4, eps, g1, g2, g3):
    w1, w2, w3 = us_weights(a0, a1, a2, a3, a4, eps, g1, g2, g3)
    p1 = us_linear_value(a0, a1, a2, a3, a4)
    p2 = 0.5 * (3.0 * a2 - a1)
    p3 = 0.5 * (a2 + a3)
    return w1 * (p1 / g1 - (g2 / g1) * p2 - (g3 / g1) * p3) + w2 * p2 + w3 * p3


@njit(**_jit)
def es_weights(a0, a1, a2, a3, a4, eps, g1, g2, g3):
    # quadratic sub-interpolants q_k written as A*xi^2 + B*xi + a2, xi=(x-x_i)/h
    A1 = 0.5 * (a0 - 2.0 * a1 + a2)
    B1 = 0.5 * (a0 - 4.0 * a1 + 3.0 * a2)
    A2 = 0.5 * (a1 - 2.0 * a2 + a3)
    B2 = 0.5 * (a3 - a1)
    A3 = 0.5 * (a2 - 2.0 * a3 + a4)
    B3 = 0.5 * (-3.0 * a2 + 4.0 * a3 - a4)
    b1 = B1 * B1 + (13.0 / 3.0) * A1 * A1
    b2 = B2 * B2 + (13.0 / 3.0) * A2 * A2
    b3 = B3 * B3 + (13.0 / 3.0) * A3 * A3
    w1 = g1 / ((eps + b1) * (eps + b1))
    w2 = g2 / ((eps + b2) * (eps + b2))
    w3 = g3 / ((eps + b3) * (eps + b3))
    s = w1 + w2 + w3
    return w1 / s, w2 / s, w3 / s


@njit(**_jit)
def es_weno_value(a0, a1, a2, a3, a4, eps, g1, g2, g3):
    w1, w2, w3 = es_weights(a0, a1, a2, a3, a4, eps, g1, g2, g3)
    q1 = (3.0 * a0 - 10.0 * a1 + 15.0 * a2) * 0.125
    q2 = (-a1 + 6.0 * a2 + 3.0 * a3) * 0.125
    q3 = (3.0 * a2 + 6.0 * a3 - a4) * 0.125
    return w1 * q1 + w2 * q2 + w3 * q3


@njit(**_jit)
def troubled(a0, a1, a2, a3, a4):
    """Extreme point of any q_k inside its substencil interval (closed)."""
    m = abs(a0)
    if abs(a1) > m:
        m = abs(a1)
    if abs(a2) > m:
        m = abs(a2)
    if abs(a3) > m:
        m = abs(a3)
    if abs(a4) > m:
        m = abs(a4)
    if m < 1.0:
        m = 1.0
    tol = 1e-14 * m

    d = a0 - 2.0 * a1 + a2
    if abs(0.5 * d) > tol:
        xi = -(a0 - 4.0 * a1 + 3.0 * a2) / (2.0 * d)
        if -2.5 <= xi <= 0.5:
            return True
    d = a1 - 2.0 * a2 + a3
    if abs(0.5 * d) > tol:
        xi = -(a3 - a1) / (2.0 * d)
        if -1.5 <= xi <= 1.5:
            return True
    d = a2 - 2.0 * a3 + a4
    if abs(0.5 * d) > tol:
        xi = -(-3.0 * a2 + 4.0 * a3 - a4) / (2.0 * d)
        if -0.5 <= xi <= 2.5:
            return True
    return False


@njit(**_jit)
def side_value(a0, a1, a2, a3, a4, scheme, wp):
    if scheme == 0:
        return us_linear_value(a0, a1, a2, a3, a4)
    elif scheme == 1:
        return us_weno_value(a0, a1, a2, a3, a4, wp[0], wp[1], wp[2], wp[3])
    elif scheme == 2:
        return es_weno_value(a0, a1, a2, a3, a4, wp[0], wp[4], wp[5], wp[6])
    else:
        if troubled(a0, a1, a2, a3, a4):
            return us_weno_value(a0, a1, a2, a3, a4, wp[0], wp[1], wp[2], wp[3])
        return us_linear_value(a0, a1, a2, a3, a4)


# ---------------------------------------------------------------------------
# physical and monotone fluxes
# ---------------------------------------------------------------------------


@njit(**_jit)
def phys_flux(r, mx, my, E, gam, axis):
    p = (gam - 1.0) * (E - 0.5 * (mx * mx + my * my) / r)
    if axis == 0:
        vn = mx / r
        return mx, mx * vn + p, my * vn, vn * (E + p)
    else:
        vn = my / r
        return my, mx * vn, my * vn + p, vn * (E + p)


@njit(**_jit)
def llf_flux4(l0, l1, l2, l3, r0, r1, r2, r3, axis, lam, gam):
    fl0, fl1, fl2, fl3 = phys_flux(l0, l1, l2, l3, gam, axis)
    fr0, fr1, fr2, fr3 = phys_flux(r0, r1, r2, r3, gam, axis)
    return (
        0.5 * (fl0 + fr0 - lam * (r0 - l0)),
        0.5 * (fl1 + fr1 - lam * (r1 - l1)),
        0.5 * (fl2 + fr2 - lam * (r2 - l2)),
        0.5 * (fl3 + fr3 - lam * (r3 - l3)),
    )


@njit(**_jit)
def hllc_speeds(rl, vnl, pl, Hl, rr, vnr, pr, Hr, gam):
    cl = np.sqrt(gam * pl / rl)
    cr = np.sqrt(gam * pr / rr)
    R = np.sqrt(rr / rl)
    vst = (vnl + vnr * R) / (1.0 + R)
    Hst = (Hl + Hr * R) / (1.0 + R)
    cst = np.sqrt((gam - 1.0) * (Hst - 0.5 * vst * vst))
    SL = min(vnl - cl, vst - cst)
    SR = max(vnr + cr, vst + cst)
    den = rr * (SR - vnr) - rl * (SL - vnl)
    if abs(den) < 1e-300:
        # degenerate contact estimate; caller falls back to LLF
        return SL, SR, np.nan
    SM = (rr * vnr * (SR - vnr) - rl * vnl * (SL - vnl) + pl - pr) / den
    return SL, SR, SM


@njit(**_jit)
def hllc_flux4(l0, l1, l2, l3, r0, r1, r2, r3, axis, lam, gam):
    pl = (gam - 1.0) * (l3 - 0.5 * (l1 * l1 + l2 * l2) / l0)
    pr = (gam - 1.0) * (r3 - 0.5 * (r1 * r1 + r2 * r2) / r0)
    if axis == 0:
        vnl = l1 / l0
        vnr = r1 / r0
    else:
        vnl = l2 / l0
        vnr = r2 / r0
    Hl = (l3 + pl) / l0
    Hr = (r3 + pr) / r0
    SL, SR, SM = hllc_speeds(l0, vnl, pl, Hl, r0, vnr, pr, Hr, gam)
    if np.isnan(SM):
        return llf_flux4(l0, l1, l2, l3, r0, r1, r2, r3, axis, lam, gam)
    if SL > 0.0:
        return phys_flux(l0, l1, l2, l3, gam, axis)
    elif SM > 0.0:
        fl0, fl1, fl2, fl3 = phys_flux(l0, l1, l2, l3, gam, axis)
        coef = l0 * (SL - vnl) / (SL - SM)
        e = l3 / l0 + (SM - vnl) * (SM + pl / (l0 * (SL - vnl)))
        s0 = coef
        if axis == 0:
            s1 = coef * SM
            s2 = coef * (l2 / l0)
        else:
            s1 = coef * (l1 / l0)
            s2 = coef * SM
        s3 = coef * e
        return (
            fl0 + SL * (s0 - l0),
            fl1 + SL * (s1 - l1),
            fl2 + SL * (s2 - l2),
            fl3 + SL * (s3 - l3),
        )
    elif SR > 0.0:
        fr0, fr1, fr2, fr3 = phys_flux(r0, r1, r2, r3, gam, axis)
        coef = r0 * (SR - vnr) / (SR - SM)
        e = r3 / r0 + (SM - vnr) * (SM + pr / (r0 * (SR - vnr)))
        s0 = coef
        if axis == 0:
            s1 = coef * SM
            s2 = coef * (r2 / r0)
        else:
            s1 = coef * (r1 / r0)
            s2 = coef * SM
        s3 = coef * e
        return (
            fr0 + SR * (s0 - r0),
            fr1 + SR * (s1 - r1),
            fr2 + SR * (s2 - r2),
            fr3 + SR * (s3 - r3),
        )
    else:
        return phys_flux(r0, r1, r2, r3, gam, axis)


@njit(**_jit)
def mono_flux(l0, l1, l2, l3, r0, r1, r2, r3, axis, fk, lam, gam):
    if fk == 0:
        return llf_flux4(l0, l1, l2, l3, r0, r1, r2, r3, axis, lam, gam)
    return hllc_flux4(l0, l1, l2, l3, r0, r1, r2, r3, axis, lam, gam)


# Combined per-state coefficients of the second/fourth derivative flux
# corrections: q_k = -(1/24)(1/48)*c2_k + (7/5760)(1/2)*c4_k.  They sum to
# zero; subtracting the k=2 flux before weighting keeps constant data exact.
_Q0 = 57.0 / 11520.0
_Q1 = -411.0 / 11520.0
_Q2 = 354.0 / 11520.0
_Q3 = 354.0 / 11520.0
_Q4 = -411.0 / 11520.0
_Q5 = 57.0 / 11520.0


@njit(**_jit)
def face_flux(w, axis, scheme, fk, lam, wp, gam):
    """Fifth-order numerical flux at the interface between w[2] and w[3].

    w is a (6, 4) slab of conserved states; returns the 4 flux components.
    """
    l0 = side_value(w[0, 0], w[1, 0], w[2, 0], w[3, 0], w[4, 0], scheme, wp)
    l1 = side_value(w[0, 1], w[1, 1], w[2, 1], w[3, 1], w[4, 1], scheme, wp)
    l2 = side_value(w[0, 2], w[1, 2], w[2, 2], w[3, 2], w[4, 2], scheme, wp)
    l3 = side_value(w[0, 3], w[1, 3], w[2, 3], w[3, 3], w[4, 3], scheme, wp)
    r0 = side_value(w[5, 0], w[4, 0], w[3, 0], w[2, 0], w[1, 0], scheme, wp)
    r1 = side_value(w[5, 1], w[4, 1], w[3, 1], w[2, 1], w[1, 1], scheme, wp)
    r2 = side_value(w[5, 2], w[4, 2], w[3, 2], w[2, 2], w[1, 2], scheme, wp)
    r3 = side_value(w[5, 3], w[4, 3], w[3, 3], w[2, 3], w[1, 3], scheme, wp)

    h0, h1, h2, h3 = mono_flux(l0, l1, l2, l3, r0, r1, r2, r3, axis, fk, lam, gam)

    f00, f01, f02, f03 = phys_flux(w[0, 0], w[0, 1], w[0, 2], w[0, 3], gam, axis)
    f10, f11, f12, f13 = phys_flux(w[1, 0], w[1, 1], w[1, 2], w[1, 3], gam, axis)
    f20, f21, f22, f23 = phys_flux(w[2, 0], w[2, 1], w[2, 2], w[2, 3], gam, axis)
    f30, f31, f32, f33 = phys_flux(w[3, 0], w[3, 1], w[3, 2], w[3, 3], gam, axis)
    f40, f41, f42, f43 = phys_flux(w[4, 0], w[4, 1], w[4, 2], w[4, 3], gam, axis)
    f50, f51, f52, f53 = phys_flux(w[5, 0], w[5, 1], w[5, 2], w[5, 3], gam, axis)

    c0 = _Q0 * (f00 - f20) + _Q1 * (f10 - f20) + _Q3 * (f30 - f20) + _Q4 * (f40 - f20) + _Q5 * (f50 - f20)
    c1 = _Q0 * (f01 - f21) + _Q1 * (f11 - f21) + _Q3 * (f31 - f21) + _Q4 * (f41 - f21) + _Q5 * (f51 - f21)
    c2 = _Q0 * (f02 - f22) + _Q1 * (f12 - f22) + _Q3 * (f32 - f22) + _Q4 * (f42 - f22) + _Q5 * (f52 - f22)
    c3 = _Q0 * (f03 - f23) + _Q1 * (f13 - f23) + _Q3 * (f33 - f23) + _Q4 * (f43 - f23) + _Q5 * (f53 - f23)

    return h0 + c0, h1 + c1, h2 + c2, h3 + c3


# ---------------------------------------------------------------------------
# segment ghost banks
# ---------------------------------------------------------------------------


@njit(**_jit)
def fill_banks_x(U, segs, clos, G):
    """Freeze the 3+3 closure states of every x-segment into G.

    segs[s] = (j, a, b); clos[s] = (low, high) with 0 = copy the domain-edge
    ghosts already in U, 1 = reflect the segment interior (wall at the end
    interface, x-momentum negated).
    """
    for s in range(segs.shape[0]):
        j = segs[s, 0]
        a = segs[s, 1]
        b = segs[s, 2]
        if clos[s, 0] == 0:
            for m in range(3):
                for c in range(4):
                    G[s, m, c] = U[a - 3 + m, j, c]
        else:
            for m in range(3):
                G[s, 2 - m, 0] = U[a + m, j, 0]
                G[s, 2 - m, 1] = -U[a + m, j, 1]
                G[s, 2 - m, 2] = U[a + m, j, 2]
                G[s, 2 - m, 3] = U[a + m, j, 3]
        if clos[s, 1] == 0:
            for m in range(3):
                for c in range(4):
                    G[s, 3 + m, c] = U[b + 1 + m, j, c]
        else:
            for m in range(3):
                G[s, 3 + m, 0] = U[b - m, j, 0]
                G[s, 3 + m, 1] = -U[b - m, j, 1]
                G[s, 3 + m, 2] = U[b - m, j, 2]
                G[s, 3 + m, 3] = U[b - m, j, 3]


@njit(**_jit)
def fill_banks_y(U, segs, clos, G):
    """Same as fill_banks_x along columns; reflection negates y-momentum."""
    for s in range(segs.shape[0]):
        i = segs[s, 0]
        a = segs[s, 1]
        b = segs[s, 2]
        if clos[s, 0] == 0:
            for m in range(3):
                for c in range(4):
                    G[s, m, c] = U[i, a - 3 + m, c]
        else:
            for m in range(3):
                G[s, 2 - m, 0] = U[i, a + m, 0]
                G[s, 2 - m, 1] = U[i, a + m, 1]
                G[s, 2 - m, 2] = -U[i, a + m, 2]
                G[s, 2 - m, 3] = U[i, a + m, 3]
        if clos[s, 1] == 0:
            for m in range(3):
                for c in range(4):
                    G[s, 3 + m, c] = U[i, b + 1 + m, c]
        else:
            for m in range(3):
                G[s, 3 + m, 0] = U[i, b - m, 0]
                G[s, 3 + m, 1] = U[i, b - m, 1]
                G[s, 3 + m, 2] = -U[i, b - m, 2]
                G[s, 3 + m, 3] = U[i, b - m, 3]


@njit(**_jit)
def gather_x(U, G, s, a, b, i, j, w7):
    for m in range(7):
        ii = i - 3 + m
        if ii < a:
            k = ii - (a - 3)
            w7[m, 0] = G[s, k, 0]
            w7[m, 1] = G[s, k, 1]
            w7[m, 2] = G[s, k, 2]
            w7[m, 3] = G[s, k, 3]
        elif ii > b:
            k = 2 + ii - b
            w7[m, 0] = G[s, k, 0]
            w7[m, 1] = G[s, k, 1]
            w7[m, 2] = G[s, k, 2]
            w7[m, 3] = G[s, k, 3]
        else:
            w7[m, 0] = U[ii, j, 0]
            w7[m, 1] = U[ii, j, 1]
            w7[m, 2] = U[ii, j, 2]
            w7[m, 3] = U[ii, j, 3]


@njit(**_jit)
def gather_y(U, G, s, a, b, i, j, w7):
    for m in range(7):
        jj = j - 3 + m
        if jj < a:
            k = jj - (a - 3)
            w7[m, 0] = G[s, k, 0]
            w7[m, 1] = G[s, k, 1]
            w7[m, 2] = G[s, k, 2]
            w7[m, 3] = G[s, k, 3]
        elif jj > b:
            k = 2 + jj - b
            w7[m, 0] = G[s, k, 0]
            w7[m, 1] = G[s, k, 1]
            w7[m, 2] = G[s, k, 2]
            w7[m, 3] = G[s, k, 3]
        else:
            w7[m, 0] = U[i, jj, 0]
            w7[m, 1] = U[i, jj, 1]
            w7[m, 2] = U[i, jj, 2]
            w7[m, 3] = U[i, jj, 3]


# ---------------------------------------------------------------------------
# spatial operator and iteration kernels
# ---------------------------------------------------------------------------


@njit(**_jit)
def point_operator(
    U, xsegs, xid, xG, ysegs, yid, yG, i, j, dxi, dyi,
    scheme, fk, lamx, lamy, wp, gam, wx, wy
):
    sx = xid[i, j]
    gather_x(U, xG, sx, xsegs[sx, 1], xsegs[sx, 2], i, j, wx)
    fl0, fl1, fl2, fl3 = face_flux(wx[0:6], 0, scheme, fk, lamx, wp, gam)
    fh0, fh1, fh2, fh3 = face_flux(wx[1:7], 0, scheme, fk, lamx, wp, gam)
    sy = yid[i, j]
    gather_y(U, yG, sy, ysegs[sy, 1], ysegs[sy, 2], i, j, wy)
    gl0, gl1, gl2, gl3 = face_flux(wy[0:6], 1, scheme, fk, lamy, wp, gam)
    gh0, gh1, gh2, gh3 = face_flux(wy[1:7], 1, scheme, fk, lamy, wp, gam)
    L0 = -(fh0 - fl0) * dxi - (gh0 - gl0) * dyi
    L1 = -(fh1 - fl1) * dxi - (gh1 - gl1) * dyi
    L2 = -(fh2 - fl2) * dxi - (gh2 - gl2) * dyi
    L3 = -(fh3 - fl3) * dxi - (gh3 - gl3) * dyi
    return L0, L1, L2, L3


@njit(**_jit)
def sweep(
    U, fluid, xsegs, xid, xG, ysegs, yid, yG, resid, src, has_src,
    i0, i1, istep, j0, j1, jstep, dt, dxi, dyi,
    scheme, fk, lamx, lamy, wp, gam,
):
    """One Gauss-Seidel pass in the given traversal order (in-place).

    Stencil reads of already-visited points see their current-sweep values;
    closure reads come from the frozen banks.  Returns sum_{fluid} sum_c |R_c|
    with R = (u_new - u_old)/dt also stored in ``resid``.
    """
    wx = np.empty((7, 4))
    wy = np.empty((7, 4))
    total = 0.0
    for i in range(i0, i1, istep):
        for j in range(j0, j1, jstep):
            if not fluid[i, j]:
                continue
            L0, L1, L2, L3 = point_operator(
                U, xsegs, xid, xG, ysegs, yid, yG, i, j, dxi, dyi,
                scheme, fk, lamx, lamy, wp, gam, wx, wy,
            )
            if has_src:
                L0 += src[i, j, 0]
                L1 += src[i, j, 1]
                L2 += src[i, j, 2]
                L3 += src[i, j, 3]
            u0 = U[i, j, 0]
            u1 = U[i, j, 1]
            u2 = U[i, j, 2]
            u3 = U[i, j, 3]
            n0 = u0 + dt * L0
            n1 = u1 + dt * L1
            n2 = u2 + dt * L2
            n3 = u3 + dt * L3
            U[i, j, 0] = n0
            U[i, j, 1] = n1
            U[i, j, 2] = n2
            U[i, j, 3] = n3
            r0 = (n0 - u0) / dt
            r1 = (n1 - u1) / dt
            r2 = (n2 - u2) / dt
            r3 = (n3 - u3) / dt
            resid[i, j, 0] = r0
            resid[i, j, 1] = r1
            resid[i, j, 2] = r2
            resid[i, j, 3] = r3
            total += abs(r0) + abs(r1) + abs(r2) + abs(r3)
    return total


@njit(**_jit)
def eval_operator(
    U, xsegs, xG, ysegs, yG, L, fx, fy, src, has_src,
    dxi, dyi, scheme, fk, lamx, lamy, wp, gam, line, faces,
):
    """Spatial operator over the whole field, one flux per interface.

    L must be zero-initialized by the caller at non-fluid entries (only fluid
    entries are written).  Face fluxes are stored in fx/fy: fx[i, j] is the
    flux between points i and i+1 of row j; fy[i, j] between j and j+1.
    """
    for s in range(xsegs.shape[0]):
        j = xsegs[s, 0]
        a = xsegs[s, 1]
        b = xsegs[s, 2]
        n = b - a + 1
        for m in range(3):
            for c in range(4):
                line[m, c] = xG[s, m, c]
                line[n + 3 + m, c] = xG[s, 3 + m, c]
        for k in range(n):
            for c in range(4):
                line[3 + k, c] = U[a + k, j, c]
        for m in range(n + 1):
            f0, f1, f2, f3 = face_flux(line[m:m + 6], 0, scheme, fk, lamx, wp, gam)
            faces[m, 0] = f0
            faces[m, 1] = f1
            faces[m, 2] = f2
            faces[m, 3] = f3
            fx[a - 1 + m, j, 0] = f0
            fx[a - 1 + m, j, 1] = f1
            fx[a - 1 + m, j, 2] = f2
            fx[a - 1 + m, j, 3] = f3
        for k in range(n):
            for c in range(4):
                L[a + k, j, c] = -(faces[k + 1, c] - faces[k, c]) * dxi
    for s in range(ysegs.shape[0]):
        i = ysegs[s, 0]
        a = ysegs[s, 1]
        b = ysegs[s, 2]
        n = b - a + 1
        for m in range(3):
            for c in range(4):
                line[m, c] = yG[s, m, c]
                line[n + 3 + m, c] = yG[s, 3 + m, c]
        for k in range(n):
            for c in range(4):
                line[3 + k, c] = U[i, a + k, c]
        for m in range(n + 1):
            f0, f1, f2, f3 = face_flux(line[m:m + 6], 1, scheme, fk, lamy, wp, gam)
            faces[m, 0] = f0
            faces[m, 1] = f1
            faces[m, 2] = f2
            faces[m, 3] = f3
            fy[i, a - 1 + m, 0] = f0
            fy[i, a - 1 + m, 1] = f1
            fy[i, a - 1 + m, 2] = f2
            fy[i, a - 1 + m, 3] = f3
        for k in range(n):
            for c in range(4):
                L[i, a + k, c] += -(faces[k + 1, c] - faces[k, c]) * dyi
    if has_src:
        for s in range(xsegs.shape[0]):
            j = xsegs[s, 0]
            for k in range(xsegs[s, 1], xsegs[s, 2] + 1):
                for c in range(4):
                    L[k, j, c] += src[k, j, c]


@njit(**_jit)
def wave_speed_maxima(U, fluid, gam):
    ax = 0.0
    ay = 0.0
    for i in range(U.shape[0]):
        for j in range(U.shape[1]):
            if not fluid[i, j]:
                continue
            r = U[i, j, 0]
            mx = U[i, j, 1]
            my = U[i, j, 2]
            E = U[i, j, 3]
            p = (gam - 1.0) * (E - 0.5 * (mx * mx + my * my) / r)
            c = np.sqrt(gam * p / r)
            su = abs(mx / r) + c
            sv = abs(my / r) + c
            if su > ax:
                ax = su
            if sv > ay:
                ay = sv
    return ax, ay


@njit(**_jit)
def troubled_mask(U, fluid, xsegs, xid, xG, ysegs, yid, yG, out):
    """Per-point detector flag: any conserved component, either direction."""
    wx = np.empty((7, 4))
    wy = np.empty((7, 4))
    for i in range(U.shape[0]):
        for j in range(U.shape[1]):
            if not fluid[i, j]:
                continue
            sx = xid[i, j]
            gather_x(U, xG, sx, xsegs[sx, 1], xsegs[sx, 2], i, j, wx)
            sy = yid[i, j]
            gather_y(U, yG, sy, ysegs[sy, 1], ysegs[sy, 2], i, j, wy)
            flag = False
            for c in range(4):
                if troubled(wx[0, c], wx[1, c], wx[2, c], wx[3, c], wx[4, c]):
                    flag = True
                    break
                if troubled(wy[0, c], wy[1, c], wy[2, c], wy[3, c], wy[4, c]):
                    flag = True
                    break
            out[i, j] = flag
