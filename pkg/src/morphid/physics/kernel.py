"""Articulated rigid-body dynamics kernels.

Generalized coordinates: floating base (position + unit quaternion w,x,y,z)
plus one angle per revolute joint. The velocity vector u stacks the base
twist in the base frame (angular 0:3, linear 3:6) and the joint rates.

Per step: forward kinematics and body-frame spatial velocities; penalty
ground contacts (linear spring-damper normal force, regularized Coulomb
friction); joint PD torques with effort clamping; bias forces via a
recursive Newton-Euler pass (zero acceleration, gravity as a fictitious base
acceleration); joint-space inertia via the composite-rigid-body algorithm in
center-of-mass form; velocity update with joint damping handled implicitly
((H + dt*D) u+ = H u + dt*(tau - C)); symplectic Euler position update with
quaternion exponential for the base orientation.

All math is float64 without fastmath, so trajectories are reproducible on a
given platform.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# status codes returned by run_steps
OK = 0
TOPPLED = 1


@njit(cache=True)
def quat_to_rot(q, R):
    w, x, y, z = q[0], q[1], q[2], q[3]
    xx, yy, zz = x * x, y * y, z * z
    xy, xz, yz = x * y, x * z, y * z
    wx, wy, wz = w * x, w * y, w * z
    R[0, 0] = 1.0 - 2.0 * (yy + zz)
    R[0, 1] = 2.0 * (xy - wz)
    R[0, 2] = 2.0 * (xz + wy)
    R[1, 0] = 2.0 * (xy + wz)
    R[1, 1] = 1.0 - 2.0 * (xx + zz)
    R[1, 2] = 2.0 * (yz - wx)
    R[2, 0] = 2.0 * (xz - wy)
    R[2, 1] = 2.0 * (yz + wx)
    R[2, 2] = 1.0 - 2.0 * (xx + yy)


@njit(cache=True)
def quat_mul(a, b, out):
    out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2]
    out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]
    out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]


@njit(cache=True)
def quat_exp_body(omega, dt, out):
    """Unit quaternion for a body-frame rotation omega*dt."""
    wx, wy, wz = omega[0] * dt, omega[1] * dt, omega[2] * dt
    angle = np.sqrt(wx * wx + wy * wy + wz * wz)
    if angle < 1e-12:
        out[0] = 1.0
        out[1] = 0.5 * wx
        out[2] = 0.5 * wy
        out[3] = 0.5 * wz
    else:
        half = 0.5 * angle
        s = np.sin(half) / angle
        out[0] = np.cos(half)
        out[1] = s * wx
        out[2] = s * wy
        out[3] = s * wz
    n = np.sqrt(out[0] ** 2 + out[1] ** 2 + out[2] ** 2 + out[3] ** 2)
    for k in range(4):
        out[k] /= n


@njit(cache=True)
def rodrigues(axis, angle, R):
    c = np.cos(angle)
    s = np.sin(angle)
    t = 1.0 - c
    x, y, z = axis[0], axis[1], axis[2]
    R[0, 0] = c + x * x * t
    R[0, 1] = x * y * t - z * s
    R[0, 2] = x * z * t + y * s
    R[1, 0] = x * y * t + z * s
    R[1, 1] = c + y * y * t
    R[1, 2] = y * z * t - x * s
    R[2, 0] = x * z * t - y * s
    R[2, 1] = y * z * t + x * s
    R[2, 2] = c + z * z * t


@njit(cache=True, inline="always")
def _cross(a, b, out):
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


@njit(cache=True)
def fk_velocity(parent, r_tree, R_tree, axis, base_pos, base_quat, theta, u, Rw, pw, E, vb):
    """World poses (Rw, pw), parent->child rotations E, and body-frame
    spatial velocities vb (angular 0:3, linear 3:6)."""
    nb = parent.shape[0]
    quat_to_rot(base_quat, Rw[0])
    for k in range(3):
        pw[0, k] = base_pos[k]
        vb[0, k] = u[k]
        vb[0, 3 + k] = u[3 + k]
    Rj = np.empty((3, 3))
    Raxis = np.empty((3, 3))
    tmp = np.empty(3)
    for i in range(1, nb):
        p = parent[i]
        rodrigues(axis[i], theta[i - 1], Raxis)
        for a in range(3):
            for b in range(3):
                s = 0.0
                for c in range(3):
                    s += R_tree[i, a, c] * Raxis[c, b]
                Rj[a, b] = s
        # E = Rj^T maps parent coords to child coords
        for a in range(3):
            for b in range(3):
                E[i, a, b] = Rj[b, a]
        # world pose
        for a in range(3):
            for b in range(3):
                s = 0.0
                for c in range(3):
                    s += Rw[p, a, c] * Rj[c, b]
                Rw[i, a, b] = s
        for a in range(3):
            s = pw[p, a]
            for c in range(3):
                s += Rw[p, a, c] * r_tree[i, c]
            pw[i, a] = s
        # velocity: rotate parent twist into child, shift by r_tree
        _cross(vb[p, 0:3], r_tree[i], tmp)
        for a in range(3):
            wline = 0.0
            vline = 0.0
            for c in range(3):
                wline += E[i, a, c] * vb[p, c]
                vline += E[i, a, c] * (vb[p, 3 + c] + tmp[c])
            vb[i, a] = wline
            vb[i, 3 + a] = vline
        qd = u[6 + i - 1]
        for a in range(3):
            vb[i, a] += axis[i, a] * qd


@njit(cache=True)
def body_jacobians(parent, r_tree, axis, E, Jb):
    """Body-frame spatial Jacobians: vb[i] = Jb[i] @ u. Jb is (nb, 6, nv)."""
    nb = parent.shape[0]
    nv = Jb.shape[2]
    for a in range(6):
        for c in range(nv):
            Jb[0, a, c] = 1.0 if a == c else 0.0
    tmp = np.empty(3)
    for i in range(1, nb):
        p = parent[i]
        for c in range(nv):
            tmp[0] = Jb[p, 1, c] * r_tree[i, 2] - Jb[p, 2, c] * r_tree[i, 1]
            tmp[1] = Jb[p, 2, c] * r_tree[i, 0] - Jb[p, 0, c] * r_tree[i, 2]
            tmp[2] = Jb[p, 0, c] * r_tree[i, 1] - Jb[p, 1, c] * r_tree[i, 0]
            for a in range(3):
                sang = 0.0
                slin = 0.0
                for d in range(3):
                    sang += E[i, a, d] * Jb[p, d, c]
                    slin += E[i, a, d] * (Jb[p, 3 + d, c] + tmp[d])
                Jb[i, a, c] = sang
                Jb[i, 3 + a, c] = slin
        j = 6 + i - 1
        for a in range(3):
            Jb[i, a, j] += axis[i, a]


@njit(cache=True)
def apply_contacts(
    cp_body, cp_pos, cp_radius, Rw, pw, vb, Jb, kn, cn, mu, kt, fext, A, dt
):
    """Penalty ground contacts. Normal spring forces go into fext (body
    frame); all contact damping (normal + tangential friction) is added to
    the implicit system matrix A as dt * Jpt^T diag(kt_eff, kt_eff, cn) Jpt,
    with kt_eff reduced per contact so the friction force respects the
    Coulomb cap at the current slip speed. Returns active contact count."""
    count = 0
    nv = A.shape[0]
    x = np.empty(3)
    vpt = np.empty(3)
    tmp = np.empty(3)
    fb = np.empty(3)
    jpt = np.empty((3, nv))
    for k in range(cp_body.shape[0]):
        b = cp_body[k]
        for a in range(3):
            s = pw[b, a]
            for c in range(3):
                s += Rw[b, a, c] * cp_pos[k, c]
            x[a] = s
        depth = cp_radius[k] - x[2]
        if depth <= 0.0:
            continue
        count += 1
        fz = kn * depth
        # world-frame point velocity
        _cross(vb[b, 0:3], cp_pos[k], tmp)
        for a in range(3):
            s = 0.0
            for c in range(3):
                s += Rw[b, a, c] * (vb[b, 3 + c] + tmp[c])
            vpt[a] = s
        slip = np.sqrt(vpt[0] ** 2 + vpt[1] ** 2)
        kt_eff = kt
        cap = mu * fz / max(slip, 1e-4)
        if cap < kt_eff:
            kt_eff = cap
        # spring force (0, 0, fz) world -> body wrench
        for a in range(3):
            fb[a] = Rw[b, 2, a] * fz
        _cross(cp_pos[k], fb, tmp)
        for a in range(3):
            fext[b, a] += tmp[a]
            fext[b, 3 + a] += fb[a]
        # world point Jacobian rows
        for c in range(nv):
            tmp[0] = Jb[b, 1, c] * cp_pos[k, 2] - Jb[b, 2, c] * cp_pos[k, 1]
            tmp[1] = Jb[b, 2, c] * cp_pos[k, 0] - Jb[b, 0, c] * cp_pos[k, 2]
            tmp[2] = Jb[b, 0, c] * cp_pos[k, 1] - Jb[b, 1, c] * cp_pos[k, 0]
            for a in range(3):
                s = 0.0
                for d in range(3):
                    s += Rw[b, a, d] * (Jb[b, 3 + d, c] + tmp[d])
                jpt[a, c] = s
        # A += dt * Jpt^T diag(kt_eff, kt_eff, cn) Jpt
        for q in range(nv):
            for r in range(q, nv):
                s = dt * (
                    kt_eff * (jpt[0, q] * jpt[0, r] + jpt[1, q] * jpt[1, r])
                    + cn * jpt[2, q] * jpt[2, r]
                )
                A[q, r] += s
                if r != q:
                    A[r, q] += s
    return count


@njit(cache=True)
def rnea_bias(parent, r_tree, axis, mass, com, inertia_com, E, vb, u, Rw0, gravity, fext, C):
    """Bias wrench C(q, u) - S^T f_ext with zero acceleration and gravity as
    an upward fictitious base acceleration."""
    nb = parent.shape[0]
    a = np.zeros((nb, 6))
    f = np.zeros((nb, 6))
    tmp = np.empty(3)
    tmp2 = np.empty(3)
    pl = np.empty(3)
    hO = np.empty(3)
    Fl = np.empty(3)
    N = np.empty(3)
    # gravity trick: base "accelerates" upward at g (world), in base coords
    for k in range(3):
        a[0, 3 + k] = Rw0[2, k] * gravity
    for i in range(nb):
        if i > 0:
            p = parent[i]
            _cross(a[p, 0:3], r_tree[i], tmp)
            for q in range(3):
                sang = 0.0
                slin = 0.0
                for c in range(3):
                    sang += E[i, q, c] * a[p, c]
                    slin += E[i, q, c] * (a[p, 3 + c] + tmp[c])
                a[i, q] = sang
                a[i, 3 + q] = slin
            qd = u[6 + i - 1]
            for q in range(3):
                tmp[q] = axis[i, q] * qd
            _cross(vb[i, 0:3], tmp, tmp2)
            for q in range(3):
                a[i, q] += tmp2[q]
            _cross(vb[i, 3:6], tmp, tmp2)
            for q in range(3):
                a[i, 3 + q] += tmp2[q]
        # momentum and its rate
        _cross(vb[i, 0:3], com[i], tmp)
        for q in range(3):
            pl[q] = mass[i] * (vb[i, 3 + q] + tmp[q])
        for q in range(3):
            s = 0.0
            for c in range(3):
                s += inertia_com[i, q, c] * vb[i, c]
            hO[q] = s
        _cross(com[i], pl, tmp)
        for q in range(3):
            hO[q] += tmp[q]
        _cross(a[i, 0:3], com[i], tmp)
        for q in range(3):
            Fl[q] = mass[i] * (a[i, 3 + q] + tmp[q])
        for q in range(3):
            s = 0.0
            for c in range(3):
                s += inertia_com[i, q, c] * a[i, c]
            N[q] = s
        _cross(com[i], Fl, tmp)
        for q in range(3):
            N[q] += tmp[q]
        _cross(vb[i, 0:3], hO, tmp)
        _cross(vb[i, 3:6], pl, tmp2)
        for q in range(3):
            f[i, q] = N[q] + tmp[q] + tmp2[q] - fext[i, q]
        _cross(vb[i, 0:3], pl, tmp)
        for q in range(3):
            f[i, 3 + q] = Fl[q] + tmp[q] - fext[i, 3 + q]
    for i in range(nb - 1, 0, -1):
        s = 0.0
        for q in range(3):
            s += axis[i, q] * f[i, q]
        C[6 + i - 1] = s
        p = parent[i]
        for q in range(3):
            sf = 0.0
            sn = 0.0
            for c in range(3):
                sf += E[i, c, q] * f[i, 3 + c]
                sn += E[i, c, q] * f[i, c]
            tmp[q] = sf  # E^T f_lin
            tmp2[q] = sn  # E^T f_ang
        for q in range(3):
            f[p, 3 + q] += tmp[q]
        _cross(r_tree[i], tmp, pl)
        for q in range(3):
            f[p, q] += tmp2[q] + pl[q]
    for q in range(6):
        C[q] = f[0, q]


@njit(cache=True)
def crba(parent, r_tree, axis, mass, com, inertia_com, E, H):
    """Joint-space inertia matrix (6 base + nj joints), com-form composites."""
    nb = parent.shape[0]
    msub = mass.copy()
    csub = com.copy()
    Isub = inertia_com.copy()
    tmp = np.empty(3)
    d = np.empty(3)
    # fold subtree composites into parents (children have larger indices)
    for i in range(nb - 1, 0, -1):
        p = parent[i]
        m2 = msub[i]
        if m2 <= 0.0:
            continue
        # child composite expressed in parent frame
        c2 = np.empty(3)
        for q in range(3):
            s = r_tree[i, q]
            for c in range(3):
                s += E[i, c, q] * csub[i, c]
            c2[q] = s
        I2 = np.empty((3, 3))
        for q in range(3):
            for r in range(3):
                s = 0.0
                for c1 in range(3):
                    for c2i in range(3):
                        s += E[i, c1, q] * Isub[i, c1, c2i] * E[i, c2i, r]
                I2[q, r] = s
        m1 = msub[p]
        mt = m1 + m2
        for q in range(3):
            d[q] = (m1 * csub[p, q] + m2 * c2[q]) / mt
        # parallel-axis both parts onto the combined com
        for q in range(3):
            for r in range(3):
                Isub[p, q, r] += I2[q, r]
        for part in range(2):
            if part == 0:
                mm = m1
                for q in range(3):
                    tmp[q] = csub[p, q] - d[q]
            else:
                mm = m2
                for q in range(3):
                    tmp[q] = c2[q] - d[q]
            dd = tmp[0] ** 2 + tmp[1] ** 2 + tmp[2] ** 2
            for q in range(3):
                for r in range(3):
                    Isub[p, q, r] += mm * ((dd if q == r else 0.0) - tmp[q] * tmp[r])
        for q in range(3):
            csub[p, q] = d[q]
        msub[p] = mt

    n = H.shape[0]
    for q in range(n):
        for r in range(n):
            H[q, r] = 0.0
    Ua = np.empty(3)
    Ul = np.empty(3)
    Ua2 = np.empty(3)
    Ul2 = np.empty(3)
    for i in range(1, nb):
        ji = 6 + i - 1
        # U = composite inertia of subtree i applied to unit joint motion
        _cross(axis[i], csub[i], tmp)
        for q in range(3):
            Ul[q] = msub[i] * tmp[q]
        for q in range(3):
            s = 0.0
            for c in range(3):
                s += Isub[i, q, c] * axis[i, c]
            Ua[q] = s
        _cross(csub[i], Ul, tmp)
        for q in range(3):
            Ua[q] += tmp[q]
        s = 0.0
        for q in range(3):
            s += axis[i, q] * Ua[q]
        H[ji, ji] = s
        k = i
        while parent[k] != -1:
            # transform U from frame k to its parent (force transform)
            for q in range(3):
                sf = 0.0
                sn = 0.0
                for c in range(3):
                    sf += E[k, c, q] * Ul[c]
                    sn += E[k, c, q] * Ua[c]
                Ul2[q] = sf
                Ua2[q] = sn
            _cross(r_tree[k], Ul2, tmp)
            for q in range(3):
                Ul[q] = Ul2[q]
                Ua[q] = Ua2[q] + tmp[q]
            k = parent[k]
            if k > 0:
                s = 0.0
                for q in range(3):
                    s += axis[k, q] * Ua[q]
                H[ji, 6 + k - 1] = s
                H[6 + k - 1, ji] = s
        for q in range(3):
            H[ji, q] = Ua[q]
            H[ji, 3 + q] = Ul[q]
            H[q, ji] = Ua[q]
            H[3 + q, ji] = Ul[q]
    # base-base block from the whole-robot composite
    m = msub[0]
    cc = csub[0]
    dd = cc[0] ** 2 + cc[1] ** 2 + cc[2] ** 2
    for q in range(3):
        for r in range(3):
            H[q, r] = Isub[0, q, r] + m * ((dd if q == r else 0.0) - cc[q] * cc[r])
    H[0, 4] = -m * cc[2]
    H[0, 5] = m * cc[1]
    H[1, 3] = m * cc[2]
    H[1, 5] = -m * cc[0]
    H[2, 3] = -m * cc[1]
    H[2, 4] = m * cc[0]
    H[0, 3] = H[1, 4] = H[2, 5] = 0.0
    for q in range(3):
        for r in range(3):
            H[3 + q, r] = H[r, 3 + q]
    for q in range(3):
        for r in range(3):
            H[3 + q, 3 + r] = m if q == r else 0.0


@njit(cache=True)
def physics_step(
    parent, r_tree, R_tree, axis, mass, com, inertia_com,
    cp_body, cp_pos, cp_radius,
    joint_lower, joint_upper, joint_effort, joint_damping,
    base_pos, base_quat, theta, u, targets,
    dt, gravity, kn, cn, mu, kt, kp, kd, limit_k, fixed_base,
):
    """One integration step in place. Returns number of ground contacts."""
    nb = parent.shape[0]
    nj = nb - 1
    nv = 6 + nj
    Rw = np.empty((nb, 3, 3))
    pw = np.empty((nb, 3))
    E = np.empty((nb, 3, 3))
    vb = np.empty((nb, 6))
    fk_velocity(parent, r_tree, R_tree, axis, base_pos, base_quat, theta, u, Rw, pw, E, vb)

    H = np.empty((nv, nv))
    crba(parent, r_tree, axis, mass, com, inertia_com, E, H)
    A = H.copy()
    for j in range(nj):
        A[6 + j, 6 + j] += dt * (kd + joint_damping[j])

    fext = np.zeros((nb, 6))
    ncon = 0
    if not fixed_base:
        Jb = np.empty((nb, 6, nv))
        body_jacobians(parent, r_tree, axis, E, Jb)
        ncon = apply_contacts(
            cp_body, cp_pos, cp_radius, Rw, pw, vb, Jb, kn, cn, mu, kt, fext, A, dt
        )

    tau = np.empty(nj)
    for j in range(nj):
        t = kp * (targets[j] - theta[j])
        if t > joint_effort[j]:
            t = joint_effort[j]
        elif t < -joint_effort[j]:
            t = -joint_effort[j]
        if theta[j] > joint_upper[j]:
            t += limit_k * (joint_upper[j] - theta[j])
        elif theta[j] < joint_lower[j]:
            t += limit_k * (joint_lower[j] - theta[j])
        tau[j] = t

    C = np.empty(nv)
    rnea_bias(parent, r_tree, axis, mass, com, inertia_com, E, vb, u, Rw[0], gravity, fext, C)

    # (H + dt*D) u+ = H u + dt * (S tau - C)
    b = H @ u
    for q in range(nv):
        b[q] -= dt * C[q]
    for j in range(nj):
        b[6 + j] += dt * tau[j]
    if fixed_base:
        u_joint = np.linalg.solve(A[6:, 6:].copy(), b[6:].copy())
        for q in range(6):
            u[q] = 0.0
        for j in range(nj):
            u[6 + j] = u_joint[j]
    else:
        u_new = np.linalg.solve(A, b)
        for q in range(nv):
            u[q] = u_new[q]

    # integrate
    for j in range(nj):
        theta[j] += dt * u[6 + j]
    if not fixed_base:
        for q in range(3):
            s = 0.0
            for c in range(3):
                s += Rw[0, q, c] * u[3 + c]
            base_pos[q] += dt * s
        dq = np.empty(4)
        qn = np.empty(4)
        quat_exp_body(u[0:3], dt, dq)
        quat_mul(base_quat, dq, qn)
        norm = np.sqrt(qn[0] ** 2 + qn[1] ** 2 + qn[2] ** 2 + qn[3] ** 2)
        for q in range(4):
            base_quat[q] = qn[q] / norm
    return ncon


@njit(cache=True)
def is_toppled(base_quat):
    """|roll| > pi/2 or |pitch| > pi/2 with Rz(yaw)Ry(pitch)Rx(roll) Euler."""
    R = np.empty((3, 3))
    quat_to_rot(base_quat, R)
    sp = -R[2, 0]
    if sp > 1.0:
        sp = 1.0
    elif sp < -1.0:
        sp = -1.0
    pitch = np.arcsin(sp)
    roll = np.arctan2(R[2, 1], R[2, 2])
    return np.abs(roll) > np.pi / 2.0 or np.abs(pitch) > np.pi / 2.0


@njit(cache=True)
def run_steps(
    n_steps,
    parent, r_tree, R_tree, axis, mass, com, inertia_com,
    cp_body, cp_pos, cp_radius,
    joint_lower, joint_upper, joint_effort, joint_damping,
    base_pos, base_quat, theta, u, targets,
    dt, gravity, kn, cn, mu, kt, kp, kd, limit_k, fixed_base,
):
    """Advance up to n_steps; stop early on topple. Returns (status, steps)."""
    for s in range(n_steps):
        physics_step(
            parent, r_tree, R_tree, axis, mass, com, inertia_com,
            cp_body, cp_pos, cp_radius,
            joint_lower, joint_upper, joint_effort, joint_damping,
            base_pos, base_quat, theta, u, targets,
            dt, gravity, kn, cn, mu, kt, kp, kd, limit_k, fixed_base,
        )
        if not fixed_base and is_toppled(base_quat):
            return TOPPLED, s + 1
    return OK, n_steps


@njit(cache=True, inline="always")
def _seg_seg_distance(p1, q1, p2, q2):
    """Minimum distance between segments [p1,q1] and [p2,q2]."""
    d1 = np.empty(3)
    d2 = np.empty(3)
    r = np.empty(3)
    for k in range(3):
        d1[k] = q1[k] - p1[k]
        d2[k] = q2[k] - p2[k]
        r[k] = p1[k] - p2[k]
    a = d1[0] ** 2 + d1[1] ** 2 + d1[2] ** 2
    e = d2[0] ** 2 + d2[1] ** 2 + d2[2] ** 2
    f = d2[0] * r[0] + d2[1] * r[1] + d2[2] * r[2]
    eps = 1e-12
    if a <= eps and e <= eps:
        s = 0.0
        t = 0.0
    elif a <= eps:
        s = 0.0
        t = min(max(f / e, 0.0), 1.0)
    else:
        c = d1[0] * r[0] + d1[1] * r[1] + d1[2] * r[2]
        if e <= eps:
            t = 0.0
            s = min(max(-c / a, 0.0), 1.0)
        else:
            b = d1[0] * d2[0] + d1[1] * d2[1] + d1[2] * d2[2]
            denom = a * e - b * b
            if denom > eps:
                s = min(max((b * f - c * e) / denom, 0.0), 1.0)
            else:
                s = 0.0
            t = b * s + f
            if t < 0.0:
                t = 0.0
                s = min(max(-c / a, 0.0), 1.0)
            elif t > e:
                t = 1.0
                s = min(max((b - c) / a, 0.0), 1.0)
            else:
                t = t / e
    dist2 = 0.0
    for k in range(3):
        delta = (p1[k] + d1[k] * s) - (p2[k] + d2[k] * t)
        dist2 += delta * delta
    return np.sqrt(dist2)


@njit(cache=True)
def min_separation(
    pair_i, pair_j, shape_body, shape_p0, shape_p1, shape_radius, Rw, pw
):
    """Smallest surface gap over all self-collision capsule pairs
    (negative = penetration)."""
    best = 1e30
    a0 = np.empty(3)
    a1 = np.empty(3)
    b0 = np.empty(3)
    b1 = np.empty(3)
    for n in range(pair_i.shape[0]):
        i = pair_i[n]
        j = pair_j[n]
        bi = shape_body[i]
        bj = shape_body[j]
        for q in range(3):
            s0 = pw[bi, q]
            s1 = pw[bi, q]
            t0 = pw[bj, q]
            t1 = pw[bj, q]
            for c in range(3):
                s0 += Rw[bi, q, c] * shape_p0[i, c]
                s1 += Rw[bi, q, c] * shape_p1[i, c]
                t0 += Rw[bj, q, c] * shape_p0[j, c]
                t1 += Rw[bj, q, c] * shape_p1[j, c]
            a0[q] = s0
            a1[q] = s1
            b0[q] = t0
            b1[q] = t1
        gap = _seg_seg_distance(a0, a1, b0, b1) - shape_radius[i] - shape_radius[j]
        if gap < best:
            best = gap
    return best


@njit(cache=True)
def forward_kinematics(parent, r_tree, R_tree, axis, base_pos, base_quat, theta, Rw, pw):
    """Poses only (no velocities)."""
    nb = parent.shape[0]
    E = np.empty((nb, 3, 3))
    vb = np.empty((nb, 6))
    u = np.zeros(6 + nb - 1)
    fk_velocity(parent, r_tree, R_tree, axis, base_pos, base_quat, theta, u, Rw, pw, E, vb)
