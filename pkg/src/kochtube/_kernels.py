"""Compiled inner loops for the geometric oracle.

A piece of the Koch curve is the image T(z) = d * C(z) + o of the standard
curve K (base [0, 1], bumps to the left), where C is the identity or complex
conjugation according to ``flip``.  K = f1(K) u f2(K) with f1(z) = rho conj(z)
and f2(z) = (1 - rho) conj(z) + rho, so each child flips the flag.  The hull
of a piece is the triangle (o, o + d, o + d C(rho)).
"""
import math

import numba as nb
import numpy as np

SQRT3 = math.sqrt(3.0)
RHO_RE = 0.5
RHO_IM = 0.5 / SQRT3
_STACK = 256


@nb.njit(cache=True)
def seg_dist(px, py, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    qx = ax + t * dx - px
    qy = ay + t * dy - py
    return math.sqrt(qx * qx + qy * qy)


@nb.njit(cache=True)
def tri_dist(px, py, ax, ay, bx, by, cx, cy):
    """Distance from p to the filled triangle abc (0 inside)."""
    d1 = (px - bx) * (ay - by) - (ax - bx) * (py - by)
    d2 = (px - cx) * (by - cy) - (bx - cx) * (py - cy)
    d3 = (px - ax) * (cy - ay) - (cx - ax) * (py - ay)
    neg = d1 < 0.0 or d2 < 0.0 or d3 < 0.0
    pos = d1 > 0.0 or d2 > 0.0 or d3 > 0.0
    if not (neg and pos):
        return 0.0
    return min(seg_dist(px, py, ax, ay, bx, by),
               min(seg_dist(px, py, bx, by, cx, cy), seg_dist(px, py, cx, cy, ax, ay)))


@nb.njit(cache=True)
def _child(o_r, o_i, d_r, d_i, flip, k):
    if k == 0:
        al_r, al_i, be_r, be_i = RHO_RE, RHO_IM, 0.0, 0.0
    else:
        al_r, al_i, be_r, be_i = 1.0 - RHO_RE, -RHO_IM, RHO_RE, RHO_IM
    if flip:
        al_i = -al_i
        be_i = -be_i
    nd_r = d_r * al_r - d_i * al_i
    nd_i = d_r * al_i + d_i * al_r
    no_r = o_r + d_r * be_r - d_i * be_i
    no_i = o_i + d_r * be_i + d_i * be_r
    return no_r, no_i, nd_r, nd_i


@nb.njit(cache=True)
def _apex(o_r, o_i, d_r, d_i, flip):
    ci = -RHO_IM if flip else RHO_IM
    return o_r + d_r * RHO_RE - d_i * ci, o_i + d_r * ci + d_i * RHO_RE


@nb.njit(cache=True)
def curve_distance(px, py, ox, oy, dx, dy, tol):
    """Distance from p to the Koch piece o + d K, within tol (branch and bound)."""
    so = np.empty(_STACK)
    soi = np.empty(_STACK)
    sd = np.empty(_STACK)
    sdi = np.empty(_STACK)
    sf = np.empty(_STACK, np.int8)
    so[0], soi[0], sd[0], sdi[0], sf[0] = ox, oy, dx, dy, 0
    top = 1
    ub = min(math.hypot(px - ox, py - oy), math.hypot(px - ox - dx, py - oy - dy))
    while top > 0:
        top -= 1
        o_r, o_i, d_r, d_i, fl = so[top], soi[top], sd[top], sdi[top], sf[top]
        ax, ay = _apex(o_r, o_i, d_r, d_i, fl)
        # the ends and the apex of every piece are points of K
        ub = min(ub, math.hypot(px - o_r, py - o_i), math.hypot(px - o_r - d_r, py - o_i - d_i),
                 math.hypot(px - ax, py - ay))
        lb = tri_dist(px, py, o_r, o_i, o_r + d_r, o_i + d_i, ax, ay)
        if lb >= ub - tol:
            continue
        if math.hypot(d_r, d_i) < tol:
            continue
        for k in range(2):
            no_r, no_i, nd_r, nd_i = _child(o_r, o_i, d_r, d_i, fl, k)
            so[top], soi[top], sd[top], sdi[top], sf[top] = no_r, no_i, nd_r, nd_i, 1 - fl
            top += 1
    return ub


@nb.njit(cache=True)
def near_side(px, py, ox, oy, dx, dy, eps, minsize):
    """1 if dist(p, piece) < eps, 0 if not, 2 if undecided at resolution minsize."""
    so = np.empty(_STACK)
    soi = np.empty(_STACK)
    sd = np.empty(_STACK)
    sdi = np.empty(_STACK)
    sf = np.empty(_STACK, np.int8)
    so[0], soi[0], sd[0], sdi[0], sf[0] = ox, oy, dx, dy, 0
    top = 1
    undecided = False
    while top > 0:
        top -= 1
        o_r, o_i, d_r, d_i, fl = so[top], soi[top], sd[top], sdi[top], sf[top]
        ax, ay = _apex(o_r, o_i, d_r, d_i, fl)
        if (math.hypot(px - o_r, py - o_i) < eps
                or math.hypot(px - o_r - d_r, py - o_i - d_i) < eps
                or math.hypot(px - ax, py - ay) < eps):
            return 1
        if tri_dist(px, py, o_r, o_i, o_r + d_r, o_i + d_i, ax, ay) >= eps:
            continue
        if math.hypot(d_r, d_i) < minsize:
            undecided = True
            continue
        for k in range(2):
            no_r, no_i, nd_r, nd_i = _child(o_r, o_i, d_r, d_i, fl, k)
            so[top], soi[top], sd[top], sdi[top], sf[top] = no_r, no_i, nd_r, nd_i, 1 - fl
            top += 1
    return 2 if undecided else 0


@nb.njit(cache=True)
def under_side(px, py, ox, oy, dx, dy, maxdepth):
    """Is p between the base segment and the piece?  1 yes, 0 no, 2 + parity if undecided.

    The hulls of the two children cover the parent hull's curve; a point in the
    parent hull but in neither child hull is decided by the current parity,
    which flips at every descent because each child's bumps point the other way
    relative to the parent region.
    """
    o_r, o_i, d_r, d_i, fl = ox, oy, dx, dy, 0
    par = 0
    for _ in range(maxdepth):
        ax, ay = _apex(o_r, o_i, d_r, d_i, fl)
        if tri_dist(px, py, o_r, o_i, o_r + d_r, o_i + d_i, ax, ay) > 0.0:
            return par
        found = False
        for k in range(2):
            no_r, no_i, nd_r, nd_i = _child(o_r, o_i, d_r, d_i, fl, k)
            cx, cy = _apex(no_r, no_i, nd_r, nd_i, 1 - fl)
            if tri_dist(px, py, no_r, no_i, no_r + nd_r, no_i + nd_i, cx, cy) == 0.0:
                o_r, o_i, d_r, d_i, fl = no_r, no_i, nd_r, nd_i, 1 - fl
                found = True
                break
        if not found:
            return 1 - par
        par = 1 - par
    return 2 + par


@nb.njit(cache=True)
def tally(xs, ys, eps, maxdepth, minsize):
    """Weighted count of snowflake points within eps of the boundary.

    Weights are scaled by 10 so that sums stay exact integers: a decided point
    weighs 10, undecided membership 6 or 4, undecided nearness halves.
    Returns (sum w, sum w^2, undecided count).
    """
    vx = np.array([0.0, 0.5, 1.0])
    vy = np.array([0.0, 0.5 * SQRT3, 0.0])
    s1 = 0
    s2 = 0
    und = 0
    for i in range(xs.shape[0]):
        px = xs[i]
        py = ys[i]
        w = 0
        if tri_dist(px, py, vx[0], vy[0], vx[1], vy[1], vx[2], vy[2]) == 0.0:
            w = 10
        else:
            for s in range(3):
                t = (s + 1) % 3
                u = under_side(px, py, vx[s], vy[s], vx[t] - vx[s], vy[t] - vy[s], maxdepth)
                if u == 1:
                    w = 10
                    break
                if u == 2:
                    w = 6
                    break
                if u == 3:
                    w = 4
                    break
        if w == 0:
            continue
        near = 0
        for s in range(3):
            t = (s + 1) % 3
            r = near_side(px, py, vx[s], vy[s], vx[t] - vx[s], vy[t] - vy[s], eps, minsize)
            if r == 1:
                near = 1
                break
            if r == 2:
                near = 2
        if near != 0 and (w != 10 or near == 2):
            und += 1
        if near == 1:
            s1 += w
            s2 += w * w
        elif near == 2:
            s1 += w // 2
            s2 += (w // 2) * (w // 2)
    return s1, s2, und


@nb.njit(cache=True)
def polyline_distance(px, py, verts):
    best = np.inf
    for j in range(verts.shape[0] - 1):
        d = seg_dist(px, py, verts[j, 0], verts[j, 1], verts[j + 1, 0], verts[j + 1, 1])
        if d < best:
            best = d
    return best
