"""Pure-Python (numpy) implementations of the hot kernels.

These mirror :mod:`knotimage._ccore` function for function and are used
whenever the compiled extension is unavailable.
"""

import numpy as np

# segment_intersections flags
PROPER = 0
PARALLEL_OVERLAP = 1
NEAR_ENDPOINT = 2


def convolve3x3(plane, kernel):
    """Valid 3x3 correlation (no kernel flip, no padding)."""
    plane = np.ascontiguousarray(plane, dtype=np.float64)
    kernel = np.asarray(kernel, dtype=np.float64)
    h, w = plane.shape
    out = np.zeros((h - 2, w - 2), dtype=np.float64)
    for i in range(3):
        for j in range(3):
            k = kernel[i, j]
            if k != 0.0:
                out += k * plane[i:i + h - 2, j:j + w - 2]
    return out


def balanced_bounds(length, target):
    """Start offsets of ``target`` contiguous windows covering ``length`` cells.

    The first ``length % target`` windows get one extra cell.
    """
    base, extra = divmod(length, target)
    sizes = np.full(target, base, dtype=np.intp)
    sizes[:extra] += 1
    starts = np.zeros(target, dtype=np.intp)
    starts[1:] = np.cumsum(sizes)[:-1]
    return starts, sizes


def softmax_pool(plane, target, tau):
    """Softmax-weighted average over a balanced ``target x target`` window grid."""
    plane = np.ascontiguousarray(plane, dtype=np.float64)
    h, w = plane.shape
    rs, rsz = balanced_bounds(h, target)
    cs, csz = balanced_bounds(w, target)
    wmax = np.maximum.reduceat(np.maximum.reduceat(plane, rs, axis=0), cs, axis=1)
    shift = np.repeat(np.repeat(wmax, rsz, axis=0), csz, axis=1)
    e = np.exp((plane - shift) / tau)
    num = np.add.reduceat(np.add.reduceat(e * plane, rs, axis=0), cs, axis=1)
    den = np.add.reduceat(np.add.reduceat(e, rs, axis=0), cs, axis=1)
    out = num / den
    # rounding can push a convex combination a hair outside the window range
    wmin = np.minimum.reduceat(np.minimum.reduceat(plane, rs, axis=0), cs, axis=1)
    return np.clip(out, wmin, wmax)


def segment_intersections(xy, tol):
    """Intersections between non-adjacent edges of a closed 2D polygon.

    Returns ``(i, j, s, t, flag)`` arrays with ``i < j``; ``s`` is the
    parameter on edge ``i`` and ``t`` on edge ``j``.  Pairs that meet within
    ``tol`` of an endpoint, or overlap while parallel, are reported with a
    non-zero flag so callers can reject the projection.
    """
    xy = np.ascontiguousarray(xy, dtype=np.float64)
    n = len(xy)
    p0 = xy
    r = np.roll(xy, -1, axis=0) - xy
    ii, jj = np.triu_indices(n, k=2)
    keep = ~((ii == 0) & (jj == n - 1))
    ii, jj = ii[keep], jj[keep]
    empty = (np.zeros(0, np.intp), np.zeros(0, np.intp), np.zeros(0), np.zeros(0), np.zeros(0, np.intp))
    if len(ii) == 0:
        return empty

    lo = np.minimum(p0, p0 + r) - tol
    hi = np.maximum(p0, p0 + r) + tol
    box = np.all((lo[ii] <= hi[jj]) & (lo[jj] <= hi[ii]), axis=1)
    ii, jj = ii[box], jj[box]
    if len(ii) == 0:
        return empty

    a, ra = p0[ii], r[ii]
    b, rb = p0[jj], r[jj]
    la = np.hypot(ra[:, 0], ra[:, 1])
    lb = np.hypot(rb[:, 0], rb[:, 1])
    wv = b - a
    den = ra[:, 0] * rb[:, 1] - ra[:, 1] * rb[:, 0]
    cross_w_rb = wv[:, 0] * rb[:, 1] - wv[:, 1] * rb[:, 0]
    cross_w_ra = wv[:, 0] * ra[:, 1] - wv[:, 1] * ra[:, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        parallel = np.abs(den) <= 1e-12 * la * lb
        s = np.where(parallel, np.nan, cross_w_rb / den)
        t = np.where(parallel, np.nan, cross_w_ra / den)
        ta = tol / la
        tb = tol / lb

    flags = np.full(len(ii), -1, dtype=np.intp)

    # parallel: overlap if the lines are within tol and the extents meet
    if np.any(parallel):
        dist = np.abs(cross_w_ra) / la
        ua = ra / la[:, None]
        pb0 = np.einsum("ij,ij->i", wv, ua)
        pb1 = np.einsum("ij,ij->i", wv + rb, ua)
        overlap = (np.maximum(pb0, pb1) >= -tol) & (np.minimum(pb0, pb1) <= la + tol)
        flags[parallel & (dist <= tol) & overlap] = PARALLEL_OVERLAP

    ok = ~parallel
    hit = ok & (s >= -ta) & (s <= 1 + ta) & (t >= -tb) & (t <= 1 + tb)
    near = hit & ((s <= ta) | (s >= 1 - ta) | (t <= tb) | (t >= 1 - tb))
    flags[hit] = PROPER
    flags[near] = NEAR_ENDPOINT

    sel = flags >= 0
    return ii[sel], jj[sel], s[sel], t[sel], flags[sel]


def triangle_blocked(pts, i, tol):
    """Whether removing vertex ``i`` of the closed polygon ``pts`` is unsafe.

    The move replaces edges ``(i-1, i), (i, i+1)`` by ``(i-1, i+1)``; it is an
    isotopy when no other edge meets the closed triangle.  Near misses within
    ``tol`` count as blocking.
    """
    n = len(pts)
    ip, inx = (i - 1) % n, (i + 1) % n
    A, B, C = pts[ip], pts[i], pts[inx]
    nrm = np.cross(B - A, C - A)
    area2 = np.linalg.norm(nrm)
    if area2 <= tol * tol:
        return True
    nrm = nrm / area2
    idx = np.arange(n)
    others = idx[(idx != ip) & (idx != i)]
    p = pts[others]
    q = pts[(others + 1) % n]
    dp = (p - A) @ nrm
    dq = (q - A) @ nrm

    # edges touching the triangle at A or C: blocked only if nearly coplanar
    touch = (others == (ip - 1) % n) | (others == inx)
    if np.any(touch):
        far = np.where(others[touch] == inx, dq[touch], dp[touch])
        if np.any(np.abs(far) <= tol):
            return True
    p, q, dp, dq = p[~touch], q[~touch], dp[~touch], dq[~touch]
    if len(p) == 0:
        return False
    coplanar = (np.abs(dp) <= tol) & (np.abs(dq) <= tol)
    if np.any(coplanar):
        return True
    crosses = ~(((dp > tol) & (dq > tol)) | ((dp < -tol) & (dq < -tol)))
    if not np.any(crosses):
        return False
    p, q, dp, dq = p[crosses], q[crosses], dp[crosses], dq[crosses]
    denom = dp - dq
    lam = np.where(np.abs(denom) > 0, dp / np.where(denom == 0, 1.0, denom), 0.5)
    lam = np.clip(lam, 0.0, 1.0)
    x = p + lam[:, None] * (q - p)
    return bool(np.any(_in_triangle(x, A, B, C, nrm, tol)))


def _in_triangle(x, A, B, C, nrm, tol):
    inside = np.ones(len(x), dtype=bool)
    for P, Q in ((A, B), (B, C), (C, A)):
        edge = Q - P
        out = np.cross(nrm, edge)  # inward normal in the triangle plane
        out = out / np.linalg.norm(out)
        inside &= (x - P) @ out >= -tol
    return inside


def reduce_polygon(pts, tol):
    """Greedy vertex elimination by triangle moves until none applies."""
    pts = np.array(pts, dtype=np.float64)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        i = 0
        while i < len(pts) and len(pts) > 3:
            if not triangle_blocked(pts, i, tol):
                pts = np.delete(pts, i, axis=0)
                changed = True
            else:
                i += 1
    return pts
