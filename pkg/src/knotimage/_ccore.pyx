# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see :mod:`knotimage._pycore` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs, sqrt, hypot, fmax, fmin

cnp.import_array()

PROPER = 0
PARALLEL_OVERLAP = 1
NEAR_ENDPOINT = 2


def convolve3x3(plane, kernel):
    cdef const double[:, ::1] p = np.ascontiguousarray(plane, dtype=np.float64)
    cdef const double[:, ::1] k = np.ascontiguousarray(kernel, dtype=np.float64)
    cdef Py_ssize_t h = p.shape[0], w = p.shape[1]
    out_arr = np.zeros((h - 2, w - 2), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t y, x, i, j
    cdef double acc, kij
    with nogil:
        # same accumulation order as the numpy version: kernel taps outermost
        for i in range(3):
            for j in range(3):
                kij = k[i, j]
                if kij == 0.0:
                    continue
                for y in range(h - 2):
                    for x in range(w - 2):
                        out[y, x] += kij * p[y + i, x + j]
    return out_arr


cdef void _bounds(Py_ssize_t length, Py_ssize_t target, Py_ssize_t* starts) noexcept nogil:
    cdef Py_ssize_t base = length // target, extra = length % target, k, pos = 0
    for k in range(target):
        starts[k] = pos
        pos += base + (1 if k < extra else 0)
    starts[target] = length


def softmax_pool(plane, Py_ssize_t target, double tau):
    cdef const double[:, ::1] p = np.ascontiguousarray(plane, dtype=np.float64)
    cdef Py_ssize_t h = p.shape[0], w = p.shape[1]
    rs_arr = np.zeros(target + 1, dtype=np.intp)
    cs_arr = np.zeros(target + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] rs = rs_arr
    cdef Py_ssize_t[::1] cs = cs_arr
    out_arr = np.zeros((target, target), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t a, b, y, x
    cdef double m, lo, e, num, den, v
    with nogil:
        _bounds(h, target, &rs[0])
        _bounds(w, target, &cs[0])
        for a in range(target):
            for b in range(target):
                m = p[rs[a], cs[b]]
                lo = m
                for y in range(rs[a], rs[a + 1]):
                    for x in range(cs[b], cs[b + 1]):
                        m = fmax(m, p[y, x])
                        lo = fmin(lo, p[y, x])
                num = 0.0
                den = 0.0
                for y in range(rs[a], rs[a + 1]):
                    for x in range(cs[b], cs[b + 1]):
                        e = exp((p[y, x] - m) / tau)
                        num += e * p[y, x]
                        den += e
                v = num / den
                out[a, b] = fmin(fmax(v, lo), m)
    return out_arr


def segment_intersections(xy, double tol):
    cdef const double[:, ::1] P = np.ascontiguousarray(xy, dtype=np.float64)
    cdef Py_ssize_t n = P.shape[0], i, j, i1, j1
    cdef double ax, ay, rax, ray, bx, by, rbx, rby, la, lb, den, wx, wy
    cdef double cwb, cwa, s, t, ta, tb, dist, pb0, pb1
    cdef int flag
    ii, jj, ss, tt, ff = [], [], [], [], []
    for i in range(n):
        i1 = i + 1 if i + 1 < n else 0
        ax = P[i, 0]; ay = P[i, 1]
        rax = P[i1, 0] - ax; ray = P[i1, 1] - ay
        la = hypot(rax, ray)
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            j1 = j + 1 if j + 1 < n else 0
            bx = P[j, 0]; by = P[j, 1]
            rbx = P[j1, 0] - bx; rby = P[j1, 1] - by
            if (fmin(ax, ax + rax) - tol > fmax(bx, bx + rbx) + tol or
                    fmin(bx, bx + rbx) - tol > fmax(ax, ax + rax) + tol or
                    fmin(ay, ay + ray) - tol > fmax(by, by + rby) + tol or
                    fmin(by, by + rby) - tol > fmax(ay, ay + ray) + tol):
                continue
            lb = hypot(rbx, rby)
            wx = bx - ax; wy = by - ay
            den = rax * rby - ray * rbx
            cwb = wx * rby - wy * rbx
            cwa = wx * ray - wy * rax
            if fabs(den) <= 1e-12 * la * lb:
                dist = fabs(cwa) / la
                pb0 = (wx * rax + wy * ray) / la
                pb1 = ((wx + rbx) * rax + (wy + rby) * ray) / la
                if dist <= tol and fmax(pb0, pb1) >= -tol and fmin(pb0, pb1) <= la + tol:
                    ii.append(i); jj.append(j); ss.append(float("nan")); tt.append(float("nan"))
                    ff.append(PARALLEL_OVERLAP)
                continue
            s = cwb / den
            t = cwa / den
            ta = tol / la
            tb = tol / lb
            if s < -ta or s > 1 + ta or t < -tb or t > 1 + tb:
                continue
            flag = PROPER
            if s <= ta or s >= 1 - ta or t <= tb or t >= 1 - tb:
                flag = NEAR_ENDPOINT
            ii.append(i); jj.append(j); ss.append(s); tt.append(t); ff.append(flag)
    return (np.array(ii, dtype=np.intp), np.array(jj, dtype=np.intp),
            np.array(ss, dtype=np.float64), np.array(tt, dtype=np.float64),
            np.array(ff, dtype=np.intp))


cdef inline double _dot(double* u, double* v) noexcept nogil:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


cdef inline void _sub(double* u, double* v, double* out) noexcept nogil:
    out[0] = u[0] - v[0]; out[1] = u[1] - v[1]; out[2] = u[2] - v[2]


cdef inline void _cross(double* u, double* v, double* out) noexcept nogil:
    out[0] = u[1] * v[2] - u[2] * v[1]
    out[1] = u[2] * v[0] - u[0] * v[2]
    out[2] = u[0] * v[1] - u[1] * v[0]


cdef bint _blocked(double[:, ::1] pts, Py_ssize_t n, Py_ssize_t i, double tol) noexcept nogil:
    cdef Py_ssize_t ip = (i - 1 + n) % n, inx = (i + 1) % n, e, e1
    cdef double A[3]
    cdef double B[3]
    cdef double C[3]
    cdef double u[3]
    cdef double v[3]
    cdef double nrm[3]
    cdef double x[3]
    cdef double edge[3]
    cdef double inw[3]
    cdef double d[3]
    cdef double area2, dp, dq, lam, far, ln
    cdef int k
    cdef bint inside
    for k in range(3):
        A[k] = pts[ip, k]; B[k] = pts[i, k]; C[k] = pts[inx, k]
    _sub(B, A, u)
    _sub(C, A, v)
    _cross(u, v, nrm)
    area2 = sqrt(_dot(nrm, nrm))
    if area2 <= tol * tol:
        return True
    for k in range(3):
        nrm[k] /= area2
    cdef double* corners[4]
    corners[0] = A; corners[1] = B; corners[2] = C; corners[3] = A
    for e in range(n):
        if e == ip or e == i:
            continue
        e1 = (e + 1) % n
        for k in range(3):
            u[k] = pts[e, k] - A[k]
            v[k] = pts[e1, k] - A[k]
        dp = _dot(u, nrm)
        dq = _dot(v, nrm)
        if e == (ip - 1 + n) % n or e == inx:
            far = dq if e == inx else dp
            if fabs(far) <= tol:
                return True
            continue
        if fabs(dp) <= tol and fabs(dq) <= tol:
            return True
        if (dp > tol and dq > tol) or (dp < -tol and dq < -tol):
            continue
        if dp - dq != 0.0:
            lam = dp / (dp - dq)
        else:
            lam = 0.5
        lam = fmin(fmax(lam, 0.0), 1.0)
        for k in range(3):
            x[k] = pts[e, k] + lam * (pts[e1, k] - pts[e, k])
        inside = True
        for k in range(3):
            _sub(corners[k + 1], corners[k], edge)
            _cross(nrm, edge, inw)
            ln = sqrt(_dot(inw, inw))
            _sub(x, corners[k], d)
            if _dot(d, inw) / ln < -tol:
                inside = False
                break
        if inside:
            return True
    return False


def triangle_blocked(pts, Py_ssize_t i, double tol):
    cdef double[:, ::1] P = np.array(pts, dtype=np.float64, order="C")
    return bool(_blocked(P, P.shape[0], i, tol))


def reduce_polygon(pts, double tol):
    arr = np.array(pts, dtype=np.float64, order="C")
    cdef double[:, ::1] P = arr
    cdef Py_ssize_t n = P.shape[0], i, m, k
    cdef bint changed = True
    with nogil:
        while changed and n > 3:
            changed = False
            i = 0
            while i < n and n > 3:
                if not _blocked(P, n, i, tol):
                    for m in range(i, n - 1):
                        for k in range(3):
                            P[m, k] = P[m + 1, k]
                    n -= 1
                    changed = True
                else:
                    i += 1
    return arr[:n].copy()
