"""Hot numeric kernels.

Each kernel exists twice: a vectorised NumPy version (``*_numpy``) and an
explicit-loop version compiled with numba (``*_numba``, ``None`` when numba
is unavailable).  The public names dispatch on :data:`transrad._accel.USE_NUMBA`.
Both versions are kept importable so tests and benchmarks can compare them.

Inner products follow the convention ``(x, y) = sum(x_i * conj(y_i))``.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, jit

__all__ = [
    "grid_max_deviation",
    "batch_deviation",
    "welzl",
    "USE_NUMBA",
]


# --------------------------------------------------------------------------
# exhaustive 2x2 sphere grid


def grid_max_deviation_numpy(T, A, alphas, betas, tilde, floor):
    """Max deviation over ``f = (cos a, e^{ib} sin a)`` for all grid pairs.

    Returns ``(best, i_best, j_best, excluded)``; points where the coefficient
    is undefined (denominator modulus <= ``floor``) are skipped and counted.
    """
    ca = np.cos(alphas)[:, None]
    sa = np.sin(alphas)[:, None] * np.exp(1j * betas)[None, :]
    f0 = np.broadcast_to(ca, sa.shape)
    f1 = sa
    tf0 = T[0, 0] * f0 + T[0, 1] * f1
    tf1 = T[1, 0] * f0 + T[1, 1] * f1
    af0 = A[0, 0] * f0 + A[0, 1] * f1
    af1 = A[1, 0] * f0 + A[1, 1] * f1
    if tilde:
        num = tf0 * np.conj(f0) + tf1 * np.conj(f1)
        den = af0 * np.conj(f0) + af1 * np.conj(f1)
        bad = np.abs(den) <= floor
    else:
        num = tf0 * np.conj(af0) + tf1 * np.conj(af1)
        den = (af0 * np.conj(af0) + af1 * np.conj(af1)).real
        bad = np.sqrt(den) <= floor
    den = np.where(bad, 1.0, den)
    lam = num / den
    h0 = tf0 - lam * af0
    h1 = tf1 - lam * af1
    val = np.sqrt(np.abs(h0) ** 2 + np.abs(h1) ** 2)
    val[bad] = -1.0
    flat = int(np.argmax(val))
    i, j = divmod(flat, val.shape[1])
    return float(val[i, j]), i, j, int(bad.sum())


def _grid_max_deviation_loop(T, A, alphas, betas, tilde, floor):
    best = -1.0
    ib = 0
    jb = 0
    excluded = 0
    for i in range(alphas.shape[0]):
        c = math.cos(alphas[i])
        s = math.sin(alphas[i])
        for j in range(betas.shape[0]):
            f0 = c + 0j
            f1 = s * complex(math.cos(betas[j]), math.sin(betas[j]))
            tf0 = T[0, 0] * f0 + T[0, 1] * f1
            tf1 = T[1, 0] * f0 + T[1, 1] * f1
            af0 = A[0, 0] * f0 + A[0, 1] * f1
            af1 = A[1, 0] * f0 + A[1, 1] * f1
            if tilde:
                num = tf0 * f0.conjugate() + tf1 * f1.conjugate()
                den = af0 * f0.conjugate() + af1 * f1.conjugate()
                if abs(den) <= floor:
                    excluded += 1
                    continue
            else:
                num = tf0 * af0.conjugate() + tf1 * af1.conjugate()
                den = (af0 * af0.conjugate() + af1 * af1.conjugate()).real + 0j
                if math.sqrt(den.real) <= floor:
                    excluded += 1
                    continue
            lam = num / den
            h0 = tf0 - lam * af0
            h1 = tf1 - lam * af1
            v = math.sqrt(h0.real ** 2 + h0.imag ** 2 + h1.real ** 2 + h1.imag ** 2)
            if v > best:
                best = v
                ib = i
                jb = j
    return best, ib, jb, excluded


grid_max_deviation_numba = jit(_grid_max_deviation_loop)


# --------------------------------------------------------------------------
# batched pointwise deviation


def batch_deviation_numpy(T, A, F, tilde, floor):
    """Coefficient and deviation for every row of ``F`` (rows are unit vectors).

    Returns ``(lam, value, valid)``; invalid rows carry ``nan``.
    """
    TF = F @ T.T
    AF = F @ A.T
    if tilde:
        num = np.einsum("ij,ij->i", TF, F.conj())
        den = np.einsum("ij,ij->i", AF, F.conj())
        valid = np.abs(den) > floor
    else:
        num = np.einsum("ij,ij->i", TF, AF.conj())
        den = np.einsum("ij,ij->i", AF, AF.conj()).real.astype(complex)
        valid = np.sqrt(den.real) > floor
    lam = np.full(F.shape[0], np.nan + 0j)
    lam[valid] = num[valid] / den[valid]
    H = TF - lam[:, None] * AF
    value = np.linalg.norm(H, axis=1)
    return lam, value, valid


def _batch_deviation_loop(T, A, F, tilde, floor):
    m, n = F.shape
    lam = np.empty(m, dtype=np.complex128)
    value = np.empty(m, dtype=np.float64)
    valid = np.zeros(m, dtype=np.bool_)
    tf = np.empty(n, dtype=np.complex128)
    af = np.empty(n, dtype=np.complex128)
    for r in range(m):
        for i in range(n):
            st = 0j
            sa = 0j
            for k in range(n):
                st += T[i, k] * F[r, k]
                sa += A[i, k] * F[r, k]
            tf[i] = st
            af[i] = sa
        num = 0j
        den = 0j
        for i in range(n):
            if tilde:
                num += tf[i] * F[r, i].conjugate()
                den += af[i] * F[r, i].conjugate()
            else:
                num += tf[i] * af[i].conjugate()
                den += af[i] * af[i].conjugate()
        ok = abs(den) > floor if tilde else math.sqrt(den.real) > floor
        if not ok:
            lam[r] = complex(np.nan, np.nan)
            value[r] = np.nan
            continue
        valid[r] = True
        l = num / den
        lam[r] = l
        acc = 0.0
        for i in range(n):
            d = tf[i] - l * af[i]
            acc += d.real * d.real + d.imag * d.imag
        value[r] = math.sqrt(acc)
    return lam, value, valid


batch_deviation_numba = jit(_batch_deviation_loop)


# --------------------------------------------------------------------------
# minimal enclosing circle (randomised incremental, points pre-shuffled)


def _circle2(x, y, i, j):
    cx = 0.5 * (x[i] + x[j])
    cy = 0.5 * (y[i] + y[j])
    return cx, cy, 0.5 * math.hypot(x[i] - x[j], y[i] - y[j])


def _circle3(x, y, i, j, k):
    # translate to x[i] to limit cancellation
    bx = x[j] - x[i]
    by = y[j] - y[i]
    qx = x[k] - x[i]
    qy = y[k] - y[i]
    d = 2.0 * (bx * qy - by * qx)
    scale = (bx * bx + by * by) + (qx * qx + qy * qy)
    if abs(d) <= 1e-14 * scale:
        # collinear: the farthest pair spans the circle
        dij = math.hypot(bx, by)
        dik = math.hypot(qx, qy)
        djk = math.hypot(x[k] - x[j], y[k] - y[j])
        if dij >= dik and dij >= djk:
            cx, cy, r = _circle2(x, y, i, j)
            return cx, cy, r, i, j, -1
        if dik >= djk:
            cx, cy, r = _circle2(x, y, i, k)
            return cx, cy, r, i, k, -1
        cx, cy, r = _circle2(x, y, j, k)
        return cx, cy, r, j, k, -1
    b2 = bx * bx + by * by
    q2 = qx * qx + qy * qy
    ux = (qy * b2 - by * q2) / d
    uy = (bx * q2 - qx * b2) / d
    return x[i] + ux, y[i] + uy, math.hypot(ux, uy), i, j, k


def _welzl_loop(x, y, eps):
    # helpers inlined so the whole loop compiles as one nopython function
    n = x.shape[0]
    cx = x[0]
    cy = y[0]
    r = 0.0
    s0, s1, s2 = 0, -1, -1
    for i in range(1, n):
        if math.hypot(x[i] - cx, y[i] - cy) <= r + eps:
            continue
        cx, cy, r = x[i], y[i], 0.0
        s0, s1, s2 = i, -1, -1
        for j in range(i):
            if math.hypot(x[j] - cx, y[j] - cy) <= r + eps:
                continue
            cx = 0.5 * (x[i] + x[j])
            cy = 0.5 * (y[i] + y[j])
            r = 0.5 * math.hypot(x[i] - x[j], y[i] - y[j])
            s0, s1, s2 = i, j, -1
            for k in range(j):
                if math.hypot(x[k] - cx, y[k] - cy) <= r + eps:
                    continue
                bx = x[j] - x[i]
                by = y[j] - y[i]
                qx = x[k] - x[i]
                qy = y[k] - y[i]
                d = 2.0 * (bx * qy - by * qx)
                b2 = bx * bx + by * by
                q2 = qx * qx + qy * qy
                if abs(d) <= 1e-14 * (b2 + q2):
                    dij = math.sqrt(b2)
                    dik = math.sqrt(q2)
                    djk = math.hypot(x[k] - x[j], y[k] - y[j])
                    if dij >= dik and dij >= djk:
                        p, q = i, j
                    elif dik >= djk:
                        p, q = i, k
                    else:
                        p, q = j, k
                    cx = 0.5 * (x[p] + x[q])
                    cy = 0.5 * (y[p] + y[q])
                    r = 0.5 * math.hypot(x[p] - x[q], y[p] - y[q])
                    s0, s1, s2 = p, q, -1
                else:
                    ux = (qy * b2 - by * q2) / d
                    uy = (bx * q2 - qx * b2) / d
                    cx = x[i] + ux
                    cy = y[i] + uy
                    r = math.hypot(ux, uy)
                    s0, s1, s2 = i, j, k
    return cx, cy, r, s0, s1, s2


welzl_numba = jit(_welzl_loop)


def welzl_numpy(x, y, eps):
    """Same visiting order as the loop kernel, with violator scans vectorised."""
    def first_outside(lo, hi, cx, cy, r):
        d = np.hypot(x[lo:hi] - cx, y[lo:hi] - cy)
        idx = np.flatnonzero(d > r + eps)
        return lo + int(idx[0]) if idx.size else -1

    n = x.shape[0]
    cx, cy, r = x[0], y[0], 0.0
    sup = (0, -1, -1)
    i = first_outside(1, n, cx, cy, r)
    while i >= 0:
        cx, cy, r = x[i], y[i], 0.0
        sup = (i, -1, -1)
        j = first_outside(0, i, cx, cy, r)
        while j >= 0:
            cx, cy, r = _circle2(x, y, i, j)
            sup = (i, j, -1)
            k = first_outside(0, j, cx, cy, r)
            while k >= 0:
                cx, cy, r, *sup = _circle3(x, y, i, j, k)
                k = first_outside(k + 1, j, cx, cy, r)
            j = first_outside(j + 1, i, cx, cy, r)
        i = first_outside(i + 1, n, cx, cy, r)
    return float(cx), float(cy), float(r), *sup


# --------------------------------------------------------------------------
# dispatch


def grid_max_deviation(T, A, alphas, betas, tilde, floor):
    if USE_NUMBA:
        return grid_max_deviation_numba(T, A, alphas, betas, tilde, floor)
    return grid_max_deviation_numpy(T, A, alphas, betas, tilde, floor)


def batch_deviation(T, A, F, tilde, floor):
    if USE_NUMBA:
        return batch_deviation_numba(T, A, np.ascontiguousarray(F), tilde, floor)
    return batch_deviation_numpy(T, A, F, tilde, floor)


def welzl(x, y, eps):
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if USE_NUMBA:
        return welzl_numba(x, y, eps)
    return welzl_numpy(x, y, eps)
