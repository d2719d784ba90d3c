"""Minimal-norm translation of ``T`` in the direction of ``A``.

``phi(lam) = ||T - lam A||`` is convex on the complex plane (a supremum of
convex functions of an affine family) and, for invertible ``A``, satisfies
``phi(lam) >= |lam| sigma_min(A) - ||T||``.  Since ``phi(0) = ||T||`` every
minimiser lies in the disk ``|lam| <= 2 ||T|| / sigma_min(A)``.

The minimiser is found without derivatives because ``phi`` is typically not
differentiable at it (the top singular value is multiple there).  The
partial minimum ``psi(x) = min_y phi(x + iy)`` of a convex function is again
convex, so a golden-section search on ``psi`` whose every evaluation is an
inner golden-section search on ``y`` is exact up to the bracket width.
"""
from dataclasses import dataclass

import numpy as np

from .opcore import as_matrix, spectral_norm, validate_pair

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TranslationResult:
    lambda0: complex
    min_norm: float
    probe_gap: float
    iterations: int


def _golden(fun, a, b, tol):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
    x = 0.5 * (a + b)
    return x, fun(x)


class _Phi:
    """Counts evaluations of ``||T - lam A||``."""

    def __init__(self, T, A):
        self.T, self.A = T, A
        self.norm_A = float(np.linalg.svd(A, compute_uv=False)[0])
        self.calls = 0

    def __call__(self, lam):
        self.calls += 1
        return float(np.linalg.svd(self.T - lam * self.A, compute_uv=False)[0])

    def batch(self, lams):
        self.calls += lams.size
        stack = self.T[None] - lams[:, None, None] * self.A[None]
        return np.linalg.svd(stack, compute_uv=False)[:, 0]


def _box_minimum(phi, x0, y0, w, tol):
    def inner(x):
        return _golden(lambda y: phi(complex(x, y)), y0 - w, y0 + w, tol)

    x, _ = _golden(lambda x: inner(x)[1], x0 - w, x0 + w, tol)
    y, val = inner(x)
    return complex(x, y), val


def _polish_smooth(phi, lam, scale, max_steps=20):
    """Newton on ``u^* A v = 0`` where the top singular value is simple.

    At a smooth minimiser the derivative of ``sigma_max(T - lam A)`` along
    ``dlam`` is ``-Re(dlam u^* A v)``, so the first-order condition has full
    precision while ``phi`` itself only pins ``lam`` to about sqrt(eps).
    """
    T, A = phi.T, phi.A

    def grad(l):
        U, s, Vh = np.linalg.svd(T - l * A)
        return np.vdot(U[:, 0], A @ Vh[0].conj()), s

    g, s = grad(lam)
    for _ in range(max_steps):
        if s.size < 2 or s[0] - s[1] <= 1e-6 * s[0] or abs(g) <= 1e-15 * phi.norm_A:
            break
        d = 1e-7 * scale
        gx = (grad(lam + d)[0] - grad(lam - d)[0]) / (2 * d)
        gy = (grad(lam + 1j * d)[0] - grad(lam - 1j * d)[0]) / (2 * d)
        J = np.array([[gx.real, gy.real], [gx.imag, gy.imag]])
        try:
            step = np.linalg.solve(J, [-g.real, -g.imag])
        except np.linalg.LinAlgError:
            break
        cand = lam + complex(step[0], step[1])
        g_new, s_new = grad(cand)
        if s_new[0] > s[0] * (1 + 1e-15) or abs(g_new) >= abs(g):
            break
        lam, g, s = cand, g_new, s_new
        phi.calls += 5
    return lam


def minimal_translation(pair, grid=25, probes=64, seed=0):
    """Unique ``lambda0`` minimising ``||T - lam A||`` with an optimality certificate.

    A coarse grid over the coercivity disk locates a box; nested golden
    sections find the minimum over the box.  A box minimum that is not on
    the box boundary is the global minimum (convexity); otherwise the box is
    recentred and doubled.  ``probe_gap`` is ``max(min_norm - phi(probe))``
    over ``probes`` seeded trial points and must not be positive.
    """
    pair.require_invertible()
    T, A = pair.T, pair.A
    phi = _Phi(T, A)
    norm_T = pair.norm_T
    R = 2.0 * norm_T / pair.sigma_min_A
    if R == 0.0:
        return TranslationResult(0j, 0.0, 0.0, 0)

    ticks = np.linspace(-R, R, grid)
    X, Y = np.meshgrid(ticks, ticks)
    pts = (X + 1j * Y).ravel()
    pts = pts[np.abs(pts) <= R * (1 + 1e-12)]
    vals = phi.batch(pts)
    order = np.lexsort((pts.imag, pts.real, vals))
    lam = pts[order[0]]
    spacing = ticks[1] - ticks[0]
    w = 2.0 * spacing
    tol = 1e-2 * pair.tol.opt_tol * max(1.0, R)
    for _ in range(60):
        cx, cy = lam.real, lam.imag
        lam, _ = _box_minimum(phi, cx, cy, w, tol)
        edge = w - 4 * tol
        if abs(lam.real - cx) < edge and abs(lam.imag - cy) < edge:
            break
        w *= 2.0
    lam = _polish_smooth(phi, lam, max(1.0, R))
    min_norm = phi(lam)
    # Frobenius least-squares coefficient: exact when T is a multiple of A,
    # where phi is a cone and golden sections stop at the bracket width
    lam_f = np.vdot(A, T) / np.vdot(A, A)
    val_f = phi(lam_f)
    if val_f < min_norm:
        lam, min_norm = complex(lam_f), val_f

    rng = np.random.default_rng(seed)
    k = probes // 2
    near = lam + (10.0 ** rng.uniform(-6, -1, k)) * max(1.0, R) * np.exp(2j * np.pi * rng.random(k))
    far = R * np.sqrt(rng.random(probes - k)) * np.exp(2j * np.pi * rng.random(probes - k))
    probe_vals = phi.batch(np.concatenate([near, far]))
    gap = float(np.max(min_norm - probe_vals))
    return TranslationResult(complex(lam), float(min_norm), gap, phi.calls)


def translation_radius_equality(pair, radius_result, translation=None):
    """``|min_lam ||T - lam A|| - sup_f deviation(f)|``, each side computed independently."""
    if translation is None:
        translation = minimal_translation(pair)
    return abs(translation.min_norm - radius_result.value)


def stampfli_inequality_check(T, trials=200, seed=0, tol=None):
    """Check ``||T - cI||^2 + |mu|^2 <= ||T - cI + mu I||^2`` at the computed center ``c``."""
    T = as_matrix(T, "T")
    n = T.shape[0]
    pair = validate_pair(T, np.eye(n), tol)
    c = minimal_translation(pair).lambda0
    S = T - c * np.eye(n)
    s2 = spectral_norm(S) ** 2
    rng = np.random.default_rng(seed)
    rad = 2.0 * max(pair.norm_T, 1e-300)
    mus = rad * np.sqrt(rng.random(trials)) * np.exp(2j * np.pi * rng.random(trials))
    for mu in mus:
        rhs = spectral_norm(S + mu * np.eye(n)) ** 2
        if s2 + abs(mu) ** 2 > rhs + pair.tol.identity_tol * max(1.0, rhs):
            return False
    return True
