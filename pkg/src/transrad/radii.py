"""Suprema of the deviation over the unit sphere.

``radius`` maximises ``||Tf - (Tf,Af)/(Af,Af) Af||`` and ``radius_tilde`` the
variant with coefficient ``(Tf,f)/(Af,f)``.  Both are multi-start local
ascents; ``oracle_radius`` is an exhaustive grid for 2x2 pairs that shares no
code with them.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from . import kernels
from .deviation import DeviationReport, Variant, deviation_at, deviation_tilde_at, stationary_residual
from .errors import KernelVector, NumericalRangeZero, UnsupportedDimension
from .opcore import adjoint, gauge_fix, unit_vector

log = logging.getLogger(__name__)

DEFAULT_STARTS = 16


@dataclass(frozen=True)
class RadiusResult:
    value: float
    maximizer: np.ndarray
    report: DeviationReport
    starts_used: int
    converged_starts: int
    stationary_residual: float
    variant: Variant = Variant.STANDARD
    iterations: int = 0
    duality_gap: float = float("nan")

    @property
    def converged(self):
        return self.converged_starts > 0


@dataclass(frozen=True)
class OracleConfig:
    alpha_steps: int = 720
    beta_steps: int = 720
    seed: int = 0

    def __post_init__(self):
        if self.alpha_steps < 8 or self.beta_steps < 8:
            raise ValueError("oracle grids need at least 8 steps per axis")


@dataclass
class _Run:
    f: np.ndarray
    value: float
    converged: bool
    iterations: int


def initial_vectors(pair, starts, seed, extra=()):
    """Deterministic starts first (basis, top right-singular vector of T), then seeded random ones."""
    n = pair.n
    vecs = [np.eye(n, dtype=complex)[i] for i in range(n)]
    vecs.append(np.linalg.svd(pair.T)[2][0].conj())
    vecs.extend(unit_vector(v) for v in extra)
    rng = np.random.default_rng(seed)
    for _ in range(starts):
        vecs.append(unit_vector(rng.standard_normal(n) + 1j * rng.standard_normal(n)))
    return vecs


def _objective(T, A, f):
    Tf = T @ f
    Af = A @ f
    lam = np.vdot(Af, Tf) / np.vdot(Af, Af).real
    h = Tf - lam * Af
    return np.vdot(h, h).real, lam, h


def _ascend(pair, f, max_iter):
    """Ascent on the squared deviation from one start.

    Each iteration compares two candidates: the self-consistent update (top
    eigenvector of ``(T - lam A)^*(T - lam A)`` at the current ``lam``) and a
    Riemannian gradient step with Barzilai-Borwein length and Armijo
    backtracking.  The better one is kept, so the value never decreases.
    """
    T, A, tol = pair.T, pair.A, pair.tol
    v, lam, h = _objective(T, A, f)
    step = 1.0 / max(pair.norm_T ** 2, 1.0)
    g_prev = f_prev = None
    for it in range(max_iter):
        M = T - lam * A
        g = adjoint(M) @ h - v * f
        r = np.linalg.norm(g)
        if r <= tol.opt_tol * max(1.0, v):
            return _Run(f, v, True, it)

        w, V = np.linalg.eigh(adjoint(M) @ M)
        top = w[-1] - V.shape[0] * np.finfo(float).eps * max(1.0, abs(w[-1])) * 16
        cluster = V[:, w >= top]
        fs = cluster @ (adjoint(cluster) @ f)
        fs = V[:, -1] if np.linalg.norm(fs) < 1e-8 else fs / np.linalg.norm(fs)
        vs = _objective(T, A, fs)[0]

        if g_prev is not None:
            s = f - f_prev
            y = g - g_prev
            sy = np.vdot(s, y).real
            if abs(sy) > 1e-300:
                step = abs(np.vdot(s, s).real / sy)
        t = step
        while True:
            fn = f + t * g
            fn /= np.linalg.norm(fn)
            vn = _objective(T, A, fn)[0]
            if vn >= v + 1e-4 * t * r * r or t < 1e-16:
                break
            t *= 0.5

        g_prev, f_prev = g, f
        if vs > vn and vs > v:
            fn, vn = fs, vs
            g_prev = None
        if vn < v:
            # neither candidate improved; stay put and let the residual test decide
            return _Run(f, v, r <= 10 * tol.opt_tol * max(1.0, v), it)
        f = fn
        v, lam, h = _objective(T, A, f)
    g = adjoint(T - lam * A) @ h - v * f
    return _Run(f, v, bool(np.linalg.norm(g) <= tol.opt_tol * max(1.0, v)), max_iter)


def lm_polish(pair, f):
    """Levenberg-Marquardt on the stationarity residual over the real 2n-dimensional chart."""
    n = pair.n

    def resid(x):
        g = x[:n] + 1j * x[n:]
        g = g / np.linalg.norm(g)
        rep = deviation_at(pair, g)
        r = adjoint(pair.T - rep.lam * pair.A) @ rep.h - rep.value ** 2 * g
        return np.concatenate([r.real, r.imag])

    x0 = np.concatenate([f.real, f.imag])
    sol = least_squares(resid, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    g = sol.x[:n] + 1j * sol.x[n:]
    return unit_vector(g), int(sol.nfev)


def _reduce(runs):
    # deterministic: largest value, ties broken lexicographically on the gauge-fixed vector
    def key(run):
        f = gauge_fix(run.f)
        return (run.value, tuple(np.round(np.column_stack([f.real, f.imag]).ravel(), 12)))
    return max(runs, key=key)


def duality_gap(pair, rep):
    """``||T - lam(f) A|| - deviation(f)``: zero exactly when ``f`` is a global maximiser.

    Every deviation is bounded by ``||T - mu A||`` for every ``mu``, so a
    vanishing gap certifies the value; a positive one exposes a local maximum.
    """
    return float(np.linalg.svd(pair.T - rep.lam * pair.A, compute_uv=False)[0]) - rep.value


def radius(pair, starts=DEFAULT_STARTS, seed=0, extra_starts=(), max_iter=500, max_rounds=8):
    """Largest standard deviation over the unit sphere (``A`` must be invertible).

    Runs ascents from ``n + 1`` deterministic and ``starts`` seeded random
    vectors.  While the best maximiser still shows a duality gap, further
    rounds of ``starts`` random vectors are added (at most ``max_rounds``).
    """
    pair.require_invertible()
    runs = [_ascend(pair, f0, max_iter) for f0 in initial_vectors(pair, starts, seed, extra_starts)]
    best = _reduce(runs)
    gap_tol = 10 * pair.tol.opt_tol * max(1.0, best.value)
    rnd = 0
    while rnd < max_rounds and duality_gap(pair, deviation_at(pair, best.f)) > gap_tol:
        rnd += 1
        rng = np.random.default_rng([seed, rnd])
        for _ in range(max(starts, 1)):
            f0 = unit_vector(rng.standard_normal(pair.n) + 1j * rng.standard_normal(pair.n))
            runs.append(_ascend(pair, f0, max_iter))
        best = _reduce(runs)
    f = gauge_fix(best.f)
    rep, res = stationary_residual(pair, f)
    try:
        g = gauge_fix(lm_polish(pair, f)[0])
        rep2, res2 = stationary_residual(pair, g)
        if res2 < res and rep2.value >= rep.value - pair.tol.opt_tol * max(1.0, rep.value):
            f, rep, res = g, rep2, res2
    except KernelVector:
        pass
    gap = duality_gap(pair, rep)
    nconv = sum(r.converged for r in runs)
    if nconv == 0:
        log.warning("radius: no ascent run converged; best value %.12g is unverified", rep.value)
    if gap > gap_tol:
        log.warning("radius: duality gap %.3e remains after %d extra rounds", gap, rnd)
    return RadiusResult(
        value=rep.value, maximizer=f, report=rep, starts_used=len(runs), converged_starts=nconv,
        stationary_residual=res, variant=Variant.STANDARD,
        iterations=sum(r.iterations for r in runs), duality_gap=gap)


# --------------------------------------------------------------------------
# tilde variant: numeric gradients on the real 2n-dimensional chart


def _tilde_sq(T, A, x, n):
    f = x[:n] + 1j * x[n:]
    f = f / np.linalg.norm(f)
    Tf = T @ f
    Af = A @ f
    lam = np.vdot(f, Tf) / np.vdot(f, Af)
    h = Tf - lam * Af
    return np.vdot(h, h).real


def _tilde_grad(T, A, x, n, step=5e-6):
    g = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        g[k] = (_tilde_sq(T, A, x + e, n) - _tilde_sq(T, A, x - e, n)) / (2 * step)
    return g - (g @ x) * x


def _ascend_tilde(pair, f, max_iter):
    T, A, n = pair.T, pair.A, pair.n
    x = np.concatenate([f.real, f.imag])
    x /= np.linalg.norm(x)
    v = _tilde_sq(T, A, x, n)
    step = 1.0 / max(pair.norm_T ** 2, 1.0)
    gtol = 100 * pair.tol.opt_tol
    g_prev = x_prev = None
    stalled = 0
    for it in range(max_iter):
        g = _tilde_grad(T, A, x, n)
        r = np.linalg.norm(g)
        if r <= gtol * max(1.0, v):
            return _Run(x[:n] + 1j * x[n:], v, True, it)
        if g_prev is not None:
            s = x - x_prev
            y = g - g_prev
            sy = s @ y
            if abs(sy) > 1e-300:
                step = abs((s @ s) / sy)
        t = step
        while True:
            xn = x + t * g
            xn /= np.linalg.norm(xn)
            vn = _tilde_sq(T, A, xn, n)
            if vn >= v + 1e-4 * t * r * r or t < 1e-16:
                break
            t *= 0.5
        if vn <= v:
            stalled += 1
            if stalled >= 3:
                break
            g_prev = None
            step = 1.0 / max(pair.norm_T ** 2, 1.0)
            continue
        stalled = 0
        g_prev, x_prev = g, x
        x, v = xn, vn
    g = _tilde_grad(T, A, x, n)
    ok = np.linalg.norm(g) <= 10 * gtol * max(1.0, v)
    return _Run(x[:n] + 1j * x[n:], v, bool(ok), it + 1)


def radius_tilde(pair, starts=DEFAULT_STARTS, seed=0, extra_starts=(), max_iter=400):
    """Largest tilde deviation; needs 0 outside the numerical range of ``A``.

    No attainment claim is made: the value is the best local maximum found.
    """
    if pair.wrange_dist_A <= pair.tol.rank_tol:
        raise NumericalRangeZero("0 lies in the numerical range of A; the tilde radius is undefined")
    runs = [_ascend_tilde(pair, f0, max_iter)
            for f0 in initial_vectors(pair, starts, seed, extra_starts)]
    best = _reduce(runs)
    f = gauge_fix(unit_vector(best.f))
    rep = deviation_tilde_at(pair, f)
    return RadiusResult(
        value=rep.value, maximizer=f, report=rep, starts_used=len(runs),
        converged_starts=sum(r.converged for r in runs), stationary_residual=float("nan"),
        variant=Variant.TILDE, iterations=sum(r.iterations for r in runs))


# --------------------------------------------------------------------------
# exhaustive oracle


def oracle_grid(cfg):
    alphas = np.linspace(0.0, np.pi / 2, cfg.alpha_steps)
    betas = np.linspace(0.0, 2 * np.pi, cfg.beta_steps, endpoint=False)
    if cfg.seed:
        # seeded sub-cell shift in beta only, so alpha keeps both poles
        betas = betas + np.random.default_rng(cfg.seed).uniform(0.0, 2 * np.pi / cfg.beta_steps)
    return alphas, betas


def oracle_radius(pair, variant=Variant.STANDARD, cfg=OracleConfig()):
    """Grid maximum over ``f = (cos a, e^{ib} sin a)`` for a 2x2 pair.

    Every unit vector of C^2 equals such an ``f`` up to a global phase, which
    the deviation ignores, so the grid covers the whole sphere.  The result is
    a lower bound of the supremum.
    """
    if pair.n != 2:
        raise UnsupportedDimension(f"oracle_radius needs n = 2, got n = {pair.n}")
    variant = Variant(variant)
    tilde = variant is Variant.TILDE
    if tilde:
        if pair.wrange_dist_A <= pair.tol.rank_tol:
            raise NumericalRangeZero("0 lies in the numerical range of A")
    else:
        pair.require_invertible()
    alphas, betas = oracle_grid(cfg)
    best, i, j, excluded = kernels.grid_max_deviation(
        np.ascontiguousarray(pair.T), np.ascontiguousarray(pair.A), alphas, betas, tilde,
        pair.tol.rank_tol)
    if excluded:
        log.info("oracle_radius: %d grid points excluded by the precondition", excluded)
    return max(float(best), 0.0)


__all__ = [
    "RadiusResult", "OracleConfig", "radius", "radius_tilde", "oracle_radius", "initial_vectors",
]
