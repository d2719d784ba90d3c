"""Stationary distance vectors of ``Tf = lam Af``.

A unit ``f`` is stationary for the squared deviation on the sphere iff

    (T - lam A)^* (T - lam A) f = ||h||^2 f,   lam = (Tf,Af)/(Af,Af),  h = (T - lam A) f.

This module certifies that equation, searches for solutions, checks the
adjoint duality at a maximiser and splits stationary vectors of selfadjoint
pairs into two eigenvectors of the pencil.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .deviation import deviation_at, stationary_residual
from .errors import (
    DegenerateMaximizer, DegenerateStationary, HypothesisViolated, KernelVector, NotSelfadjoint,
)
from .opcore import adjoint, gauge_fix, inner, unit_vector
from .radii import DEFAULT_STARTS, lm_polish, radius

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StationaryCertificate:
    f: np.ndarray
    lam: complex
    h_norm: float
    residual: float
    is_stationary: bool
    iterations: int = 0


@dataclass(frozen=True)
class Decomposition:
    g1: np.ndarray
    g2: np.ndarray
    lam: complex
    h_norm: float
    reconstruction_error: float
    eigen_residuals: tuple


def _tolerance(pair, h_norm):
    return pair.tol.opt_tol * max(1.0, h_norm ** 2)


def stationarity_certificate(pair, f, iterations=0):
    rep, res = stationary_residual(pair, f)
    return StationaryCertificate(
        rep.f, rep.lam, rep.value, res, res <= _tolerance(pair, rep.value), iterations)


def _scf_step(pair, f):
    """Eigenvector of ``B(lam(f))`` on the branch best aligned with ``f``."""
    rep = deviation_at(pair, f)
    M = pair.T - rep.lam * pair.A
    w, V = np.linalg.eigh(adjoint(M) @ M)
    overlaps = np.abs(adjoint(V) @ f)
    k = int(np.argmax(overlaps))
    # degenerate branch: project onto the whole eigenspace
    spread = 1e-10 * max(1.0, abs(w).max())
    cluster = V[:, np.abs(w - w[k]) <= spread]
    g = cluster @ (adjoint(cluster) @ f)
    g = g / np.linalg.norm(g)
    return g * np.exp(-1j * np.angle(inner(g, f)))


def find_stationary(pair, start, max_iter=200):
    """Self-consistent iteration from ``start``, then Levenberg-Marquardt on the residual.

    The eigen-branch is chosen by maximal overlap with the current iterate,
    so saddle points are reachable as well as maxima.  The certificate of the
    final iterate is returned even when it is not stationary.
    """
    f = unit_vector(start)
    if np.linalg.norm(pair.A @ f) <= pair.tol.rank_tol:
        raise KernelVector("||A start|| is below rank_tol")
    cert = stationarity_certificate(pair, f)
    it = 0
    best = cert
    since_best = 0
    # cycles and stalls are common, so give up on the plain iteration early
    while not cert.is_stationary and it < max_iter and since_best < 25:
        it += 1
        try:
            f = _scf_step(pair, f)
            cert = stationarity_certificate(pair, f, it)
        except KernelVector:
            break
        if cert.residual < best.residual:
            best, since_best = cert, 0
        else:
            since_best += 1
    # polish even a certified iterate: the plain iteration stops at opt_tol
    if best.residual > 0.0:
        try:
            g, nfev = lm_polish(pair, best.f)
            polished = stationarity_certificate(pair, g, it + nfev)
            if polished.residual < best.residual:
                best = polished
        except KernelVector:
            pass
    if not best.is_stationary:
        log.info("find_stationary: residual %.3e after %d iterations", best.residual, it)
    f = gauge_fix(best.f)
    return stationarity_certificate(pair, f, best.iterations)


def adjoint_duality_check(pair, radius_result, starts=DEFAULT_STARTS, seed=0):
    """``|M_{T*}(A*) - deviation of (T*, A*) at h/||h|||`` with both sides computed afresh."""
    rep = radius_result.report
    if rep.value <= pair.tol.rank_tol * max(1.0, pair.norm_T):
        raise DegenerateMaximizer("h vanishes at the maximiser (T is a multiple of A)")
    adj = pair.adjoint()
    at_h = deviation_at(adj, rep.h / rep.value).value
    full = radius(adj, starts=starts, seed=seed).value
    return abs(full - at_h)


def adjoint_coefficient(pair, radius_result):
    """Coefficient of the adjoint pair at ``h/||h||``; equals ``conj(lam)`` at a stationary vector."""
    rep = radius_result.report
    return deviation_at(pair.adjoint(), rep.h / rep.value).lam


def decomposition_scale(pair, dec):
    """Bound on ``||(T - lam A) g||`` for the two halves; residuals are judged against it."""
    return max(1.0, (pair.norm_T + abs(dec.lam) * pair.norm_A) * dec.h_norm)


def selfadjoint_decomposition(pair, cert):
    """Write a stationary ``f`` as ``(g1 - g2) / (2||h||)`` with ``g1, g2`` eigenvectors of ``T - lam A``.

    ``g1 = h + ||h|| f`` and ``g2 = h - ||h|| f`` satisfy
    ``(T - lam A) g1 = ||h|| g1`` and ``(T - lam A) g2 = -||h|| g2``.
    """
    T, A, tol = pair.T, pair.A, pair.tol
    if np.linalg.norm(T - adjoint(T), 2) > tol.identity_tol * max(pair.norm_T, 1e-300) or \
            np.linalg.norm(A - adjoint(A), 2) > tol.identity_tol * max(pair.norm_A, 1e-300):
        raise NotSelfadjoint("T and A must both be selfadjoint")
    if not cert.is_stationary:
        raise HypothesisViolated("f is not a stationary distance vector")
    f = cert.f
    tfaf = inner(T @ f, A @ f)
    if abs(tfaf.imag) > tol.identity_tol * max(abs(tfaf), tol.rank_tol * pair.norm_T * pair.norm_A):
        raise HypothesisViolated(f"(Tf, Af) = {tfaf:.6g} is not real")
    rep = deviation_at(pair, f)
    if rep.value <= tol.rank_tol * max(1.0, pair.norm_T):
        raise DegenerateStationary("h = 0: f is already an eigenvector of the pencil")
    hn = rep.value
    g1 = rep.h + hn * f
    g2 = rep.h - hn * f
    M = T - rep.lam * A
    r1 = float(np.linalg.norm(M @ g1 - hn * g1))
    r2 = float(np.linalg.norm(M @ g2 + hn * g2))
    err = float(np.linalg.norm(f - (g1 - g2) / (2 * hn)))
    return Decomposition(g1, g2, rep.lam, hn, err, (r1, r2))
