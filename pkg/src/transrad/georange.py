"""Numerical-range geometry: enclosing circles, distance of 0 to W(A), W_T(A) samples."""
import enum
import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import NumericalFailure
from .opcore import as_matrix, hermitian_part, unit_vector

log = logging.getLogger(__name__)


class Source(enum.Enum):
    SPECTRUM = "spectrum"
    NUMERICAL_RANGE = "numerical_range"
    GENERALIZED_RANGE = "generalized_range"


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    source: Source

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).reshape(-1)
        if pts.size == 0 or not np.all(np.isfinite(pts)):
            raise ValueError("a point cloud must be non-empty and finite")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    support: tuple

    def contains(self, points, tol=1e-9):
        pts = np.asarray(points, dtype=complex)
        return bool(np.all(np.abs(pts - self.center) <= self.radius + tol * max(1.0, self.radius)))


def enclosing_circle(cloud, seed=0):
    """Smallest circle containing every point (randomised incremental algorithm).

    ``support`` holds the indices (into the caller's ordering) of the two or
    three points that determine the circle.
    """
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=complex).reshape(-1)
    if pts.size == 0:
        raise ValueError("cannot enclose an empty set")
    perm = np.random.default_rng(seed).permutation(pts.size)
    q = pts[perm]
    span = float(np.max(np.abs(q - q[0])))
    eps = 1e-12 * max(span, np.max(np.abs(q)), 1e-300)
    cx, cy, r, *sup = kernels.welzl(q.real, q.imag, eps)
    support = tuple(int(perm[s]) for s in sup if s >= 0)
    return Circle(complex(cx, cy), float(r), support)


# --------------------------------------------------------------------------
# distance of zero to the numerical range


class WRangeScan(NamedTuple):
    raw: float          # max_theta lambda_min(Re(e^{i theta} A)); negative when 0 is inside W(A)
    theta: float

    @property
    def distance(self):
        return max(self.raw, 0.0)


def _support_value(A, theta):
    return float(np.linalg.eigvalsh(hermitian_part(np.exp(1j * theta) * A))[0])


def wrange_scan(A, theta_steps=512, refine_tol=1e-10):
    """Grid over theta plus golden-section refinement around the best grid point.

    ``lambda_min(Re(e^{i theta} A))`` is the signed distance from 0 to the
    supporting line of W(A) with inner normal ``e^{-i theta}``; its maximum
    over theta is the distance from 0 to the convex set W(A) when positive.
    """
    A = as_matrix(A, "A")
    thetas = 2 * np.pi * np.arange(theta_steps) / theta_steps
    stack = np.exp(1j * thetas)[:, None, None] * A[None]
    vals = np.linalg.eigvalsh(0.5 * (stack + np.conj(np.swapaxes(stack, 1, 2))))[:, 0]
    k = int(np.argmax(vals))
    best_t, best_v = thetas[k], float(vals[k])
    step = 2 * np.pi / theta_steps
    a, b = best_t - step, best_t + step
    invphi = (np.sqrt(5.0) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = _support_value(A, c), _support_value(A, d)
    while b - a > refine_tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = _support_value(A, c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = _support_value(A, d)
    t = 0.5 * (a + b)
    v = _support_value(A, t)
    if v > best_v:
        best_t, best_v = t, v
    return WRangeScan(best_v, float(np.mod(best_t, 2 * np.pi)))


def wrange_distance(A, theta_steps=512):
    return wrange_scan(A, theta_steps).distance


# --------------------------------------------------------------------------
# sampled ranges


def random_unit_rows(n, samples, seed):
    rng = np.random.default_rng(seed)
    F = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    return F / np.linalg.norm(F, axis=1)[:, None]


def sample_generalized_range(pair, samples=10_000, seed=0, extra=()):
    """``(Tf, Af)/(Af, Af)`` at seeded random unit vectors, basis vectors and ``extra``.

    An inner approximation of W_T(A): every returned point belongs to it.
    """
    pair.require_invertible()
    rows = [np.eye(pair.n, dtype=complex), random_unit_rows(pair.n, samples, seed)]
    if len(extra):
        rows.append(np.array([unit_vector(v) for v in extra]))
    F = np.vstack(rows)
    lam, _, valid = kernels.batch_deviation(pair.T, pair.A, F, False, pair.tol.rank_tol)
    return PointCloud(lam[valid], Source.GENERALIZED_RANGE)


def sample_numerical_range(M, samples=10_000, seed=0):
    M = as_matrix(M)
    F = np.vstack([np.eye(M.shape[0], dtype=complex), random_unit_rows(M.shape[0], samples, seed)])
    # (Mf, f) for each row
    return PointCloud(np.einsum("ij,ij->i", F @ M.T, F.conj()), Source.NUMERICAL_RANGE)


def spectrum_radius(T):
    T = as_matrix(T, "T")
    try:
        ev = np.linalg.eigvals(T)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver failed: {exc}") from None
    return enclosing_circle(PointCloud(ev, Source.SPECTRUM))


# --------------------------------------------------------------------------
# chain of inequalities between the two radii and the generalized range


class Chain(NamedTuple):
    tilde: Optional[float]   # None when 0 lies in W(A)
    standard: float
    lower: float             # sampled m_T(A) * sigma_min(A)
    skip_reason: Optional[str] = None

    def gaps(self):
        """Signed slack of each link (non-negative when the link holds)."""
        out = {"standard_vs_lower": self.standard - self.lower}
        if self.tilde is not None:
            out["tilde_vs_standard"] = self.tilde - self.standard
        return out

    def holds(self, tol):
        scale = max(1.0, self.standard)
        return all(g >= -tol * scale for g in self.gaps().values())


def chain_check(pair, samples=10_000, seed=0, starts=16):
    """Evaluate ``tilde radius >= radius >= m_T(A) / ||A^{-1}||``.

    The sampled m_T(A) is a lower bound of the true one, which can only make
    the last link easier to satisfy; the radius maximiser is added to the
    sample so the cloud contains the coefficient of the extremal vector.
    """
    from .radii import radius, radius_tilde

    pair.require_invertible()
    std = radius(pair, starts=starts, seed=seed)
    cloud = sample_generalized_range(pair, samples, seed, extra=[std.maximizer])
    m = enclosing_circle(cloud).radius
    lower = m * pair.sigma_min_A
    if pair.wrange_dist_A > pair.tol.rank_tol:
        tilde = radius_tilde(pair, starts=starts, seed=seed, extra_starts=[std.maximizer]).value
        return Chain(tilde, std.value, lower)
    return Chain(None, std.value, lower,
                 "NumericalRangeZero: 0 lies in W(A) (wrange distance <= rank_tol)")
