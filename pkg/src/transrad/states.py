"""States on the n x n matrices, represented by density matrices.

Every state ``g`` on B(C^n) is ``g(U) = trace(rho U)`` for a density matrix
``rho``; pure states ``g_x(U) = (Ux, x)`` are the rank-one ones.  The
functional studied here is

    G(rho) = trace(rho T*T) - |trace(rho A*T)|^2 / trace(rho A*A),

whose supremum over states equals the squared standard radius.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .errors import CertificateNotFound, NotAState, StateOutsideP
from .opcore import DEFAULT_TOL, adjoint, as_matrix, hermitian_part, validate_pair
from .radii import DEFAULT_STARTS, radius
from .translation import minimal_translation

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DensityMatrix:
    rho: np.ndarray

    @classmethod
    def from_array(cls, rho, tol=DEFAULT_TOL):
        rho = as_matrix(rho, "rho")
        if rho.shape[0] != rho.shape[1]:
            raise NotAState(f"density matrix must be square, got {rho.shape}")
        if np.linalg.norm(rho - adjoint(rho), 2) > tol.identity_tol:
            raise NotAState("density matrix is not Hermitian")
        rho = hermitian_part(rho)
        if np.linalg.eigvalsh(rho)[0] < -tol.identity_tol:
            raise NotAState("density matrix has a negative eigenvalue")
        if abs(np.trace(rho).real - 1.0) > tol.identity_tol:
            raise NotAState(f"trace is {np.trace(rho).real!r}, not 1")
        rho.setflags(write=False)
        return cls(rho)

    @classmethod
    def pure(cls, x):
        x = np.asarray(x, dtype=complex)
        x = x / np.linalg.norm(x)
        return cls(np.outer(x, x.conj()))

    @classmethod
    def maximally_mixed(cls, n):
        return cls(np.eye(n, dtype=complex) / n)

    def expect(self, U):
        """``g(U) = trace(rho U)``."""
        return np.einsum("ij,ji->", self.rho, U)


@dataclass(frozen=True)
class StateFunctionalResult:
    value: float
    rho: DensityMatrix
    denominator: float
    radius_squared: Optional[float] = None


def _moments(pair):
    T, A = pair.T, pair.A
    return adjoint(T) @ T, adjoint(A) @ T, adjoint(A) @ A


def _value(P, Q, R, rho):
    p = np.einsum("ij,ji->", rho, P).real
    q = np.einsum("ij,ji->", rho, Q)
    r = np.einsum("ij,ji->", rho, R).real
    return p - abs(q) ** 2 / r, q, r


def state_value(pair, rho):
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix.from_array(rho, pair.tol)
    if rho.rho.shape != pair.T.shape:
        raise NotAState("density matrix size does not match the pair")
    P, Q, R = _moments(pair)
    r = np.einsum("ij,ji->", rho.rho, R).real
    if r <= pair.tol.rank_tol:
        raise StateOutsideP(f"g(A*A) = {r:.3e} is below rank_tol")
    val, _, _ = _value(P, Q, R, rho.rho)
    return StateFunctionalResult(float(val), rho, float(r))


def project_to_states(H):
    """Nearest density matrix (Frobenius) to the Hermitian part of ``H``."""
    w, V = np.linalg.eigh(hermitian_part(H))
    # Euclidean projection of the spectrum onto the probability simplex
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.nonzero(u - css / np.arange(1, u.size + 1) > 0)[0][-1]
    p = np.maximum(w - css[k] / (k + 1), 0.0)
    return (V * p) @ adjoint(V)


def _ascend_state(P, Q, R, rho, floor, max_iter=300):
    val, q, r = _value(P, Q, R, rho)
    eta = 1.0 / max(np.linalg.norm(P, 2), 1.0)
    for _ in range(max_iter):
        lam = q / r
        # gradient of G in the trace pairing: (T - lam A)^*(T - lam A)
        grad = P - np.conj(lam) * Q - lam * adjoint(Q) + abs(lam) ** 2 * R
        t = eta
        while True:
            cand = project_to_states(rho + t * grad)
            cv, cq, cr = _value(P, Q, R, cand)
            if cr > floor and cv > val:
                break
            t *= 0.5
            if t < 1e-14 * eta:
                return rho, val
        improvement = cv - val
        rho, val, q, r = cand, cv, cq, cr
        eta = 2.0 * t
        if improvement <= 1e-15 * max(1.0, abs(val)):
            break
    return rho, val


def random_density_matrix(n, rng, rank=None):
    rank = n if rank is None else rank
    X = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = X @ adjoint(X)
    return rho / np.trace(rho).real


def state_supremum(pair, starts=DEFAULT_STARTS, seed=0, rad=None):
    """Projected gradient ascent of ``G`` over density matrices.

    Seeds: the pure state at the radius maximiser, the maximally mixed state
    and ``starts`` seeded random states of random rank.
    """
    pair.require_invertible()
    if rad is None:
        rad = radius(pair, starts=starts, seed=seed)
    P, Q, R = _moments(pair)
    floor = pair.tol.rank_tol
    n = pair.n
    rng = np.random.default_rng(seed)
    seeds = [DensityMatrix.pure(rad.maximizer).rho, np.eye(n, dtype=complex) / n]
    seeds += [random_density_matrix(n, rng, int(rng.integers(1, n + 1))) for _ in range(starts)]
    best_rho, best_val = None, -np.inf
    for rho0 in seeds:
        rho, val = _ascend_state(P, Q, R, rho0, floor)
        if val > best_val:
            best_rho, best_val = rho, val
    den = float(np.einsum("ij,ji->", best_rho, R).real)
    return StateFunctionalResult(float(best_val), DensityMatrix(hermitian_part(best_rho)), den,
                                 rad.value ** 2)


# --------------------------------------------------------------------------
# Williams certificate (direction A = I)


def _numerical_range_atom(C, direction):
    """Pure state maximising ``Re(conj(direction) (Cv, v))`` and its value ``(Cv, v)``."""
    w, V = np.linalg.eigh(hermitian_part(np.conj(direction) * C))
    v = V[:, -1]
    return v, np.vdot(v, C @ v)


def _closest_on_segments(Z):
    """Point of smallest modulus on the segments between all pairs of ``Z``, with weights."""
    m = Z.size
    i, j = np.triu_indices(m, k=1)
    if i.size == 0:
        return abs(Z[0]), {0: 1.0}
    a, b = Z[i], Z[j]
    d = b - a
    dd = np.abs(d) ** 2
    t = np.where(dd > 0, np.clip(-(np.conj(a) * d).real / np.where(dd > 0, dd, 1.0), 0.0, 1.0), 0.0)
    pts = a + t * d
    k = int(np.argmin(np.abs(pts)))
    return abs(pts[k]), {int(i[k]): 1.0 - t[k], int(j[k]): float(t[k])}


def _zero_in_hull(Z):
    """Convex weights with ``sum w_j Z_j = 0`` when 0 is in the hull of ``Z``, else None."""
    m = Z.size
    A_eq = np.vstack([Z.real, Z.imag, np.ones(m)])
    res = linprog(np.zeros(m), A_eq=A_eq, b_eq=[0.0, 0.0, 1.0], bounds=[(0, None)] * m,
                  method="highs")
    if res.status != 0:
        return None
    idx = np.flatnonzero(res.x > 1e-12)
    # re-solve on the support so the combination is exact to rounding
    w, *_ = np.linalg.lstsq(A_eq[:, idx], [0.0, 0.0, 1.0], rcond=None)
    if np.any(w < 0):
        w = res.x[idx]
    w = w / w.sum()
    return dict(zip(idx.tolist(), w.tolist()))


def _zero_mixture(C, target, rounds=200, directions=64):
    """Mixture of pure states with ``|trace(rho C)| <= target`` (Wolfe-style atom growth)."""
    atoms, Z = [], []
    for theta in 2 * np.pi * np.arange(directions) / directions:
        v, z = _numerical_range_atom(C, np.exp(1j * theta))
        atoms.append(v)
        Z.append(z)
    for _ in range(rounds):
        Zarr = np.array(Z)
        w = _zero_in_hull(Zarr)
        if w is not None:
            return atoms, w
        dist, w = _closest_on_segments(Zarr)
        if dist <= target:
            return atoms, w
        x = sum(wk * Zarr[k] for k, wk in w.items())
        v, z = _numerical_range_atom(C, -x / abs(x))
        if (np.conj(-x) * z).real <= (np.conj(-x) * x).real + 1e-15 * abs(x):
            # no atom moves toward 0: 0 is outside the numerical range of C
            return None
        atoms.append(v)
        Z.append(z)
    return None


def williams_certificate(T, tol=None):
    """Decide whether 0 is the Stampfli center of ``T`` and, if so, exhibit the state.

    Returns ``(True, rho)`` with ``trace(rho T) ~ 0`` and ``trace(rho T*T) ~ ||T*T||``,
    or ``(False, None)`` when the minimal-norm translation is not at 0.
    """
    tol = DEFAULT_TOL if tol is None else tol
    T = as_matrix(T, "T")
    n = T.shape[0]
    pair = validate_pair(T, np.eye(n), tol)
    scale = max(1.0, pair.norm_T)
    if not _centered(pair, minimal_translation(pair)):
        return False, None

    w, V = np.linalg.eigh(adjoint(T) @ T)
    top = w[-1]
    target = tol.opt_tol * scale
    # widen the top cluster only as far as needed; lambda0 itself is approximate
    for widen in (1.0, 10.0, 100.0, 1000.0):
        basis = V[:, w >= top - widen * tol.opt_tol * max(1.0, top)]
        C = adjoint(basis) @ T @ basis
        found = _zero_mixture(C, target)
        if found is None:
            continue
        atoms, weights = found
        rho = sum(wk * np.outer(basis @ atoms[k], (basis @ atoms[k]).conj())
                  for k, wk in weights.items())
        rho = hermitian_part(rho) / np.trace(rho).real
        dm = DensityMatrix(rho)
        if abs(dm.expect(T)) <= target and dm.expect(adjoint(T) @ T).real >= top - 1e3 * target:
            return True, dm
    raise CertificateNotFound(
        "0 is the center of T but no state with trace(rho T) = 0 on the top eigenspace of T*T "
        "was found")


def _centered(pair, tr):
    """``||T|| <= ||T - lam I||`` for all ``lam``, up to opt_tol.

    Judged on norms as well as on ``|lambda0|``: where ``phi`` is flat in one
    direction ``lambda0`` is only known to about sqrt(eps), its value to eps.
    """
    scale = max(1.0, pair.norm_T)
    return (abs(tr.lambda0) <= pair.tol.opt_tol * scale
            or pair.norm_T - tr.min_norm <= pair.tol.opt_tol * scale)


def williams_left_side(T, tol=None):
    tol = DEFAULT_TOL if tol is None else tol
    T = as_matrix(T, "T")
    pair = validate_pair(T, np.eye(T.shape[0]), tol)
    return _centered(pair, minimal_translation(pair))
