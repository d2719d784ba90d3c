"""Matrix contracts, operator-pair validation and shared numerics."""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix, NotHermitian, SingularDirection


@dataclass(frozen=True)
class ToleranceSet:
    identity_tol: float = 1e-9
    opt_tol: float = 1e-8
    rank_tol: float = 1e-12

    def __post_init__(self):
        for name in ("identity_tol", "opt_tol", "rank_tol"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        if self.identity_tol < self.rank_tol:
            raise ValueError("identity_tol must not be smaller than rank_tol")


DEFAULT_TOL = ToleranceSet()


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite complex128 2-D array (copy), or raise InvalidMatrix."""
    try:
        arr = np.array(M, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"{name}: cannot convert to a complex matrix ({exc})") from None
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InvalidMatrix(f"{name}: expected a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix(f"{name}: contains non-finite entries")
    return arr


def unit_vector(v):
    """Normalise ``v`` to a complex unit vector."""
    f = np.array(v, dtype=np.complex128).reshape(-1)
    if f.size == 0 or not np.all(np.isfinite(f)):
        raise InvalidMatrix("vector must be non-empty and finite")
    nrm = np.linalg.norm(f)
    if nrm == 0.0:
        raise InvalidMatrix("cannot normalise the zero vector")
    return f / nrm


def inner(x, y):
    """``(x, y)``: linear in ``x``, conjugate-linear in ``y``."""
    return np.vdot(y, x)


def adjoint(M):
    return M.conj().T


def gauge_fix(f, floor=1e-10):
    """Rotate the phase so the first component above ``floor * max|f_i|`` is real positive."""
    mags = np.abs(f)
    top = mags.max()
    if top == 0.0:
        return f
    idx = int(np.flatnonzero(mags > floor * top)[0])
    return f * (abs(f[idx]) / f[idx])


def spectral_norm(M):
    M = as_matrix(M)
    return float(np.linalg.svd(M, compute_uv=False)[0])


def hermitian_eigensystem(M, tol=DEFAULT_TOL):
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {M.shape}")
    scale = np.linalg.norm(M, 2)
    if np.linalg.norm(M - adjoint(M), 2) > tol.identity_tol * scale:
        raise NotHermitian("matrix is not Hermitian within identity_tol")
    w, V = np.linalg.eigh(0.5 * (M + adjoint(M)))
    return w, V


def hermitian_part(M):
    return 0.5 * (M + adjoint(M))


@dataclass(frozen=True)
class OperatorPair:
    """A validated pair ``(T, A)`` of square matrices of equal size.

    Construction never rejects a singular ``A``; consumers check the standing
    hypothesis they need (:meth:`require_invertible`, :attr:`wrange_dist_A`).
    """

    T: np.ndarray
    A: np.ndarray
    sigma_min_A: float
    tol: ToleranceSet = field(default=DEFAULT_TOL)

    @property
    def n(self):
        return self.T.shape[0]

    @property
    def invertible(self):
        return self.sigma_min_A > self.tol.rank_tol

    @cached_property
    def wrange_dist_A(self):
        """Distance from 0 to the numerical range of ``A`` (0 when inside)."""
        from .georange import wrange_distance
        return wrange_distance(self.A)

    @cached_property
    def norm_T(self):
        return spectral_norm(self.T)

    @cached_property
    def norm_A(self):
        return spectral_norm(self.A)

    def require_invertible(self):
        if not self.invertible:
            raise SingularDirection(
                f"A is singular to tolerance (sigma_min = {self.sigma_min_A:.3e} "
                f"<= rank_tol = {self.tol.rank_tol:.1e})")

    def adjoint(self):
        return validate_pair(adjoint(self.T), adjoint(self.A), self.tol)

    def with_tol(self, tol):
        return OperatorPair(self.T, self.A, self.sigma_min_A, tol)


def validate_pair(T, A, tol=None):
    tol = DEFAULT_TOL if tol is None else tol
    T = as_matrix(T, "T")
    A = as_matrix(A, "A")
    if T.shape[0] != T.shape[1] or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"T and A must be square, got {T.shape} and {A.shape}")
    if T.shape != A.shape:
        raise DimensionMismatch(f"T is {T.shape} but A is {A.shape}")
    T.setflags(write=False)
    A.setflags(write=False)
    sigma_min = float(np.linalg.svd(A, compute_uv=False)[-1])
    return OperatorPair(T, A, sigma_min, tol)
