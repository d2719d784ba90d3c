"""Pointwise deviation of a unit vector from the pencil ``Tf = lam Af``."""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import KernelVector, NumericalRangeZero
from .opcore import adjoint, inner, unit_vector


class Variant(enum.Enum):
    STANDARD = "standard"
    TILDE = "tilde"


@dataclass(frozen=True)
class DeviationReport:
    f: np.ndarray
    lam: complex
    h: np.ndarray
    value: float
    variant: Variant = Variant.STANDARD


def deviation_at(pair, f):
    """Deviation with the least-squares coefficient ``lam = (Tf, Af) / (Af, Af)``.

    ``h = Tf - lam Af`` is the component of ``Tf`` orthogonal to ``Af`` and the
    returned value is ``||h||``.
    """
    f = unit_vector(f)
    Tf = pair.T @ f
    Af = pair.A @ f
    af2 = np.vdot(Af, Af).real
    if np.sqrt(af2) <= pair.tol.rank_tol:
        raise KernelVector(f"||Af|| = {np.sqrt(af2):.3e} is below rank_tol")
    lam = inner(Tf, Af) / af2
    h = Tf - lam * Af
    return DeviationReport(f, complex(lam), h, float(np.linalg.norm(h)), Variant.STANDARD)


def deviation_tilde_at(pair, f):
    """Deviation with the numerical-range coefficient ``(Tf, f) / (Af, f)``."""
    f = unit_vector(f)
    Tf = pair.T @ f
    Af = pair.A @ f
    den = inner(Af, f)
    if abs(den) <= pair.tol.rank_tol:
        raise NumericalRangeZero(f"|(Af, f)| = {abs(den):.3e} is below rank_tol")
    lam = inner(Tf, f) / den
    h = Tf - lam * Af
    return DeviationReport(f, complex(lam), h, float(np.linalg.norm(h)), Variant.TILDE)


def pointwise_dominance_check(pair, f):
    tilde = deviation_tilde_at(pair, f).value
    std = deviation_at(pair, f).value
    return tilde >= std - pair.tol.identity_tol * max(1.0, std)


def stationary_residual(pair, f):
    """``||(T - lam A)^* h - ||h||^2 f||`` for the standard coefficient at ``f``.

    Returns ``(report, residual)``.  The residual vanishes exactly at the
    critical points of the squared deviation on the unit sphere.
    """
    rep = deviation_at(pair, f)
    M = pair.T - rep.lam * pair.A
    r = adjoint(M) @ rep.h - rep.value ** 2 * rep.f
    return rep, float(np.linalg.norm(r))
