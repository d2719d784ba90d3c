"""Largest residual of T f against the span of A f, and the best scalar shift of T along A.

For complex square ``T`` and ``A`` the package computes

* the standard radius ``sup_f ||Tf - (Tf,Af)/(Af,Af) Af||`` and its variant
  with coefficient ``(Tf,f)/(Af,f)`` (:mod:`transrad.radii`);
* the minimal-norm translation ``min_lam ||T - lam A||`` (:mod:`transrad.translation`);
* stationary distance vectors of ``Tf = lam Af`` (:mod:`transrad.stationary`);
* the supremum over states of ``g(T*T) - |g(A*T)|^2 / g(A*A)`` (:mod:`transrad.states`);
* numerical-range geometry and enclosing circles (:mod:`transrad.georange`).
"""
from ._accel import USE_NUMBA
from .deviation import DeviationReport, Variant, deviation_at, deviation_tilde_at, pointwise_dominance_check
from .errors import *  # noqa: F401,F403
from .georange import (
    Circle, PointCloud, Source, chain_check, enclosing_circle, sample_generalized_range,
    spectrum_radius, wrange_distance,
)
from .opcore import (
    OperatorPair, ToleranceSet, hermitian_eigensystem, spectral_norm, unit_vector, validate_pair,
)
from .radii import OracleConfig, RadiusResult, oracle_radius, radius, radius_tilde
from .states import DensityMatrix, state_supremum, state_value, williams_certificate
from .stationary import (
    adjoint_duality_check, find_stationary, selfadjoint_decomposition, stationarity_certificate,
)
from .translation import (
    TranslationResult, minimal_translation, stampfli_inequality_check, translation_radius_equality,
)

__version__ = "0.1.0"
