"""Tolerances, sampling settings and default search budget.

Every numeric threshold used by the verification code lives here so that the
checks, the CLI and the tests agree on a single value.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Tolerances", "SamplingConfig", "TOL", "SAMPLING", "DEFAULT_SEED"]

DEFAULT_SEED = 42


@dataclass(frozen=True)
class Tolerances:
    # Carathéodory membership
    toeplitz_min: float = -1e-9
    lemma_slack: float = -1e-9
    c4_residual: float = 1e-9
    # 1 - |zeta|^2 below this is treated as the boundary in the inverse map
    boundary_cutoff: float = 1e-12
    surjectivity: float = 1e-8
    # closed form vs grid oracle
    omega: float = 1e-6
    # series-path vs direct-formula inverse coefficients
    two_path: float = 1e-12
    # bound verification
    violation: float = 1e-8
    sharp_rel: float = 1e-4
    # extremal function evaluated against the stated bound
    extremal: float = 1e-9
    # F2, n=5: lower edge of the admissible range below the attained value
    f2_delta5_range: float = 1e-4
    # printed interval endpoints
    printed_root: float = 1e-5


@dataclass(frozen=True)
class SamplingConfig:
    """How random Schur parameters are drawn.

    ``disk`` is ``"uniform"`` (area-uniform, radius ``sqrt(U)``); ``real_zeta1``
    samples are uniform on ``[-1, 1]``.
    """

    disk: str = "uniform"
    batch: int = 10_000


TOL = Tolerances()
SAMPLING = SamplingConfig()
