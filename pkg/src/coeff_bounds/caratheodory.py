"""Schur-parameter description of Carathéodory coefficients ``c_1 .. c_4``.

A function ``p(z) = 1 + c_1 z + c_2 z^2 + ...`` with positive real part in the
unit disk has its first four coefficients given by triangular formulas in
points ``zeta_1 .. zeta_4`` of the closed unit disk.  This module evaluates
those formulas, inverts them, builds the two extremal families used for
sharpness and checks membership through Toeplitz determinants.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import SAMPLING, TOL

__all__ = [
    "DomainError",
    "DegenerateCaseError",
    "SchurParams",
    "CaratheodoryCoeffs",
    "Family",
    "ExtremalParams",
    "coeffs_from_schur",
    "c4_from_schur",
    "coeffs_from_schur_arrays",
    "schur_from_coeffs",
    "coeffs_from_extremal",
    "toeplitz_validity",
    "lemma_slacks",
    "identity_terms_poly",
    "identity_terms_schur",
    "verify_c4_identity",
    "sample_schur",
]

# |zeta| may exceed 1 by rounding only
_DISK_SLACK = 1e-12


class DomainError(ValueError):
    """A parameter lies outside its admissible range."""


class DegenerateCaseError(ValueError):
    """The requested identity degenerates to ``0 = 0`` on the boundary."""


@dataclass(frozen=True)
class SchurParams:
    zeta1: complex = 0j
    zeta2: complex = 0j
    zeta3: complex = 0j
    zeta4: complex = 0j
    real_zeta1: bool = False

    def __post_init__(self):
        for name in ("zeta1", "zeta2", "zeta3", "zeta4"):
            z = complex(getattr(self, name))
            if not abs(z) <= 1.0 + _DISK_SLACK:
                raise DomainError(f"|{name}| = {abs(z):.17g} > 1")
            object.__setattr__(self, name, z)
        if self.real_zeta1 and self.zeta1.imag != 0.0:
            raise DomainError(f"zeta1 must be real, got {self.zeta1!r}")

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.zeta1, self.zeta2, self.zeta3, self.zeta4)


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    c1: complex
    c2: complex
    c3: complex
    c4: complex

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.c1, self.c2, self.c3, self.c4)

    def __iter__(self):
        return iter(self.as_tuple())


class Family(str, Enum):
    P = "P_family"
    H = "H_family"


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters of ``P_{t,theta}`` or ``H_{t,beta}``.

    ``P_{t,theta}(z) = t (1 + e^{i theta} z)/(1 - e^{i theta} z)
    + (1 - t)(1 + e^{2 i theta} z^2)/(1 - e^{2 i theta} z^2)``, ``t`` in [0, 1].

    ``H_{t,beta}(z) = (1 - 2t)(1 + z)/(1 - z) + t (1 + beta z)/(1 - beta z)
    + t (1 + conj(beta) z)/(1 - conj(beta) z)``, ``t`` in [0, 1/2], ``|beta| = 1``.
    """

    family: Family
    t: float
    theta: float = 0.0
    beta: complex = 1 + 0j

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam is Family.P:
            if not 0.0 <= self.t <= 1.0:
                raise DomainError(f"P family needs t in [0, 1], got {self.t}")
        else:
            if not 0.0 <= self.t <= 0.5:
                raise DomainError(f"H family needs t in [0, 1/2], got {self.t}")
            if abs(abs(complex(self.beta)) - 1.0) > 1e-12:
                raise DomainError(f"H family needs |beta| = 1, got {abs(self.beta)}")
            object.__setattr__(self, "beta", complex(self.beta))

    @classmethod
    def p_family(cls, t: float, theta: float = 0.0) -> "ExtremalParams":
        return cls(Family.P, t, theta=theta)

    @classmethod
    def h_family(cls, t: float, beta: complex) -> "ExtremalParams":
        return cls(Family.H, t, beta=beta)


def c4_from_schur(z1: complex, z2: complex, z3: complex, z4: complex) -> complex:
    """Fourth coefficient from the four Schur parameters."""
    a = 1.0 - abs(z1) ** 2
    b = 1.0 - abs(z2) ** 2
    c = 1.0 - abs(z3) ** 2
    z1c = z1.conjugate()
    half = (
        z1**4
        + a * (3 * z1**2 * z2 - 2 * z2**2 * abs(z1) ** 2 + z1c**2 * z2**3)
        + z2**2 * a**2
        + a * b * (2 * z1 * z3 - 2 * z1c * z2 * z3 - z2.conjugate() * z3**2 + c * z4)
    )
    return 2 * half


def coeffs_from_schur(z: SchurParams) -> CaratheodoryCoeffs:
    z1, z2, z3, z4 = z.as_tuple()
    a = 1.0 - abs(z1) ** 2
    b = 1.0 - abs(z2) ** 2
    c1 = 2 * z1
    c2 = 2 * z1**2 + 2 * a * z2
    c3 = 2 * z1**3 + 4 * a * z1 * z2 - 2 * a * z1.conjugate() * z2**2 + 2 * a * b * z3
    # module-level lookup so a tampered c4 can be injected in tests
    c4 = c4_from_schur(z1, z2, z3, z4)
    return CaratheodoryCoeffs(c1, c2, c3, c4)


def coeffs_from_schur_arrays(z1, z2, z3, z4):
    """Vectorized :func:`coeffs_from_schur` over NumPy arrays (no validation)."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    z3 = np.asarray(z3, dtype=complex)
    z4 = np.asarray(z4, dtype=complex)
    s1 = np.abs(z1) ** 2
    a = 1.0 - s1
    b = 1.0 - np.abs(z2) ** 2
    c = 1.0 - np.abs(z3) ** 2
    z1c = np.conj(z1)
    z1sq = z1 * z1
    z2sq = z2 * z2
    c1 = 2 * z1
    c2 = 2 * z1sq + 2 * a * z2
    c3 = 2 * z1sq * z1 + 4 * a * z1 * z2 - 2 * a * z1c * z2sq + 2 * a * b * z3
    c4 = 2 * (
        z1sq * z1sq
        + a * (3 * z1sq * z2 - 2 * z2sq * s1 + z1c * z1c * z2sq * z2)
        + z2sq * a * a
        + a * b * (2 * z1 * z3 - 2 * z1c * z2 * z3 - np.conj(z2) * z3 * z3 + c * z4)
    )
    return c1, c2, c3, c4


def schur_from_coeffs(c: CaratheodoryCoeffs, cutoff: float = TOL.boundary_cutoff) -> SchurParams:
    """Recover Schur parameters by forward substitution.

    Once ``1 - |zeta_k|^2`` drops below ``cutoff`` the remaining parameters
    carry no information and are set to zero; the recovered values are
    clipped onto the closed disk.
    """

    def clip(z: complex) -> complex:
        r = abs(z)
        return z / r if r > 1.0 else z

    c1, c2, c3, c4 = c.as_tuple()
    z1 = clip(c1 / 2)
    zs = [z1, 0j, 0j, 0j]
    a = 1.0 - abs(z1) ** 2
    if a >= cutoff:
        z2 = clip((c2 - 2 * z1**2) / (2 * a))
        zs[1] = z2
        b = 1.0 - abs(z2) ** 2
        if b >= cutoff:
            rest = c3 - 2 * z1**3 - 4 * a * z1 * z2 + 2 * a * z1.conjugate() * z2**2
            z3 = clip(rest / (2 * a * b))
            zs[2] = z3
            cc = 1.0 - abs(z3) ** 2
            if cc >= cutoff:
                known = c4_from_schur(z1, z2, z3, 0j)
                zs[3] = clip((c4 - known) / (2 * a * b * cc))
    return SchurParams(*zs)


def coeffs_from_extremal(e: ExtremalParams) -> CaratheodoryCoeffs:
    """Coefficients of ``P_{t,theta}`` or ``H_{t,beta}``.

    Expanding ``(1 + w)/(1 - w) = 1 + 2 sum_{k>=1} w^k`` with ``w = e^{i theta} z``
    and ``w = e^{2 i theta} z^2`` gives, for ``P``,
    ``c_n = 2 t e^{i n theta}`` (odd ``n``) and
    ``c_n = 2 t e^{i n theta} + 2 (1 - t) e^{i n theta} = 2 e^{i n theta}`` (even ``n``).
    For ``H``: ``c_n = 2 (1 - 2t) + 2 t beta^n + 2 t conj(beta)^n``.
    """
    out = []
    if e.family is Family.P:
        for n in range(1, 5):
            rot = cmath.exp(1j * n * e.theta)
            cn = 2 * e.t * rot
            if n % 2 == 0:
                cn += 2 * (1 - e.t) * rot
            out.append(cn)
    else:
        beta = e.beta
        for n in range(1, 5):
            out.append(2 * (1 - 2 * e.t) + 2 * e.t * beta**n + 2 * e.t * beta.conjugate() ** n)
    return CaratheodoryCoeffs(*(complex(v) for v in out))


def toeplitz_validity(c: CaratheodoryCoeffs) -> list[float]:
    """Hermitian Toeplitz determinants ``D_1 .. D_4``.

    ``D_k`` has size ``k + 1``, diagonal 2 and first row ``(2, c_1, ..., c_k)``;
    all of them are non-negative for members of the class.
    """
    seq = [2.0 + 0j, *c.as_tuple()]
    dets = []
    for k in range(1, 5):
        n = k + 1
        T = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                T[i, j] = seq[j - i] if j >= i else np.conj(seq[i - j])
        dets.append(float(np.linalg.det(T).real))
    return dets


def lemma_slacks(c: CaratheodoryCoeffs) -> dict[str, float]:
    """Slack (bound minus left side) of the classical coefficient inequalities.

    Keys: ``"abs_c1" .. "abs_c4"`` for ``|c_n| <= 2``; ``"c2_c1sq"`` for
    ``|c_2 - c_1^2/2| <= 2 - |c_1|^2/2``; ``"third"`` and ``"fourth"`` for the
    two order-3/4 combinations bounded by 2.
    """
    c1, c2, c3, c4 = c.as_tuple()
    out = {f"abs_c{n}": 2.0 - abs(v) for n, v in enumerate((c1, c2, c3, c4), start=1)}
    out["c2_c1sq"] = (2.0 - abs(c1) ** 2 / 2) - abs(c2 - c1**2 / 2)
    out["third"] = 2.0 - abs(c3 - 2 * c1 * c2 + c1**3)
    out["fourth"] = 2.0 - abs(c1**4 - 3 * c1**2 * c2 + c2**2 + 2 * c1 * c3 - c4)
    return out


def identity_terms_poly(c1: complex, c2: complex, c3: complex) -> tuple[complex, complex, complex]:
    """``(A, B, M)`` of the c4 disk identity from ``c_1, c_2, c_3``.

    ``M`` is the 3x3 Toeplitz determinant; ``|M c_4 - A| <= B`` is the
    non-negativity of the 5x5 determinant, rearranged.
    """
    d1, d2, d3 = c1.conjugate(), c2.conjugate(), c3.conjugate()
    s1 = abs(c1) ** 2
    A = (
        c1**4
        + 4 * c2**2
        + 8 * c1 * c3
        - 4 * d1 * c2 * c3
        - 2 * s1 * c1 * c3
        - 6 * c1**2 * c2
        + 2 * s1 * c2**2
        + d1**2 * c3**2
        - (c2**3 - 2 * c1 * c2 * c3 + 2 * c3**2) * d2
    )
    B = (
        16
        - 12 * s1
        + s1**2
        + 4 * d1**2 * c2
        - c3 * d1**3
        + (4 * c1**2 - 2 * s1 * c2 - 8 * c2 + 4 * d1 * c3) * d2
        + (c2**2 - c1 * c3) * d2**2
        - (c1**3 - 4 * c1 * c2 + 4 * c3 + d1 * c2**2 - s1 * c3) * d3
    )
    M = 8 - 4 * s1 + d1**2 * c2 + c1**2 * d2 - 2 * abs(c2) ** 2
    return complex(A), complex(B), complex(M)


def identity_terms_schur(z: SchurParams) -> tuple[complex, complex, complex]:
    """The same ``(A, B, M)`` written directly in Schur parameters."""
    z1, z2, z3, _ = z.as_tuple()
    a = 1.0 - abs(z1) ** 2
    b = 1.0 - abs(z2) ** 2
    c = 1.0 - abs(z3) ** 2
    z1c = z1.conjugate()
    inner = (
        z2**2 * a**2
        + z1**4
        + a * (3 * z1**2 * z2 - 2 * z2**2 * abs(z1) ** 2 + z1c**2 * z2**3)
        + a * b * (2 * z1 * z3 - 2 * z1c * z2 * z3 - z2.conjugate() * z3**2)
    )
    A = 16 * a**2 * b * inner
    B = 16 * a**3 * b**2 * c
    M = 8 * a**2 * b
    return complex(A), complex(B), complex(M)


def verify_c4_identity(z: SchurParams) -> float:
    """Residual of the c4 identity at ``z``.

    Computes ``A, B, M`` from the coefficient polynomials and from the
    Schur-parameter closed forms and returns the largest disagreement plus
    ``|M c_4 - A - B zeta_4|``.

    Raises
    ------
    DegenerateCaseError
        If ``|zeta_1| = 1`` or ``|zeta_2| = 1`` (both sides vanish).
    """
    if abs(z.zeta1) >= 1.0 or abs(z.zeta2) >= 1.0:
        raise DegenerateCaseError("identity is 0 = 0 for |zeta1| = 1 or |zeta2| = 1")
    c = coeffs_from_schur(z)
    A1, B1, M1 = identity_terms_poly(c.c1, c.c2, c.c3)
    A2, B2, M2 = identity_terms_schur(z)
    gap = max(abs(A1 - A2), abs(B1 - B2), abs(M1 - M2))
    return float(gap + abs(M1 * c.c4 - A1 - B1 * z.zeta4))


def _disk(rng: np.random.Generator, count: int) -> np.ndarray:
    if SAMPLING.disk != "uniform":
        raise ValueError(f"unknown disk sampling {SAMPLING.disk!r}")
    r = np.sqrt(rng.random(count))
    ang = rng.random(count) * (2 * math.pi)
    z = r * np.exp(1j * ang)
    return z


def sample_schur(seed: int, count: int, real_zeta1: bool = False) -> list[SchurParams]:
    """Seeded random Schur parameters, uniform on the disk.

    With ``real_zeta1`` the first parameter is uniform on ``[-1, 1]``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    if real_zeta1:
        z1 = rng.uniform(-1.0, 1.0, count).astype(complex)
    else:
        z1 = _disk(rng, count)
    rest = [_disk(rng, count) for _ in range(3)]
    return [
        SchurParams(complex(z1[i]), complex(rest[0][i]), complex(rest[1][i]), complex(rest[2][i]), real_zeta1)
        for i in range(count)
    ]
