"""Maximum of ``|M|(1 - |v|^2) + |A + B v + C v^2|`` over the closed unit disk.

:func:`omega_closed_form` evaluates the piecewise formula for real
``A, B, C, M``; :func:`omega_oracle` maximizes the objective directly on a
polar grid with a stencil-search polish and serves as the independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels

__all__ = [
    "OmegaInput",
    "BRANCHES",
    "omega_branch",
    "omega_closed_form",
    "omega_objective",
    "omega_oracle",
    "stratified_inputs",
]

BRANCHES = (
    "sum",  # AC >= 0, |A| + |B| + |C|
    "vertex",  # AC >= 0, |M| + |A| + B^2 / (4(|M| - |C|))
    "inner",  # AC < 0,  |M| - |A| + B^2 / (4(|M| - |C|))
    "outer",  # AC < 0,  |M| + |A| + B^2 / (4(|M| + |C|))
    "s_plus",  # |A| + |B| - |C|
    "s_minus",  # -|A| + |B| + |C|
    "s_sqrt",  # (|A| + |C|) sqrt(1 - B^2 / (4AC))
)


@dataclass(frozen=True)
class OmegaInput:
    A: float
    B: float
    C: float
    M: float

    def __post_init__(self):
        for name in ("A", "B", "C", "M"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.A, self.B, self.C, self.M)


# below this (after scaling the largest input to 1) products in the guards
# may underflow, so branch selection switches to exact rational arithmetic
_TINY = 1e-60


def _normalized(inp: OmegaInput):
    """``(s, A/s, B/s, C/s, M/s)`` with ``s`` the largest magnitude.

    The scaled inputs are exact ``Fraction``s when any nonzero one is below
    ``_TINY``; floats convert to rationals without rounding.
    """
    A, B, C, M = inp.as_tuple()
    s = max(abs(A), abs(B), abs(C), abs(M))
    if s == 0.0:
        return 0.0, A, B, C, M
    vals = (A / s, B / s, C / s, M / s)
    if any(0.0 < abs(v) < _TINY for v in vals):
        fs = Fraction(s)
        vals = tuple(Fraction(v) / fs for v in (A, B, C, M))
    return (s, *vals)


def _branch(A, B, C, M) -> str:
    aA, aB, aC, aM = abs(A), abs(B), abs(C), abs(M)
    # sign test rather than A * C >= 0, which underflows for tiny A and C
    if A == 0 or C == 0 or (A > 0) == (C > 0):
        return "sum" if aB >= 2 * (aM - aC) else "vertex"
    # With AC < 0 the guards -4AC(M^2 - C^2) <= B^2 C^2 and
    # B^2 < -4AC(M^2/C^2 - 1) are divided through by |C| > 0, using
    # -A sgn(C) = |A|.
    lhs = 4 * aA * (aM - aC) * (aM + aC)
    if lhs <= B * B * aC and aB < 2 * (aM - aC):
        return "inner"
    if B * B < 4 * (aM + aC) ** 2 and B * B * aC < lhs:
        return "outer"
    if aC * (aB + 4 * aA) <= aA * aB:
        return "s_plus"
    if aA * aB <= aC * (aB - 4 * aA):
        return "s_minus"
    return "s_sqrt"


def omega_branch(inp: OmegaInput) -> str:
    """Label of the case of the piecewise formula that applies to ``inp``.

    Conditions are tested in the order they are listed; a tie goes to the
    earlier case.  When ``|M| = |C|`` the guards that would divide by
    ``|M| - |C|`` cannot hold, so no branch ever divides by zero.  The
    guards are evaluated on inputs scaled to a largest magnitude of 1.
    """
    s, A, B, C, M = _normalized(inp)
    if s == 0.0:
        return "sum"
    return _branch(A, B, C, M)


def omega_closed_form(inp: OmegaInput) -> float:
    # Omega is positively homogeneous of degree one, so evaluate on the
    # normalized inputs and scale back; this keeps products like AC in range
    s, A, B, C, M = _normalized(inp)
    if s == 0.0:
        return 0.0
    aA, aB, aC, aM = abs(A), abs(B), abs(C), abs(M)
    branch = _branch(A, B, C, M)
    if branch == "sum":
        value = aA + aB + aC
    elif branch == "vertex":
        value = aM + aA + B * B / (4 * (aM - aC))
    elif branch == "inner":
        value = aM - aA + B * B / (4 * (aM - aC))
    elif branch == "outer":
        value = aM + aA + B * B / (4 * (aM + aC))
    elif branch == "s_plus":
        value = aA + aB - aC
    elif branch == "s_minus":
        value = -aA + aB + aC
    else:
        # AC < 0 here, so 1 - B^2/(4AC) = 1 + (B/2|A|)(B/2|C|)
        value = (aC + aA) * math.sqrt(1 + (B / (2 * aA)) * (B / (2 * aC)))
    return s * float(value)


def omega_objective(inp: OmegaInput, v: complex) -> float:
    A, B, C, M = inp.as_tuple()
    return abs(M) * (1.0 - abs(v) ** 2) + abs(A + B * v + C * v * v)


def omega_oracle(inp: OmegaInput, grid_n: int = 64, refine_iters: int = 2000) -> float:
    """Brute-force maximum over the closed disk.

    Scans ``grid_n`` radii (plus the centre) times ``4 * grid_n`` angles, then
    polishes the best node with an adaptive 9 x 9 stencil search.
    """
    if grid_n < 64:
        raise ValueError(f"grid_n must be >= 64, got {grid_n}")
    value, _, _, _ = kernels.omega_oracle(*inp.as_tuple(), grid_n, refine_iters)
    return float(value)


def _draw(rng: np.random.Generator, size: int) -> np.ndarray:
    abc = rng.uniform(-10.0, 10.0, size=(size, 3))
    # shrinking |A| on half the rows makes the rare "inner" branch about
    # seven times more frequent, so large quotas fill by rejection
    abc[:, 0] *= np.where(rng.random(size) < 0.5, rng.random(size) ** 3, 1.0)
    kind = rng.integers(0, 3, size=size)
    m = np.where(kind == 0, 0.0, np.where(kind == 1, 1.0, rng.uniform(0.0, 10.0, size=size)))
    return np.column_stack([abc, m])


def stratified_inputs(seed: int, count: int, per_branch: int = 500) -> list[OmegaInput]:
    """Seeded random inputs with every branch represented.

    ``A, B, C`` are uniform on ``[-10, 10]``, except that on half of the draws
    ``A`` is multiplied by ``u^3`` (``u`` uniform on ``[0, 1]``); ``M`` is ``0``,
    ``1`` or uniform on ``[0, 10]`` with equal probability.  Candidates are accepted per
    branch until each branch holds ``max(per_branch, count // 7)`` inputs
    (the last bucket absorbs the remainder), so the returned list is
    ``count`` long and deterministic in ``seed``.
    """
    nb = len(BRANCHES)
    if count < nb * per_branch:
        raise ValueError(f"count must be >= {nb * per_branch} to give each branch {per_branch}")
    quota = {b: count // nb for b in BRANCHES}
    quota[BRANCHES[0]] += count - sum(quota.values())
    buckets: dict[str, list[OmegaInput]] = {b: [] for b in BRANCHES}
    rng = np.random.default_rng(seed)
    rounds = 0
    while any(len(buckets[b]) < quota[b] for b in BRANCHES):
        rounds += 1
        if rounds > 2000:
            short = {b: quota[b] - len(buckets[b]) for b in BRANCHES if len(buckets[b]) < quota[b]}
            raise RuntimeError(f"could not fill branch quotas: {short}")
        for row in _draw(rng, 4096):
            inp = OmegaInput(*row)
            b = omega_branch(inp)
            if len(buckets[b]) < quota[b]:
                buckets[b].append(inp)
    out: list[OmegaInput] = []
    for b in BRANCHES:
        out.extend(buckets[b])
    return out
