"""Deterministic maximization over products of real intervals and unit disks.

A point of a :class:`SearchSpace` is a flat tuple of floats: one coordinate
per :class:`RealInterval` and two (real, imaginary) per :class:`UnitDisk`.

The search is a coarse scan of a tensor grid (polar grids on disks) followed
by a shrinking compass search from the best few grid nodes.  Nothing here is
a certificate of global optimality; the callers compare what the search
reaches against proven upper bounds.

Examples
--------
>>> space = SearchSpace((RealInterval(-1.0, 1.0),))
>>> res = maximize(lambda x: 1.0 - x[0] ** 2, space)
>>> round(res.max_value, 12), abs(res.argmax[0]) < 1e-8
(1.0, True)
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .config import DEFAULT_SEED

__all__ = [
    "RealInterval",
    "UnitDisk",
    "Budget",
    "SearchSpace",
    "SearchResult",
    "EvaluationError",
    "maximize",
    "grid_nodes",
    "thread_count",
]

_MIN_STEP = 1e-13


@dataclass(frozen=True)
class RealInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ValueError(f"need finite lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class UnitDisk:
    """The closed unit disk, stored as two flat coordinates."""


Dim = Union[RealInterval, UnitDisk]


@dataclass(frozen=True)
class Budget:
    """Search effort.

    ``grid_n`` intervals per real dimension; a disk gets ``grid_n`` radii in
    ``(0, 1]`` times ``4 * grid_n`` angles plus its centre.  When the full
    tensor grid has more than ``max_points`` nodes, ``max_points`` nodes are
    drawn from it uniformly with the space's seed instead.
    """

    grid_n: int = 24
    refine_iters: int = 300
    multistart_k: int = 8
    max_points: int = 200_000

    def __post_init__(self):
        if self.grid_n < 8:
            raise ValueError(f"grid_n must be >= 8, got {self.grid_n}")
        if self.multistart_k < 1:
            raise ValueError(f"multistart_k must be >= 1, got {self.multistart_k}")
        if self.refine_iters < 0:
            raise ValueError(f"refine_iters must be >= 0, got {self.refine_iters}")
        if self.max_points < 1:
            raise ValueError(f"max_points must be >= 1, got {self.max_points}")


@dataclass(frozen=True)
class SearchSpace:
    dims: tuple
    budget: Budget = field(default_factory=Budget)
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        dims = tuple(self.dims)
        if not dims:
            raise ValueError("search space needs at least one dimension")
        for d in dims:
            if not isinstance(d, (RealInterval, UnitDisk)):
                raise TypeError(f"unsupported dimension {d!r}")
        object.__setattr__(self, "dims", dims)

    @property
    def flat_size(self) -> int:
        return sum(1 if isinstance(d, RealInterval) else 2 for d in self.dims)


@dataclass(frozen=True)
class SearchResult:
    max_value: float
    argmax: tuple
    evaluations: int
    trace: tuple = ()


class EvaluationError(ArithmeticError):
    """The objective returned a non-finite value at ``point``."""

    def __init__(self, point, value):
        self.point = tuple(float(v) for v in point)
        self.value = value
        super().__init__(f"objective returned {value!r} at {self.point}")


def thread_count() -> int:
    """Worker threads for grid evaluation, from ``COEFF_BOUNDS_THREADS``."""
    raw = os.environ.get("COEFF_BOUNDS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"COEFF_BOUNDS_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def grid_nodes(dim: Dim, grid_n: int) -> np.ndarray:
    """Grid nodes of one dimension, shape ``(k, 1)`` or ``(k, 2)``.

    Interval nodes include both endpoints; disk nodes include the centre and
    the boundary circle.  Doubling ``grid_n`` gives a superset of nodes.
    """
    if isinstance(dim, RealInterval):
        return np.linspace(dim.lo, dim.hi, grid_n + 1)[:, None]
    radii = np.arange(1, grid_n + 1) / grid_n
    ang = np.arange(4 * grid_n) * (2.0 * math.pi / (4 * grid_n))
    rr, aa = np.meshgrid(radii, ang, indexing="ij")
    pts = np.column_stack([(rr * np.cos(aa)).ravel(), (rr * np.sin(aa)).ravel()])
    return np.vstack([[0.0, 0.0], pts])


def _grid(space: SearchSpace) -> np.ndarray:
    nodes = [grid_nodes(d, space.budget.grid_n) for d in space.dims]
    sizes = [len(n) for n in nodes]
    total = math.prod(sizes)
    if total <= space.budget.max_points:
        idx = np.indices(sizes).reshape(len(sizes), -1)
    else:
        rng = np.random.default_rng(space.seed)
        idx = np.stack([rng.integers(0, s, size=space.budget.max_points) for s in sizes])
    return np.hstack([nodes[k][idx[k]] for k in range(len(nodes))])


def _project(space: SearchSpace, pts: np.ndarray) -> np.ndarray:
    out = pts.copy()
    j = 0
    for d in space.dims:
        if isinstance(d, RealInterval):
            np.clip(out[:, j], d.lo, d.hi, out=out[:, j])
            j += 1
        else:
            r = np.hypot(out[:, j], out[:, j + 1])
            scale = np.where(r > 1.0, 1.0 / np.maximum(r, 1.0), 1.0)
            out[:, j] *= scale
            out[:, j + 1] *= scale
            j += 2
    return out


def _initial_steps(space: SearchSpace) -> np.ndarray:
    steps = []
    for d in space.dims:
        if isinstance(d, RealInterval):
            steps.append((d.hi - d.lo) / space.budget.grid_n)
        else:
            steps.extend([1.0 / space.budget.grid_n] * 2)
    return np.array(steps)


class _Evaluator:
    def __init__(self, objective, vectorized: bool, threads: int):
        self.objective = objective
        self.vectorized = vectorized
        self.threads = threads
        self.count = 0

    def _raw(self, pts: np.ndarray) -> np.ndarray:
        if self.vectorized:
            return np.asarray(self.objective(pts), dtype=float).reshape(len(pts))
        return np.array([float(self.objective(tuple(p))) for p in pts])

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        if self.threads > 1 and self.vectorized and len(pts) >= 4096 * self.threads:
            chunks = np.array_split(pts, self.threads)
            with ThreadPoolExecutor(self.threads) as ex:
                vals = np.concatenate(list(ex.map(self._raw, chunks)))
        else:
            vals = self._raw(pts)
        self.count += len(pts)
        bad = ~np.isfinite(vals)
        if bad.any():
            k = int(np.argmax(bad))
            raise EvaluationError(pts[k], vals[k])
        return vals


def _ranked(vals: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Indices sorted by value descending, then lexicographically by point."""
    keys = [pts[:, j] for j in range(pts.shape[1] - 1, -1, -1)] + [-vals]
    return np.lexsort(keys)


def _refine(space, evaluate, x, fx, trace, tick):
    d = len(x)
    step = _initial_steps(space)
    eye = np.eye(d)
    for _ in range(space.budget.refine_iters):
        cand = np.vstack([x + step * eye, x - step * eye])
        cand = _project(space, cand)
        vals = evaluate(cand)
        k = int(np.argmax(vals))
        if vals[k] > fx:
            x, fx = cand[k], float(vals[k])
        else:
            step = step * 0.5
            if step.max() < _MIN_STEP:
                break
        tick[0] += 1
        if trace is not None:
            trace.append((tick[0], fx))
    return x, fx


def maximize(
    objective: Callable,
    space: SearchSpace,
    *,
    vectorized: bool = False,
    record_trace: bool = False,
) -> SearchResult:
    """Maximize ``objective`` over ``space``.

    Parameters
    ----------
    objective : callable
        Scalar function of a flat point tuple, or, with ``vectorized=True``,
        a function mapping an ``(N, flat_size)`` array to ``N`` values.
    space : SearchSpace
        Dimensions, budget and seed.
    vectorized : bool
        Whether ``objective`` takes batches.
    record_trace : bool
        Keep ``(iteration, best_so_far)`` pairs from the refinement phase.

    Returns
    -------
    SearchResult
        ``max_value`` is the objective evaluated at ``argmax``.

    Raises
    ------
    EvaluationError
        If the objective produces a non-finite value.
    """
    evaluate = _Evaluator(objective, vectorized, thread_count())
    pts = _grid(space)
    vals = evaluate(pts)
    order = _ranked(vals, pts)
    best_x, best_f = pts[order[0]], float(vals[order[0]])

    seeds: list[np.ndarray] = []
    seen = set()
    for k in order:
        key = pts[k].tobytes()
        if key in seen:
            continue
        seen.add(key)
        seeds.append(pts[k])
        if len(seeds) == space.budget.multistart_k:
            break

    trace = [] if record_trace else None
    tick = [0]
    finals = [(best_f, best_x)]
    for s in seeds:
        fs = float(evaluate(s[None, :])[0])
        finals.append(_refine(space, evaluate, s.copy(), fs, trace, tick)[::-1])

    fvals = np.array([f for f, _ in finals])
    fpts = np.vstack([x for _, x in finals])
    win = _ranked(fvals, fpts)[0]
    argmax = fpts[win]
    value = float(evaluate(argmax[None, :])[0])
    return SearchResult(
        max_value=value,
        argmax=tuple(float(v) for v in argmax),
        evaluations=evaluate.count,
        trace=tuple(trace) if trace is not None else (),
    )
