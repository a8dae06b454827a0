"""Pure Python / NumPy implementations of the hot kernels.

Mirrors ``_ckernels.pyx`` function for function; used when the compiled
extension is not built or ``COEFF_BOUNDS_BACKEND=python`` is set.
"""

from __future__ import annotations

import math

import numpy as np

from ..caratheodory import coeffs_from_schur_arrays

_MIN_STEP = 1e-13


def _split_batch(pts: np.ndarray, real_z1: bool):
    pts = np.asarray(pts, dtype=float)
    if real_z1:
        z1 = pts[:, 0].astype(complex)
        off = 1
    else:
        z1 = pts[:, 0] + 1j * pts[:, 1]
        off = 2
    zs = [z1]
    for k in range(3):
        j = off + 2 * k
        if j + 1 < pts.shape[1]:
            zs.append(pts[:, j] + 1j * pts[:, j + 1])
        else:
            zs.append(np.zeros(pts.shape[0], dtype=complex))
    return zs


def _deltas_from_c(b, n, c1, c2, c3, c4):
    b2, b3, b4, b5 = b
    a2 = (b2 + c1) / 2
    if n == 2:
        return -a2
    a3 = (b3 + b2 * c1 + c2) / 3
    if n == 3:
        return 2 * a2 * a2 - a3
    a4 = (b4 + c1 * b3 + c2 * b2 + c3) / 4
    if n == 4:
        return 5 * a2 * a3 - 5 * a2 * a2 * a2 - a4
    a5 = (b5 + b4 * c1 + b3 * c2 + b2 * c3 + c4) / 5
    a2sq = a2 * a2
    return 14 * a2sq * a2sq - 21 * a2sq * a3 + 6 * a2 * a4 + 3 * a3 * a3 - a5


def delta_abs_batch(b, n: int, pts, real_z1: bool) -> np.ndarray:
    """``|delta_n|`` for each row of ``pts`` (flat Schur-parameter layout)."""
    if n not in (2, 3, 4, 5):
        raise ValueError(f"n must be in 2..5, got {n}")
    z1, z2, z3, z4 = _split_batch(pts, real_z1)
    c = coeffs_from_schur_arrays(z1, z2, z3, z4)
    return np.abs(_deltas_from_c(tuple(float(v) for v in b), n, *c))


def delta_abs_point(b, n: int, x, real_z1: bool) -> float:
    """Scalar version of :func:`delta_abs_batch` for a single flat point."""
    if n not in (2, 3, 4, 5):
        raise ValueError(f"n must be in 2..5, got {n}")
    x = [float(v) for v in x]
    if real_z1:
        z1 = complex(x[0], 0.0)
        off = 1
    else:
        z1 = complex(x[0], x[1])
        off = 2
    zs = [z1]
    for k in range(3):
        j = off + 2 * k
        zs.append(complex(x[j], x[j + 1]) if j + 1 < len(x) else 0j)
    z1, z2, z3, z4 = zs
    s1 = z1.real * z1.real + z1.imag * z1.imag
    a = 1.0 - s1
    bb = 1.0 - (z2.real * z2.real + z2.imag * z2.imag)
    cc = 1.0 - (z3.real * z3.real + z3.imag * z3.imag)
    z1c = z1.conjugate()
    z1sq = z1 * z1
    z2sq = z2 * z2
    c1 = 2 * z1
    c2 = 2 * z1sq + 2 * a * z2
    c3 = 2 * z1sq * z1 + 4 * a * z1 * z2 - 2 * a * z1c * z2sq + 2 * a * bb * z3
    c4 = 2 * (
        z1sq * z1sq
        + a * (3 * z1sq * z2 - 2 * z2sq * s1 + z1c * z1c * z2sq * z2)
        + z2sq * a * a
        + a * bb * (2 * z1 * z3 - 2 * z1c * z2 * z3 - z2.conjugate() * z3 * z3 + cc * z4)
    )
    return abs(_deltas_from_c(tuple(float(v) for v in b), n, c1, c2, c3, c4))


def _omega_value(A, B, C, M, x, y):
    re = A + B * x + C * (x * x - y * y)
    im = B * y + 2.0 * C * x * y
    return abs(M) * (1.0 - (x * x + y * y)) + math.hypot(re, im)


_STENCIL = np.linspace(-1.0, 1.0, 9)
_SX, _SY = (g.ravel() for g in np.meshgrid(_STENCIL, _STENCIL))


def _omega_values(A, B, C, M, xs, ys):
    v = xs + 1j * ys
    return abs(M) * (1.0 - (xs * xs + ys * ys)) + np.abs(A + B * v + C * v * v)


def omega_oracle(A: float, B: float, C: float, M: float, grid_n: int, refine_iters: int):
    """Grid scan plus stencil polish; returns ``(value, x, y, evaluations)``.

    The polish evaluates a 9 x 9 stencil of half-width ``h`` around the
    incumbent, moves to the best node when it improves (and doubles ``h`` up
    to its starting value), otherwise halves ``h``.  The dense stencil copes
    with the long curved ridges this objective can have, where a plain
    compass search stalls.
    """
    radii = np.arange(1, grid_n + 1) / grid_n
    ang = np.arange(4 * grid_n) * (2 * math.pi / (4 * grid_n))
    rr, aa = np.meshgrid(radii, ang, indexing="ij")
    xs = np.concatenate([[0.0], (rr * np.cos(aa)).ravel()])
    ys = np.concatenate([[0.0], (rr * np.sin(aa)).ravel()])
    vals = _omega_values(A, B, C, M, xs, ys)
    k = int(np.argmax(vals))
    x, y = float(xs[k]), float(ys[k])
    best = _omega_value(A, B, C, M, x, y)
    evals = vals.size + 1
    h0 = h = 1.0 / grid_n
    for _ in range(refine_iters):
        px = x + h * _SX
        py = y + h * _SY
        r = np.hypot(px, py)
        scale = np.where(r > 1.0, 1.0 / np.maximum(r, 1.0), 1.0)
        px *= scale
        py *= scale
        v = _omega_values(A, B, C, M, px, py)
        evals += v.size
        k = int(np.argmax(v))
        if v[k] > best:
            best = float(v[k])
            x, y = float(px[k]), float(py[k])
            h = min(2.0 * h, h0)
        else:
            h *= 0.5
            if h < _MIN_STEP:
                break
    return best, x, y, evals
