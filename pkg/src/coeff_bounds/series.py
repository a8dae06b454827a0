"""Truncated power series in the normalized class.

A :class:`TruncatedSeries` stores ``f(z) = z + a_2 z^2 + ... + a_N z^N`` as the
tuple ``(a_1, ..., a_N)`` with ``a_1 == 1``.  The arithmetic below is written
against plain Python scalars, so the same functions run in double precision
(``complex``/``float``) or exactly (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "SeriesOrderError",
    "TruncatedSeries",
    "InverseCoeffs",
    "invert_series",
    "compose",
    "series_from_ode",
    "identity_series",
]


class SeriesOrderError(ValueError):
    """Truncation orders are insufficient or incompatible."""


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise SeriesOrderError("a series needs at least the linear coefficient")
        if coeffs[0] != 1:
            raise ValueError(f"series must be normalized (a1 = 1), got a1 = {coeffs[0]!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def a(self, n: int):
        """Coefficient of ``z**n`` (1-based, as in ``a_n``)."""
        if not 1 <= n <= self.order:
            raise IndexError(f"a_{n} is outside truncation order {self.order}")
        return self.coeffs[n - 1]

    @classmethod
    def from_tail(cls, tail: Sequence) -> "TruncatedSeries":
        """Build ``z + tail[0] z^2 + tail[1] z^3 + ...``."""
        one = Fraction(1) if tail and all(isinstance(t, (int, Fraction)) for t in tail) else 1
        return cls((one, *tail))


@dataclass(frozen=True)
class InverseCoeffs:
    """``(delta_2, delta_3, delta_4, delta_5)`` of the compositional inverse."""

    deltas: tuple

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(self.deltas))

    def delta(self, n: int):
        if not 2 <= n <= len(self.deltas) + 1:
            raise IndexError(f"delta_{n} not available")
        return self.deltas[n - 2]

    def as_series(self) -> TruncatedSeries:
        return TruncatedSeries.from_tail(self.deltas)

    def __iter__(self):
        return iter(self.deltas)

    def __len__(self):
        return len(self.deltas)


def identity_series(order: int, exact: bool = False) -> TruncatedSeries:
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    return TruncatedSeries((one,) + (zero,) * (order - 1))


def invert_series(f: TruncatedSeries) -> InverseCoeffs:
    """Inverse coefficients ``delta_2 .. delta_5`` of ``f``.

    Raises
    ------
    SeriesOrderError
        If ``f`` is truncated below order 5.
    """
    if f.order < 5:
        raise SeriesOrderError(f"need order >= 5 to invert, got {f.order}")
    a2, a3, a4, a5 = f.coeffs[1:5]
    d2 = -a2
    d3 = 2 * a2**2 - a3
    d4 = 5 * a2 * a3 - 5 * a2**3 - a4
    d5 = 14 * a2**4 - 21 * a2**2 * a3 + 6 * a2 * a4 + 3 * a3**2 - a5
    return InverseCoeffs((d2, d3, d4, d5))


def _mul(p: list, q: list, order: int) -> list:
    # p, q indexed by power; result truncated at z**order
    out = [0] * (order + 1)
    for i, pi in enumerate(p):
        if pi == 0:
            continue
        for j in range(order + 1 - i):
            if j < len(q):
                out[i + j] += pi * q[j]
    return out


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``f(g(z))`` truncated to the shared order."""
    if f.order != g.order:
        raise SeriesOrderError(f"order mismatch: {f.order} vs {g.order}")
    order = f.order
    g_pow = [0] + list(g.coeffs)  # g**1, indexed by power
    total = [0] * (order + 1)
    for k in range(1, order + 1):
        ak = f.coeffs[k - 1]
        if ak != 0:
            for m in range(order + 1):
                total[m] += ak * g_pow[m]
        if k < order:
            g_pow = _mul(g_pow, [0] + list(g.coeffs), order)
    return TruncatedSeries(tuple(total[1:]))


def series_from_ode(b: Sequence, c: Sequence) -> TruncatedSeries:
    """Solve ``z f'(z) = g(z) p(z)`` for the coefficients of ``f``.

    Parameters
    ----------
    b : sequence
        ``(b_2, ..., b_N)`` of the starlike generator ``g``.
    c : sequence
        ``(c_1, ..., c_{N-1})`` of the Carathéodory function ``p``.

    Returns
    -------
    TruncatedSeries
        ``(1, a_2, ..., a_N)`` with ``n a_n = sum_{k=1}^{n} b_k c_{n-k}``
        (``b_1 = c_0 = 1``).
    """
    b = list(b)
    c = list(c)
    if len(b) != len(c):
        raise SeriesOrderError(f"need len(b) == len(c), got {len(b)} and {len(c)}")
    exact = all(isinstance(v, (int, Fraction)) for v in b + c)
    one = Fraction(1) if exact else 1
    bb = [one] + b  # b_1 .. b_N
    cc = [one] + c  # c_0 .. c_{N-1}
    coeffs = [one]
    for n in range(2, len(b) + 2):
        s = sum(bb[k - 1] * cc[n - k] for k in range(1, n + 1))
        coeffs.append(Fraction(s) / n if exact else s / n)
    return TruncatedSeries(tuple(coeffs))
