"""Trigonometric interpolation on an odd equispaced grid and its error metric.

Coefficients come from the balanced discrete sums, which reproduce the
samples exactly for odd node counts.  The normalized error divides the
pointwise residual by the span |f_N - f_1| of the real data, making error
ratios scale-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .extension import TWO_PI, _batch


@dataclass(frozen=True, eq=False)
class SampleSet:
    """An odd number of equispaced samples on [0, 2*pi)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 3:
            raise ValueError("need a flat array of at least 3 samples")
        if v.size % 2 == 0:
            raise ValueError(f"node count must be odd, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return int(self.values.size)

    @property
    def h(self) -> float:
        return TWO_PI / self.M

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.M) * self.h


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """Interpolating polynomial a0/2 + sum_j (a_j cos jt + b_j sin jt)."""

    a0: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.size != b.size:
            raise ValueError("cos and sin coefficient arrays must match in length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def order(self) -> int:
        return int(self.a.size)

    def __call__(self, t):
        return evaluate(self, t)


@dataclass(frozen=True)
class ErrorReport:
    """Max of |epsilon| over a probe grid on [0, interval_end]."""

    interval_end: float
    grid: int
    max_abs_error: float
    argmax: float
    denom: float


def interpolate(s: SampleSet) -> TrigPolynomial:
    """Discrete Fourier sums a_j = (2/M) sum f_i cos(j t_i) etc., j <= (M-1)/2."""
    t = s.nodes
    f = s.values
    order = (s.M - 1) // 2
    j = np.arange(1, order + 1)
    ang = np.outer(j, t)
    scale = 2.0 / s.M
    return TrigPolynomial(
        a0=scale * float(f.sum()),
        a=scale * (np.cos(ang) @ f),
        b=scale * (np.sin(ang) @ f),
    )


def evaluate(T: TrigPolynomial, t):
    """Evaluate the polynomial; 2*pi-periodic by construction."""
    arr, scalar = _batch(t)
    flat = arr.reshape(-1)
    j = np.arange(1, T.order + 1)
    ang = np.outer(flat, j)
    vals = T.a0 / 2.0 + np.cos(ang) @ T.a + np.sin(ang) @ T.b
    out = vals.reshape(arr.shape)
    return float(out) if scalar else out


def _check_error_args(L: float, grid: int, denom: float) -> None:
    if not 0.0 < L <= TWO_PI + 1e-12:
        raise ValueError(f"probe interval end must lie in (0, 2*pi], got {L}")
    if grid < 101:
        raise ValueError("grid must have at least 101 points")
    if denom == 0.0:
        raise ValueError("normalization denominator is zero: the metric is undefined for constant data")
    if not denom > 0.0:
        raise ValueError(f"denominator must be positive, got {denom}")


def epsilon_grid(f, T: TrigPolynomial, L: float, grid: int, denom: float):
    """Signed normalized error (f(t) - T(t))/denom on an equispaced grid."""
    _check_error_args(L, grid, denom)
    ts = np.linspace(0.0, L, grid)
    eps = (np.asarray(f(ts), dtype=float) - evaluate(T, ts)) / denom
    return ts, eps


def normalized_error(f, T: TrigPolynomial, L: float, grid: int = 2001, denom: float = 1.0) -> ErrorReport:
    """Report max |epsilon| and its location over [0, L].

    ``denom`` is |f_N - f_1| taken from the real samples by the caller.
    """
    ts, eps = epsilon_grid(f, T, L, grid, denom)
    idx = int(np.argmax(np.abs(eps)))
    return ErrorReport(
        interval_end=float(L),
        grid=int(grid),
        max_abs_error=float(abs(eps[idx])),
        argmax=float(ts[idx]),
        denom=float(denom),
    )
