"""Fourier coefficients, convergence factors, and jump-driven asymptotics.

Coefficients are computed by composite Simpson quadrature split at the known
seams of the integrand, which keeps the quadrature error from polluting the
decay order of the true coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extension import TWO_PI, _batch

SAWTOOTH_JUMP = -TWO_PI  # wrap jump of x - pi: f(0+) - f(2*pi-)


class NumericalError(RuntimeError):
    """Evaluation produced non-finite values."""


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Truncated trigonometric series: a0 plus cos/sin coefficients for n = 1..N."""

    a0: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.size != b.size or a.size < 1:
            raise ValueError("cosine and sine arrays must have equal length >= 1")
        if not (math.isfinite(self.a0) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("series coefficients must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def order(self) -> int:
        return int(self.a.size)


@dataclass(frozen=True)
class JumpData:
    """Jump magnitudes of f and its derivatives at points in [0, 2*pi).

    ``deltas[p][i]`` is the jump of the i-th derivative at ``points[p]``;
    include the point 0 when the periodic wrap itself jumps.
    """

    points: tuple[float, ...]
    deltas: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if len(pts) != len(self.deltas):
            raise ValueError("one jump row per point is required")
        if any(not 0.0 <= p < TWO_PI for p in pts):
            raise ValueError("jump points must lie in [0, 2*pi)")
        if any(p2 <= p1 for p1, p2 in zip(pts, pts[1:])):
            raise ValueError("jump points must be strictly increasing")
        widths = {len(row) for row in self.deltas}
        if len(widths) > 1:
            raise ValueError("jump table must be rectangular")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "deltas", tuple(tuple(float(v) for v in row) for row in self.deltas))

    @property
    def orders(self) -> int:
        return len(self.deltas[0]) if self.deltas else 0


def _simpson_grid(a: float, b: float, panels: int):
    x = np.linspace(a, b, 2 * panels + 1)
    w = np.full(x.size, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    w *= (b - a) / (2 * panels) / 3.0
    return x, w


def compute_coefficients(F, n_max: int, panels: int = 4096, seams=None) -> FourierSeries:
    """Coefficients a_n = (1/pi) int F cos(nx) dx, b_n likewise with sin.

    ``panels`` is the composite-Simpson panel count per smooth piece; the
    integration domain is split at every seam (taken from ``F.seams`` when
    the argument is omitted).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if panels < 64:
        raise ValueError("panels must be at least 64")
    if panels < 16 * n_max:
        raise ValueError("panels too small for the requested order (need >= 16*n_max)")
    if seams is None:
        seams = getattr(F, "seams", ()) or ()
    interior = sorted({float(s) % TWO_PI for s in seams if 1e-12 < float(s) % TWO_PI < TWO_PI - 1e-12})
    edges = [0.0, *interior, TWO_PI]

    n = np.arange(n_max + 1)
    acc_cos = np.zeros(n_max + 1)
    acc_sin = np.zeros(n_max + 1)
    for lo, hi in zip(edges, edges[1:]):
        if hi - lo < 1e-12:
            continue
        x, w = _simpson_grid(lo, hi, panels)
        # piece endpoints may sit on jumps of F: evaluate the one-sided
        # limits by insetting the endpoint samples a relative 1e-9
        x_eval = x.copy()
        inset = 1e-9 * (hi - lo)
        x_eval[0] += inset
        x_eval[-1] -= inset
        y = np.asarray(F(x_eval), dtype=float)
        if not np.all(np.isfinite(y)):
            raise NumericalError("integrand produced non-finite values")
        wy = w * y
        ang = np.outer(n, x)
        acc_cos += np.cos(ang) @ wy
        acc_sin += np.sin(ang) @ wy
    acc_cos /= math.pi
    acc_sin /= math.pi
    return FourierSeries(a0=float(acc_cos[0]), a=acc_cos[1:], b=acc_sin[1:])


def partial_sum(series: FourierSeries, t):
    """a0/2 + sum over n of (a_n cos nt + b_n sin nt)."""
    arr, scalar = _batch(t)
    flat = arr.reshape(-1)
    n = np.arange(1, series.order + 1)
    ang = np.outer(flat, n)
    vals = series.a0 / 2.0 + np.cos(ang) @ series.a + np.sin(ang) @ series.b
    out = vals.reshape(arr.shape)
    return float(out) if scalar else out


def sawtooth_series(n_max: int) -> FourierSeries:
    """Exact series of x - pi on [0, 2*pi): pure sines b_n = -2/n."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    n = np.arange(1, n_max + 1, dtype=float)
    return FourierSeries(a0=0.0, a=np.zeros(n_max), b=-2.0 / n)


def sigma_factor(n: int, alpha: float) -> float:
    """Convergence factor (2*pi/(2*pi - alpha)) * sin(n*alpha/2)/(n*alpha/2).

    Defined for 0 <= alpha < 2*pi; the alpha -> 0 limit is 1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if alpha < 0.0 or alpha >= TWO_PI:
        raise ValueError(f"alpha must lie in [0, 2*pi), got {alpha}")
    if alpha == 0.0:
        return 1.0
    x = n * alpha / 2.0
    return (TWO_PI / (TWO_PI - alpha)) * math.sin(x) / x


def blended_sawtooth_series(n_max: int, alpha: float) -> FourierSeries:
    """Series of the blended sawtooth extension: b_n = (-2/n) * sigma(n, alpha)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not 0.0 < alpha < TWO_PI:
        raise ValueError(f"alpha must lie in (0, 2*pi), got {alpha}")
    b = np.array([(-2.0 / n) * sigma_factor(n, alpha) for n in range(1, n_max + 1)])
    return FourierSeries(a0=0.0, a=np.zeros(n_max), b=b)


def jump_terms(jd: JumpData, n: int, i: int) -> tuple[float, float]:
    """The jump sums (A_n^(i), B_n^(i)) for derivative order i.

    A = -(1/pi) sum delta^(i) sin(n xi); B = (1/pi) sum delta^(i) cos(n xi).
    A point at 0 contributes nothing to A since sin(0) = 0, so summing every
    point in both sums matches the one-starts-at-mu=1 convention exactly.
    """
    if i < 0:
        raise ValueError("jump order must be non-negative")
    if not jd.points:
        return 0.0, 0.0
    if i >= jd.orders:
        raise ValueError(f"jump order {i} not present (have orders 0..{jd.orders - 1})")
    xi = np.asarray(jd.points)
    d = np.array([row[i] for row in jd.deltas])
    a_sum = -float(np.sum(d * np.sin(n * xi))) / math.pi
    b_sum = float(np.sum(d * np.cos(n * xi))) / math.pi
    return a_sum, b_sum


# Sign patterns of the 1/n^(i+1) terms, period 4 in the derivative order i.
_A_SIGNS = (1.0, -1.0, -1.0, 1.0)
_B_SIGNS = (1.0, 1.0, -1.0, -1.0)


def asymptotic_coefficients(jd: JumpData, n: int, k: int) -> tuple[float, float]:
    """Truncated jump expansions of (a_n, b_n) through the 1/n^k term.

    a_n uses A-sums at even orders and B-sums at odd orders with signs
    (+, -, -, +) repeating; b_n mirrors with B/A swapped and signs
    (+, +, -, -).  The last retained term falls on the A or B variant
    automatically according to the parity of k.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if jd.points and jd.orders < k:
        raise ValueError(f"need jump orders 0..{k - 1}, have 0..{jd.orders - 1}")
    if n < 1:
        raise ValueError("n must be at least 1")
    a_est = 0.0
    b_est = 0.0
    for i in range(k):
        if not jd.points:
            break
        A, B = jump_terms(jd, n, i)
        power = float(n) ** (i + 1)
        a_est += _A_SIGNS[i % 4] * (A if i % 2 == 0 else B) / power
        b_est += _B_SIGNS[i % 4] * (B if i % 2 == 0 else A) / power
    return a_est, b_est


def estimate_decay_order(series: FourierSeries, n_min: int, tiny: float = 1e-14) -> float:
    """Empirical decay exponent from a least-squares fit of log|c_n| vs log n.

    c_n = hypot(a_n, b_n); entries below ``tiny`` are skipped (near-zeros,
    e.g. from sinc-factor zeros, would corrupt the log fit).  Returns the
    negated slope, a positive number for decaying coefficients.
    """
    if n_min < 4:
        raise ValueError("n_min must be at least 4")
    if series.order < 2 * n_min:
        raise ValueError("series too short: need N >= 2*n_min")
    n = np.arange(1, series.order + 1)
    c = np.hypot(series.a, series.b)
    mask = (n >= n_min) & (c >= tiny)
    if int(mask.sum()) < 4:
        raise ValueError("fewer than 4 usable coefficients after skipping near-zeros")
    slope = np.polyfit(np.log(n[mask]), np.log(c[mask]), 1)[0]
    return -float(slope)


def series_to_csv(series: FourierSeries) -> str:
    """CSV text with header n,a_n,b_n; row n = 0 carries a0 in the a column."""
    lines = ["n,a_n,b_n", f"0,{series.a0:.17g},0"]
    for i in range(series.order):
        lines.append(f"{i + 1},{series.a[i]:.17g},{series.b[i]:.17g}")
    return "\n".join(lines) + "\n"
