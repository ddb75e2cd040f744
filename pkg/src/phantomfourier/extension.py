"""Smooth periodic extension of a function given on [0, 2*pi].

A function sampled or defined on [0, 2*pi] generally has a jump (in value
or in derivatives) when continued periodically.  The extension built here
rescales the data onto [0, 2*pi - alpha] and fills the freed region with a
two-point Hermite blend polynomial, so the periodic continuation is C^(k-1)
across both seams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

TWO_PI = 2.0 * math.pi


def _batch(t):
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


def _call(fn, t):
    arr, scalar = _batch(t)
    out = np.asarray(fn(arr), dtype=float)
    if out.shape != arr.shape:
        out = np.broadcast_to(out, arr.shape).copy()
    return float(out) if scalar else out


@dataclass(frozen=True)
class RealFunction:
    """Evaluable scalar function with optional analytic derivatives.

    ``deriv_fn(j)`` must return an evaluator for the j-th derivative; leave
    it ``None`` when only values are available.
    """

    fn: Callable
    label: str = "f"
    deriv_fn: Callable[[int], Callable] | None = None

    def __call__(self, t):
        return _call(self.fn, t)

    @property
    def has_derivatives(self) -> bool:
        return self.deriv_fn is not None

    def deriv(self, j: int) -> Callable:
        """Evaluator for the j-th derivative (j = 0 is the function itself)."""
        if j < 0:
            raise ValueError("derivative order must be non-negative")
        if j == 0:
            return self.__call__
        if self.deriv_fn is None:
            raise ValueError(f"function {self.label!r} carries no analytic derivatives")
        g = self.deriv_fn(j)
        return lambda t, _g=g: _call(_g, t)


@dataclass(frozen=True)
class ExtensionConfig:
    """Geometry and smoothness of the phantom region.

    The phantom region has total width ``alpha``; by default it is
    single-sided (hugging 2*pi).  ``left_width = alpha/2`` gives the
    symmetric split with half the region on each side of the wrap point.
    ``smoothness_k`` is the number of matched orders (value plus
    derivatives through ``smoothness_k - 1``) at each seam.
    """

    alpha: float
    smoothness_k: int = 1
    left_width: float = 0.0
    right_width: float | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < TWO_PI:
            raise ValueError(f"alpha must lie in (0, 2*pi), got {self.alpha}")
        if self.smoothness_k < 1:
            raise ValueError("smoothness_k must be at least 1")
        q = self.alpha - self.left_width if self.right_width is None else self.right_width
        if self.left_width < 0.0 or q < 0.0:
            raise ValueError("phantom sub-widths must be non-negative")
        if abs(self.left_width + q - self.alpha) > 1e-12:
            raise ValueError("left_width + right_width must equal alpha")
        object.__setattr__(self, "right_width", q)


@dataclass(frozen=True)
class BlendPolynomial:
    """Polynomial in ascending powers of (t - t0), valid on [t0, t1]."""

    coeffs: tuple[float, ...]
    t0: float
    t1: float

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a blend polynomial needs at least one coefficient")
        if not all(math.isfinite(c) for c in self.coeffs):
            raise ValueError("blend coefficients must be finite")
        if not self.t0 < self.t1:
            raise ValueError("blend interval must satisfy t0 < t1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        arr, scalar = _batch(t)
        u = arr - self.t0
        acc = np.zeros_like(u)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return float(acc) if scalar else acc

    def derivative(self) -> "BlendPolynomial":
        if len(self.coeffs) == 1:
            return BlendPolynomial((0.0,), self.t0, self.t1)
        d = tuple(j * c for j, c in enumerate(self.coeffs) if j > 0)
        return BlendPolynomial(d, self.t0, self.t1)

    def deriv_value(self, t, order: int = 1):
        p = self
        for _ in range(order):
            p = p.derivative()
        return p(t)

    def to_json(self) -> dict:
        """Degree-ascending coefficient array with the base point stated."""
        return {
            "base_point": self.t0,
            "interval": [self.t0, self.t1],
            "coefficients": list(self.coeffs),
        }


@dataclass(frozen=True)
class ExtendedFunction:
    """Piecewise periodic extension: data on [0, 2*pi - alpha], blend after.

    ``shift`` rotates the whole construction, which realises the two-sided
    variant: with shift = left_width the blend straddles the wrap point.
    """

    base: RealFunction
    blend: BlendPolynomial
    alpha: float
    shift: float = 0.0

    @property
    def data_end(self) -> float:
        return TWO_PI - self.alpha

    @property
    def seams(self) -> tuple[float, ...]:
        """Interior breakpoints in (0, 2*pi) where smoothness may drop."""
        pts = []
        for s in (self.shift % TWO_PI, (self.data_end + self.shift) % TWO_PI):
            if 1e-12 < s < TWO_PI - 1e-12:
                pts.append(s)
        return tuple(sorted(pts))

    def __call__(self, t):
        return eval_periodic(self, t)


def rescale_to_subinterval(f: RealFunction, alpha: float) -> RealFunction:
    """Map f from [0, 2*pi] onto [0, 2*pi - alpha] by a linear change of variable.

    The result g satisfies g(t) = f(2*pi*t/(2*pi - alpha)); derivatives pick
    up the chain-rule factor per order when f provides them.
    """
    if not 0.0 < alpha < TWO_PI:
        raise ValueError(f"alpha must lie in (0, 2*pi), got {alpha}")
    scale = TWO_PI / (TWO_PI - alpha)

    deriv_fn = None
    if f.deriv_fn is not None:
        def deriv_fn(j, _f=f, _s=scale):
            g = _f.deriv(j)
            return lambda t: (_s ** j) * g(_s * np.asarray(t, dtype=float))

    return RealFunction(
        fn=lambda t: f(scale * np.asarray(t, dtype=float)),
        label=f"{f.label}|rescaled",
        deriv_fn=deriv_fn,
    )


def build_linear_blend(f0: float, f1: float, alpha: float) -> BlendPolynomial:
    """Linear blend on [2*pi - alpha, 2*pi] from f1 (left seam) down to f0 (wrap).

    f1 is the data value at the right edge of the rescaled interval, f0 the
    wrap value the extension must reach at 2*pi.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    t0 = TWO_PI - alpha
    return BlendPolynomial((float(f1), (float(f0) - float(f1)) / alpha), t0, TWO_PI)


def _hermite_newton_coeffs(left: list[float], right: list[float], d: float) -> list[float]:
    # Divided-difference table with each endpoint repeated k times; repeated
    # entries are filled with derivative values scaled by 1/j!.
    k = len(left)
    m = 2 * k
    z = [0.0] * k + [d] * k
    data = (left, right)
    group = [0] * k + [1] * k
    col = [data[group[i]][0] for i in range(m)]
    newton = [col[0]]
    fact = 1.0
    for j in range(1, m):
        fact *= j
        nxt = []
        for i in range(m - j):
            if z[i + j] == z[i]:
                nxt.append(data[group[i]][j] / fact)
            else:
                nxt.append((col[i + 1] - col[i]) / (z[i + j] - z[i]))
        newton.append(nxt[0])
        col = nxt
    return newton


def _newton_to_monomial(coeffs: list[float], roots: np.ndarray) -> np.ndarray:
    # Expand sum_j c_j * prod_{l<j}(u - roots[l]) into ascending powers of u.
    n = len(coeffs)
    poly = np.zeros(n)
    basis = np.zeros(n)
    basis[0] = 1.0
    poly[0] = coeffs[0]
    for j in range(1, n):
        shifted = np.zeros(n)
        shifted[1:] = basis[:-1]
        basis = shifted - roots[j - 1] * basis
        poly += coeffs[j] * basis
    return poly


def build_hermite_blend(left_values, right_values, t0: float, t1: float) -> BlendPolynomial:
    """Two-point Hermite interpolant of degree <= 2k - 1.

    ``left_values[j]`` prescribes the j-th derivative at t0 and
    ``right_values[j]`` at t1, j = 0 .. k-1.  Built in Newton
    divided-difference form with repeated nodes, then expanded in powers
    of (t - t0).
    """
    left = [float(v) for v in left_values]
    right = [float(v) for v in right_values]
    if len(left) != len(right):
        raise ValueError("left and right condition lists must have the same length")
    if not left:
        raise ValueError("at least the endpoint values are required")
    if not t0 < t1:
        raise ValueError("blend interval must satisfy t0 < t1")
    k = len(left)
    d = t1 - t0
    newton = _hermite_newton_coeffs(left, right, d)
    roots = np.array([0.0] * k + [d] * k)
    mono = _newton_to_monomial(newton, roots)
    return BlendPolynomial(tuple(float(c) for c in mono), t0, t1)


def derivatives_from_samples(xs, ys, x0: float, max_order: int) -> list[float]:
    """Derivative estimates at x0 from the Newton interpolant through (xs, ys).

    Returns [p(x0), p'(x0), ..., p^(max_order)(x0)] for the divided-difference
    polynomial p; xs must be distinct.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size != ys.size:
        raise ValueError("abscissas and values must have the same length")
    if xs.size < max_order + 1:
        raise ValueError("too few samples for the requested derivative order")
    col = ys.copy()
    coeffs = [float(col[0])]
    for j in range(1, xs.size):
        col = (col[1:] - col[:-1]) / (xs[j:] - xs[:-j])
        coeffs.append(float(col[0]))
    mono = _newton_to_monomial(coeffs, xs - x0)
    out = []
    fact = 1.0
    for j in range(max_order + 1):
        if j > 0:
            fact *= j
        out.append(fact * float(mono[j]) if j < mono.size else 0.0)
    return out


def assemble_extended(
    f: RealFunction,
    cfg: ExtensionConfig,
    deriv_source: str = "analytic",
) -> ExtendedFunction:
    """Rescale f and attach the Hermite blend that closes the periodic seam.

    Seam data pairing: the blend's left end carries the rescaled data's
    right-edge values, its right end the wrap values at 0.  With
    deriv_source ``analytic`` the chain-scaled derivatives of the rescaled
    function are used; ``divided_difference`` estimates them one-sidedly
    from k + 2 evaluations per side, spaced 1e-3 of the data interval.
    """
    if deriv_source not in ("analytic", "divided_difference"):
        raise ValueError(f"unknown deriv_source {deriv_source!r}")
    k = cfg.smoothness_k
    g = rescale_to_subinterval(f, cfg.alpha)
    data_end = TWO_PI - cfg.alpha

    if deriv_source == "analytic":
        if k > 1 and not g.has_derivatives:
            raise ValueError("analytic derivatives requested but the function has none")
        left = [g(data_end)] + [g.deriv(j)(data_end) for j in range(1, k)]
        right = [g(0.0)] + [g.deriv(j)(0.0) for j in range(1, k)]
    else:
        count = k + 2
        step = 1e-3 * data_end
        xs_left = data_end - step * np.arange(count)
        xs_right = step * np.arange(count)
        left = derivatives_from_samples(xs_left, g(xs_left), data_end, k - 1)
        right = derivatives_from_samples(xs_right, g(xs_right), 0.0, k - 1)

    blend = build_hermite_blend(left, right, data_end, TWO_PI)
    return ExtendedFunction(base=g, blend=blend, alpha=cfg.alpha, shift=cfg.left_width)


def eval_periodic(F: ExtendedFunction, t):
    """Evaluate the extension at any real t, reducing modulo 2*pi."""
    arr, scalar = _batch(t)
    u = np.mod(arr - F.shift, TWO_PI)
    base_vals = np.asarray(F.base(u), dtype=float)
    blend_vals = np.asarray(F.blend(u), dtype=float)
    out = np.where(u <= F.data_end, base_vals, blend_vals)
    return float(out) if scalar else out
