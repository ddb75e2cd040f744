"""Phantom interpolation nodes: grid augmentation, blend values, error ratios.

Appending 2k phantom nodes on the right refines the grid to step
h = 2*pi/(N + 2k); the N real values keep their places at the first N nodes
and the real data now spans [0, (N-1)h].  Phantom values are synthesized by
a Hermite blend joining the data's right edge back to its wrapped left edge,
or selected by direct minimax search.

Two sampling conventions are supported, because the reference results mix
them:

* ``unit`` -- the data is indexed in grid units: node i carries f(i-1) and
  analytic end derivatives f^(j)(N-1), f^(j)(0) feed the blend directly.
  This is the convention of the worked linear example (values 1..9, end
  slopes 1).
* ``segment`` -- f is sampled across its whole segment, at abscissas
  (i-1)*2*pi/(N-1) including both endpoints, and the values are placed on
  the interpolation grid.  The data curve seen by the grid is then
  g(t) = f(t*step/h), and analytic end derivatives are the curve's true
  (chain-scaled) derivatives.  This is the convention behind the error
  tables.

In both conventions the value sequence is fixed once; moving to a finer
grid never changes it.  Divided-difference end derivatives are always
estimated from the samples at their radian grid positions.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .extension import TWO_PI, RealFunction, build_hermite_blend, derivatives_from_samples
from .triginterp import ErrorReport, SampleSet, TrigPolynomial, interpolate, normalized_error

STRATEGIES = ("C0", "C1", "C2", "selected")
SAMPLINGS = ("unit", "segment")
_BLEND_ORDERS = {"C0": 1, "C1": 2, "C2": 3}
_DD_STENCIL = 4  # one-sided stencil width for divided-difference end derivatives


@dataclass(frozen=True)
class PhantomPlan:
    """Node counts, strategy, sampling convention, and the refined-grid geometry."""

    N: int
    k: int
    strategy: str = "C0"
    deriv_source: str = "analytic"
    sampling: str = "unit"
    phantom_values: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.N < 3 or self.N % 2 == 0:
            raise ValueError(f"N must be odd and >= 3, got {self.N}")
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.deriv_source not in ("analytic", "divided_difference"):
            raise ValueError(f"unknown deriv_source {self.deriv_source!r}")
        if self.sampling not in SAMPLINGS:
            raise ValueError(f"unknown sampling convention {self.sampling!r}")
        if self.phantom_values is not None:
            vals = tuple(float(v) for v in self.phantom_values)
            if len(vals) != 2 * self.k:
                raise ValueError(f"expected {2 * self.k} phantom values, got {len(vals)}")
            if not all(math.isfinite(v) for v in vals):
                raise ValueError("phantom values must be finite")
            object.__setattr__(self, "phantom_values", vals)

    @property
    def M(self) -> int:
        return self.N + 2 * self.k

    @property
    def h(self) -> float:
        return TWO_PI / self.M

    @property
    def interval_end(self) -> float:
        return (self.N - 1) * self.h

    @property
    def phantom_positions(self) -> np.ndarray:
        return np.arange(self.N, self.M) * self.h

    @property
    def sample_step(self) -> float:
        """Spacing of the sample abscissas in f's own variable."""
        return 1.0 if self.sampling == "unit" else TWO_PI / (self.N - 1)

    def with_values(self, values) -> "PhantomPlan":
        return replace(self, phantom_values=tuple(float(v) for v in values))


@dataclass(frozen=True)
class RatioRecord:
    """One table cell: errors with and without phantom nodes, and their ratio."""

    label: str
    N: int
    k: int
    strategy: str
    error_without: float
    error_with: float
    ratio: float
    note: str = ""


def plan_grid(
    N: int,
    k: int,
    strategy: str = "C0",
    deriv_source: str = "analytic",
    sampling: str = "unit",
) -> PhantomPlan:
    """Refined-grid plan with values unset; h = 2*pi/(N + 2k)."""
    return PhantomPlan(N=N, k=k, strategy=strategy, deriv_source=deriv_source, sampling=sampling)


def sample_abscissas(N: int, sampling: str = "unit") -> np.ndarray:
    """Abscissas in f's own variable at which the N data values are taken."""
    if sampling == "unit":
        return np.arange(N, dtype=float)
    if sampling == "segment":
        return np.arange(N) * (TWO_PI / (N - 1))
    raise ValueError(f"unknown sampling convention {sampling!r}")


def node_samples(f: RealFunction, count: int, sampling: str = "unit") -> np.ndarray:
    """The fixed value sequence carried by the first ``count`` grid nodes."""
    vals = np.asarray(f(sample_abscissas(count, sampling)), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError("function produced non-finite sample values")
    return vals


def data_target(f: RealFunction, grid_step: float, sampling: str = "unit", N: int | None = None):
    """Continuous data curve on the grid: node i at (i-1)*grid_step carries f(x_i)."""
    if sampling == "unit":
        scale = 1.0 / grid_step
    else:
        if N is None:
            raise ValueError("segment sampling needs the real node count")
        scale = (TWO_PI / (N - 1)) / grid_step
    return lambda t: f(np.asarray(t, dtype=float) * scale)


def phantom_values_blend(samples, plan: PhantomPlan, f: RealFunction | None = None) -> np.ndarray:
    """Blend values at the phantom node positions.

    The Hermite blend on [(N-1)h, 2*pi] matches the data's right-edge value
    f_N (C0), plus first (C1) or first and second (C2) derivatives, against
    the wrapped left-edge data f_1 at 2*pi.  Analytic derivatives are taken
    from f at the edge abscissas of the plan's sampling convention --
    chain-scaled to the grid variable for segment sampling, used directly
    for unit sampling.  Divided differences use one-sided Newton stencils
    over the nearest min(4, N) samples at their radian positions.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size != plan.N:
        raise ValueError(f"expected {plan.N} real samples, got {samples.size}")
    if not np.all(np.isfinite(samples)):
        raise ValueError("samples must be finite")
    if plan.strategy not in _BLEND_ORDERS:
        raise ValueError(f"strategy {plan.strategy!r} is not a blend strategy")
    orders = _BLEND_ORDERS[plan.strategy]

    left = [float(samples[-1])]
    right = [float(samples[0])]
    if orders > 1:
        if plan.deriv_source == "analytic":
            if f is None or not f.has_derivatives:
                raise ValueError("analytic derivative data requested but unavailable")
            xs = sample_abscissas(plan.N, plan.sampling)
            chain = 1.0 if plan.sampling == "unit" else plan.sample_step / plan.h
            for j in range(1, orders):
                left.append(float(f.deriv(j)(float(xs[-1]))) * chain ** j)
                right.append(float(f.deriv(j)(0.0)) * chain ** j)
        else:
            if plan.N < _DD_STENCIL:
                raise ValueError(f"divided differences need at least {_DD_STENCIL} real samples")
            m = min(_DD_STENCIL, plan.N)
            h = plan.h
            idx = plan.N - 1 - np.arange(m)
            d_left = derivatives_from_samples(idx * h, samples[idx], plan.interval_end, orders - 1)
            d_right = derivatives_from_samples(np.arange(m) * h, samples[:m], 0.0, orders - 1)
            left.extend(d_left[1:orders])
            right.extend(d_right[1:orders])

    blend = build_hermite_blend(left, right, plan.interval_end, TWO_PI)
    return np.asarray(blend(plan.phantom_positions), dtype=float)


def augment_and_interpolate(samples, plan: PhantomPlan) -> TrigPolynomial:
    """Interpolate the N real samples plus the plan's 2k phantom values."""
    if plan.phantom_values is None:
        raise ValueError("plan carries no phantom values")
    samples = np.asarray(samples, dtype=float)
    if samples.size != plan.N:
        raise ValueError(f"expected {plan.N} real samples, got {samples.size}")
    combined = np.concatenate([samples, np.asarray(plan.phantom_values)])
    return interpolate(SampleSet(combined))


def _span_denominator(samples: np.ndarray) -> float:
    denom = abs(float(samples[-1]) - float(samples[0]))
    if denom == 0.0:
        raise ValueError("constant end samples: the normalized error metric is undefined")
    return denom


def baseline_report(f: RealFunction, N: int, grid: int = 2001, sampling: str = "unit") -> ErrorReport:
    """No-phantom interpolation error on the coarse grid's own interval."""
    if N < 3 or N % 2 == 0:
        raise ValueError(f"N must be odd and >= 3, got {N}")
    samples = node_samples(f, N, sampling)
    h0 = TWO_PI / N
    T = interpolate(SampleSet(samples))
    denom = _span_denominator(samples)
    return normalized_error(data_target(f, h0, sampling, N), T, (N - 1) * h0, grid, denom)


def phantom_report(
    f: RealFunction,
    N: int,
    k: int,
    strategy: str,
    deriv_source: str = "analytic",
    grid: int = 2001,
    sampling: str = "unit",
    values=None,
) -> tuple[ErrorReport, np.ndarray]:
    """Phantom-augmented interpolation error on [0, (N-1)h], plus the values used."""
    plan = plan_grid(N, k, strategy, deriv_source, sampling)
    samples = node_samples(f, N, sampling)
    if values is None:
        values = phantom_values_blend(samples, plan, f)
    values = np.asarray(values, dtype=float)
    T = augment_and_interpolate(samples, plan.with_values(values))
    denom = _span_denominator(samples)
    report = normalized_error(data_target(f, plan.h, sampling, N), T, plan.interval_end, grid, denom)
    return report, values


def error_ratio(
    f: RealFunction,
    N: int,
    k: int,
    strategy: str,
    deriv_source: str = "analytic",
    grid: int = 2001,
    sampling: str = "unit",
    budget: int = 20000,
    seeds: int = 6,
    seed: int = 0,
) -> RatioRecord:
    """Ratio of the no-phantom error to the phantom-augmented error.

    The numerator is measured on the coarse grid's interval
    [0, (N-1)*2*pi/N], the denominator on the refined [0, (N-1)h]; both
    normalize by the span of the real samples.  Strategy ``selected``
    delegates the value search to the optimizer.
    """
    without = baseline_report(f, N, grid, sampling).max_abs_error
    if strategy == "selected":
        from . import optimize

        result = optimize.select_phantom_values(
            f, N, k, budget=budget, seeds=seeds, seed=seed,
            deriv_source=deriv_source, grid=grid, sampling=sampling,
        )
        with_err = result.achieved_error
    else:
        report, _ = phantom_report(f, N, k, strategy, deriv_source, grid, sampling)
        with_err = report.max_abs_error
    if with_err == 0.0:
        raise ValueError("phantom interpolation error is exactly zero; ratio undefined")
    return RatioRecord(
        label=f.label,
        N=N,
        k=k,
        strategy=strategy,
        error_without=without,
        error_with=with_err,
        ratio=without / with_err,
    )


def table_sweep(
    functions,
    Ns=(5, 9, 13),
    ks=(1, 2),
    strategies=STRATEGIES,
    deriv_source: str = "analytic",
    grid: int = 2001,
    sampling: str = "segment",
    budget: int = 20000,
    seeds: int = 6,
    seed: int = 0,
    threads: int = 1,
) -> list[RatioRecord]:
    """Cross product of ratio records in deterministic (function, N, k, strategy) order.

    Per-cell failures are flagged in the record's note with NaN values and
    never abort the sweep.  Cells are independent, so they may run on a
    thread pool; results are merged in enumeration order either way, and
    per-cell seeds are derived from the cell index so threading never
    changes the numbers.
    """
    cells = [
        (fn, N, k, strat)
        for fn in functions
        for N in Ns
        for k in ks
        for strat in strategies
    ]

    def run(idx_cell):
        idx, (fn, N, k, strat) = idx_cell
        try:
            return error_ratio(
                fn, N, k, strat, deriv_source, grid, sampling,
                budget=budget, seeds=seeds, seed=seed + idx,
            )
        except Exception as exc:  # flagged cell, sweep continues
            return RatioRecord(
                label=fn.label, N=N, k=k, strategy=strat,
                error_without=float("nan"), error_with=float("nan"),
                ratio=float("nan"), note=str(exc),
            )

    work = list(enumerate(cells))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(work) or 1)) as pool:
            return list(pool.map(run, work))
    return [run(item) for item in work]
