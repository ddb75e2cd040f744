"""Minimax search for phantom-node values.

The objective is the max normalized interpolation error over the real-data
interval as a function of the 2k phantom values.  Multi-start downhill
simplex from the blend-strategy values (plus seeded Gaussian restarts, wide
enough to reach optima far outside the data range) is followed by cyclic
coordinate refinement down to step 1e-3; reported values are rounded to
1e-3 and the achieved error is re-evaluated at the rounded point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extension import RealFunction
from .phantom_nodes import (
    augment_and_interpolate,
    baseline_report,
    data_target,
    node_samples,
    phantom_values_blend,
    plan_grid,
)
from .triginterp import normalized_error

_POLISH_STEPS = (0.128, 0.064, 0.032, 0.016, 0.008, 0.004, 0.002, 0.001)
_SIMPLEX_DIAM_TOL = 1e-4


@dataclass(frozen=True)
class SelectionResult:
    """Best phantom values found, their error, and the search bookkeeping."""

    phantom_values: tuple[float, ...]
    achieved_error: float
    baseline_error: float
    ratio: float
    evaluations: int
    converged: bool
    seed: int


def evaluate_candidate(
    f: RealFunction, N: int, k: int, values, grid: int = 2001, sampling: str = "unit"
) -> float:
    """Max |epsilon| on [0, (N-1)h] for the interpolant through the given phantom values."""
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError("phantom values must be finite")
    plan = plan_grid(N, k, strategy="selected", sampling=sampling)
    samples = node_samples(f, N, sampling)
    T = augment_and_interpolate(samples, plan.with_values(values))
    denom = abs(float(samples[-1]) - float(samples[0]))
    if denom == 0.0:
        raise ValueError("constant end samples: the normalized error metric is undefined")
    report = normalized_error(data_target(f, plan.h, sampling, N), T, plan.interval_end, grid, denom)
    return report.max_abs_error


class _Objective:
    """Precomputed linear form of the objective: interpolation is linear in the data."""

    def __init__(self, f: RealFunction, N: int, k: int, grid: int, sampling: str = "unit"):
        plan = plan_grid(N, k, strategy="selected", sampling=sampling)
        samples = node_samples(f, N, sampling)
        self.denom = abs(float(samples[-1]) - float(samples[0]))
        if self.denom == 0.0:
            raise ValueError("constant end samples: the normalized error metric is undefined")
        M = plan.M
        nodes = np.arange(M) * plan.h
        order = (M - 1) // 2
        j = np.arange(1, order + 1)
        # coefficient map: coeffs = C @ data, rows [a0; a_j; b_j]
        C = np.vstack([
            np.full((1, M), 2.0 / M),
            (2.0 / M) * np.cos(np.outer(j, nodes)),
            (2.0 / M) * np.sin(np.outer(j, nodes)),
        ])
        ts = np.linspace(0.0, plan.interval_end, grid)
        design = np.hstack([
            np.full((ts.size, 1), 0.5),
            np.cos(np.outer(ts, j)),
            np.sin(np.outer(ts, j)),
        ])
        G = design @ C  # grid x M evaluation map of the interpolant
        target = np.asarray(data_target(f, plan.h, sampling, N)(ts), dtype=float)
        self.resid0 = target - G[:, :N] @ samples
        self.G_phantom = G[:, N:]
        self.evaluations = 0

    def __call__(self, values: np.ndarray) -> float:
        self.evaluations += 1
        return float(np.max(np.abs(self.resid0 - self.G_phantom @ values))) / self.denom


def _nelder_mead(fn, x0, step, max_evals):
    """Downhill simplex (reflect 1, expand 2, contract 0.5, shrink 0.5).

    Stops when the simplex diameter falls below 1e-4 or the evaluation
    allowance runs out; returns (best_x, best_f, converged).
    """
    n = x0.size
    pts = [x0.copy()]
    for i in range(n):
        p = x0.copy()
        p[i] += step
        pts.append(p)
    used = 0
    fs = []
    for p in pts:
        if used >= max_evals:
            break
        fs.append(fn(p))
        used += 1
    if len(fs) < len(pts):
        best = int(np.argmin(fs))
        return pts[best], fs[best], False

    pts = np.array(pts)
    fs = np.array(fs)
    while used < max_evals:
        order = np.argsort(fs, kind="stable")
        pts, fs = pts[order], fs[order]
        if np.max(np.abs(pts[1:] - pts[0])) < _SIMPLEX_DIAM_TOL:
            return pts[0], float(fs[0]), True
        centroid = pts[:-1].mean(axis=0)
        xr = centroid + (centroid - pts[-1])
        fr = fn(xr)
        used += 1
        if fr < fs[0]:
            if used >= max_evals:
                pts[-1], fs[-1] = xr, fr
                break
            xe = centroid + 2.0 * (centroid - pts[-1])
            fe = fn(xe)
            used += 1
            if fe < fr:
                pts[-1], fs[-1] = xe, fe
            else:
                pts[-1], fs[-1] = xr, fr
        elif fr < fs[-2]:
            pts[-1], fs[-1] = xr, fr
        else:
            inside = fr >= fs[-1]
            xc = centroid + 0.5 * ((pts[-1] if inside else xr) - centroid)
            if used >= max_evals:
                break
            fc = fn(xc)
            used += 1
            if fc < min(fr, fs[-1]):
                pts[-1], fs[-1] = xc, fc
            else:
                # shrink toward the best vertex; stale values past the
                # budget are fine, the loop exits at the top
                for i in range(1, n + 1):
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0])
                    if used < max_evals:
                        fs[i] = fn(pts[i])
                        used += 1
    best = int(np.argmin(fs))
    return pts[best], float(fs[best]), False


def _coordinate_polish(fn, x, fx, max_evals):
    """Greedy cyclic descent with step halving from 0.128 down to 1e-3."""
    used = 0
    x = x.copy()
    for step in _POLISH_STEPS:
        improved = True
        while improved and used < max_evals:
            improved = False
            for i in range(x.size):
                for delta in (step, -step):
                    if used >= max_evals:
                        return x, fx
                    trial = x.copy()
                    trial[i] += delta
                    ft = fn(trial)
                    used += 1
                    if ft < fx:
                        x, fx = trial, ft
                        improved = True
                        break
    return x, fx


def select_phantom_values(
    f: RealFunction,
    N: int,
    k: int,
    budget: int = 20000,
    seeds: int = 6,
    seed: int = 0,
    deriv_source: str = "analytic",
    grid: int = 2001,
    sampling: str = "unit",
    round_step: float = 1e-3,
) -> SelectionResult:
    """Search the 2k phantom values minimizing the max normalized error.

    Warm starts at the C0/C1/C2 blend values guarantee the result never
    trails the blend strategies; the remaining starts perturb them with
    Gaussian noise of scale half the sample span, seeded for exact
    reproducibility.  Ties break lexicographically on the value vector.
    """
    if budget < 2000:
        raise ValueError("budget must be at least 2000 evaluations")
    if seeds < 1:
        raise ValueError("seeds must be at least 1")
    plan = plan_grid(N, k, strategy="selected", sampling=sampling)
    samples = node_samples(f, N, sampling)
    baseline = baseline_report(f, N, grid, sampling).max_abs_error

    obj = _Objective(f, N, k, grid, sampling)

    blend_starts = []
    for strat in ("C0", "C1", "C2"):
        try:
            v = phantom_values_blend(samples, plan_grid(N, k, strat, deriv_source, sampling), f)
        except ValueError:
            continue
        blend_starts.append(np.asarray(v, dtype=float))
    if not blend_starts:
        raise ValueError("no feasible blend warm start (derivative data unavailable)")

    rng = np.random.default_rng(seed)
    span = float(samples.max() - samples.min())
    sigma = 0.5 * span if span > 0.0 else 0.5
    starts = list(blend_starts)
    while len(starts) < max(seeds, len(starts)):
        center = blend_starts[(len(starts) - len(blend_starts)) % len(blend_starts)]
        starts.append(center + rng.normal(0.0, sigma, size=2 * k))

    polish_reserve = min(budget // 5, 4000)
    final_reserve = 8
    search_budget = budget - polish_reserve - final_reserve
    per_start = max(search_budget // len(starts), 1)

    step = 0.1 * max(1.0, span)
    best_x, best_f = None, math.inf
    converged = False
    for x0 in starts:
        if obj.evaluations >= search_budget:
            break
        allowance = min(per_start, search_budget - obj.evaluations)
        x, fx, ok = _nelder_mead(obj, np.asarray(x0, dtype=float), step, allowance)
        converged = converged or ok
        if (fx, tuple(x)) < (best_f, tuple(best_x) if best_x is not None else ()):
            best_x, best_f = x, fx

    remaining = budget - obj.evaluations - final_reserve
    if remaining > 0:
        best_x, best_f = _coordinate_polish(obj, best_x, best_f, remaining)

    rounded = np.round(best_x / round_step) * round_step
    achieved = evaluate_candidate(f, N, k, rounded, grid, sampling)
    evaluations = obj.evaluations + 1
    return SelectionResult(
        phantom_values=tuple(float(v) for v in rounded),
        achieved_error=achieved,
        baseline_error=baseline,
        ratio=baseline / achieved,
        evaluations=evaluations,
        converged=converged,
        seed=seed,
    )
