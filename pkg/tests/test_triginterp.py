import math

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from phantomfourier.extension import TWO_PI
from phantomfourier.triginterp import (
    SampleSet,
    TrigPolynomial,
    epsilon_grid,
    evaluate,
    interpolate,
    normalized_error,
)


class TestSampleSet:
    def test_geometry(self):
        s = SampleSet(np.arange(9.0))
        assert s.M == 9
        npt.assert_allclose(s.h, TWO_PI / 9)
        npt.assert_allclose(s.nodes[-1], TWO_PI - s.h)

    @pytest.mark.parametrize("vals", [[1.0, 2.0], [1.0, 2.0, 3.0, 4.0], [1.0]])
    def test_rejects_even_or_short(self, vals):
        with pytest.raises(ValueError):
            SampleSet(np.array(vals))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            SampleSet(np.array([1.0, np.inf, 2.0]))


class TestInterpolate:
    def test_cosine_reproduced(self):
        s = SampleSet(np.cos(np.arange(5) * TWO_PI / 5))
        T = interpolate(s)
        npt.assert_allclose(T.a[0], 1.0, atol=1e-12)
        npt.assert_allclose(T.a[1], 0.0, atol=1e-12)
        npt.assert_allclose(T.b, 0.0, atol=1e-12)
        npt.assert_allclose(T.a0, 0.0, atol=1e-12)

    def test_constant(self):
        T = interpolate(SampleSet(np.full(7, 3.5)))
        npt.assert_allclose(T.a0, 7.0, atol=1e-13)
        npt.assert_allclose(T.a, 0.0, atol=1e-13)
        npt.assert_allclose(T.b, 0.0, atol=1e-13)

    def test_integer_ramp_hits_nodes(self):
        s = SampleSet(np.arange(1.0, 10.0))
        T = interpolate(s)
        npt.assert_allclose(evaluate(T, s.nodes), s.values, atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(
        m=st.sampled_from([5, 9, 13]),
        data=st.data(),
    )
    def test_node_exactness_random(self, m, data):
        vals = data.draw(hnp.arrays(np.float64, m, elements=st.floats(-10, 10)))
        s = SampleSet(vals)
        T = interpolate(s)
        scale = max(1.0, float(np.max(np.abs(vals))))
        assert np.max(np.abs(evaluate(T, s.nodes) - vals)) <= 1e-9 * scale

    @settings(max_examples=30, deadline=None)
    @given(
        m=st.sampled_from([5, 9, 13]),
        coeff_seed=st.integers(0, 2**31 - 1),
    )
    def test_trig_polynomial_exactness(self, m, coeff_seed):
        # any polynomial of order <= (M-1)/2 sampled at the nodes comes back
        rng = np.random.default_rng(coeff_seed)
        order = (m - 1) // 2
        ref = TrigPolynomial(
            a0=float(rng.uniform(-2, 2)),
            a=rng.uniform(-1, 1, order),
            b=rng.uniform(-1, 1, order),
        )
        nodes = np.arange(m) * TWO_PI / m
        T = interpolate(SampleSet(np.asarray(evaluate(ref, nodes))))
        npt.assert_allclose(T.a0, ref.a0, atol=1e-11)
        npt.assert_allclose(T.a, ref.a, atol=1e-11)
        npt.assert_allclose(T.b, ref.b, atol=1e-11)

    def test_shift_equivariance(self):
        vals = np.array([2.0, -1.0, 0.5, 3.0, 1.0])
        c = 4.25
        T = interpolate(SampleSet(vals))
        Tc = interpolate(SampleSet(vals + c))
        npt.assert_allclose(Tc.a0, T.a0 + 2 * c, atol=1e-12)
        npt.assert_allclose(Tc.a, T.a, atol=1e-12)
        npt.assert_allclose(Tc.b, T.b, atol=1e-12)


class TestEvaluate:
    def test_cosine_at_pi(self):
        T = interpolate(SampleSet(np.cos(np.arange(5) * TWO_PI / 5)))
        npt.assert_allclose(evaluate(T, math.pi), -1.0, atol=1e-12)

    def test_periodicity(self):
        T = interpolate(SampleSet(np.array([1.0, 4.0, 2.0, -1.0, 0.0])))
        npt.assert_allclose(evaluate(T, 0.7), evaluate(T, 0.7 + TWO_PI), atol=1e-12)


class TestNormalizedError:
    def test_zero_for_reproducible(self):
        nodes = np.arange(9) * TWO_PI / 9
        f = lambda t: np.cos(np.asarray(t)) + 0.3 * np.sin(2 * np.asarray(t))
        T = interpolate(SampleSet(np.asarray(f(nodes))))
        rep = normalized_error(f, T, TWO_PI - TWO_PI / 9, grid=501, denom=1.0)
        assert rep.max_abs_error < 1e-12

    def test_scale_invariance(self):
        vals = np.array([1.0, 5.0, 2.0, -2.0, 0.5, 3.0, 4.0, -1.0, 2.5])
        f = lambda t: np.sin(np.asarray(t)) + 2.0
        T = interpolate(SampleSet(vals))
        c = -3.0
        Tc = TrigPolynomial(c * T.a0, c * T.a, c * T.b)
        fc = lambda t: c * f(t)
        denom = 2.0
        r1 = normalized_error(f, T, 5.0, grid=301, denom=denom)
        r2 = normalized_error(fc, Tc, 5.0, grid=301, denom=abs(c) * denom)
        npt.assert_allclose(r2.max_abs_error, r1.max_abs_error, rtol=1e-12)
        npt.assert_allclose(r2.argmax, r1.argmax, atol=1e-12)

    def test_positive_for_linear_ramp(self):
        s = SampleSet(np.arange(1.0, 10.0))
        T = interpolate(s)
        f = lambda t: np.asarray(t) / s.h + 1.0
        rep = normalized_error(f, T, TWO_PI - s.h, grid=2001, denom=8.0)
        assert rep.max_abs_error > 0.0
        assert 0.0 <= rep.argmax <= TWO_PI - s.h

    def test_zero_denominator_distinct_error(self):
        T = interpolate(SampleSet(np.full(5, 1.0)))
        with pytest.raises(ValueError, match="undefined"):
            normalized_error(lambda t: np.ones_like(np.asarray(t)), T, 1.0, grid=101, denom=0.0)

    def test_validation(self):
        T = interpolate(SampleSet(np.arange(5.0)))
        f = lambda t: np.asarray(t)
        with pytest.raises(ValueError):
            normalized_error(f, T, 0.0, grid=101, denom=1.0)
        with pytest.raises(ValueError):
            normalized_error(f, T, 1.0, grid=51, denom=1.0)
        with pytest.raises(ValueError):
            normalized_error(f, T, 1.0, grid=101, denom=-2.0)

    def test_signed_grid_for_plotting(self):
        s = SampleSet(np.arange(1.0, 10.0))
        T = interpolate(s)
        f = lambda t: np.asarray(t) / s.h + 1.0
        ts, eps = epsilon_grid(f, T, TWO_PI - s.h, grid=501, denom=8.0)
        assert np.any(eps < 0) and np.any(eps > 0)
        rep = normalized_error(f, T, TWO_PI - s.h, grid=501, denom=8.0)
        npt.assert_allclose(rep.max_abs_error, np.max(np.abs(eps)), atol=1e-15)

    def test_report_with_shifted_data_same_denominator(self):
        vals = np.array([2.0, -1.0, 0.5, 3.0, 1.0])
        c = 7.0
        f = lambda t: np.cos(np.asarray(t))
        T = interpolate(SampleSet(vals))
        Tc = interpolate(SampleSet(vals + c))
        fc = lambda t: f(t) + c
        r1 = normalized_error(f, T, 4.0, grid=201, denom=3.0)
        r2 = normalized_error(fc, Tc, 4.0, grid=201, denom=3.0)
        npt.assert_allclose(r2.max_abs_error, r1.max_abs_error, atol=1e-12)
