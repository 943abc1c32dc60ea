import math

import numpy as np
import pytest

from hndeploy.distributions import (
    Correlated2DParams,
    DeploymentKind,
    DeploymentModel,
    HalfNormalParams,
    SamplingError,
    correlated_half_normal_pdf,
    half_normal_cdf,
    half_normal_mean,
    half_normal_pdf,
    half_normal_sample,
    half_normal_samples,
    halfplane_pdf,
    sample_deployment,
    sample_positions,
    stein_residual,
)
from hndeploy.geometry import HalfPlane, Rectangle
from hndeploy.numerics import QuadratureSpec, integrate_1d, integrate_2d
from hndeploy.rng import RandomSeed, SplitMix64, uniform_draws

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


class TestHalfNormalPdf:
    def test_at_zero(self):
        assert half_normal_pdf(0.0, HalfNormalParams(1.0)) == pytest.approx(
            0.7978845608, abs=1e-9)

    def test_outside_support(self):
        assert half_normal_pdf(-1.0, HalfNormalParams(1.0)) == 0.0

    def test_at_one(self):
        # cross-checked by numerical differentiation of the CDF
        params = HalfNormalParams(1.0)
        assert half_normal_pdf(1.0, params) == pytest.approx(0.4839414490, abs=1e-9)
        h = 1e-6
        slope = (half_normal_cdf(1.0 + h, params) - half_normal_cdf(1.0 - h, params)) / (2 * h)
        assert half_normal_pdf(1.0, params) == pytest.approx(slope, abs=1e-6)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            half_normal_pdf(math.nan, HalfNormalParams(1.0))

    @pytest.mark.parametrize("sigma", [0.5, 1.0, 5.0, 20.0])
    def test_normalization(self, sigma):
        params = HalfNormalParams(sigma)
        total = integrate_1d(lambda y: half_normal_pdf(y, params),
                             0.0, 12.0 * sigma, QuadratureSpec(1e-8))
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_scale_equivariance(self):
        for sigma in (0.25, 2.0, 7.5):
            for y in (0.0, 0.3, 1.0, 4.0):
                lhs = half_normal_pdf(y, HalfNormalParams(sigma))
                rhs = half_normal_pdf(y / sigma, HalfNormalParams(1.0)) / sigma
                assert lhs == pytest.approx(rhs, rel=1e-14)


class TestHalfNormalCdf:
    def test_at_zero(self):
        assert half_normal_cdf(0.0, HalfNormalParams(1.0)) == 0.0

    def test_at_one(self):
        assert half_normal_cdf(1.0, HalfNormalParams(1.0)) == pytest.approx(
            0.6826894921, abs=1e-9)

    def test_tail_saturation(self):
        assert half_normal_cdf(20.0, HalfNormalParams(2.0)) == pytest.approx(1.0, abs=1e-12)

    def test_negative_argument(self):
        assert half_normal_cdf(-0.5, HalfNormalParams(1.0)) == 0.0

    def test_matches_pdf_quadrature(self):
        params = HalfNormalParams(1.3)
        for y in np.linspace(0.1, 6.0, 12):
            quad = integrate_1d(lambda t: half_normal_pdf(t, params),
                                0.0, float(y), QuadratureSpec(1e-10))
            assert half_normal_cdf(float(y), params) == pytest.approx(quad, abs=1e-7)

    def test_monotone(self):
        params = HalfNormalParams(2.0)
        values = [half_normal_cdf(y, params) for y in np.linspace(0, 15, 100)]
        assert all(b >= a for a, b in zip(values, values[1:]))


class TestHalfNormalMean:
    def test_sigma_one(self):
        assert half_normal_mean(HalfNormalParams(1.0)) == pytest.approx(
            0.7978845608, abs=1e-9)

    def test_sigma_two(self):
        assert half_normal_mean(HalfNormalParams(2.0)) == pytest.approx(
            1.5957691216, abs=1e-9)

    def test_linearity_in_sigma(self):
        for k in (0.5, 3.0, 10.0):
            assert half_normal_mean(HalfNormalParams(k)) == pytest.approx(
                k * half_normal_mean(HalfNormalParams(1.0)), rel=1e-14)


class TestSampling:
    def test_draws_nonnegative(self):
        stream = SplitMix64(3)
        assert all(half_normal_sample(stream, HalfNormalParams(1.0)) >= 0.0
                   for _ in range(100))

    def test_sample_mean(self):
        n = 1_000_000
        z = half_normal_samples(HalfNormalParams(1.0), n, RandomSeed(101))
        assert abs(z.mean() - SQRT_2_OVER_PI) < 0.003  # 5 SE

    def test_vector_matches_stream(self):
        params = HalfNormalParams(2.5)
        stream = SplitMix64(88)
        sequential = [half_normal_sample(stream, params) for _ in range(200)]
        assert half_normal_samples(params, 200, RandomSeed(88)).tolist() == sequential

    def test_kolmogorov_smirnov(self):
        params = HalfNormalParams(1.0)
        n = 10_000
        critical = 1.628 / math.sqrt(n)  # significance 0.01
        for seed in (5, 6):  # one retry to bound the flake rate
            z = np.sort(half_normal_samples(params, n, RandomSeed(seed)))
            cdf = np.array([half_normal_cdf(float(v), params) for v in z])
            stat = max(np.max(np.arange(1, n + 1) / n - cdf),
                       np.max(cdf - np.arange(0, n) / n))
            if stat <= critical:
                break
        assert stat <= critical


class TestCorrelatedPdf:
    def test_mode_value(self):
        params = Correlated2DParams(1.0, 1.0, 0.0)
        assert correlated_half_normal_pdf(0.0, 0.0, params) == pytest.approx(
            2.0 / math.pi, abs=1e-12)

    def test_outside_quadrant(self):
        params = Correlated2DParams(1.0, 2.0, 0.3)
        assert correlated_half_normal_pdf(-0.5, 1.0, params) == 0.0
        assert correlated_half_normal_pdf(1.0, -0.1, params) == 0.0

    def test_reduces_to_product_form_at_zero_rho(self):
        sigma = 1.7
        params = Correlated2DParams(sigma, sigma, 0.0)
        for x in np.linspace(0.0, 5.0, 10):
            for y in np.linspace(0.0, 5.0, 10):
                product = (2.0 / (math.pi * sigma * sigma)
                           * math.exp(-(x * x + y * y) / (2.0 * sigma * sigma)))
                assert correlated_half_normal_pdf(float(x), float(y), params) == \
                    pytest.approx(product, abs=1e-12)

    @pytest.mark.parametrize("s1,s2,rho", [(1.0, 1.0, 0.0), (1.0, 2.0, 0.5), (2.0, 1.0, -0.5)])
    def test_normalization(self, s1, s2, rho):
        params = Correlated2DParams(s1, s2, rho)
        hi = 10.0 * max(s1, s2)
        total = integrate_2d(lambda x, y: correlated_half_normal_pdf(x, y, params),
                             (0.0, hi), (0.0, hi), QuadratureSpec(1e-6))
        assert total == pytest.approx(1.0, abs=1e-4)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            Correlated2DParams(0.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            Correlated2DParams(1.0, 1.0, 1.0)


class TestHalfplanePdf:
    def test_at_origin(self):
        assert halfplane_pdf(0.0, 0.0, HalfNormalParams(1.0)) == pytest.approx(
            1.0 / math.pi, abs=1e-12)

    def test_y_symmetry(self):
        params = HalfNormalParams(1.4)
        assert halfplane_pdf(1.0, 0.5, params) == halfplane_pdf(1.0, -0.5, params)

    def test_outside_halfplane(self):
        assert halfplane_pdf(-1.0, 0.0, HalfNormalParams(1.0)) == 0.0

    def test_normalization(self):
        params = HalfNormalParams(1.0)
        total = integrate_2d(lambda x, y: halfplane_pdf(x, y, params),
                             (0.0, 12.0), (-12.0, 12.0), QuadratureSpec(1e-6))
        assert total == pytest.approx(1.0, abs=1e-4)


class TestDeploymentSampling:
    def test_zero_sensors(self):
        model = DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=HalfPlane(), sigma=1.0)
        assert sample_deployment(model, 0, RandomSeed(1)) == []

    def test_uniform_within_bounds(self):
        region = Rectangle(0.0, 100.0, 0.0, 100.0)
        model = DeploymentModel(kind=DeploymentKind.UNIFORM, region=region)
        for x, y in sample_deployment(model, 500, RandomSeed(2)):
            assert region.contains(x, y)

    def test_half_normal_x_mean(self):
        model = DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=HalfPlane(), sigma=5.0)
        seeds = np.arange(1, dtype=np.uint64) + np.uint64(400)
        xs, ys = sample_positions(model, 100_000, seeds)
        expected = 5.0 * SQRT_2_OVER_PI
        se = 5.0 * math.sqrt(1.0 - 2.0 / math.pi) / math.sqrt(xs.size)
        assert abs(xs.mean() - expected) < 5 * se
        # y is symmetric around the path
        assert abs(ys.mean()) < 5 * 5.0 / math.sqrt(ys.size)

    def test_half_normal_positions_nonnegative_x(self):
        model = DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=HalfPlane(), sigma=2.0)
        xs, _ = sample_positions(model, 1000, np.array([9], dtype=np.uint64))
        assert np.all(xs >= 0.0)

    def test_bounded_region_truncation(self):
        region = Rectangle(0.0, 4.0, -2.0, 2.0)
        model = DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=region, sigma=3.0)
        for x, y in sample_deployment(model, 2000, RandomSeed(77)):
            assert region.contains(x, y)

    def test_quadrant_positive_coordinates(self):
        model = DeploymentModel(kind=DeploymentKind.QUADRANT, region=HalfPlane(), sigma=1.0)
        xs, ys = sample_positions(model, 1000, np.array([3], dtype=np.uint64))
        assert np.all(xs >= 0.0)
        assert np.all(ys >= 0.0)

    def test_strip_uniform_y(self):
        region = Rectangle(0.0, 50.0, 0.0, 10.0)
        model = DeploymentModel(kind=DeploymentKind.STRIP, region=region, sigma=4.0)
        xs, ys = sample_positions(model, 50_000, np.array([15], dtype=np.uint64))
        assert np.all((ys >= 0.0) & (ys <= 10.0))
        assert abs(ys.mean() - 5.0) < 5 * 10.0 / math.sqrt(12 * ys.size)

    def test_rejection_bound_error(self):
        # sigma vastly larger than the region: almost every draw is rejected
        region = Rectangle(0.0, 1e-4, -1e-4, 1e-4)
        model = DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=region, sigma=100.0)
        with pytest.raises(SamplingError):
            sample_deployment(model, 50, RandomSeed(5))

    def test_model_validation(self):
        with pytest.raises(ValueError):
            DeploymentModel(kind=DeploymentKind.UNIFORM, region=HalfPlane())
        with pytest.raises(ValueError):
            DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=HalfPlane())
        with pytest.raises(ValueError):
            sample_deployment(
                DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=HalfPlane(), sigma=1.0),
                -1, RandomSeed(0))

    def test_deterministic_replay(self):
        model = DeploymentModel(kind=DeploymentKind.HALF_NORMAL, region=HalfPlane(), sigma=1.0)
        assert sample_deployment(model, 20, RandomSeed(42)) == \
            sample_deployment(model, 20, RandomSeed(42))


class TestSteinResidual:
    def test_constant_function_cancels(self):
        # population residual is identically -E[Z] + sqrt(2/pi) = 0
        n = 100_000
        z = half_normal_samples(HalfNormalParams(1.0), n, RandomSeed(1))
        residual = stein_residual("one", z, HalfNormalParams(1.0))
        se = float(np.std(z, ddof=1)) / math.sqrt(n)
        assert abs(residual) <= 5 * se

    def test_identity_function_null(self):
        n = 1_000_000
        params = HalfNormalParams(1.0)
        z = half_normal_samples(params, n, RandomSeed(2024))
        residual = stein_residual("x", z, params)
        se = float(np.std(1.0 - z * z, ddof=1)) / math.sqrt(n)
        assert abs(residual) <= 5 * se

    def test_sigma_rescaling(self):
        n = 200_000
        params = HalfNormalParams(3.0)
        z = half_normal_samples(params, n, RandomSeed(5))
        residual = stein_residual("x", z, params)
        se = float(np.std(1.0 - (z / 3.0) ** 2, ddof=1)) / math.sqrt(n)
        assert abs(residual) <= 5 * se

    def test_uniform_negative_control(self):
        n = 1_000_000
        u = uniform_draws(np.uint64(9), np.arange(n, dtype=np.uint64))
        residual = stein_residual("x", u, HalfNormalParams(1.0))
        se = float(np.std(1.0 - u * u, ddof=1)) / math.sqrt(n)
        # converges to 1 - 1/3 = 2/3, far beyond 5 SE from zero
        assert residual == pytest.approx(2.0 / 3.0, abs=0.01)
        assert abs(residual) > 5 * se

    def test_rejects_empty_and_negative(self):
        params = HalfNormalParams(1.0)
        with pytest.raises(ValueError):
            stein_residual("x", [], params)
        with pytest.raises(ValueError):
            stein_residual("x", [-1.0, 2.0], params)
        with pytest.raises(ValueError):
            stein_residual("cube", [1.0], params)


def test_half_normal_params_validation():
    with pytest.raises(ValueError):
        HalfNormalParams(0.0)
    with pytest.raises(ValueError):
        HalfNormalParams(-2.0)
    with pytest.raises(ValueError):
        HalfNormalParams(math.inf)
