import math

import numpy as np
import pytest
from scipy import integrate

from stable_cauchy.errors import DomainError
from stable_cauchy.noise import NoisePath, empirical_char_fn, generate_subordinated_paths
from stable_cauchy.rng import RngState
from stable_cauchy.spectral import (
    FINITE,
    INFINITE,
    SemigroupSpec,
    existence_integral,
    hs_norm_sq,
    marginal_scale,
    sandwich_check,
    scheme_scale,
    simulate_mild_solution,
)
from stable_cauchy.special import c_ratio


class TestSemigroupSpec:
    def test_power_law_eigenvalues(self):
        spec = SemigroupSpec.power_law(2.0, 0.5, truncation=10)
        assert spec.eigenvalues() == pytest.approx(2.0 * np.arange(1, 11) ** 0.5)

    def test_coefficient_band(self):
        spec = SemigroupSpec.power_law(1.0, 1.0, truncation=1000, c_hi=3.0)
        lam = spec.eigenvalues()
        k = np.arange(1, 1001)
        assert np.all((lam >= k) & (lam <= 3 * k))
        assert np.array_equal(lam, spec.eigenvalues())

    @pytest.mark.parametrize("kw", [dict(c=0.0), dict(exponent=-1.0), dict(truncation=0), dict(c=2.0, c_hi=1.0)])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            SemigroupSpec.power_law(**kw)

    def test_negative_explicit(self):
        with pytest.raises(DomainError):
            SemigroupSpec.explicit([1.0, -1.0])


class TestHSNorm:
    def test_single_zero_eigenvalue(self):
        v = hs_norm_sq(SemigroupSpec.explicit([0.0]), 3.7)
        assert v.lower == v.upper == 1.0

    def test_geometric_closed_form(self, regression):
        v = hs_norm_sq(SemigroupSpec.power_law(1.0, 1.0), 0.5)
        exact = math.exp(-1) / (1 - math.exp(-1))
        assert regression["hs_geometric_s0.5"] == pytest.approx(exact, rel=1e-14)
        assert v.lower * (1 - 1e-15) <= exact <= v.upper * (1 + 1e-15)
        assert v.value == pytest.approx(exact, rel=1e-12)

    @pytest.mark.parametrize("exponent", [0.4, 2 / 3, 1.0, 2.0])
    @pytest.mark.parametrize("s", [1e-4, 1e-2, 0.3])
    def test_short_interval_encloses_long_one(self, exponent, s):
        short = hs_norm_sq(SemigroupSpec.power_law(1.0, exponent, truncation=50), s)
        long = hs_norm_sq(SemigroupSpec.power_law(1.0, exponent, truncation=2_000_000), s)
        assert short.lower <= long.lower * (1 + 1e-12)
        assert long.upper <= short.upper * (1 + 1e-12)
        assert long.lower <= long.upper

    def test_interval_encloses_brute_force_sum(self):
        k = np.arange(1, 2_000_001, dtype=float)
        brute = np.exp(-2 * 0.3 * k**0.5).sum()
        v = hs_norm_sq(SemigroupSpec.power_law(1.0, 0.5, truncation=100), 0.3)
        assert v.lower <= brute <= v.upper

    def test_interval_width_shrinks_with_truncation(self):
        w = [hs_norm_sq(SemigroupSpec.power_law(1.0, 1.0, truncation=K), 0.01).width for K in (10, 100, 1000)]
        assert w[0] > w[1] > w[2] >= 0

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_integral_test_upper_bound(self, d, a):
        spec = SemigroupSpec.heat(d, c=a, truncation=2000)
        for s in np.geomspace(1e-6, 1.0, 13):
            bound = (d / 2) * math.gamma(d / 2) / (2 * a * s) ** (d / 2)
            assert hs_norm_sq(spec, s).upper <= bound * (1 + 1e-10)

    @pytest.mark.parametrize("d", [1, 2])
    def test_two_over_d_bound_low_dimension(self, d):
        # 2 Gamma(d/2) / (d (2a)^(d/2) s^(d/2)) is a valid bound only when d <= 2
        spec = SemigroupSpec.heat(d, truncation=2000)
        for s in np.geomspace(1e-6, 1.0, 13):
            assert hs_norm_sq(spec, s).upper <= 2 * math.gamma(d / 2) / (d * (2 * s) ** (d / 2))

    def test_two_over_d_bound_fails_in_three_dimensions(self):
        s = 1e-6
        v = hs_norm_sq(SemigroupSpec.heat(3), s)
        assert v.lower > 2 * math.gamma(1.5) / (3 * (2 * s) ** 1.5)

    def test_vector_input(self):
        v = hs_norm_sq(SemigroupSpec.power_law(), np.array([0.1, 1.0]))
        assert v.lower.shape == (2,)

    @pytest.mark.parametrize("s", [0.0, -1.0])
    def test_domain(self, s):
        with pytest.raises(DomainError):
            hs_norm_sq(SemigroupSpec.power_law(), s)


class TestExistence:
    def test_heat_2d_finite(self):
        r = existence_integral(SemigroupSpec.heat(2), 1.5, 1.0)
        assert r.verdict == FINITE
        assert r.integral_value > 0

    def test_heat_3d_infinite(self):
        r = existence_integral(SemigroupSpec.heat(3), 1.5, 1.0)
        assert r.verdict == INFINITE
        assert r.singularity_exponent == pytest.approx(1.5, abs=0.05)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.9])
    def test_finite_rank(self, alpha):
        r = existence_integral(SemigroupSpec.explicit([1, 2, 3]), alpha, 2.0)
        assert r.verdict == FINITE
        assert 0 <= r.integral_value <= 3 ** (alpha / 2) * 2.0

    def test_finite_rank_value(self):
        spec = SemigroupSpec.explicit([1, 2, 3])
        r = existence_integral(spec, 1.0, 1.0, s_min=1e-6)
        f = lambda s: math.sqrt(sum(math.exp(-2 * k * s) for k in (1, 2, 3)))
        assert r.integral_value == pytest.approx(integrate.quad(f, 1e-6, 1.0)[0], rel=1e-6)

    def test_bracket_contains_value(self):
        r = existence_integral(SemigroupSpec.heat(1), 1.0, 1.0)
        assert r.integral_lower <= r.integral_value <= r.integral_upper

    def test_domain(self):
        with pytest.raises(DomainError):
            existence_integral(SemigroupSpec.heat(1), 1.0, 1.0, s_min=1.0)
        with pytest.raises(DomainError):
            existence_integral(SemigroupSpec.heat(1), 2.0, 1.0)

    def test_report_serialisable(self):
        d = existence_integral(SemigroupSpec.heat(2), 1.0, 1.0).to_dict()
        assert d["verdict"] == FINITE and "singularity_exponent" in d


class TestSolver:
    def test_zero_noise_decay(self):
        grid = np.linspace(0, 1, 101)
        noise = NoisePath("subordinated", grid, np.zeros((100, 3)), 1.5)
        traj = simulate_mild_solution(SemigroupSpec.explicit([1.0, 1.0, 1.0]), noise, np.ones(3))
        assert traj.final == pytest.approx(np.full(3, math.exp(-1)), rel=1e-13)
        assert np.array_equal(traj.coords[0], np.ones(3))

    def test_no_damping_reproduces_noise(self):
        grid = np.linspace(0, 1, 51)
        noise = generate_subordinated_paths(2, 1.3, grid, RngState(30), 1)
        single = NoisePath(noise.representation, grid, noise.increments[0], 1.3)
        traj = simulate_mild_solution(SemigroupSpec.explicit([0.0, 0.0]), single)
        assert np.allclose(traj.coords, single.values(), rtol=1e-12, atol=1e-12)

    def test_semigroup_property(self):
        lam = [0.5, 2.0, 7.0]
        spec = SemigroupSpec.explicit(lam)
        x0 = np.array([1.0, -2.0, 0.5])
        s, t = 0.3, 0.45

        def evolve(x, horizon, steps):
            grid = np.linspace(0, horizon, steps + 1)
            return simulate_mild_solution(spec, NoisePath("subordinated", grid, np.zeros((steps, 3)), 1.0), x).final

        two = evolve(evolve(x0, s, 30), t, 45)
        one = evolve(x0, s + t, 75)
        assert np.allclose(two, one, rtol=1e-14, atol=0)
        assert np.allclose(one, x0 * np.exp(-np.array(lam) * (s + t)), rtol=1e-13)

    def test_dimension_mismatch(self):
        grid = np.linspace(0, 1, 3)
        noise = NoisePath("subordinated", grid, np.zeros((2, 3)), 1.0)
        with pytest.raises(DomainError):
            simulate_mild_solution(SemigroupSpec.explicit([1.0, 2.0]), noise)
        with pytest.raises(DomainError):
            simulate_mild_solution(SemigroupSpec.explicit([1.0, 2.0, 3.0]), noise, np.zeros(2))

    def test_batch_matches_single(self):
        grid = np.linspace(0, 1, 21)
        noise = generate_subordinated_paths(2, 1.5, grid, RngState(31), 3)
        spec = SemigroupSpec.power_law(1.0, 1.0, truncation=5)
        batch = simulate_mild_solution(spec, noise)
        for p in range(3):
            single = simulate_mild_solution(spec, NoisePath("subordinated", grid, noise.increments[p], 1.5))
            assert np.array_equal(batch.coords[p], single.coords)

    def test_marginal_law_fine_grid(self):
        alpha, dt = 1.2, 1e-3
        grid = np.linspace(0, 1, int(1 / dt) + 1)
        spec = SemigroupSpec.explicit([1.0])
        finals = np.concatenate([
            simulate_mild_solution(spec, generate_subordinated_paths(1, alpha, grid, RngState(32).substream(b), 2000)).final[:, 0]
            for b in range(5)
        ])
        sigma = marginal_scale(1.0, alpha, 1.0)
        for beta in (0.5, 1.0, 2.0):
            ecf = empirical_char_fn(finals, beta)
            target = math.exp(-((sigma * beta) ** alpha))
            allowance = abs(math.exp(-((scheme_scale(1.0, alpha, grid) * beta) ** alpha)) - target)
            assert abs(ecf.value.real - target) <= 3 * ecf.se_real + allowance


class TestMarginalScale:
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.9])
    def test_no_damping(self, alpha):
        assert marginal_scale(0.0, alpha, 1.0) == 1.0

    def test_long_time_limit(self):
        assert marginal_scale(1.0, 1.0, 200.0) == pytest.approx(1.0, rel=1e-14)

    def test_frozen(self, regression):
        v = marginal_scale(2.0, 1.5, 1.0)
        assert v == pytest.approx(regression["marginal_scale_2_1.5_1"], rel=1e-13)

    def test_against_quadrature(self):
        for lam, alpha, t in [(0.3, 0.7, 2.0), (5.0, 1.9, 0.5)]:
            q = integrate.quad(lambda s: math.exp(-alpha * lam * s), 0, t)[0]
            assert marginal_scale(lam, alpha, t) == pytest.approx(q ** (1 / alpha), rel=1e-12)

    def test_scheme_converges(self):
        gaps = [abs(scheme_scale(1.0, 1.2, np.linspace(0, 1, n + 1)) - marginal_scale(1.0, 1.2, 1.0))
                for n in (100, 1000, 10000)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[1] / gaps[2] == pytest.approx(10, rel=0.05)

    def test_domain(self):
        with pytest.raises(DomainError):
            marginal_scale(-1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            marginal_scale(1.0, 1.0, 0.0)


class TestSandwich:
    @pytest.mark.parametrize("alpha", [0.8, 1.5])
    def test_single_coordinate_collapses(self, alpha):
        r = sandwich_check(SemigroupSpec.power_law(), alpha, 1.0, 3, 3, mc_points=200, rng=RngState(40))
        assert r.c_ratio == 1.0
        assert r.lower == pytest.approx(r.upper, rel=1e-15)
        assert r.estimate == pytest.approx(r.lower, rel=1e-8)

    def test_ordering_block_of_eight(self):
        r = sandwich_check(SemigroupSpec.power_law(truncation=100), 1.0, 1.0, 1, 8, mc_points=20_000, rng=RngState(41))
        assert r.ordered()
        assert r.lower < r.upper

    def test_bad_block(self):
        with pytest.raises(DomainError):
            sandwich_check(SemigroupSpec.power_law(), 1.0, 1.0, 5, 4)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    def test_bound_ratio_limit(self, alpha):
        # the upper/lower ratio tends to Gamma(1/2) / (Gamma((1+alpha)/2) 2^(alpha/2)), which exceeds 1
        limit = math.sqrt(math.pi) / (math.gamma((1 + alpha) / 2) * 2 ** (alpha / 2))
        assert c_ratio(100_000, alpha) == pytest.approx(limit, rel=1e-4)
        assert limit > 1.0
