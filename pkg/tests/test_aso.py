import math
import random

import numpy as np
import pytest

from targetaug.evaluation import AsoConfig, aso_epsilon, aso_min_epsilon


def naive_epsilon(a, b, grid_points):
    """Straight-loop reference: quantiles by definition, trapezoid-free sum."""
    a_sorted, b_sorted = sorted(a), sorted(b)

    def quantile(sample, t):
        k = min(max(math.ceil(t * len(sample)), 1), len(sample))
        return sample[k - 1]

    num = 0.0
    den = 0.0
    for i in range(grid_points):
        t = (i + 0.5) / grid_points
        d = quantile(b_sorted, t) - quantile(a_sorted, t)
        den += d * d
        if d > 0:
            num += d * d
    if den == 0.0:
        return 1.0
    return num / den


def random_pair(rng, max_n=60):
    na, nb = rng.randint(2, max_n), rng.randint(2, max_n)
    a = [rng.gauss(0, 1) for _ in range(na)]
    b = [rng.gauss(rng.uniform(-1, 1), rng.uniform(0.5, 2)) for _ in range(nb)]
    return a, b


class TestEpsilonPointEstimate:
    def test_clear_dominance_is_zero(self):
        assert aso_epsilon([10, 11, 12], [0, 1, 2]) == 0.0

    def test_reverse_is_one(self):
        assert aso_epsilon([0, 1, 2], [10, 11, 12]) == 1.0

    def test_complement_identity(self):
        rng = random.Random(42)
        for _ in range(200):
            a, b = random_pair(rng)
            if sorted(a) == sorted(b):
                continue
            total = aso_epsilon(a, b) + aso_epsilon(b, a)
            assert abs(total - 1.0) < 1e-9

    def test_matches_naive_oracle(self):
        rng = random.Random(7)
        for _ in range(100):
            a, b = random_pair(rng)
            got = aso_epsilon(a, b, grid_points=500)
            expected = naive_epsilon(a, b, 500)
            assert got == pytest.approx(expected, abs=1e-12)

    def test_identical_samples_degenerate_to_one(self):
        sample = [1.0, 2.0, 3.0, 4.0]
        assert aso_epsilon(sample, sample) == 1.0

    def test_in_unit_interval(self):
        rng = random.Random(3)
        for _ in range(100):
            a, b = random_pair(rng)
            assert 0.0 <= aso_epsilon(a, b) <= 1.0

    def test_affine_invariance(self):
        rng = random.Random(11)
        for _ in range(50):
            a, b = random_pair(rng)
            if sorted(a) == sorted(b):
                continue
            base = aso_epsilon(a, b)
            shift = rng.uniform(-5, 5)
            scale = rng.uniform(0.1, 10)
            shifted = aso_epsilon([x + shift for x in a], [x + shift for x in b])
            scaled = aso_epsilon([x * scale for x in a], [x * scale for x in b])
            assert shifted == pytest.approx(base, abs=1e-9)
            assert scaled == pytest.approx(base, abs=1e-9)

    def test_too_small_samples_rejected(self):
        with pytest.raises(ValueError):
            aso_epsilon([1.0], [1.0, 2.0])


class TestMinEpsilon:
    config = AsoConfig(bootstrap_iters=200, seed=0)

    def test_never_exceeds_point_estimate(self):
        rng = random.Random(13)
        for _ in range(30):
            a, b = random_pair(rng)
            if sorted(a) == sorted(b):
                continue
            result = aso_min_epsilon(a, b, self.config)
            assert result.epsilon_min <= result.epsilon + 1e-12
            assert 0.0 <= result.epsilon_min <= 1.0

    def test_identical_samples_no_dominance(self):
        sample = [1.0, 2.0, 3.0]
        result = aso_min_epsilon(sample, sample, self.config)
        assert result.degenerate
        assert result.epsilon_min == 1.0
        assert not result.significant
        assert not result.highly_significant

    def test_shifted_normals_highly_significant(self):
        # B ~ N(mu+1, 1) should dominate A ~ N(mu, 1): eps(B, A) near zero
        rng = np.random.default_rng(5)
        hits = 0
        trials = 20
        for trial in range(trials):
            a = rng.normal(0.0, 1.0, size=1000)
            b = rng.normal(1.0, 1.0, size=1000)
            result = aso_min_epsilon(b, a, AsoConfig(bootstrap_iters=200, seed=trial))
            if result.epsilon_min < 0.2:
                hits += 1
        assert hits >= int(0.95 * trials)

    def test_deterministic_given_seed(self):
        rng = random.Random(21)
        a, b = random_pair(rng)
        r1 = aso_min_epsilon(a, b, AsoConfig(bootstrap_iters=150, seed=4))
        r2 = aso_min_epsilon(a, b, AsoConfig(bootstrap_iters=150, seed=4))
        assert r1 == r2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            AsoConfig(bootstrap_iters=5)
        with pytest.raises(ValueError):
            AsoConfig(grid_points=10)

    def test_result_serializes(self):
        result = aso_min_epsilon([1, 2, 3], [4, 5, 6], self.config)
        d = result.to_dict()
        assert set(d) == {
            "epsilon",
            "epsilon_min",
            "sigma_boot",
            "degenerate",
            "highly_significant",
            "significant",
        }
