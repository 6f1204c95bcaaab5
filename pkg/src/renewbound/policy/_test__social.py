import numpy as np
import pytest

from renewbound.estimate import OuParams
from renewbound.oufn import EconParams

from ._payoff import payoff_mc
from ._rules import FixedSchedule
from ._social import SocialPlannerProfile, aggregate_social, pareto_dominates

ECON = EconParams(rho=0.1, cost_c=290_000.0, conv_a=1400.0, theta=6500.0)
NORTH = OuParams.single(kappa=6.7, zeta=124.7, sigma=47.7, beta=0.0091)
RUN = dict(x0=100.0, horizon=5.0, n_paths=40, seed=13)


class TestSocialPlannerProfile:
    def test_aggregates(self):
        profile = SocialPlannerProfile([100.0, 200.0], [[0.0, 50.0], [10.0, 0.0]], theta=1000.0)

        assert profile.gamma == 300.0
        assert profile.aggregate_nu.tolist() == [10.0, 60.0]
        assert profile.levels(3).tolist() == [[100.0, 150.0, 150.0], [210.0, 210.0, 210.0]]

    def test_cap_breach(self):
        with pytest.raises(ValueError, match="cap"):
            SocialPlannerProfile([600.0, 300.0], [[0.0, 50.0], [60.0, 0.0]], theta=1000.0)

    @pytest.mark.parametrize(
        "capacities, strategies",
        [
            ([], []),
            ([1.0], [[1.0], [1.0]]),
            ([1.0, 1.0], [[1.0], [1.0, 2.0]]),
            ([1.0], [[-1.0]]),
            ([-1.0], [[1.0]]),
        ],
    )
    def test_invalid(self, capacities, strategies):
        with pytest.raises(ValueError):
            SocialPlannerProfile(capacities, strategies, theta=1000.0)


class TestAggregateSocial:
    def test_single_producer_reduces_to_one_company(self):
        increments = [0.0, 100.0, 0.0, 250.0]
        profile = SocialPlannerProfile([500.0], [increments], theta=ECON.theta)

        aggregate, (single,) = aggregate_social(profile, NORTH, ECON, **RUN)
        alone = payoff_mc(NORTH, ECON, FixedSchedule.from_increments(500.0, increments), y0=500.0, **RUN)

        assert aggregate.mean == pytest.approx(alone.mean, rel=1e-12)
        assert single.mean == pytest.approx(alone.mean, rel=1e-12)

    def test_planner_payoff_is_the_sum(self):
        profile = SocialPlannerProfile(
            [500.0, 1000.0, 250.0],
            [[0.0, 100.0], [50.0, 0.0], [0.0, 0.0]],
            theta=ECON.theta,
        )

        aggregate, producers = aggregate_social(profile, NORTH, ECON, **RUN)

        assert len(producers) == 3
        assert aggregate.mean == pytest.approx(sum(p.mean for p in producers), rel=1e-8)

    def test_impact_hurts_the_other_producer(self):
        small = SocialPlannerProfile([500.0, 1000.0], [[0.0], [0.0]], theta=ECON.theta)
        large = SocialPlannerProfile([1000.0, 1000.0], [[0.0], [0.0]], theta=ECON.theta)

        _, (_, other_small) = aggregate_social(small, NORTH, ECON, **RUN)
        _, (_, other_large) = aggregate_social(large, NORTH, ECON, **RUN)

        assert other_large.mean < other_small.mean

    def test_strategies_longer_than_the_grid(self):
        profile = SocialPlannerProfile([0.0], [np.zeros(1000)], theta=ECON.theta)

        with pytest.raises(ValueError):
            aggregate_social(profile, NORTH, ECON, **RUN)

    def test_cap_must_match(self):
        profile = SocialPlannerProfile([0.0], [[0.0]], theta=1000.0)

        with pytest.raises(ValueError):
            aggregate_social(profile, NORTH, ECON, **RUN)


class TestParetoDominates:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            ([2.0, 2.0], [1.0, 2.0], True),
            ([2.0, 1.0], [1.0, 2.0], False),
            ([1.0, 2.0], [1.0, 2.0], False),
        ],
    )
    def test_examples(self, a, b, expected: bool):
        assert pareto_dominates(a, b) == expected

    def test_irreflexive_and_antisymmetric(self):
        rng = np.random.default_rng(17)
        candidates = rng.integers(0, 3, size=(30, 3)).astype(float)

        for a in candidates:
            assert not pareto_dominates(a, a)
            for b in candidates:
                assert not (pareto_dominates(a, b) and pareto_dominates(b, a))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            pareto_dominates([1.0], [1.0, 2.0])
