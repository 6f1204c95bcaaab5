"""
The `renewbound.policy` package applies the free boundary: it classifies price-capacity states,
simulates installation strategies, estimates their payoff by Monte Carlo, evaluates the closed-form value
without price impact, audits realized trajectories, and aggregates producers under a social planner.
"""

from ._region import Region, Classification, classify, installing_mask
from ._rules import InstallationRule, NeverInstall, InstallAtStart, BoundaryRule, FixedSchedule
from ._simulate import (
    StrategyPath,
    PriceStepper,
    SimulationException,
    simulate_optimal,
    simulate_strategy,
    simulation_grid,
    SCHEMES,
)
from ._payoff import PayoffEstimate, payoff_mc, path_payoffs, tail_bound, value_beta0
from ._compare import ComparisonReport, compare_realized, write_realized_csv, write_strategy_path
from ._social import SocialPlannerProfile, aggregate_social, pareto_dominates

__all__ = [
    "Region",
    "Classification",
    "classify",
    "installing_mask",
    "InstallationRule",
    "NeverInstall",
    "InstallAtStart",
    "BoundaryRule",
    "FixedSchedule",
    "StrategyPath",
    "PriceStepper",
    "SimulationException",
    "simulate_optimal",
    "simulate_strategy",
    "simulation_grid",
    "SCHEMES",
    "PayoffEstimate",
    "payoff_mc",
    "path_payoffs",
    "tail_bound",
    "value_beta0",
    "ComparisonReport",
    "compare_realized",
    "write_realized_csv",
    "write_strategy_path",
    "SocialPlannerProfile",
    "aggregate_social",
    "pareto_dominates",
]
