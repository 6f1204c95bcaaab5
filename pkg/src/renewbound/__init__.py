"""
Renewbound calibrates an impacted Ornstein-Uhlenbeck model of zonal electricity prices
and computes the optimal installation boundary of a renewable energy producer.
"""

from ._base import InputError, SolverException

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "SolverException",
]
