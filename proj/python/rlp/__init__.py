"""Robust regenerator location: instances, solvers and benchmarks.

Exact quantities are returned as :class:`fractions.Fraction`.
"""

from ._core import (
    GameInfeasible,
    InfeasibleInstance,
    Instance,
    InvalidArgument,
    ParseError,
    RlpError,
    TimeLimitExceeded,
    ValidationError,
    generate_instance,
    hider_update,
    load_instance,
    load_instance_file,
    nominal_cost,
    performance_profile,
    solve,
    worst_case_cost,
)

METHODS = ("dwc", "rsb", "rdb", "ccg", "bdc", "iro", "hsl")

__all__ = [
    "GameInfeasible",
    "InfeasibleInstance",
    "Instance",
    "InvalidArgument",
    "METHODS",
    "ParseError",
    "RlpError",
    "TimeLimitExceeded",
    "ValidationError",
    "generate_instance",
    "hider_update",
    "load_instance",
    "load_instance_file",
    "nominal_cost",
    "performance_profile",
    "solve",
    "worst_case_cost",
]
