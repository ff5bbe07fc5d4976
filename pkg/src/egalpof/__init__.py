"""Exact egalitarian-welfare toolkit for fair division of indivisible goods.

Instances carry exact rational utilities normalized per agent; solvers
enumerate (with optional pruning) to find welfare optima under fairness
filters; constructive routines round arbitrary allocations into balanced or
round-robin ones with proven egalitarian floors.
"""

from .construct import gen_thm1, gen_thm4, gen_thm5, gen_thm7, pad_instance, thm5_x_feasible
from .errors import (
    BudgetExceeded,
    CrossCheckError,
    EgalpofError,
    EmptyBundle,
    GoodOutOfRange,
    InfeasibleParams,
    NegativeUtility,
    NotACycle,
    ParamOutOfRange,
    ParseError,
    PreconditionViolated,
    RowSumNotOne,
    TooFewAgents,
    ZeroRow,
)
from .model import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_RR_BRANCH_CAP,
    INFINITY,
    Allocation,
    ExtendedValue,
    Instance,
    Rational,
    agent_utilities,
    bundle_utility,
    egalitarian_welfare,
    extended_ratio,
    nash_welfare,
    normalize_instance,
    utilitarian_welfare,
    validate_instance,
)
from .properties import (
    DominationVerdict,
    EnvyGraph,
    dominates,
    envy_graph,
    is_balanced,
    is_ef1,
    is_pareto_optimal,
    pareto_optimal_allocations,
    rotate_cycle,
)
from .roundrobin import (
    RRSchedule,
    RRTrace,
    balanced_from_mew,
    default_schedule,
    dominating_rr_one_good,
    enumerate_rr_allocations,
    is_rr,
    rr_from_mew,
    run_round_robin,
)
from .serialize import parse_instance_file, write_instance_file
from .solve import (
    Objective,
    PropertyFilter,
    SolveResult,
    enumerate_allocations,
    max_welfare,
    price_of_fairness,
)
from .verify import VerifyReport, random_instance, run_suite

__version__ = "0.1.0"
