"""Stable-set search in cycles.

Combinatorics of stable (cycle-independent) k-subsets of [n], symbolic
handles and exact oracles for the disjointness graphs they induce,
black-box coloring oracles, monochromatic-edge solvers, the constrained
independent-set pipeline with its derandomized solver, and the instance
reductions tying the problems together.
"""

from .coloring import ColoringOracle, load_coloring, make_rule_coloring, make_table_coloring
from .core import (
    ElementSet,
    binomial,
    count_stable,
    count_stable_containing,
    enumerate_stable,
    is_stable,
)
from .errors import (
    ContractViolation,
    InsufficientSlackError,
    NoSolutionError,
    UntrustedSubsolverError,
    VertexCapExceeded,
)
from .graphs import (
    Family,
    GraphFamilySpec,
    MaterializedGraph,
    adjacent,
    alpha_u_formula,
    chi_bounds,
    chromatic_number_exact,
    hilton_milner_bound,
    hilton_milner_family,
    independence_number_exact,
    is_vertex,
    materialize,
    vertex_count,
    vertices,
)
from .reductions import (
    CtInstance,
    FiscInstance,
    ct_to_uncovered,
    fisc_to_uncovered,
    uncovered_to_schrijver,
    verify_ct_solution,
    verify_fisc_solution,
)
from .schrijver import (
    IntervalPlan,
    MonochromaticEdge,
    brute_force_mono_edge,
    build_interval_plan,
    extend_coloring_to_kneser,
    interval_solver,
    lift_4k_solver,
    verify_mono_edge,
)
from .uncovered import (
    AlterationTrace,
    PartialChoice,
    StarCounts,
    UncoveredInstance,
    alteration,
    brute_force_solve,
    derandomized_solve,
    f_value,
    four_split,
    phi,
    randomized_solve,
    relabel_solution,
    star_counts,
    validate_and_normalize,
    verify_uncovered_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
