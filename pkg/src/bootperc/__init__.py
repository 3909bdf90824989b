"""Bootstrap percolation: closures, minimum percolating sets, extremal graphs."""

__version__ = "0.1.0"

from .constructions import (
    ConstructionError,
    ConstructionSpec,
    clique_pair_bipartite,
    double_clique_matching,
    grid,
    odd_deletion,
    random_min_degree_graph,
    sidon_bipartite,
)
from .estimators import BootstrapPercolation, MinimumPercolatingSet
from .graph import (
    Graph,
    GraphFormatError,
    common_neighbourhood,
    cross_edge_count,
    degree_in,
    induced_is_clique,
    min_degree,
    parse_edge_list,
    serialize_edge_list,
    sigma2,
)
from .percolation import ClosureTrace, closure, is_closed, percolates, step
from .solver import (
    BudgetExhausted,
    SolveResult,
    exists_percolating_of_size,
    find_complete_bipartite,
    greedy_upper_bound,
    min_percolating_set,
    reichman_bound,
)
from .verifier import (
    GapIntervals,
    PreconditionError,
    Report,
    allowed_closed_sizes,
    check_all_r_sets_percolate,
    check_big_sets_percolate,
    check_closed_set_structure,
    check_closure_gap,
    gap_polynomial,
    verify_construction_extremal,
    verify_main_theorem_sweep,
)
