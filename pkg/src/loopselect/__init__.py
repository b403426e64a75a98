"""loopselect: budget-aware selection of inter-robot loop closures.

Given an exchange graph of candidate inter-robot matches, a verification
budget k, and a communication budget on broadcast observations, the planners
in this package pick a feasible (vertex set, edge set) pair maximizing a
normalized monotone (sub)modular objective, with certified approximation
factors and exact small-instance oracles.
"""

from .errors import InstanceTooLargeError, ParseError
from .graph import (
    CommBudget,
    Edge,
    ExchangeGraph,
    IndividualUniform,
    Plan,
    TotalNonuniform,
    TotalUniform,
    Vertex,
    min_vertex_cover_bruteforce,
)
from .objectives import (
    DCritObjective,
    ModularObjective,
    PoseGraph,
    TreeConnObjective,
    dcrit_value,
    g_modular,
    marginal,
    modular_value,
    treeconn_value,
)
from .planners import (
    GreedySelector,
    PlannerConfig,
    PlannerTrace,
    TraceStep,
    e_greedy,
    m_greedy,
    random_baseline,
    s_greedy,
    v_greedy,
)
from .certify import (
    Certificate,
    alpha_apriori,
    alpha_apriori_grid,
    alpha_posteriori,
    alpha_tilde,
    brute_force_opt,
    ilp_opt_modular,
    lp_upper_bound_modular,
)
from .generate import (
    GenSpec,
    GroundTruth,
    demo_rendezvous_graph,
    generate_exchange_graph,
    generate_pose_graph,
    sample_ground_truth,
)
from .cli import SweepSpec, sweep_rows

__version__ = "0.1.0"
