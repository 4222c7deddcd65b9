"""Linear-time front-door adjustment sets in causal DAGs with latents.

Find a maximum or inclusion-minimal front-door adjustment set, verify a
candidate, enumerate all of them with polynomial delay, and evaluate the
resulting adjustment formula on exact discrete models. A brute-force
oracle and a benchmark harness back the test suite and the CLI.
"""

from .bench import (BenchInstance, BenchRecord, ExperimentConfig,
                    bd_adjustment_exists, fd_zero_identifiable, gen_er_dag,
                    instance_seed, run_benchmark, write_csv)
from .enumeration import EnumerationCursor, enumerate_fd
from .errors import (EstimatorError, FrontdoorError, GraphError,
                     InvalidQueryError, OracleLimitError)
from .estimator import (DiscreteModel, JointTable, do_oracle, fd_estimate,
                        joint_distribution, model_from_json, model_to_json)
from .find import (FdQuery, FdResult, NONE_EXISTS, compute_zi, compute_zii,
                   compute_zii_tabled, find_fd, validate_query, verify_fd)
from .graph import (Dag, EdgeMask, NO_MASK, RawParse, ancestors, descendants,
                    expand_bidirected, parse_graph, serialize)
from .minimal import (MinimalDecomposition, compute_z_an, compute_z_xy,
                      compute_z_zy, find_minimal_fd)
from .oracle import dsep_bruteforce, fd_sets_bruteforce, masked_graph
from .search import (Rule, RuleTable, SearchStats, bayes_ball,
                     bayes_ball_rules, directed_reachable, generic_search)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Dag", "EdgeMask", "NO_MASK", "RawParse", "parse_graph", "serialize",
    "expand_bidirected", "ancestors", "descendants",
    "FrontdoorError", "GraphError", "InvalidQueryError", "EstimatorError",
    "OracleLimitError",
    "Rule", "RuleTable", "SearchStats", "generic_search", "bayes_ball",
    "bayes_ball_rules", "directed_reachable",
    "FdQuery", "FdResult", "NONE_EXISTS", "validate_query", "compute_zi",
    "compute_zii", "compute_zii_tabled", "find_fd", "verify_fd",
    "MinimalDecomposition", "compute_z_an", "compute_z_xy", "compute_z_zy",
    "find_minimal_fd",
    "EnumerationCursor", "enumerate_fd",
    "DiscreteModel", "JointTable", "joint_distribution", "fd_estimate",
    "do_oracle", "model_from_json", "model_to_json",
    "dsep_bruteforce", "fd_sets_bruteforce", "masked_graph",
    "ExperimentConfig", "BenchRecord", "BenchInstance", "gen_er_dag",
    "fd_zero_identifiable", "bd_adjustment_exists", "instance_seed",
    "run_benchmark", "write_csv",
]
