"""Inclusion-minimal front-door sets via a three-stage pruning of Z(ii).

Starting from the maximum FD set Z(ii), three linear searches keep only
the vertices that are actually needed:

* z_an: members of Z(ii) with a directed path to y avoiding x, y and the
  other Z(ii) members; only these can do any interception work.
* z_xy: members of z_an that must be kept because a directed proper path
  from x reaches them before any other mandatory vertex.
* z_zy: members of z_an needed to block backdoor ways from the already
  kept vertices (i ∪ z_xy) to y.

The union i ∪ z_xy ∪ z_zy is an FD set, contains i, and no proper subset
containing i is an FD set. Each stage is one rule-table search, so the
whole computation stays O(n + m).
"""

from __future__ import annotations

from dataclasses import dataclass

from .find import NONE_EXISTS, FdQuery, FdResult, find_fd
from .graph import Dag
from .search import Rule, RuleTable, SearchStats, generic_search

__all__ = [
    "MinimalDecomposition",
    "compute_z_an",
    "compute_z_xy",
    "compute_z_zy",
    "find_minimal_fd",
]


@dataclass(frozen=True)
class MinimalDecomposition:
    """The stage sets behind a minimal FD set: z_min = i ∪ z_xy ∪ z_zy."""

    z_an: frozenset
    z_xy: frozenset
    z_zy: frozenset
    z_min: frozenset

    def __post_init__(self):
        if not (self.z_xy <= self.z_an and self.z_zy <= self.z_an):
            raise ValueError("stage sets must be subsets of z_an")


def compute_z_an(g: Dag, q: FdQuery, zii: frozenset,
                 stats: SearchStats | None = None) -> set:
    """Members of zii reaching y by a directed path free of x, y and the
    rest of zii.

    Searched backwards from y along incoming edges, continuing only
    through vertices outside x ∪ y ∪ zii and yielding zii members.
    """
    x, y = q.x, q.y
    blocked = x | y | zii
    cont = lambda v, w: w not in blocked
    yld = lambda v, w: w in zii
    rule = Rule(cont, yld)
    rules = RuleTable(init_parent=rule, out_parent=rule)
    return generic_search(g, y, rules, stats=stats)


def compute_z_xy(g: Dag, q: FdQuery, z_an: frozenset,
                 stats: SearchStats | None = None) -> set:
    """Members of z_an hit first on some directed proper path from x.

    Searched forwards from x along outgoing edges, continuing only
    through vertices outside x ∪ y ∪ i ∪ z_an and yielding z_an members.
    """
    blocked = q.x | q.y | q.i | z_an
    cont = lambda v, w: w not in blocked
    yld = lambda v, w: w in z_an
    rule = Rule(cont, yld)
    rules = RuleTable(init_child=rule, inc_child=rule)
    return generic_search(g, q.x, rules, stats=stats)


def compute_z_zy(g: Dag, q: FdQuery, z_an: frozenset, z_xy: frozenset,
                 stats: SearchStats | None = None) -> set:
    """Members of z_an needed to block backdoor ways from i ∪ z_xy to y.

    The ways run from i ∪ z_xy, never traverse x, leave kept vertices
    only against the first edge, and open colliders only at kept
    vertices; every z_an member yielded along such a way is required.
    Ways may also loop back into a vertex that is kept anyway, so the
    already kept ones are dropped from the result; the final union is
    unaffected and the stage reports only the newly required blockers.
    """
    kept = q.i | z_xy
    hard = q.x | kept
    x = q.x
    open_mid = q.i | z_an

    bwd_cont = lambda v, w: w not in hard
    bwd_yld = lambda v, w: w in z_an
    fwd_cont = lambda v, w: w not in x and v not in open_mid
    fwd_yld = lambda v, w: w in z_an and v not in open_mid
    col_cont = lambda v, w: v in open_mid and w not in hard
    col_yld = lambda v, w: v in open_mid and w in z_an

    rules = RuleTable(
        init_parent=Rule(bwd_cont, bwd_yld),
        inc_child=Rule(fwd_cont, fwd_yld),
        out_parent=Rule(bwd_cont, bwd_yld),
        out_child=Rule(fwd_cont, fwd_yld),
        inc_parent=Rule(col_cont, col_yld),
    )
    return generic_search(g, kept, rules, stats=stats) - kept


def find_minimal_fd(g: Dag, q: FdQuery,
                    stats: SearchStats | None = None
                    ) -> tuple[FdResult, MinimalDecomposition | None]:
    """An i-inclusion-minimal FD set with q.i ⊆ z ⊆ q.r, or NoneExists.

    Runs the finder first; on success prunes its maximum set through the
    three stages and returns Found(i ∪ z_xy ∪ z_zy) together with the
    decomposition. NoneExists exactly when find_fd says so.
    """
    res = find_fd(g, q, stats=stats)
    if not res.exists:
        return NONE_EXISTS, None
    zii = res.z
    z_an = frozenset(compute_z_an(g, q, zii, stats=stats))
    z_xy = frozenset(compute_z_xy(g, q, z_an, stats=stats))
    z_zy = frozenset(compute_z_zy(g, q, z_an, z_xy, stats=stats))
    z_min = q.i | z_xy | z_zy
    deco = MinimalDecomposition(z_an=z_an, z_xy=z_xy, z_zy=z_zy, z_min=z_min)
    return FdResult(True, z_min), deco
