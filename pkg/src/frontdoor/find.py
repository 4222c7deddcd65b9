"""Finding and verifying front-door adjustment sets in linear time.

A set Z is a front-door (FD) adjustment set relative to (X, Y) when

* FD(1): Z intercepts every directed path from X to Y,
* FD(2): Z and X are d-separated after removing the edges leaving X,
* FD(3): Z and Y are d-separated by X after removing the edges leaving Z.

Queries carry two extra sets: I (variables that must be included) and R
(variables that may be used). The finder works in three steps: Z(i) is
the subset of R that satisfies FD(2); Z(ii) removes from Z(i) every
vertex that cannot lie in any FD set (witnessed by an open backdoor way
from Y over such removable vertices); finally FD(1) is checked for
Z(ii) itself. Z(ii) is a maximum FD set whenever one exists, so the
check decides existence. Each step is one O(n + m) search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidQueryError
from .graph import Dag, EdgeMask, ancestors
from .search import (INC, OUT, Rule, RuleTable, SearchStats, bayes_ball,
                     directed_reachable, generic_search)

__all__ = [
    "FdQuery",
    "FdResult",
    "NONE_EXISTS",
    "validate_query",
    "compute_zi",
    "compute_zii",
    "compute_zii_tabled",
    "find_fd",
    "verify_fd",
]


@dataclass(frozen=True)
class FdQuery:
    """A front-door query: exposures x, outcomes y, bounds i ⊆ Z ⊆ r.

    All fields are frozensets of node indices (iterables are coerced).
    x and y must be nonempty and disjoint; r must avoid x and y and
    contain i. Graph-dependent requirements (indices in range, no latent
    node in r) are checked by :func:`validate_query`.
    """

    x: frozenset
    y: frozenset
    i: frozenset = frozenset()
    r: frozenset = frozenset()

    def __post_init__(self):
        for f in ("x", "y", "i", "r"):
            v = getattr(self, f)
            if not isinstance(v, frozenset):
                object.__setattr__(self, f, frozenset(v))
        if not self.x:
            raise InvalidQueryError("exposure set x must be nonempty")
        if not self.y:
            raise InvalidQueryError("outcome set y must be nonempty")
        if self.x & self.y:
            raise InvalidQueryError("x and y must be disjoint")
        if self.r & (self.x | self.y):
            raise InvalidQueryError("r must be disjoint from x and y")
        if not self.i <= self.r:
            raise InvalidQueryError("i must be a subset of r")


@dataclass(frozen=True)
class FdResult:
    """Outcome of a finder call: Found(z) or no-FD-set-exists.

    ``exists`` is false only when no set Z with i ⊆ Z ⊆ r satisfies the
    criterion; then ``z`` is None. Invalid inputs raise instead.
    """

    exists: bool
    z: frozenset | None

    def __post_init__(self):
        if self.exists != (self.z is not None):
            raise ValueError("z must be present exactly when exists is true")


NONE_EXISTS = FdResult(False, None)


def validate_query(g: Dag, q: FdQuery) -> None:
    """Raise InvalidQueryError unless q is well-formed for g."""
    n = g.node_count
    for field in ("x", "y", "i", "r"):
        for v in getattr(q, field):
            if not isinstance(v, int) or not 0 <= v < n:
                raise InvalidQueryError(f"{field} contains invalid node index {v!r}")
    for v in q.r:
        if g.latent[v]:
            raise InvalidQueryError(
                f"latent node {g.names[v]!r} cannot be a candidate in r")


def compute_zi(g: Dag, q: FdQuery,
               stats: SearchStats | None = None) -> set:
    """The subset of r d-separated from x once the edges leaving x are cut.

    This is the largest subset of r whose members all satisfy FD(2); one
    Bayes-Ball pass from x in the masked graph, keeping the unreached
    part of r.
    """
    validate_query(g, q)
    return _zi(g, q, stats)


def _zi(g: Dag, q: FdQuery, stats: SearchStats | None) -> set:
    reached = bayes_ball(g, q.x, (), mask=EdgeMask(underline=q.x), stats=stats)
    return set(q.r) - reached


def compute_zii(g: Dag, q: FdQuery, zi: Iterable[int],
                stats: SearchStats | None = None) -> set:
    """Drop from zi every vertex that no FD set can contain.

    A vertex V is removable iff V ∉ zi or there is a way from Y to V,
    running backwards over edges into removable vertices and forwards
    over any edge, that stays open in the FD(3) sense. The search from Y
    marks removable vertices; parents that are not yet known removable
    are deferred (continue-later) and revisited if they ever become
    removable. Runs in O(n + m).
    """
    validate_query(g, q)
    return _zii(g, q, zi, stats)


def _zii(g: Dag, q: FdQuery, zi: Iterable[int],
         stats: SearchStats | None) -> set:
    n = g.node_count
    children, parents = g.children, g.parents

    removable = bytearray(b"\x01" * n)
    keep = set(zi)
    for v in keep:
        removable[v] = 0
    in_x = bytearray(n)
    for v in q.x:
        in_x[v] = 1

    vis_inc = bytearray(n)
    vis_out = bytearray(n)
    later = bytearray(n)
    stack = []
    for v in q.y:
        if not vis_out[v]:
            vis_out[v] = 1
            removable[v] = 1
            stack.append((v, OUT))
    visits = len(stack)
    edges = 0

    # Vertices are marked visited and removable when pushed; "later" is
    # only ever set on vertices never pushed, so checking it at pop time
    # reproduces the recursive formulation (the visited relation is a
    # least fixpoint, insensitive to processing order).
    while stack:
        v, et = stack.pop()
        if not in_x[v]:
            for u in children[v]:
                edges += 1
                if not vis_inc[u]:
                    vis_inc[u] = 1
                    removable[u] = 1
                    visits += 1
                    stack.append((u, INC))
            if et == OUT:
                for u in parents[v]:
                    edges += 1
                    if removable[u]:
                        if not vis_out[u]:
                            vis_out[u] = 1
                            visits += 1
                            stack.append((u, OUT))
                    elif not vis_out[u]:
                        later[u] = 1
        if later[v] and not vis_out[v]:
            vis_out[v] = 1
            removable[v] = 1
            visits += 1
            stack.append((v, OUT))

    if stats is not None:
        stats.visits += visits
        stats.edges += edges
    return {v for v in keep if not removable[v]}


def compute_zii_tabled(g: Dag, q: FdQuery, zi: Iterable[int],
                       stats: SearchStats | None = None) -> set:
    """Rule-table twin of :func:`compute_zii` on the generic engine.

    Precomputes An(y) and runs one generic search from y; the yielded
    vertices are exactly the removable ones. Kept for differential
    testing; compute_zii avoids the ancestor precomputation.
    """
    validate_query(g, q)
    zi = frozenset(zi)
    x = q.x
    anc = ancestors(g, q.y)
    not_x = lambda v, w: v not in x
    rules = RuleTable(
        init_child=Rule(True, True),
        init_parent=Rule(lambda v, w: w not in zi, False),
        inc_child=Rule(not_x, not_x),
        inc_parent=Rule(lambda v, w: v in anc and w not in zi, False),
        out_child=Rule(not_x, not_x),
        out_parent=Rule(lambda v, w: v not in x and w not in zi, False),
    )
    yielded = generic_search(g, q.y, rules, stats=stats)
    return set(zi) - yielded


def find_fd(g: Dag, q: FdQuery,
            stats: SearchStats | None = None) -> FdResult:
    """Find an FD set Z with q.i ⊆ Z ⊆ q.r, or decide none exists.

    Returns Found(Z(ii)), the unique maximum FD set within r, whenever
    the criterion is satisfiable: Z(ii) contains every FD set between i
    and r, so it suffices to check i ⊆ Z(ii) and that Z(ii) intercepts
    all directed x-to-y paths. Total cost is three O(n + m) passes.
    """
    validate_query(g, q)
    return _find(g, q, stats)


def _find(g: Dag, q: FdQuery, stats: SearchStats | None) -> FdResult:
    zi = _zi(g, q, stats)
    zii = _zii(g, q, zi, stats)
    assert not (zii & q.x), "candidates never overlap x"
    if not q.i <= zii:
        return NONE_EXISTS
    blocked = directed_reachable(g, q.x, zii | q.y, stats=stats)
    if blocked & q.y:
        return NONE_EXISTS
    return FdResult(True, frozenset(zii))


def verify_fd(g: Dag, x: Iterable[int], y: Iterable[int], z: Iterable[int],
              stats: SearchStats | None = None) -> bool:
    """True iff z satisfies FD(1)-(3) relative to (x, y).

    Runs the finder with i = r = z, which succeeds iff z itself is an FD
    set. x, y, z must be pairwise disjoint and z latent-free, else
    InvalidQueryError.
    """
    q = FdQuery(x=frozenset(x), y=frozenset(y), i=frozenset(z), r=frozenset(z))
    validate_query(g, q)
    res = _find(g, q, stats)
    return res.exists and res.z == q.r
