"""Linear-time graph searches: a generic rule-table engine and two
canonical instantiations (Bayes-Ball d-connectivity, directed DFS).

The generic engine walks edges in both directions. Every step is
classified by how the current vertex V was entered (``init`` for start
vertices, ``inc`` along an edge into V, ``out`` along an edge out of V)
and whether the neighbor W is a child (V -> W, entered via ``inc``) or a
parent (V <- W, entered via ``out``). A rule table supplies, per class, a
*continue* predicate (recurse into W) and a *yield* predicate (put W in
the result). Each (vertex, entry-direction) pair is visited at most once,
so a search runs in O(n + m).

All searches take an :class:`~frontdoor.graph.EdgeMask`; a masked edge is
invisible in both directions. Traversals are iterative (explicit stack)
and mark vertices when pushed, so the visited relation is the least
fixpoint and independent of stack order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .errors import InvalidQueryError
from .graph import Dag, EdgeMask, NO_MASK

__all__ = [
    "INC",
    "OUT",
    "Rule",
    "RuleTable",
    "SearchStats",
    "generic_search",
    "bayes_ball",
    "bayes_ball_rules",
    "directed_reachable",
]

INC = 0
OUT = 1

#: A rule predicate: a constant or a pure function of (V, W) node indices.
Predicate = Union[bool, Callable[[int, int], bool]]


@dataclass
class SearchStats:
    """Instrumentation counters, accumulated across calls.

    ``visits`` counts entries into the visit routine (pushes, including
    start vertices); ``edges`` counts neighbor inspections.
    """

    visits: int = 0
    edges: int = 0


@dataclass(frozen=True)
class Rule:
    """continue/yield predicates for one step class."""

    cont: Predicate = False
    yld: Predicate = False


@dataclass(frozen=True)
class RuleTable:
    """The six step classes of the generic search.

    Naming: the prefix is how V was entered (``init``, ``inc`` = along an
    edge into V, ``out`` = along an edge out of V); the suffix is the
    neighbor kind (``child`` = V -> W, ``parent`` = V <- W).
    """

    init_child: Rule = Rule()
    init_parent: Rule = Rule()
    inc_child: Rule = Rule()
    inc_parent: Rule = Rule()
    out_child: Rule = Rule()
    out_parent: Rule = Rule()


def _as_fn(p: Predicate) -> Callable[[int, int], bool]:
    if p is True:
        return lambda v, w: True
    if p is False:
        return lambda v, w: False
    return p


def generic_search(g: Dag, start: Iterable[int], rules: RuleTable,
                   mask: EdgeMask = NO_MASK,
                   stats: SearchStats | None = None) -> set:
    """Run the rule-table search from ``start``; return the yielded set.

    A vertex W is yielded iff some way from a start vertex reaches W whose
    every intermediate step satisfies *continue* and whose final step
    satisfies *yield*. Ways may revisit vertices, so a start vertex can
    yield itself through a loop ending at it even though no simple path
    does. The yield predicate is evaluated on every inspected edge, also
    when W was already visited.
    """
    children, parents = g.children, g.parents
    under, over = mask.underline, mask.overline

    tbl = {
        INC: (_as_fn(rules.inc_child.cont), _as_fn(rules.inc_child.yld),
              _as_fn(rules.inc_parent.cont), _as_fn(rules.inc_parent.yld)),
        OUT: (_as_fn(rules.out_child.cont), _as_fn(rules.out_child.yld),
              _as_fn(rules.out_parent.cont), _as_fn(rules.out_parent.yld)),
        "init": (_as_fn(rules.init_child.cont), _as_fn(rules.init_child.yld),
                 _as_fn(rules.init_parent.cont), _as_fn(rules.init_parent.yld)),
    }

    n = g.node_count
    vis_inc = bytearray(n)
    vis_out = bytearray(n)
    yielded = bytearray(n)

    # Start vertices enter with the distinct "init" type and stay
    # re-enterable via inc/out later.
    stack = [(v, "init") for v in start]
    visits = len(stack)
    edges = 0

    while stack:
        v, et = stack.pop()
        ccont, cyld, pcont, pyld = tbl[et]
        if v not in under:
            for w in children[v]:
                edges += 1
                if w in over:
                    continue
                if cyld(v, w):
                    yielded[w] = 1
                if not vis_inc[w] and ccont(v, w):
                    vis_inc[w] = 1
                    visits += 1
                    stack.append((w, INC))
        if v not in over:
            for w in parents[v]:
                edges += 1
                if w in under:
                    continue
                if pyld(v, w):
                    yielded[w] = 1
                if not vis_out[w] and pcont(v, w):
                    vis_out[w] = 1
                    visits += 1
                    stack.append((w, OUT))

    if stats is not None:
        stats.visits += visits
        stats.edges += edges
    return {v for v in range(n) if yielded[v]}


def bayes_ball_rules(z: Iterable[int]) -> RuleTable:
    """The d-connectivity rule table given conditioning set ``z``.

    Chains and forks pass a vertex outside z; colliders pass a vertex
    inside z. With this table, ``generic_search(g, x, ...) | set(x)``
    equals ``bayes_ball(g, x, z)`` (the yielded set can miss a start
    vertex when no open way loops back to it).
    """
    zset = frozenset(z)
    passthrough = lambda v, w: v not in zset
    collider = lambda v, w: v in zset
    return RuleTable(
        init_child=Rule(True, True),
        init_parent=Rule(True, True),
        inc_child=Rule(passthrough, passthrough),
        inc_parent=Rule(collider, collider),
        out_child=Rule(passthrough, passthrough),
        out_parent=Rule(passthrough, passthrough),
    )


def bayes_ball(g: Dag, x: Iterable[int], z: Iterable[int],
               mask: EdgeMask = NO_MASK,
               stats: SearchStats | None = None) -> set:
    """All vertices d-connected to ``x`` given ``z`` in the masked graph.

    Hand-rolled Bayes-Ball: from x, a ball moves to children unless the
    current vertex is in z, and to parents when entering a z-vertex
    along an incoming edge or leaving a non-z-vertex along an outgoing
    one. Returns every vertex visited in either direction; x itself is
    always included. Requires x and z disjoint.
    """
    n = g.node_count
    in_z = bytearray(n)
    for v in z:
        in_z[v] = 1
    for v in x:
        if in_z[v]:
            raise InvalidQueryError(
                f"start and conditioning sets overlap at {g.names[v]!r}")

    masked_out = bytearray(n)
    masked_in = bytearray(n)
    for v in mask.underline:
        masked_out[v] = 1
    for v in mask.overline:
        masked_in[v] = 1

    children, parents = g.children, g.parents
    vis_inc = bytearray(n)
    vis_out = bytearray(n)
    stack = []
    for v in x:
        if not vis_out[v]:
            vis_out[v] = 1
            stack.append((v, OUT))
    visits = len(stack)
    edges = 0

    while stack:
        v, et = stack.pop()
        if not in_z[v] and not masked_out[v]:
            for u in children[v]:
                edges += 1
                if not vis_inc[u] and not masked_in[u]:
                    vis_inc[u] = 1
                    visits += 1
                    stack.append((u, INC))
        if (in_z[v] if et == INC else not in_z[v]) and not masked_in[v]:
            for u in parents[v]:
                edges += 1
                if not vis_out[u] and not masked_out[u]:
                    vis_out[u] = 1
                    visits += 1
                    stack.append((u, OUT))

    if stats is not None:
        stats.visits += visits
        stats.edges += edges
    return {v for v in range(n) if vis_inc[v] or vis_out[v]}


def directed_reachable(g: Dag, start: Iterable[int], stop: Iterable[int],
                       stats: SearchStats | None = None) -> set:
    """Vertices reachable from ``start`` along directed edges.

    Vertices in ``stop`` are returned when reached but not expanded;
    start vertices are origins and always expand, even when they are in
    ``stop``.
    """
    stop = set(stop)
    seen = set(start)
    stack = list(seen)
    visits = len(stack)
    edges = 0
    children = g.children
    while stack:
        v = stack.pop()
        for w in children[v]:
            edges += 1
            if w in seen:
                continue
            seen.add(w)
            if w not in stop:
                visits += 1
                stack.append(w)
    if stats is not None:
        stats.visits += visits
        stats.edges += edges
    return seen
