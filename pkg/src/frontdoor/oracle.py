"""Brute-force ground truth for d-separation and FD-set families.

Everything here is exponential-time by design and guarded by hard input
limits; it exists to cross-check the linear-time algorithms on small
graphs and deliberately shares no traversal code with them. Paths are
enumerated explicitly over the skeleton with orientations retained, and
each clause of the front-door criterion is tested from its definition.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidQueryError, OracleLimitError
from .find import FdQuery, validate_query
from .graph import Dag

__all__ = ["dsep_bruteforce", "fd_sets_bruteforce", "masked_graph"]

_DSEP_MAX_NODES = 14
_FD_MAX_FREE = 16


def masked_graph(g: Dag, underline: Iterable[int] = (),
                 overline: Iterable[int] = ()) -> Dag:
    """Materialize the graph with edges out of ``underline`` and into
    ``overline`` removed."""
    under = set(underline)
    over = set(overline)
    edges = [(u, v) for u, v in g.edges() if u not in under and v not in over]
    return Dag(g.names, edges, (i for i in range(g.node_count) if g.latent[i]))


def _descendant_masks(g: Dag) -> list:
    """Reflexive descendant bitmask per vertex, by reverse topological order."""
    n = g.node_count
    indegree_done = [len(g.children[v]) for v in range(n)]
    masks = [1 << v for v in range(n)]
    stack = [v for v in range(n) if indegree_done[v] == 0]
    while stack:
        v = stack.pop()
        for u in g.parents[v]:
            masks[u] |= masks[v]
            indegree_done[u] -= 1
            if indegree_done[u] == 0:
                stack.append(u)
    return masks


def dsep_bruteforce(g: Dag, a: Iterable[int], b: Iterable[int],
                    c: Iterable[int]) -> bool:
    """True iff every simple path between a and b is blocked by c.

    Tests each path with the collider rule: a collider vertex keeps the
    path open iff one of its descendants (itself included) is in c; any
    other intermediate vertex blocks iff it is in c. Guarded to 14 nodes
    since paths are enumerated exhaustively.
    """
    n = g.node_count
    if n > _DSEP_MAX_NODES:
        raise OracleLimitError(
            f"dsep_bruteforce supports at most {_DSEP_MAX_NODES} nodes, got {n}")
    aset, bset, cset = set(a), set(b), set(c)
    if aset & bset or aset & cset or bset & cset:
        raise InvalidQueryError("a, b, c must be pairwise disjoint")

    desc = _descendant_masks(g)
    cmask = 0
    for v in cset:
        cmask |= 1 << v

    # State: current vertex, whether the last edge points into it, and the
    # bitmask of vertices on the path so far. arrived_in is None at a start
    # vertex (endpoints carry no constraint).
    def extend(v: int, arrived_in, pathmask: int) -> bool:
        leave_fwd_ok = arrived_in is None or v not in cset
        if leave_fwd_ok:
            for w in g.children[v]:
                if pathmask >> w & 1:
                    continue
                if w in bset:
                    return True
                if w in aset:
                    continue
                if extend(w, True, pathmask | 1 << w):
                    return True
        if arrived_in is None:
            leave_bwd_ok = True
        elif arrived_in:
            leave_bwd_ok = bool(desc[v] & cmask)
        else:
            leave_bwd_ok = v not in cset
        if leave_bwd_ok:
            for w in g.parents[v]:
                if pathmask >> w & 1:
                    continue
                if w in bset:
                    return True
                if w in aset:
                    continue
                if extend(w, False, pathmask | 1 << w):
                    return True
        return False

    for s in aset:
        if extend(s, None, 1 << s):
            return False
    return True


def _causal_path_exists(g: Dag, x: set, y: set, z: set) -> bool:
    """Directed path from x to y whose vertices avoid z."""
    seen = set(x)
    stack = list(x)
    while stack:
        v = stack.pop()
        for w in g.children[v]:
            if w in y:
                return True
            if w not in seen and w not in z:
                seen.add(w)
                stack.append(w)
    return False


def fd_sets_bruteforce(g: Dag, q: FdQuery) -> list:
    """Every FD set Z with q.i ⊆ Z ⊆ q.r, each clause by definition.

    FD(1) by directed-path search around Z, FD(2) as (Z ⟂ x) with the
    edges out of x removed, FD(3) as (Z ⟂ y | x) with the edges out of Z
    removed. Returns frozensets in increasing subset-rank order over the
    free part r \\ i. Guarded to 16 free vertices.
    """
    validate_query(g, q)
    free = sorted(q.r - q.i)
    if len(free) > _FD_MAX_FREE:
        raise OracleLimitError(
            f"fd_sets_bruteforce supports at most {_FD_MAX_FREE} free "
            f"candidates, got {len(free)}")

    # FD(2) conditions on the empty set, so the set-level statement
    # decomposes exactly into per-vertex separations in the fixed graph.
    gx = masked_graph(g, underline=q.x)
    ok2 = {v: dsep_bruteforce(gx, {v}, q.x, ()) for v in q.r}

    out = []
    for rank in range(1 << len(free)):
        z = set(q.i)
        z.update(free[j] for j in range(len(free)) if rank >> j & 1)
        if _causal_path_exists(g, q.x, q.y, z):
            continue
        if not all(ok2[v] for v in z):
            continue
        if z and not dsep_bruteforce(masked_graph(g, underline=z), z, q.y, q.x):
            continue
        out.append(frozenset(z))
    return out
