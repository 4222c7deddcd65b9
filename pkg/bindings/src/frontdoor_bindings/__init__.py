"""Name-based bindings over the frontdoor core.

The core works on integer node indices. This package accepts graphs the
way scripting code usually holds them, as a node-labeled digraph object
or a plain edge list, and marshals every result back as node names, so
callers never see an index. Failures come back as plain ValueError or
TypeError carrying the core's message.

    >>> import frontdoor_bindings as fdb
    >>> g = fdb.from_edges([("X", "Z"), ("Z", "Y"), ("U", "X"), ("U", "Y")],
    ...                    latents=["U"])
    >>> fdb.bind_find(g, "X", "Y")
    ['Z']

Any object with ``nodes`` and ``edges()`` in the networkx style is
accepted wherever a handle is; a node whose ``latent`` attribute is
truthy becomes a latent node.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from frontdoor import (Dag, EnumerationCursor, FdQuery, FrontdoorError,
                       find_fd, find_minimal_fd, serialize, verify_fd)

__all__ = [
    "GraphHandle",
    "from_edges",
    "bind_find",
    "bind_min",
    "bind_verify",
    "bind_enumerate",
]


class GraphHandle:
    """A validated graph plus its name table.

    Wraps one core graph; construction is the only place validation
    happens, so a handle can be shared across threads for find, min and
    verify calls. Iterators from :func:`bind_enumerate` are stateful and
    single-consumer. Keep the handle alive while any of them runs.
    """

    __slots__ = ("_dag",)

    def __init__(self, dag: Dag):
        self._dag = dag

    @property
    def names(self) -> tuple:
        return self._dag.names

    def serialize(self) -> str:
        """The graph in the core's text format."""
        return serialize(self._dag)

    def __repr__(self):
        d = self._dag
        return f"GraphHandle(nodes={d.node_count}, edges={d.edge_count})"


def from_edges(edges: Iterable, latents: Iterable = ()) -> GraphHandle:
    """Build a handle from (tail, head) name pairs.

    Nodes are indexed in first-appearance order; names in ``latents``
    are marked unobserved and may introduce isolated nodes. Rejects
    non-string labels, repeated edges, self-loops and cycles.
    """
    index: dict = {}
    pairs = []

    def intern(label) -> int:
        if not isinstance(label, str):
            raise TypeError(f"node label {label!r} is not a string")
        if label not in index:
            index[label] = len(index)
        return index[label]

    for item in edges:
        try:
            u, v = item
        except (TypeError, ValueError):
            raise TypeError(f"edge {item!r} is not a (tail, head) pair") \
                from None
        pairs.append((intern(u), intern(v)))
    latent = [intern(name) for name in latents]
    try:
        dag = Dag(tuple(index), pairs, latent)
    except FrontdoorError as err:
        raise ValueError(str(err)) from None
    return GraphHandle(dag)


def _as_handle(graph) -> GraphHandle:
    if isinstance(graph, GraphHandle):
        return graph
    nodes = getattr(graph, "nodes", None)
    edges = getattr(graph, "edges", None)
    if nodes is not None and callable(edges):

        def node_data(v) -> dict:
            try:
                data = nodes[v]
            except (TypeError, KeyError, IndexError):
                return {}
            return data if isinstance(data, dict) else {}

        latents = [v for v in nodes if node_data(v).get("latent")]
        handle = from_edges(list(edges()), latents)
        # Isolated observed nodes are invisible to the edge list.
        missing = [v for v in nodes if v not in handle.names]
        if missing:
            known = list(handle.names)
            dag = handle._dag
            latent_idx = [i for i, is_l in enumerate(dag.latent) if is_l]
            for v in missing:
                if not isinstance(v, str):
                    raise TypeError(f"node label {v!r} is not a string")
                known.append(v)
            return GraphHandle(Dag(tuple(known), list(dag.edges()),
                                   latent_idx))
        return handle
    raise TypeError(
        f"expected a GraphHandle or a digraph with nodes/edges(), "
        f"got {type(graph).__name__}")


def _name_set(handle: GraphHandle, arg, what: str) -> frozenset:
    if isinstance(arg, str):
        arg = [arg]
    dag = handle._dag
    try:
        return frozenset(dag.indices(list(arg)))
    except FrontdoorError as err:
        raise ValueError(f"{what}: {err}") from None
    except TypeError:
        raise TypeError(f"{what} must be a name or an iterable of names, "
                        f"got {arg!r}") from None


def _query(handle: GraphHandle, x, y, i, r) -> FdQuery:
    xs = _name_set(handle, x, "exposure")
    ys = _name_set(handle, y, "outcome")
    ins = _name_set(handle, i, "include")
    if r is None:
        rs = frozenset(handle._dag.default_restricted(xs, ys))
    else:
        rs = _name_set(handle, r, "restrict")
    return FdQuery(xs, ys, ins, rs)


def _names(handle: GraphHandle, z) -> list:
    return sorted(handle._dag.names_of(z))


def bind_find(graph, x, y, i=(), r=None):
    """The maximum front-door set between i and r as a sorted name list,
    or None when no set exists."""
    handle = _as_handle(graph)
    try:
        res = find_fd(handle._dag, _query(handle, x, y, i, r))
    except FrontdoorError as err:
        raise ValueError(str(err)) from None
    return _names(handle, res.z) if res.exists else None


def bind_min(graph, x, y, i=(), r=None):
    """An inclusion-minimal front-door set, or None when none exists."""
    handle = _as_handle(graph)
    try:
        res, _ = find_minimal_fd(handle._dag, _query(handle, x, y, i, r))
    except FrontdoorError as err:
        raise ValueError(str(err)) from None
    return _names(handle, res.z) if res.exists else None


def bind_verify(graph, x, y, z) -> bool:
    """Whether z is a front-door set for x and y."""
    handle = _as_handle(graph)
    try:
        return verify_fd(handle._dag,
                         _name_set(handle, x, "exposure"),
                         _name_set(handle, y, "outcome"),
                         _name_set(handle, z, "candidate"))
    except FrontdoorError as err:
        raise ValueError(str(err)) from None


def bind_enumerate(graph, x, y, i=(), r=None, limit=None) -> Iterator[list]:
    """Lazily yield every front-door set between i and r as sorted name
    lists. Single consumer; dropping the iterator drops the cursor."""
    handle = _as_handle(graph)
    try:
        cursor = EnumerationCursor(handle._dag, _query(handle, x, y, i, r),
                                   limit=limit)
    except (FrontdoorError, ValueError) as err:
        raise ValueError(str(err)) from None

    def pull():
        for z in cursor:
            yield _names(handle, z)

    return pull()
