"""Directed acyclic graphs with latent nodes: parsing, closures, edge masks.

Nodes are dense integer indices assigned in first-appearance order; every
index has a unique string name. Latent nodes model unmeasured variables and
are never eligible for adjustment. Bidirected edges ``A <-> B`` in the text
format are expanded into a fresh latent common cause ``U#k -> A, U#k -> B``.

Graph text format (UTF-8, line oriented)::

    A -> B        directed edge
    A <-> B       bidirected edge (expanded on parse)
    latent U      flags U as latent
    N             declares an isolated node N
    # comment     '#' starts a comment at line start or after whitespace

Node names match ``[A-Za-z0-9_.]+``. The trailing form ``#<digits>`` is
reserved for latent nodes minted by bidirected-edge expansion, so serialized
graphs always re-parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphError

__all__ = [
    "Dag",
    "EdgeMask",
    "NO_MASK",
    "RawParse",
    "GraphError",
    "parse_graph",
    "expand_bidirected",
    "serialize",
    "ancestors",
    "descendants",
]

@dataclass(frozen=True)
class EdgeMask:
    """Edge-deletion view consulted at traversal time.

    Deletes every edge leaving a node in ``underline`` and every edge
    entering a node in ``overline``. An edge ``u -> v`` survives iff
    ``u not in underline and v not in overline``. The mask never copies the
    graph; searches consult it per edge.
    """

    underline: frozenset = frozenset()
    overline: frozenset = frozenset()

    def __bool__(self) -> bool:
        return bool(self.underline or self.overline)


#: The identity mask (no edges deleted).
NO_MASK = EdgeMask()


class Dag:
    """Immutable directed acyclic graph over named, indexed nodes.

    ``parents[v]`` and ``children[v]`` are ascending index lists and are
    mutually consistent. Construction validates acyclicity and rejects
    self-loops and duplicate edges. Instances must not be mutated after
    construction; they are safe to share across threads.
    """

    __slots__ = ("node_count", "edge_count", "names", "latent", "parents",
                 "children", "_index")

    def __init__(self, names: Sequence[str], edges: Iterable[tuple[int, int]],
                 latent: Iterable[int] = ()):
        names = list(names)
        index: dict[str, int] = {}
        for i, name in enumerate(names):
            if name in index:
                raise GraphError(f"duplicate node name {name!r}")
            index[name] = i
        n = len(names)

        children: list[list[int]] = [[] for _ in range(n)]
        parents: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references an unknown node index")
            if u == v:
                raise GraphError(f"self-loop at node {names[u]!r}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge {names[u]!r} -> {names[v]!r}")
            seen.add((u, v))
            children[u].append(v)
            parents[v].append(u)
            m += 1
        for adj in children:
            adj.sort()
        for adj in parents:
            adj.sort()

        latent_flags = bytearray(n)
        for i in latent:
            if not (0 <= i < n):
                raise GraphError(f"latent flag references an unknown node index {i}")
            latent_flags[i] = 1

        self.node_count = n
        self.edge_count = m
        self.names = tuple(names)
        self.latent = bytes(latent_flags)
        self.parents = parents
        self.children = children
        self._index = index

        self._check_acyclic()

    def _check_acyclic(self) -> None:
        # Kahn's algorithm; anything left over sits on a cycle.
        indegree = [len(p) for p in self.parents]
        stack = [v for v, d in enumerate(indegree) if d == 0]
        removed = 0
        while stack:
            v = stack.pop()
            removed += 1
            for w in self.children[v]:
                indegree[w] -= 1
                if indegree[w] == 0:
                    stack.append(w)
        if removed != self.node_count:
            raise GraphError("graph contains a directed cycle")

    # -- name/index translation ------------------------------------------

    def index(self, name: str) -> int:
        """Index of ``name``; raises GraphError for unknown names."""
        try:
            return self._index[name]
        except KeyError:
            raise GraphError(f"unknown node {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def indices(self, names: Iterable[str]) -> set:
        """Translate names to a set of indices."""
        return {self.index(nm) for nm in names}

    def names_of(self, nodes: Iterable[int]) -> list:
        """Render node indices as names, in ascending index order."""
        return [self.names[i] for i in sorted(nodes)]

    # -- structure accessors ---------------------------------------------

    def is_latent(self, i: int) -> bool:
        return bool(self.latent[i])

    def observed(self) -> set:
        """All non-latent node indices."""
        return {i for i in range(self.node_count) if not self.latent[i]}

    def default_restricted(self, x: Iterable[int], y: Iterable[int]) -> set:
        """The default candidate scope: every observed node outside x and y."""
        out = self.observed()
        out.difference_update(x)
        out.difference_update(y)
        return out

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges in ascending (source, target) index order."""
        for u in range(self.node_count):
            for v in self.children[u]:
                yield (u, v)

    def reverse(self) -> "Dag":
        """A new Dag with every edge flipped (names and latent flags kept)."""
        return Dag(self.names, ((v, u) for u, v in self.edges()),
                   (i for i in range(self.node_count) if self.latent[i]))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Dag(nodes={self.node_count}, edges={self.edge_count})"


# -- closures --------------------------------------------------------------

def _closure(adj: list, seed: Iterable[int]) -> set:
    out = set(seed)
    stack = list(out)
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in out:
                out.add(w)
                stack.append(w)
    return out


def ancestors(g: Dag, s: Iterable[int]) -> set:
    """Reflexive-transitive closure along reversed edges (s included)."""
    return _closure(g.parents, s)


def descendants(g: Dag, s: Iterable[int]) -> set:
    """Reflexive-transitive closure along forward edges (s included)."""
    return _closure(g.children, s)


# -- parsing ----------------------------------------------------------------

_NAME = r"[A-Za-z0-9_.]+(?:#[0-9]+)?"
_NAME_RE = re.compile(rf"^{_NAME}$")
_EDGE_RE = re.compile(rf"^({_NAME})\s*(<->|->)\s*({_NAME})$")
_LATENT_RE = re.compile(rf"^latent\s+({_NAME})$")
# A comment starts at a '#' that begins the line or follows whitespace;
# '#' inside a reserved latent name ("U#0") does not.
_COMMENT_RE = re.compile(r"(^|\s)#.*$")


@dataclass
class RawParse:
    """Intermediate parse result, before bidirected-edge expansion.

    ``edges`` and ``bidirected`` carry (source, target, line) /
    (a, b, line) tuples of node indices with their 1-based input line.
    """

    names: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    bidirected: list = field(default_factory=list)
    latent: set = field(default_factory=set)


def parse_graph(text: str) -> Dag:
    """Parse graph text into a Dag, expanding bidirected edges.

    Nodes are indexed in first-appearance order; fresh latent nodes from
    ``<->`` expansion are appended after all explicit nodes. Syntax errors,
    self-loops, duplicate edges and cycles raise :class:`GraphError` with
    the offending line number.
    """
    raw = RawParse()
    index: dict[str, int] = {}

    def intern(name: str) -> int:
        i = index.get(name)
        if i is None:
            i = len(raw.names)
            index[name] = i
            raw.names.append(name)
        return i

    seen_directed: set[tuple[int, int]] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = _COMMENT_RE.sub("", line).strip()
        if not line:
            continue
        m = _EDGE_RE.match(line)
        if m:
            a, op, b = m.group(1), m.group(2), m.group(3)
            if a == b:
                raise GraphError(f"self-loop {a!r} {op} {b!r}", line=lineno)
            ia, ib = intern(a), intern(b)
            if op == "->":
                if (ia, ib) in seen_directed:
                    raise GraphError(f"duplicate edge {a!r} -> {b!r}", line=lineno)
                seen_directed.add((ia, ib))
                raw.edges.append((ia, ib, lineno))
            else:
                raw.bidirected.append((ia, ib, lineno))
            continue
        m = _LATENT_RE.match(line)
        if m:
            raw.latent.add(intern(m.group(1)))
            continue
        if _NAME_RE.match(line):
            intern(line)
            continue
        raise GraphError(f"unrecognized syntax {line!r}", line=lineno)

    return expand_bidirected(raw)


def expand_bidirected(raw: RawParse) -> Dag:
    """Replace each bidirected record with a fresh latent common cause.

    The k-th bidirected edge (in input order) mints node ``U#<k>`` with
    edges to both endpoints. Minting a name that already exists is an
    error. Finally the Dag is built and validated.
    """
    names = list(raw.names)
    taken = set(names)
    edges = [(u, v) for u, v, _ in raw.edges]
    latent = set(raw.latent)
    for k, (a, b, lineno) in enumerate(raw.bidirected):
        fresh = f"U#{k}"
        if fresh in taken:
            raise GraphError(
                f"cannot expand bidirected edge: node name {fresh!r} already in use",
                line=lineno)
        u = len(names)
        names.append(fresh)
        taken.add(fresh)
        latent.add(u)
        edges.append((u, a))
        edges.append((u, b))

    try:
        return Dag(names, edges, latent)
    except GraphError as err:
        if "cycle" not in str(err):
            raise
        # Error path only: attribute the cycle to the first edge (in input
        # order) whose insertion closes one.
        raise _cycle_error(len(names), raw.edges) from None


def _cycle_error(n: int, edges: list) -> GraphError:
    children: list[list[int]] = [[] for _ in range(n)]
    for u, v, lineno in edges:
        if _reaches(children, v, u):
            return GraphError(
                "edge on this line closes a directed cycle", line=lineno)
        children[u].append(v)
    return GraphError("graph contains a directed cycle")  # pragma: no cover


def _reaches(children: list, src: int, dst: int) -> bool:
    if src == dst:
        return True
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        for w in children[v]:
            if w == dst:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def serialize(g: Dag) -> str:
    """Render a Dag in the text format, edges in index order.

    Isolated nodes are declared on their own line so that
    ``parse_graph(serialize(g))`` reconstructs the same names, edges and
    latent flags.
    """
    lines = []
    connected = bytearray(g.node_count)
    for u, v in g.edges():
        connected[u] = 1
        connected[v] = 1
        lines.append(f"{g.names[u]} -> {g.names[v]}")
    for i in range(g.node_count):
        if not connected[i] and not g.latent[i]:
            lines.append(g.names[i])
    for i in range(g.node_count):
        if g.latent[i]:
            lines.append(f"latent {g.names[i]}")
    return "\n".join(lines) + ("\n" if lines else "")
