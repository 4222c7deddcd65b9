"""Shared fixtures-in-code: reference graphs, exhaustive and random DAG
generators, and slow reference implementations the fast code is tested
against. Everything here favors obviousness over speed."""

import itertools
import random

import numpy as np

from frontdoor.graph import Dag, descendants
from frontdoor.oracle import dsep_bruteforce

# Reference graphs used across the suite. MEDIATOR is the classic
# exposure -> mediator -> outcome chain with a hidden confounder;
# DIAMOND has a two-branch mediator diamond, so there are many valid
# sets; TRIDENT has three parents of the outcome but only one mediator;
# LAYERS needs a three-vertex minimal set; RELAY10 is a ten-node graph
# with four latents whose unique set is {A, D}.

MEDIATOR = "X -> Z\nZ -> Y\nX <-> Y\n"

DIAMOND = """\
X -> A
A -> B
A -> C
B -> D
C -> D
D -> Y
U -> X
U -> Y
latent U
"""

TRIDENT = """\
X -> A
A -> Y
B -> Y
C -> Y
D -> B
D -> C
U -> X
U -> Y
latent U
"""

LAYERS = """\
X -> A
A -> B
B -> C
C -> Y
B -> Y
D -> Y
E -> D
E -> Y
U1 -> X
U1 -> Y
U2 -> A
U2 -> D
latent U1
latent U2
"""

RELAY10 = """\
X -> A
A -> B
B -> C
C -> Y
D -> A
D -> U4
U1 -> X
U1 -> Y
U2 -> X
U2 -> C
U3 -> B
U3 -> Y
U4 -> Y
latent U1
latent U2
latent U3
latent U4
"""

GRAPH_TEXTS = {
    "mediator": MEDIATOR,
    "diamond": DIAMOND,
    "trident": TRIDENT,
    "layers": LAYERS,
    "relay10": RELAY10,
}


def all_dags(n):
    """Yield every labeled DAG on n nodes, one per acyclic orientation
    vector over the unordered vertex pairs (0 = absent, 1 = low->high,
    2 = high->low). Counts for n = 1..5 are 1, 3, 25, 543, 29281."""
    pairs = list(itertools.combinations(range(n), 2))
    names = tuple(f"v{i}" for i in range(n))
    for vec in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = []
        for (u, v), o in zip(pairs, vec):
            if o == 1:
                edges.append((u, v))
            elif o == 2:
                edges.append((v, u))
        try:
            yield Dag(names, edges)
        except Exception:
            continue


def xy_choices(n):
    """All ordered pairs of disjoint nonempty exposure/outcome sets of
    size one or two over n nodes."""
    idx = range(n)
    sets = [frozenset([a]) for a in idx]
    sets += [frozenset(p) for p in itertools.combinations(idx, 2)]
    out = []
    for x in sets:
        for y in sets:
            if not x & y:
                out.append((x, y))
    return out


def rand_dag(rng: random.Random, n_lo=6, n_hi=10, latent_prob=0.2) -> Dag:
    n = rng.randint(n_lo, n_hi)
    names = tuple(f"v{i}" for i in range(n))
    order = list(range(n))
    rng.shuffle(order)
    p = rng.uniform(0.1, 0.5)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((order[i], order[j]))
    latent = [v for v in range(n) if rng.random() < latent_prob]
    return Dag(names, edges, latent)


def rand_xy(rng: random.Random, g: Dag, k_max=2):
    """Disjoint observed exposure/outcome sets, or None if too few
    observed vertices remain."""
    obs = sorted(g.observed())
    kx = rng.randint(1, k_max)
    ky = rng.randint(1, k_max)
    if len(obs) < kx + ky + 1:
        return None
    picked = rng.sample(obs, kx + ky)
    return frozenset(picked[:kx]), frozenset(picked[kx:])


def random_model(nprng: np.random.Generator, g: Dag, cards=(2, 3)):
    """A random discrete model on g: per-node cardinality drawn from
    `cards`, conditional rows drawn from a flat Dirichlet."""
    from frontdoor.estimator import DiscreteModel

    card = [int(nprng.choice(cards)) for _ in range(g.node_count)]
    cpts = []
    for v in range(g.node_count):
        rows = 1
        for p in g.parents[v]:
            rows *= card[p]
        cpts.append(nprng.dirichlet(np.ones(card[v]), size=rows))
    return DiscreteModel(g, card, cpts)


def _proper_causal_vertices(g: Dag, x: set, y: set) -> set:
    """Non-exposure vertices lying on some directed exposure-to-outcome
    path that meets the exposure set only at its start. Explicit path
    enumeration; exponential, for small graphs only."""
    found = set()

    def walk(v, path):
        if v in y:
            found.update(path)
        for w in g.children[v]:
            if w in x or w in path:
                continue
            path.add(w)
            walk(w, path)
            path.discard(w)

    for s in x:
        walk(s, set())
    return found


def bd_exists_bruteforce(g: Dag, x, y, r) -> bool:
    """Reference check that some subset of r is a valid adjustment set
    for (x, y): subsets avoiding the forbidden descendants are tried one
    by one against the path-level separation test in the graph with the
    first causal edges removed."""
    x, y, r = set(x), set(y), set(r)
    pcp = _proper_causal_vertices(g, x, y)
    first = {(u, w) for u in x for w in g.children[u] if w in pcp}
    pbd = Dag(g.names, [e for e in g.edges() if e not in first],
              (i for i in range(g.node_count) if g.latent[i]))
    cand = sorted(r - descendants(g, pcp) - x)
    for k in range(len(cand) + 1):
        for zs in itertools.combinations(cand, k):
            if dsep_bruteforce(pbd, x, y, zs):
                return True
    return False
