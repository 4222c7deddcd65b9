"""Random-instance generation and the benchmark harness.

Instances are Erdős-Rényi style DAGs: m distinct vertex pairs sampled
uniformly and oriented along a random permutation, so acyclicity holds
by construction. Exposure/outcome sizes follow one of two modes
(independent uniform {1,2,3}, or log-growing with n), and the candidate
scope R is a random fraction of the remaining vertices.

The harness times the finder and the minimal finder per instance and
records identification flags: fd (an FD set exists), fdzero (the empty
set suffices, i.e. y is not a descendant of x), bd (some backdoor
adjustment set within R exists), and bdplus (bd or fdzero). Records are
seeded per instance, so any row can be regenerated in isolation.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from typing import IO, Iterable, NamedTuple

import numpy as np

from .errors import FrontdoorError
from .find import FdQuery, find_fd
from .graph import Dag, ancestors, descendants
from .minimal import find_minimal_fd
from .search import bayes_ball, directed_reachable

__all__ = [
    "ExperimentConfig",
    "BenchRecord",
    "BenchInstance",
    "CSV_COLUMNS",
    "gen_er_dag",
    "fd_zero_identifiable",
    "bd_adjustment_exists",
    "run_benchmark",
    "write_csv",
]

XY_MODES = ("Random13", "LogGrow")


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark cell: reps instances of an (n, m) population.

    ``xy_mode`` is Random13 (|x|, |y| uniform in {1,2,3}) or LogGrow
    (|x| = |y| = max(1, log2(n) - 3)). ``r_fraction`` scales the size of
    the candidate scope; the experiments use 0.5 and 0.25. ``time_limit``
    (seconds, optional) flags slow instances without aborting the run.
    """

    n: int
    m: int
    xy_mode: str = "Random13"
    r_fraction: float = 0.5
    reps: int = 1
    seed: int = 0
    time_limit: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise FrontdoorError("n must be at least 2")
        if not 0 <= self.m <= self.n * (self.n - 1) // 2:
            raise FrontdoorError(f"m must be in [0, n(n-1)/2], got {self.m}")
        if self.xy_mode not in XY_MODES:
            raise FrontdoorError(f"xy_mode must be one of {XY_MODES}")
        if not 0.0 < self.r_fraction <= 1.0:
            raise FrontdoorError("r_fraction must be in (0, 1]")
        if self.reps < 1:
            raise FrontdoorError("reps must be at least 1")
        if self.seed < 0:
            raise FrontdoorError("seed must be nonnegative")


class BenchInstance(NamedTuple):
    g: Dag
    x: frozenset
    y: frozenset
    r: frozenset


@dataclass(frozen=True)
class BenchRecord:
    """One CSV row: one (instance, algorithm) measurement."""

    seed: int
    n: int
    m: int
    xmode: str
    rfrac: float
    algo: str
    micros: float
    setsize: int
    fd: bool
    bd: bool
    fdzero: bool
    bdplus: bool
    timeout: bool


CSV_COLUMNS = ("seed", "n", "m", "xmode", "rfrac", "algo", "micros",
               "setsize", "fd", "bd", "fdzero", "bdplus", "timeout")


def gen_er_dag(n: int, m: int, seed: int, xy_mode: str = "Random13",
               r_fraction: float = 0.5) -> BenchInstance:
    """Sample a random DAG instance with its query sets, deterministically.

    m distinct vertex pairs are drawn uniformly (sequential rejection)
    and each is oriented from the earlier to the later position of a
    uniformly random permutation. x and y are disjoint random sets sized
    per xy_mode; r is a uniform subset of the rest with
    floor(r_fraction * n) vertices (capped by availability).
    """
    if not 0 <= m <= n * (n - 1) // 2:
        raise FrontdoorError(f"m must be in [0, n(n-1)/2], got {m}")
    if xy_mode not in XY_MODES:
        raise FrontdoorError(f"xy_mode must be one of {XY_MODES}")
    rng = np.random.default_rng(seed)

    rank = rng.permutation(n)  # rank[v] = topological position of vertex v
    pairs: set = set()
    while len(pairs) < m:
        k = (m - len(pairs)) + (m - len(pairs)) // 4 + 16
        us = rng.integers(0, n, size=k)
        vs = rng.integers(0, n - 1, size=k)
        vs = vs + (vs >= us)
        for u, v in zip(us.tolist(), vs.tolist()):
            pairs.add((u, v) if u < v else (v, u))
            if len(pairs) >= m:
                break
    edges = [(u, v) if rank[u] < rank[v] else (v, u) for u, v in pairs]

    if xy_mode == "Random13":
        kx = int(rng.integers(1, 4))
        ky = int(rng.integers(1, 4))
    else:
        kx = ky = max(1, int(math.log2(n)) - 3)
    if kx + ky > n:
        raise FrontdoorError("n too small for the requested x/y sizes")
    xy = rng.choice(n, size=kx + ky, replace=False)
    x = frozenset(int(v) for v in xy[:kx])
    y = frozenset(int(v) for v in xy[kx:])

    rest = np.array(sorted(set(range(n)) - x - y))
    k_r = min(int(r_fraction * n), rest.size)
    r = frozenset(int(v) for v in rng.choice(rest, size=k_r, replace=False))

    names = [f"v{i}" for i in range(n)]
    return BenchInstance(Dag(names, edges), x, y, r)


def fd_zero_identifiable(g: Dag, x: Iterable[int], y: Iterable[int]) -> bool:
    """True iff the empty set is an FD set: no directed path from x to y."""
    return not (descendants(g, x) & set(y))


def bd_adjustment_exists(g: Dag, x: Iterable[int], y: Iterable[int],
                         r: Iterable[int]) -> bool:
    """True iff some W ⊆ r is a valid backdoor adjustment set for (x, y).

    Canonical-candidate test: vertices on proper causal x-to-y paths and
    their descendants (plus x) are forbidden; the ancestors of x ∪ y
    within r minus the forbidden set form the canonical candidate, which
    adjusts iff any subset of r does. The candidate is checked with one
    d-connectivity search in the graph with the first edge of every
    proper causal path removed.
    """
    x, y, r = set(x), set(y), set(r)
    reach_x = directed_reachable(g, x, stop=x)
    rev = g.reverse()
    to_y = directed_reachable(rev, y, stop=x) - x
    pcp = (reach_x - x) & to_y
    forbidden = descendants(g, pcp) | x
    z0 = (ancestors(g, x | y) - forbidden) & r

    cut = [(u, w) for u in x for w in g.children[u] if w in to_y]
    cut_set = set(cut)
    pbd_edges = [e for e in g.edges() if e not in cut_set]
    pbd = Dag(g.names, pbd_edges,
              (i for i in range(g.node_count) if g.latent[i]))
    return not (set(y) & bayes_ball(pbd, x, z0))


def _measure(fn, *args) -> tuple:
    t0 = time.perf_counter()
    out = fn(*args)
    return out, (time.perf_counter() - t0)


def instance_seed(config_seed: int, rep: int) -> int:
    """Per-instance seed recorded in the CSV; regenerates the instance."""
    return config_seed * 1_000_003 + rep


def run_benchmark(config: ExperimentConfig) -> list:
    """Run one config cell; two records (find, min) per instance.

    A warm-up finder call on the first instance is discarded before any
    timing. setsize is -1 when no FD set exists. Records come out sorted
    by (seed, algo) so CSV assembly is order-independent.
    """
    records = []
    warm = gen_er_dag(config.n, config.m, instance_seed(config.seed, 0),
                      config.xy_mode, config.r_fraction)
    find_fd(warm.g, FdQuery(warm.x, warm.y, frozenset(), warm.r))

    for rep in range(config.reps):
        seed = instance_seed(config.seed, rep)
        g, x, y, r = gen_er_dag(config.n, config.m, seed, config.xy_mode,
                                config.r_fraction)
        q = FdQuery(x, y, frozenset(), r)
        fdzero = fd_zero_identifiable(g, x, y)
        bd = bd_adjustment_exists(g, x, y, r)

        res, t_find = _measure(find_fd, g, q)
        (res_min, _), t_min = _measure(find_minimal_fd, g, q)
        assert res.exists == res_min.exists

        common = dict(seed=seed, n=config.n, m=config.m,
                      xmode=config.xy_mode, rfrac=config.r_fraction,
                      fd=res.exists, bd=bd, fdzero=fdzero,
                      bdplus=bd or fdzero)
        limit = config.time_limit
        records.append(BenchRecord(
            algo="find", micros=t_find * 1e6,
            setsize=len(res.z) if res.exists else -1,
            timeout=bool(limit is not None and t_find > limit), **common))
        records.append(BenchRecord(
            algo="min", micros=t_min * 1e6,
            setsize=len(res_min.z) if res_min.exists else -1,
            timeout=bool(limit is not None and t_min > limit), **common))

    records.sort(key=lambda rec: (rec.seed, rec.algo))
    return records


def write_csv(records: Iterable[BenchRecord], out: IO[str]) -> None:
    """Emit records as CSV with the canonical column order."""
    w = csv.writer(out)
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow([
            rec.seed, rec.n, rec.m, rec.xmode, rec.rfrac, rec.algo,
            f"{rec.micros:.3f}", rec.setsize, int(rec.fd), int(rec.bd),
            int(rec.fdzero), int(rec.bdplus), int(rec.timeout),
        ])
