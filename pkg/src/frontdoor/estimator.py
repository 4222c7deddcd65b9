"""Exact discrete evaluation of the front-door adjustment formula.

Models are full joint factorizations: one CPT per node (latents
included), each row a distribution over the node's states given a parent
configuration. Everything is evaluated by exact enumeration over the
product state space, guarded to 2^20 states.

Two routes to an interventional probability are provided on purpose:
:func:`fd_estimate` evaluates the adjustment formula

    P(y | do(x)) = sum_z P(z | x) sum_x' P(y | x', z) P(x')

from the observed joint alone (with P(y) when z is empty), while
:func:`do_oracle` mutilates the factorization (drop the x-factors, clamp
x) and sums it out. When z is a valid front-door set the two agree, which
is what the tests certify.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EstimatorError
from .find import verify_fd
from .graph import Dag, parse_graph, serialize

__all__ = [
    "DiscreteModel",
    "JointTable",
    "joint_distribution",
    "fd_estimate",
    "do_oracle",
    "model_from_json",
    "model_to_json",
]

_MAX_STATES = 1 << 20
_ROW_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteModel:
    """A discrete factorized distribution over a Dag.

    ``cards[v]`` is the state count of node v (at least 2). ``cpts[v]``
    holds P(v | parents(v)) with one axis per parent in ascending node
    index order and the node's own states on the last axis; any
    array-like of the right size is accepted and reshaped. Rows must be
    probability vectors.
    """

    dag: Dag
    cards: tuple
    cpts: tuple

    def __post_init__(self):
        g = self.dag
        cards = tuple(int(c) for c in self.cards)
        if len(cards) != g.node_count:
            raise EstimatorError("one cardinality per node required")
        if any(c < 2 for c in cards):
            raise EstimatorError("cardinalities must be at least 2")
        if len(self.cpts) != g.node_count:
            raise EstimatorError("one CPT per node required")
        tables = []
        for v in range(g.node_count):
            shape = tuple(cards[p] for p in g.parents[v]) + (cards[v],)
            t = np.array(self.cpts[v], dtype=np.float64)
            if t.size != math.prod(shape):
                raise EstimatorError(
                    f"CPT for {g.names[v]!r} has {t.size} entries, "
                    f"expected {math.prod(shape)}")
            t = t.reshape(shape)
            if not np.all(t >= 0.0):
                raise EstimatorError(f"CPT for {g.names[v]!r} has negative entries")
            if np.max(np.abs(t.sum(axis=-1) - 1.0)) > _ROW_TOL:
                raise EstimatorError(f"CPT rows for {g.names[v]!r} do not sum to 1")
            t.setflags(write=False)
            tables.append(t)
        object.__setattr__(self, "cards", cards)
        object.__setattr__(self, "cpts", tuple(tables))

    def state_space(self) -> int:
        return math.prod(self.cards)


@dataclass(frozen=True, eq=False)
class JointTable:
    """Exact joint over ``vars`` (ascending node indices), one axis each."""

    vars: tuple
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        p = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", p)
        if abs(float(p.sum()) - 1.0) > _ROW_TOL:
            raise EstimatorError("joint table does not sum to 1")

    def marginal(self, keep: Iterable[int]) -> "JointTable":
        keep = set(keep)
        if not keep <= set(self.vars):
            raise EstimatorError("marginal variables must be a subset")
        drop = tuple(i for i, v in enumerate(self.vars) if v not in keep)
        return JointTable(tuple(v for v in self.vars if v in keep),
                          self.probs.sum(axis=drop))

    def prob(self, assignment: Mapping[int, int]) -> float:
        idx = tuple(assignment[v] for v in self.vars)
        return float(self.probs[idx])


def _broadcast_to(cards: Sequence[int], axes: Sequence[int],
                  table: np.ndarray, global_axes: Sequence[int]) -> np.ndarray:
    """View ``table`` (axes = node ids ``axes``) against ``global_axes``."""
    order = sorted(range(len(axes)), key=lambda k: axes[k])
    t = table.transpose(order)
    pos = {v: k for k, v in enumerate(global_axes)}
    shape = [1] * len(global_axes)
    for v in sorted(axes):
        shape[pos[v]] = cards[v]
    return t.reshape(shape)


def joint_distribution(model: DiscreteModel, keep: Iterable[int]) -> JointTable:
    """Exact joint over ``keep``; everything else (latents included) is
    summed out of the full factorization."""
    g = model.dag
    n = g.node_count
    keep = set(keep)
    for v in keep:
        if not 0 <= v < n:
            raise EstimatorError(f"unknown node index {v}")
    if model.state_space() > _MAX_STATES:
        raise EstimatorError(
            f"state space {model.state_space()} exceeds {_MAX_STATES}")

    all_axes = list(range(n))
    full = np.ones(tuple(model.cards), dtype=np.float64)
    for v in range(n):
        axes = list(g.parents[v]) + [v]
        full = full * _broadcast_to(model.cards, axes, model.cpts[v], all_axes)
    drop = tuple(v for v in range(n) if v not in keep)
    return JointTable(tuple(sorted(keep)), full.sum(axis=drop))


def _check_assignment(model: DiscreteModel, a: Mapping[int, int],
                      what: str) -> None:
    if not a:
        raise EstimatorError(f"{what} assignment must be nonempty")
    for v, s in a.items():
        if not 0 <= v < model.dag.node_count:
            raise EstimatorError(f"{what} assigns unknown node index {v}")
        if not 0 <= s < model.cards[v]:
            raise EstimatorError(
                f"{what} assigns state {s} to {model.dag.names[v]!r}, "
                f"which has {model.cards[v]} states")


def fd_estimate(model: DiscreteModel, x: Mapping[int, int],
                y: Mapping[int, int], z: Iterable[int]) -> float:
    """Evaluate the adjustment formula for P(y | do(x)) through z.

    z must be a front-door set for (x, y) in the model's graph; x and y
    assign every exposure and outcome variable. Only the observed joint
    over x, y, z enters the computation. Conditioning on an event of
    probability zero is an error; terms whose weight is exactly zero are
    skipped.
    """
    g = model.dag
    z = frozenset(z)
    _check_assignment(model, x, "exposure")
    _check_assignment(model, y, "outcome")
    xvars = frozenset(x)
    yvars = frozenset(y)
    if not verify_fd(g, xvars, yvars, z):
        raise EstimatorError("z is not a front-door adjustment set for (x, y)")

    if not z:
        return joint_distribution(model, yvars).prob(y)

    joint = joint_distribution(model, xvars | yvars | z)
    p_x = joint.marginal(xvars)
    p_xz = joint.marginal(xvars | z)

    x_idx = tuple(x[v] for v in p_x.vars)
    px = float(p_x.probs[x_idx])
    if px == 0.0:
        raise EstimatorError("P(x) = 0: cannot condition on the exposure value")

    zvars = sorted(z)
    z_shape = tuple(model.cards[v] for v in zvars)
    x_shape = tuple(model.cards[v] for v in p_x.vars)

    def at(table: JointTable, *assigns: Mapping[int, int]) -> float:
        merged = {}
        for a in assigns:
            merged.update(a)
        return table.prob(merged)

    outer = []
    for z_states in np.ndindex(z_shape):
        z_assign = dict(zip(zvars, (int(s) for s in z_states)))
        p_zx = at(p_xz, x, z_assign) / px
        if p_zx == 0.0:
            continue
        inner = []
        for xp_states in np.ndindex(x_shape):
            xp_assign = dict(zip(p_x.vars, (int(s) for s in xp_states)))
            p_xp = at(p_x, xp_assign)
            if p_xp == 0.0:
                continue
            p_xpz = at(p_xz, xp_assign, z_assign)
            if p_xpz == 0.0:
                raise EstimatorError(
                    "P(x', z) = 0 for a positive-probability term: "
                    "the formula's conditional is undefined")
            p_y_xpz = at(joint, xp_assign, z_assign, y) / p_xpz
            inner.append(p_y_xpz * p_xp)
        outer.append(p_zx * math.fsum(inner))
    return math.fsum(outer)


def do_oracle(model: DiscreteModel, x: Mapping[int, int],
              y: Mapping[int, int]) -> float:
    """P(y | do(x)) by truncated factorization.

    Drops the factors of the intervened variables, clamps them to x in
    every remaining factor, and sums the product over all other
    variables, latents included.
    """
    g = model.dag
    _check_assignment(model, x, "exposure")
    _check_assignment(model, y, "outcome")
    if set(x) & set(y):
        raise EstimatorError("exposure and outcome variables overlap")
    if model.state_space() > _MAX_STATES:
        raise EstimatorError(
            f"state space {model.state_space()} exceeds {_MAX_STATES}")

    keep_axes = [v for v in range(g.node_count) if v not in x]
    acc = np.ones(tuple(model.cards[v] for v in keep_axes), dtype=np.float64)
    for v in keep_axes:
        table = model.cpts[v]
        axes = list(g.parents[v]) + [v]
        if any(a in x for a in axes):
            idx = tuple(x[a] if a in x else slice(None) for a in axes)
            table = table[idx]
            axes = [a for a in axes if a not in x]
        acc = acc * _broadcast_to(model.cards, axes, table, keep_axes)
    drop = tuple(i for i, v in enumerate(keep_axes) if v not in y)
    y_table = acc.sum(axis=drop)
    y_axes = [v for v in keep_axes if v in y]
    return float(y_table[tuple(y[v] for v in y_axes)])


def model_from_json(text: str) -> DiscreteModel:
    """Load a model document: {"graph": ..., "cards": ..., "cpts": ...}.

    ``graph`` is graph text, ``cards`` maps every node name (latents from
    bidirected expansion included, e.g. "U#0") to its state count, and
    ``cpts`` maps every name to its row-major table.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise EstimatorError(f"invalid model JSON: {err}") from None
    for key in ("graph", "cards", "cpts"):
        if key not in doc:
            raise EstimatorError(f"model JSON lacks {key!r}")
    g = parse_graph(doc["graph"])
    cards = []
    cpts = []
    for name in g.names:
        if name not in doc["cards"]:
            raise EstimatorError(f"model JSON lacks cardinality for {name!r}")
        if name not in doc["cpts"]:
            raise EstimatorError(f"model JSON lacks CPT for {name!r}")
        cards.append(doc["cards"][name])
        cpts.append(doc["cpts"][name])
    return DiscreteModel(g, tuple(cards), tuple(cpts))


def model_to_json(model: DiscreteModel) -> str:
    """Serialize a model to the document format of :func:`model_from_json`."""
    g = model.dag
    doc = {
        "graph": serialize(g),
        "cards": {g.names[v]: model.cards[v] for v in range(g.node_count)},
        "cpts": {g.names[v]: model.cpts[v].ravel().tolist()
                 for v in range(g.node_count)},
    }
    return json.dumps(doc, indent=2)
