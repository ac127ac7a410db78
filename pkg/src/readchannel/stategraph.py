"""State diagrams of the read channel and their determinizations.

``build_G`` is the non-deterministic presentation: nodes are the length
``ell - delta`` overlaps between consecutive windows and each window ``x``
contributes the edge ``prefix(x) --w(x)--> suffix(x)``. For
``delta < ell <= 2*delta`` the interval construction ``build_H`` determinizes
it with nodes ``V_a^b`` (all overlaps of weight in ``[a, b]``). Outside that
range ``subset_determinize`` does the generic power-set construction.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Hashable, Iterable

import numpy as np

from .core import BudgetError, ChannelParams, ParameterError

Edge = tuple[Hashable, Hashable, Hashable]  # (source, label, target)


@dataclass(frozen=True, order=True)
class IntervalNode:
    """The set of overlap words whose weight lies in ``[a, b]``."""

    a: int
    b: int

    @property
    def size(self) -> int:
        return self.b - self.a

    def in_lambda(self, top: int) -> bool:
        """Touches weight 0 or the maximal weight ``top = ell - delta``."""
        return self.a == 0 or self.b == top

    def __str__(self):
        return f"V{self.a}^{self.b}"


@dataclass
class LabeledGraph:
    nodes: list
    edges: list[Edge]
    params: ChannelParams | None = None
    kind: str = ""
    _out: dict = field(default=None, init=False, repr=False, compare=False)

    def out_edges(self) -> dict:
        if self._out is None:
            out = defaultdict(list)
            for s, label, t in self.edges:
                out[s].append((label, t))
            self._out = out
        return self._out

    def is_deterministic(self) -> bool:
        seen = set()
        for s, label, _ in self.edges:
            if (s, label) in seen:
                return False
            seen.add((s, label))
        return True

    def in_degree(self, node) -> int:
        return sum(1 for _, _, t in self.edges if t == node)

    def labels_between(self, s, t) -> list:
        return sorted(label for label, dst in self.out_edges().get(s, ()) if dst == t)

    def adjacency(self, order: list | None = None) -> np.ndarray:
        """Entry (i, j) counts labeled edges from ``order[i]`` to ``order[j]``."""
        order = self.nodes if order is None else order
        index = {v: i for i, v in enumerate(order)}
        A = np.zeros((len(order), len(order)), dtype=np.int64)
        for s, _, t in self.edges:
            if s in index and t in index:
                A[index[s], index[t]] += 1
        return A

    def subgraph(self, keep: Iterable) -> "LabeledGraph":
        keep = set(keep)
        return LabeledGraph(
            [v for v in self.nodes if v in keep],
            [e for e in self.edges if e[0] in keep and e[2] in keep],
            self.params,
            self.kind,
        )


def node_name(v) -> str:
    if isinstance(v, tuple):
        return "".join(map(str, v)) if v else "e"
    if isinstance(v, frozenset):
        return "{" + ",".join(sorted(node_name(u) for u in v)) + "}"
    return str(v)


def build_G(p: ChannelParams) -> LabeledGraph:
    """Overlap graph; identical (source, label, target) triples are stored once."""
    if p.delta > p.ell:
        raise ParameterError(f"the overlap graph needs delta <= ell, got ell={p.ell}, delta={p.delta}")
    k = p.ell - p.delta
    nodes = list(product((0, 1), repeat=k))
    edges = set()
    for x in product((0, 1), repeat=p.ell):
        edges.add((x[:k], sum(x), x[p.delta:p.delta + k]))
    return LabeledGraph(nodes, sorted(edges), p, "G")


def successors(G: LabeledGraph, V: Iterable, alpha) -> frozenset:
    """Nodes reached from any node of ``V`` by an edge labeled ``alpha``."""
    out = G.out_edges()
    return frozenset(t for s in V for label, t in out.get(s, ()) if label == alpha)


def _check_interval_regime(p: ChannelParams):
    if not p.delta < p.ell <= 2 * p.delta:
        raise ParameterError(
            f"interval determinization needs delta < ell <= 2*delta, got ell={p.ell}, delta={p.delta}"
        )


def build_H(p: ChannelParams) -> LabeledGraph:
    """Interval determinization: ``V_a1^b1 --alpha--> V_min^max`` of the successor weights."""
    _check_interval_regime(p)
    G = build_G(p)
    top = p.ell - p.delta
    by_weight = defaultdict(list)
    for v in G.nodes:
        by_weight[sum(v)].append(v)
    nodes = [IntervalNode(a, b) for a in range(top + 1) for b in range(a, top + 1)]
    edges = []
    for node in nodes:
        members = [v for w in range(node.a, node.b + 1) for v in by_weight[w]]
        for alpha in range(p.ell + 1):
            reached = successors(G, members, alpha)
            if reached:
                weights = [sum(u) for u in reached]
                edges.append((node, alpha, IntervalNode(min(weights), max(weights))))
    return LabeledGraph(nodes, edges, p, "H")


def prune_H(H: LabeledGraph) -> LabeledGraph:
    """Drop the interval nodes outside Lambda whose size is below ``2*delta - ell``."""
    p = H.params
    top = p.ell - p.delta
    gap = 2 * p.delta - p.ell
    keep = [v for v in H.nodes if v.in_lambda(top) or v.size >= gap]
    out = H.subgraph(keep)
    out.kind = "Hstar"
    return out


def node_count(p: ChannelParams) -> int:
    """Closed-form number of nodes of the pruned interval graph."""
    _check_interval_regime(p)
    k = 2 * p.ell - 3 * p.delta
    return 1 + 2 * (p.ell - p.delta) + (comb(k, 2) if k >= 2 else 0)


def node_ordering(nodes: Iterable[IntervalNode]) -> list[IntervalNode]:
    """Matrix order: larger intervals first, equal sizes by ascending lower end."""
    return sorted(nodes, key=lambda v: (-v.size, v.a))


def _pruned_nodes(p: ChannelParams) -> list[IntervalNode]:
    top = p.ell - p.delta
    gap = 2 * p.delta - p.ell
    nodes = [IntervalNode(a, b) for a in range(top + 1) for b in range(a, top + 1)]
    return node_ordering(v for v in nodes if v.in_lambda(top) or v.size >= gap)


def adjacency_from_graph(Hstar: LabeledGraph, ordering: list[IntervalNode] | None = None) -> np.ndarray:
    return Hstar.adjacency(ordering or node_ordering(Hstar.nodes))


def adjacency_closed_form(p: ChannelParams) -> np.ndarray:
    """Adjacency of the pruned interval graph filled from the edge-count rules alone."""
    if not p.delta < p.ell < 2 * p.delta:
        raise ParameterError(f"closed form needs delta < ell < 2*delta, got ell={p.ell}, delta={p.delta}")
    order = _pruned_nodes(p)
    top = p.ell - p.delta
    gap = 2 * p.delta - p.ell
    m = len(order)
    A = np.zeros((m, m), dtype=np.int64)
    for i, u in enumerate(order):
        A[i, 0] = max(0, 3 * p.delta - 2 * p.ell + u.size + 1)
        for j in range(1, m):
            v = order[j]
            if v.in_lambda(top):
                A[i, j] = int(v.size <= gap + u.size)
            else:
                A[i, j] = int(v.size == gap + u.size)
    return A


def subset_determinize(G: LabeledGraph, initial: Iterable | None = None, *, budget: int = 1 << 16) -> LabeledGraph:
    """Power-set construction over the subsets reachable from ``initial`` (default: all nodes)."""
    start = frozenset(G.nodes if initial is None else initial)
    labels = sorted({label for _, label, _ in G.edges})
    out = defaultdict(lambda: defaultdict(set))
    for s, label, t in G.edges:
        out[s][label].add(t)
    seen = {start: 0}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        S = queue.popleft()
        for label in labels:
            T = set()
            for s in S:
                T |= out[s].get(label, set())
            if not T:
                continue
            T = frozenset(T)
            if T not in seen:
                if len(seen) >= budget:
                    raise BudgetError(f"more than {budget} reachable subsets")
                seen[T] = len(seen)
                order.append(T)
                queue.append(T)
            edges.append((S, label, T))
    return LabeledGraph(order, edges, G.params, "subset")


def path_language_count(D: LabeledGraph, start, k: int) -> int:
    """Number of length-``k`` paths from ``start``; for a deterministic graph, distinct label strings."""
    out = D.out_edges()
    counts = {start: 1}
    for _ in range(k):
        nxt: dict = defaultdict(int)
        for v, c in counts.items():
            for _, t in out.get(v, ()):
                nxt[t] += c
        counts = nxt
    return sum(counts.values())


def label_language(graph: LabeledGraph, starts: Iterable, k: int) -> set[tuple]:
    """All label strings of length ``k`` generated from any node in ``starts``."""
    out = graph.out_edges()
    frontier = {((), s) for s in starts}
    for _ in range(k):
        frontier = {(word + (label,), t) for word, s in frontier for label, t in out.get(s, ())}
    return {word for word, _ in frontier}


def export_dot(graph: LabeledGraph, name: str = "G") -> str:
    """Graphviz text with nodes and edges in a stable order."""
    index = {v: i for i, v in enumerate(graph.nodes)}
    lines = [f"digraph {name} {{"]
    for v in graph.nodes:
        lines.append(f'  n{index[v]} [label="{node_name(v)}"];')
    for s, label, t in sorted(graph.edges, key=lambda e: (index[e[0]], _label_key(e[1]), index[e[2]])):
        lines.append(f'  n{index[s]} -> n{index[t]} [label="{node_name(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(graph: LabeledGraph) -> str:
    index = {v: i for i, v in enumerate(graph.nodes)}
    edges = sorted(graph.edges, key=lambda e: (index[e[0]], _label_key(e[1]), index[e[2]]))
    return json.dumps(
        {
            "nodes": [node_name(v) for v in graph.nodes],
            "edges": [{"s": node_name(s), "l": _json_label(label), "t": node_name(t)} for s, label, t in edges],
        }
    )


def _label_key(label):
    return (0, label, "") if isinstance(label, int) else (1, 0, node_name(label))


def _json_label(label):
    return label if isinstance(label, int) else node_name(label)
