"""Weighted-graph min-cut entropy model.

Subsystem entropy is the minimum total weight of edges separating the
subsystem's external vertices from all other external vertices.  The
default solver is an augmenting-path max-flow over exact rationals; the
test suite cross-checks it against exhaustive bipartition enumeration.
Graphs are treated as immutable once built and every query is pure.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction

from .core import EntropyVector, Subsystem, all_subsystems


@dataclass
class WeightedGraph:
    """Undirected graph with nonnegative rational edge weights.

    `external` maps party indices 1..n+1 (purifier last) to vertex names;
    the mapping must be injective.  Parallel edges are allowed and sum;
    self-loops are rejected because they can never cross a cut.
    """

    vertices: tuple[str, ...]
    external: dict[int, str]
    edges: tuple[tuple[str, str, Fraction], ...]

    def __post_init__(self) -> None:
        self.vertices = tuple(self.vertices)
        self.external = dict(self.external)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        vertex_set = set(self.vertices)
        parties = sorted(self.external)
        if parties != list(range(1, len(parties) + 1)) or len(parties) < 2:
            raise ValueError("external mapping must cover parties 1..n+1 with n >= 1")
        if len(set(self.external.values())) != len(self.external):
            raise ValueError("external mapping must be injective")
        if not set(self.external.values()) <= vertex_set:
            raise ValueError("external mapping references unknown vertices")
        edges = []
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r} rejected")
            if u not in vertex_set or v not in vertex_set:
                raise ValueError(f"edge ({u!r}, {v!r}) references unknown vertices")
            w = Fraction(w)
            if w < 0:
                raise ValueError("edge weights must be nonnegative")
            edges.append((u, v, w))
        self.edges = tuple(edges)

    @property
    def n(self) -> int:
        return len(self.external) - 1


def _max_flow(capacity: dict[tuple[str, str], Fraction], source: str, sink: str) -> Fraction:
    """Edmonds-Karp max flow with exact rational capacities."""
    residual: dict[str, dict[str, Fraction]] = defaultdict(dict)
    for (u, v), cap in capacity.items():
        residual[u][v] = residual[u].get(v, Fraction(0)) + cap
        residual[v].setdefault(u, Fraction(0))
    flow = Fraction(0)
    while True:
        parent: dict[str, str] = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            node = queue.popleft()
            for nxt, cap in residual[node].items():
                if cap > 0 and nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        if sink not in parent:
            return flow
        bottleneck = None
        node = sink
        while node != source:
            prev = parent[node]
            cap = residual[prev][node]
            bottleneck = cap if bottleneck is None else min(bottleneck, cap)
            node = prev
        node = sink
        while node != source:
            prev = parent[node]
            residual[prev][node] -= bottleneck
            residual[node][prev] = residual[node].get(prev, Fraction(0)) + bottleneck
            node = prev
        flow += bottleneck


def graph_entropy(graph: WeightedGraph, subsystem: Subsystem) -> Fraction:
    """Min-cut weight separating the subsystem's externals from all others."""
    subsystem = frozenset(subsystem)
    if not subsystem or not subsystem <= set(range(1, graph.n + 1)):
        raise ValueError(f"subsystem must be a nonempty subset of [{graph.n}]")
    source_vertices = {graph.external[i] for i in subsystem}
    sink_vertices = {v for i, v in graph.external.items() if i not in subsystem}

    def merged(v: str) -> str:
        if v in source_vertices:
            return "\x00source"
        if v in sink_vertices:
            return "\x00sink"
        return v

    capacity: dict[tuple[str, str], Fraction] = defaultdict(Fraction)
    for u, v, w in graph.edges:
        mu, mv = merged(u), merged(v)
        if mu == mv:
            continue
        capacity[(mu, mv)] += w
        capacity[(mv, mu)] += w
    return _max_flow(dict(capacity), "\x00source", "\x00sink")


def graph_entropy_vector(graph: WeightedGraph) -> EntropyVector:
    return EntropyVector(graph.n, tuple(graph_entropy(graph, sub) for sub in all_subsystems(graph.n)))
