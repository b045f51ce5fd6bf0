"""Rank-k hypergraph min-cut entropy model.

A hyperedge contributes its weight to a cut exactly when the chosen
vertex set splits its members.  Entropies are computed by exhaustive
enumeration over internal-vertex subsets with branch-and-bound pruning;
instances here are desk-scale, so exactness and simplicity win over a
flow reduction.  Models are immutable by convention and queries have no
shared state, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import EntropyVector, Subsystem, all_subsystems


@dataclass
class Hypergraph:
    """Vertices plus weighted hyperedges of two or more distinct members.

    Hyperedges with identical member sets are kept as separate entries;
    the cut weight is unchanged either way.
    """

    vertices: tuple[str, ...]
    external: dict[int, str]
    hyperedges: tuple[tuple[frozenset[str], Fraction], ...]

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
        for members, w in self.hyperedges:
            members = frozenset(members)
            if len(members) < 2:
                raise ValueError("hyperedges need at least two distinct members")
            if not members <= vertex_set:
                raise ValueError(f"hyperedge {sorted(members)} references unknown vertices")
            w = Fraction(w)
            if w < 0:
                raise ValueError("hyperedge weights must be nonnegative")
            edges.append((members, w))
        self.hyperedges = tuple(edges)

    @property
    def n(self) -> int:
        return len(self.external) - 1

    @property
    def rank(self) -> int:
        return max((len(members) for members, _ in self.hyperedges), default=0)


def hypergraph_cut_weight(hypergraph: Hypergraph, inside: set[str] | frozenset[str]) -> Fraction:
    """Total weight of hyperedges split by the vertex set `inside`."""
    inside = set(inside)
    total = Fraction(0)
    for members, w in hypergraph.hyperedges:
        if members & inside and members - inside:
            total += w
    return total


def hypergraph_entropy(hypergraph: Hypergraph, subsystem: Subsystem) -> Fraction:
    """Minimum cut weight over vertex sets containing exactly the subsystem's externals."""
    subsystem = frozenset(subsystem)
    if not subsystem or not subsystem <= set(range(1, hypergraph.n + 1)):
        raise ValueError(f"subsystem must be a nonempty subset of [{hypergraph.n}]")
    inside_fixed = {hypergraph.external[i] for i in subsystem}
    outside_fixed = {v for i, v in hypergraph.external.items() if i not in subsystem}
    internal = [v for v in hypergraph.vertices if v not in inside_fixed and v not in outside_fixed]

    edges = hypergraph.hyperedges
    best = hypergraph_cut_weight(hypergraph, inside_fixed)

    def settled_weight(assignment: dict[str, bool]) -> Fraction:
        # weight of edges already guaranteed split by the partial assignment
        total = Fraction(0)
        for members, w in edges:
            has_in = has_out = False
            for m in members:
                side = assignment.get(m)
                if side is True:
                    has_in = True
                elif side is False:
                    has_out = True
            if has_in and has_out:
                total += w
        return total

    assignment: dict[str, bool] = {v: True for v in inside_fixed}
    assignment.update({v: False for v in outside_fixed})

    def descend(index: int) -> None:
        nonlocal best
        if settled_weight(assignment) >= best:
            return
        if index == len(internal):
            best = min(best, settled_weight(assignment))
            return
        vertex = internal[index]
        for side in (False, True):
            assignment[vertex] = side
            descend(index + 1)
        del assignment[vertex]

    descend(0)
    return best


def hypergraph_entropy_vector(hypergraph: Hypergraph) -> EntropyVector:
    return EntropyVector(
        hypergraph.n,
        tuple(hypergraph_entropy(hypergraph, sub) for sub in all_subsystems(hypergraph.n)),
    )
