"""
2-step nilpotent Lie algebras L(G) defined by directed graphs.

Vertices X_1..X_m are generators, edge k from i to l sets [X_i, X_l] = Z_k.
Orientation only fixes bracket signs; the symplectic criterion looks at the
underlying undirected graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator

import networkx as nx

from nilpotent.algebra import LieAlgebra, decompose
from nilpotent.errors import BadIndex, DuplicateEdge, InvalidInput, NoEdges, SelfLoop
from nilpotent.forms import TypeIISystem, type_II_system


@dataclass(frozen=True)
class DirectedGraph:
    vertices: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, vertices: int, edges) -> "DirectedGraph":
        graph = cls(vertices, tuple((int(i), int(l)) for i, l in edges))
        graph.check()
        return graph

    def check(self) -> None:
        if not isinstance(self.vertices, int) or self.vertices < 1:
            raise InvalidInput(f"vertex count must be a positive integer, got {self.vertices!r}")
        if not self.edges:
            raise NoEdges("graph needs at least one edge")
        seen: set[frozenset[int]] = set()
        for i, l in self.edges:
            for v in (i, l):
                if not 1 <= v <= self.vertices:
                    raise BadIndex(f"edge endpoint {v} out of range 1..{self.vertices}")
            if i == l:
                raise SelfLoop(f"self-loop at vertex {i}")
            key = frozenset((i, l))
            if key in seen:
                raise DuplicateEdge(f"more than one edge between {min(i, l)} and {max(i, l)}")
            seen.add(key)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.vertices + 1))
        graph.add_edges_from(self.edges)
        return graph


def complete_graph(n: int) -> DirectedGraph:
    if n < 2:
        raise InvalidInput("complete graph needs at least 2 vertices")
    edges = tuple((i + 1, l + 1) for i, l in nx.complete_graph(n).edges)
    return DirectedGraph.from_edges(n, sorted(edges))


def graph_algebra(g: DirectedGraph, name: str | None = None) -> LieAlgebra:
    g.check()
    m = g.vertices
    table = {}
    for k, (i, l) in enumerate(g.edges):
        z = m + k + 1
        if i < l:
            table[(i, l)] = {z: 1}
        else:
            table[(l, i)] = {z: -1}
    return LieAlgebra.from_brackets(m + len(g.edges), table, name or f"L(G{m},{len(g.edges)})")


def pt_criterion(g: DirectedGraph) -> bool:
    """``|V| + |E|`` even and every component has at most as many edges as vertices."""
    g.check()
    if (g.vertices + len(g.edges)) % 2:
        return False
    graph = g.to_networkx()
    return all(
        graph.subgraph(component).number_of_edges() <= len(component)
        for component in nx.connected_components(graph)
    )


def free_2step(n: int) -> LieAlgebra:
    return graph_algebra(complete_graph(n), name=f"L(K{n})")


def free_2step_system(n: int) -> TypeIISystem:
    return type_II_system(decompose(free_2step(n)))


def expected_free_rank(n: int) -> int:
    return comb(n, 3)


def enumerate_graphs(max_vertices: int) -> Iterator[DirectedGraph]:
    """Simple graphs (edges i→l, i < l) with at least one edge on 2..max_vertices vertices."""
    for m in range(2, max_vertices + 1):
        candidates = list(itertools.combinations(range(1, m + 1), 2))
        for size in range(1, len(candidates) + 1):
            for edges in itertools.combinations(candidates, size):
                yield DirectedGraph.from_edges(m, edges)
