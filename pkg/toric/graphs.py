from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import networkx as nx

from lattice.intmatrix import IntMatrix
from lattice.normal_forms import normalize_design_matrix
from polytope.configuration import FaceDescriptor
from polytope.faces import face_from_members

from .scaled_model import ModelSpecError, ScaledModel, ones_scaling

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkedGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    state_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        vertices = tuple(str(vertex) for vertex in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ModelSpecError("Graph vertices must be distinct.")
        edges = frozenset(frozenset(str(end) for end in edge) for edge in self.edges)
        for edge in edges:
            if len(edge) != 2 or not edge <= set(vertices):
                raise ModelSpecError(f"Edge {sorted(edge)} does not join two existing vertices.")
        counts = tuple(int(count) for count in self.state_counts)
        if len(counts) != len(vertices):
            raise ModelSpecError("Need one state count per vertex.")
        if any(count < 2 for count in counts):
            raise ModelSpecError("Every vertex needs at least two states.")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "state_counts", counts)

    @classmethod
    def build(cls, vertices: Sequence, edges: Iterable[Sequence], state_counts: Sequence[int] | int = 2) -> MarkedGraph:
        if isinstance(state_counts, int):
            state_counts = [state_counts] * len(vertices)
        return cls(
            vertices=tuple(vertices),
            edges=frozenset(frozenset(edge) for edge in edges),
            state_counts=tuple(state_counts),
        )

    @classmethod
    def cycle(cls, length: int, states: int = 2) -> MarkedGraph:
        names = [f"x{i + 1}" for i in range(length)]
        return cls.build(names, [(names[i], names[(i + 1) % length]) for i in range(length)], states)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(edge) for edge in self.edges)
        return graph

    def joint_states(self) -> list[tuple[int, ...]]:
        return list(product(*(range(count) for count in self.state_counts)))

    def induced(self, kept: Iterable[str]) -> MarkedGraph:
        keep = set(kept)
        unknown = keep - set(self.vertices)
        if unknown:
            raise ModelSpecError(f"Unknown vertices {sorted(unknown)}.")
        order = [i for i, vertex in enumerate(self.vertices) if vertex in keep]
        return MarkedGraph(
            vertices=tuple(self.vertices[i] for i in order),
            edges=frozenset(edge for edge in self.edges if edge <= keep),
            state_counts=tuple(self.state_counts[i] for i in order),
        )


def maximal_cliques(G: MarkedGraph) -> list[tuple[int, ...]]:
    """Maximal cliques as sorted vertex positions, in a deterministic order."""
    position = {vertex: i for i, vertex in enumerate(G.vertices)}
    cliques = [tuple(sorted(position[v] for v in clique)) for clique in nx.find_cliques(G.to_networkx())]
    return sorted(cliques)


def clique_parametrization(G: MarkedGraph) -> IntMatrix:
    """Raw 0/1 matrix: one row per (maximal clique, clique state), one column per joint state."""
    states = G.joint_states()
    rows = []
    for clique in maximal_cliques(G):
        for marginal in product(*(range(G.state_counts[v]) for v in clique)):
            rows.append([1 if tuple(state[v] for v in clique) == marginal else 0 for state in states])
    return IntMatrix.from_rows(rows)


def graphical_model_matrix(G: MarkedGraph) -> ScaledModel:
    A = normalize_design_matrix(clique_parametrization(G))
    logger.debug("Graphical model on %s vertices: %sx%s design matrix.", len(G.vertices), A.rows, A.cols)
    return ScaledModel(A=A, c=ones_scaling(A.cols), provenance=f"graphical model on {list(G.vertices)}")


def induced_subgraph_columns(G: MarkedGraph, kept: Iterable[str]) -> list[int]:
    """Joint states that put every vertex outside ``kept`` in its first state."""
    keep = set(kept)
    outside = [i for i, vertex in enumerate(G.vertices) if vertex not in keep]
    return [j for j, state in enumerate(G.joint_states()) if all(state[i] == 0 for i in outside)]


def induced_subgraph_face(G: MarkedGraph, kept: Iterable[str], model: ScaledModel | None = None) -> FaceDescriptor:
    model = model or graphical_model_matrix(G)
    return face_from_members(model.configuration(), induced_subgraph_columns(G, kept))


@dataclass(frozen=True)
class BipartiteSupport:
    m: int
    k: int
    S: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        pairs = frozenset((int(i), int(j)) for i, j in self.S)
        if not pairs:
            raise ModelSpecError("Support must be nonempty.")
        for i, j in pairs:
            if not (0 <= i < self.m and 0 <= j < self.k):
                raise ModelSpecError(f"Pair {(i, j)} is outside [{self.m}] x [{self.k}].")
        object.__setattr__(self, "S", pairs)

    @classmethod
    def full(cls, m: int, k: int) -> BipartiteSupport:
        return cls(m, k, frozenset(product(range(m), range(k))))

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.S)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(("r", i) for i in range(self.m))
        graph.add_nodes_from(("c", j) for j in range(self.k))
        graph.add_edges_from((("r", i), ("c", j)) for i, j in self.S)
        return graph


def quasi_independence_matrix(B: BipartiteSupport) -> ScaledModel:
    """Columns are the pairs of S in lexicographic order with exponent e_i + e_j."""
    pairs = B.pairs()
    rows = [[1 if i == a else 0 for i, _ in pairs] for a in range(B.m)]
    rows += [[1 if j == b else 0 for _, j in pairs] for b in range(B.k)]
    A = normalize_design_matrix(IntMatrix.from_rows(rows))
    return ScaledModel(A=A, c=ones_scaling(A.cols), provenance=f"quasi-independence {B.m}x{B.k}, |S|={len(pairs)}")


def induced_support(B: BipartiteSupport, rows: Iterable[int], cols: Iterable[int]) -> BipartiteSupport:
    kept_rows, kept_cols = set(rows), set(cols)
    return BipartiteSupport(B.m, B.k, frozenset((i, j) for i, j in B.S if i in kept_rows and j in kept_cols))


def induced_support_columns(B: BipartiteSupport, rows: Iterable[int], cols: Iterable[int]) -> list[int]:
    kept = induced_support(B, rows, cols).S
    return [position for position, pair in enumerate(B.pairs()) if pair in kept]


def _chords(graph: nx.Graph, cycle: Sequence) -> int:
    on_cycle = set(cycle)
    length = len(cycle)
    consecutive = {frozenset((cycle[i], cycle[(i + 1) % length])) for i in range(length)}
    return sum(
        1
        for u, v in graph.subgraph(on_cycle).edges()
        if frozenset((u, v)) not in consecutive
    )


def is_doubly_chordal_bipartite(B: BipartiteSupport) -> bool:
    """Every cycle of length at least six in G_S has two or more chords."""
    graph = B.to_networkx()
    for cycle in nx.simple_cycles(graph):
        if len(cycle) >= 6 and _chords(graph, cycle) < 2:
            return False
    return True
