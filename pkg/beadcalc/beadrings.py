"""
Bead Calculus Engine - Bead Rings
The bead ring of a graph in three presentations: flag generators (Λ_G), edge
generators (Λ^V_G) and the group ring of H^1(G, Z), with canonical maps between them
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from . import config
from .errors import RingPresentationError
from .graphs import BeadGraph, components, reference_forest

FLAG = "flag"
EDGE = "edge"
H1 = "h1"


@dataclass(frozen=True)
class RingPresentation:
    """Laurent monomial ring on the generators modulo relations monomial = 1"""
    kind: str
    generators: Tuple[str, ...]
    relations: Tuple[Tuple[int, ...], ...]

    def monomial(self, exponents: Mapping[str, int]) -> "RingMonomial":
        unknown = set(exponents) - set(self.generators)
        if unknown:
            raise RingPresentationError(f"unknown generators: {', '.join(sorted(unknown))}")
        return RingMonomial(tuple(exponents.get(name, 0) for name in self.generators))

    def one(self) -> "RingMonomial":
        return RingMonomial((0,) * len(self.generators))

    def to_document(self) -> Dict:
        return {
            "kind": self.kind,
            "generators": list(self.generators),
            "relations": [list(relation) for relation in self.relations],
            "rank": quotient_rank(self),
        }


@dataclass(frozen=True)
class RingMonomial:
    exponents: Tuple[int, ...]

    def __mul__(self, other: "RingMonomial") -> "RingMonomial":
        if len(self.exponents) != len(other.exponents):
            raise RingPresentationError("monomials over different generator sets")
        return RingMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, power: int) -> "RingMonomial":
        return RingMonomial(tuple(a * power for a in self.exponents))

    def inverse(self) -> "RingMonomial":
        return self ** -1

    def is_one(self) -> bool:
        return not any(self.exponents)

    def __str__(self):
        parts = [f"t{i}^{a}" for i, a in enumerate(self.exponents) if a]
        return "*".join(parts) if parts else "1"


def _require_legless(g: BeadGraph, kind: str):
    if not g.is_legless():
        raise RingPresentationError(f"the {kind} presentation needs a graph without legs")


def _require_structure(g: BeadGraph):
    if not g.trivalent_vertices:
        if config.ZERO_VERTEX_EDGE_RING == "reject":
            raise RingPresentationError("graph has no trivalent vertex")


def flag_ring(g: BeadGraph) -> RingPresentation:
    """Λ_G: one generator per flag, t_eb * t_et = 1 per edge and the product around each trivalent vertex = 1"""
    if not g.vertices:
        raise RingPresentationError("graph has no vertices")
    generators = tuple(flag for vertex in g.vertices for flag in vertex.flags)
    position = {flag: i for i, flag in enumerate(generators)}
    relations = []
    for edge in g.edges:
        row = [0] * len(generators)
        row[position[edge.tail]] += 1
        row[position[edge.head]] += 1
        relations.append(tuple(row))
    for vertex in g.trivalent_vertices:
        row = [0] * len(generators)
        for flag in vertex.flags:
            row[position[flag]] += 1
        relations.append(tuple(row))
    return RingPresentation(FLAG, generators, tuple(relations))


def edge_generators(g: BeadGraph) -> Tuple[str, ...]:
    return tuple(f"e{i}" for i in range(len(g.edges)))


def edge_ring(g: BeadGraph) -> RingPresentation:
    """Λ^V_G: one generator per edge, one relation per trivalent vertex (+1 leaving, -1 arriving)"""
    _require_legless(g, EDGE)
    _require_structure(g)
    relations = []
    for vertex in g.trivalent_vertices:
        row = [0] * len(g.edges)
        for flag in vertex.flags:
            index, end = g.flag_edge[flag]
            row[index] += 1 if end == 0 else -1
        relations.append(tuple(row))
    return RingPresentation(EDGE, edge_generators(g), tuple(relations))


def h1_ring(g: BeadGraph) -> RingPresentation:
    """Group ring of H^1(G, Z), free on the edges outside the reference spanning forest"""
    _require_legless(g, H1)
    _require_structure(g)
    tree = set(reference_forest(g))
    generators = tuple(f"e{i}" for i in range(len(g.edges)) if i not in tree)
    return RingPresentation(H1, generators, ())


@lru_cache(maxsize=4096)
def _lattice_basis(relations: Tuple[Tuple[int, ...], ...], width: int) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    """Echelon basis of the relation lattice: (pivot row, column), lowest pivot first"""
    nonzero = [relation for relation in relations if any(relation)]
    if not nonzero or width == 0:
        return ()
    # padding with zero columns makes the elimination visit every row
    columns = nonzero + [(0,) * width] * width
    matrix = Matrix(width, len(columns), lambda i, j: columns[j][i])
    basis = hermite_normal_form(matrix)
    echelon = []
    for j in range(basis.cols):
        column = [int(basis[i, j]) for i in range(basis.rows)]
        if not any(column):
            continue
        pivot = max(i for i, value in enumerate(column) if value)
        if column[pivot] < 0:
            column = [-value for value in column]
        echelon.append((pivot, tuple(column)))
    echelon.sort(key=lambda item: -item[0])
    pivots = [pivot for pivot, _ in echelon]
    if len(set(pivots)) != len(pivots):
        raise RingPresentationError("relation lattice basis is not in echelon form")
    return tuple(echelon)


def lattice_rank(p: RingPresentation) -> int:
    return len(_lattice_basis(p.relations, len(p.generators)))


def quotient_rank(p: RingPresentation) -> int:
    """Rank of the free part of the exponent group Z^generators / relations"""
    return len(p.generators) - lattice_rank(p)


def normal_form(m: RingMonomial, p: RingPresentation) -> RingMonomial:
    """Unique representative of m modulo the relation lattice"""
    if len(m.exponents) != len(p.generators):
        raise RingPresentationError(
            f"monomial has {len(m.exponents)} exponents, presentation has {len(p.generators)} generators")
    vector = list(m.exponents)
    for pivot, column in _lattice_basis(p.relations, len(p.generators)):
        quotient = vector[pivot] // column[pivot]
        if quotient:
            vector = [value - quotient * entry for value, entry in zip(vector, column)]
    return RingMonomial(tuple(vector))


# Canonical isomorphisms

def flag_to_edge(m: RingMonomial, g: BeadGraph) -> RingMonomial:
    """t_eb -> t_e, t_et -> t_e^-1"""
    source = flag_ring(g)
    _require_legless(g, EDGE)
    exponents = [0] * len(g.edges)
    for flag, value in zip(source.generators, m.exponents):
        index, end = g.flag_edge[flag]
        exponents[index] += value if end == 0 else -value
    return RingMonomial(tuple(exponents))


def edge_to_flag(m: RingMonomial, g: BeadGraph) -> RingMonomial:
    """t_e -> t_eb"""
    target = flag_ring(g)
    position = {flag: i for i, flag in enumerate(target.generators)}
    exponents = [0] * len(target.generators)
    for edge, value in zip(g.edges, m.exponents):
        exponents[position[edge.tail]] += value
    return RingMonomial(tuple(exponents))


def _potentials(g: BeadGraph, exponents: List[int], tree: List[int]) -> Dict[str, int]:
    """Vertex potentials p with k + p(tail) - p(head) = 0 on every tree edge"""
    adjacency: Dict[str, List[int]] = {vertex.name: [] for vertex in g.vertices}
    for i in tree:
        tail, head = g.endpoints(i)
        adjacency[tail].append(i)
        adjacency[head].append(i)
    potential: Dict[str, int] = {}
    for vertex in g.vertices:
        if vertex.name in potential:
            continue
        potential[vertex.name] = 0
        queue = [vertex.name]
        while queue:
            current = queue.pop(0)
            for i in adjacency[current]:
                tail, head = g.endpoints(i)
                if tail == current and head not in potential:
                    potential[head] = exponents[i] + potential[tail]
                    queue.append(head)
                elif head == current and tail not in potential:
                    potential[tail] = potential[head] - exponents[i]
                    queue.append(tail)
    return potential


def check_forest(g: BeadGraph, forest: Sequence[int]):
    """A spanning forest has V - C edges and no cycle"""
    if not g.vertices:
        return
    chosen = nx.MultiGraph()
    chosen.add_nodes_from(vertex.name for vertex in g.vertices)
    chosen.add_edges_from(g.endpoints(i) for i in forest)
    if len(set(forest)) != len(g.vertices) - len(components(g)) or not nx.is_forest(chosen):
        raise RingPresentationError(f"edges {sorted(forest)} do not form a spanning forest")


def cohomology_class(g: BeadGraph, exponents: List[int], forest: Optional[Sequence[int]] = None) -> List[int]:
    """Exponent cochain pushed off a spanning forest (tree edges become 0); reference forest by default"""
    if forest is None:
        tree = reference_forest(g)
    else:
        check_forest(g, forest)
        tree = list(forest)
    potential = _potentials(g, exponents, tree)
    reduced = []
    for i, value in enumerate(exponents):
        tail, head = g.endpoints(i)
        reduced.append(value + potential[tail] - potential[head])
    return reduced


def edge_to_h1(m: RingMonomial, g: BeadGraph) -> RingMonomial:
    target = h1_ring(g)
    reduced = cohomology_class(g, list(m.exponents))
    return RingMonomial(tuple(reduced[int(name[1:])] for name in target.generators))


def h1_to_edge(m: RingMonomial, g: BeadGraph) -> RingMonomial:
    source = h1_ring(g)
    exponents = [0] * len(g.edges)
    for name, value in zip(source.generators, m.exponents):
        exponents[int(name[1:])] = value
    return RingMonomial(tuple(exponents))


def flag_to_h1(m: RingMonomial, g: BeadGraph) -> RingMonomial:
    return edge_to_h1(flag_to_edge(m, g), g)


def h1_to_flag(m: RingMonomial, g: BeadGraph) -> RingMonomial:
    return edge_to_flag(h1_to_edge(m, g), g)


def presentation(g: BeadGraph, kind: str) -> RingPresentation:
    builders = {FLAG: flag_ring, EDGE: edge_ring, H1: h1_ring}
    if kind not in builders:
        raise RingPresentationError(f"unknown presentation kind {kind!r}")
    return builders[kind](g)
