"""
Bead Calculus Engine - Bead Graphs
Vertex-oriented unitrivalent graphs with oriented, bead-labeled edges and colored legs,
their degrees, canonical forms and automorphisms
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from . import config
from .errors import BoundExceededError, GraphValidationError, ParseError
from .laurent import LaurentPoly

TRIVALENT = "trivalent"
LEG = "leg"
ONE = LaurentPoly.one()


@dataclass(frozen=True)
class Vertex:
    """Trivalent vertex (cyclic order of 3 flags) or leg (1 flag and a color)"""
    name: str
    kind: str
    flags: Tuple[str, ...]
    color: Optional[str] = None

    @property
    def is_leg(self) -> bool:
        return self.kind == LEG


@dataclass(frozen=True)
class Edge:
    """Edge oriented from flag e_b (tail) to flag e_t (head)"""
    tail: str
    head: str
    bead: LaurentPoly = ONE

    def reversed(self) -> "Edge":
        return Edge(self.head, self.tail, self.bead.involute())


@dataclass(frozen=True)
class BeadGraph:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        self._validate()

    def _validate(self):
        names = set()
        owner: Dict[str, str] = {}
        for vertex in self.vertices:
            if vertex.name in names:
                raise GraphValidationError(f"duplicate vertex name {vertex.name!r}")
            names.add(vertex.name)
            if vertex.kind == TRIVALENT:
                if len(vertex.flags) != 3:
                    raise GraphValidationError(
                        f"trivalent vertex {vertex.name!r} has {len(vertex.flags)} flags, expected 3")
            elif vertex.kind == LEG:
                if len(vertex.flags) != 1:
                    raise GraphValidationError(
                        f"leg {vertex.name!r} has {len(vertex.flags)} flags, expected 1")
                if not vertex.color:
                    raise GraphValidationError(f"leg {vertex.name!r} has no color")
            else:
                raise GraphValidationError(f"vertex {vertex.name!r} has unknown kind {vertex.kind!r}")
            for flag in vertex.flags:
                if flag in owner:
                    raise GraphValidationError(
                        f"flag {flag!r} belongs to both {owner[flag]!r} and {vertex.name!r}")
                owner[flag] = vertex.name

        used = set()
        for position, edge in enumerate(self.edges):
            if not isinstance(edge.bead, LaurentPoly):
                raise GraphValidationError(f"edge {position} bead is not a Laurent polynomial")
            if edge.tail == edge.head:
                raise GraphValidationError(f"edge {position} uses flag {edge.tail!r} twice")
            for flag in (edge.tail, edge.head):
                if flag not in owner:
                    raise GraphValidationError(f"edge {position} references unknown flag {flag!r}")
                if flag in used:
                    raise GraphValidationError(f"flag {flag!r} belongs to more than one edge")
                used.add(flag)
        missing = sorted(set(owner) - used)
        if missing:
            raise GraphValidationError(f"flags not on any edge: {', '.join(missing)}")

    # Lookups

    @cached_property
    def flag_vertex(self) -> Dict[str, str]:
        return {flag: vertex.name for vertex in self.vertices for flag in vertex.flags}

    @cached_property
    def vertex_index(self) -> Dict[str, int]:
        return {vertex.name: i for i, vertex in enumerate(self.vertices)}

    @cached_property
    def flag_edge(self) -> Dict[str, Tuple[int, int]]:
        """flag -> (edge index, 0 for tail / 1 for head)"""
        table = {}
        for i, edge in enumerate(self.edges):
            table[edge.tail] = (i, 0)
            table[edge.head] = (i, 1)
        return table

    def vertex(self, name: str) -> Vertex:
        return self.vertices[self.vertex_index[name]]

    def endpoints(self, edge_index: int) -> Tuple[str, str]:
        edge = self.edges[edge_index]
        return self.flag_vertex[edge.tail], self.flag_vertex[edge.head]

    def incident_edges(self, name: str) -> List[int]:
        return sorted({self.flag_edge[flag][0] for flag in self.vertex(name).flags})

    @property
    def trivalent_vertices(self) -> List[Vertex]:
        return [vertex for vertex in self.vertices if not vertex.is_leg]

    @property
    def legs(self) -> List[Vertex]:
        return [vertex for vertex in self.vertices if vertex.is_leg]

    def is_legless(self) -> bool:
        return not self.legs

    def is_beadless(self) -> bool:
        return all(edge.bead == 1 for edge in self.edges)

    def has_monomial_beads(self) -> bool:
        return all(edge.bead.is_unit_monomial() for edge in self.edges)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for vertex in self.vertices:
            graph.add_node(vertex.name, kind=vertex.kind, color=vertex.color)
        for i in range(len(self.edges)):
            tail, head = self.endpoints(i)
            graph.add_edge(tail, head, key=i)
        return graph

    # Rebuilding

    def replace(self, vertices: Optional[Iterable[Vertex]] = None,
                edges: Optional[Iterable[Edge]] = None) -> "BeadGraph":
        return BeadGraph(tuple(self.vertices if vertices is None else vertices),
                         tuple(self.edges if edges is None else edges))

    def with_beads(self, beads: Dict[int, LaurentPoly]) -> "BeadGraph":
        edges = [Edge(edge.tail, edge.head, beads.get(i, edge.bead)) for i, edge in enumerate(self.edges)]
        return self.replace(edges=edges)

    def __str__(self):
        parts = []
        for i, edge in enumerate(self.edges):
            tail, head = self.endpoints(i)
            bead = "" if edge.bead == 1 else f" [{edge.bead}]"
            parts.append(f"{tail}->{head}{bead}")
        return f"BeadGraph({len(self.vertices)} vertices: {', '.join(parts)})"


@dataclass(frozen=True)
class CanonicalForm:
    graph: BeadGraph
    sign: int


@dataclass(frozen=True)
class Automorphism:
    vertex_map: Dict[str, str]
    flag_map: Dict[str, str]
    sign: int

    def __hash__(self):
        return hash((tuple(sorted(self.flag_map.items())), self.sign))


# Degrees

def vassiliev_degree(g: BeadGraph) -> Fraction:
    return Fraction(len(g.vertices), 2)


def euler_degree(g: BeadGraph) -> int:
    """Shave univalent vertices until none remain; count the vertices still of valence 3"""
    endpoints = [g.endpoints(i) for i in range(len(g.edges))]
    degree = {vertex.name: 0 for vertex in g.vertices}
    incident: Dict[str, List[int]] = {vertex.name: [] for vertex in g.vertices}
    for i, (tail, head) in enumerate(endpoints):
        degree[tail] += 1
        degree[head] += 1
        incident[tail].append(i)
        if head != tail:
            incident[head].append(i)

    alive = set(range(len(endpoints)))
    stack = [name for name, value in degree.items() if value == 1]
    while stack:
        name = stack.pop()
        if degree[name] != 1:
            continue
        for i in incident[name]:
            if i not in alive:
                continue
            alive.discard(i)
            tail, head = endpoints[i]
            other = head if tail == name else tail
            degree[name] -= 1
            degree[other] -= 1
            if degree[other] == 1:
                stack.append(other)
    return sum(1 for value in degree.values() if value == 3)


def loop_degree(g: BeadGraph) -> int:
    """First Betti number E - V + components"""
    if not g.vertices:
        return 0
    return len(g.edges) - len(g.vertices) + nx.number_connected_components(g.to_networkx())


def components(g: BeadGraph) -> List[List[str]]:
    """Vertex names of each connected component, in graph order"""
    if not g.vertices:
        return []
    order = g.vertex_index
    parts = [sorted(part, key=order.__getitem__) for part in nx.connected_components(g.to_networkx())]
    return sorted(parts, key=lambda part: order[part[0]])


def reference_forest(g: BeadGraph) -> List[int]:
    """Deterministic breadth-first spanning forest (edge indices)"""
    adjacency: Dict[str, List[Tuple[int, str]]] = {vertex.name: [] for vertex in g.vertices}
    for i in range(len(g.edges)):
        tail, head = g.endpoints(i)
        adjacency[tail].append((i, head))
        adjacency[head].append((i, tail))
    seen = set()
    forest = []
    for vertex in g.vertices:
        if vertex.name in seen:
            continue
        seen.add(vertex.name)
        queue = [vertex.name]
        while queue:
            current = queue.pop(0)
            for i, other in sorted(adjacency[current]):
                if other not in seen:
                    seen.add(other)
                    forest.append(i)
                    queue.append(other)
    return sorted(forest)


def spanning_forests(g: BeadGraph) -> Iterator[List[int]]:
    """Every spanning forest, as sorted edge-index lists (small graphs only)"""
    size = len(g.vertices) - len(components(g))
    endpoints = [g.endpoints(i) for i in range(len(g.edges))]
    for chosen in combinations(range(len(g.edges)), size):
        forest = nx.Graph()
        forest.add_nodes_from(vertex.name for vertex in g.vertices)
        acyclic = True
        for i in chosen:
            tail, head = endpoints[i]
            if tail == head or nx.has_path(forest, tail, head):
                acyclic = False
                break
            forest.add_edge(tail, head)
        if acyclic:
            yield list(chosen)


# Local moves and constructors

def flip_vertex(g: BeadGraph, name: str) -> BeadGraph:
    """Reverse the cyclic order at one trivalent vertex (the AS move)"""
    vertices = [Vertex(v.name, v.kind, tuple(reversed(v.flags)), v.color) if v.name == name else v
                for v in g.vertices]
    if g.vertex(name).is_leg:
        raise GraphValidationError(f"{name!r} is a leg; only trivalent vertices carry an orientation")
    return g.replace(vertices=vertices)


def reverse_edge(g: BeadGraph, edge_index: int) -> BeadGraph:
    """Orientation reversal: swap the flags and involute the bead"""
    edges = list(g.edges)
    edges[edge_index] = edges[edge_index].reversed()
    return g.replace(edges=edges)


def _fresh(prefix: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    counter = 0
    while f"{prefix}{counter}" in taken:
        counter += 1
    return f"{prefix}{counter}"


def attach_leg(g: BeadGraph, edge_index: int, color: str = config.HAIR_COLOR) -> BeadGraph:
    """
    Split an edge by a new trivalent vertex carrying a leg. The new vertex is oriented
    (incoming segment, outgoing segment, leg); the first segment keeps the bead.
    """
    names = [vertex.name for vertex in g.vertices]
    hub = _fresh("h", names)
    leg = _fresh("l", names + [hub])
    edge = g.edges[edge_index]
    hub_vertex = Vertex(hub, TRIVALENT, (f"{hub}.in", f"{hub}.out", f"{hub}.leg"))
    leg_vertex = Vertex(leg, LEG, (f"{leg}.0",), color)
    edges = list(g.edges)
    edges[edge_index] = Edge(edge.tail, f"{hub}.in", edge.bead)
    edges.append(Edge(f"{hub}.out", edge.head, ONE))
    edges.append(Edge(f"{hub}.leg", f"{leg}.0", ONE))
    return g.replace(vertices=list(g.vertices) + [hub_vertex, leg_vertex], edges=edges)


def relabel(g: BeadGraph, prefix: str) -> BeadGraph:
    """Prefix every vertex and flag name"""
    vertices = tuple(Vertex(prefix + v.name, v.kind, tuple(prefix + f for f in v.flags), v.color)
                     for v in g.vertices)
    edges = tuple(Edge(prefix + e.tail, prefix + e.head, e.bead) for e in g.edges)
    return BeadGraph(vertices, edges)


def disjoint_union(*graphs: BeadGraph) -> BeadGraph:
    vertices: List[Vertex] = []
    edges: List[Edge] = []
    for index, g in enumerate(graphs):
        renamed = relabel(g, f"g{index}:")
        vertices.extend(renamed.vertices)
        edges.extend(renamed.edges)
    return BeadGraph(tuple(vertices), tuple(edges))


def scramble(g: BeadGraph, rng: random.Random) -> BeadGraph:
    """Isomorphic copy: renamed, reordered, rotated cyclic orders, random edge reversals"""
    vertex_names = {vertex.name: f"x{i}" for i, vertex in
                    enumerate(rng.sample(list(g.vertices), len(g.vertices)))}
    all_flags = [flag for vertex in g.vertices for flag in vertex.flags]
    flag_names = {flag: f"f{i}" for i, flag in enumerate(rng.sample(all_flags, len(all_flags)))}
    vertices = []
    for vertex in g.vertices:
        flags = tuple(flag_names[flag] for flag in vertex.flags)
        shift = rng.randrange(len(flags))
        vertices.append(Vertex(vertex_names[vertex.name], vertex.kind, flags[shift:] + flags[:shift], vertex.color))
    edges = []
    for edge in g.edges:
        renamed = Edge(flag_names[edge.tail], flag_names[edge.head], edge.bead)
        edges.append(renamed.reversed() if rng.random() < 0.5 else renamed)
    rng.shuffle(vertices)
    rng.shuffle(edges)
    return BeadGraph(tuple(vertices), tuple(edges))


def _bead(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, str):
        return LaurentPoly.parse(value)
    return LaurentPoly.constant(value)


def from_adjacency(kinds: Sequence[str], pairs: Sequence[Tuple[int, int]],
                   beads: Optional[Sequence] = None, colors: Optional[Dict[int, str]] = None) -> BeadGraph:
    """
    Build a graph from vertex kinds and an edge list of vertex-index pairs.
    Flags are named v<i>.<slot> in order of appearance; each edge runs from its first to its second vertex.
    """
    colors = colors or {}
    slots: Dict[int, List[str]] = {i: [] for i in range(len(kinds))}
    edges = []
    for position, (a, b) in enumerate(pairs):
        tail = f"v{a}.{len(slots[a])}"
        slots[a].append(tail)
        head = f"v{b}.{len(slots[b])}"
        slots[b].append(head)
        bead = _bead(beads[position]) if beads is not None else ONE
        edges.append(Edge(tail, head, bead))
    vertices = []
    for i, kind in enumerate(kinds):
        color = colors.get(i, config.HAIR_COLOR) if kind == LEG else None
        vertices.append(Vertex(f"v{i}", kind, tuple(slots[i]), color))
    return BeadGraph(tuple(vertices), tuple(edges))


def theta(beads: Sequence = (1, 1, 1)) -> BeadGraph:
    """Θ: two trivalent vertices joined by three parallel edges u -> v"""
    vertices = (Vertex("u", TRIVALENT, ("u.0", "u.1", "u.2")),
                Vertex("v", TRIVALENT, ("v.0", "v.1", "v.2")))
    edges = tuple(Edge(f"u.{i}", f"v.{i}", _bead(bead)) for i, bead in enumerate(beads))
    return BeadGraph(vertices, edges)


def strut(bead=1, colors: Tuple[str, str] = (config.HAIR_COLOR, config.HAIR_COLOR)) -> BeadGraph:
    vertices = (Vertex("x", LEG, ("x.0",), colors[0]), Vertex("y", LEG, ("y.0",), colors[1]))
    return BeadGraph(vertices, (Edge("x.0", "y.0", _bead(bead)),))


def vortex(colors: Tuple[str, str, str] = (config.HAIR_COLOR,) * 3, beads: Sequence = (1, 1, 1)) -> BeadGraph:
    """Y: one trivalent vertex with three legs, edges oriented outward"""
    vertices = [Vertex("c", TRIVALENT, ("c.0", "c.1", "c.2"))]
    vertices += [Vertex(f"l{i}", LEG, (f"l{i}.0",), color) for i, color in enumerate(colors)]
    edges = tuple(Edge(f"c.{i}", f"l{i}.0", _bead(bead)) for i, bead in enumerate(beads))
    return BeadGraph(tuple(vertices), edges)


def wheel(n: int, color: str = config.HAIR_COLOR) -> BeadGraph:
    """Wheel with n legs: a cycle of n trivalent vertices, one leg on each"""
    if n < 1:
        raise GraphValidationError("a wheel needs at least one leg")
    vertices = []
    edges = []
    for i in range(n):
        vertices.append(Vertex(f"h{i}", TRIVALENT, (f"h{i}.in", f"h{i}.out", f"h{i}.leg")))
        vertices.append(Vertex(f"l{i}", LEG, (f"l{i}.0",), color))
        edges.append(Edge(f"h{i}.out", f"h{(i + 1) % n}.in"))
        edges.append(Edge(f"h{i}.leg", f"l{i}.0"))
    return BeadGraph(tuple(vertices), tuple(edges))


def tadpole(color: str = config.HAIR_COLOR) -> BeadGraph:
    """One trivalent vertex with a loop and a leg"""
    vertices = (Vertex("c", TRIVALENT, ("c.0", "c.1", "c.2")), Vertex("l", LEG, ("l.0",), color))
    return BeadGraph(vertices, (Edge("c.0", "c.1"), Edge("c.2", "l.0")))


def dumbbell() -> BeadGraph:
    """Two loops joined by an edge; both ends are tadpoles"""
    vertices = (Vertex("u", TRIVALENT, ("u.0", "u.1", "u.2")), Vertex("v", TRIVALENT, ("v.0", "v.1", "v.2")))
    return BeadGraph(vertices, (Edge("u.0", "u.1"), Edge("u.2", "v.0"), Edge("v.1", "v.2")))


def tetrahedron(beads: Optional[Sequence] = None) -> BeadGraph:
    pairs = list(combinations(range(4), 2))
    return from_adjacency([TRIVALENT] * 4, pairs, beads)


# Canonical forms

def _kind_key(vertex: Vertex) -> Tuple[int, str]:
    return (0, vertex.color) if vertex.is_leg else (1, "")


def _orientation_sign(keys: Sequence) -> int:
    """+1 when the keys, read cyclically, are in ascending rotation; -1 otherwise"""
    inversions = sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])
    return -1 if inversions % 2 else 1


class _Canonizer:
    """Exhaustive search over traversal orderings (and, with holonomy, spanning trees)"""

    def __init__(self, g: BeadGraph, holonomy: bool):
        self.g = g
        self.holonomy = holonomy
        self.kinds = [_kind_key(vertex) for vertex in g.vertices]
        self.flag_owner = {flag: g.vertex_index[name] for flag, name in g.flag_vertex.items()}
        self.edges = []
        for edge in g.edges:
            self.edges.append((self.flag_owner[edge.tail], self.flag_owner[edge.head],
                               edge.bead.monomial_exponent(), edge.tail, edge.head))
        count = len(g.vertices)
        self.neighbours: List[List[int]] = [[] for _ in range(count)]
        self.between: Dict[Tuple[int, int], List[int]] = {}
        for i, (a, b, _, _, _) in enumerate(self.edges):
            self.between.setdefault((min(a, b), max(a, b)), []).append(i)
            if a != b:
                if b not in self.neighbours[a]:
                    self.neighbours[a].append(b)
                if a not in self.neighbours[b]:
                    self.neighbours[b].append(a)
        self.profiles = []
        for v in range(count):
            multiplicities = sorted(len(self.between.get((min(v, w), max(v, w)), []))
                                    for w in self.neighbours[v])
            loops = len(self.between.get((v, v), []))
            self.profiles.append((self.kinds[v], tuple(multiplicities), loops))

    def component(self, members: List[int], member_edges: List[int]) -> Tuple[tuple, int]:
        best_profile = min(self.profiles[v] for v in members)
        roots = [v for v in members if self.profiles[v] == best_profile]
        best = None
        signs = set()
        for root in roots:
            for order, parent in self._orderings(root, len(members)):
                for tree in self._trees(order, parent):
                    encoding, sign = self._encode(order, tree, member_edges)
                    if best is None or encoding < best:
                        best = encoding
                        signs = {sign}
                    elif encoding == best:
                        signs.add(sign)
        sign = signs.pop() if len(signs) == 1 else 0
        return best, sign

    def _orderings(self, root: int, size: int) -> Iterator[Tuple[List[int], Dict[int, int]]]:
        order = [root]
        label = {root: 0}
        parent: Dict[int, int] = {}

        def extend(position: int):
            if position == len(order):
                if len(order) == size:
                    yield list(order), dict(parent)
                return
            current = order[position]
            fresh = [w for w in self.neighbours[current] if w not in label]
            for arrangement in permutations(fresh):
                for w in arrangement:
                    label[w] = len(order)
                    order.append(w)
                    parent[w] = current
                yield from extend(position + 1)
                for w in arrangement:
                    del label[w]
                    del parent[w]
                    order.pop()

        yield from extend(0)

    def _trees(self, order: List[int], parent: Dict[int, int]) -> Iterator[Dict[int, int]]:
        """Choice of tree edge from each non-root vertex to its discoverer"""
        if not self.holonomy:
            yield {}
            return
        choices = [(w, self.between[(min(w, parent[w]), max(w, parent[w]))]) for w in order[1:]]

        def pick(index: int, chosen: Dict[int, int]):
            if index == len(choices):
                yield dict(chosen)
                return
            w, options = choices[index]
            for edge in options:
                chosen[w] = edge
                yield from pick(index + 1, chosen)
            del chosen[w]

        yield from pick(0, {})

    def _encode(self, order: List[int], tree: Dict[int, int], member_edges: List[int]):
        label = {v: i for i, v in enumerate(order)}
        # tree edges get exponent 0 after the move k -> k + p(tail) - p(head)
        potential = {order[0]: 0}
        for w in order[1:]:
            if not self.holonomy:
                break
            a, b, k, _, _ = self.edges[tree[w]]
            if b == w:
                potential[w] = potential[a] + k
            else:
                potential[w] = potential[b] - k

        items = []
        zero_loop = False
        for i in member_edges:
            a, b, k, tail_flag, head_flag = self.edges[i]
            if self.holonomy:
                k = k + potential[a] - potential[b]
            la, lb = label[a], label[b]
            first, second = tail_flag, head_flag
            if la > lb or (la == lb and k < 0):
                la, lb, k = lb, la, -k
                first, second = second, first
            if la == lb and k == 0:
                zero_loop = True
            items.append(((la, lb, k), first, second))
        items.sort(key=lambda item: item[0])

        flag_key = {}
        for position, (_, first, second) in enumerate(items):
            flag_key[first] = (position, 0)
            flag_key[second] = (position, 1)
        sign = 0 if zero_loop else 1
        if sign:
            for v in order:
                vertex = self.g.vertices[v]
                if not vertex.is_leg:
                    sign *= _orientation_sign([flag_key[flag] for flag in vertex.flags])
        encoding = (tuple(self.kinds[v] for v in order), tuple(item[0] for item in items))
        return encoding, sign


def _graph_from_encodings(encodings: Sequence[tuple]) -> BeadGraph:
    vertices_kind: List[Tuple[int, str]] = []
    edge_keys: List[Tuple[int, int, int]] = []
    for kinds, keys in encodings:
        offset = len(vertices_kind)
        vertices_kind.extend(kinds)
        edge_keys.extend((a + offset, b + offset, k) for a, b, k in keys)
    flags: Dict[int, List[str]] = {i: [] for i in range(len(vertices_kind))}
    edges = []
    for position, (a, b, k) in enumerate(edge_keys):
        tail, head = f"e{position}.0", f"e{position}.1"
        flags[a].append(tail)
        flags[b].append(head)
        edges.append(Edge(tail, head, LaurentPoly.monomial(k)))
    vertices = []
    for i, (kind_rank, color) in enumerate(vertices_kind):
        if kind_rank == 0:
            vertices.append(Vertex(f"v{i}", LEG, tuple(flags[i]), color))
        else:
            vertices.append(Vertex(f"v{i}", TRIVALENT, tuple(flags[i])))
    return BeadGraph(tuple(vertices), tuple(edges))


def canonicalize(g: BeadGraph, holonomy: bool = False, vertex_bound: Optional[int] = None) -> CanonicalForm:
    """
    Least encoding over all traversal orderings of each component (and, with holonomy,
    over the tree normal forms reachable by vertex holonomy moves).
    Sign is 0 when the graph is forced to vanish by AS.
    """
    bound = vertex_bound if vertex_bound is not None else config.VERTEX_BOUND
    if len(g.vertices) > bound:
        raise BoundExceededError(f"graph has {len(g.vertices)} vertices, bound is {bound}")
    if not g.has_monomial_beads():
        raise GraphValidationError("canonical forms need beads of the form t^k; expand beads first")
    if holonomy and not g.is_legless():
        raise GraphValidationError("holonomy normalization applies to legless graphs only")

    canonizer = _Canonizer(g, holonomy)
    parts = []
    sign = 1
    for names in components(g):
        members = [g.vertex_index[name] for name in names]
        member_set = set(members)
        member_edges = [i for i, edge in enumerate(canonizer.edges) if edge[0] in member_set]
        encoding, part_sign = canonizer.component(members, member_edges)
        parts.append(encoding)
        sign *= part_sign
    parts.sort()
    return CanonicalForm(_graph_from_encodings(parts), sign)


def canonical_key(g: BeadGraph) -> str:
    """Stable text key of a graph already in canonical labeling"""
    return serialize_graph(g, indent=None)


# Automorphisms

def automorphisms(g: BeadGraph, vertex_bound: Optional[int] = None) -> List[Automorphism]:
    """All incidence-, color- and bead-preserving self-maps with their orientation signs"""
    bound = vertex_bound if vertex_bound is not None else config.VERTEX_BOUND
    if len(g.vertices) > bound:
        raise BoundExceededError(f"graph has {len(g.vertices)} vertices, bound is {bound}")
    count = len(g.vertices)
    ends = [(g.vertex_index[g.flag_vertex[e.tail]], g.vertex_index[g.flag_vertex[e.head]]) for e in g.edges]
    between: Dict[Tuple[int, int], List[int]] = {}
    for i, (a, b) in enumerate(ends):
        between.setdefault((min(a, b), max(a, b)), []).append(i)

    def multiplicity(a: int, b: int) -> int:
        return len(between.get((min(a, b), max(a, b)), []))

    signature = [(_kind_key(v), sorted(multiplicity(i, j) for j in range(count) if multiplicity(i, j)),
                  multiplicity(i, i)) for i, v in enumerate(g.vertices)]

    vertex_maps: List[List[int]] = []
    image: List[int] = []
    used = set()

    def assign(i: int):
        if i == count:
            vertex_maps.append(list(image))
            return
        for candidate in range(count):
            if candidate in used or signature[candidate] != signature[i]:
                continue
            if all(multiplicity(i, j) == multiplicity(candidate, image[j]) for j in range(i)) \
                    and multiplicity(i, i) == multiplicity(candidate, candidate):
                image.append(candidate)
                used.add(candidate)
                assign(i + 1)
                used.discard(candidate)
                image.pop()

    assign(0)

    result = []
    for sigma in vertex_maps:
        groups = []
        for (a, b), members in sorted(between.items()):
            targets = between[(min(sigma[a], sigma[b]), max(sigma[a], sigma[b]))]
            options = {}
            for e in members:
                tail, head = ends[e]
                bead = g.edges[e].bead
                allowed = []
                for target in targets:
                    t_tail, t_head = ends[target]
                    target_bead = g.edges[target].bead
                    if (sigma[tail], sigma[head]) == (t_tail, t_head) and bead == target_bead:
                        allowed.append((target, False))
                    if (sigma[tail], sigma[head]) == (t_head, t_tail) and bead.involute() == target_bead:
                        allowed.append((target, True))
                options[e] = allowed
            groups.append((members, options))
        for edge_map in _edge_bijections(groups):
            flag_map = {}
            for e, (target, flipped) in edge_map.items():
                source_edge, target_edge = g.edges[e], g.edges[target]
                if flipped:
                    flag_map[source_edge.tail] = target_edge.head
                    flag_map[source_edge.head] = target_edge.tail
                else:
                    flag_map[source_edge.tail] = target_edge.tail
                    flag_map[source_edge.head] = target_edge.head
            sign = 1
            for i, vertex in enumerate(g.vertices):
                if vertex.is_leg:
                    continue
                target_flags = g.vertices[sigma[i]].flags
                sign *= _orientation_sign([target_flags.index(flag_map[f]) for f in vertex.flags])
            vertex_map = {g.vertices[i].name: g.vertices[sigma[i]].name for i in range(count)}
            result.append(Automorphism(vertex_map, flag_map, sign))
    return result


def _edge_bijections(groups) -> Iterator[Dict[int, Tuple[int, bool]]]:
    chosen: Dict[int, Tuple[int, bool]] = {}
    taken = set()
    pending = [(e, options) for members, options in groups for e in members]

    def place(index: int):
        if index == len(pending):
            yield dict(chosen)
            return
        e, options = pending[index]
        for target, flipped in options[e]:
            if target in taken:
                continue
            taken.add(target)
            chosen[e] = (target, flipped)
            yield from place(index + 1)
            taken.discard(target)
            del chosen[e]

    yield from place(0)


# Graph documents

def graph_to_document(g: BeadGraph) -> Dict:
    vertices = []
    for vertex in g.vertices:
        record = {"name": vertex.name, "kind": vertex.kind, "flags": list(vertex.flags)}
        if vertex.is_leg:
            record["color"] = vertex.color
        vertices.append(record)
    edges = [{"flags": [edge.tail, edge.head], "bead": str(edge.bead)} for edge in g.edges]
    return {"vertices": vertices, "edges": edges}


def _require(condition: bool, message: str, path: str, source: Optional[str]):
    if not condition:
        raise ParseError(message, position=path, source=source)


def graph_from_document(document, path: str = "graph", source: Optional[str] = None) -> BeadGraph:
    _require(isinstance(document, dict), "graph document must be an object", path, source)
    _require(isinstance(document.get("vertices"), list), "missing 'vertices' list", path, source)
    _require(isinstance(document.get("edges"), list), "missing 'edges' list", path, source)

    vertices = []
    for i, record in enumerate(document["vertices"]):
        where = f"{path}.vertices[{i}]"
        _require(isinstance(record, dict), "vertex must be an object", where, source)
        _require(isinstance(record.get("name"), str), "vertex needs a string 'name'", where, source)
        kind = record.get("kind")
        _require(kind in (TRIVALENT, LEG), f"unknown vertex kind {kind!r}", where, source)
        flags = record.get("flags")
        _require(isinstance(flags, list) and all(isinstance(f, str) for f in flags),
                 "vertex needs a list of flag names", where, source)
        expected = 3 if kind == TRIVALENT else 1
        _require(len(flags) == expected,
                 f"{kind} vertex needs {expected} flag(s), got {len(flags)}", f"{where}.flags", source)
        color = record.get("color", config.HAIR_COLOR if kind == LEG else None)
        vertices.append(Vertex(record["name"], kind, tuple(flags), color if kind == LEG else None))

    edges = []
    for i, record in enumerate(document["edges"]):
        where = f"{path}.edges[{i}]"
        _require(isinstance(record, dict), "edge must be an object", where, source)
        flags = record.get("flags")
        _require(isinstance(flags, list) and len(flags) == 2 and all(isinstance(f, str) for f in flags),
                 "edge needs a [tail, head] flag pair", where, source)
        bead_text = record.get("bead", "1")
        if isinstance(bead_text, int):
            bead_text = str(bead_text)
        _require(isinstance(bead_text, str), "bead must be a Laurent polynomial string", f"{where}.bead", source)
        try:
            bead = LaurentPoly.parse(bead_text)
        except ParseError as exc:
            raise ParseError(exc.message, position=f"{where}.bead {exc.position}", source=source) from exc
        edges.append(Edge(flags[0], flags[1], bead))

    try:
        return BeadGraph(tuple(vertices), tuple(edges))
    except GraphValidationError as exc:
        raise ParseError(str(exc), position=path, source=source) from exc


def load_json(text: str, source: Optional[str] = None):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, position=f"line {exc.lineno} column {exc.colno}", source=source) from exc


def parse_graph(text: str, source: Optional[str] = None) -> BeadGraph:
    return graph_from_document(load_json(text, source), source=source)


def serialize_graph(g: BeadGraph, indent: Optional[int] = 2) -> str:
    return json.dumps(graph_to_document(g), indent=indent)
