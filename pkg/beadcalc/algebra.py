"""
Bead Calculus Engine - Diagram Algebras
The quotient spaces A(*), A(φ), A(Λ) and the hairy space A(*_L): normalization of linear
combinations, holonomy moves, IHX relations and exact graded ranks
"""

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import config
from .beadrings import RingMonomial, cohomology_class, edge_ring, normal_form
from .errors import (BoundExceededError, DegreeError, GraphValidationError,
                     SpaceMismatchError, WindowError)
from .graphs import (LEG, TRIVALENT, BeadGraph, Vertex, automorphisms, canonical_key,
                     canonicalize, disjoint_union, euler_degree, from_adjacency, spanning_forests)
from .laurent import LaurentPoly
from .runlog import RunLog


class Space(str, Enum):
    STAR = "star"
    PHI = "phi"
    LAMBDA = "lambda"
    HAIRY = "hairy"


BEADLESS_SPACES = (Space.STAR, Space.PHI, Space.HAIRY)


def check_space(g: BeadGraph, space: Space):
    """Raise SpaceMismatchError when g cannot live in the space"""
    if space in (Space.PHI, Space.LAMBDA) and not g.is_legless():
        raise SpaceMismatchError(f"{space.value} diagrams have no legs")
    if space == Space.STAR and any(leg.color != config.HAIR_COLOR for leg in g.legs):
        raise SpaceMismatchError(f"star diagrams have every leg colored {config.HAIR_COLOR!r}")
    if space in BEADLESS_SPACES:
        if not all(edge.bead.is_constant() for edge in g.edges):
            raise SpaceMismatchError(f"{space.value} diagrams are beadless")


def infer_space(graphs: Sequence[BeadGraph]) -> Space:
    beaded = any(not edge.bead.is_constant() for g in graphs for edge in g.edges)
    legged = any(not g.is_legless() for g in graphs)
    if beaded and legged:
        raise SpaceMismatchError("a combination mixes beaded edges with legs")
    if beaded:
        return Space.LAMBDA
    if not legged:
        return Space.PHI
    if all(leg.color == config.HAIR_COLOR for g in graphs for leg in g.legs):
        return Space.STAR
    return Space.HAIRY


class DiagramElement:
    """Finite rational combination of canonical graphs in one space; zero and AS-degenerate terms never stored"""

    __slots__ = ("space", "_terms")

    def __init__(self, space: Space, terms: Optional[Dict[BeadGraph, Fraction]] = None):
        self.space = Space(space)
        cleaned = {g: Fraction(c) for g, c in (terms or {}).items() if c}
        self._terms: Dict[BeadGraph, Fraction] = dict(
            sorted(cleaned.items(), key=lambda item: canonical_key(item[0])))

    @classmethod
    def zero(cls, space: Space) -> "DiagramElement":
        return cls(space)

    @property
    def terms(self) -> Dict[BeadGraph, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[BeadGraph, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, g: BeadGraph) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _same_space(self, other: "DiagramElement"):
        if self.space != other.space:
            raise SpaceMismatchError(f"cannot combine {self.space.value} and {other.space.value} elements")

    def __add__(self, other):
        if not isinstance(other, DiagramElement):
            return NotImplemented
        self._same_space(other)
        merged = dict(self._terms)
        for g, c in other._terms.items():
            merged[g] = merged.get(g, Fraction(0)) + c
        return DiagramElement(self.space, merged)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "DiagramElement":
        factor = Fraction(factor)
        return DiagramElement(self.space, {g: c * factor for g, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiagramElement):
            return self.product(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def product(self, other: "DiagramElement") -> "DiagramElement":
        """Disjoint union, extended bilinearly"""
        self._same_space(other)
        raw = [(c1 * c2, disjoint_union(g1, g2)) for g1, c1 in self.items() for g2, c2 in other.items()]
        return normalize(raw, self.space)

    def euler_degrees(self) -> List[int]:
        return sorted({euler_degree(g) for g in self._terms})

    def __eq__(self, other):
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    __hash__ = None

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*{g}" for g, c in self._terms.items())

    def __repr__(self):
        return f"DiagramElement({self.space.value}, {len(self._terms)} terms)"


RawCombination = Union[DiagramElement, BeadGraph, Iterable[Tuple[Union[int, Fraction, str], BeadGraph]]]


# Normalization

def expand_beads(g: BeadGraph) -> List[Tuple[Fraction, BeadGraph]]:
    """Linearity: one term per choice of monomial on each edge"""
    choices = [list(edge.bead.items()) for edge in g.edges]
    expanded = []
    for picked in product(*choices):
        coefficient = Fraction(1)
        beads = {}
        for i, (exponent, value) in enumerate(picked):
            coefficient *= value
            beads[i] = LaurentPoly.monomial(exponent)
        expanded.append((coefficient, g.with_beads(beads)))
    return expanded


@lru_cache(maxsize=65536)
def _canonical(g: BeadGraph, holonomy: bool):
    return canonicalize(g, holonomy=holonomy)


def raw_terms(raw: RawCombination) -> List[Tuple[Fraction, BeadGraph]]:
    if isinstance(raw, BeadGraph):
        return [(Fraction(1), raw)]
    if isinstance(raw, DiagramElement):
        return [(c, g) for g, c in raw.items()]
    return [(Fraction(c), g) for c, g in raw]


def normalize(raw: RawCombination, space: Optional[Space] = None) -> DiagramElement:
    """
    Collect a formal combination into canonical form: Linearity, Orientation Reversal,
    Holonomy (A(Λ) only), Automorphisms and AS.
    """
    if isinstance(raw, DiagramElement):
        if space is not None and Space(space) != raw.space:
            raise SpaceMismatchError(f"element lives in {raw.space.value}, not {Space(space).value}")
        space = raw.space
    terms = raw_terms(raw)
    space = Space(space) if space is not None else infer_space([g for _, g in terms])
    holonomy = space == Space.LAMBDA
    collected: Dict[BeadGraph, Fraction] = {}
    for coefficient, g in terms:
        check_space(g, space)
        for weight, expanded in expand_beads(g):
            form = _canonical(expanded, holonomy)
            if form.sign == 0:
                continue
            collected[form.graph] = collected.get(form.graph, Fraction(0)) + coefficient * weight * form.sign
    return DiagramElement(space, collected)


# Holonomy

def holonomy_move(g: BeadGraph, vertex: str, power: int = 1) -> BeadGraph:
    """Multiply the beads at a trivalent vertex by t^power on outgoing edges and t^-power on incoming ones"""
    if g.vertex(vertex).is_leg:
        raise GraphValidationError(f"{vertex!r} is a leg; holonomy moves act at trivalent vertices")
    beads = {}
    for flag in g.vertex(vertex).flags:
        index, end = g.flag_edge[flag]
        current = beads.get(index, g.edges[index].bead)
        beads[index] = current.shift(power if end == 0 else -power)
    return g.with_beads(beads)


def _exponents(g: BeadGraph) -> List[int]:
    if not g.has_monomial_beads():
        raise GraphValidationError("holonomy normal form needs beads of the form t^k")
    return [edge.bead.monomial_exponent() for edge in g.edges]


def holonomy_normal_form(g: BeadGraph, forest: Optional[Sequence[int]] = None) -> BeadGraph:
    """Push every bead off the given spanning forest (reference forest by default)"""
    reduced = cohomology_class(g, _exponents(g), forest)
    return g.with_beads({i: LaurentPoly.monomial(k) for i, k in enumerate(reduced)})


# Generator enumeration

def _multigraphs(degrees: Sequence[int]) -> Iterator[Dict[Tuple[int, int], int]]:
    """Multiplicity tables of loopy multigraphs with the given degrees (a loop counts twice)"""
    n = len(degrees)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    remaining = list(degrees)
    chosen: Dict[Tuple[int, int], int] = {}

    def place(index: int):
        if index == len(pairs):
            if not any(remaining):
                yield dict(chosen)
            return
        i, j = pairs[index]
        top = remaining[i] // 2 if i == j else min(remaining[i], remaining[j])
        for count in range(top, -1, -1):
            remaining[i] -= count
            remaining[j] -= count
            if j != n - 1 or remaining[i] == 0:
                if count:
                    chosen[(i, j)] = count
                yield from place(index + 1)
                chosen.pop((i, j), None)
            remaining[i] += count
            remaining[j] += count

    yield from place(0)


def _leg_distributions(trivalent: int, legs: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """(legs hanging off each trivalent vertex, number of struts)"""
    for struts in range(legs // 2 + 1):
        attached = legs - 2 * struts
        for spread in product(range(4), repeat=trivalent):
            if sum(spread) == attached:
                yield spread, struts


def _structure(trivalent: int, table: Dict[Tuple[int, int], int],
               spread: Sequence[int], struts: int) -> BeadGraph:
    kinds = [TRIVALENT] * trivalent
    pairs: List[Tuple[int, int]] = []
    for (i, j), count in sorted(table.items()):
        pairs.extend([(i, j)] * count)
    for i, hanging in enumerate(spread):
        for _ in range(hanging):
            kinds.append(LEG)
            pairs.append((i, len(kinds) - 1))
    for _ in range(struts):
        kinds.extend([LEG, LEG])
        pairs.append((len(kinds) - 2, len(kinds) - 1))
    return from_adjacency(kinds, pairs)


def _shape(g: BeadGraph) -> nx.Graph:
    shape = nx.Graph()
    for vertex in g.vertices:
        loops = sum(1 for i in g.incident_edges(vertex.name) if len(set(g.endpoints(i))) == 1)
        shape.add_node(vertex.name, label=f"{vertex.kind}:{vertex.color or ''}:{loops}")
    for i in range(len(g.edges)):
        tail, head = g.endpoints(i)
        if tail == head:
            continue
        if shape.has_edge(tail, head):
            shape[tail][head]["mult"] += 1
        else:
            shape.add_edge(tail, head, mult=1)
    return shape


def _distinct_shapes(graphs: Iterable[BeadGraph]) -> List[BeadGraph]:
    buckets: Dict[str, List[Tuple[nx.Graph, BeadGraph]]] = {}
    kept = []
    for g in graphs:
        shape = _shape(g)
        key = nx.weisfeiler_lehman_graph_hash(shape, node_attr="label", edge_attr="mult")
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(shape, other,
                                node_match=lambda a, b: a["label"] == b["label"],
                                edge_match=lambda a, b: a["mult"] == b["mult"]) for other, _ in bucket):
            continue
        bucket.append((shape, g))
        kept.append(g)
    return kept


def _check_bounds(euler_deg: int, bead_window: int, space: Space, legs: int):
    if euler_deg < 0 or bead_window < 0 or legs < 0:
        raise DegreeError("degrees, windows and leg counts are non-negative")
    if euler_deg > config.EULER_BOUND:
        raise BoundExceededError(f"Euler degree {euler_deg} exceeds the bound {config.EULER_BOUND}")
    if legs and space in (Space.PHI, Space.LAMBDA):
        raise SpaceMismatchError(f"{space.value} diagrams have no legs")
    if space == Space.HAIRY:
        raise SpaceMismatchError("graded ranks are computed for the star, phi and lambda spaces")


def structures(euler_deg: int, legs: int = 0) -> List[BeadGraph]:
    """One beadless graph per isomorphism class of unitrivalent graphs with the given Euler degree and legs"""
    found = []
    for trivalent in range(euler_deg, euler_deg + legs + 1):
        if (3 * trivalent + legs) % 2:
            continue
        for spread, struts in _leg_distributions(trivalent, legs):
            degrees = [3 - hanging for hanging in spread]
            for table in _multigraphs(degrees):
                g = _structure(trivalent, table, spread, struts)
                if euler_degree(g) == euler_deg:
                    found.append(g)
    return _distinct_shapes(found)


def _in_window(g: BeadGraph, bead_window: int) -> bool:
    return all(abs(edge.bead.monomial_exponent()) <= bead_window for edge in g.edges)


def _representatives(euler_deg: int, bead_window: int, space: Space, legs: int) -> List[Tuple[BeadGraph, int]]:
    """Canonical graphs (with their AS signs, possibly 0) spanning the graded piece"""
    shapes = structures(euler_deg, legs)
    seen: Dict[BeadGraph, int] = {}
    for shape in shapes:
        if space != Space.LAMBDA:
            form = _canonical(shape, False)
            seen.setdefault(form.graph, form.sign)
            continue
        for forest in spanning_forests(shape):
            free = [i for i in range(len(shape.edges)) if i not in forest]
            for values in product(range(-bead_window, bead_window + 1), repeat=len(free)):
                beaded = shape.with_beads({i: LaurentPoly.monomial(k) for i, k in zip(free, values)})
                form = _canonical(beaded, True)
                if _in_window(form.graph, bead_window):
                    seen.setdefault(form.graph, form.sign)
    return sorted(seen.items(), key=lambda item: canonical_key(item[0]))


def enumerate_generators(euler_deg: int, bead_window: int = 0, space: Space = Space.PHI,
                         legs: int = 0) -> List[BeadGraph]:
    """Canonical graphs of the graded piece that survive AS"""
    space = Space(space)
    _check_bounds(euler_deg, bead_window, space, legs)
    return [g for g, sign in _representatives(euler_deg, bead_window, space, legs) if sign]


# IHX

def _rotate(flags: Tuple[str, ...], flag: str, position: int) -> Tuple[str, ...]:
    shift = (flags.index(flag) - position) % 3
    return flags[shift:] + flags[:shift]


def internal_edges(g: BeadGraph) -> List[int]:
    internal = []
    for i in range(len(g.edges)):
        tail, head = g.endpoints(i)
        if tail != head and not g.vertex(tail).is_leg and not g.vertex(head).is_leg:
            internal.append(i)
    return internal


def ihx_terms(g: BeadGraph, edge_index: int) -> List[Tuple[int, BeadGraph]]:
    """
    The three Jacobi terms at an internal edge u -> v. With u read as (x, y, e_b) and
    v as (e_t, z, d), the terms put (a, b, e_b) at u and (e_t, c, d) at v for
    (a, b, c) = (x, y, z), (y, z, x), (z, x, y). The edge is made bead 1 first.
    """
    if edge_index not in internal_edges(g):
        raise GraphValidationError(f"edge {edge_index} does not join two distinct trivalent vertices")
    u, v = g.endpoints(edge_index)
    bead = g.edges[edge_index].bead
    if bead != 1:
        if not bead.is_unit_monomial():
            raise GraphValidationError("IHX needs beads of the form t^k")
        g = holonomy_move(g, v, bead.monomial_exponent())
    edge = g.edges[edge_index]
    x, y, _ = _rotate(g.vertex(u).flags, edge.tail, 2)
    _, z, d = _rotate(g.vertex(v).flags, edge.head, 0)
    terms = []
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        vertices = []
        for vertex in g.vertices:
            if vertex.name == u:
                vertex = Vertex(u, TRIVALENT, (a, b, edge.tail))
            elif vertex.name == v:
                vertex = Vertex(v, TRIVALENT, (edge.head, c, d))
            vertices.append(vertex)
        terms.append((1, g.replace(vertices=vertices)))
    return terms


def ihx_relation(g: BeadGraph, edge_index: int, space: Optional[Space] = None) -> DiagramElement:
    return normalize(ihx_terms(g, edge_index), space)


def _relation_key(element: DiagramElement) -> Tuple:
    items = list(element.items())
    lead = items[0][1]
    return tuple((canonical_key(g), c / lead) for g, c in items)


def _forest_picker(seed: Optional[int]):
    if seed is None:
        return None
    rng = random.Random(seed)

    def pick(g: BeadGraph) -> BeadGraph:
        forests = list(spanning_forests(g))
        return holonomy_normal_form(g, rng.choice(forests))
    return pick


def _relations(euler_deg: int, bead_window: int, space: Space, legs: int,
               tree_seed: Optional[int] = None) -> List[DiagramElement]:
    pick = _forest_picker(tree_seed) if space == Space.LAMBDA else None
    relations = []
    seen = set()
    for g, _ in _representatives(euler_deg, bead_window, space, legs):
        for i in internal_edges(g):
            terms = ihx_terms(g, i)
            if pick is not None:
                terms = [(c, pick(term)) for c, term in terms]
            relation = normalize(terms, space)
            if not relation:
                continue
            if space == Space.LAMBDA and not all(_in_window(term, bead_window) for term, _ in relation.items()):
                continue
            key = _relation_key(relation)
            if key in seen:
                continue
            seen.add(key)
            relations.append(relation)
    return relations


def ihx_generators(euler_deg: int, bead_window: int = 0, space: Space = Space.PHI,
                   legs: int = 0) -> List[DiagramElement]:
    """Nonzero, pairwise distinct IHX relations of the graded piece"""
    space = Space(space)
    _check_bounds(euler_deg, bead_window, space, legs)
    return _relations(euler_deg, bead_window, space, legs)


# Exact ranks

def _to_fraction(value) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def _row_echelon(rows: List[Dict[int, Fraction]], width: int) -> Tuple[List[Dict[int, Fraction]], Tuple[int, ...]]:
    """Reduced row echelon form over Q of a sparse matrix"""
    if not rows or width == 0:
        return [], ()
    data = {i: {j: QQ(value.numerator, value.denominator) for j, value in row.items()}
            for i, row in enumerate(rows) if row}
    matrix = DomainMatrix(data, (len(rows), width), QQ)
    reduced, pivots = matrix.rref()
    sparse = reduced.to_sparse().rep
    echelon = []
    for r in range(len(pivots)):
        row = sparse.get(r, {})
        echelon.append({j: _to_fraction(value) for j, value in row.items()})
    return echelon, tuple(pivots)


@dataclass
class DimensionReport:
    space: str
    euler_degree: int
    bead_window: int
    legs: int
    generators: int
    relations: int
    rank: int
    dimension: int

    def to_dict(self) -> Dict:
        return {
            "space": self.space,
            "euler_degree": self.euler_degree,
            "bead_window": self.bead_window,
            "legs": self.legs,
            "generators": self.generators,
            "relations": self.relations,
            "rank": self.rank,
            "dimension": self.dimension,
        }


@dataclass
class QuotientBasis:
    """Generators, relation echelon form and the surviving (free) generators of one graded piece"""
    space: Space
    euler_degree: int
    bead_window: int
    legs: int
    generators: List[BeadGraph]
    relation_count: int
    echelon: List[Dict[int, Fraction]] = field(repr=False)
    pivots: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def dimension(self) -> int:
        return len(self.generators) - self.rank

    @property
    def basis(self) -> List[BeadGraph]:
        pivots = set(self.pivots)
        return [g for j, g in enumerate(self.generators) if j not in pivots]

    def vector(self, e: DiagramElement) -> Dict[int, Fraction]:
        index = {g: j for j, g in enumerate(self.generators)}
        vector = {}
        for g, c in e.items():
            if g not in index:
                raise DegreeError(f"{g} is not a generator of this graded piece")
            vector[index[g]] = c
        return vector

    def coordinates(self, vector: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
        vector = dict(vector)
        for row, pivot in zip(self.echelon, self.pivots):
            factor = vector.get(pivot)
            if not factor:
                continue
            for j, value in row.items():
                vector[j] = vector.get(j, Fraction(0)) - factor * value
        pivots = set(self.pivots)
        return tuple(vector.get(j, Fraction(0)) for j in range(len(self.generators)) if j not in pivots)

    def report(self) -> DimensionReport:
        return DimensionReport(self.space.value, self.euler_degree, self.bead_window, self.legs,
                               len(self.generators), self.relation_count, self.rank, self.dimension)


def _build_basis(euler_deg: int, bead_window: int, space: Space, legs: int,
                 generators: List[BeadGraph], relations: List[DiagramElement]) -> QuotientBasis:
    index = {g: j for j, g in enumerate(generators)}
    rows = [{index[g]: c for g, c in relation.items()} for relation in relations]
    echelon, pivots = _row_echelon(rows, len(generators))
    return QuotientBasis(space, euler_deg, bead_window, legs, generators, len(relations), echelon, pivots)


@lru_cache(maxsize=64)
def quotient_basis(euler_deg: int, bead_window: int = 0, space: Space = Space.PHI, legs: int = 0) -> QuotientBasis:
    space = Space(space)
    if space != Space.LAMBDA:
        bead_window = 0
    _check_bounds(euler_deg, bead_window, space, legs)
    generators = enumerate_generators(euler_deg, bead_window, space, legs)
    relations = _relations(euler_deg, bead_window, space, legs)
    return _build_basis(euler_deg, bead_window, space, legs, generators, relations)


def graded_dimension(euler_deg: int, bead_window: int = 0, space: Space = Space.PHI, legs: int = 0) -> int:
    """Generators minus the rank of the IHX relation matrix; for A(Λ) relative to the bead window"""
    return quotient_basis(euler_deg, bead_window, Space(space), legs).dimension


def graded_dimension_report(euler_deg: int, bead_window: int = 0, space: Space = Space.PHI, legs: int = 0,
                            shuffle_seed: Optional[int] = None, tree_seed: Optional[int] = None,
                            log: Optional[RunLog] = None) -> DimensionReport:
    """
    Graded dimension with provenance. A shuffle seed permutes the generator columns and a
    tree seed normalizes relation terms through randomly chosen spanning forests first.
    """
    space = Space(space)
    if space != Space.LAMBDA:
        bead_window = 0
    log = log or RunLog()
    step = f"{space.value}[e={euler_deg}, w={bead_window}, legs={legs}]"
    if shuffle_seed is None and tree_seed is None:
        report = quotient_basis(euler_deg, bead_window, space, legs).report()
        log.log_step(step, "SUCCESS", f"dimension {report.dimension} (rank {report.rank})")
        return report

    _check_bounds(euler_deg, bead_window, space, legs)
    generators = enumerate_generators(euler_deg, bead_window, space, legs)
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(generators)
        log.log_step(step, "INFO", f"shuffled {len(generators)} generators with seed {shuffle_seed}")
    relations = _relations(euler_deg, bead_window, space, legs, tree_seed)
    report = _build_basis(euler_deg, bead_window, space, legs, generators, relations).report()
    log.log_step(step, "SUCCESS", f"dimension {report.dimension} (rank {report.rank})")
    return report


def _legs_of(e: DiagramElement) -> int:
    counts = {len(g.legs) for g, _ in e.items()}
    if len(counts) > 1:
        raise DegreeError("element mixes different leg counts")
    return counts.pop() if counts else 0


def reduce(e: DiagramElement, euler_deg: int, bead_window: int = 0,
           legs: Optional[int] = None) -> Tuple[Fraction, ...]:
    """Coordinates of e in the quotient basis; e1 and e2 are equal in the quotient iff reduce(e1 - e2) vanishes"""
    legs = _legs_of(e) if legs is None else legs
    for g, _ in e.items():
        if euler_degree(g) != euler_deg or len(g.legs) != legs:
            raise DegreeError(f"{g} is not of Euler degree {euler_deg} with {legs} legs")
        if e.space == Space.LAMBDA and not _in_window(g, bead_window):
            raise WindowError(f"{g} has a bead outside the window [-{bead_window}, {bead_window}]")
    basis = quotient_basis(euler_deg, bead_window, e.space, legs)
    return basis.coordinates(basis.vector(e))


def is_zero_in_quotient(e: DiagramElement, euler_deg: int, bead_window: int = 0) -> bool:
    return not any(reduce(e, euler_deg, bead_window))


# Automorphism quotient of a bead ring

@dataclass(frozen=True)
class Coinvariant:
    representative: RingMonomial
    orbit: Tuple[RingMonomial, ...]
    vanishes: bool


def coinvariants(g: BeadGraph, exponents: Sequence[int]) -> Coinvariant:
    """
    Orbit of an edge-ring monomial under the automorphisms of the underlying beadless graph.
    The class vanishes in A(Λ) when an orientation-reversing automorphism fixes it.
    """
    shape = g.with_beads({i: LaurentPoly.one() for i in range(len(g.edges))})
    ring = edge_ring(shape)
    start = normal_form(RingMonomial(tuple(exponents)), ring)
    edge_of = {}
    for i, edge in enumerate(shape.edges):
        edge_of[edge.tail] = (i, False)
        edge_of[edge.head] = (i, True)
    orbit = set()
    vanishes = False
    for automorphism in automorphisms(shape):
        image = [0] * len(shape.edges)
        for i, edge in enumerate(shape.edges):
            target, flipped = edge_of[automorphism.flag_map[edge.tail]]
            image[target] = -start.exponents[i] if flipped else start.exponents[i]
        moved = normal_form(RingMonomial(tuple(image)), ring)
        orbit.add(moved)
        if moved == start and automorphism.sign < 0:
            vanishes = True
    ordered = tuple(sorted(orbit, key=lambda m: m.exponents))
    return Coinvariant(ordered[0], ordered, vanishes)
