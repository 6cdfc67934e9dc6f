"""
Bead Calculus Engine - Clasper Contraction
Break a trivalent graph into vortices, glue the legs back pairwise against a Laurent
linking table, and collect the complete contraction in A(φ) or A(Λ)
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from . import config
from .algebra import DiagramElement, Space, normalize
from .errors import SchemeError
from .graphs import TRIVALENT, BeadGraph, Edge, Vertex
from .laurent import LaurentMatrix, LaurentPoly, block_negative_inverse

ZERO = LaurentPoly.zero()


@dataclass(frozen=True)
class Vortex:
    """Y-piece: three leg labels in cyclic order"""
    name: str
    legs: Tuple[str, str, str]

    def flipped(self) -> "Vortex":
        return Vortex(self.name, tuple(reversed(self.legs)))


@dataclass(frozen=True)
class ClasperScheme:
    """Vortices plus oriented pairing readings (x, y, value); value(y, x) is the involute"""
    vortices: Tuple[Vortex, ...]
    pairings: Tuple[Tuple[str, str, LaurentPoly], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vortices", tuple(self.vortices))
        object.__setattr__(self, "pairings", tuple(self.pairings))
        names = [vortex.name for vortex in self.vortices]
        if len(set(names)) != len(names):
            raise SchemeError("vortex names are not unique")
        labels = self.leg_labels
        if len(set(labels)) != len(labels):
            raise SchemeError("a leg label appears in more than one place")
        if any(len(vortex.legs) != 3 for vortex in self.vortices):
            raise SchemeError("every vortex has exactly three legs")
        known = set(labels)
        readings: Dict[Tuple[str, str], LaurentPoly] = {}
        for x, y, value in self.pairings:
            if x not in known or y not in known:
                raise SchemeError(f"pairing ({x}, {y}) names an unknown leg")
            if x == y and value != value.involute():
                raise SchemeError(f"framing entry of {x} is not symmetric under t -> t^-1")
            for key, reading in (((x, y), value), ((y, x), value.involute())):
                if key in readings and readings[key] != reading:
                    raise SchemeError(f"conflicting readings for the pair ({key[0]}, {key[1]})")
                readings[key] = reading
        object.__setattr__(self, "_readings", readings)

    @property
    def leg_labels(self) -> List[str]:
        return [leg for vortex in self.vortices for leg in vortex.legs]

    def entry(self, x: str, y: str) -> LaurentPoly:
        return self._readings.get((x, y), ZERO)

    def framing(self, x: str) -> LaurentPoly:
        return self.entry(x, x)

    def is_constant(self) -> bool:
        return all(value.is_constant() for value in self._readings.values())

    def vortex(self, name: str) -> Vortex:
        for vortex in self.vortices:
            if vortex.name == name:
                return vortex
        raise SchemeError(f"no vortex named {name!r}")

    def flip(self, name: str) -> "ClasperScheme":
        """Reverse the cyclic order of one vortex"""
        self.vortex(name)
        vortices = tuple(v.flipped() if v.name == name else v for v in self.vortices)
        return ClasperScheme(vortices, self.pairings)

    def transpose_readings(self) -> "ClasperScheme":
        """Same table, every pairing stored by its reversed reading"""
        return ClasperScheme(self.vortices, tuple((y, x, value.involute()) for x, y, value in self.pairings))


@dataclass(frozen=True)
class ContractionResult:
    element: DiagramElement
    vortex_count: int
    matchings: int

    @property
    def euler_degree(self) -> int:
        return self.vortex_count


def break_graph(g: BeadGraph) -> ClasperScheme:
    """One vortex per trivalent vertex; each edge becomes the pairing (e_b, e_t, bead)"""
    if not g.is_legless():
        raise SchemeError("only trivalent (legless) graphs break into vortices")
    vortices = tuple(Vortex(vertex.name, vertex.flags) for vertex in g.vertices)
    pairings = tuple((edge.tail, edge.head, edge.bead) for edge in g.edges)
    return ClasperScheme(vortices, pairings)


def all_pairings(items: Sequence[str], weight) -> Iterator[List[Tuple[str, str]]]:
    """Perfect matchings of items whose pairs all have a nonzero weight"""
    items = list(items)
    if not items:
        yield []
        return
    first_item = items.pop(0)
    for i, item in enumerate(items):
        if not weight(first_item, item):
            continue
        for pairing in all_pairings(items[:i] + items[i + 1:], weight):
            yield [(first_item, item)] + pairing


def contraction_terms(s: ClasperScheme) -> List[Tuple[Fraction, BeadGraph]]:
    """
    One raw term per perfect matching of the legs. Each matched pair becomes an edge from
    the lower label to the higher one with bead entry(lower, higher); with constant entries
    the beads are 1 and the coefficient is the product of the entries.
    """
    labels = s.leg_labels
    if len(labels) % 2:
        raise SchemeError(f"{len(labels)} legs cannot be glued pairwise")
    constant = s.is_constant()
    vertices = tuple(Vertex(vortex.name, TRIVALENT, vortex.legs) for vortex in s.vortices)
    raw = []
    for matching in all_pairings(labels, lambda x, y: s.entry(x, y)):
        coefficient = Fraction(1)
        edges = []
        for pair in matching:
            x, y = sorted(pair)
            value = s.entry(x, y)
            if constant:
                coefficient *= value.coefficient(0)
                edges.append(Edge(x, y))
            else:
                edges.append(Edge(x, y, value))
        raw.append((coefficient, BeadGraph(vertices, tuple(edges))))
    return raw


def complete_contraction(s: ClasperScheme) -> ContractionResult:
    """Sum over perfect matchings of the legs, normalized in A(φ) for constant schemes and A(Λ) otherwise"""
    raw = contraction_terms(s)
    element = normalize(raw, Space.PHI if s.is_constant() else Space.LAMBDA)
    return ContractionResult(element, len(s.vortices), len(raw))


def contraction_sign_audit(s: ClasperScheme, trials: int = config.SIGN_AUDIT_TRIALS,
                           seed: int = config.DEFAULT_SEED) -> Dict:
    """Flipping k vortices must multiply the contraction by (-1)^k"""
    base = complete_contraction(s).element
    rng = random.Random(seed)
    names = [vortex.name for vortex in s.vortices]
    issues = []
    passed = 0
    plans = [[names[0]], [names[0], names[0]]] if names else []
    while len(plans) < trials and names:
        plans.append([rng.choice(names) for _ in range(rng.randint(1, len(names)))])
    for plan in plans[:trials]:
        flipped = s
        for name in plan:
            flipped = flipped.flip(name)
        expected = base if len(plan) % 2 == 0 else -base
        if complete_contraction(flipped).element == expected:
            passed += 1
        else:
            issues.append(f"flipping {', '.join(plan)} did not give sign {(-1) ** len(plan):+d}")
    return {
        "valid": not issues,
        "issues": issues,
        "stats": {"trials": len(plans[:trials]), "passed": passed, "failed": len(issues)},
    }


# Arms and leaves

def arm_matrix(s: ClasperScheme) -> LaurentMatrix:
    """[[0, I], [I, B]] with B the leg-by-leg pairing table (framing on the diagonal)"""
    labels = s.leg_labels
    table = LaurentMatrix([[s.entry(x, y) for y in labels] for x in labels])
    size = len(labels)
    return LaurentMatrix.from_blocks([
        [LaurentMatrix.zeros(size, size), LaurentMatrix.identity(size)],
        [LaurentMatrix.identity(size), table],
    ])


def pairing_from_arms(matrix: LaurentMatrix, labels: Sequence[str]) -> Dict[Tuple[str, str], LaurentPoly]:
    """Read the pairing table back from the upper-left block of the negative inverse"""
    inverse = block_negative_inverse(matrix)
    if inverse.rows != 2 * len(labels):
        raise SchemeError(f"matrix has {inverse.rows // 2} legs, got {len(labels)} labels")
    table = {}
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            if inverse[i, j] != 0:
                table[(x, y)] = inverse[i, j]
    return table


def random_scheme(rng: random.Random, vortex_count: int = 2, bead_window: int = 1,
                  density: float = 0.5, beaded: bool = True) -> ClasperScheme:
    """Random vortices with random pairings; entries are small monomials or integers"""
    vortices = tuple(Vortex(f"V{i}", (f"V{i}.a", f"V{i}.b", f"V{i}.c")) for i in range(vortex_count))
    labels = [leg for vortex in vortices for leg in vortex.legs]
    pairings = []
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            if x.split(".")[0] == y.split(".")[0] or rng.random() > density:
                continue
            if beaded:
                value = LaurentPoly.monomial(rng.randint(-bead_window, bead_window), rng.choice([1, -1, 2]))
            else:
                value = LaurentPoly.constant(rng.choice([1, -1, 2]))
            pairings.append((x, y, value))
    return ClasperScheme(vortices, tuple(pairings))
