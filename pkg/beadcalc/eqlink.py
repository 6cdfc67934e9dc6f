"""
Bead Calculus Engine - Equivariant Linking
Null links in the complement of the axis O, drawn as annular diagrams; ordinary and
equivariant linking numbers read off the infinite cyclic cover through cut-ray indices
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import config
from .algebra import DiagramElement, Space, normalize
from .errors import DiagramValidationError, SplitError, UnknownComponentError
from .graphs import BeadGraph, strut
from .hair import hair_map
from .laurent import LaurentMatrix, LaurentPoly

OVER = "over"
UNDER = "under"


@dataclass(frozen=True)
class ArcRef:
    component: str
    arc: int


@dataclass(frozen=True)
class Crossing:
    """over passes above under; right-handed crossings have sign +1"""
    over: ArcRef
    under: ArcRef
    sign: int


@dataclass(frozen=True)
class Component:
    """
    Closed curve as a cyclic list of arcs. ray_steps[i] is the signed number of times
    arc i meets the cut ray; a crossing passage sits at the start of its arc.
    """
    ray_steps: Tuple[int, ...]
    basepoint: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ray_steps", tuple(int(step) for step in self.ray_steps))

    @property
    def winding(self) -> int:
        return sum(self.ray_steps)

    def __len__(self):
        return len(self.ray_steps)


@dataclass(frozen=True)
class AnnularDiagram:
    components: Dict[str, Component]
    crossings: Tuple[Crossing, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))
        object.__setattr__(self, "crossings", tuple(self.crossings))

    @property
    def names(self) -> List[str]:
        return sorted(self.components)

    def component(self, name: str) -> Component:
        if name not in self.components:
            raise UnknownComponentError(f"no component named {name!r}")
        return self.components[name]

    def replace(self, components: Optional[Dict[str, Component]] = None,
                crossings: Optional[Tuple[Crossing, ...]] = None) -> "AnnularDiagram":
        return AnnularDiagram(self.components if components is None else components,
                              self.crossings if crossings is None else crossings)


@dataclass(frozen=True)
class SplitSpec:
    """Arcs [start, end) of the component form the first summand"""
    start: int
    end: int


# Validation

def _reading(d: AnnularDiagram, a: str, b: str, via: str,
             index_a: Dict[int, int], index_b: Dict[int, int]) -> LaurentPoly:
    terms: Dict[int, int] = {}
    for crossing in d.crossings:
        if via == OVER and crossing.over.component == a and crossing.under.component == b:
            offset = index_a[crossing.over.arc] - index_b[crossing.under.arc]
        elif via == UNDER and crossing.over.component == b and crossing.under.component == a:
            offset = index_a[crossing.under.arc] - index_b[crossing.over.arc]
        else:
            continue
        terms[offset] = terms.get(offset, 0) + crossing.sign
    return LaurentPoly(terms)


def _realizability_issues(d: AnnularDiagram) -> List[str]:
    issues = []
    names = d.names
    indices = {name: lift_indices(d, name) for name in names}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            over = _reading(d, a, b, OVER, indices[a], indices[b])
            under = _reading(d, a, b, UNDER, indices[a], indices[b])
            if over != under:
                issues.append(f"components {a} and {b}: {a} over {b} reads {over} but {b} over {a} "
                              f"reads {under} (not realizable)")
    return issues


def validate(d: AnnularDiagram) -> Dict:
    """
    Structural checks, the null (winding zero) condition per component, and realizability:
    for each pair of components the crossings of a over b and of b over a carry the same
    signed count at every lift offset.
    """
    issues = []
    used: Dict[Tuple[str, int], int] = {}
    for name in d.names:
        component = d.components[name]
        if not component.ray_steps:
            issues.append(f"component {name}: has no arcs")
        elif not 0 <= component.basepoint < len(component):
            issues.append(f"component {name}: basepoint {component.basepoint} is not an arc")
        if component.winding != 0:
            issues.append(f"component {name}: winds {component.winding} times around the axis (not null)")
    for position, crossing in enumerate(d.crossings):
        if crossing.sign not in (1, -1):
            issues.append(f"crossing {position}: sign {crossing.sign} is not +1 or -1")
        for role, ref in ((OVER, crossing.over), (UNDER, crossing.under)):
            if ref.component not in d.components:
                issues.append(f"crossing {position}: {role} references unknown component {ref.component!r}")
                continue
            if not 0 <= ref.arc < len(d.components[ref.component]):
                issues.append(f"crossing {position}: {role} references missing arc {ref.component}[{ref.arc}]")
                continue
            key = (ref.component, ref.arc)
            if key in used:
                issues.append(f"crossing {position}: arc {ref.component}[{ref.arc}] already carries "
                              f"crossing {used[key]}")
            used[key] = position
        if crossing.over == crossing.under:
            issues.append(f"crossing {position}: over and under are the same arc")
    if not issues:
        issues.extend(_realizability_issues(d))
    return {
        "valid": not issues,
        "issues": issues,
        "stats": {
            "components": len(d.components),
            "arcs": sum(len(c) for c in d.components.values()),
            "crossings": len(d.crossings),
        },
    }


def require_valid(d: AnnularDiagram) -> AnnularDiagram:
    report = validate(d)
    if not report["valid"]:
        raise DiagramValidationError("; ".join(report["issues"]))
    return d


def _pair(d: AnnularDiagram, a: str, b: str):
    d.component(a)
    d.component(b)
    if a == b:
        raise DiagramValidationError("linking needs two distinct components")
    require_valid(d)


# Linking numbers

def linking_number(d: AnnularDiagram, a: str, b: str) -> int:
    """Signed count of the crossings where a passes over b"""
    _pair(d, a, b)
    return sum(c.sign for c in d.crossings if c.over.component == a and c.under.component == b)


def lift_indices(d: AnnularDiagram, c: str) -> Dict[int, int]:
    """Lift index of every arc: 0 on the basepoint arc, then the running sum of ray steps"""
    component = d.component(c)
    if component.winding != 0:
        raise DiagramValidationError(f"component {c} winds {component.winding} times around the axis")
    size = len(component)
    indices = {}
    current = 0
    for offset in range(size):
        arc = (component.basepoint + offset) % size
        indices[arc] = current
        current += component.ray_steps[arc]
    return indices


def eq_linking(d: AnnularDiagram, a: str, b: str, via: str = OVER) -> LaurentPoly:
    """
    Sum of sign * t^(idx_a - idx_b) over the crossings of a over b (via="over") or of
    b over a (via="under"); both readings agree on realizable diagrams.
    """
    _pair(d, a, b)
    if via not in (OVER, UNDER):
        raise ValueError(f"via must be {OVER!r} or {UNDER!r}")
    return _reading(d, a, b, via, lift_indices(d, a), lift_indices(d, b))


def linking_matrix(d: AnnularDiagram) -> LaurentMatrix:
    """Equivariant linking of every ordered pair of components (zero diagonal), rows in name order"""
    names = d.names
    return LaurentMatrix([[LaurentPoly.zero() if a == b else eq_linking(d, a, b) for b in names]
                          for a in names])


# Struts

def beaded_struts(d: AnnularDiagram) -> List[Tuple[Fraction, BeadGraph]]:
    """
    Strut part of the link as a raw combination: for each pair a < b, one strut from a to b
    per monomial of the equivariant linking number, carrying that monomial as its bead
    """
    require_valid(d)
    names = d.names
    terms = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            for exponent, coefficient in eq_linking(d, a, b).items():
                terms.append((coefficient, strut(LaurentPoly.monomial(exponent), (a, b))))
    return terms


def strut_part(d: AnnularDiagram, max_vassiliev: int = 1) -> DiagramElement:
    """Hair image of the beaded struts in the hairy space; at Vassiliev degree 1 only the struts remain"""
    return hair_map(beaded_struts(d), max_vassiliev, Space.HAIRY)


def classical_struts(d: AnnularDiagram) -> DiagramElement:
    """Struts weighted by the ordinary linking numbers"""
    require_valid(d)
    names = d.names
    raw = [(linking_number(d, a, b), strut(1, (a, b))) for i, a in enumerate(names) for b in names[i + 1:]]
    return normalize(raw, Space.HAIRY)


# Basepoint moves

def rebase(d: AnnularDiagram, c: str, arc: int) -> AnnularDiagram:
    """Move the basepoint of c to another arc"""
    component = d.component(c)
    if not 0 <= arc < len(component):
        raise DiagramValidationError(f"component {c} has no arc {arc}")
    components = dict(d.components)
    components[c] = Component(component.ray_steps, arc)
    return d.replace(components=components)


def slide_rebase(d: AnnularDiagram, c: str, l: int) -> AnnularDiagram:
    """
    Insert a detour arc meeting the ray l times just before the basepoint of c and base
    c there; the arc before it gives back the l steps. Every other arc of c is lifted by l.
    """
    component = d.component(c)
    if l == 0:
        return d
    size = len(component)
    base = component.basepoint
    steps = list(component.ray_steps)
    steps[(base - 1) % size] -= l
    steps.insert(base, l)

    def shifted(ref: ArcRef) -> ArcRef:
        if ref.component == c and ref.arc >= base:
            return ArcRef(c, ref.arc + 1)
        return ref

    crossings = tuple(Crossing(shifted(x.over), shifted(x.under), x.sign) for x in d.crossings)
    components = dict(d.components)
    components[c] = Component(tuple(steps), base)
    return AnnularDiagram(components, crossings)


# Connected sums

def split_specs(d: AnnularDiagram, c: str) -> List[SplitSpec]:
    """Every split of c into two contiguous null pieces; on a valid diagram, only splits whose pieces stay realizable"""
    component = d.component(c)
    size = len(component)
    specs = []
    for start in range(size):
        total = 0
        for end in range(start + 1, size + 1):
            total += component.ray_steps[end - 1]
            if total == 0 and end - start < size:
                specs.append(SplitSpec(start, end))
    if not validate(d)["valid"]:
        return specs
    return [spec for spec in specs if all(validate(piece)["valid"] for piece in _cut(d, c, spec))]


def _piece(d: AnnularDiagram, c: str, arcs: List[int]) -> AnnularDiagram:
    component = d.components[c]
    position = {arc: i for i, arc in enumerate(arcs)}
    crossings = []
    for crossing in d.crossings:
        refs = (crossing.over, crossing.under)
        if any(ref.component == c and ref.arc not in position for ref in refs):
            continue
        over, under = (ArcRef(c, position[ref.arc]) if ref.component == c else ref for ref in refs)
        crossings.append(Crossing(over, under, crossing.sign))
    components = dict(d.components)
    if component.basepoint in position:
        components[c] = Component(tuple(component.ray_steps[arc] for arc in arcs), position[component.basepoint])
        return AnnularDiagram(components, tuple(crossings))
    components[c] = Component(tuple(component.ray_steps[arc] for arc in arcs), 0)
    lift = lift_indices(d, c)[arcs[0]]
    return slide_rebase(AnnularDiagram(components, tuple(crossings)), c, lift)


def _cut(d: AnnularDiagram, c: str, spec: SplitSpec) -> Tuple[AnnularDiagram, AnnularDiagram]:
    size = len(d.components[c])
    inside = list(range(spec.start, spec.end))
    outside = list(range(spec.end, size)) + list(range(0, spec.start))
    return _piece(d, c, inside), _piece(d, c, outside)


def connected_sum_split(d: AnnularDiagram, c: str, spec: SplitSpec) -> Tuple[AnnularDiagram, AnnularDiagram]:
    """
    Cut c into arcs [start, end) and the rest. Each crossing on c goes with the piece that
    holds its arc; lifts are kept, so equivariant linking with c is additive over the pieces.
    Both pieces must be realizable on their own.
    """
    require_valid(d)
    component = d.component(c)
    size = len(component)
    if not 0 <= spec.start < spec.end <= size or spec.end - spec.start == size:
        raise SplitError(f"split [{spec.start}, {spec.end}) does not cut {c} into two pieces")
    winding = sum(component.ray_steps[arc] for arc in range(spec.start, spec.end))
    if winding != 0:
        raise SplitError(f"split [{spec.start}, {spec.end}) leaves pieces winding {winding} and {-winding}")
    pieces = _cut(d, c, spec)
    for piece in pieces:
        report = validate(piece)
        if not report["valid"]:
            raise SplitError(f"split [{spec.start}, {spec.end}) separates paired crossings: "
                             + "; ".join(report["issues"]))
    return pieces


# Standard and random diagrams

def hopf_link(sign: int = 1) -> AnnularDiagram:
    """Hopf link in a disk away from the ray"""
    components = {"A": Component((0, 0)), "B": Component((0, 0))}
    crossings = (Crossing(ArcRef("A", 0), ArcRef("B", 0), sign), Crossing(ArcRef("B", 1), ArcRef("A", 1), sign))
    return AnnularDiagram(components, crossings)


def unlink() -> AnnularDiagram:
    return AnnularDiagram({"A": Component((0,)), "B": Component((0,))})


class _DiagramBuilder:
    """Components as lists of arc ids; crossings reference ids until the diagram is frozen"""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.arcs: Dict[str, List[Tuple[int, int]]] = {}
        self.crossings: List[Tuple[Tuple[str, int], Tuple[str, int], int]] = []
        self.counter = 0

    def walk(self, name: str, length: int, flat: bool):
        steps = [0 if flat else self.rng.choice((-1, 0, 0, 1)) for _ in range(length)]
        balance = -sum(steps)
        steps += [1 if balance > 0 else -1] * abs(balance)
        self.rng.shuffle(steps)
        self.arcs[name] = [self._arc(step) for step in steps]

    def _arc(self, step: int) -> Tuple[int, int]:
        self.counter += 1
        return self.counter, step

    def _insert_pair(self, name: str) -> Tuple[int, int]:
        """Two consecutive arcs of step 0 just before a random arc"""
        arcs = self.arcs[name]
        spot = self.rng.randrange(len(arcs))
        first, second = self._arc(0), self._arc(0)
        arcs[spot:spot] = [first, second]
        return first[0], second[0]

    def clasp(self, a: str, b: str, sign: int):
        a1, a2 = self._insert_pair(a)
        b1, b2 = self._insert_pair(b)
        self.crossings.append(((a, a1), (b, b1), sign))
        self.crossings.append(((b, b2), (a, a2), sign))

    def passage(self, a: str, b: str):
        """Reidemeister II: a slides over b, two crossings of opposite signs"""
        a1, a2 = self._insert_pair(a)
        b1, b2 = self._insert_pair(b)
        self.crossings.append(((a, a1), (b, b1), 1))
        self.crossings.append(((a, a2), (b, b2), -1))

    def kink(self, a: str, sign: int):
        a1, a2 = self._insert_pair(a)
        self.crossings.append(((a, a1), (a, a2), sign))

    def freeze(self) -> AnnularDiagram:
        position = {}
        components = {}
        for name, arcs in self.arcs.items():
            for i, (arc_id, _) in enumerate(arcs):
                position[arc_id] = i
            components[name] = Component(tuple(step for _, step in arcs), self.rng.randrange(len(arcs)))
        crossings = tuple(Crossing(ArcRef(over[0], position[over[1]]), ArcRef(under[0], position[under[1]]), sign)
                          for over, under, sign in self.crossings)
        return AnnularDiagram(components, crossings)


def random_diagram(rng: random.Random, max_crossings: int = config.MAX_DIAGRAM_CROSSINGS,
                   component_names: Tuple[str, ...] = ("A", "B"), flat: bool = False) -> AnnularDiagram:
    """
    Valid null diagram built from clasps, Reidemeister-II passages and kinks placed
    along random null ray walks; flat diagrams never meet the ray.
    """
    if max_crossings < 0:
        raise ValueError("max_crossings must be non-negative")
    builder = _DiagramBuilder(rng)
    for name in component_names:
        builder.walk(name, rng.randint(1, 5), flat)
    budget = rng.randint(0, max_crossings)
    while budget > 0:
        choice = rng.random()
        if budget >= 2 and len(component_names) > 1 and choice < 0.6:
            a, b = rng.sample(list(component_names), 2)
            builder.clasp(a, b, rng.choice((1, -1)))
            budget -= 2
        elif budget >= 2 and len(component_names) > 1 and choice < 0.8:
            a, b = rng.sample(list(component_names), 2)
            builder.passage(a, b)
            budget -= 2
        else:
            builder.kink(rng.choice(list(component_names)), rng.choice((1, -1)))
            budget -= 1
    return builder.freeze()
