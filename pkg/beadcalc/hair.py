"""
Bead Calculus Engine - Hair Map
A(Λ) -> A(*): every bead t^k becomes exp(k h), one ∗-colored leg per power of h
"""

from fractions import Fraction
from itertools import product
from math import floor
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .algebra import DiagramElement, RawCombination, Space, infer_space, normalize, raw_terms, reduce
from .errors import DegreeError, GraphValidationError
from .graphs import BeadGraph, attach_leg, vassiliev_degree
from .laurent import HairSeries, LaurentPoly


def edge_weights(exponents: Sequence[int], order: int) -> Dict[int, Fraction]:
    """Coefficients of h^n in the product of exp(k h) over the beads of one edge"""
    series = HairSeries.one(order)
    for k in exponents:
        series = series * HairSeries.exp(k, order)
    return {n: series.coefficient(n) for n in range(order + 1)}


def _hairy_edge(g: BeadGraph, edge_index: int, count: int, color: str) -> BeadGraph:
    """Attach count legs along one edge, in order from its tail to its head"""
    segment = edge_index
    for _ in range(count):
        g = attach_leg(g, segment, color)
        segment = len(g.edges) - 2
    return g


def hair_terms(g: BeadGraph, max_vassiliev, color: str = config.HAIR_COLOR) -> List[Tuple[Fraction, BeadGraph]]:
    """Raw hair expansion of one graph with t^k beads, truncated at the given Vassiliev degree"""
    if not g.has_monomial_beads():
        raise GraphValidationError("the hair map needs beads of the form t^k; normalize first")
    budget = Fraction(max_vassiliev) - vassiliev_degree(g)
    if budget < 0:
        raise DegreeError(f"graph has Vassiliev degree {vassiliev_degree(g)} above the truncation {max_vassiliev}")
    budget = floor(budget)
    exponents = [edge.bead.monomial_exponent() for edge in g.edges]
    bare = g.with_beads({i: LaurentPoly.one() for i in range(len(g.edges))})

    terms = []
    for counts in product(range(budget + 1), repeat=len(exponents)):
        if sum(counts) > budget:
            continue
        weight = Fraction(1)
        for k, n in zip(exponents, counts):
            weight *= HairSeries.exp(k, n).coefficient(n)
        if not weight:
            continue
        hairy = bare
        for i, n in enumerate(counts):
            hairy = _hairy_edge(hairy, i, n, color)
        terms.append((weight, hairy))
    return terms


def hair_map(e: RawCombination, max_vassiliev, space: Optional[Space] = None) -> DiagramElement:
    """
    Substitute t = exp(hair) on every edge and collect in A(*); beaded graphs with
    colored legs land in the hairy space.
    """
    raw = []
    for coefficient, g in raw_terms(e):
        raw.extend((coefficient * weight, hairy) for weight, hairy in hair_terms(g, max_vassiliev))
    if space is None:
        space = infer_space([g for _, g in raw]) if raw else Space.STAR
        if space == Space.PHI:
            space = Space.STAR
    return normalize(raw, space)


def augment_beads(e: RawCombination, space: Space = Space.STAR) -> DiagramElement:
    """Replace every bead p by its augmentation ε(p)"""
    raw = []
    for coefficient, g in raw_terms(e):
        beads = {i: LaurentPoly.constant(edge.bead.augment()) for i, edge in enumerate(g.edges)}
        raw.append((coefficient, g.with_beads(beads)))
    return normalize(raw, space)


def leg_part(e: DiagramElement, legs: int) -> DiagramElement:
    """Terms with exactly the given number of legs"""
    return DiagramElement(e.space, {g: c for g, c in e.items() if len(g.legs) == legs})


def hair_images_agree(first: RawCombination, second: RawCombination, max_vassiliev: int, euler_deg: int) -> bool:
    """Compare two hair images in the quotient of A(*), one leg count at a time"""
    difference = hair_map(first, max_vassiliev, Space.STAR) - hair_map(second, max_vassiliev, Space.STAR)
    leg_counts = {len(g.legs) for g, _ in difference.items()}
    return all(not any(reduce(leg_part(difference, n), euler_deg, legs=n)) for n in leg_counts)
