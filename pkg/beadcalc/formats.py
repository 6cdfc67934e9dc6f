"""
Bead Calculus Engine - Text Formats
JSON documents for elements, clasper schemes, annular diagrams and ring presentations
"""

import json
from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import DiagramElement, Space, normalize
from .beadrings import RingPresentation
from .contraction import ClasperScheme, Vortex
from .eqlink import AnnularDiagram, ArcRef, Component, Crossing
from .errors import BeadcalcError, ParseError
from .graphs import BeadGraph, graph_from_document, graph_to_document, load_json, loop_degree
from .laurent import LaurentPoly


def dumps(document) -> str:
    """Deterministic serialization: documents are built in a fixed key order"""
    return json.dumps(document, indent=2) + "\n"


def _require(condition: bool, message: str, path: str, source: Optional[str]):
    if not condition:
        raise ParseError(message, position=path, source=source)


def _laurent(text, path: str, source: Optional[str]) -> LaurentPoly:
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    _require(isinstance(text, str), "expected a Laurent polynomial string", path, source)
    try:
        return LaurentPoly.parse(text)
    except ParseError as exc:
        raise ParseError(exc.message, position=f"{path} {exc.position}", source=source) from exc


# Elements

def element_to_document(e: DiagramElement) -> Dict:
    return {
        "space": e.space.value,
        "terms": [{"coefficient": str(c), "graph": graph_to_document(g)} for g, c in e.items()],
    }


def element_from_document(document, source: Optional[str] = None) -> DiagramElement:
    """Terms may be arbitrary graphs; the result is normalized into the declared space"""
    _require(isinstance(document, dict), "element document must be an object", "element", source)
    space_name = document.get("space")
    try:
        space = Space(space_name) if space_name is not None else None
    except ValueError:
        raise ParseError(f"unknown space {space_name!r}", position="element.space", source=source) from None
    terms = document.get("terms")
    _require(isinstance(terms, list), "missing 'terms' list", "element", source)
    raw = []
    for i, record in enumerate(terms):
        where = f"terms[{i}]"
        _require(isinstance(record, dict), "term must be an object", where, source)
        coefficient = record.get("coefficient", "1")
        try:
            coefficient = Fraction(str(coefficient))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {coefficient!r}", position=f"{where}.coefficient",
                             source=source) from None
        raw.append((coefficient, graph_from_document(record.get("graph"), path=f"{where}.graph", source=source)))
    try:
        return normalize(raw, space)
    except BeadcalcError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), position="element", source=source) from exc


def parse_element(text: str, source: Optional[str] = None) -> DiagramElement:
    """Accepts an element document or a bare graph document (coefficient 1)"""
    document = load_json(text, source)
    if isinstance(document, dict) and "terms" not in document and "vertices" in document:
        return normalize([(Fraction(1), graph_from_document(document, source=source))])
    return element_from_document(document, source)


# Clasper schemes

def scheme_to_document(s: ClasperScheme) -> Dict:
    return {
        "vortices": [{"name": vortex.name, "legs": list(vortex.legs)} for vortex in s.vortices],
        "pairings": [[x, y, str(value)] for x, y, value in s.pairings],
    }


def scheme_from_document(document, source: Optional[str] = None) -> ClasperScheme:
    _require(isinstance(document, dict), "scheme document must be an object", "scheme", source)
    _require(isinstance(document.get("vortices"), list), "missing 'vortices' list", "scheme", source)
    vortices = []
    for i, record in enumerate(document["vortices"]):
        where = f"vortices[{i}]"
        _require(isinstance(record, dict) and isinstance(record.get("name"), str),
                 "vortex needs a string 'name'", where, source)
        legs = record.get("legs")
        _require(isinstance(legs, list) and len(legs) == 3 and all(isinstance(leg, str) for leg in legs),
                 "vortex needs three leg labels", f"{where}.legs", source)
        vortices.append(Vortex(record["name"], tuple(legs)))
    pairings = []
    for i, record in enumerate(document.get("pairings", [])):
        where = f"pairings[{i}]"
        _require(isinstance(record, list) and len(record) == 3 and all(isinstance(x, str) for x in record[:2]),
                 "pairing must be [leg, leg, laurent]", where, source)
        pairings.append((record[0], record[1], _laurent(record[2], f"{where}[2]", source)))
    try:
        return ClasperScheme(tuple(vortices), tuple(pairings))
    except BeadcalcError as exc:
        raise ParseError(str(exc), position="scheme", source=source) from exc


def parse_scheme(text: str, source: Optional[str] = None) -> ClasperScheme:
    return scheme_from_document(load_json(text, source), source)


# Annular diagrams

def diagram_to_document(d: AnnularDiagram) -> Dict:
    return {
        "components": {
            name: {"ray_steps": list(d.components[name].ray_steps), "basepoint": d.components[name].basepoint}
            for name in d.names
        },
        "crossings": [
            {"over": [c.over.component, c.over.arc], "under": [c.under.component, c.under.arc], "sign": c.sign}
            for c in d.crossings
        ],
    }


def _arc_ref(value, path: str, source: Optional[str]) -> ArcRef:
    _require(isinstance(value, list) and len(value) == 2 and isinstance(value[0], str)
             and isinstance(value[1], int), "arc reference must be [component, arc]", path, source)
    return ArcRef(value[0], value[1])


def diagram_from_document(document, source: Optional[str] = None) -> AnnularDiagram:
    """Structural parse only; call eqlink.validate for the null and reference checks"""
    _require(isinstance(document, dict), "diagram document must be an object", "diagram", source)
    _require(isinstance(document.get("components"), dict), "missing 'components' object", "diagram", source)
    components = {}
    for name, record in document["components"].items():
        where = f"components.{name}"
        _require(isinstance(record, dict), "component must be an object", where, source)
        steps = record.get("ray_steps")
        _require(isinstance(steps, list) and all(isinstance(step, int) for step in steps),
                 "component needs an integer 'ray_steps' list", f"{where}.ray_steps", source)
        basepoint = record.get("basepoint", 0)
        _require(isinstance(basepoint, int), "basepoint must be an arc index", f"{where}.basepoint", source)
        components[name] = Component(tuple(steps), basepoint)
    crossings = []
    for i, record in enumerate(document.get("crossings", [])):
        where = f"crossings[{i}]"
        _require(isinstance(record, dict), "crossing must be an object", where, source)
        _require(record.get("sign") in (1, -1), "crossing sign must be 1 or -1", f"{where}.sign", source)
        crossings.append(Crossing(_arc_ref(record.get("over"), f"{where}.over", source),
                                  _arc_ref(record.get("under"), f"{where}.under", source),
                                  record["sign"]))
    return AnnularDiagram(components, tuple(crossings))


def parse_diagram(text: str, source: Optional[str] = None) -> AnnularDiagram:
    return diagram_from_document(load_json(text, source), source)


# Ring presentations

def presentation_to_document(p: RingPresentation, g: BeadGraph) -> Dict:
    document = p.to_document()
    document["h1_rank"] = loop_degree(g)
    return document


def coordinates_to_document(coordinates, basis: List[BeadGraph]) -> List[Dict]:
    return [{"coefficient": str(c), "graph": graph_to_document(g)} for c, g in zip(coordinates, basis)]
