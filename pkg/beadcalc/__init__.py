"""
Bead Calculus Engine
Exact arithmetic for bead-labeled trivalent graph algebras, bead rings, clasper
contraction and equivariant linking numbers
"""

from .algebra import (DiagramElement, QuotientBasis, Space, enumerate_generators, graded_dimension,
                      graded_dimension_report, holonomy_move, holonomy_normal_form, ihx_generators,
                      ihx_relation, is_zero_in_quotient, normalize, reduce)
from .beadrings import RingMonomial, RingPresentation, edge_ring, flag_ring, h1_ring, normal_form
from .contraction import ClasperScheme, Vortex, break_graph, complete_contraction
from .eqlink import AnnularDiagram, eq_linking, linking_number, strut_part, validate
from .errors import BeadcalcError, ParseError
from .graphs import BeadGraph, Edge, Vertex, canonicalize, euler_degree, loop_degree, vassiliev_degree
from .hair import hair_map
from .laurent import LaurentMatrix, LaurentPoly, block_negative_inverse, lp_arith, lp_augment, lp_involute
from .runlog import RunLog

__all__ = [
    'AnnularDiagram', 'BeadGraph', 'BeadcalcError', 'ClasperScheme', 'DiagramElement', 'Edge',
    'LaurentMatrix', 'LaurentPoly', 'ParseError', 'QuotientBasis', 'RingMonomial', 'RingPresentation',
    'RunLog', 'Space', 'Vertex', 'Vortex',
    'block_negative_inverse', 'break_graph', 'canonicalize', 'complete_contraction', 'edge_ring',
    'enumerate_generators', 'eq_linking', 'euler_degree', 'flag_ring', 'graded_dimension',
    'graded_dimension_report', 'h1_ring', 'hair_map', 'holonomy_move', 'holonomy_normal_form',
    'ihx_generators', 'ihx_relation', 'is_zero_in_quotient', 'linking_number', 'loop_degree',
    'lp_arith', 'lp_augment', 'lp_involute', 'normal_form', 'normalize', 'reduce', 'strut_part', 'validate',
    'vassiliev_degree',
]
