"""
Bead Calculus Engine Services Package
Dimension tables and property suites on top of the results store
"""

from .axioms import AxiomSuiteService
from .dimensions import DimensionService

__all__ = ['AxiomSuiteService', 'DimensionService']
