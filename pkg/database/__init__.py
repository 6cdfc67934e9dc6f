"""
Bead Calculus Engine Database Package
SQLite store for computed dimensions, axiom-suite runs and the audit trail
"""

from .schema import ResultsStore

__all__ = ['ResultsStore']
