"""
Bead Calculus Engine - Error Types
Every failure raised by the engine derives from BeadcalcError
"""

from typing import Optional


class BeadcalcError(Exception):
    """Base class for all engine errors"""


class ParseError(BeadcalcError, ValueError):
    """Malformed text input; carries where it went wrong"""

    def __init__(self, message: str, position: Optional[str] = None, source: Optional[str] = None):
        self.message = message
        self.position = position
        self.source = source
        where = ""
        if source:
            where += f"{source}: "
        if position:
            where += f"at {position}: "
        super().__init__(f"{where}{message}")


class GraphValidationError(BeadcalcError, ValueError):
    """Graph violates the unitrivalent flag/edge invariants"""


class BoundExceededError(BeadcalcError):
    """Input is larger than a configured search bound"""


class SpaceMismatchError(BeadcalcError, ValueError):
    """Graphs or elements from different diagram spaces were combined"""


class BlockShapeError(BeadcalcError, ValueError):
    """Matrix is not of the [[0, I], [I, B]] block shape"""


class NonIntegralError(BeadcalcError, ArithmeticError):
    """Integer-coefficient mode produced a non-integer coefficient"""


class WindowError(BeadcalcError, ValueError):
    """Bead exponent falls outside the configured bead window"""


class RingPresentationError(BeadcalcError, ValueError):
    """Graph has no bead-ring presentation of the requested kind"""


class SchemeError(BeadcalcError, ValueError):
    """Clasper scheme is malformed or cannot be contracted"""


class DiagramValidationError(BeadcalcError, ValueError):
    """Annular diagram violates its structural or null invariants"""


class SplitError(BeadcalcError, ValueError):
    """Connected-sum split does not produce two null pieces"""


class UnknownComponentError(BeadcalcError, KeyError):
    """Component name not present in the diagram"""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown component"


class DegreeError(BeadcalcError, ValueError):
    """Element is not homogeneous of the requested degree"""
