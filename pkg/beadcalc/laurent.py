"""
Bead Calculus Engine - Laurent Polynomials
Exact arithmetic in Z[t, t^-1] (rational coefficients allowed) with involution
and augmentation, truncated hair series t = exp(h), and block matrices over both
"""

import re
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import BlockShapeError, NonIntegralError, ParseError

Scalar = Union[int, Fraction]


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def _format_coefficient(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class LaurentPoly:
    """Element of Λ = Z[t, t^-1] over Q, stored as a sparse exponent -> coefficient map"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Scalar]] = None):
        cleaned = {}
        for exponent, coefficient in (terms or {}).items():
            value = _fraction(coefficient)
            if value:
                cleaned[int(exponent)] = value
        self._terms: Dict[int, Fraction] = dict(sorted(cleaned.items()))

    # Construction

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, value: Scalar) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def parse(cls, text: str, source: Optional[str] = None) -> "LaurentPoly":
        return _LaurentParser(text, source).parse()

    # Inspection

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_monomial(self) -> bool:
        """True for c*t^k with c != 0"""
        return len(self._terms) == 1

    def is_unit_monomial(self) -> bool:
        """True for t^k (coefficient exactly 1)"""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def monomial_exponent(self) -> int:
        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial")
        return next(iter(self._terms))

    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    def is_integral(self) -> bool:
        return all(value.denominator == 1 for value in self._terms.values())

    def require_integral(self) -> "LaurentPoly":
        if not self.is_integral():
            raise NonIntegralError(f"non-integer coefficient in {self}")
        return self

    # Ring structure

    def involute(self) -> "LaurentPoly":
        """t -> t^-1"""
        return LaurentPoly({-exponent: value for exponent, value in self._terms.items()})

    def augment(self) -> Fraction:
        """Evaluation at t = 1"""
        return sum(self._terms.values(), Fraction(0))

    def scale(self, factor: Scalar) -> "LaurentPoly":
        factor = _fraction(factor)
        return LaurentPoly({exponent: value * factor for exponent, value in self._terms.items()})

    def shift(self, exponent: int) -> "LaurentPoly":
        """Multiply by t^exponent"""
        return LaurentPoly({k + exponent: value for k, value in self._terms.items()})

    @staticmethod
    def _coerce(other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for exponent, value in other._terms.items():
            merged[exponent] = merged.get(exponent, Fraction(0)) + value
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({exponent: -value for exponent, value in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product[e1 + e2] = product.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int):
            return NotImplemented
        if power < 0:
            if not self.is_monomial():
                raise ZeroDivisionError(f"{self} is not invertible in Λ")
            exponent, value = next(iter(self._terms.items()))
            return LaurentPoly({-exponent: 1 / value}) ** (-power)
        result, base = LaurentPoly.one(), self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.coefficient(0))
        return hash(tuple(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for exponent, value in self._terms.items():
            magnitude = abs(value)
            if exponent == 0:
                body = _format_coefficient(magnitude)
            else:
                mono = "t" if exponent == 1 else f"t^{exponent}"
                body = mono if magnitude == 1 else f"{_format_coefficient(magnitude)}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if value < 0 else body)
            else:
                pieces.append(f"- {body}" if value < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"LaurentPoly('{self}')"


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class _LaurentParser:
    """Recursive-descent parser for strings like `2*t^-1 + 1 - 1/2*t^3`"""

    def __init__(self, text: str, source: Optional[str] = None):
        self.text = text
        self.source = source
        self.tokens: List[Tuple[str, int]] = []
        position = 0
        while position < len(text):
            match = _TOKEN.match(text, position)
            if match.group(0).strip() == "":
                break
            start = match.start(1) if match.group(1) else match.start(2)
            self.tokens.append((match.group(1) or match.group(2), start))
            position = match.end()
        self.index = 0

    def _error(self, message: str):
        column = self.tokens[self.index][1] + 1 if self.index < len(self.tokens) else len(self.text) + 1
        raise ParseError(message, position=f"column {column}", source=self.source)

    def _peek(self) -> Optional[str]:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def _take(self) -> str:
        token = self._peek()
        self.index += 1
        return token

    def _number(self) -> int:
        token = self._peek()
        if token is None or not token.isdigit():
            self._error("expected a number")
        return int(self._take())

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            self._error("empty polynomial")
        terms: Dict[int, Fraction] = {}
        first = True
        while self._peek() is not None:
            sign = 1
            if self._peek() in "+-":
                sign = -1 if self._take() == "-" else 1
            elif not first:
                self._error("expected '+' or '-'")
            first = False
            exponent, coefficient = self._term()
            terms[exponent] = terms.get(exponent, Fraction(0)) + sign * coefficient
        return LaurentPoly(terms)

    def _term(self) -> Tuple[int, Fraction]:
        coefficient = Fraction(1)
        token = self._peek()
        if token is not None and token.isdigit():
            numerator = self._number()
            denominator = 1
            if self._peek() == "/":
                self._take()
                denominator = self._number()
                if denominator == 0:
                    self.index -= 1
                    self._error("zero denominator")
            coefficient = Fraction(numerator, denominator)
            if self._peek() == "*":
                self._take()
                if self._peek() != "t":
                    self._error("expected 't' after '*'")
            elif self._peek() != "t":
                return 0, coefficient
        if self._peek() != "t":
            self._error("expected a coefficient or 't'")
        self._take()
        exponent = 1
        if self._peek() == "^":
            self._take()
            exponent = self._exponent()
        return exponent, coefficient

    def _exponent(self) -> int:
        closing = False
        if self._peek() == "(":
            self._take()
            closing = True
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._take() == "-" else 1
        value = sign * self._number()
        if closing:
            if self._peek() != ")":
                self._error("expected ')'")
            self._take()
        return value


def parse_laurent(text: str, source: Optional[str] = None) -> LaurentPoly:
    return LaurentPoly.parse(text, source)


def lp_involute(p: LaurentPoly) -> LaurentPoly:
    return p.involute()


def lp_augment(p: LaurentPoly) -> Fraction:
    return p.augment()


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str, integral: bool = False) -> LaurentPoly:
    """Exact ring arithmetic; op is one of add, sub, mul"""
    if op == "add":
        result = a + b
    elif op == "sub":
        result = a - b
    elif op == "mul":
        result = a * b
    else:
        raise ValueError(f"unknown operation {op!r}")
    if integral:
        result.require_integral()
    return result


class HairSeries:
    """Power series in the hair variable h truncated above h^order; t acts as exp(h)"""

    __slots__ = ("_coefficients", "order")

    def __init__(self, coefficients: Mapping[int, Scalar], order: int):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.order = order
        cleaned = {}
        for power, value in coefficients.items():
            value = _fraction(value)
            if power < 0:
                raise ValueError("hair series have no negative powers")
            if value and power <= order:
                cleaned[power] = value
        self._coefficients: Dict[int, Fraction] = dict(sorted(cleaned.items()))

    @classmethod
    def zero(cls, order: int) -> "HairSeries":
        return cls({}, order)

    @classmethod
    def one(cls, order: int) -> "HairSeries":
        return cls({0: 1}, order)

    @classmethod
    def exp(cls, exponent: int, order: int) -> "HairSeries":
        """Series of t^exponent = exp(exponent * h): sum of exponent^n / n! h^n"""
        return cls({n: Fraction(exponent ** n, factorial(n)) for n in range(order + 1)}, order)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, order: int) -> "HairSeries":
        total = cls.zero(order)
        for exponent, value in p.items():
            total = total + cls.exp(exponent, order).scale(value)
        return total

    def coefficient(self, power: int) -> Fraction:
        return self._coefficients.get(power, Fraction(0))

    @property
    def coefficients(self) -> Dict[int, Fraction]:
        return dict(self._coefficients)

    def involute(self) -> "HairSeries":
        """h -> -h"""
        return HairSeries({n: (-value if n % 2 else value) for n, value in self._coefficients.items()},
                          self.order)

    def augment(self) -> Fraction:
        return self.coefficient(0)

    def scale(self, factor: Scalar) -> "HairSeries":
        factor = _fraction(factor)
        return HairSeries({n: value * factor for n, value in self._coefficients.items()}, self.order)

    def _coerce(self, other) -> Optional["HairSeries"]:
        if isinstance(other, HairSeries):
            return other
        if isinstance(other, LaurentPoly):
            return HairSeries.from_laurent(other, self.order)
        if isinstance(other, (int, Fraction)):
            return HairSeries({0: other}, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        merged = dict(self._coefficients)
        for n, value in other._coefficients.items():
            merged[n] = merged.get(n, Fraction(0)) + value
        return HairSeries(merged, order)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        product: Dict[int, Fraction] = {}
        for n1, c1 in self._coefficients.items():
            for n2, c2 in other._coefficients.items():
                if n1 + n2 <= order:
                    product[n1 + n2] = product.get(n1 + n2, Fraction(0)) + c1 * c2
        return HairSeries(product, order)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        mine = {n: v for n, v in self._coefficients.items() if n <= order}
        theirs = {n: v for n, v in other._coefficients.items() if n <= order}
        return mine == theirs

    def __hash__(self):
        return hash((self.order, tuple(self._coefficients.items())))

    def __str__(self):
        if not self._coefficients:
            return f"0 + O(h^{self.order + 1})"
        parts = []
        for n, value in self._coefficients.items():
            mono = "" if n == 0 else ("*h" if n == 1 else f"*h^{n}")
            parts.append(f"{_format_coefficient(value)}{mono}")
        return " + ".join(parts) + f" + O(h^{self.order + 1})"

    def __repr__(self):
        return f"HairSeries('{self}')"


Entry = Union[LaurentPoly, HairSeries]


def _entry(value) -> Entry:
    if isinstance(value, (LaurentPoly, HairSeries)):
        return value
    if isinstance(value, str):
        return LaurentPoly.parse(value)
    return LaurentPoly.constant(value)


class LaurentMatrix:
    """Dense matrix over Λ (or over truncated hair series)"""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = [[_entry(value) for value in row] for row in entries]
        if not grid or not grid[0]:
            raise BlockShapeError("matrix must have at least one row and one column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise BlockShapeError("ragged entry grid")
        self.rows = len(grid)
        self.cols = width
        self._entries: Tuple[Tuple[Entry, ...], ...] = tuple(tuple(row) for row in grid)

    @classmethod
    def identity(cls, size: int) -> "LaurentMatrix":
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LaurentMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["LaurentMatrix"]]) -> "LaurentMatrix":
        grid: List[List[Entry]] = []
        for block_row in blocks:
            height = block_row[0].rows
            if any(block.rows != height for block in block_row):
                raise BlockShapeError("blocks in one row differ in height")
            for i in range(height):
                grid.append([entry for block in block_row for entry in block._entries[i]])
        return cls(grid)

    def __getitem__(self, index: Tuple[int, int]) -> Entry:
        i, j = index
        return self._entries[i][j]

    def to_lists(self) -> List[List[Entry]]:
        return [list(row) for row in self._entries]

    def block(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> "LaurentMatrix":
        return LaurentMatrix([row[col_start:col_stop] for row in self._entries[row_start:row_stop]])

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix([[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def involute(self) -> "LaurentMatrix":
        return LaurentMatrix([[entry.involute() for entry in row] for row in self._entries])

    def conjugate_transpose(self) -> "LaurentMatrix":
        return self.transpose().involute()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        """Symmetric under transpose-plus-involution"""
        return self.is_square() and self == self.conjugate_transpose()

    def _same_shape(self, other: "LaurentMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise BlockShapeError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        self._same_shape(other)
        return LaurentMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)])

    def __neg__(self):
        return LaurentMatrix([[-entry for entry in row] for row in self._entries])

    def __sub__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentMatrix):
            if self.cols != other.rows:
                raise BlockShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            grid = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    total = self._entries[i][0] * other._entries[0][j]
                    for k in range(1, self.cols):
                        total = total + self._entries[i][k] * other._entries[k][j]
                    row.append(total)
                grid.append(row)
            return LaurentMatrix(grid)
        if isinstance(other, (int, Fraction, LaurentPoly, HairSeries)):
            return LaurentMatrix([[entry * other for entry in row] for row in self._entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, HairSeries)):
            return LaurentMatrix([[other * entry for entry in row] for row in self._entries])
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r1, r2 in zip(self._entries, other._entries) for a, b in zip(r1, r2))

    __hash__ = None

    def __str__(self):
        cells = [[str(entry) for entry in row] for row in self._entries]
        width = max(len(cell) for row in cells for cell in row)
        return "\n".join("[ " + "  ".join(cell.rjust(width) for cell in row) + " ]" for row in cells)

    def __repr__(self):
        return f"LaurentMatrix({self.rows}x{self.cols})"


def _is_zero_block(matrix: LaurentMatrix) -> bool:
    return all(matrix[i, j] == 0 for i in range(matrix.rows) for j in range(matrix.cols))


def _is_identity_block(matrix: LaurentMatrix) -> bool:
    return all(matrix[i, j] == (1 if i == j else 0) for i in range(matrix.rows) for j in range(matrix.cols))


def block_negative_inverse(matrix: LaurentMatrix, verify: bool = True) -> LaurentMatrix:
    """
    Negative inverse of [[0, I], [I, B]]: returns [[B, -I], [-I, 0]].
    The product with the input is checked to be -I in both orders when verify is set.
    """
    if not matrix.is_square() or matrix.rows % 2:
        raise BlockShapeError(f"expected an even square matrix, got {matrix.rows}x{matrix.cols}")
    n = matrix.rows // 2
    if not _is_zero_block(matrix.block(0, n, 0, n)):
        raise BlockShapeError("upper-left block is not zero")
    if not _is_identity_block(matrix.block(0, n, n, 2 * n)):
        raise BlockShapeError("upper-right block is not the identity")
    if not _is_identity_block(matrix.block(n, 2 * n, 0, n)):
        raise BlockShapeError("lower-left block is not the identity")
    lower_right = matrix.block(n, 2 * n, n, 2 * n)
    if not lower_right.is_hermitian():
        raise BlockShapeError("lower-right block is not symmetric under transpose-plus-involution")

    minus_identity = -LaurentMatrix.identity(n)
    result = LaurentMatrix.from_blocks([
        [lower_right, minus_identity],
        [minus_identity, LaurentMatrix.zeros(n, n)],
    ])
    if verify:
        target = -LaurentMatrix.identity(2 * n)
        if result * matrix != target or matrix * result != target:
            raise ArithmeticError("block inverse failed verification")
    return result
