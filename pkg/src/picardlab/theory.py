"""The matrix theory: arities ``n >= 0``, integer ``k x n`` matrices as
1-cells ``n -> k``, matrix product as composition.

Only identity 2-cells exist here; see ``two_cell``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .zlin import DimensionError, IntMatrix


class ArityMismatchError(DimensionError):
    pass


@dataclass(frozen=True)
class TheoryObject:
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be non-negative")


@dataclass(frozen=True)
class OneCell:
    source: int
    target: int
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target, self.source):
            raise ArityMismatchError(
                f"a cell {self.source} -> {self.target} needs a {self.target}x{self.source} matrix, "
                f"got {self.matrix.rows}x{self.matrix.cols}"
            )

    @classmethod
    def of(cls, rows, source: Optional[int] = None) -> "OneCell":
        m = IntMatrix.from_rows(rows, cols=source)
        return cls(m.cols, m.rows, m)

    @classmethod
    def identity(cls, n: int) -> "OneCell":
        return cls(n, n, IntMatrix.identity(n))

    def row(self, i: int) -> tuple:
        return self.matrix.row(i)

    def __matmul__(self, other: "OneCell") -> "OneCell":
        return compose_cells(self, other)

    def __str__(self):
        return str(self.matrix) if self.matrix.rows and self.matrix.cols else f"0[{self.target}x{self.source}]"


def compose_cells(Q: OneCell, P: OneCell) -> OneCell:
    """``Q ∘ P`` with matrix ``Q @ P``."""
    if P.target != Q.source:
        raise ArityMismatchError(f"cannot compose {Q.source}-ary cell after a cell into arity {P.target}")
    return OneCell(P.source, Q.target, Q.matrix @ P.matrix)


def projections(n: int, m: int) -> tuple:
    p1 = OneCell(n + m, n, IntMatrix.from_rows([[int(i == j) for j in range(n + m)] for i in range(n)], cols=n + m))
    p2 = OneCell(n + m, m, IntMatrix.from_rows([[int(i + n == j) for j in range(n + m)] for i in range(m)], cols=n + m))
    return p1, p2


def pair(f: OneCell, g: OneCell) -> OneCell:
    """The cell into the product whose components are ``f`` and ``g``."""
    if f.source != g.source:
        raise ArityMismatchError("pairing cells with different sources")
    return OneCell(f.source, f.target + g.target, f.matrix.vstack(g.matrix))


def product_structure(n: int, m: int):
    """Projections out of arity ``n + m`` and the pairing rule."""
    p1, p2 = projections(n, m)
    return p1, p2, pair


def terminal_cell(k: int) -> OneCell:
    """The unique cell ``k -> 0``."""
    return OneCell(k, 0, IntMatrix.zeros(0, k))


def neutral_cell(k: int) -> OneCell:
    """The cell ``0 -> k`` (the zero matrix); it picks the neutral tuple."""
    return OneCell(0, k, IntMatrix.zeros(k, 0))


@dataclass(frozen=True)
class TwoCell:
    source: OneCell
    target: OneCell

    def __post_init__(self):
        if self.source != self.target:
            raise ValueError("only identity 2-cells are available")


def two_cell(P: OneCell, Q: OneCell) -> Optional[TwoCell]:
    """The 2-cell ``P => Q`` if ``P == Q`` as matrices, else None.

    A 2-cell between distinct matrices such as ``(1) => (2)`` would have to
    be sent to a natural isomorphism ``X -> 2X``, which the discrete Picard
    groupoid on Z does not have.
    """
    if (P.source, P.target) != (Q.source, Q.target):
        raise ArityMismatchError("2-cells need parallel 1-cells")
    return TwoCell(P, Q) if P.matrix == Q.matrix else None


SWAP = OneCell.of([[0, 1], [1, 0]])
SUM = OneCell.of([[1, 1]])
NEGATE = OneCell.of([[-1]])


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"1,1"`` or ``"0,1;1,0"`` (rows by ';', entries by ',')."""
    text = text.strip()
    if not text:
        raise ValueError("empty matrix literal")
    try:
        rows = [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise ValueError(f"bad matrix literal {text!r}: {exc}") from exc
    if len({len(r) for r in rows}) != 1:
        raise DimensionError(f"rows of {text!r} have different lengths")
    return IntMatrix.from_rows(rows)
