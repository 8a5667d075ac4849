"""Exact rational arithmetic and labeled linear algebra.

Everything here is over Q, exactly.  ``Rational`` is ``fractions.Fraction``
(always lowest terms, positive denominator).  ``LabeledMatrix`` carries
opaque row/column labels so that rank, triangularity and span statements
can be phrased directly against partition- and multiset-indexed matrices.

Rank uses Bareiss fraction-free elimination on the denominator-cleared
integer matrix, which keeps intermediate entries as true minors instead of
letting numerators blow up.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

Rational = Fraction

Label = Hashable


class LabelMismatchError(ValueError):
    pass


class LabeledVector:
    """Immutable rational vector indexed by opaque labels."""

    __slots__ = ("labels", "values")

    def __init__(self, labels: Sequence[Label], values: Iterable[Rational]):
        self.labels = tuple(labels)
        self.values = tuple(Fraction(v) for v in values)
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels in vector")

    def value(self, label: Label) -> Rational:
        return self.values[self.labels.index(label)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, LabeledVector)
                and self.labels == other.labels and self.values == other.values)

    def __repr__(self) -> str:
        return "LabeledVector(%r)" % (dict(zip(self.labels, self.values)),)


class LabeledMatrix:
    """Dense exact-rational matrix with unique row and column labels."""

    __slots__ = ("row_labels", "col_labels", "_rows", "_row_index", "_col_index")

    def __init__(self, row_labels: Sequence[Label], col_labels: Sequence[Label],
                 rows: Sequence[Sequence[Rational]]):
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")
        self._rows = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if len(self._rows) != len(self.row_labels):
            raise ValueError("row count does not match row labels")
        for r in self._rows:
            if len(r) != len(self.col_labels):
                raise ValueError("column count does not match column labels")
        self._row_index = {lab: i for i, lab in enumerate(self.row_labels)}
        self._col_index = {lab: j for j, lab in enumerate(self.col_labels)}

    @classmethod
    def from_function(cls, row_labels: Sequence[Label], col_labels: Sequence[Label],
                      fn: Callable[[Label, Label], Rational]) -> "LabeledMatrix":
        rows = [[fn(r, c) for c in col_labels] for r in row_labels]
        return cls(row_labels, col_labels, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_labels), len(self.col_labels))

    def entry(self, row: Label, col: Label) -> Rational:
        return self._rows[self._row_index[row]][self._col_index[col]]

    def row(self, row: Label) -> LabeledVector:
        return LabeledVector(self.col_labels, self._rows[self._row_index[row]])

    def column(self, col: Label) -> LabeledVector:
        j = self._col_index[col]
        return LabeledVector(self.row_labels, (r[j] for r in self._rows))

    def rows(self) -> tuple[tuple[Rational, ...], ...]:
        return self._rows

    def transpose(self) -> "LabeledMatrix":
        n, m = self.shape
        return LabeledMatrix(self.col_labels, self.row_labels,
                             [[self._rows[i][j] for i in range(n)] for j in range(m)])

    def submatrix(self, row_labels: Sequence[Label], col_labels: Sequence[Label]) -> "LabeledMatrix":
        return LabeledMatrix(
            row_labels, col_labels,
            [[self.entry(r, c) for c in col_labels] for r in row_labels])

    def __repr__(self) -> str:
        return "LabeledMatrix(%d x %d)" % self.shape


def _integer_rows(rows: Sequence[Sequence[Rational]]) -> list[list[int]]:
    """Clear denominators row by row (rank-preserving)."""
    out = []
    for r in rows:
        mult = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * mult) for v in r])
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination over Z; all divisions are exact."""
    if not rows or not rows[0]:
        return 0
    m = [r[:] for r in rows]
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = None
        for i in range(rank, n_rows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, n_rows):
            head = m[i][col]
            for j in range(col, n_cols):
                m[i][j] = (m[i][j] * pivot - head * m[rank][j]) // prev
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(matrix: LabeledMatrix) -> int:
    """Exact rank over Q."""
    return _bareiss_rank(_integer_rows(matrix.rows()))


class TriangularReport(NamedTuple):
    triangular: bool
    diagonal_nonzero: bool


def _resolve_order(order, labels) -> list[Label]:
    if callable(order):
        return sorted(labels, key=order)
    ordered = [lab for lab in order if lab in set(labels)]
    if len(ordered) != len(labels) or set(ordered) != set(labels):
        raise LabelMismatchError("order does not cover the matrix labels")
    return ordered


def is_triangular(matrix: LabeledMatrix, row_order, col_order, mode: str) -> TriangularReport:
    """Check triangularity of ``matrix`` under the given label orders.

    ``row_order``/``col_order`` are either explicit label sequences or sort
    keys.  The matrix must be square after ordering; the diagonal pairs the
    i-th row with the i-th column.  ``mode`` is ``"upper"`` or ``"lower"``.
    Returns (triangular, all-diagonal-entries-nonzero).
    """
    if mode not in ("upper", "lower"):
        raise ValueError("mode must be 'upper' or 'lower'")
    rows = _resolve_order(row_order, matrix.row_labels)
    cols = _resolve_order(col_order, matrix.col_labels)
    if len(rows) != len(cols):
        raise LabelMismatchError("matrix is not square after ordering: %d x %d"
                                 % (len(rows), len(cols)))
    n = len(rows)
    triangular = True
    for i in range(n):
        for j in range(n):
            forbidden = (i > j) if mode == "upper" else (i < j)
            if forbidden and matrix.entry(rows[i], cols[j]) != 0:
                triangular = False
    diagonal_nonzero = all(matrix.entry(rows[i], cols[i]) != 0 for i in range(n))
    return TriangularReport(triangular, diagonal_nonzero)


def _check_common_labels(vectors: Sequence[LabeledVector]) -> None:
    labels = vectors[0].labels
    for v in vectors[1:]:
        if v.labels != labels:
            raise LabelMismatchError("vectors do not share a label set")


def in_span(v: LabeledVector, basis: Sequence[LabeledVector]) -> bool:
    """True iff ``v`` lies in the rational span of ``basis``."""
    if not basis:
        return all(x == 0 for x in v.values)
    _check_common_labels([v] + list(basis))
    base_rows = [list(b.values) for b in basis]
    r0 = _bareiss_rank(_integer_rows(base_rows))
    r1 = _bareiss_rank(_integer_rows(base_rows + [list(v.values)]))
    return r0 == r1


def solve_linear(matrix: LabeledMatrix, rhs: LabeledVector) -> dict[Label, Rational] | None:
    """One exact solution x of matrix @ x = rhs, or None if inconsistent.

    ``rhs`` is indexed by the matrix row labels; the result maps column
    labels to values (free variables are set to 0).
    """
    if rhs.labels != matrix.row_labels:
        raise LabelMismatchError("rhs labels must equal the matrix row labels")
    n, m = matrix.shape
    aug = [list(matrix.rows()[i]) + [rhs.values[i]] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(m):
        pivot_row = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][m] != 0:
            return None
    solution = {lab: Fraction(0) for lab in matrix.col_labels}
    for (pr, pc) in pivots:
        solution[matrix.col_labels[pc]] = aug[pr][m]
    return solution
