import logging
from typing import Sequence

from exact_arith import FieldDescriptor, FieldMismatchError, Scalar

Vector = tuple[Scalar, ...]


class ShapeError(ValueError):
    """Raised when matrix or vector shapes are incompatible."""


class ExactMatrix:
    """
    Dense row-major matrix of Scalars over a single field.

    Immutable; every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries: Sequence[Scalar], field: FieldDescriptor):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        for entry in entries:
            if entry.field != field:
                raise FieldMismatchError(f"entry {entry} is not in {field}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.field = field

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldDescriptor, cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != width:
                raise ShapeError(f"ragged rows: expected width {width}, got {len(r)}")
        return cls(len(rows), width, [field.scalar(x) for r in rows for x in r], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldDescriptor) -> "ExactMatrix":
        return cls(rows, cols, [field.zero()] * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: FieldDescriptor) -> "ExactMatrix":
        one, zero = field.one(), field.zero()
        return cls(n, n, [one if r == c else zero for r in range(n) for c in range(n)], field)

    @classmethod
    def from_vector(cls, v: Sequence[Scalar], rows: int, cols: int, field: FieldDescriptor) -> "ExactMatrix":
        """Reshape a row-major flattened vector."""
        return cls(rows, cols, v, field)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        r, c = key
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Vector:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> Vector:
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def as_rows(self) -> list[Vector]:
        return [self.row(r) for r in range(self.rows)]

    def flatten(self) -> Vector:
        return self.entries

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(r)) for r in range(self.rows))
        return f"ExactMatrix[{self.rows}x{self.cols} over {self.field}]({body})"


def _check_field(a: ExactMatrix, b: ExactMatrix):
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine matrices over {a.field} and {b.field}")


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_field(a, b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    zero = a.field.zero()
    entries = []
    for r in range(a.rows):
        row = a.row(r)
        for c in range(b.cols):
            acc = zero
            for k in range(a.cols):
                if row[k].value != 0:
                    acc = acc + row[k] * b[k, c]
            entries.append(acc)
    return ExactMatrix(a.rows, b.cols, entries, a.field)


def scale(s: Scalar, m: ExactMatrix) -> ExactMatrix:
    s = m.field.scalar(s)
    return ExactMatrix(m.rows, m.cols, [s * e for e in m.entries], m.field)


def add(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_field(a, b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.shape} and {b.shape}")
    return ExactMatrix(a.rows, a.cols, [x + y for x, y in zip(a.entries, b.entries)], a.field)


def sub(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_field(a, b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot subtract {b.shape} from {a.shape}")
    return ExactMatrix(a.rows, a.cols, [x - y for x, y in zip(a.entries, b.entries)], a.field)


def transpose(m: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(m.cols, m.rows, [m[r, c] for c in range(m.cols) for r in range(m.rows)], m.field)


def apply(m: ExactMatrix, v: Sequence[Scalar]) -> Vector:
    """Matrix-vector product m.v."""
    if len(v) != m.cols:
        raise ShapeError(f"vector of length {len(v)} does not match {m.cols} columns")
    for x in v:
        if x.field != m.field:
            raise FieldMismatchError(f"vector entry {x} is not in {m.field}")
    zero = m.field.zero()
    out = []
    for r in range(m.rows):
        acc = zero
        for a, x in zip(m.row(r), v):
            if a.value != 0 and x.value != 0:
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


def block_diagonal(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_field(a, b)
    zero = a.field.zero()
    rows = []
    for r in range(a.rows):
        rows.append(list(a.row(r)) + [zero] * b.cols)
    for r in range(b.rows):
        rows.append([zero] * a.cols + list(b.row(r)))
    return ExactMatrix.from_rows(rows, a.field, cols=a.cols + b.cols)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """
    Reduced row echelon form with deterministic pivoting.

    The pivot for each column is the first remaining row with a nonzero entry
    in that column; no magnitude heuristics are needed in exact arithmetic.

    Returns:
        (reduced matrix, pivot columns in increasing order)
    """
    grid = [list(m.row(r)) for r in range(m.rows)]
    pivots = []
    pivot_row = 0
    for c in range(m.cols):
        if pivot_row == m.rows:
            break
        found = next((r for r in range(pivot_row, m.rows) if grid[r][c].value != 0), None)
        if found is None:
            continue
        grid[pivot_row], grid[found] = grid[found], grid[pivot_row]
        lead = grid[pivot_row][c]
        if lead.value != 1:
            factor = 1 / lead
            grid[pivot_row] = [x * factor for x in grid[pivot_row]]
        for r in range(m.rows):
            if r == pivot_row:
                continue
            f = grid[r][c]
            if f.value != 0:
                grid[r] = [x - f * y for x, y in zip(grid[r], grid[pivot_row])]
        pivots.append(c)
        pivot_row += 1
    reduced = ExactMatrix(m.rows, m.cols, [x for row in grid for x in row], m.field)
    return reduced, tuple(pivots)


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: ExactMatrix) -> list[Vector]:
    """
    Canonical basis of the nullspace of m.

    Free variables are taken in increasing column index; the vector for free
    column f has a 1 at f and 0 at every other free column.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero, one = m.field.zero(), m.field.one()
    basis = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        basis.append(tuple(v))
    logging.debug(f"Kernel of {m.rows}x{m.cols} matrix: rank {len(pivots)}, nullity {len(basis)}")
    return basis


def inverse(m: ExactMatrix) -> ExactMatrix:
    """Inverse via RREF of [m | I]. Raises ZeroDivisionError when m is singular."""
    if m.rows != m.cols:
        raise ShapeError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    eye = ExactMatrix.identity(n, m.field)
    augmented = ExactMatrix.from_rows([list(m.row(r)) + list(eye.row(r)) for r in range(n)], m.field, cols=2 * n)
    reduced, pivots = rref(augmented)
    if pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix.from_rows([reduced.row(r)[n:] for r in range(n)], m.field, cols=n)


def _stack(vectors: Sequence[Sequence[Scalar]], length: int | None = None, field: FieldDescriptor | None = None) -> ExactMatrix:
    vectors = [tuple(v) for v in vectors]
    if length is None:
        length = len(vectors[0])
    if field is None:
        field = vectors[0][0].field
    for v in vectors:
        if len(v) != length:
            raise ShapeError(f"vector of length {len(v)} does not match length {length}")
    return ExactMatrix(len(vectors), length, [x for v in vectors for x in v], field)


def canonical_basis(vectors: Sequence[Sequence[Scalar]]) -> list[Vector]:
    """Nonzero rows of the RREF of the stacked vectors."""
    if not vectors or len(vectors[0]) == 0:
        return []
    reduced, pivots = rref(_stack(vectors))
    return [reduced.row(r) for r in range(len(pivots))]


def _check_compatible(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]):
    everything = [tuple(v) for v in list(a) + list(b)]
    if not everything:
        return
    length = len(everything[0])
    fields = {x.field for v in everything for x in v}
    if any(len(v) != length for v in everything):
        raise ShapeError("vectors of different lengths cannot be compared")
    if len(fields) > 1:
        raise FieldMismatchError(f"vectors span several fields: {sorted(str(f) for f in fields)}")


def subspace_equal(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> bool:
    """True iff the two bases span the same subspace (identical canonical RREFs)."""
    _check_compatible(a, b)
    return canonical_basis(a) == canonical_basis(b)


def span_contains(a: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> bool:
    """True iff appending v to a does not increase the rank."""
    _check_compatible(a, [v])
    if all(x.value == 0 for x in v):
        return True
    if not a:
        return False
    return rank(_stack(list(a) + [v])) == rank(_stack(a))

