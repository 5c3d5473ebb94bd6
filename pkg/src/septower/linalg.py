"""Dense exact linear algebra over a :class:`~septower.fields.FieldSpec`.

Reduced row echelon forms are canonical: pivots are chosen as the first
nonzero entry scanning columns left to right, so every basis produced here
(kernels, images, idempotent splittings) is deterministic.

Over the rationals elimination is fraction free (Bareiss): rows are scaled to
integers, every update divides exactly by the previous pivot, and rows that
do not meet the current pivot column are rescaled lazily so sparse systems
stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotIdempotent
from .fields import FieldSpec, PrimeField, Rationals


class Matrix:
    """Immutable row-major matrix over a field.

    ``data`` is a list of row lists; callers must not mutate it.
    """

    __slots__ = ("field", "rows", "cols", "data", "_key")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: list[list]):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._key = None

    # -- construction ------------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None):
        data = [[field.coerce(x) for x in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int):
        cols = len(columns)
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch("column length mismatch")
        data = [[columns[j][i] for j in range(cols)] for i in range(rows)]
        return cls(field, rows, cols, data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int):
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int):
        z, o = field.zero, field.one
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column_vector(cls, field: FieldSpec, v: Sequence):
        return cls(field, len(v), 1, [[x] for x in v])

    @classmethod
    def row_vector(cls, field: FieldSpec, v: Sequence):
        return cls(field, 1, len(v), [list(v)])

    # -- access ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "Matrix":
        row_idx, col_idx = list(row_idx), list(col_idx)
        data = [[self.data[i][j] for j in col_idx] for i in row_idx]
        return Matrix(self.field, len(row_idx), len(col_idx), data)

    @property
    def T(self) -> "Matrix":
        data = [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]
        return Matrix(self.field, self.cols, self.rows, data)

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.rows, self.cols, tuple(tuple(r) for r in self.data))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and all(list(ra) == list(rb) for ra, rb in zip(self.data, other.data))
        )

    def __hash__(self):
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    # -- arithmetic ----------------------------------------------------------
    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        F = self.field
        data = [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        return Matrix(F, self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        F = self.field
        data = [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        return Matrix(F, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols, [[F.neg(a) for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        F = self.field
        return Matrix(F, self.rows, self.cols, [[F.mul(c, a) for a in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        return Matrix(self.field, self.rows, other.cols, matmul_rows(self.field, self.data, other.data, other.cols))

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.shape} applied to vector of length {len(v)}")
        F = self.field
        return [F.dot(r, v) for r in self.data]

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row ``(i, k)`` has index ``i * other.rows + k``."""
        self._check_field(other)
        F = self.field
        z = F.zero
        data = []
        for ra in self.data:
            for rb in other.data:
                row = []
                for a in ra:
                    if F.is_zero(a):
                        row.extend([z] * other.cols)
                    else:
                        row.extend(F.mul(a, b) for b in rb)
                data.append(row)
        return Matrix(F, self.rows * other.rows, self.cols * other.cols, data)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [ra + rb for ra, rb in zip(self.data, other.data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      [list(r) for r in self.data] + [list(r) for r in other.data])

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(a) for r in self.data for a in r)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        F = self.field
        return all(
            (a == F.one) if i == j else F.is_zero(a)
            for i, r in enumerate(self.data)
            for j, a in enumerate(r)
        )

    def rank(self) -> int:
        return len(rref(self)[1])


# ---------------------------------------------------------------------------
# matrix products


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale rational rows by a common denominator."""
    d = 1
    for r in rows:
        for x in r:
            if x.denominator != 1:
                d = lcm(d, x.denominator)
    if d == 1:
        return [[x.numerator for x in r] for r in rows], 1
    return [[(x.numerator * d) // x.denominator for x in r] for r in rows], d


def matmul_rows(F: FieldSpec, A: list[list], B: list[list], bcols: int) -> list[list]:
    if isinstance(F, PrimeField):
        p = F.p
        out = []
        for ra in A:
            acc = [0] * bcols
            for a, rb in zip(ra, B):
                if a:
                    acc = [x + a * y for x, y in zip(acc, rb)]
            out.append([x % p for x in acc])
        return out
    if isinstance(F, Rationals):
        Bi, db = _int_rows(B)
        out = []
        for ra in A:
            (ria,), da = _int_rows([ra])
            acc = [0] * bcols
            for a, rb in zip(ria, Bi):
                if a:
                    acc = [x + a * y for x, y in zip(acc, rb)]
            den = da * db
            out.append([Fraction(x, den) if x else Fraction(0) for x in acc])
        return out
    out = []
    z = F.zero
    for ra in A:
        acc = [z] * bcols
        for a, rb in zip(ra, B):
            if F.is_zero(a):
                continue
            for j, y in enumerate(rb):
                if not F.is_zero(y):
                    acc[j] = F.add(acc[j], F.mul(a, y))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# row reduction


def _rref_prime(rows: list[list[int]], ncols: int, p: int):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    m = len(rows)
    for c in range(ncols):
        if r == m:
            break
        piv_row = None
        for i in range(r, m):
            if rows[i][c]:
                piv_row = i
                break
        if piv_row is None:
            continue
        rows[r], rows[piv_row] = rows[piv_row], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        prow = [(x * inv) % p for x in rows[r]]
        rows[r] = prow
        for i in range(m):
            if i != r:
                a = rows[i][c]
                if a:
                    rows[i] = [(x - a * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rref_rational(rows: list[list[Fraction]], ncols: int):
    """Fraction-free Gauss-Jordan (Bareiss) with lazily rescaled rows.

    Invariant: the true integer row ``i`` equals ``A[i] * prev // ref[i]``
    where ``prev`` is the most recent pivot.  Rows that miss a pivot column
    are not touched until they are needed.
    """
    A = []
    for r in rows:
        d = 1
        for x in r:
            if x.denominator != 1:
                d = lcm(d, x.denominator)
        A.append([(x.numerator * d) // x.denominator for x in r])
    m = len(A)
    ref = [1] * m
    prev = 1
    pivots: list[int] = []
    r = 0

    def realize(i):
        if ref[i] != prev:
            A[i] = [(x * prev) // ref[i] for x in A[i]]
            ref[i] = prev

    for c in range(ncols):
        if r == m:
            break
        piv_row = None
        for i in range(r, m):
            if A[i][c]:
                piv_row = i
                break
        if piv_row is None:
            continue
        A[r], A[piv_row] = A[piv_row], A[r]
        ref[r], ref[piv_row] = ref[piv_row], ref[r]
        realize(r)
        prow = A[r]
        piv = prow[c]
        for i in range(m):
            if i == r or not A[i][c]:
                continue
            realize(i)
            a = A[i][c]
            A[i] = [(piv * x - a * y) // prev for x, y in zip(A[i], prow)]
            ref[i] = piv
        ref[r] = piv
        prev = piv
        pivots.append(c)
        r += 1
    out = []
    for i in range(r):
        row = A[i]
        # the pivot entry of row i is currently row[pivots[i]] (scaled by ref)
        piv = row[pivots[i]]
        out.append([Fraction(x, piv) if x else Fraction(0) for x in row])
    return out, pivots


def _rref_generic(F: FieldSpec, rows: list[list], ncols: int):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    m = len(rows)
    for c in range(ncols):
        if r == m:
            break
        piv_row = None
        for i in range(r, m):
            if not F.is_zero(rows[i][c]):
                piv_row = i
                break
        if piv_row is None:
            continue
        rows[r], rows[piv_row] = rows[piv_row], rows[r]
        inv = F.inv(rows[r][c])
        prow = [F.mul(x, inv) for x in rows[r]]
        rows[r] = prow
        for i in range(m):
            if i != r:
                a = rows[i][c]
                if not F.is_zero(a):
                    rows[i] = [F.sub(x, F.mul(a, y)) if not F.is_zero(y) else x
                               for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref_rows(F: FieldSpec, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced echelon form of ``rows``; returns the nonzero rows and pivots."""
    if isinstance(F, PrimeField):
        return _rref_prime(rows, ncols, F.p)
    if isinstance(F, Rationals):
        return _rref_rational(rows, ncols)
    return _rref_generic(F, rows, ncols)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = rref_rows(M.field, M.data, M.cols)
    return Matrix(M.field, len(rows), M.cols, rows), pivots


def solve_affine(M: Matrix, b: Sequence) -> tuple[list, list[list]] | None:
    """Solve ``M x = b``.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.  The
    particular solution has every free variable set to zero and the kernel
    basis has one vector per free column (that entry 1), both read off the
    reduced echelon form.
    """
    F = M.field
    if len(b) != M.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {M.rows} equations")
    c = M.cols
    aug = [list(r) + [F.coerce(x)] for r, x in zip(M.data, b)]
    rows, pivots = rref_rows(F, aug, c + 1)
    if pivots and pivots[-1] == c:
        return None
    x = [F.zero] * c
    for row, pc in zip(rows, pivots):
        x[pc] = row[c]
    return x, _kernel_from_rref(F, rows, pivots, c)


def _kernel_from_rref(F: FieldSpec, rows, pivots, ncols) -> list[list]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for row, pc in zip(rows, pivots):
            if not F.is_zero(row[f]):
                v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def kernel_basis(M: Matrix) -> list[list]:
    rows, pivots = rref_rows(M.field, M.data, M.cols)
    return _kernel_from_rref(M.field, rows, pivots, M.cols)


def image_basis(M: Matrix) -> tuple[list[list], list[int]]:
    """Canonical basis of the column space (rows of ``rref(M^T)``) and its pivots."""
    rows, pivots = rref_rows(M.field, M.T.data, M.rows)
    return rows, pivots


def inverse(M: Matrix) -> Matrix | None:
    if M.rows != M.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = M.rows
    F = M.field
    I = Matrix.identity(F, n)
    aug = [list(r) + list(e) for r, e in zip(M.data, I.data)]
    rows, pivots = rref_rows(F, aug, 2 * n)
    if n and (len(pivots) < n or pivots[n - 1] != n - 1):
        return None
    return Matrix(F, n, n, [r[n:] for r in rows[:n]])


def split_idempotent(e: Matrix, check: bool = True) -> tuple[Matrix, Matrix]:
    """Factor an idempotent ``e`` as ``incl @ proj`` with ``proj @ incl = I``.

    ``incl`` (n x r) has the canonical image basis as columns; ``proj``
    (r x n) consists of the rows of ``e`` at the pivot positions of that
    basis, which are exactly the coordinates of ``e(x)`` in it.
    """
    if e.rows != e.cols:
        raise DimensionMismatch("idempotent must be square")
    if check and not (e @ e) == e:
        raise NotIdempotent("e @ e != e")
    basis, pivots = image_basis(e)
    n, r = e.rows, len(basis)
    incl = Matrix(e.field, n, r, [[basis[k][i] for k in range(r)] for i in range(n)])
    proj = Matrix(e.field, r, n, [list(e.data[p]) for p in pivots])
    return incl, proj


def split_idempotent_rows(e: Matrix) -> tuple[Matrix, Matrix, list[int]]:
    """Factor an idempotent ``e`` through a subset of its own columns.

    Returns ``(incl, proj, J)`` with ``proj = rref(e)``, ``J`` its pivot
    columns and ``incl = e[:, J]``.  The image basis is ``e(b_j)`` for the
    standard basis vectors ``b_j``, ``j in J``, which keeps products of basis
    elements cheap when ``e`` is multiplication by an idempotent.
    """
    if e.rows != e.cols:
        raise DimensionMismatch("idempotent must be square")
    rows, pivots = rref_rows(e.field, e.data, e.cols)
    n, r = e.rows, len(rows)
    proj = Matrix(e.field, r, n, rows)
    incl = Matrix(e.field, n, r, [[e.data[i][j] for j in pivots] for i in range(n)])
    return incl, proj, pivots
