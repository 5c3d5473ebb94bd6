"""Finite-dimensional unital associative algebras given by structure constants.

An algebra of dimension ``n`` stores its multiplication as an ``n x n^2``
matrix whose column ``i*n + j`` holds the coordinates of ``e_i e_j``.  Tensor
bases are always row-major with the left factor major.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, FieldMismatch, NotAssociative, NotMultiplicative, NotUnital
from .fields import FieldSpec
from .linalg import Matrix, matmul_rows, rref_rows


class Algebra:
    """A validated algebra.  Build instances with :func:`make_algebra`."""

    __slots__ = ("field", "dim", "mult", "unit", "commutative", "_cols", "_cache")

    def __init__(self, field: FieldSpec, dim: int, mult: Matrix, unit: tuple, commutative: bool):
        self.field = field
        self.dim = dim
        self.mult = mult
        self.unit = unit
        self.commutative = commutative
        self._cols = mult.T.data if dim else []
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, field={self.field}, commutative={self.commutative})"

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.field == other.field and self.dim == other.dim and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self) -> str:
        """Content fingerprint (field, structure constants, unit)."""
        k = self._cache.get("key")
        if k is None:
            h = hashlib.sha1(repr((str(self.field), self.dim, self.mult.key, self.unit)).encode())
            k = self._cache["key"] = h.hexdigest()
        return k

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    # -- element arithmetic (elements are coordinate lists) -----------------
    def basis_vector(self, i: int) -> list:
        F = self.field
        v = [F.zero] * self.dim
        v[i] = F.one
        return v

    def product_of_basis(self, i: int, j: int) -> list:
        return self._cols[i * self.dim + j]

    def mul(self, a: Sequence, b: Sequence) -> list:
        F, n, cols = self.field, self.dim, self._cols
        acc = [F.zero] * n
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                if F.is_zero(y):
                    continue
                c = F.mul(x, y)
                col = cols[i * n + j]
                acc = [F.add(s, F.mul(c, t)) if not F.is_zero(t) else s for s, t in zip(acc, col)]
        return acc

    def left_matrix(self, a: Sequence) -> Matrix:
        """Matrix of ``x -> a x``."""
        F, n, cols = self.field, self.dim, self._cols
        rows_t = []  # columns of the result
        for j in range(n):
            acc = [F.zero] * n
            for i, x in enumerate(a):
                if not F.is_zero(x):
                    col = cols[i * n + j]
                    acc = [F.add(s, F.mul(x, t)) if not F.is_zero(t) else s for s, t in zip(acc, col)]
            rows_t.append(acc)
        return Matrix(F, n, n, [list(r) for r in zip(*rows_t)] if n else [])

    def right_matrix(self, a: Sequence) -> Matrix:
        """Matrix of ``x -> x a``."""
        F, n, cols = self.field, self.dim, self._cols
        rows_t = []
        for i in range(n):
            acc = [F.zero] * n
            for j, y in enumerate(a):
                if not F.is_zero(y):
                    col = cols[i * n + j]
                    acc = [F.add(s, F.mul(y, t)) if not F.is_zero(t) else s for s, t in zip(acc, col)]
            rows_t.append(acc)
        return Matrix(F, n, n, [list(r) for r in zip(*rows_t)] if n else [])

    def basis_left_matrices(self) -> list[Matrix]:
        mats = self._cache.get("L")
        if mats is None:
            mats = self._cache["L"] = [self.left_matrix(self.basis_vector(i)) for i in range(self.dim)]
        return mats

    def power(self, a: Sequence, e: int) -> list:
        result = list(self.unit)
        base = list(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def generators(self) -> list[int]:
        """Indices of basis elements that, with 1, generate the algebra.

        Chosen greedily in basis order, so the list is deterministic.
        """
        g = self._cache.get("generators")
        if g is None:
            g = self._cache["generators"] = _greedy_generators(self)
        return g


def _reduce_against(F, basis_rows, pivots, v):
    v = list(v)
    for row, pc in zip(basis_rows, pivots):
        c = v[pc]
        if not F.is_zero(c):
            v = [F.sub(x, F.mul(c, y)) if not F.is_zero(y) else x for x, y in zip(v, row)]
    return v


def _greedy_generators(A: Algebra) -> list[int]:
    F, n = A.field, A.dim
    if n == 0:
        return []
    rows: list[list] = []
    pivots: list[int] = []

    def insert(v) -> bool:
        nonlocal rows, pivots
        w = _reduce_against(F, rows, pivots, v)
        if all(F.is_zero(x) for x in w):
            return False
        rows, pivots = rref_rows(F, rows + [w], n)
        return True

    gens: list[int] = []
    span: list[list] = []  # spanning vectors of the current subalgebra
    if insert(list(A.unit)):
        span.append(list(A.unit))
    for i in range(n):
        e = A.basis_vector(i)
        if not all(F.is_zero(x) for x in _reduce_against(F, rows, pivots, e)):
            gens.append(i)
            queue = [e]
            insert(e)
            span.append(e)
            while queue:
                w = queue.pop()
                for u in list(span):
                    prods = [A.mul(w, u)]
                    if not A.commutative:
                        prods.append(A.mul(u, w))
                    for p in prods:
                        if insert(p):
                            span.append(p)
                            queue.append(p)
                if len(pivots) == n:
                    break
        if len(pivots) == n:
            break
    return gens


# ---------------------------------------------------------------------------
# construction and validation


def _as_matrix(field: FieldSpec, m, rows: int, cols: int) -> Matrix:
    if isinstance(m, Matrix):
        if m.field != field:
            raise FieldMismatch(f"matrix over {m.field}, expected {field}")
        M = m
    else:
        m = list(m)
        if m and not isinstance(m[0], (list, tuple)):
            # flat row-major
            if len(m) != rows * cols:
                raise DimensionMismatch(f"expected {rows * cols} entries, got {len(m)}")
            m = [m[i * cols:(i + 1) * cols] for i in range(rows)]
        M = Matrix.from_rows(field, m, cols) if m else Matrix.zeros(field, rows, cols)
    if M.shape != (rows, cols):
        raise DimensionMismatch(f"expected shape {(rows, cols)}, got {M.shape}")
    return M


def make_algebra(field: FieldSpec, dim: int, mult, unit: Sequence, check: bool = True) -> Algebra:
    """Validate structure constants and return an :class:`Algebra`.

    Checks the unit laws and associativity exactly.  Associativity is tested
    on triples ``(g, x, y)`` with ``g`` ranging over a generating set only;
    the set of ``a`` with ``(a x) y = a (x y)`` for all ``x, y`` is a
    subalgebra, so this is equivalent to the full check.
    """
    if not isinstance(dim, int) or dim < 0:
        raise DimensionMismatch(f"bad dimension {dim!r}")
    M = _as_matrix(field, mult, dim, dim * dim)
    if len(unit) != dim:
        raise DimensionMismatch(f"unit has length {len(unit)}, expected {dim}")
    u = tuple(field.coerce(x) for x in unit)
    cols = M.T.data if dim else []
    commutative = all(
        cols[i * dim + j] == cols[j * dim + i] for i in range(dim) for j in range(i + 1, dim)
    )
    A = Algebra(field, dim, M, u, commutative)
    if check and dim:
        _check_unit(A)
        _check_associative(A)
    return A


def _check_unit(A: Algebra):
    if not A.left_matrix(A.unit).is_identity():
        raise NotUnital("unit does not act as identity on the left")
    if not A.commutative and not A.right_matrix(A.unit).is_identity():
        raise NotUnital("unit does not act as identity on the right")


def _check_associative(A: Algebra):
    Ls = A.basis_left_matrices()
    for g in A.generators():
        Lg = Ls[g]
        for x in range(A.dim):
            gx = A.product_of_basis(g, x)
            lhs = A.left_matrix(gx)  # y -> (g x) y
            rhs = Lg @ Ls[x]  # y -> g (x y)
            if lhs != rhs:
                raise NotAssociative(f"(e_{g} e_{x}) y != e_{g} (e_{x} y)")


def unit_algebra(field: FieldSpec) -> Algebra:
    return make_algebra(field, 1, [[field.one]], [field.one])


def zero_algebra(field: FieldSpec) -> Algebra:
    return make_algebra(field, 0, Matrix.zeros(field, 0, 0), [])


def split_algebra(field: FieldSpec, n: int) -> Algebra:
    """``k^n`` with pointwise multiplication on the idempotent basis."""
    z, o = field.zero, field.one
    rows = [[o if (j == i * n + i) else z for j in range(n * n)] for i in range(n)]
    return make_algebra(field, n, Matrix(field, n, n * n, rows), [o] * n, check=False)


def matrix_algebra(field: FieldSpec, n: int) -> Algebra:
    """``M_n(k)`` on the basis ``E_11, E_12, ..., E_nn`` (row-major)."""
    d = n * n
    z, o = field.zero, field.one
    rows = [[z] * (d * d) for _ in range(d)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                # E_ab E_bc = E_ac
                i, j, k = a * n + b, b * n + c, a * n + c
                rows[k][i * d + j] = o
    unit = [o if (i // n) == (i % n) else z for i in range(d)]
    return make_algebra(field, d, Matrix(field, d, d * d, rows), unit)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class AlgebraHom:
    source: Algebra
    target: Algebra
    map: Matrix  # target.dim x source.dim

    def __call__(self, v: Sequence) -> list:
        return self.map.apply(v)

    def compose(self, first: "AlgebraHom") -> "AlgebraHom":
        """``self o first`` (not revalidated)."""
        if first.target.dim != self.source.dim:
            raise DimensionMismatch("composition of incompatible homomorphisms")
        return AlgebraHom(first.source, self.target, self.map @ first.map)


def check_homomorphism(source: Algebra, target: Algebra, map) -> AlgebraHom:
    """Validate that ``map`` is a unital algebra homomorphism.

    Multiplicativity is checked as ``h(g x) = h(g) h(x)`` for generators ``g``
    and basis elements ``x``, which implies it everywhere.
    """
    if source.field != target.field:
        raise FieldMismatch(f"{source.field} vs {target.field}")
    M = _as_matrix(source.field, map, target.dim, source.dim)
    if list(M.apply(list(source.unit))) != list(target.unit):
        raise NotUnital("homomorphism does not preserve the unit")
    images = M.columns()
    for g in source.generators():
        Lhg = target.left_matrix(images[g])
        for x in range(source.dim):
            lhs = M.apply(source.product_of_basis(g, x))
            if lhs != Lhg.apply(images[x]):
                raise NotMultiplicative(f"h(e_{g} e_{x}) != h(e_{g}) h(e_{x})")
    return AlgebraHom(source, target, M)


def unit_map(A: Algebra, one: Algebra | None = None) -> AlgebraHom:
    """The unit ``eta: 1 -> A``."""
    one = one or unit_algebra(A.field)
    return AlgebraHom(one, A, Matrix.column_vector(A.field, list(A.unit)))


# ---------------------------------------------------------------------------
# products, tensors, opposites


def _require_same_field(A: Algebra, B: Algebra):
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")


def product_algebra(A: Algebra, B: Algebra) -> tuple[Algebra, AlgebraHom, AlgebraHom]:
    _require_same_field(A, B)
    F = A.field
    n, m = A.dim, B.dim
    d = n + m
    z = F.zero
    rows = [[z] * (d * d) for _ in range(d)]
    for i in range(n):
        for j in range(n):
            col = A.product_of_basis(i, j)
            for k, c in enumerate(col):
                rows[k][i * d + j] = c
    for i in range(m):
        for j in range(m):
            col = B.product_of_basis(i, j)
            for k, c in enumerate(col):
                rows[n + k][(n + i) * d + (n + j)] = c
    P = make_algebra(F, d, Matrix(F, d, d * d, rows), list(A.unit) + list(B.unit), check=False)
    P.commutative = A.commutative and B.commutative
    I_n, I_m = Matrix.identity(F, n), Matrix.identity(F, m)
    pr1 = AlgebraHom(P, A, I_n.hstack(Matrix.zeros(F, n, m)))
    pr2 = AlgebraHom(P, B, Matrix.zeros(F, m, n).hstack(I_m))
    return P, pr1, pr2


def tensor_algebra(A: Algebra, B: Algebra) -> Algebra:
    """``A (x) B`` with multiplication ``(mu_A (x) mu_B) o (23)``."""
    _require_same_field(A, B)
    F = A.field
    n, m = A.dim, B.dim
    d = n * m
    z = F.zero
    rows = [[z] * (d * d) for _ in range(d)]
    for a1 in range(n):
        for a2 in range(n):
            ca = A.product_of_basis(a1, a2)
            nz_a = [(p, x) for p, x in enumerate(ca) if not F.is_zero(x)]
            if not nz_a:
                continue
            for b1 in range(m):
                for b2 in range(m):
                    cb = B.product_of_basis(b1, b2)
                    col = (a1 * m + b1) * d + (a2 * m + b2)
                    for q, y in enumerate(cb):
                        if F.is_zero(y):
                            continue
                        for p, x in nz_a:
                            rows[p * m + q][col] = F.mul(x, y)
    unit = [F.mul(x, y) for x in A.unit for y in B.unit]
    T = make_algebra(F, d, Matrix(F, d, d * d, rows), unit, check=False)
    T.commutative = T.commutative  # computed from the constants
    return T


def opposite_enveloping(A: Algebra) -> tuple[Algebra, Algebra]:
    n = A.dim
    cols = [A.product_of_basis(j, i) for i in range(n) for j in range(n)]
    mult = Matrix.from_columns(A.field, cols, n) if n else Matrix.zeros(A.field, 0, 0)
    Aop = make_algebra(A.field, n, mult, A.unit, check=False)
    return Aop, tensor_algebra(A, Aop)


def base_change(A: Algebra, K: FieldSpec) -> Algebra:
    """Reinterpret the structure constants of ``A`` over an extension ``K``."""
    if K == A.field:
        return A
    if not K.extends(A.field):
        raise FieldMismatch(f"{K} does not extend {A.field}")
    emb = lambda x: K.embed_from(A.field, x)  # noqa: E731
    mult = Matrix(K, A.dim, A.dim * A.dim, [[emb(x) for x in r] for r in A.mult.data])
    B = make_algebra(K, A.dim, mult, [emb(x) for x in A.unit], check=False)
    return B


@dataclass(frozen=True, eq=False)
class Restriction:
    """``A`` viewed over the prime field of its base field.

    Basis element ``(i, a)`` (index ``i * m + a``) is ``e_i`` times the
    ``a``-th prime-field basis element of the scalar field.
    """

    original: Algebra
    algebra: Algebra
    m: int

    def down(self, v: Sequence) -> list:
        F = self.original.field
        out = []
        for x in v:
            out.extend(F.to_prime_coords(x))
        return out

    def up(self, w: Sequence) -> list:
        F, m = self.original.field, self.m
        return [F.from_prime_coords(w[i * m:(i + 1) * m]) for i in range(self.original.dim)]


def restrict_scalars(A: Algebra) -> Restriction:
    F = A.field
    k = F.prime_field
    m = F.absolute_degree
    if m == 1:
        return Restriction(A, A, 1)
    n = A.dim
    d = n * m
    betas = []
    for a in range(m):
        coords = [k.zero] * m
        coords[a] = k.one
        betas.append(F.from_prime_coords(coords))
    bprod = [[F.mul(betas[a], betas[b]) for b in range(m)] for a in range(m)]
    rows = [[k.zero] * (d * d) for _ in range(d)]
    for i in range(n):
        for j in range(n):
            col = A.product_of_basis(i, j)
            for l, c in enumerate(col):
                if F.is_zero(c):
                    continue
                for a in range(m):
                    for b in range(m):
                        coords = F.to_prime_coords(F.mul(c, bprod[a][b]))
                        target_col = (i * m + a) * d + (j * m + b)
                        for t, val in enumerate(coords):
                            if not k.is_zero(val):
                                rows[l * m + t][target_col] = val
    unit = []
    for x in A.unit:
        unit.extend(F.to_prime_coords(x))
    R = make_algebra(k, d, Matrix(k, d, d * d, rows), unit, check=False)
    return Restriction(A, R, m)


def hom_matrix_product(F: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    return Matrix(F, A.rows, B.cols, matmul_rows(F, A.data, B.data, B.cols))
