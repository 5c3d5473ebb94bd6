"""Ring splittings ``B = A x C`` from retractions, and the prime construction."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Algebra,
    AlgebraHom,
    check_homomorphism,
    make_algebra,
    product_algebra,
    split_algebra,
    tensor_algebra,
    zero_algebra,
)
from .errors import (
    InternalError,
    LemmaViolation,
    NoSection,
    NotAssociative,
    NotMultiplicative,
    NotUnital,
    SeptowerError,
)
from .linalg import Matrix, inverse, solve_affine, split_idempotent_rows
from .modules import RelativeAlgebra, relative_tensor
from .separability import sigma_of


@dataclass(frozen=True, eq=False)
class SplitDecomposition:
    """A ring isomorphism ``h = (h1, h2): B -> A x C`` with inverse ``(k1 | k2)``."""

    B: Algebra
    A: Algebra
    C: Algebra
    h1: Matrix  # A.dim x B.dim
    h2: Matrix  # C.dim x B.dim
    k1: Matrix  # B.dim x A.dim
    k2: Matrix  # B.dim x C.dim
    complement_structure: AlgebraHom | None = None  # A -> C

    @property
    def h(self) -> Matrix:
        return self.h1.vstack(self.h2)

    @property
    def h_inv(self) -> Matrix:
        return self.k1.hstack(self.k2)

    def product(self) -> Algebra:
        return product_algebra(self.A, self.C)[0]

    def validate(self) -> None:
        """Check the block identities and that ``h`` is a ring isomorphism; raise ``InternalError`` otherwise."""
        F = self.B.field
        a, c = self.A.dim, self.C.dim
        blocks = [
            (self.h1 @ self.k1, Matrix.identity(F, a)),
            (self.h1 @ self.k2, Matrix.zeros(F, a, c)),
            (self.h2 @ self.k1, Matrix.zeros(F, c, a)),
            (self.h2 @ self.k2, Matrix.identity(F, c)),
        ]
        for got, want in blocks:
            if got != want:
                raise InternalError("h and its inverse are not mutually inverse")
        try:
            check_homomorphism(self.B, self.product(), self.h)
        except (NotUnital, NotMultiplicative) as exc:
            raise InternalError(f"h is not a ring homomorphism: {exc}") from exc


def _vec_system_left(L: Matrix, ncols: int) -> Matrix:
    """Matrix of ``s -> L s`` on row-major ``vec(s)``."""
    return L.kron(Matrix.identity(L.field, ncols))


def _vec_system_right(M: Matrix, nrows: int) -> Matrix:
    """Matrix of ``s -> s M`` on row-major ``vec(s)``."""
    return Matrix.identity(M.field, nrows).kron(M.T)


def bimodule_section_of_epi(g: AlgebraHom) -> Matrix:
    """Solve for a ``B,B``-bilinear section ``s`` of ``g: B -> A``.

    Unknowns are the entries of ``s`` (``B.dim x A.dim``, row-major).  The
    equations are ``g s = I`` together with ``s L_g(b) = L_b s`` and
    ``s R_g(b) = R_b s`` for generators ``b`` of ``B``.  The canonical reduced
    echelon solution is returned.
    """
    B, A = g.source, g.target
    F = B.field
    nb, na = B.dim, A.dim
    if na == 0:
        return Matrix.zeros(F, nb, 0)
    rows: list[list] = []
    rhs: list = []
    eq = _vec_system_left(g.map, na)
    rows.extend(eq.data)
    rhs.extend(x for row in Matrix.identity(F, na).data for x in row)
    both = B.commutative and A.commutative
    for b in B.generators():
        eb = B.basis_vector(b)
        gb = g.map.column(b)
        blk = _vec_system_right(A.left_matrix(gb), nb) - _vec_system_left(B.left_matrix(eb), na)
        rows.extend(blk.data)
        rhs.extend([F.zero] * (nb * na))
        if not both:
            blk = _vec_system_right(A.right_matrix(gb), nb) - _vec_system_left(B.right_matrix(eb), na)
            rows.extend(blk.data)
            rhs.extend([F.zero] * (nb * na))
    sol = solve_affine(Matrix(F, len(rows), nb * na, rows), rhs)
    if sol is None:
        raise NoSection("no bimodule section of the given epimorphism")
    x = sol[0]
    return Matrix(F, nb, na, [x[i * na:(i + 1) * na] for i in range(nb)])


def _corner_structure(B: Algebra, e: Matrix, incl: Matrix, proj: Matrix, J: list[int]) -> tuple[Matrix, list]:
    """Structure constants of the image of ``e``, assumed to be multiplication by an idempotent."""
    F = B.field
    r = len(J)
    cols = []
    for a in range(r):
        for b in range(r):
            cols.append(proj.apply(B.product_of_basis(J[a], J[b])))
    mult = Matrix.from_columns(F, cols, r) if r else Matrix.zeros(F, 0, 0)
    return mult, proj.apply(list(B.unit)) if r else []


def split_from_retraction(
    f: AlgebraHom, g: AlgebraHom, section: Matrix | None = None, check: bool = True
) -> SplitDecomposition:
    """Split ``B`` as ``A x C`` given ``g: B -> A`` with ``g f = id``.

    ``C`` is the image of ``1 - s g`` for a bilinear section ``s`` of ``g``
    (solved for when not supplied).  Its basis is the image of a subset of the
    standard basis of ``B``.
    """
    A, B = f.source, f.target
    F = A.field
    if (g.map @ f.map) != Matrix.identity(F, A.dim):
        raise InternalError("g o f is not the identity")
    s = section if section is not None else bimodule_section_of_epi(g)
    e = s @ g.map
    nb = B.dim
    if check and (e @ e != e or g.map @ e != g.map):
        raise InternalError("s o g is not an idempotent compatible with g")
    one_minus = Matrix.identity(F, nb) - e
    inclC, projC, J = split_idempotent_rows(one_minus)
    fvec = s.apply(list(A.unit)) if A.dim else [F.zero] * nb
    if one_minus == Matrix.identity(F, nb) - B.left_matrix(fvec):
        mult, unit = _corner_structure(B, one_minus, inclC, projC, J)
    else:
        r = len(J)
        cols = [projC.apply(B.mul(inclC.column(a), inclC.column(b))) for a in range(r) for b in range(r)]
        mult = Matrix.from_columns(F, cols, r) if r else Matrix.zeros(F, 0, 0)
        unit = projC.apply(list(B.unit))
    try:
        C = make_algebra(F, len(J), mult, unit, check=check)
    except (NotAssociative, NotUnital) as exc:
        raise InternalError(f"complement is not an algebra: {exc}") from exc
    struct = AlgebraHom(A, C, projC @ f.map)
    dec = SplitDecomposition(B, A, C, g.map, projC, s, inclC, struct)
    if check:
        dec.validate()
    return dec


def multiplication_map(S: RelativeAlgebra, rt) -> AlgebraHom:
    """``mu-bar: S (x)_R S -> S`` on the pure-tensor basis of the relative tensor."""
    A = S.total
    T = rt.algebra.total
    n = A.dim
    cols = [A.product_of_basis(*divmod(j, n)) for j in rt.pivots]
    F = A.field
    M = Matrix.from_columns(F, cols, n) if cols else Matrix.zeros(F, n, 0)
    return AlgebraHom(T, A, M)


def prime_construction(S: RelativeAlgebra, check: bool = True) -> tuple[RelativeAlgebra, SplitDecomposition]:
    """``S (x)_R S = S x S'`` with first projection the multiplication; returns ``S'`` over ``S``."""
    A = S.total
    rt = relative_tensor(S, S, check=check)
    T = rt.algebra.total
    mubar = multiplication_map(S, rt)
    sigma = sigma_of(A)
    fvec = rt.proj.apply(list(sigma.sigma)) if T.dim else []
    section = T.left_matrix(fvec) @ rt.j1.map if T.dim else Matrix.zeros(A.field, 0, A.dim)
    dec = split_from_retraction(rt.j1, mubar, section=section, check=check)
    Sp = RelativeAlgebra(A, dec.C, dec.complement_structure)
    return Sp, dec


def unit_power_splitting_oracle(n: int, field) -> SplitDecomposition:
    """The explicit splitting ``A (x) A = A x A^(n-1)`` for ``A = 1^n``.

    Summands are indexed from 1 as ``1_i (x) 1_j``.  ``1_i (x) 1_i`` goes to
    ``1_i`` in the first factor, ``1_i (x) 1_j`` with ``i != j`` and
    ``j <= n-1`` goes to ``1_i`` in copy ``j`` of ``A``, and ``1_i (x) 1_n``
    goes to ``1_i`` in copy ``i``.  The last choice is forced: it is the only
    summand of copy ``i`` not already hit inside the ``1_i``-part.
    """
    if n < 1:
        raise ValueError("n must be positive")
    F = field
    A = split_algebra(F, n)
    B = tensor_algebra(A, A)
    if n == 1:
        C = zero_algebra(F)
    else:
        C = A
        for _ in range(n - 2):
            C = product_algebra(C, A)[0]
    P, _, _ = product_algebra(A, C)
    dim_p = n + C.dim
    rows = [[F.zero] * (n * n) for _ in range(dim_p)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            col = (i - 1) * n + (j - 1)
            if i == j:
                target = i - 1
            elif j <= n - 1:
                target = n + (j - 1) * n + (i - 1)
            else:
                target = n + (i - 1) * n + (i - 1)
            rows[target][col] = F.one
    h = Matrix(F, dim_p, n * n, rows)
    try:
        check_homomorphism(B, P, h)
    except SeptowerError as exc:
        raise InternalError(f"oracle map is not a ring homomorphism: {exc}") from exc
    hinv = inverse(h)
    if hinv is None:
        raise InternalError("oracle map is not invertible")
    h1 = h.submatrix(range(n), range(n * n))
    if h1 != A.mult:
        raise InternalError("pr1 o h != mu")
    h2 = h.submatrix(range(n, dim_p), range(n * n))
    k1 = hinv.submatrix(range(n * n), range(n))
    k2 = hinv.submatrix(range(n * n), range(n, dim_p))
    j1 = Matrix.from_columns(F, [[F.one if (q // n) == p else F.zero for q in range(n * n)] for p in range(n)], n * n)
    struct = AlgebraHom(A, C, h2 @ j1)
    return SplitDecomposition(B, A, C, h1, h2, k1, k2, struct)


def normalize_split_iso(k: Matrix, C: Algebra, Cp: Algebra) -> AlgebraHom:
    """Extract ``l: C -> C'`` from a ring isomorphism ``[[1, 0], [s, l]]: X x C -> X x C'``.

    The first factor's dimension is inferred from the shapes.  Raises
    :class:`LemmaViolation` when the first block row is not ``(1, 0)``, when
    ``s != 0``, or when ``l`` is not an isomorphism of rings.
    """
    F = C.field
    d1 = k.rows - Cp.dim
    if d1 < 0 or k.cols - C.dim != d1:
        raise LemmaViolation("shape of k does not match the complements")
    top = k.submatrix(range(d1), range(k.cols))
    if top != Matrix.identity(F, d1).hstack(Matrix.zeros(F, d1, C.dim)):
        raise LemmaViolation("first block row of k is not (1, 0)")
    s = k.submatrix(range(d1, k.rows), range(d1))
    if not s.is_zero():
        raise LemmaViolation("lower-left block s is nonzero")
    ell = k.submatrix(range(d1, k.rows), range(d1, k.cols))
    try:
        hom = check_homomorphism(C, Cp, ell)
    except SeptowerError as exc:
        raise LemmaViolation(f"l is not a ring homomorphism: {exc}") from exc
    if ell.rows != ell.cols or inverse(ell) is None:
        raise LemmaViolation("l is not invertible")
    return hom
