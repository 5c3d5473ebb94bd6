"""Modules over a commutative separable algebra and tensor products over it.

For modules ``x1, x2`` over ``R`` with separability idempotent
``sigma = sum s_ab e_a (x) e_b``, the endomorphism
``v = sum s_ab rho1(e_a) (x) rho2(e_b)`` of ``x1 (x) x2`` is idempotent and
its image is ``x1 (x)_R x2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, AlgebraHom, check_homomorphism, make_algebra
from .errors import (
    BaseMismatch,
    DimensionMismatch,
    InternalError,
    NotAModule,
    NotAssociative,
    NotCommutative,
    NotUnital,
    WitnessFailure,
)
from .linalg import Matrix, inverse, split_idempotent, split_idempotent_rows
from .separability import SeparabilityData, sigma_of


def _require_base(R: Algebra) -> SeparabilityData:
    if not R.commutative:
        raise NotCommutative("module base must be commutative")
    return sigma_of(R)


@dataclass(frozen=True, eq=False)
class ModuleRec:
    """A left module over ``base``; ``action`` is ``m x (r*m)`` with column ``a*m + i`` = ``e_a . x_i``."""

    base: Algebra
    carrier_dim: int
    action: Matrix
    _blocks: list = field(default_factory=list, repr=False, compare=False)

    def rho(self, a: int) -> Matrix:
        """Action matrix of the basis element ``e_a``."""
        if not self._blocks:
            m = self.carrier_dim
            F = self.base.field
            for b in range(self.base.dim):
                self._blocks.append(
                    Matrix(F, m, m, [row[b * m:(b + 1) * m] for row in self.action.data])
                )
        return self._blocks[a]

    def rho_of(self, r: Sequence) -> Matrix:
        F, m = self.base.field, self.carrier_dim
        acc = Matrix.zeros(F, m, m)
        for a, c in enumerate(r):
            if not F.is_zero(c):
                acc = acc + self.rho(a).scale(c)
        return acc


def _action_from_blocks(R: Algebra, m: int, blocks: Sequence[Matrix]) -> Matrix:
    F = R.field
    rows = [[] for _ in range(m)]
    for B in blocks:
        for i in range(m):
            rows[i].extend(B.data[i])
    return Matrix(F, m, R.dim * m, rows)


def make_module(R: Algebra, m: int, action, check: bool = True) -> ModuleRec:
    """Validate the unit and associativity laws of an action and wrap it."""
    _require_base(R)
    F = R.field
    if isinstance(action, Matrix):
        M = action
    else:
        M = Matrix.from_rows(F, action, R.dim * m) if m else Matrix.zeros(F, 0, R.dim * m)
    if M.shape != (m, R.dim * m):
        raise DimensionMismatch(f"action must be {m} x {R.dim * m}, got {M.shape}")
    x = ModuleRec(R, m, M)
    if check and m:
        if not x.rho_of(R.unit).is_identity():
            raise NotAModule("unit does not act as the identity")
        for g in R.generators():
            rg = x.rho(g)
            for b in range(R.dim):
                if rg @ x.rho(b) != x.rho_of(R.product_of_basis(g, b)):
                    raise NotAModule(f"rho(e_{g}) rho(e_{b}) != rho(e_{g} e_{b})")
    return x


def regular_module(R: Algebra) -> ModuleRec:
    return ModuleRec(R, R.dim, R.mult)


def free_module(R: Algebra, y_dim: int) -> ModuleRec:
    """``F_R(y) = R (x) y`` with ``R`` acting on the left factor."""
    _require_base(R)
    F = R.field
    I = Matrix.identity(F, y_dim)
    blocks = [R.left_matrix(R.basis_vector(a)).kron(I) for a in range(R.dim)]
    return ModuleRec(R, R.dim * y_dim, _action_from_blocks(R, R.dim * y_dim, blocks))


def module_from_hom(h: AlgebraHom) -> ModuleRec:
    """The target of ``h`` as a module over its source."""
    A, B = h.source, h.target
    blocks = [B.left_matrix(h.map.column(a)) for a in range(A.dim)]
    return ModuleRec(A, B.dim, _action_from_blocks(A, B.dim, blocks))


def v_idempotent(x1: ModuleRec, x2: ModuleRec) -> Matrix:
    if x1.base is not x2.base and x1.base != x2.base:
        raise BaseMismatch("modules over different bases")
    R = x1.base
    sigma = _require_base(R).as_matrix()
    F = R.field
    n = x1.carrier_dim * x2.carrier_dim
    v = Matrix.zeros(F, n, n)
    for a in range(R.dim):
        for b in range(R.dim):
            s = sigma.data[a][b]
            if not F.is_zero(s):
                v = v + x1.rho(a).kron(x2.rho(b)).scale(s)
    return v


def tensor_over_modules(x1: ModuleRec, x2: ModuleRec) -> tuple[ModuleRec, Matrix, Matrix]:
    """``x1 (x)_R x2`` as the image of ``v``; returns ``(t, proj, incl)``."""
    v = v_idempotent(x1, x2)
    incl, proj = split_idempotent(v, check=True)
    R = x1.base
    I2 = Matrix.identity(R.field, x2.carrier_dim)
    r = incl.cols
    blocks = [proj @ x1.rho(a).kron(I2) @ incl for a in range(R.dim)]
    t = ModuleRec(R, r, _action_from_blocks(R, r, blocks))
    return t, proj, incl


def extend_along_hom(h: AlgebraHom, x: ModuleRec) -> ModuleRec:
    """``F_h(x) = B (x)_A x`` with ``B`` acting on its own factor."""
    A, B = h.source, h.target
    if x.base != A:
        raise BaseMismatch("module is not over the source of h")
    _require_base(B)
    Bmod = module_from_hom(h)
    _, proj, incl = tensor_over_modules(Bmod, x)
    Ix = Matrix.identity(A.field, x.carrier_dim)
    r = incl.cols
    blocks = [proj @ B.left_matrix(B.basis_vector(b)).kron(Ix) @ incl for b in range(B.dim)]
    return ModuleRec(B, r, _action_from_blocks(B, r, blocks))


def projection_formula_witness(x: ModuleRec, y_dim: int) -> Matrix:
    """Invertible map ``x (x)_A F_A(y) -> x (x) y``, namely ``(rho_x (x) 1_y) o incl``."""
    A = x.base
    F = A.field
    m, a = x.carrier_dim, A.dim
    Fy = free_module(A, y_dim)
    _, _, incl = tensor_over_modules(x, Fy)
    # rho_x (x) 1_y on x (x) A (x) y, reading x as a right module
    W = [[F.zero] * (m * a * y_dim) for _ in range(m * y_dim)]
    for b in range(a):
        rb = x.rho(b).data
        for i in range(m):
            for t in range(y_dim):
                col = i * (a * y_dim) + b * y_dim + t
                for i2 in range(m):
                    c = rb[i2][i]
                    if not F.is_zero(c):
                        W[i2 * y_dim + t][col] = c
    witness = Matrix(F, m * y_dim, m * a * y_dim, W) @ incl
    if witness.rows != witness.cols or inverse(witness) is None:
        raise WitnessFailure("projection formula map is not invertible")
    return witness


# ---------------------------------------------------------------------------
# algebras over a base


@dataclass(frozen=True, eq=False)
class RelativeAlgebra:
    """An ``R``-algebra ``S`` given by a homomorphism ``structure: R -> S``."""

    base: Algebra
    total: Algebra
    structure: AlgebraHom

    def as_module(self) -> ModuleRec:
        return module_from_hom(self.structure)


def make_relative(R: Algebra, S: Algebra, structure) -> RelativeAlgebra:
    _require_base(R)
    m = structure.map if isinstance(structure, AlgebraHom) else structure
    h = check_homomorphism(R, S, m)
    return RelativeAlgebra(R, S, h)


def absolute(S: Algebra) -> RelativeAlgebra:
    """``S`` as an algebra over the unit algebra of its field."""
    from .algebra import unit_algebra, unit_map

    one = unit_algebra(S.field)
    return RelativeAlgebra(one, S, unit_map(S, one))


@dataclass(frozen=True, eq=False)
class RelativeTensor:
    algebra: RelativeAlgebra
    j1: AlgebraHom
    j2: AlgebraHom
    incl: Matrix  # (n1*n2) x r, columns v(e_p (x) e_q) for (p, q) in the pivot set
    proj: Matrix  # r x (n1*n2)
    pivots: list


def _kron_apply(proj_cols: list, F, x: Sequence, y: Sequence, n2: int, r: int) -> list:
    """``proj (x (x) y)`` without forming the Kronecker vector."""
    acc = [F.zero] * r
    for s, xs in enumerate(x):
        if F.is_zero(xs):
            continue
        for t, yt in enumerate(y):
            if F.is_zero(yt):
                continue
            c = F.mul(xs, yt)
            col = proj_cols[s * n2 + t]
            acc = [F.add(u, F.mul(c, w)) if not F.is_zero(w) else u for u, w in zip(acc, col)]
    return acc


def relative_tensor(S1: RelativeAlgebra, S2: RelativeAlgebra, check: bool = True) -> RelativeTensor:
    """``S1 (x)_R S2`` with its two coprojections and the splitting data of ``v``."""
    if S1.base != S2.base:
        raise BaseMismatch("relative algebras over different bases")
    R = S1.base
    A1, A2 = S1.total, S2.total
    F = R.field
    n1, n2 = A1.dim, A2.dim
    N = n1 * n2
    sigma = _require_base(R).as_matrix()
    # v is multiplication by eps = sum s_ab phi1(a) (x) phi2(b)
    if R.dim == 1 and N:
        v = Matrix.identity(F, N)
    else:
        v = Matrix.zeros(F, N, N)
        L1 = [A1.left_matrix(S1.structure.map.column(a)) for a in range(R.dim)]
        L2 = [A2.left_matrix(S2.structure.map.column(b)) for b in range(R.dim)]
        for a in range(R.dim):
            for b in range(R.dim):
                s = sigma.data[a][b]
                if not F.is_zero(s):
                    v = v + L1[a].kron(L2[b]).scale(s)
    incl, proj, J = split_idempotent_rows(v)
    r = len(J)
    pc = proj.T.data if N else []
    cols = []
    for a in range(r):
        p, q = divmod(J[a], n2)
        for b in range(r):
            p2, q2 = divmod(J[b], n2)
            cols.append(_kron_apply(pc, F, A1.product_of_basis(p, p2), A2.product_of_basis(q, q2), n2, r))
    mult = Matrix.from_columns(F, cols, r) if r else Matrix.zeros(F, 0, 0)
    unit = _kron_apply(pc, F, A1.unit, A2.unit, n2, r) if r else []
    try:
        T = make_algebra(F, r, mult, unit, check=check)
    except (NotAssociative, NotUnital) as exc:
        raise InternalError(f"relative tensor product is not an algebra: {exc}") from exc
    j1 = Matrix.from_columns(F, [_kron_apply(pc, F, A1.basis_vector(p), A2.unit, n2, r) for p in range(n1)], r) \
        if r else Matrix.zeros(F, 0, n1)
    j2 = Matrix.from_columns(F, [_kron_apply(pc, F, A1.unit, A2.basis_vector(q), n2, r) for q in range(n2)], r) \
        if r else Matrix.zeros(F, 0, n2)
    h1 = AlgebraHom(A1, T, j1)
    h2 = AlgebraHom(A2, T, j2)
    rel = RelativeAlgebra(R, T, AlgebraHom(R, T, j1 @ S1.structure.map))
    return RelativeTensor(rel, h1, h2, incl, proj, J)


def relative_tensor_algebra(S1: RelativeAlgebra, S2: RelativeAlgebra) -> tuple[RelativeAlgebra, AlgebraHom, AlgebraHom]:
    rt = relative_tensor(S1, S2)
    return rt.algebra, rt.j1, rt.j2
