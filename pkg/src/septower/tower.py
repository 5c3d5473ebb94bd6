"""Splitting towers, degrees and the degree-one test.

Two routes compute the tower.

``"direct"`` iterates :func:`prime_construction` on whole levels, each level
an algebra over the previous one.  It keeps every algebra and structure map
but the levels grow like ``d!/(d-m)!``, so it is only practical for small
inputs.

``"components"`` (the default) never forms a whole level.  Over a product
base everything splits factorwise, and a level ``S = prod C_j`` over a field
``B`` has next level ``prod_j D_j`` with ``D_j`` a ``C_j``-algebra made of the
factors ``C_j (x)_B C_l`` (``l != j``) and the complement of ``C_j`` in
``C_j (x)_B C_j``.  The rest of the tower of ``S`` over ``B`` is then the sum
of the towers of the ``D_j`` over the ``C_j``.  Each ``C_j`` is a field, so
tensor products over it are computed from a basis of a free module, and
identical sub-problems are shared through a cache.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, AlgebraHom, make_algebra, unit_algebra, unit_map
from .decompose import corner, decompose
from .errors import (
    InternalError,
    NotCommutative,
    TowerGuardTripped,
    ZeroAlgebra,
    ZeroBase,
)
from .linalg import Matrix, inverse, rref_rows
from .modules import RelativeAlgebra, absolute
from .separability import sigma_of
from .splitting import prime_construction


@dataclass(frozen=True, eq=False)
class TowerLevel:
    n: int
    algebra: Algebra | None
    structure_from_previous: AlgebraHom | None
    dim_over_k: int
    dim_over_previous: Fraction | None
    num_components: int | None = None

    @property
    def non_integral(self) -> bool:
        return self.dim_over_previous is not None and self.dim_over_previous.denominator != 1


@dataclass(frozen=True, eq=False)
class TowerReport:
    levels: list[TowerLevel]
    degree: int
    method: str = "components"

    @property
    def dims(self) -> list[int]:
        return [lv.dim_over_k for lv in self.levels]

    def to_json(self) -> dict:
        out = []
        for lv in self.levels:
            d = {
                "n": lv.n,
                "dim_over_k": lv.dim_over_k,
                "dim_over_previous": None if lv.dim_over_previous is None else str(lv.dim_over_previous),
                "separable": True,
            }
            if lv.num_components is not None:
                d["components"] = lv.num_components
            if lv.non_integral:
                d["non_integral"] = True
            out.append(d)
        return {"levels": out, "degree": self.degree}


def _ratio(a: int, b: int) -> Fraction | None:
    return Fraction(a, b) if b else None


def _degree_of(dims: list[int]) -> int:
    d = 0
    for n, x in enumerate(dims):
        if x:
            d = n
    return d


def _require_tt_ring(A: Algebra) -> None:
    if not A.commutative:
        raise NotCommutative("the splitting tower needs a commutative algebra")
    sigma_of(A)


# ---------------------------------------------------------------------------
# component engine


@dataclass(frozen=True, eq=False)
class _FreeBasis:
    """A basis ``u_0 = 1, u_1, ...`` of ``C`` as a module over a field ``B`` via ``phi``."""

    us: list
    minv: Matrix  # coordinates: column (m*b + a) of its inverse is phi(beta_a) u_m
    b: int

    def coords(self, x) -> list[list]:
        w = self.minv.apply(list(x))
        b = self.b
        return [w[m * b:(m + 1) * b] for m in range(len(self.us))]


def _free_basis(B: Algebra, C: Algebra, phi: Matrix) -> _FreeBasis:
    F = C.field
    b, c = B.dim, C.dim
    rows: list[list] = []
    pivots: list[int] = []
    us: list[list] = []
    cols: list[list] = []
    candidates = [list(C.unit)] + [C.basis_vector(p) for p in range(c)]
    for u in candidates:
        if len(pivots) == c:
            break
        block = (C.left_matrix(u) @ phi).columns()
        trial_rows, trial_piv = rref_rows(F, rows + [list(v) for v in block], c)
        if len(trial_piv) == len(pivots):
            continue
        if len(trial_piv) != len(pivots) + b:
            raise InternalError("base of a relative tensor is not a field")
        rows, pivots = trial_rows, trial_piv
        us.append(u)
        cols.extend(block)
    M = Matrix.from_columns(F, cols, c)
    minv = inverse(M)
    if minv is None:
        raise InternalError("free basis matrix is singular")
    return _FreeBasis(us, minv, b)


@dataclass(frozen=True, eq=False)
class _Tensor:
    algebra: Algebra
    j1: Matrix  # C1 -> T
    basis: _FreeBasis


class _Engine:
    def __init__(self, guard: int):
        self.guard = guard
        self.levels_memo: dict = {}
        self.tensor_memo: dict = {}
        self.prime_memo: dict = {}
        self.basis_memo: dict = {}

    # -- building blocks --------------------------------------------------
    def basis(self, B, C, phi) -> _FreeBasis:
        key = (B.key, C.key, phi.key)
        fb = self.basis_memo.get(key)
        if fb is None:
            fb = self.basis_memo[key] = _free_basis(B, C, phi)
        return fb

    def tensor(self, B, C1, phi1, C2, phi2) -> _Tensor:
        """``C1 (x)_B C2`` on the basis ``u_m (x) e_q``; index ``m * dim C2 + q``."""
        key = (B.key, C1.key, phi1.key, C2.key, phi2.key)
        hit = self.tensor_memo.get(key)
        if hit is not None:
            return hit
        F = B.field
        fb = self.basis(B, C1, phi1)
        t, c2 = len(fb.us), C2.dim
        r = t * c2
        mult_rows = [[F.zero] * (r * r) for _ in range(r)]
        for m in range(t):
            for m2 in range(t):
                betas = fb.coords(C1.mul(fb.us[m], fb.us[m2]))
                for s, beta in enumerate(betas):
                    if all(F.is_zero(x) for x in beta):
                        continue
                    gamma = phi2.apply(beta)
                    block = (C2.left_matrix(gamma) @ C2.mult).data  # c2 x c2^2
                    for i in range(c2):
                        row = mult_rows[s * c2 + i]
                        src = block[i]
                        for q in range(c2):
                            base = (m * c2 + q) * r + m2 * c2
                            for q2 in range(c2):
                                v = src[q * c2 + q2]
                                if not F.is_zero(v):
                                    row[base + q2] = F.add(row[base + q2], v)
        unit = list(C2.unit) + [F.zero] * (r - c2)
        T = make_algebra(F, r, Matrix(F, r, r * r, mult_rows), unit, check=False)
        j1_cols = []
        for p in range(C1.dim):
            vec = []
            for beta in fb.coords(C1.basis_vector(p)):
                vec.extend(phi2.apply(beta))
            j1_cols.append(vec)
        j1 = Matrix.from_columns(F, j1_cols, r)
        res = self.tensor_memo[key] = _Tensor(T, j1, fb)
        return res

    def prime(self, B, C, phi) -> tuple[Algebra, Matrix]:
        """Complement of ``C`` in ``C (x)_B C`` and the structure map ``C -> C'``."""
        key = (B.key, C.key, phi.key)
        hit = self.prime_memo.get(key)
        if hit is not None:
            return hit
        F = B.field
        tn = self.tensor(B, C, phi, C, phi)
        T, fb = tn.algebra, tn.basis
        c = C.dim
        S = sigma_of(C).as_matrix()
        f = [F.zero] * T.dim
        for p in range(c):
            y = S.data[p]
            if all(F.is_zero(x) for x in y):
                continue
            for s, beta in enumerate(fb.coords(C.basis_vector(p))):
                if all(F.is_zero(x) for x in beta):
                    continue
                val = C.mul(phi.apply(beta), y)
                for i, v in enumerate(val):
                    f[s * c + i] = F.add(f[s * c + i], v)
        one_minus_f = [F.sub(a, b) for a, b in zip(T.unit, f)]
        Cp, proj, _ = corner(T, one_minus_f)
        if Cp.dim != T.dim - c:
            raise InternalError("complement has the wrong dimension")
        psi = proj @ tn.j1
        res = self.prime_memo[key] = (Cp, psi)
        return res

    def children_of(self, D: Algebra, psi: Matrix) -> list[tuple[Algebra, Matrix]]:
        out = []
        for comp in decompose(D):
            if not comp.is_field:
                raise InternalError("could not split a component into fields")
            out.append((comp.algebra, comp.proj @ psi))
        return out

    # -- recursion ----------------------------------------------------------
    def levels(self, B: Algebra, children: list, depth: int = 0) -> tuple[tuple, tuple]:
        """(dims over k, component counts) of the tower of ``prod children`` over the field ``B``."""
        key = (B.key, tuple(sorted((C.key, phi.key) for C, phi in children)))
        hit = self.levels_memo.get(key)
        if hit is not None:
            return hit
        if depth > self.guard:
            raise TowerGuardTripped(f"tower exceeded {self.guard} levels")
        if not children:
            res = ((B.dim, 0), (1, 0))
            self.levels_memo[key] = res
            return res
        subs = []
        for j, (C, phi) in enumerate(children):
            others = children[:j] + children[j + 1:]
            if C.dim == B.dim:
                subs.append(self.levels(B, others, depth + 1))
                continue
            grand: list = []
            ident = Matrix.identity(B.field, C.dim)
            for Cl, phil in others:
                if Cl.dim == B.dim:
                    grand.append((C, ident))
                else:
                    tn = self.tensor(B, C, phi, Cl, phil)
                    grand.extend(self.children_of(tn.algebra, tn.j1))
            Cp, psi = self.prime(B, C, phi)
            if Cp.dim:
                grand.extend(self.children_of(Cp, psi))
            subs.append(self.levels(C, grand, depth + 1))
        length = max(len(s[0]) for s in subs) + 1
        dims = [B.dim] + [0] * (length - 1)
        comps = [1] + [0] * (length - 1)
        for sd, sc in subs:
            for i, (x, y) in enumerate(zip(sd, sc)):
                dims[i + 1] += x
                comps[i + 1] += y
        res = (tuple(dims), tuple(comps))
        self.levels_memo[key] = res
        return res


def _component_levels(R: Algebra, S: Algebra, phi: Matrix, guard: int) -> tuple[list[int], list[int]]:
    """Tower dims of ``S`` over an arbitrary commutative separable base ``R``."""
    engine = _Engine(guard)
    if R.dim == 1:
        bases = [(R, Matrix.identity(R.field, 1), Matrix.identity(R.field, 1))]
    else:
        bases = [(c.algebra, c.proj, c.incl) for c in decompose(R)]
        if not all(c.is_field for c in decompose(R)):
            raise InternalError("could not split the base into fields")
    groups: list[list] = [[] for _ in bases]
    for C, psi in engine.children_of(S, phi) if S.dim else []:
        for i, (Bi, _, incl) in enumerate(bases):
            restricted = psi @ incl
            if restricted.apply(list(Bi.unit)) == list(C.unit):
                groups[i].append((C, restricted))
                break
        else:
            raise InternalError("component does not lie over a single base factor")
    total_dims: list[int] = []
    total_comps: list[int] = []
    for (Bi, _, _), kids in zip(bases, groups):
        d, c = engine.levels(Bi, kids)
        if len(d) > len(total_dims):
            total_dims += [0] * (len(d) - len(total_dims))
            total_comps += [0] * (len(d) - len(total_comps))
        for i, (x, y) in enumerate(zip(d, c)):
            total_dims[i] += x
            total_comps[i] += y
    while len(total_dims) > 2 and total_dims[-1] == 0 and total_dims[-2] == 0:
        total_dims.pop()
        total_comps.pop()
    return total_dims, total_comps


# ---------------------------------------------------------------------------
# public API


def _report_from_dims(base: Algebra, top: RelativeAlgebra, dims: list[int], comps: list[int] | None) -> TowerReport:
    levels = []
    for n, d in enumerate(dims):
        algebra = structure = None
        if n == 0:
            algebra = base
        elif n == 1:
            algebra, structure = top.total, top.structure
        prev = dims[n - 1] if n else None
        levels.append(TowerLevel(
            n, algebra, structure, d,
            _ratio(d, prev) if prev is not None else None,
            comps[n] if comps is not None else None,
        ))
    return TowerReport(levels, _degree_of(dims), "components")


def _as_relative(A) -> RelativeAlgebra:
    return A if isinstance(A, RelativeAlgebra) else absolute(A)


def splitting_tower(A, method: str = "components") -> TowerReport:
    """Tower ``A^(0) = base, A^(1) = A, A^(n+1) = (A^(n))'`` over ``A^(n-1)``.

    ``A`` is an :class:`Algebra` (over its field) or a :class:`RelativeAlgebra`.
    """
    S = _as_relative(A)
    R, top = S.base, S.total
    _require_tt_ring(top)
    if R.dim and not R.commutative:
        raise NotCommutative("the base of a tower must be commutative")
    guard = top.dim + 1
    if method == "direct":
        return _direct_tower(S, guard)
    if method != "components":
        raise ValueError(f"unknown method {method!r}")
    if R.dim == 0:
        dims, comps = [0], [0]
    elif top.dim == 0:
        dims, comps = [R.dim, 0], [1, 0]
    else:
        dims, comps = _component_levels(R, top, S.structure.map, guard)
    if comps is not None and R.dim != 1:
        comps[0] = len(decompose(R))
    return _report_from_dims(R, S, dims, comps)


def _direct_tower(S: RelativeAlgebra, guard: int) -> TowerReport:
    levels = [TowerLevel(0, S.base, None, S.base.dim, None)]
    prev_dim = S.base.dim
    current = S
    n = 1
    while True:
        d = current.total.dim
        levels.append(TowerLevel(n, current.total, current.structure, d, _ratio(d, prev_dim)))
        if d == 0:
            break
        if n > guard:
            raise TowerGuardTripped(f"tower exceeded {guard} levels")
        nxt, _ = prime_construction(current, check=False)
        prev_dim = d
        current = nxt
        n += 1
    return TowerReport(levels, _degree_of([lv.dim_over_k for lv in levels]), "direct")


def degree(A, method: str = "components") -> int:
    return splitting_tower(A, method).degree


def relative_degree(S: RelativeAlgebra, method: str = "components") -> int:
    """Degree of ``S`` computed inside the module category of its base."""
    if S.base.dim == 0:
        raise ZeroBase("relative degree over the zero ring")
    return splitting_tower(S, method).degree


@dataclass(frozen=True)
class DegreeOneResult:
    value: bool
    dim: int
    mu_rank: int
    mu_shape: tuple

    def __bool__(self) -> bool:
        return self.value

    def to_json(self) -> dict:
        return {"degree_one": self.value, "dim": self.dim, "mu_rank": self.mu_rank,
                "mu_shape": list(self.mu_shape)}


def is_degree_one(A: Algebra) -> DegreeOneResult:
    """Whether ``mu: A (x) A -> A`` is an isomorphism."""
    if A.dim == 0:
        raise ZeroAlgebra("the zero ring has no degree-one test")
    _require_tt_ring(A)
    rank = A.mult.rank()
    value = A.mult.rows == A.mult.cols and rank == A.dim
    return DegreeOneResult(value, A.dim, rank, A.mult.shape)
