"""Splitting a commutative separable algebra into its field components.

Idempotents of a ring do not depend on the scalars, so the search runs in
the restriction to the prime field.  For a piece ``A e`` a random element
``y`` is drawn; its minimal polynomial is factored over the prime field and
the Chinese remainder theorem turns coprime factors into orthogonal
idempotents.  A piece whose element has an irreducible minimal polynomial of
full degree is a field and is not split further.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .algebra import Algebra, restrict_scalars
from .errors import InternalError, NotSeparable
from .fields import FieldSpec, PrimeField, poly_trim
from .linalg import Matrix, rref_rows, split_idempotent_rows

MAX_TRIES = 64
_X = sympy.Symbol("x")


@dataclass(frozen=True, eq=False)
class Component:
    """``A e`` for a primitive idempotent ``e``; ``proj`` maps ``A`` onto it, ``incl`` is the inclusion."""

    algebra: Algebra
    idempotent: tuple
    proj: Matrix
    incl: Matrix
    is_field: bool


def factor_over_prime_field(k: FieldSpec, f: list) -> list[tuple[list, int]]:
    """Monic irreducible factors with multiplicities; coefficients ascending."""
    coeffs = list(reversed(f))
    if isinstance(k, PrimeField):
        p = k.p
        poly = sympy.Poly([int(c) for c in coeffs], _X, modulus=p)
        _, facs = poly.factor_list()
        out = []
        for g, m in facs:
            cs = [int(c) % p for c in reversed(g.all_coeffs())]
            inv = pow(cs[-1], p - 2, p)
            out.append(([c * inv % p for c in cs], m))
        return out
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], _X, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for g, m in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]
        lead = cs[-1]
        out.append(([c / lead for c in cs], m))
    return out


def _rank(A: Algebra, e: list) -> int:
    return len(rref_rows(A.field, A.left_matrix(e).data, A.dim)[0])


def _minpoly_powers(A: Algebra, e: list, y: list, bound: int) -> tuple[list, list[list]]:
    """Minimal polynomial of ``y`` in the ring ``A e`` and the powers ``y^0 = e, y, ...``."""
    F = A.field
    Ly = A.left_matrix(y)
    powers = [list(e)]
    for _ in range(bound):
        powers.append(Ly.apply(powers[-1]))
    cols = Matrix.from_columns(F, powers, A.dim)
    rows, pivots = rref_rows(F, cols.data, len(powers))
    k = len(pivots)
    for idx, pc in enumerate(pivots):
        if pc != idx:
            k = idx
            break
    if k == len(powers):
        raise InternalError("minimal polynomial search exceeded the dimension bound")
    m = [F.neg(rows[i][k]) for i in range(k)] + [F.one]
    return m, powers


def _eval(F, poly: list, powers: list[list], n: int) -> list:
    acc = [F.zero] * n
    for c, P in zip(poly, powers):
        if not F.is_zero(c):
            acc = [F.add(a, F.mul(c, b)) for a, b in zip(acc, P)]
    return acc


def _to_sympy(k: FieldSpec, f: list) -> sympy.Poly:
    coeffs = list(reversed(f))
    if isinstance(k, PrimeField):
        return sympy.Poly([int(c) for c in coeffs], _X, modulus=k.p)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], _X, domain="QQ")


def _from_sympy(k: FieldSpec, g: sympy.Poly) -> list:
    cs = reversed(g.all_coeffs())
    if isinstance(k, PrimeField):
        return poly_trim(k, [int(c) % k.p for c in cs])
    return poly_trim(k, [Fraction(int(c.p), int(c.q)) for c in cs])


def _crt_idempotents(k: FieldSpec, m: list, factors: list[list]) -> list[list]:
    """``e_j = 1 mod f_j`` and ``0 mod f_i`` (``i != j``) for pairwise coprime ``f_j`` with product ``m``."""
    M = _to_sympy(k, m)
    out = []
    for f in factors:
        Fj = _to_sympy(k, f)
        cof, rem = M.div(Fj)
        if not rem.is_zero:
            raise InternalError("factor does not divide the minimal polynomial")
        try:
            s = cof.rem(Fj).invert(Fj) if Fj.degree() > 0 else Fj.one
        except sympy.polys.polyerrors.NotInvertible:
            raise InternalError("factors are not coprime") from None
        out.append(_from_sympy(k, (cof * s).rem(M)))
    return out


def _random_element(k: FieldSpec, n: int, rng: random.Random) -> list:
    if isinstance(k, PrimeField):
        return [rng.randrange(k.p) for _ in range(n)]
    return [Fraction(rng.randint(-3, 3)) for _ in range(n)]


def primitive_idempotents(A: Algebra, seed: int | None = None) -> list[tuple[list, bool]]:
    """Orthogonal idempotents summing to 1, each with a flag saying the corner is a field."""
    if A.dim == 0:
        return []
    res = restrict_scalars(A)
    R = res.algebra
    k = R.field
    rng = random.Random(seed if seed is not None else int(A.key[:12], 16))
    todo = [(list(R.unit), R.dim)]
    done: list[tuple[list, bool]] = []
    while todo:
        e, d = todo.pop()
        if d == 1:
            done.append((e, True))
            continue
        for _ in range(MAX_TRIES):
            y = R.mul(_random_element(k, R.dim, rng), e)
            m, powers = _minpoly_powers(R, e, y, d)
            facs = factor_over_prime_field(k, m)
            if any(mult > 1 for _, mult in facs):
                raise NotSeparable("nilpotent elements found while decomposing")
            if len(facs) > 1:
                for f, ei in zip(facs, _crt_idempotents(k, m, [f for f, _ in facs])):
                    piece = _eval(k, ei, powers, R.dim)
                    todo.append((piece, _rank(R, piece)))
                break
            if len(m) - 1 == d:
                done.append((e, True))
                break
        else:
            done.append((e, False))
    return [(res.up(e), flag) for e, flag in done]


def corner(A: Algebra, e) -> tuple[Algebra, Matrix, Matrix]:
    """The ring ``A e`` on the basis ``e b_j`` for the pivot columns ``j`` of ``L_e``."""
    from .algebra import make_algebra

    F = A.field
    L = A.left_matrix(e)
    incl, proj, J = split_idempotent_rows(L)
    r = len(J)
    cols = [proj.apply(A.product_of_basis(J[a], J[b])) for a in range(r) for b in range(r)]
    mult = Matrix.from_columns(F, cols, r) if r else Matrix.zeros(F, 0, 0)
    C = make_algebra(F, r, mult, proj.apply(list(A.unit)), check=False)
    return C, proj, incl


def decompose(A: Algebra) -> list[Component]:
    """Field components of a commutative separable algebra (cached on ``A``)."""
    cached = A._cache.get("components")
    if cached is not None:
        return cached
    comps = []
    for e, flag in primitive_idempotents(A):
        C, proj, incl = corner(A, e)
        comps.append(Component(C, tuple(e), proj, incl, flag))
    A._cache["components"] = comps
    return comps
