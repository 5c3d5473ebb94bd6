"""Separability idempotents.

``sigma`` is stored as a vector of length ``n^2`` in the basis ``e_i (x) e_j``
(index ``i*n + j``).  It satisfies ``mu(sigma) = 1`` and
``(a (x) 1) sigma = sigma (1 (x) a)`` for every ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .errors import NotSeparable
from .linalg import Matrix, inverse, solve_affine


@dataclass(frozen=True, eq=False)
class SeparabilityData:
    algebra: Algebra
    sigma: tuple

    def as_matrix(self) -> Matrix:
        """``sigma`` reshaped to ``n x n`` (entry ``(i, j)`` is the coefficient of ``e_i (x) e_j``)."""
        n = self.algebra.dim
        s = self.sigma
        return Matrix(self.algebra.field, n, n, [list(s[i * n:(i + 1) * n]) for i in range(n)])


def separability_system(A: Algebra, generators_only: bool = True) -> tuple[Matrix, list]:
    """The affine system whose solutions are the separability idempotents of ``A``.

    Unknowns are the ``n^2`` coordinates of sigma.  The first ``n`` equations
    are ``mu(sigma) = 1``; then one block of ``n^2`` equations
    ``(L_a (x) I - I (x) R_a) sigma = 0`` per basis element ``a`` (or per
    generator when ``generators_only`` is set; the elements satisfying the
    bimodule law form a subalgebra, so the solution set is the same).
    """
    F, n = A.field, A.dim
    rows = [list(r) for r in A.mult.data]
    rhs = list(A.unit)
    I = Matrix.identity(F, n)
    which = A.generators() if generators_only else range(n)
    for g in which:
        e = A.basis_vector(g)
        block = A.left_matrix(e).kron(I) - I.kron(A.right_matrix(e))
        rows.extend(block.data)
        rhs.extend([F.zero] * (n * n))
    return Matrix(F, len(rows), n * n, rows), rhs


def separability_idempotent(A: Algebra) -> SeparabilityData | None:
    """The canonical separability idempotent of ``A``, or ``None`` if ``A`` is not separable.

    Canonical means the reduced-echelon particular solution of
    :func:`separability_system` with every free variable set to zero.
    """
    cache = A._cache
    if "sep" not in cache:
        if A.dim == 0:
            cache["sep"] = SeparabilityData(A, ())
        else:
            M, b = separability_system(A)
            sol = solve_affine(M, b)
            cache["sep"] = None if sol is None else SeparabilityData(A, tuple(sol[0]))
    return cache["sep"]


def trace_form_sigma(A: Algebra) -> SeparabilityData | None:
    """Separability idempotent of a commutative algebra from its trace form.

    With ``G_ij = Tr(e_i e_j)`` nondegenerate, the Casimir element
    ``sum_i e_i (x) e_i^*`` satisfies the bimodule law and ``mu`` of it is a
    unit ``c``; then ``(c^-1 (x) 1)`` times it is the idempotent.  A
    commutative algebra has at most one separability idempotent, so this
    agrees with :func:`separability_idempotent`.  Returns ``None`` when the
    trace form is degenerate, which for commutative algebras is equivalent to
    inseparability.
    """
    if not A.commutative:
        raise ValueError("trace_form_sigma needs a commutative algebra")
    cache = A._cache
    if "trace_sep" in cache:
        return cache["trace_sep"]
    F, n = A.field, A.dim
    if n == 0:
        cache["trace_sep"] = SeparabilityData(A, ())
        return cache["trace_sep"]
    t = [F.zero] * n
    for k in range(n):
        acc = F.zero
        for j in range(n):
            acc = F.add(acc, A.product_of_basis(k, j)[j])
        t[k] = acc
    g = Matrix.row_vector(F, t) @ A.mult
    G = Matrix(F, n, n, [list(g.data[0][i * n:(i + 1) * n]) for i in range(n)])
    Ginv = inverse(G)
    if Ginv is None:
        cache["trace_sep"] = None
        return None
    kappa = [x for row in Ginv.data for x in row]
    c = A.mult.apply(kappa)
    Lc_inv = inverse(A.left_matrix(c))
    if Lc_inv is None:
        cache["trace_sep"] = None
        return None
    z = Lc_inv.apply(list(A.unit))
    S = A.left_matrix(z) @ Ginv
    data = SeparabilityData(A, tuple(x for row in S.data for x in row))
    cache["trace_sep"] = data
    return data


def sigma_of(A: Algebra) -> SeparabilityData:
    """Separability idempotent used by the rest of the library; raises if there is none."""
    data = trace_form_sigma(A) if A.commutative else separability_idempotent(A)
    if data is None:
        raise NotSeparable(f"{A!r} is not separable")
    return data


def is_separability_idempotent(A: Algebra, sigma) -> bool:
    F, n = A.field, A.dim
    if len(sigma) != n * n:
        return False
    if A.mult.apply(list(sigma)) != [F.coerce(x) for x in A.unit]:
        return False
    I = Matrix.identity(F, n)
    for a in range(n):
        e = A.basis_vector(a)
        lhs = A.left_matrix(e).kron(I).apply(list(sigma))
        rhs = I.kron(A.right_matrix(e)).apply(list(sigma))
        if lhs != rhs:
            return False
    return True
