import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from families import F5, F25, QI, algebra_from_factors, random_fp_factors
from septower import (
    QQ,
    base_change,
    check_homomorphism,
    cyclic_algebra,
    make_algebra,
    matrix_algebra,
    opposite_enveloping,
    product_algebra,
    split_algebra,
    tensor_algebra,
    unit_algebra,
    zero_algebra,
)
from septower.algebra import restrict_scalars, unit_map
from septower.errors import DimensionMismatch, NotAssociative, NotMultiplicative, NotUnital
from septower.linalg import Matrix, inverse


def test_unit_algebra():
    A = make_algebra(QQ, 1, [[1]], [1])
    assert A == unit_algebra(QQ)
    assert A.commutative


def test_pointwise_split_algebra():
    mult = [[1, 0, 0, 0], [0, 0, 0, 1]]
    A = make_algebra(QQ, 2, mult, [1, 1])
    assert A.commutative
    assert A == split_algebra(QQ, 2)


def test_non_unital_rejected():
    # e_1 e_1 = 0, e_2 e_2 = e_2; claimed unit e_1 does not act as the identity
    mult = [[0, 0, 0, 0], [0, 0, 0, 1]]
    with pytest.raises(NotUnital):
        make_algebra(QQ, 2, mult, [1, 0])


def test_non_associative_rejected():
    # basis 1, a, b with a*a = b, a*b = 1, b*a = 0, b*b = 0: unit ok, associativity fails
    one, a, b = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    z = [0, 0, 0]
    table = {(0, 0): one, (0, 1): a, (0, 2): b, (1, 0): a, (2, 0): b,
             (1, 1): b, (1, 2): one, (2, 1): z, (2, 2): z}
    cols = [table[(i, j)] for i in range(3) for j in range(3)]
    mult = [[c[k] for c in cols] for k in range(3)]
    with pytest.raises(NotAssociative):
        make_algebra(QQ, 3, mult, one)


def test_shape_checked():
    with pytest.raises(DimensionMismatch):
        make_algebra(QQ, 2, [[1, 0, 0], [0, 0, 1]], [1, 1])


def test_product_of_units_is_split():
    P, pr1, pr2 = product_algebra(unit_algebra(QQ), unit_algebra(QQ))
    assert P == split_algebra(QQ, 2)


def test_product_with_zero():
    A = cyclic_algebra(QQ, [1, 0, 1])
    P, pr1, _ = product_algebra(A, zero_algebra(QQ))
    assert P.dim == A.dim
    assert inverse(pr1.map) is not None
    assert P == A


def test_qi_times_q():
    P, _, _ = product_algebra(cyclic_algebra(QQ, [1, 0, 1]), unit_algebra(QQ))
    assert P.dim == 3 and P.commutative
    make_algebra(QQ, P.dim, P.mult, P.unit)


def test_tensor_with_unit():
    A = cyclic_algebra(QQ, [-2, 0, 0, 1])
    assert tensor_algebra(unit_algebra(QQ), A) == A


def test_tensor_qi_qi():
    A = cyclic_algebra(QQ, [1, 0, 1])
    T = tensor_algebra(A, A)
    assert T.dim == 4 and T.commutative


def test_tensor_of_split_is_split():
    S = split_algebra(QQ, 2)
    assert tensor_algebra(S, S) == split_algebra(QQ, 4)


def test_opposite_commutative():
    A = cyclic_algebra(QQ, [1, 0, 1])
    Aop, Aenv = opposite_enveloping(A)
    assert Aop.mult == A.mult
    assert opposite_enveloping(split_algebra(QQ, 2))[1].dim == 4


def test_opposite_matrix_algebra():
    M = matrix_algebra(QQ, 2)
    Mop, Menv = opposite_enveloping(M)
    assert Mop.mult != M.mult
    assert Menv.dim == 16
    # transpose E_ab -> E_ba is an isomorphism M -> M^op
    T = Matrix(QQ, 4, 4, [[1 if j == (i % 2) * 2 + i // 2 else 0 for j in range(4)] for i in range(4)])
    check_homomorphism(M, Mop, T)


def test_homomorphism_examples():
    S = split_algebra(QQ, 2)
    check_homomorphism(unit_algebra(QQ), S, [[1], [1]])
    check_homomorphism(S, unit_algebra(QQ), [[1, 0]])
    check_homomorphism(S, S, [[0, 1], [1, 0]])
    with pytest.raises(NotUnital):
        check_homomorphism(S, S, [[1, 0], [0, 0]])


def test_non_multiplicative_map():
    A = cyclic_algebra(QQ, [1, 0, 1])
    # 1 -> 1, i -> 2i preserves the unit but not i*i = -1
    with pytest.raises(NotMultiplicative):
        check_homomorphism(A, A, [[1, 0], [0, 2]])


def test_base_change_identity():
    A = cyclic_algebra(F5, [3, 0, 1])
    assert base_change(A, F5) == A


def test_base_change_dimensions():
    A = cyclic_algebra(QQ, [1, 0, 1])
    B = base_change(A, QI)
    assert B.field == QI and B.dim == 2 and B.commutative
    C = base_change(cyclic_algebra(F5, [-2, 0, 1]), F25)
    assert C.dim == 2


def test_restrict_scalars_round_trip():
    A = base_change(cyclic_algebra(QQ, [1, 0, 1]), QI)
    res = restrict_scalars(A)
    assert res.algebra.dim == 4 and res.algebra.field == QQ
    v = [QI.coerce([1, 2]), QI.coerce([3, -1])]
    assert res.up(res.down(v)) == v


# -- properties ---------------------------------------------------------------


@st.composite
def fp_algebras(draw, max_dim=3):
    rng = random.Random(draw(st.integers(0, 10**6)))
    return algebra_from_factors(F5, random_fp_factors(rng, max_dim))


@given(fp_algebras(), fp_algebras())
@settings(max_examples=25, deadline=None)
def test_product_and_tensor_are_algebras(A, B):
    P, pr1, pr2 = product_algebra(A, B)
    make_algebra(F5, P.dim, P.mult, P.unit)
    check_homomorphism(P, A, pr1.map)
    check_homomorphism(P, B, pr2.map)
    T = tensor_algebra(A, B)
    make_algebra(F5, T.dim, T.mult, T.unit)
    assert T.dim == A.dim * B.dim
    assert T.commutative


@given(fp_algebras())
@settings(max_examples=25, deadline=None)
def test_unit_map_and_generators(A):
    eta = unit_map(A)
    check_homomorphism(eta.source, A, eta.map)
    gens = A.generators()
    # the generators span A as an algebra: closing under products reaches everything
    span = Matrix.from_columns(F5, [A.basis_vector(g) for g in gens] + [list(A.unit)], A.dim)
    frontier = [A.basis_vector(g) for g in gens]
    vecs = list(span.columns())
    for _ in range(A.dim):
        frontier = [A.mul(x, A.basis_vector(g)) for x in frontier for g in gens]
        vecs.extend(frontier)
    assert Matrix.from_columns(F5, vecs, A.dim).rank() == A.dim


@given(fp_algebras(), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_associativity_on_random_triples(A, seed):
    rng = random.Random(seed)
    x, y, z = ([rng.randrange(5) for _ in range(A.dim)] for _ in range(3))
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    assert A.mul(x, y) == A.mul(y, x)
