import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from families import F5
from septower import QQ, cyclic_algebra, degree, separability_idempotent, unit_algebra
from septower.constructors import (
    GroupSpec,
    compose,
    coset_algebra,
    derivative_gcd,
    enumerate_group,
    is_squarefree_poly,
    left_cosets,
    parse_permutation,
)
from septower.errors import EnumerationBudgetExceeded, InputError, SubgroupNotContained

S3 = GroupSpec.from_cycles(3, ["(1 2)", "(1 2 3)"], ["(1 2)"])


def test_linear_cyclic_is_unit():
    assert cyclic_algebra(QQ, [-1, 1]) == unit_algebra(QQ)


def test_gaussian_cyclic():
    A = cyclic_algebra(QQ, [1, 0, 1])
    assert A.dim == 2
    assert derivative_gcd(QQ, [1, 0, 1]) == [1]
    assert separability_idempotent(A) is not None
    assert degree(A) == 2


def test_dual_numbers_cyclic():
    assert derivative_gcd(QQ, [0, 0, 1]) == [0, 1]
    assert not is_squarefree_poly(QQ, [0, 0, 1])
    assert separability_idempotent(cyclic_algebra(QQ, [0, 0, 1])) is None


def test_cyclic_requires_monic():
    with pytest.raises(InputError):
        cyclic_algebra(QQ, [1, 0, 2])


def test_parse_cycles():
    assert parse_permutation("(1 2)(3 4 5)", 5) == (1, 0, 3, 4, 2)
    assert parse_permutation("(12)(345)", 5) == (1, 0, 3, 4, 2)
    assert parse_permutation("(1,2)", 3) == (1, 0, 2)
    assert parse_permutation("()", 3) == (0, 1, 2)
    assert parse_permutation([2, 3, 1], 3) == (1, 2, 0)


def test_parse_product_applies_right_to_left():
    # (1 2)(2 3): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    assert parse_permutation("(1 2)(2 3)", 3) == (1, 2, 0)
    assert parse_permutation("(1 2)(2 3)", 3) == compose(
        parse_permutation("(1 2)", 3), parse_permutation("(2 3)", 3)
    )


@pytest.mark.parametrize("bad", ["(1 4)", "(1 1)", "1 2", "(1 2"])
def test_parse_rejects(bad):
    with pytest.raises(InputError):
        parse_permutation(bad, 3)


def test_s3_modulo_transposition():
    A, index = coset_algebra(F5, S3)
    assert index == 3 and A.dim == 3
    assert degree(A) == 3


def test_whole_group_gives_unit():
    g = GroupSpec.from_cycles(3, ["(1 2)", "(1 2 3)"], ["(1 2)", "(1 2 3)"])
    A, index = coset_algebra(QQ, g)
    assert index == 1 and A == unit_algebra(QQ)


def test_trivial_subgroup():
    g = GroupSpec.from_cycles(3, ["(1 2)", "(1 2 3)"], [])
    A, index = coset_algebra(QQ, g)
    assert index == 6 and degree(A) == 6


def test_subgroup_must_be_contained():
    g = GroupSpec.from_cycles(4, ["(1 2 3 4)"], ["(1 2)"])
    with pytest.raises(SubgroupNotContained):
        coset_algebra(QQ, g)


def test_enumeration_budget():
    gens = [parse_permutation("(1 2)", 7), parse_permutation("(1 2 3 4 5 6 7)", 7)]
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_group(7, gens, budget=100)


@given(st.permutations(range(5)), st.permutations(range(5)))
@settings(max_examples=40, deadline=None)
def test_cosets_partition(g, h):
    G = enumerate_group(5, [tuple(g), tuple(h)])
    H = enumerate_group(5, [tuple(g)])
    cosets = left_cosets(G, H)
    assert sum(len(c) for c in cosets) == len(G)
    assert all(len(c) == len(H) for c in cosets)
    assert len(G) % len(H) == 0
