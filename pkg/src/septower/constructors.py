"""Builders for cyclic algebras ``k[x]/(f)`` and coset algebras ``k(G/H)``."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, make_algebra, split_algebra
from .errors import EnumerationBudgetExceeded, InputError, SubgroupNotContained
from .fields import FieldSpec, poly_deriv, poly_gcd, poly_trim
from .linalg import Matrix

Perm = tuple[int, ...]  # 0-based images


def cyclic_algebra(field: FieldSpec, f: Sequence) -> Algebra:
    """``k[x]/(f)`` on the power basis ``1, x, ..., x^(n-1)``.

    ``f`` lists coefficients from the constant term up and must be monic.
    """
    F = field
    coeffs = [F.coerce(c) for c in f]
    if not coeffs:
        raise InputError("empty polynomial")
    if coeffs[-1] != F.one:
        raise InputError("polynomial must be monic (last coefficient 1)")
    n = len(coeffs) - 1
    if n == 0:
        return make_algebra(F, 0, Matrix.zeros(F, 0, 0), [])
    # x^k reduced mod f for k < 2n - 1
    powers = []
    cur = [F.one] + [F.zero] * (n - 1)
    for _ in range(2 * n - 1):
        powers.append(cur)
        top = cur[-1]
        nxt = [F.zero] + cur[:-1]
        if not F.is_zero(top):
            nxt = [F.sub(a, F.mul(top, c)) for a, c in zip(nxt, coeffs)]
        cur = nxt
    rows = [[powers[i + j][k] for i in range(n) for j in range(n)] for k in range(n)]
    unit = [F.one] + [F.zero] * (n - 1)
    return make_algebra(F, n, Matrix(F, n, n * n, rows), unit)


def derivative_gcd(field: FieldSpec, f: Sequence) -> list:
    """``gcd(f, f')`` (monic, ascending coefficients)."""
    F = field
    coeffs = poly_trim(F, [F.coerce(c) for c in f])
    return poly_gcd(F, coeffs, poly_deriv(F, coeffs))


def is_squarefree_poly(field: FieldSpec, f: Sequence) -> bool:
    """Separability of ``k[x]/(f)`` according to ``gcd(f, f') = 1``."""
    return len(derivative_gcd(field, f)) == 1


# ---------------------------------------------------------------------------
# permutation groups

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text, degree: int) -> Perm:
    """Parse cycle notation on the points ``1..degree``.

    Accepts ``"(1 2)(3 4 5)"``, ``"(1,2)"``, the compact ``"(12)(345)"`` when
    ``degree <= 9``, and ``"()"`` or ``""`` for the identity.  A list of
    integers is read as the image list ``[g(1), ..., g(m)]``.
    """
    if isinstance(text, (list, tuple)):
        images = [int(x) - 1 for x in text]
        if sorted(images) != list(range(degree)):
            raise InputError(f"{text!r} is not a permutation of 1..{degree}")
        return tuple(images)
    if not isinstance(text, str):
        raise InputError(f"cannot read a permutation from {text!r}")
    s = text.strip()
    if _CYCLE.sub("", s).strip():
        raise InputError(f"malformed cycle notation {text!r}")
    perm = list(range(degree))
    for body in reversed(_CYCLE.findall(s)):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            pts = [int(t) for t in re.split(r"[\s,]+", body) if t]
        elif degree <= 9:
            pts = [int(ch) for ch in body]
        else:
            pts = [int(body)]
        if len(set(pts)) != len(pts) or any(p < 1 or p > degree for p in pts):
            raise InputError(f"bad cycle ({body}) for degree {degree}")
        # apply this cycle after the ones to its right
        cyc = {pts[i] - 1: pts[(i + 1) % len(pts)] - 1 for i in range(len(pts))}
        perm = [cyc.get(perm[x], perm[x]) for x in range(degree)]
    return tuple(perm)


def compose(g: Perm, h: Perm) -> Perm:
    """``g o h`` (apply ``h`` first)."""
    return tuple(g[x] for x in h)


@dataclass(frozen=True)
class GroupSpec:
    degree: int
    generators: tuple[Perm, ...]
    subgroup_generators: tuple[Perm, ...]

    @classmethod
    def from_cycles(cls, degree: int, generators: Sequence, subgroup: Sequence) -> "GroupSpec":
        if not isinstance(degree, int) or degree < 1:
            raise InputError("group degree must be a positive integer")
        gens = tuple(parse_permutation(g, degree) for g in generators)
        sub = tuple(parse_permutation(g, degree) for g in subgroup)
        return cls(degree, gens, sub)


def enumerate_group(degree: int, generators: Sequence[Perm], budget: int = 10**4) -> set[Perm]:
    """Breadth-first closure of the generators."""
    identity = tuple(range(degree))
    for g in generators:
        if len(g) != degree or sorted(g) != list(identity):
            raise InputError(f"{g} is not a permutation of degree {degree}")
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise EnumerationBudgetExceeded(f"group has more than {budget} elements")
                queue.append(y)
    return seen


def left_cosets(G: set[Perm], H: set[Perm]) -> list[frozenset]:
    remaining = set(G)
    cosets = []
    for g in sorted(G):
        if g not in remaining:
            continue
        c = frozenset(compose(g, h) for h in H)
        remaining -= c
        cosets.append(c)
    return cosets


def coset_algebra(field: FieldSpec, g: GroupSpec, budget: int = 10**4) -> tuple[Algebra, int]:
    """The split algebra on the left cosets ``G/H`` and the index ``[G:H]``."""
    G = enumerate_group(g.degree, g.generators, budget)
    H = enumerate_group(g.degree, g.subgroup_generators, budget)
    if not H <= G:
        raise SubgroupNotContained("subgroup generators do not lie in G")
    index = len(left_cosets(G, H))
    return split_algebra(field, index), index
