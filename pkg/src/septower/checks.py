"""Property suites run by the ``check`` command on a single algebra.

Each suite returns a ``CheckResult``.  Randomness comes only from the
``random.Random`` handed in, so a fixed seed reproduces a run exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import Callable

from .algebra import Algebra, make_algebra, product_algebra, tensor_algebra
from .errors import SeptowerError
from .modules import (
    absolute,
    free_module,
    make_module,
    projection_formula_witness,
    regular_module,
    relative_tensor,
    v_idempotent,
)
from .separability import (
    is_separability_idempotent,
    separability_idempotent,
    trace_form_sigma,
)
from .splitting import prime_construction
from .tower import degree, is_degree_one, splitting_tower


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        return out


class _Skip(Exception):
    pass


def _random_vector(A: Algebra, rng: random.Random) -> list:
    return [A.field.random_element(rng) for _ in range(A.dim)]


def _tt_ring(A: Algebra):
    if A.dim == 0:
        raise _Skip("zero algebra")
    if not A.commutative:
        raise _Skip("not commutative")
    if separability_idempotent(A) is None:
        raise _Skip("not separable")


def check_axioms(A: Algebra, rng: random.Random) -> str:
    make_algebra(A.field, A.dim, A.mult, A.unit, check=True)
    x, y, z = (_random_vector(A, rng) for _ in range(3))
    if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
        raise AssertionError("random triple is not associative")
    if A.mul(A.unit, x) != A.mul(x, A.unit) or A.mul(A.unit, x) != [A.field.coerce(c) for c in x]:
        raise AssertionError("unit law fails on a random element")
    return "unit and associativity hold"


def check_constructions(A: Algebra, rng: random.Random) -> str:
    if A.dim > 4:
        raise _Skip("tensor square too large")
    P, pr1, pr2 = product_algebra(A, A)
    make_algebra(P.field, P.dim, P.mult, P.unit, check=True)
    T = tensor_algebra(A, A)
    make_algebra(T.field, T.dim, T.mult, T.unit, check=True)
    x = _random_vector(P, rng)
    y = _random_vector(P, rng)
    if pr1(P.mul(x, y)) != A.mul(pr1(x), pr1(y)):
        raise AssertionError("first projection is not multiplicative")
    return f"A x A (dim {P.dim}) and A (x) A (dim {T.dim}) are algebras"


def check_sigma(A: Algebra, rng: random.Random) -> str:
    if A.dim == 0:
        raise _Skip("zero algebra")
    data = separability_idempotent(A)
    if data is None:
        raise _Skip("not separable")
    if not is_separability_idempotent(A, data.sigma):
        raise AssertionError("canonical sigma fails the bimodule equations")
    if A.commutative:
        other = trace_form_sigma(A)
        if other is None or other.sigma != data.sigma:
            raise AssertionError("trace-form sigma differs from the canonical one")
        return "canonical and trace-form sigma agree"
    return "canonical sigma is a bimodule section"


def check_v_idempotent(A: Algebra, rng: random.Random) -> str:
    _tt_ring(A)
    x = regular_module(A)
    y = free_module(A, rng.randint(1, 2))
    v = v_idempotent(x, y)
    if v @ v != v:
        raise AssertionError("v o v != v")
    rank = v.rank()
    if rank != y.carrier_dim:
        raise AssertionError(f"A (x)_A F(y) has dimension {rank}, expected {y.carrier_dim}")
    return f"v is idempotent of rank {rank}"


def check_projection_formula(A: Algebra, rng: random.Random) -> str:
    _tt_ring(A)
    x = make_module(A, A.dim, A.mult)
    y_dim = rng.randint(1, 3)
    W = projection_formula_witness(x, y_dim)
    return f"witness is invertible of size {W.rows} for y of dimension {y_dim}"


def check_prime_splitting(A: Algebra, rng: random.Random) -> str:
    _tt_ring(A)
    if A.dim > 4:
        raise _Skip("prime construction checked for dim <= 4")
    S = absolute(A)
    Sp, dec = prime_construction(S, check=True)
    rt = relative_tensor(S, S)
    if rt.algebra.total.dim != A.dim + Sp.total.dim:
        raise AssertionError("dimensions of A (x) A and A x A' disagree")
    return f"A (x) A = A x A' with dim A' = {Sp.total.dim}"


def check_tower(A: Algebra, rng: random.Random) -> str:
    _tt_ring(A)
    report = splitting_tower(A)
    d = A.dim
    want = [1] + [factorial(d) // factorial(d - m) for m in range(1, d + 1)] + [0]
    if report.dims != want:
        raise AssertionError(f"level dims {report.dims}, expected {want}")
    if report.degree != d:
        raise AssertionError(f"degree {report.degree} != dim {d}")
    return f"degree {d} with falling-factorial level dims"


def check_tower_routes(A: Algebra, rng: random.Random) -> str:
    _tt_ring(A)
    if A.dim > 3:
        raise _Skip("direct route checked for dim <= 3")
    a = splitting_tower(A, "components").dims
    b = splitting_tower(A, "direct").dims
    if a != b:
        raise AssertionError(f"component route {a} and direct route {b} disagree")
    return "component and direct routes agree"


def check_degree_one(A: Algebra, rng: random.Random) -> str:
    _tt_ring(A)
    flag = bool(is_degree_one(A))
    if flag != (degree(A) == 1):
        raise AssertionError("degree-one test disagrees with the tower")
    return f"degree one: {flag}"


SUITES: list[tuple[str, Callable[[Algebra, random.Random], str]]] = [
    ("algebra_axioms", check_axioms),
    ("product_and_tensor", check_constructions),
    ("separability_idempotent", check_sigma),
    ("v_idempotent", check_v_idempotent),
    ("projection_formula", check_projection_formula),
    ("prime_splitting", check_prime_splitting),
    ("tower_dimensions", check_tower),
    ("tower_routes", check_tower_routes),
    ("degree_one", check_degree_one),
]


def run_checks(A: Algebra, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []
    for name, fn in SUITES:
        try:
            results.append(CheckResult(name, "pass", fn(A, rng)))
        except _Skip as exc:
            results.append(CheckResult(name, "skip", str(exc)))
        except (AssertionError, SeptowerError) as exc:
            results.append(CheckResult(name, "fail", f"{type(exc).__name__}: {exc}"))
    return results
