"""Exact scalar fields: the rationals, prime fields and simple extensions.

Elements are plain Python values so they can be hashed and compared cheaply:

* ``Rationals``        -> :class:`fractions.Fraction`
* ``PrimeField(p)``    -> ``int`` in ``range(p)``
* ``SimpleExtension``  -> ``tuple`` of base-field elements, the coefficients of
  the reduced representative ``c_0 + c_1 t + ... + c_{m-1} t^{m-1}``.

Polynomials everywhere in the package are coefficient lists in ascending
order (constant term first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import FieldMismatch, InputError, NotAField


class FieldSpec:
    """Common interface; concrete fields override the arithmetic."""

    zero: Any
    one: Any

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def to_json(self, a):
        raise NotImplementedError

    def random_element(self, rng, bound: int = 3):
        raise NotImplementedError

    def dot(self, xs: Sequence, ys: Sequence):
        acc = self.zero
        for x, y in zip(xs, ys):
            if not self.is_zero(x) and not self.is_zero(y):
                acc = self.add(acc, self.mul(x, y))
        return acc

    def pow(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    # -- tower bookkeeping -------------------------------------------------
    @property
    def prime_field(self) -> "FieldSpec":
        return self

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    @property
    def absolute_degree(self) -> int:
        return 1

    def to_prime_coords(self, a) -> list:
        return [a]

    def from_prime_coords(self, coords: Sequence):
        return coords[0]

    def embed_from(self, other: "FieldSpec", x):
        """Map ``x`` from a subfield ``other`` of this field into this field."""
        if other == self:
            return x
        raise FieldMismatch(f"{other} is not a subfield of {self}")

    def extends(self, other: "FieldSpec") -> bool:
        return other == self

    def order(self) -> int | None:
        """Number of elements, or ``None`` for infinite fields."""
        return None


@dataclass(frozen=True)
class Rationals(FieldSpec):
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise InputError(f"not a rational: {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except ValueError:
                raise InputError(f"not a rational: {x!r}") from None
        raise InputError(f"not a rational: {x!r}")

    def to_json(self, a):
        return str(a)

    def random_element(self, rng, bound: int = 3):
        return Fraction(rng.randint(-bound, bound))

    def dot(self, xs, ys):
        return sum((x * y for x, y in zip(xs, ys) if x and y), Fraction(0))

    @property
    def characteristic(self) -> int:
        return 0

    def __str__(self) -> str:
        return "Q"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p >= 2**31 or not _is_prime(self.p):
            raise InputError(f"modulus {self.p!r} is not a prime below 2^31")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, bool):
            raise InputError(f"not a residue: {x!r}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return (x.numerator * self.inv(x.denominator % self.p)) % self.p
        if isinstance(x, str):
            return self.coerce(Rationals().coerce(x))
        raise InputError(f"not a residue mod {self.p}: {x!r}")

    def to_json(self, a):
        return int(a)

    def random_element(self, rng, bound: int = 3):
        return rng.randrange(self.p)

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    @property
    def characteristic(self) -> int:
        return self.p

    def order(self) -> int:
        return self.p

    def __str__(self) -> str:
        return f"F_{self.p}"


# ---------------------------------------------------------------------------
# polynomials over a field (ascending coefficient lists, no trailing zeros)


def poly_trim(F: FieldSpec, a: Sequence) -> list:
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def poly_add(F, a, b):
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else F.zero, b[i] if i < len(b) else F.zero) for i in range(n)]
    return poly_trim(F, out)


def poly_sub(F, a, b):
    n = max(len(a), len(b))
    out = [F.sub(a[i] if i < len(a) else F.zero, b[i] if i < len(b) else F.zero) for i in range(n)]
    return poly_trim(F, out)


def poly_scale(F, a, c):
    return poly_trim(F, [F.mul(c, x) for x in a])


def poly_mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            if not F.is_zero(y):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(F, out)


def poly_divmod(F, a, b):
    b = poly_trim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_trim(F, a)
    if len(r) < len(b):
        return [], r
    lead_inv = F.inv(b[-1])
    q = [F.zero] * (len(r) - len(b) + 1)
    while len(r) >= len(b):
        c = F.mul(r[-1], lead_inv)
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, y))
        r = poly_trim(F, r)
    return poly_trim(F, q), r


def poly_monic(F, a):
    a = poly_trim(F, a)
    if not a:
        return a
    return poly_scale(F, a, F.inv(a[-1]))


def poly_gcd(F, a, b):
    a, b = poly_trim(F, a), poly_trim(F, b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_xgcd(F, a, b):
    """Return ``(g, s, t)`` with ``s a + t b = g`` and ``g`` monic (or zero)."""
    r0, r1 = poly_trim(F, a), poly_trim(F, b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return poly_scale(F, r0, c), poly_scale(F, s0, c), poly_scale(F, t0, c)


def poly_deriv(F, a):
    return poly_trim(F, [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def poly_powmod(F, a, e: int, m):
    result = [F.one]
    base = poly_divmod(F, a, m)[1]
    while e:
        if e & 1:
            result = poly_divmod(F, poly_mul(F, result, base), m)[1]
        base = poly_divmod(F, poly_mul(F, base, base), m)[1]
        e >>= 1
    return result


# eager irreducibility is brute force: skip it when the search is large
_IRREDUCIBILITY_BUDGET = 200_000


def _has_small_factor(F: PrimeField, f: Sequence) -> bool:
    d = len(f) - 1
    p = F.p
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            if not poly_divmod(F, f, g)[1]:
                return True
    return False


@dataclass(frozen=True)
class SimpleExtension(FieldSpec):
    """``base[t]/(minpoly)``; ``minpoly`` is monic, ascending coefficients."""

    base: FieldSpec
    minpoly: tuple
    _degree: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coeffs = tuple(self.base.coerce(c) for c in self.minpoly)
        coeffs = tuple(poly_trim(self.base, coeffs))
        if len(coeffs) < 2:
            raise InputError("extension minpoly must have degree >= 1")
        if coeffs[-1] != self.base.one:
            raise InputError("extension minpoly must be monic")
        object.__setattr__(self, "minpoly", coeffs)
        object.__setattr__(self, "_degree", len(coeffs) - 1)
        if isinstance(self.base, PrimeField) and self._degree <= 6:
            if self.base.p ** (self._degree // 2) <= _IRREDUCIBILITY_BUDGET:
                if _has_small_factor(self.base, list(coeffs)):
                    raise NotAField(f"minpoly {list(coeffs)} is reducible over {self.base}")

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def zero(self):
        return (self.base.zero,) * self._degree

    @property
    def one(self):
        return (self.base.one,) + (self.base.zero,) * (self._degree - 1)

    def _reduce(self, coeffs: list) -> tuple:
        B, m, g = self.base, self._degree, self.minpoly
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, m - 1, -1):
            c = coeffs[k]
            if B.is_zero(c):
                continue
            shift = k - m
            for i in range(m):
                if not B.is_zero(g[i]):
                    coeffs[shift + i] = B.sub(coeffs[shift + i], B.mul(c, g[i]))
        coeffs = coeffs[:m]
        coeffs += [B.zero] * (m - len(coeffs))
        return tuple(coeffs)

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        out = [B.zero] * (2 * self._degree - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not B.is_zero(y):
                    out[i + j] = B.add(out[i + j], B.mul(x, y))
        return self._reduce(out)

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def inv(self, a):
        B = self.base
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = poly_xgcd(B, list(a), list(self.minpoly))
        if len(g) != 1:
            raise NotAField(
                f"minpoly {list(self.minpoly)} has the nontrivial factor {g} over {B}"
            )
        s = list(s) + [B.zero] * (self._degree - len(s))
        return tuple(s[: self._degree])

    def from_int(self, n: int):
        return (self.base.from_int(n),) + (self.base.zero,) * (self._degree - 1)

    def embed(self, x):
        return (x,) + (self.base.zero,) * (self._degree - 1)

    def embed_from(self, other, x):
        if other == self:
            return x
        return self.embed(self.base.embed_from(other, x))

    def extends(self, other) -> bool:
        return other == self or self.base.extends(other)

    def coerce(self, x):
        if isinstance(x, (list, tuple)):
            if len(x) > self._degree:
                return self._reduce([self.base.coerce(c) for c in x])
            vals = [self.base.coerce(c) for c in x]
            return tuple(vals + [self.base.zero] * (self._degree - len(vals)))
        return self.embed(self.base.coerce(x))

    def to_json(self, a):
        return [self.base.to_json(x) for x in a]

    def random_element(self, rng, bound: int = 3):
        return tuple(self.base.random_element(rng, bound) for _ in range(self._degree))

    @property
    def prime_field(self):
        return self.base.prime_field

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def absolute_degree(self) -> int:
        return self._degree * self.base.absolute_degree

    def to_prime_coords(self, a) -> list:
        out = []
        for x in a:
            out.extend(self.base.to_prime_coords(x))
        return out

    def from_prime_coords(self, coords):
        k = self.base.absolute_degree
        return tuple(
            self.base.from_prime_coords(coords[i * k:(i + 1) * k]) for i in range(self._degree)
        )

    def generator(self):
        """The class of ``t`` (only meaningful for degree >= 2)."""
        if self._degree == 1:
            return self._reduce([self.base.zero, self.base.one])
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self._degree - 2)

    def order(self):
        q = self.base.order()
        return None if q is None else q ** self._degree

    def __str__(self) -> str:
        return f"{self.base}[t]/({', '.join(str(c) for c in self.minpoly)})"


QQ = Rationals()


def field_from_json(obj: dict) -> FieldSpec:
    """Build a field from ``{"kind": "Q" | "Fp" | "ext", "p": .., "minpoly": [..]}``."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("field must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        if not isinstance(obj.get("p"), int):
            raise InputError("Fp field needs an integer 'p'")
        return PrimeField(obj["p"])
    if kind == "ext":
        base = obj.get("base")
        if base is not None:
            base_field = field_from_json(base)
        elif "p" in obj:
            base_field = PrimeField(obj["p"])
        else:
            base_field = QQ
        if not isinstance(obj.get("minpoly"), list):
            raise InputError("ext field needs a 'minpoly' list")
        return SimpleExtension(base_field, tuple(obj["minpoly"]))
    raise InputError(f"unknown field kind {kind!r}")


def field_to_json(F: FieldSpec) -> dict:
    if isinstance(F, Rationals):
        return {"kind": "Q"}
    if isinstance(F, PrimeField):
        return {"kind": "Fp", "p": F.p}
    if isinstance(F, SimpleExtension):
        out = {"kind": "ext", "minpoly": [F.base.to_json(c) for c in F.minpoly]}
        if isinstance(F.base, PrimeField):
            out["p"] = F.base.p
        elif not isinstance(F.base, Rationals):
            out["base"] = field_to_json(F.base)
        return out
    raise InputError(f"cannot serialize field {F!r}")
