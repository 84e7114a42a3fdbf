"""Finite fields GF(p^m) with elements stored as integer indices.

An element ``sum(a_i x^i)`` is stored as the integer ``sum(a_i p^i)``; index 0
is the additive identity and index 1 the multiplicative identity.  For m > 1
multiplication goes through log/antilog tables built from a primitive element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

MAX_ORDER = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# --- helpers on coefficient lists over GF(p), low degree first -------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must have a nonzero lead."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - f * bc) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    for tail in itertools.product(range(p), repeat=d):
        yield list(reversed(tail)) + [1] if d else [1]


def is_irreducible_over_prime(coeffs: Sequence[int], p: int) -> bool:
    """Trial division of a monic polynomial (full coefficient list incl. lead)
    by every monic polynomial of degree 1 .. deg/2."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            # the product() above enumerates tails high-first; order is irrelevant here
            if not _pmod(coeffs, cand, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest (c_0, ..., c_{m-1}) giving a monic irreducible."""
    for tail in itertools.product(range(p), repeat=m):
        if is_irreducible_over_prime(list(tail) + [1], p):
            return tuple(tail)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


# --- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed modulus ``x^m + c_{m-1} x^{m-1} + ... + c_0``.

    Build instances with :func:`field_make`; that function validates the
    arguments and caches one instance per parameter set.
    """

    p: int
    m: int
    modulus: tuple[int, ...] = ()
    q: int = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.p ** self.m)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    # digits <-> index
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d % self.p
        return a

    def _polymul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_digits(_pmod(prod, list(self.modulus) + [1], p) + [0] * m)

    @cached_property
    def _tables(self) -> tuple[list[int], list[int], int]:
        """(exp, log, primitive element) for m > 1."""
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._polymul(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log, g
        raise FieldError("no primitive element found")  # unreachable for a field

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...] | None:
        if self.q > 256:
            return None
        return tuple(tuple(self._add(a, b) for b in range(self.q)) for a in range(self.q))

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...] | None:
        if self.q > 256:
            return None
        return tuple(tuple(self._mul(a, b) for b in range(self.q)) for a in range(self.q))

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self._neg(a) for a in range(self.q))

    @cached_property
    def inv_table(self) -> tuple[int, ...]:
        return (0,) + tuple(self._inv(a) for a in range(1, self.q))

    @property
    def primitive_element(self) -> int:
        if self.m == 1:
            for g in range(1, self.p):
                if self.element_order(g) == self.p - 1:
                    return g
        return self._tables[2]

    # raw arithmetic on indices
    def _add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def _neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def _mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log, _ = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log, _ = self._tables
        return exp[-log[a] % (self.q - 1)]

    def add(self, a: int, b: int) -> int:
        t = self.add_table
        return t[a][b] if t is not None else self._add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    def mul(self, a: int, b: int) -> int:
        t = self.mul_table
        return t[a][b] if t is not None else self._mul(a, b)

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def frobenius(self, a: int, j: int) -> int:
        """a ** (p ** j)."""
        j %= self.m
        if j == 0 or self.m == 1:
            return a
        return self.power(a, self.p ** j)

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.q):
            yield FieldElement(i, self)

    def __call__(self, index: int) -> "FieldElement":
        return FieldElement(index, self)


@lru_cache(maxsize=None)
def _make(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p ** m > MAX_ORDER:
        raise FieldError(f"field order {p}^{m} exceeds the supported {MAX_ORDER}")
    if m == 1:
        if modulus:
            raise FieldError("prime fields take no modulus")
        return FieldSpec(p, 1, ())
    if modulus is None:
        modulus = default_modulus(p, m)
    if len(modulus) != m:
        raise FieldError(f"modulus needs {m} coefficients c_0..c_{m - 1}, got {len(modulus)}")
    if any(not 0 <= c < p for c in modulus):
        raise FieldError(f"modulus coefficients must lie in [0, {p})")
    if not is_irreducible_over_prime(list(modulus) + [1], p):
        raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
    return FieldSpec(p, m, tuple(modulus))


def field_make(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated, cached GF(p^m).  ``modulus`` lists c_0..c_{m-1}."""
    return _make(p, m, None if modulus is None else tuple(int(c) for c in modulus))


# --- element wrapper ---------------------------------------------------------

class FieldElement:
    """Convenience value type; matrices and kernels work on raw indices."""

    __slots__ = ("index", "field")

    def __init__(self, index: int, field: FieldSpec):
        if not 0 <= index < field.q:
            raise FieldError(f"index {index} out of range for {field!r}")
        self.index = index
        self.field = field

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError("mixed field specs")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field.add(self.index, other.index), self.field)

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field.sub(self.index, other.index), self.field)

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field.mul(self.index, other.index), self.field)

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field.div(self.index, other.index), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.index), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.power(self.index, e), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.index), self.field)

    def __eq__(self, other):
        return isinstance(other, FieldElement) and (self.index, self.field) == (other.index, other.field)

    def __hash__(self):
        return hash((self.index, self.field))

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"{self.field!r}({self.index})"


def field_arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Dispatch one of add, sub, mul, div, inv, neg."""
    if op in ("inv", "neg"):
        return a.inverse() if op == "inv" else -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)


@dataclass(frozen=True)
class Frobenius:
    """The automorphism x -> x^(p^j) of a field with the given spec."""

    j: int
    field: FieldSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "j", self.j % self.field.m)

    def __call__(self, a: FieldElement) -> FieldElement:
        return frobenius_apply(self, a)

    def __mul__(self, other: "Frobenius") -> "Frobenius":
        if other.field != self.field:
            raise FieldError("mixed field specs")
        return Frobenius(self.j + other.j, self.field)

    def inverse(self) -> "Frobenius":
        return Frobenius(-self.j, self.field)

    @staticmethod
    def all(field: FieldSpec) -> list["Frobenius"]:
        return [Frobenius(j, field) for j in range(field.m)]


def frobenius_apply(phi: Frobenius, a: FieldElement) -> FieldElement:
    if phi.field != a.field:
        raise FieldError("Frobenius map and element live in different fields")
    return FieldElement(a.field.frobenius(a.index, phi.j), a.field)
