"""Univariate polynomials over a FieldSpec, coefficients low degree first."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator

from .field import FieldSpec


class PolyGF:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[int], field: FieldSpec):
        c = [int(x) for x in coeffs]
        if any(not 0 <= x < field.q for x in c):
            raise ValueError(f"coefficient out of range for {field!r}")
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.field = field

    @classmethod
    def zero(cls, field: FieldSpec) -> "PolyGF":
        return cls((), field)

    @classmethod
    def one(cls, field: FieldSpec) -> "PolyGF":
        return cls((1,), field)

    @classmethod
    def x(cls, field: FieldSpec) -> "PolyGF":
        return cls((0, 1), field)

    @classmethod
    def monic_from_tail(cls, tail: Iterable[int], field: FieldSpec) -> "PolyGF":
        """x^k + c_{k-1} x^{k-1} + ... + c_0 from (c_0, ..., c_{k-1})."""
        return cls(list(tail) + [1], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __eq__(self, other):
        return isinstance(other, PolyGF) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __lt__(self, other: "PolyGF") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def _same(self, other: "PolyGF") -> FieldSpec:
        if self.field != other.field:
            raise ValueError("polynomials over different fields")
        return self.field

    def __add__(self, other: "PolyGF") -> "PolyGF":
        F = self._same(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyGF(
            [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)], F
        )

    def __neg__(self) -> "PolyGF":
        return PolyGF([self.field.neg(c) for c in self.coeffs], self.field)

    def __sub__(self, other: "PolyGF") -> "PolyGF":
        return self + (-other)

    def __mul__(self, other: "PolyGF") -> "PolyGF":
        F = self._same(other)
        if not self.coeffs or not other.coeffs:
            return PolyGF.zero(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return PolyGF(out, F)

    def scale(self, c: int) -> "PolyGF":
        return PolyGF([self.field.mul(c, x) for x in self.coeffs], self.field)

    def __pow__(self, e: int) -> "PolyGF":
        out = PolyGF.one(self.field)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: "PolyGF") -> tuple["PolyGF", "PolyGF"]:
        F = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv_lead = F.inv(other.lead)
        quot = [0] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            f = F.mul(r[-1], inv_lead)
            shift = len(r) - 1 - db
            quot[shift] = f
            for i, bc in enumerate(other.coeffs):
                r[shift + i] = F.sub(r[shift + i], F.mul(f, bc))
            while r and r[-1] == 0:
                r.pop()
        return PolyGF(quot, F), PolyGF(r, F)

    def __floordiv__(self, other: "PolyGF") -> "PolyGF":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyGF") -> "PolyGF":
        return divmod(self, other)[1]

    def monic(self) -> "PolyGF":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc


def poly_gcd(a: PolyGF, b: PolyGF) -> PolyGF:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def monic_polys(field: FieldSpec, degree: int) -> Iterator[PolyGF]:
    """All monic polynomials of the given degree, tails in lexicographic order."""
    for tail in itertools.product(range(field.q), repeat=degree):
        yield PolyGF.monic_from_tail(tail, field)


@lru_cache(maxsize=None)
def monic_irreducibles(field: FieldSpec, degree: int) -> tuple[PolyGF, ...]:
    lower = [f for d in range(1, degree // 2 + 1) for f in monic_irreducibles(field, d)]
    return tuple(
        f for f in monic_polys(field, degree) if all(not (f % g).is_zero() for g in lower)
    )


def is_irreducible(f: PolyGF) -> bool:
    if f.degree < 1:
        return False
    g = f.monic()
    for d in range(1, g.degree // 2 + 1):
        for h in monic_irreducibles(f.field, d):
            if (g % h).is_zero():
                return False
    return True


def factor(f: PolyGF) -> list[tuple[PolyGF, int]]:
    """Monic irreducible factors with multiplicity, by trial division in degree order."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    g = f.monic()
    out: list[tuple[PolyGF, int]] = []
    d = 1
    while g.degree >= 2 * d:
        for h in monic_irreducibles(f.field, d):
            e = 0
            while True:
                quo, rem = divmod(g, h)
                if not rem.is_zero():
                    break
                g, e = quo, e + 1
            if e:
                out.append((h, e))
        d += 1
    if g.degree >= 1:
        # every factor of degree < d is gone and deg g < 2d, so g is irreducible
        out.append((g, 1))
    return sorted(out, key=lambda he: (he[0].sort_key(), he[1]))
