"""Deciding (semi)linear isometry of subspace codes, and conjugacy of cyclic groups."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .action import GroupClosure, SemilinearMap, act, closure, compose, inverse
from .codes import SubspaceCode, orbit_code
from .linalg import DEFAULT_CAP, CapExceeded, MatrixGF, SingularMatrix, gl_order
from .rcf import rational_canonical_form
from .search import default_jobs, find_maps
from .space import Subspace, intersect


@dataclass(frozen=True)
class Fingerprint:
    q: int
    n: int
    cardinality: int
    dimensions: tuple[tuple[int, int], ...]
    distances: tuple[tuple[int, int], ...]   # pairwise d_S multiset as (value, count)

    def mismatch(self, other: "Fingerprint") -> str | None:
        for name in ("q", "n", "cardinality", "dimensions", "distances"):
            if getattr(self, name) != getattr(other, name):
                return name
        return None


def fingerprint(C: SubspaceCode) -> Fingerprint:
    ds: Counter = Counter()
    for U, V in itertools.combinations(C.words, 2):
        ds[U.dim + V.dim - 2 * intersect(U, V).dim] += 1
    dims = Counter(U.dim for U in C.words)
    return Fingerprint(C.field.q, C.n, len(C), tuple(sorted(dims.items())), tuple(sorted(ds.items())))


@dataclass
class IsometryWitness:
    found: bool | None                  # None: undecided because the cap refused the search
    map: SemilinearMap | None = None
    certificate: str = ""

    def __bool__(self) -> bool:
        return bool(self.found)


def isometric(
    C1: SubspaceCode,
    C2: SubspaceCode,
    mode: str = "linear",
    *,
    cap: int = DEFAULT_CAP,
    jobs: int | None = None,
) -> IsometryWitness:
    """Search for g with C1 g = C2.

    Fingerprints are compared first; the search then returns the first map in
    (Frobenius exponent, stream) order and re-checks it before returning.
    """
    if mode not in ("linear", "semilinear"):
        raise ValueError(f"unknown mode {mode!r}")
    if C1.field != C2.field:
        return IsometryWitness(False, None, "fingerprint mismatch (field)")
    bad = fingerprint(C1).mismatch(fingerprint(C2))
    if bad is not None:
        return IsometryWitness(False, None, f"fingerprint mismatch ({bad})")
    F = C1.field
    frobs = list(range(F.m)) if mode == "semilinear" else [0]
    try:
        res = find_maps(
            C1.words, C2.words, F, C1.n, frobs, cap=cap, jobs=default_jobs() if jobs is None else jobs, first_only=True
        )
    except CapExceeded as exc:
        return IsometryWitness(None, None, f"unknown: {exc}")
    if not res.maps:
        return IsometryWitness(False, None, "exhaustive search completed")
    A, j = res.maps[0]
    g = SemilinearMap(MatrixGF(C1.n, C1.n, A.reshape(-1).tolist(), F), int(j))
    if C1.apply(g) != C2:
        raise AssertionError("search returned a map that does not carry C1 onto C2")
    return IsometryWitness(True, g, "witness verified")


def multiplicative_order(g: MatrixGF, cap: int | None = None) -> int:
    n, q = g.rows, g.field.q
    limit = gl_order(n, q) if cap is None else cap
    I = MatrixGF.identity(n, g.field)
    x, k = g, 1
    while x != I:
        x, k = x @ g, k + 1
        if k > limit:
            raise ValueError("matrix order exceeds |GL_n(q)|; is it singular?")
    return k


def cyclic_conjugate(g1: MatrixGF, g2: MatrixGF) -> bool:
    """Whether <g1> and <g2> are conjugate in GL_n: some generator g1^t with
    gcd(t, ord g1) = 1 has the same rational canonical form as g2."""
    if g1.shape != g2.shape or g1.field != g2.field:
        raise ValueError("matrices of different shape or field")
    if not g1.is_invertible() or not g2.is_invertible():
        raise SingularMatrix("cyclic_conjugate needs invertible matrices")
    o1 = multiplicative_order(g1)
    if o1 != multiplicative_order(g2):
        return False
    target = rational_canonical_form(g2)
    return any(
        rational_canonical_form(g1 ** t) == target for t in range(1, o1 + 1) if gcd(t, o1) == 1
    )


def orbit_isometry_transport(
    U1: Subspace, G: GroupClosure | Sequence[SemilinearMap], S: MatrixGF, cap: int = DEFAULT_CAP
) -> tuple[SubspaceCode, GroupClosure]:
    """(U1 S)(S^{-1} G S) and the conjugated group."""
    if not S.is_invertible():
        raise SingularMatrix("transport matrix must be invertible")
    gens = list(G.generators if isinstance(G, GroupClosure) else G)
    if isinstance(G, GroupClosure) and not gens:
        gens = list(G)
    s = SemilinearMap(S, check=False)
    s_inv = inverse(s)
    conj = [compose(compose(s_inv, g), s) for g in gens]
    H = closure(conj, cap, field=S.field, n=S.rows)
    return orbit_code(act(U1, s), conj), H
