from __future__ import annotations

import itertools
import random

import pytest

from conftest import GF2, GF3, GF4, random_subspace
from subspacecodes import reference as ref
from subspacecodes.action import SemilinearMap, closure, compose, inverse
from subspacecodes.codes import SubspaceCode, desarguesian_spread, lift, orbit_code
from subspacecodes.field import field_make
from subspacecodes.isometry import (
    Fingerprint,
    cyclic_conjugate,
    fingerprint,
    isometric,
    multiplicative_order,
    orbit_isometry_transport,
)
from subspacecodes.linalg import MatrixGF, block_diag, companion_matrix, enumerate_gl, hstack, random_invertible
from subspacecodes.poly import PolyGF
from subspacecodes.space import Subspace


def test_fingerprint_examples(rng):
    C = ref.spread_listing(2)
    assert fingerprint(C) == Fingerprint(2, 4, 5, ((2, 5),), ((4, 10),))
    single = SubspaceCode(GF2, 4, C.words[:1])
    assert fingerprint(single).distances == ()
    for _ in range(50):
        g = SemilinearMap(random_invertible(4, GF2, rng))
        assert fingerprint(C.apply(g)) == fingerprint(C)


def test_isometric_to_random_translate(rng):
    for F, n in [(GF2, 4), (GF3, 3), (GF2, 3)]:
        for _ in range(3):
            C = SubspaceCode(F, n, {random_subspace(F, n, rng) for _ in range(4)})
            A = random_invertible(n, F, rng)
            D = C.apply(SemilinearMap(A))
            w = isometric(C, D, jobs=1)
            assert w.found and C.apply(w.map) == D


def test_desarguesian_spreads_are_isometric():
    C1 = desarguesian_spread(GF3, 2, 4, PolyGF([2, 1, 1], GF3))
    C2 = desarguesian_spread(GF3, 2, 4, PolyGF([2, 2, 1], GF3))
    w = isometric(C1, C2, jobs=1)
    assert w.found and C1.apply(w.map) == C2


def test_spread_vs_lift_not_isometric():
    w = isometric(ref.spread_listing(2), lift(ref.rank_code()))
    assert w.found is False and w.certificate.startswith("fingerprint mismatch")


def test_exhaustive_negative():
    # same fingerprint, different geometry: three points on a line vs three
    # points in general position both have pairwise d_S = 2
    on_line = SubspaceCode(GF2, 3, [Subspace.from_rows(r, GF2) for r in ([[1, 0, 0]], [[0, 1, 0]], [[1, 1, 0]])])
    general = SubspaceCode(GF2, 3, [Subspace.from_rows(r, GF2) for r in ([[1, 0, 0]], [[0, 1, 0]], [[0, 0, 1]])])
    assert fingerprint(on_line) == fingerprint(general)
    w = isometric(on_line, general, jobs=1)
    assert w.found is False and w.certificate == "exhaustive search completed"


def test_exhaustive_agrees_with_fingerprint_on_small_instances(rng):
    for _ in range(15):
        C = SubspaceCode(GF2, 3, {random_subspace(GF2, 3, rng) for _ in range(3)})
        D = SubspaceCode(GF2, 3, {random_subspace(GF2, 3, rng) for _ in range(3)})
        w = isometric(C, D, jobs=1)
        naive = any(C.apply(SemilinearMap(A, check=False)) == D for A in enumerate_gl(3, GF2))
        assert bool(w.found) == naive
        if fingerprint(C) != fingerprint(D):
            assert not naive


def test_semilinear_isometry_over_gf4(rng):
    F = GF4
    C = SubspaceCode(F, 2, {random_subspace(F, 2, rng, k=1) for _ in range(3)})
    g = SemilinearMap(random_invertible(2, F, rng), 1)
    D = C.apply(g)
    w = isometric(C, D, "semilinear", jobs=1)
    assert w.found and C.apply(w.map) == D
    lin = isometric(C, D, "linear", jobs=1)
    naive = any(C.apply(SemilinearMap(A, check=False)) == D for A in enumerate_gl(2, F))
    assert bool(lin.found) == naive


def test_semilinear_equals_linear_over_prime_fields(rng):
    for _ in range(5):
        C = SubspaceCode(GF3, 3, {random_subspace(GF3, 3, rng) for _ in range(3)})
        D = SubspaceCode(GF3, 3, {random_subspace(GF3, 3, rng) for _ in range(3)})
        assert bool(isometric(C, D, "linear", jobs=1)) == bool(isometric(C, D, "semilinear", jobs=1))


def test_cap_refusal_is_unknown():
    w = isometric(ref.spread_listing(3), ref.spread_listing(3), cap=1000)
    assert w.found is None and "1000" in w.certificate and "24261120" in w.certificate


def test_cyclic_conjugate_examples(rng):
    for F, n in [(GF2, 3), (GF3, 3), (GF2, 4)]:
        for _ in range(5):
            g = random_invertible(n, F, rng)
            S = random_invertible(n, F, rng)
            assert cyclic_conjugate(g, S @ g @ S.inverse())
            o = multiplicative_order(g)
            for t in range(1, o + 1):
                if __import__("math").gcd(t, o) == 1:
                    assert cyclic_conjugate(g, g ** t)
            assert cyclic_conjugate(g, g)
    C = companion_matrix(PolyGF([2, 1, 1], GF3))
    A = block_diag(C, C)
    S = random_invertible(4, GF3, rng)
    assert cyclic_conjugate(A, S @ A @ S.inverse())
    assert not cyclic_conjugate(A, block_diag(C, MatrixGF.identity(2, GF3)))


def test_cyclic_conjugate_is_group_conjugacy_not_similarity():
    # a Singer cycle and its inverse generate the same group but are not similar
    g = companion_matrix(PolyGF([1, 1, 0, 0, 1], GF2))
    from subspacecodes.rcf import rational_canonical_form

    assert rational_canonical_form(g) != rational_canonical_form(g.inverse())
    assert cyclic_conjugate(g, g.inverse())


def test_cyclic_conjugate_symmetric(rng):
    for _ in range(20):
        a, b = random_invertible(3, GF2, rng), random_invertible(3, GF2, rng)
        assert cyclic_conjugate(a, b) == cyclic_conjugate(b, a)


def test_orbit_isometry_transport(rng):
    U = ref.spread_listing(2).words[1]
    gens = ref.spread_data(2)["generators"]
    G = closure(gens)
    C1 = orbit_code(U, G)
    code, H = orbit_isometry_transport(U, G, MatrixGF.identity(4, GF2))
    assert code == C1 and H.keys == G.keys
    for _ in range(5):
        S = random_invertible(4, GF2, rng)
        code, H = orbit_isometry_transport(U, G, S)
        assert code == C1.apply(SemilinearMap(S))
        assert H.order == G.order


def all_spreads_g224() -> list[SubspaceCode]:
    """Every set of 5 pairwise trivially intersecting planes in GF(2)^4, by backtracking."""
    vecs = [v for v in itertools.product(range(2), repeat=4) if any(v)]
    planes = sorted({Subspace.from_rows([a, b], GF2) for a, b in itertools.combinations(vecs, 2)})
    points = {U: frozenset(v for v in vecs if U.contains_vector(v)) for U in planes}
    out = []

    def rec(chosen, covered):
        if len(covered) == 15:
            out.append(SubspaceCode(GF2, 4, chosen))
            return
        first = min(v for v in vecs if v not in covered)
        for U in planes:
            if first in points[U] and not points[U] & covered:
                rec(chosen + [U], covered | points[U])

    rec([], frozenset())
    return out


def test_all_spreads_of_g224_are_isometric():
    spreads = all_spreads_g224()
    assert len(spreads) == 56
    C = ref.spread_listing(2)
    for S in spreads:
        w = isometric(C, S, jobs=1)
        assert w.found and C.apply(w.map) == S
