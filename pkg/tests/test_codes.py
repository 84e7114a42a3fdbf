from __future__ import annotations

import itertools
import random

import pytest

from conftest import GF2, GF3, random_subspace, vectors_of
from subspacecodes import reference as ref
from subspacecodes.action import SemilinearMap, closure, is_automorphism
from subspacecodes.codes import (
    RankMetricCode,
    SubspaceCode,
    analyze,
    desarguesian_spread,
    galois_block,
    is_spread,
    lift,
    lifted_block_map,
    matrix_field_elements,
    min_rank_distance,
    orbit_code,
    rank_automorphisms,
    rank_distance,
    spread_aut_order,
    spread_automorphism_generators,
)
from subspacecodes.field import default_modulus, field_make
from subspacecodes.linalg import MatrixGF, companion_matrix, enumerate_gl, hstack, random_invertible, random_matrix
from subspacecodes.poly import PolyGF
from subspacecodes.space import Subspace, subspace_distance


def test_spread_listings():
    C1 = desarguesian_spread(GF2, 2, 4, PolyGF([1, 1, 1], GF2))
    assert list(C1.words) == list(ref.spread_listing(2).words) and len(C1) == 5
    C2 = desarguesian_spread(GF3, 2, 4, PolyGF([2, 1, 1], GF3))
    assert list(C2.words) == list(ref.spread_listing(3).words) and len(C2) == 10
    assert len(desarguesian_spread(GF2, 2, 6, PolyGF([1, 1, 1], GF2))) == 21


@pytest.mark.parametrize("F,k,n", [(GF2, 2, 4), (GF3, 2, 4), (GF2, 2, 6), (GF2, 3, 6), (GF2, 1, 3), (field_make(5), 2, 4)])
def test_spreads_partition_the_space(F, k, n):
    poly = PolyGF([*default_modulus(F.p, k), 1], F)
    C = desarguesian_spread(F, k, n, poly)
    assert len(C) == (F.q ** n - 1) // (F.q ** k - 1)
    assert is_spread(C)
    seen = set()
    for U in C:
        nz = vectors_of(U) - {(0,) * n}
        assert not nz & seen
        seen |= nz
    assert len(seen) == F.q ** n - 1
    if len(C) > 1:
        assert analyze(C).min_subspace_distance == 2 * k


def test_spread_rejects_bad_input():
    with pytest.raises(ValueError):
        desarguesian_spread(GF2, 2, 5, PolyGF([1, 1, 1], GF2))
    with pytest.raises(ValueError):
        desarguesian_spread(GF2, 2, 4, PolyGF([1, 0, 1], GF2))
    with pytest.raises(ValueError):
        desarguesian_spread(field_make(2, 2), 2, 4, PolyGF([1, 1, 1], field_make(2, 2)))


def test_matrix_field_is_a_field():
    for F, poly in [(GF2, PolyGF([1, 1, 1], GF2)), (GF3, PolyGF([2, 1, 1], GF3)), (GF3, PolyGF([1, 0, 1], GF3))]:
        elems = matrix_field_elements(poly)
        q2 = F.q ** 2
        assert len(set(elems)) == q2
        S = set(elems)
        for X, Y in itertools.product(elems, repeat=2):
            assert X + Y in S and X @ Y in S
        assert all(X.is_invertible() for X in elems[1:])


def test_galois_block_conjugates_p_to_p_power_q():
    for F, poly in [(GF2, PolyGF([1, 1, 1], GF2)), (GF3, PolyGF([2, 1, 1], GF3))]:
        P = companion_matrix(poly)
        Q = galois_block(poly)
        assert Q.inverse() @ P @ Q == P ** F.q
    # the printed blocks satisfy the same relation; blocks differ by a unit of F_q[P]
    for q in (2, 3):
        d = ref.spread_data(q)
        P, Qp, Q = d["P"], d["Q"], galois_block(d["poly"])
        assert Qp.inverse() @ P @ Qp == P ** q
        X = Q.inverse() @ Qp
        assert X @ P == P @ X


def test_construction_generators_preserve_spreads():
    for F, k, n, poly in [(GF2, 2, 4, PolyGF([1, 1, 1], GF2)), (GF3, 2, 4, PolyGF([2, 1, 1], GF3))]:
        C = desarguesian_spread(F, k, n, poly)
        gens = spread_automorphism_generators(F, k, n, poly)
        assert all(is_automorphism(C, g) for g in gens)
        assert closure(gens).order == spread_aut_order(F.q, k, n)


def test_order_formula_values():
    assert spread_aut_order(2, 2, 4) == 360
    assert spread_aut_order(3, 2, 4) == 11520
    assert spread_aut_order(2, 2, 6) == 362880 == 2 * 63 * 60 * 48


def test_orbit_code_examples():
    U = ref.spread_listing(2).words[1]
    C = orbit_code(U, ref.spread_data(2)["generators"])
    assert C == ref.spread_listing(2)
    assert orbit_code(U, []).words == (U,)
    scalars = closure([SemilinearMap(MatrixGF.scalar(4, 2, GF3))])
    V = ref.spread_listing(3).words[3]
    assert orbit_code(V, scalars).words == (V,)


def test_orbit_codes_are_invariant(rng):
    for _ in range(5):
        gens = [SemilinearMap(random_invertible(3, GF2, rng)) for _ in range(2)]
        U = random_subspace(GF2, 3, rng, k=rng.randint(1, 2))
        C = orbit_code(U, gens)
        assert all(C.apply(g) == C for g in gens)


def test_lift_examples():
    R = ref.rank_code()
    C = lift(R)
    assert len(C) == 4 and C.dims == {2}
    assert analyze(C).min_subspace_distance == 2
    Z = RankMetricCode(GF2, 2, 2, [MatrixGF.zeros(2, 2, GF2)])
    L = lift(Z)
    I2 = MatrixGF.identity(2, GF2)
    assert L.words == (Subspace(hstack(I2, MatrixGF.zeros(2, 2, GF2))),)
    assert analyze(L).min_subspace_distance is None


def test_lift_doubles_distances():
    r = random.Random(7)
    for trial in range(50):
        F = GF2 if trial % 2 else GF3
        k, m = r.choice([(1, 2), (2, 2), (2, 3)])
        mats = {random_matrix(k, m, F, r) for _ in range(r.randint(2, 6))}
        if len(mats) < 2:
            continue
        R = RankMetricCode(F, k, m, mats)
        C = lift(R)
        I = MatrixGF.identity(k, F)
        for X, Y in itertools.combinations(R.words, 2):
            U, V = Subspace(hstack(I, X)), Subspace(hstack(I, Y))
            assert subspace_distance(U, V) == 2 * rank_distance(X, Y)
        assert analyze(C).min_subspace_distance == 2 * min_rank_distance(R)


def test_rank_distance_examples():
    X = MatrixGF.from_rows([[1, 0], [0, 1]], GF2)
    Y = MatrixGF.from_rows([[1, 1], [0, 1]], GF2)
    assert rank_distance(X, X) == 0 and rank_distance(X, Y) == 1
    assert min_rank_distance(ref.rank_code()) == 1
    with pytest.raises(ValueError):
        min_rank_distance(RankMetricCode(GF2, 2, 2, [X]))
    with pytest.raises(ValueError):
        RankMetricCode(GF2, 3, 2, [])


def test_rank_automorphisms_examples(rng):
    RA = rank_automorphisms(ref.rank_code())
    assert RA == {MatrixGF.from_rows(x, GF2) for x in ref.RANK_CODE_AUT}
    for _ in range(5):
        mats = {random_matrix(2, 2, GF2, rng) for _ in range(3)}
        RA = rank_automorphisms(RankMetricCode(GF2, 2, 2, mats))
        assert MatrixGF.identity(2, GF2) in RA
        assert 6 % len(RA) == 0


def test_lifted_block_maps_match_rank_automorphisms():
    R = ref.rank_code()
    C = lift(R)
    found = {X for X in enumerate_gl(2, GF2) if is_automorphism(C, SemilinearMap(lifted_block_map(2, X)))}
    assert found == rank_automorphisms(R)


def test_block_maps_send_lifted_codes_to_lifted_codes(rng):
    for _ in range(20):
        F = rng.choice([GF2, GF3])
        R = RankMetricCode(F, 2, 3, {random_matrix(2, 3, F, rng) for _ in range(4)})
        A = random_invertible(3, F, rng)
        image = lift(R).apply(SemilinearMap(lifted_block_map(2, A)))
        assert image == lift(RankMetricCode(F, 2, 3, [X @ A for X in R.words]))


def test_analyze_examples():
    rep = analyze(ref.spread_listing(2))
    assert rep.size == 5 and rep.dimension_distribution == {2: 5}
    assert rep.min_subspace_distance == 4 and rep.subspace_distances == {4: 10}
    single = SubspaceCode(GF2, 4, [ref.spread_listing(2).words[0]])
    rep = analyze(single)
    assert rep.subspace_distances == {} and rep.min_subspace_distance is None
    assert "min_subspace_distance: undefined" in rep.lines()


def test_is_spread_examples():
    C = ref.spread_listing(2)
    assert is_spread(C)
    assert not is_spread(C.without(C.words[0]))
    assert not is_spread(lift(ref.rank_code()))


def test_code_set_semantics():
    C = ref.spread_listing(2)
    D = SubspaceCode(GF2, 4, reversed(C.words))
    assert C == D and hash(C) == hash(D)
    assert SubspaceCode(GF2, 4, list(C.words) * 2) == C
    with pytest.raises(ValueError):
        SubspaceCode(GF2, 5, C.words)
