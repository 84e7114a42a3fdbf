"""Property-based checks with hypothesis."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from subspacecodes.action import SemilinearMap, act, compose, inverse
from subspacecodes.field import field_make
from subspacecodes.fileio import parse_code, serialize_code
from subspacecodes.codes import SubspaceCode
from subspacecodes.linalg import MatrixGF, rref
from subspacecodes.space import Subspace, injection_distance, intersect, subspace_distance, subspace_sum

FIELDS = [field_make(2), field_make(3), field_make(5), field_make(2, 2), field_make(3, 2), field_make(2, 3)]


@st.composite
def field_and_n(draw, max_n=4):
    return draw(st.sampled_from(FIELDS)), draw(st.integers(1, max_n))


@st.composite
def matrices(draw, F, rows, cols):
    return MatrixGF(rows, cols, draw(st.lists(st.integers(0, F.q - 1), min_size=rows * cols, max_size=rows * cols)), F)


@st.composite
def invertible(draw, F, n):
    M = draw(matrices(F, n, n))
    if not M.is_invertible():
        # nudge onto a unitriangular matrix, always invertible
        entries = [M[i, j] if j > i else int(i == j) for i in range(n) for j in range(n)]
        M = MatrixGF(n, n, entries, F)
    return M


@st.composite
def subspaces(draw, F, n):
    k = draw(st.integers(0, n))
    if k == 0:
        return Subspace.zero(n, F)
    return Subspace(draw(matrices(F, k, n)), n)


@st.composite
def maps(draw, F, n):
    return SemilinearMap(draw(invertible(F, n)), draw(st.integers(0, F.m - 1)))


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


@given(field_and_n(), st.data())
def test_rref_idempotent_and_span_preserving(fn, data):
    F, n = fn
    M = data.draw(matrices(F, data.draw(st.integers(1, 4)), n))
    R, rank, _ = rref(M)
    assert rref(R)[0] == R
    assert rank == M.rank()
    U = Subspace(M, n)
    assert all(U.contains_vector(M.row(i)) for i in range(M.rows))


@given(field_and_n(), st.data())
def test_modular_law(fn, data):
    F, n = fn
    U, V = data.draw(subspaces(F, n)), data.draw(subspaces(F, n))
    assert subspace_sum(U, V).dim + intersect(U, V).dim == U.dim + V.dim
    assert intersect(U, V).is_subspace_of(U) and U.is_subspace_of(subspace_sum(U, V))


@given(field_and_n(), st.data())
def test_metric_axioms(fn, data):
    F, n = fn
    U, V, W = (data.draw(subspaces(F, n)) for _ in range(3))
    for d in (subspace_distance, injection_distance):
        assert d(U, U) == 0
        assert d(U, V) == d(V, U) >= 0
        assert (d(U, V) == 0) == (U == V)
        assert d(U, W) <= d(U, V) + d(V, W)


@settings(max_examples=60)
@given(field_and_n(), st.data())
def test_action_law_and_isometry(fn, data):
    F, n = fn
    U, V = data.draw(subspaces(F, n)), data.draw(subspaces(F, n))
    g, h = data.draw(maps(F, n)), data.draw(maps(F, n))
    assert act(act(U, g), h) == act(U, compose(g, h))
    assert act(act(U, g), inverse(g)) == U
    assert subspace_distance(act(U, g), act(V, g)) == subspace_distance(U, V)
    assert injection_distance(act(U, g), act(V, g)) == injection_distance(U, V)


@settings(max_examples=40)
@given(field_and_n(), st.data())
def test_code_file_round_trip(fn, data):
    F, n = fn
    words = data.draw(st.lists(subspaces(F, n), min_size=0, max_size=6))
    C = SubspaceCode(F, n, words)
    text = serialize_code(C)
    assert parse_code(text) == C
    assert serialize_code(parse_code(text)) == text
