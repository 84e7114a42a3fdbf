from __future__ import annotations

import itertools

import pytest

from conftest import GF2, GF3, GF4
from subspacecodes.linalg import MatrixGF, block_diag, companion_matrix, random_invertible, random_matrix
from subspacecodes.poly import PolyGF, factor, monic_polys
from subspacecodes.rcf import rational_canonical_form


def perm_sign(p) -> int:
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= -1 if length % 2 == 0 else 1
    return s


def charpoly_leibniz(A: MatrixGF) -> PolyGF:
    """det(xI - A) by the permutation expansion."""
    F, n = A.field, A.rows
    x = PolyGF.x(F)
    entry = lambda i, j: (x if i == j else PolyGF.zero(F)) - PolyGF([A[i, j]], F)
    total = PolyGF.zero(F)
    for p in itertools.permutations(range(n)):
        term = PolyGF.one(F)
        for i in range(n):
            term = term * entry(i, p[i])
        total = total + term if perm_sign(p) == 1 else total - term
    return total


def evaluate(f: PolyGF, A: MatrixGF) -> MatrixGF:
    acc = MatrixGF.zeros(A.rows, A.rows, A.field)
    for i, c in enumerate(f.coeffs):
        acc = acc + (A ** i).scale(c)
    return acc


def brute_minpoly(A: MatrixGF) -> PolyGF:
    for d in range(1, A.rows + 1):
        for f in monic_polys(A.field, d):
            if evaluate(f, A).is_zero():
                return f
    raise AssertionError("no annihilating polynomial")


def test_companion_is_its_own_rcf():
    f = PolyGF([1, 1, 1], GF2)
    P = companion_matrix(f)
    rep = rational_canonical_form(P)
    assert rep.invariant_factors == (f,)
    assert rep.rcf_matrix == P


def test_identity_invariant_factors():
    rep = rational_canonical_form(MatrixGF.identity(2, GF2))
    x1 = PolyGF([1, 1], GF2)
    assert rep.invariant_factors == (x1, x1)
    assert rep.elementary_divisors == ((x1, 1), (x1, 1))


@pytest.mark.parametrize("F,n", [(GF2, 3), (GF2, 4), (GF3, 3), (GF4, 3)])
def test_report_against_oracles(F, n, rng):
    for _ in range(20):
        A = random_matrix(n, n, F, rng)
        rep = rational_canonical_form(A)
        inv = rep.invariant_factors
        assert sum(f.degree for f in inv) == n
        assert all(f.is_monic() for f in inv)
        assert all((inv[i + 1] % inv[i]).is_zero() for i in range(len(inv) - 1))
        assert rep.characteristic_polynomial() == charpoly_leibniz(A)
        assert rep.minimal_polynomial == brute_minpoly(A)
        # elementary divisors are the prime-power splitting of the invariant factors
        split = sorted((g, e) for f in inv for g, e in factor(f))
        assert sorted(rep.elementary_divisors) == split
        assert rep.rcf_matrix == block_diag(*[companion_matrix(f) for f in inv])
        assert rational_canonical_form(rep.rcf_matrix) == rep


def test_similarity_invariance(rng):
    P = companion_matrix(PolyGF([1, 1, 1], GF2))
    base = rational_canonical_form(P)
    for _ in range(50):
        S = random_invertible(2, GF2, rng)
        assert rational_canonical_form(S @ P @ S.inverse()) == base
    A = block_diag(companion_matrix(PolyGF([2, 1, 1], GF3)), MatrixGF.identity(2, GF3))
    ref = rational_canonical_form(A)
    for _ in range(50):
        S = random_invertible(4, GF3, rng)
        assert rational_canonical_form(S @ A @ S.inverse()) == ref


def test_non_similar_matrices_differ():
    C = companion_matrix(PolyGF([2, 1, 1], GF3))
    A = block_diag(C, C)
    B = block_diag(C, MatrixGF.identity(2, GF3))
    assert rational_canonical_form(A) != rational_canonical_form(B)
