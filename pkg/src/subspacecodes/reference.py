"""Worked examples used by ``verify-paper`` and the test-suite.

* GF(2), k=2, n=4 spread from x^2+x+1 with four printed Aut generators.
* GF(3), k=2, n=4 spread from x^2+x+2 with four printed Aut generators.
* A 4-word 2x2 rank-metric code over GF(2) and printed generators of the
  automorphism group of its lift.
"""

from __future__ import annotations

from .action import SemilinearMap
from .codes import RankMetricCode, SubspaceCode
from .field import field_make
from .linalg import MatrixGF, block_matrix, hstack
from .poly import PolyGF
from .space import Subspace

GF2 = field_make(2)
GF3 = field_make(3)


def _m(rows, F) -> MatrixGF:
    return MatrixGF.from_rows(rows, F)


def spread_data(q: int) -> dict:
    """Polynomial, P, Q and the block generators for q in {2, 3}."""
    if q == 2:
        F = GF2
        poly = PolyGF([1, 1, 1], F)
        P = _m([[0, 1], [1, 1]], F)
        Q = _m([[1, 0], [1, 1]], F)
    elif q == 3:
        F = GF3
        poly = PolyGF([2, 1, 1], F)
        P = _m([[0, 1], [1, 2]], F)
        Q = _m([[1, 0], [2, 2]], F)
    else:
        raise ValueError("reference spreads exist for q = 2 and q = 3")
    I = MatrixGF.identity(2, F)
    gens = [
        block_matrix([[None, I], [I, None]], 2, F),   # swap the blocks
        block_matrix([[I, None], [None, P]], 2, F),   # multiply the second block by P
        block_matrix([[I, P], [None, I]], 2, F),      # add P times the first block to the second
        block_matrix([[Q, None], [None, Q]], 2, F),   # Frobenius of F_q[P]
    ]
    return {"field": F, "poly": poly, "P": P, "Q": Q, "generators": [SemilinearMap(g) for g in gens]}


def spread_listing(q: int) -> SubspaceCode:
    """rs[I|0], rs[I|P^i] for i = 0 .. q^2-2, rs[0|I], written out by hand."""
    d = spread_data(q)
    F, P = d["field"], d["P"]
    I = MatrixGF.identity(2, F)
    Z = MatrixGF.zeros(2, 2, F)
    words = [Subspace(hstack(I, Z))]
    words += [Subspace(hstack(I, P ** i)) for i in range(q * q - 1)]
    words.append(Subspace(hstack(Z, I)))
    return SubspaceCode(F, 4, words)


SPREAD_AUT_ORDER = {2: 360, 3: 11520}


def rank_code() -> RankMetricCode:
    F = GF2
    mats = [
        [[1, 0], [0, 1]],
        [[1, 1], [0, 1]],
        [[0, 1], [0, 1]],
        [[0, 0], [0, 1]],
    ]
    return RankMetricCode(F, 2, 2, [_m(x, F) for x in mats])


RANK_CODE_AUT = [[[1, 0], [0, 1]], [[1, 1], [0, 1]]]
LIFTED_AUT_ORDER = 192


def lifted_generators() -> list[SemilinearMap]:
    F = GF2
    mats = [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 1, 1, 1]],
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]],
    ]
    return [SemilinearMap(_m(x, F)) for x in mats]
