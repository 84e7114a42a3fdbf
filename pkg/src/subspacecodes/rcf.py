"""Rational (Frobenius) canonical form via the Smith form of xI - A over GF(q)[x]."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import MatrixGF, block_diag, companion_matrix
from .poly import PolyGF, factor


@dataclass(frozen=True)
class RcfReport:
    invariant_factors: tuple[PolyGF, ...]
    elementary_divisors: tuple[tuple[PolyGF, int], ...]
    rcf_matrix: MatrixGF

    def __eq__(self, other):
        # rcf_matrix is determined by the invariant factors
        return (
            isinstance(other, RcfReport)
            and self.invariant_factors == other.invariant_factors
            and self.elementary_divisors == other.elementary_divisors
        )

    def __hash__(self):
        return hash((self.invariant_factors, self.elementary_divisors))

    @property
    def minimal_polynomial(self) -> PolyGF:
        return self.invariant_factors[-1]

    def characteristic_polynomial(self) -> PolyGF:
        out = PolyGF.one(self.rcf_matrix.field)
        for f in self.invariant_factors:
            out = out * f
        return out


def smith_diagonal(M: list[list[PolyGF]]) -> list[PolyGF]:
    """Diagonal of the Smith form of a square polynomial matrix (monic, each
    dividing the next; zero entries kept as zero polynomials).

    Pivot is a nonzero entry of minimal degree in the trailing block, ties
    broken by smallest row then column.
    """
    n = len(M)
    M = [row[:] for row in M]
    if not n:
        return []
    F = M[0][0].field
    zero = PolyGF.zero(F)
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if not M[i][j].is_zero() and (best is None or M[i][j].degree < best[0]):
                        best = (M[i][j].degree, i, j)
            if best is None:
                return [M[i][i] for i in range(t)] + [zero] * (n - t)
            _, i, j = best
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, n):
                if not M[i][t].is_zero():
                    quo, rem = divmod(M[i][t], piv)
                    M[i] = [a - quo * b for a, b in zip(M[i], M[t])]
                    dirty |= not rem.is_zero()
            for j in range(t + 1, n):
                if not M[t][j].is_zero():
                    quo, rem = divmod(M[t][j], piv)
                    for row in M:
                        row[j] = row[j] - quo * row[t]
                    dirty |= not rem.is_zero()
            if dirty:
                continue
            # row/column t are clear; enforce divisibility of the trailing block
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if not (M[i][j] % piv).is_zero()),
                None,
            )
            if bad is None:
                M[t][t] = piv.monic()
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
    return [M[i][i] for i in range(n)]


def char_matrix(A: MatrixGF) -> list[list[PolyGF]]:
    """xI - A as a polynomial matrix."""
    F = A.field
    n = A.rows
    return [
        [PolyGF([F.neg(A[i, j]), 1] if i == j else [F.neg(A[i, j])], F) for j in range(n)]
        for i in range(n)
    ]


def rational_canonical_form(A: MatrixGF) -> RcfReport:
    if A.rows != A.cols:
        raise ValueError("rational canonical form needs a square matrix")
    diag = smith_diagonal(char_matrix(A))
    inv = tuple(f for f in diag if f.degree >= 1)
    elem: list[tuple[PolyGF, int]] = []
    for f in inv:
        elem.extend(factor(f))
    elem.sort(key=lambda he: (he[0].sort_key(), he[1]))
    blocks = [companion_matrix(f) for f in inv]
    rcf = block_diag(*blocks) if blocks else MatrixGF.zeros(0, 0, A.field)
    return RcfReport(inv, tuple(elem), rcf)
