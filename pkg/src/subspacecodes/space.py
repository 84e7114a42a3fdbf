"""Subspaces of GF(q)^n in canonical (RREF) form and the two subspace metrics."""

from __future__ import annotations

from typing import Sequence

from .field import FieldSpec
from .linalg import MatrixGF, right_kernel, rref, vstack


class Subspace:
    """Row space of a k x n matrix, stored by its RREF basis.

    Equality, hashing and ordering go through :attr:`key`, the flattened
    RREF entries prefixed by (n, k).
    """

    __slots__ = ("n", "basis", "key", "_hash")

    def __init__(self, basis: MatrixGF, n: int | None = None, *, _canonical: bool = False):
        if not _canonical:
            R, rank, _ = rref(basis)
            basis = MatrixGF._raw(rank, basis.cols, R.entries[: rank * basis.cols], basis.field)
        self.n = basis.cols if n is None else n
        self.basis = basis
        self.key = (self.n, basis.rows, basis.entries)
        self._hash = hash(self.key)

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> "Subspace":
        return cls(MatrixGF.zeros(0, n, field), n, _canonical=True)

    @classmethod
    def full(cls, n: int, field: FieldSpec) -> "Subspace":
        return cls(MatrixGF.identity(n, field), n, _canonical=True)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: FieldSpec, n: int | None = None) -> "Subspace":
        if n is None:
            n = len(rows[0])
        return cls(MatrixGF.from_rows(rows, field, n) if rows else MatrixGF.zeros(0, n, field), n)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key == other.key and self.field == other.field

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Subspace") -> bool:
        return self.key < other.key

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, basis={self.basis.to_rows()})"

    def contains_vector(self, v: Sequence[int]) -> bool:
        row = MatrixGF(1, self.n, v, self.field)
        return rref(vstack(self.basis, row))[1] == self.dim if self.dim else not any(v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return subspace_sum(self, other).dim == other.dim


def subspace_from_rows(M: MatrixGF) -> Subspace:
    return Subspace(M)


def _check(U: Subspace, V: Subspace) -> None:
    if U.n != V.n or U.field != V.field:
        raise ValueError(f"ambient mismatch: {U.field!r}^{U.n} vs {V.field!r}^{V.n}")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check(U, V)
    if not U.dim:
        return V
    if not V.dim:
        return U
    return Subspace(vstack(U.basis, V.basis), U.n)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """Left null space of the stacked bases, projected onto U."""
    _check(U, V)
    if not U.dim or not V.dim:
        return Subspace.zero(U.n, U.field)
    stacked = vstack(U.basis, V.basis)
    # rows (a | b) with a.U + b.V = 0; then a.U spans the intersection
    rel = right_kernel(stacked.transpose())
    if not rel.rows:
        return Subspace.zero(U.n, U.field)
    a = MatrixGF.from_rows([r[: U.dim] for r in rel.to_rows()], U.field, U.dim)
    return Subspace(a @ U.basis, U.n)


def subspace_distance(U: Subspace, V: Subspace) -> int:
    return U.dim + V.dim - 2 * intersect(U, V).dim


def injection_distance(U: Subspace, V: Subspace) -> int:
    return max(U.dim, V.dim) - intersect(U, V).dim


def distance(metric: str, U: Subspace, V: Subspace) -> int:
    if metric in ("subspace", "S", "d_S"):
        return subspace_distance(U, V)
    if metric in ("injection", "I", "d_I"):
        return injection_distance(U, V)
    raise ValueError(f"unknown metric {metric!r}")
