"""Dense matrices over a FieldSpec.

Entries are raw field indices stored row-major in a tuple, so matrices are
hashable values.  Rows are ordered as base-q integers with entry 0 the most
significant digit; :func:`enumerate_gl` relies on that order.
"""

from __future__ import annotations

import itertools
import random
from math import prod
from typing import Iterable, Iterator, Sequence

from .field import FieldSpec
from .poly import PolyGF

DEFAULT_CAP = 1 << 26


class CapExceeded(RuntimeError):
    """A search would enumerate more elements than the configured cap."""

    def __init__(self, what: str, predicted: int, cap: int):
        super().__init__(f"{what}: predicted search size {predicted} exceeds cap {cap}")
        self.predicted = predicted
        self.cap = cap


class SingularMatrix(ValueError):
    pass


class MatrixGF:
    __slots__ = ("rows", "cols", "entries", "field", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[int], field: FieldSpec):
        e = tuple(int(x) for x in entries)
        if len(e) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(e)}")
        if any(not 0 <= x < field.q for x in e):
            raise ValueError(f"entry out of range for {field!r}")
        self.rows, self.cols, self.entries, self.field = rows, cols, e, field
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple, field: FieldSpec) -> "MatrixGF":
        m = object.__new__(cls)
        m.rows, m.cols, m.entries, m.field, m._hash = rows, cols, entries, field, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: FieldSpec, cols: int | None = None) -> "MatrixGF":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r], field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "MatrixGF":
        return cls._raw(n, n, tuple(int(i == j) for i in range(n) for j in range(n)), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> "MatrixGF":
        return cls._raw(rows, cols, (0,) * (rows * cols), field)

    @classmethod
    def scalar(cls, n: int, c: int, field: FieldSpec) -> "MatrixGF":
        return cls._raw(n, n, tuple(c if i == j else 0 for i in range(n) for j in range(n)), field)

    # access
    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.shape == other.shape
            and self.entries == other.entries
            and self.field == other.field
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return f"MatrixGF({self.to_rows()}, {self.field!r})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))

    def sort_key(self) -> tuple:
        return (self.rows, self.cols, self.entries)

    # arithmetic
    def _check_field(self, other: "MatrixGF") -> FieldSpec:
        if self.field != other.field:
            raise ValueError("matrices over different fields")
        return self.field

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        F = self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return MatrixGF._raw(self.rows, self.cols, tuple(F.add(a, b) for a, b in zip(self.entries, other.entries)), F)

    def __neg__(self) -> "MatrixGF":
        neg = self.field.neg_table
        return MatrixGF._raw(self.rows, self.cols, tuple(neg[a] for a in self.entries), self.field)

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        return self + (-other)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        F = self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, m = self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        if F.is_prime:
            p = F.p
            for i in range(self.rows):
                ai = a[i * n:(i + 1) * n]
                for j in range(m):
                    out.append(sum(ai[t] * b[t * m + j] for t in range(n)) % p)
        else:
            add, mul = F.add, F.mul
            for i in range(self.rows):
                ai = a[i * n:(i + 1) * n]
                for j in range(m):
                    acc = 0
                    for t in range(n):
                        if ai[t]:
                            acc = add(acc, mul(ai[t], b[t * m + j]))
                    out.append(acc)
        return MatrixGF._raw(self.rows, m, tuple(out), F)

    __mul__ = __matmul__

    def scale(self, c: int) -> "MatrixGF":
        mul = self.field.mul
        return MatrixGF._raw(self.rows, self.cols, tuple(mul(c, a) for a in self.entries), self.field)

    def transpose(self) -> "MatrixGF":
        return MatrixGF._raw(
            self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)), self.field
        )

    @property
    def T(self) -> "MatrixGF":
        return self.transpose()

    def frobenius(self, j: int) -> "MatrixGF":
        """Apply x -> x^(p^j) entrywise."""
        F = self.field
        if F.is_prime or j % F.m == 0:
            return self
        return MatrixGF._raw(self.rows, self.cols, tuple(F.frobenius(a, j) for a in self.entries), F)

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "MatrixGF":
        if self.rows != self.cols:
            raise ValueError("only square matrices have inverses")
        n = self.rows
        aug = hstack(self, MatrixGF.identity(n, self.field))
        R, rank, pivots = rref(aug)
        if rank < n or pivots[n - 1] != n - 1:
            raise SingularMatrix("matrix is singular")
        return submatrix(R, 0, n, n, 2 * n)

    def __pow__(self, e: int) -> "MatrixGF":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = MatrixGF.identity(self.rows, self.field)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.entries)


def mat_ops(op: str, a: MatrixGF, b: MatrixGF | int | None = None) -> MatrixGF:
    """Dispatch for mul, add, sub, inv, transpose, pow, frobenius_entrywise."""
    if op == "mul":
        return a @ b
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "inv":
        return a.inverse()
    if op == "transpose":
        return a.transpose()
    if op == "pow":
        return a ** int(b)
    if op == "frobenius_entrywise":
        return a.frobenius(int(b))
    raise ValueError(f"unknown matrix op {op!r}")


def rref(M: MatrixGF) -> tuple[MatrixGF, int, tuple[int, ...]]:
    """Reduced row echelon form; zero rows end up at the bottom."""
    F = M.field
    rows = [list(M.row(i)) for i in range(M.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        piv = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        if inv != 1:
            rows[r] = [F.mul(inv, x) for x in rows[r]]
        pr = rows[r]
        for i in range(M.rows):
            f = rows[i][c]
            if i != r and f:
                nf = F.neg(f)
                rows[i] = [F.add(x, F.mul(nf, y)) if y else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return MatrixGF.from_rows(rows, F, M.cols) if rows else M, r, tuple(pivots)


def right_kernel(M: MatrixGF) -> MatrixGF:
    """Rows form a basis of {x : M x^T = 0}."""
    F = M.field
    R, rank, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i, f])
        basis.append(v)
    return MatrixGF(len(basis), M.cols, [x for v in basis for x in v], F)


def hstack(*ms: MatrixGF) -> MatrixGF:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("hstack needs equal row counts")
    return MatrixGF.from_rows(
        [[x for m in ms for x in m.row(i)] for i in range(rows)], ms[0].field, sum(m.cols for m in ms)
    )


def vstack(*ms: MatrixGF) -> MatrixGF:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("vstack needs equal column counts")
    return MatrixGF(sum(m.rows for m in ms), cols, [x for m in ms for x in m.entries], ms[0].field)


def block_diag(*ms: MatrixGF) -> MatrixGF:
    F = ms[0].field
    n = sum(m.rows for m in ms)
    c = sum(m.cols for m in ms)
    out = [[0] * c for _ in range(n)]
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m.row(i)
        r0 += m.rows
        c0 += m.cols
    return MatrixGF.from_rows(out, F, c)


def block_matrix(blocks: Sequence[Sequence[MatrixGF | None]], k: int, field: FieldSpec) -> MatrixGF:
    """Assemble k x k blocks; None stands for the zero block."""
    z = MatrixGF.zeros(k, k, field)
    return vstack(*[hstack(*[b if b is not None else z for b in row]) for row in blocks])


def submatrix(M: MatrixGF, r0: int, r1: int, c0: int, c1: int) -> MatrixGF:
    return MatrixGF.from_rows([M.row(i)[c0:c1] for i in range(r0, r1)], M.field, c1 - c0)


def companion_matrix(p: PolyGF) -> MatrixGF:
    """Superdiagonal ones, last row (-c_0, ..., -c_{k-1})."""
    if not p.is_monic() or p.degree < 1:
        raise ValueError(f"companion matrix needs a monic polynomial of degree >= 1, got {p!r}")
    F = p.field
    k = p.degree
    out = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        out[i][i + 1] = 1
    out[k - 1] = [F.neg(c) for c in p.coeffs[:k]]
    return MatrixGF.from_rows(out, F, k)


# --- GL_n enumeration -------------------------------------------------------

def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** i for i in range(n))


def row_code(row: Sequence[int], q: int) -> int:
    c = 0
    for x in row:
        c = c * q + x
    return c


def code_row(code: int, n: int, q: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return tuple(out)


def _span_add(span: set, v: tuple[int, ...], F: FieldSpec) -> set:
    out = set()
    for s in span:
        for c in range(F.q):
            out.add(tuple(F.add(x, F.mul(c, y)) for x, y in zip(s, v)))
    return out


def enumerate_gl(
    n: int, field: FieldSpec, cap: int = DEFAULT_CAP, start: int = 0, stop: int | None = None
) -> Iterator[MatrixGF]:
    """Every invertible n x n matrix exactly once, rows chosen in increasing
    base-q order outside the span of the earlier rows.

    ``start``/``stop`` select a slice of the stream by position, so the range
    can be split into disjoint sub-streams.
    """
    q = field.q
    total = gl_order(n, q)
    if total > cap:
        raise CapExceeded(f"GL_{n}({q}) enumeration", total, cap)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    vectors = list(itertools.product(range(q), repeat=n))
    # size[i] = number of completions below a choice made at level i
    size = [prod(q ** n - q ** t for t in range(i + 1, n)) for i in range(n)]

    def rec(level: int, rows: list, span: set, base: int) -> Iterator[MatrixGF]:
        if level == n:
            yield MatrixGF._raw(n, n, tuple(x for r in rows for x in r), field)
            return
        c = 0
        for v in vectors:
            if v in span:
                continue
            lo = base + c * size[level]
            c += 1
            if lo + size[level] <= start:
                continue
            if lo >= stop:
                return
            yield from rec(level + 1, rows + [v], _span_add(span, v, field) if level + 1 < n else span, lo)

    yield from rec(0, [], {(0,) * n}, 0)


# --- random helpers (tests, CLI) ---------------------------------------------

def random_matrix(rows: int, cols: int, field: FieldSpec, rng: random.Random) -> MatrixGF:
    return MatrixGF(rows, cols, [rng.randrange(field.q) for _ in range(rows * cols)], field)


def random_invertible(n: int, field: FieldSpec, rng: random.Random) -> MatrixGF:
    while True:
        m = random_matrix(n, n, field, rng)
        if m.is_invertible():
            return m
