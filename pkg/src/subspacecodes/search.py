"""Exhaustive search for (semi)linear maps sending one subspace code onto another.

The search walks the GL_n(q) stream of :func:`linalg.enumerate_gl` in numpy
batches.  Before searching, the source code is moved by a fixed T so that its
least codeword becomes rs[I_k | 0]; the image of a codeword whose basis only
touches the first r columns depends only on the first r rows of the candidate
matrix, so such codewords are tested as soon as r rows are fixed.  This drops
whole subtrees of the stream without changing the result set.  With
``prune=False`` every codeword is tested on complete matrices only.

Membership of an image rs(M) in a target set uses parity checks: a k-space V
equals rs(M) (rank M = k) iff M H_V = 0, where the columns of H_V span the
right kernel of V's basis.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .field import FieldSpec
from .linalg import CapExceeded, MatrixGF, gl_order, right_kernel
from .space import Subspace

BATCH_LIMIT = 1 << 18
TASK_CANDIDATES = 1 << 20


class ArrayField:
    """Vectorized arithmetic on arrays of field indices."""

    def __init__(self, field: FieldSpec):
        self.p, self.q, self.prime = field.p, field.q, field.is_prime
        if not self.prime:
            if field.q > 256:
                raise ValueError("vectorized search supports extension fields up to order 256")
            self.add = np.array(field.add_table, dtype=np.int64)
            self.mul = np.array(field.mul_table, dtype=np.int64)
            self.sub_t = np.array([[field.sub(a, b) for b in range(field.q)] for a in range(field.q)], dtype=np.int64)
        self.inv = np.array([0] + [field.inv(a) for a in range(1, field.q)], dtype=np.int64)

    def emul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return X * Y % self.p if self.prime else self.mul[X, Y]

    def esub(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return (X - Y) % self.p if self.prime else self.sub_t[X, Y]

    def matmul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        if self.prime:
            # float64 is exact here (entries < p, short inner dimension) and hits BLAS
            Xf, Yf = X.astype(np.float64), Y.astype(np.float64)
            if Y.ndim == 2:
                out = (Xf.reshape(-1, X.shape[-1]) @ Yf).reshape(*X.shape[:-1], Y.shape[-1])
            elif X.ndim == 2:
                nb, b, c = Y.shape
                out = (Xf @ Yf.transpose(1, 0, 2).reshape(b, nb * c)).reshape(X.shape[0], nb, c).transpose(1, 0, 2)
            else:
                out = np.matmul(Xf, Yf)
            return np.fmod(out, self.p).astype(np.int64)
        acc = None
        for t in range(X.shape[-1]):
            term = self.mul[X[..., :, t, None], Y[..., t, None, :]]
            acc = term if acc is None else self.add[acc, term]
        return acc


def images_in(af: ArrayField, img: np.ndarray, stack: np.ndarray, count: int) -> np.ndarray:
    """For images (B, k, n) and a parity stack (n, count * (n - k)): which
    images equal one of the ``count`` target spaces."""
    B, k, n = img.shape
    r = n - k
    z = af.matmul(img, stack).reshape(B, k * count * r) != 0
    # nonzero counts per target via one matmul against a block indicator
    owner = np.tile(np.repeat(np.arange(count), r), k)
    ind = np.zeros((k * count * r, count), dtype=np.float32)
    ind[np.arange(k * count * r), owner] = 1.0
    hits = z.astype(np.float32) @ ind
    return (hits == 0).any(axis=1)


def batch_rref(af: ArrayField, M: np.ndarray) -> np.ndarray:
    """Reduced row echelon forms of a batch (B, k, n), column by column."""
    M = M.copy()
    B, k, n = M.shape
    r = np.zeros(B, dtype=np.int64)
    rows = np.arange(k)
    for c in range(n):
        cand = (M[:, :, c] != 0) & (rows[None, :] >= r[:, None])
        idx = np.nonzero(cand.any(axis=1))[0]
        if not len(idx):
            continue
        piv = cand[idx].argmax(axis=1)
        rb = r[idx]
        top, pr = M[idx, rb].copy(), M[idx, piv].copy()
        M[idx, piv] = top
        pr = af.emul(af.inv[pr[:, c]][:, None], pr)
        M[idx, rb] = pr
        f = M[idx, :, c].copy()
        f[np.arange(len(idx)), rb] = 0
        M[idx] = af.esub(M[idx], af.emul(f[:, :, None], pr[:, None, :]))
        r[idx] += 1
    return M


# per-vector bitmask tables are used up to this many vectors
MASK_VECTORS = 1 << 22


class Membership:
    """Tests whether batches of k x n bases of rank k span one of the given subspaces.

    For small ambient spaces each vector carries a bitmask of the targets
    containing it; a rank-k image lies in (hence equals) a k-dimensional
    target iff the masks of its rows share a bit.  Otherwise images are
    reduced to RREF and packed into one integer, or checked against parity
    checks when that integer would overflow.
    """

    def __init__(self, af: ArrayField, n: int, targets: Sequence[Subspace]):
        self.af, self.n = af, n
        self.by_dim: dict[int, list[Subspace]] = {}
        for V in targets:
            self.by_dim.setdefault(V.dim, []).append(V)
        self.weights = af.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.masks: dict[int, np.ndarray] = {}
        self.keys: dict[int, np.ndarray] = {}
        self.stacks: dict[int, np.ndarray] = {}
        for k, Vs in self.by_dim.items():
            if af.q ** n <= MASK_VECTORS:
                self.masks[k] = self._mask_table(Vs, k)
            elif af.q ** (n * k) < 1 << 62:
                self.keys[k] = np.unique(self._pack(np.stack([_to_array(V.basis) for V in Vs])))
            else:
                self.stacks[k] = np.concatenate([_to_array(right_kernel(V.basis)).T for V in Vs], axis=1)

    def _mask_table(self, Vs: Sequence[Subspace], k: int) -> np.ndarray:
        q = self.af.q
        table = np.zeros((q ** self.n, (len(Vs) + 63) // 64), dtype=np.uint64)
        coeffs = np.array(np.unravel_index(np.arange(q ** k), (q,) * k), dtype=np.int64).T
        for t, V in enumerate(Vs):
            codes = self.af.matmul(coeffs, _to_array(V.basis)) @ self.weights
            table[codes, t // 64] |= np.uint64(1 << (t % 64))
        return table

    def _pack(self, R: np.ndarray) -> np.ndarray:
        codes = R @ self.weights  # B x k
        key = np.zeros(len(R), dtype=np.int64)
        for i in range(R.shape[1]):
            key = key * self.af.q ** self.n + codes[:, i]
        return key

    def count(self, k: int) -> int:
        return len(self.by_dim.get(k, ()))

    def __call__(self, img: np.ndarray) -> np.ndarray:
        k = img.shape[1]
        if k not in self.by_dim:
            return np.zeros(len(img), dtype=bool)
        if k in self.masks:
            m = self.masks[k][img @ self.weights]  # B x k x words
            return np.bitwise_and.reduce(m, axis=1).any(axis=1)
        if k in self.keys:
            return np.isin(self._pack(batch_rref(self.af, img)), self.keys[k])
        return images_in(self.af, img, self.stacks[k], len(self.by_dim[k]))


def _to_array(M: MatrixGF) -> np.ndarray:
    return np.array(M.entries, dtype=np.int64).reshape(M.rows, M.cols)


@dataclass
class _Check:
    support: int
    word: np.ndarray      # k x support, the codeword basis after the T-change
    count: int            # target codewords of the same dimension


class Kernel:
    """State for one search: source codewords (already moved by T) and the
    parity checks of the target codewords of each dimension."""

    def __init__(self, field: FieldSpec, n: int, words: Sequence[np.ndarray], targets: Sequence[Subspace], prune: bool):
        self.af = ArrayField(field)
        self.n = n
        self.q = field.q
        self.vectors = np.array(
            np.unravel_index(np.arange(self.q ** n), (self.q,) * n), dtype=np.int64
        ).T  # row c is the vector with base-q code c, entry 0 most significant
        self.weights = self.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.member = Membership(self.af, n, targets)
        self.checks: list[_Check] = []
        self.depth = 0
        for W in words:
            k = W.shape[0]
            nz = np.nonzero(W.any(axis=0))[0]
            natural = int(nz.max()) + 1 if len(nz) else 0
            support = natural if prune else n
            if not self.checks:
                # prefixes are always built up to the distinguished word's support
                self.depth = natural
            self.checks.append(_Check(support, W[:, :support], self.member.count(k)))

    def _filter(self, A: np.ndarray, level: int, first_level: int = 0) -> np.ndarray:
        """Keep partial matrices (B, level, n) whose testable images land in the target."""
        for c in self.checks:
            if not first_level < c.support <= level or not len(A):
                continue
            if c.count == 0:
                return A[:0]
            img = self.af.matmul(c.word, A[:, : c.support, :])  # B x k x n
            A = A[self.member(img)]
        return A

    def extend(self, A: np.ndarray) -> np.ndarray:
        """All one-row extensions of each partial, new row outside the span,
        in increasing code order; then filter at the new level."""
        B, r, n = A.shape
        q = self.q
        coeffs = np.array(np.unravel_index(np.arange(q ** r), (q,) * r), dtype=np.int64).T if r else np.zeros((1, 0), np.int64)
        if r:
            span = self.af.matmul(coeffs, A)  # B x q^r x n
            codes = span @ self.weights
        else:
            codes = np.zeros((B, 1), dtype=np.int64)
        mask = np.ones((B, q ** n), dtype=bool)
        mask[np.arange(B)[:, None], codes] = False
        bi, vi = np.nonzero(mask)
        out = np.concatenate([A[bi], self.vectors[vi][:, None, :]], axis=1)
        return self._filter(out, r + 1, first_level=r)

    def prefixes(self) -> np.ndarray:
        A = np.zeros((1, 0, self.n), dtype=np.int64)
        A = self._filter(A, 0, first_level=-1)
        for _ in range(self.depth):
            A = self.extend(A)
        return A

    def _per(self, r: int) -> int:
        return prod(self.q ** self.n - self.q ** t for t in range(r, self.n))

    def complete(self, A: np.ndarray) -> Iterator[np.ndarray]:
        """Yield full matrices (in stream order) that pass every check."""
        B, r, n = A.shape
        if not B:
            return
        if r == n:
            yield A
            return
        per = self._per(r)
        if B * per > BATCH_LIMIT and B > 1:
            step = max(1, BATCH_LIMIT // per)
            for s in range(0, B, step):
                yield from self.complete(A[s:s + step])
            return
        yield from self.complete(self.extend(A))

    def run(self, prefixes: np.ndarray, first_only: bool = False) -> np.ndarray:
        hits = []
        for full in self.complete(prefixes):
            if len(full):
                hits.append(full)
                if first_only:
                    break
        if not hits:
            return np.zeros((0, self.n, self.n), dtype=np.int64)
        out = np.concatenate(hits)
        return out[:1] if first_only else out


_WORKER_KERNELS: dict[int, Kernel] = {}


def _init_worker(kernels: dict[int, Kernel]) -> None:
    _WORKER_KERNELS.clear()
    _WORKER_KERNELS.update(kernels)


def _run_task(task: tuple[int, np.ndarray, bool]) -> np.ndarray:
    j, prefixes, first_only = task
    return _WORKER_KERNELS[j].run(prefixes, first_only)


def default_jobs() -> int:
    return os.cpu_count() or 1


@dataclass
class SearchResult:
    maps: list[tuple[np.ndarray, int]]   # (matrix, frobenius exponent) in stream order
    candidates: int                      # size of the searched set GL_n(q) x frobenius exponents


def _completion(U: Subspace) -> MatrixGF:
    """Invertible T whose first rows are U's RREF basis."""
    n, F = U.n, U.field
    pivots = set()
    for i in range(U.dim):
        row = U.basis.row(i)
        pivots.add(next(j for j, x in enumerate(row) if x))
    rows = [list(U.basis.row(i)) for i in range(U.dim)]
    rows += [[int(c == j) for c in range(n)] for j in range(n) if j not in pivots]
    return MatrixGF.from_rows(rows, F, n)


def find_maps(
    src: Iterable[Subspace],
    dst: Iterable[Subspace],
    field: FieldSpec,
    n: int,
    frobs: Sequence[int] = (0,),
    *,
    cap: int,
    jobs: int = 1,
    first_only: bool = False,
    prune: bool = True,
) -> SearchResult:
    """All (A, j) in GL_n(q) x frobs with {rs(frob_j(U A)) : U in src} = dst.

    With ``first_only`` the search stops at the first hit in (j, stream) order.
    """
    src = sorted(set(src))
    dst = sorted(set(dst))
    q = field.q
    total = gl_order(n, q) * len(frobs)
    if total > cap:
        raise CapExceeded(f"search over GL_{n}({q})" + (f" x {len(frobs)} Frobenius maps" if len(frobs) > 1 else ""), total, cap)
    if sorted(U.dim for U in src) != sorted(V.dim for V in dst):
        return SearchResult([], total)
    fixed = [U for U in src if U.dim in (0, n)]
    proper = [U for U in src if 0 < U.dim < n]
    if not src:
        raise ValueError("cannot search maps of the empty code")

    if proper:
        T = _completion(proper[0])
    else:
        T = MatrixGF.identity(n, field)
    Tinv = T.inverse()
    words = [_to_array(U.basis @ Tinv) for U in proper]
    # fixed words ({0}, full space) map to themselves under every map
    dst_set = set(dst)
    if any(U not in dst_set for U in fixed):
        return SearchResult([], total)

    kernels: dict[int, Kernel] = {}
    for j in frobs:
        # rs(frob_j(M)) in dst  <=>  rs(M) in frob_{-j}(dst)
        targets = [Subspace(V.basis.frobenius(-j)) for V in dst if 0 < V.dim < n]
        kernels[j] = Kernel(field, n, words, targets, prune)

    tasks = []
    for j in frobs:
        K = kernels[j]
        pre = K.prefixes()
        per = max(1, K._per(pre.shape[1]))
        step = max(1, TASK_CANDIDATES // per)
        for s in range(0, len(pre), step):
            tasks.append((j, pre[s:s + step], first_only))

    af = ArrayField(field)
    Tinv_arr = _to_array(Tinv)
    maps: list[tuple[np.ndarray, int]] = []

    def collect(j: int, hits: np.ndarray) -> None:
        if len(hits):
            full = af.matmul(Tinv_arr, hits)
            maps.extend((full[i], j) for i in range(len(full)))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(kernels,)) as ex:
            for (j, _, _), hits in zip(tasks, ex.map(_run_task, tasks)):
                collect(j, hits)
                if first_only and maps:
                    ex.shutdown(cancel_futures=True)
                    break
    else:
        for j, pre, fo in tasks:
            collect(j, kernels[j].run(pre, fo))
            if first_only and maps:
                break
    if first_only:
        maps = maps[:1]
    return SearchResult(maps, total)
