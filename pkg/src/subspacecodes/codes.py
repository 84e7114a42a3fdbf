"""Subspace and rank-metric codes: containers, constructions and analysis."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .action import GroupClosure, SemilinearMap, act
from .field import FieldSpec
from .linalg import DEFAULT_CAP, MatrixGF, block_matrix, companion_matrix, enumerate_gl, hstack
from .poly import PolyGF, is_irreducible
from .space import Subspace, intersect


class SubspaceCode:
    """A set of subspaces of GF(q)^n.

    ``words`` keeps first-seen order (construction order); equality and
    membership use set semantics on canonical bases.
    """

    def __init__(self, field: FieldSpec, n: int, words: Iterable[Subspace], provenance: dict | None = None):
        seen: dict[Subspace, None] = {}
        for U in words:
            if U.n != n or U.field != field:
                raise ValueError(f"codeword {U!r} does not live in {field!r}^{n}")
            seen.setdefault(U)
        self.field = field
        self.n = n
        self.words: tuple[Subspace, ...] = tuple(seen)
        self.word_set = frozenset(self.words)
        self.provenance = provenance or {"kind": "adhoc"}

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, U: Subspace) -> bool:
        return U in self.word_set

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceCode)
            and self.field == other.field
            and self.n == other.n
            and self.word_set == other.word_set
        )

    def __hash__(self):
        return hash((self.field, self.n, self.word_set))

    def __repr__(self):
        return f"SubspaceCode({self.field!r}, n={self.n}, size={len(self)}, kind={self.provenance.get('kind')})"

    def sorted_words(self) -> list[Subspace]:
        return sorted(self.words)

    def apply(self, g: SemilinearMap) -> "SubspaceCode":
        return SubspaceCode(self.field, self.n, (act(U, g) for U in self.words), {"kind": "adhoc"})

    def without(self, U: Subspace) -> "SubspaceCode":
        return SubspaceCode(self.field, self.n, (W for W in self.words if W != U), {"kind": "adhoc"})

    @property
    def dims(self) -> set[int]:
        return {U.dim for U in self.words}


class RankMetricCode:
    """A set of k x m matrices (k <= m) with the rank distance."""

    def __init__(self, field: FieldSpec, k: int, m: int, words: Iterable[MatrixGF]):
        if k > m:
            raise ValueError(f"rank-metric codes here need k <= m, got {k} x {m}")
        seen: dict[MatrixGF, None] = {}
        for X in words:
            if X.shape != (k, m) or X.field != field:
                raise ValueError(f"matrix of shape {X.shape} in a {k}x{m} code")
            seen.setdefault(X)
        self.field, self.k, self.m = field, k, m
        self.words: tuple[MatrixGF, ...] = tuple(seen)
        self.word_set = frozenset(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __eq__(self, other):
        return (
            isinstance(other, RankMetricCode)
            and (self.field, self.k, self.m) == (other.field, other.k, other.m)
            and self.word_set == other.word_set
        )

    def __hash__(self):
        return hash((self.field, self.k, self.m, self.word_set))


# --- F_q[P] -------------------------------------------------------------------

def _primitive_matrix(P: MatrixGF) -> MatrixGF:
    """P itself if it generates F_q[P]^*, else the first generator by coefficient order."""
    F, k = P.field, P.rows
    size = F.q ** k - 1
    powers = [MatrixGF.identity(k, F)]
    for _ in range(k - 1):
        powers.append(powers[-1] @ P)

    def order(X: MatrixGF) -> int:
        if not X.is_invertible():
            return 0  # e.g. P = [[0]] for the polynomial x
        I = MatrixGF.identity(k, F)
        Y, e = X, 1
        while Y != I:
            Y, e = Y @ X, e + 1
        return e

    if order(P) == size:
        return P
    for coeffs in itertools.product(range(F.q), repeat=k):
        X = MatrixGF.zeros(k, k, F)
        for c, Pi in zip(coeffs, powers):
            if c:
                X = X + Pi.scale(c)
        if not X.is_zero() and order(X) == size:
            return X
    raise ValueError("F_q[P] has no primitive element; is the polynomial irreducible?")


def matrix_field_elements(poly: PolyGF) -> list[MatrixGF]:
    """F_q[P] for P the companion matrix of ``poly``: [0, I, g, g^2, ...] with g primitive."""
    P = companion_matrix(poly)
    k = P.rows
    g = _primitive_matrix(P)
    out = [MatrixGF.zeros(k, k, poly.field), MatrixGF.identity(k, poly.field)]
    for _ in range(poly.field.q ** k - 2):
        out.append(out[-1] @ g)
    return out


def galois_block(poly: PolyGF) -> MatrixGF:
    """First Q in GL_k(q) order with Q^{-1} P Q = P^q (the Frobenius of F_q[P])."""
    P = companion_matrix(poly)
    Pq = P ** poly.field.q
    for Q in enumerate_gl(P.rows, poly.field):
        if P @ Q == Q @ Pq:
            return Q
    raise ValueError("no Galois block found")


# --- constructions -----------------------------------------------------------

def desarguesian_spread(field: FieldSpec, k: int, n: int, poly: PolyGF) -> SubspaceCode:
    """Row spaces [B_1 ... B_l], l = n/k, over the projective points of
    F_q[P]^l, each tuple normalized so its first nonzero block is I_k."""
    if not field.is_prime:
        raise ValueError("the spread construction works over a prime field")
    if k < 1 or n % k:
        raise ValueError(f"k={k} does not divide n={n}")
    if poly.field != field or poly.degree != k or not poly.is_monic() or not is_irreducible(poly):
        raise ValueError(f"{poly!r} is not a monic irreducible of degree {k} over {field!r}")
    l = n // k
    elems = matrix_field_elements(poly)
    zero, one = elems[0], elems[1]
    words = []
    for lead in range(l):
        for tail in itertools.product(elems, repeat=l - 1 - lead):
            blocks = [zero] * lead + [one] + list(tail)
            words.append(Subspace(hstack(*blocks), n))
    return SubspaceCode(field, n, words, {"kind": "spread", "k": k, "poly": list(poly.coeffs[:-1])})


def spread_automorphism_generators(field: FieldSpec, k: int, n: int, poly: PolyGF) -> list[SemilinearMap]:
    """Generators of GL_{n/k}(q^k) written with blocks in F_q[P], plus the
    block-diagonal Galois map diag(Q, ..., Q)."""
    l = n // k
    elems = matrix_field_elements(poly)
    zero, one, g = elems[0], elems[1], elems[2] if len(elems) > 2 else elems[1]

    def blocks(entries: dict[tuple[int, int], MatrixGF]) -> MatrixGF:
        rows = [[entries.get((i, j), one if i == j else None) for j in range(l)] for i in range(l)]
        return block_matrix(rows, k, field)

    mats = [blocks({(0, 0): g})]
    if l >= 2:
        swap = {(0, 0): None, (1, 1): None, (0, 1): one, (1, 0): one}
        mats.append(blocks(swap))
        cycle = {(i, i): None for i in range(l)}
        cycle.update({(i, (i + 1) % l): one for i in range(l)})
        mats.append(blocks(cycle))
        mats.append(blocks({(0, 1): one}))
    Q = galois_block(poly)
    mats.append(block_matrix([[Q if i == j else None for j in range(l)] for i in range(l)], k, field))
    return [SemilinearMap(M) for M in mats]


def spread_aut_order(q: int, k: int, n: int) -> int:
    """k * prod_{i < n/k} (q^n - q^(k i))."""
    out = k
    for i in range(n // k):
        out *= q ** n - q ** (k * i)
    return out


def orbit_code(U: Subspace, G: GroupClosure | Sequence[SemilinearMap]) -> SubspaceCode:
    """The orbit {U g}, by BFS over generator applications."""
    gens = list(G.generators if isinstance(G, GroupClosure) else G)
    if isinstance(G, GroupClosure) and not gens:
        gens = list(G)
    seen = {U: None}
    frontier = [U]
    while frontier:
        nxt = []
        for V in frontier:
            for g in gens:
                W = act(V, g)
                if W not in seen:
                    seen[W] = None
                    nxt.append(W)
        frontier = nxt
    return SubspaceCode(U.field, U.n, seen, {"kind": "orbit", "generators": gens})


def lift(R: RankMetricCode) -> SubspaceCode:
    """{rs[I_k A] : A in R} in GF(q)^(k+m)."""
    I = MatrixGF.identity(R.k, R.field)
    n = R.k + R.m
    return SubspaceCode(R.field, n, (Subspace(hstack(I, A), n) for A in R.words), {"kind": "lifted", "k": R.k})


def rank_distance(X: MatrixGF, Y: MatrixGF) -> int:
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch {X.shape} vs {Y.shape}")
    return (X - Y).rank()


def min_rank_distance(R: RankMetricCode) -> int:
    if len(R) < 2:
        raise ValueError("minimum distance is undefined for fewer than two codewords")
    return min(rank_distance(X, Y) for X, Y in itertools.combinations(R.words, 2))


def rank_automorphisms(R: RankMetricCode, cap: int = DEFAULT_CAP) -> set[MatrixGF]:
    """{A in GL_m(q) : R A = R}."""
    out = set()
    for A in enumerate_gl(R.m, R.field, cap):
        if all(X @ A in R.word_set for X in R.words):
            out.add(A)
    return out


def lifted_block_map(k: int, A: MatrixGF) -> MatrixGF:
    """diag(I_k, A)."""
    F = A.field
    n = k + A.rows
    rows = [[int(i == j) for j in range(k)] + [0] * A.rows for i in range(k)]
    rows += [[0] * k + list(A.row(i)) for i in range(A.rows)]
    return MatrixGF.from_rows(rows, F, n)


# --- analysis ------------------------------------------------------------------

@dataclass
class CodeReport:
    q: int
    n: int
    size: int
    dimension_distribution: dict[int, int]
    subspace_distances: dict[int, int] = dc_field(default_factory=dict)
    injection_distances: dict[int, int] = dc_field(default_factory=dict)

    @property
    def min_subspace_distance(self) -> int | None:
        return min(self.subspace_distances) if self.subspace_distances else None

    @property
    def min_injection_distance(self) -> int | None:
        return min(self.injection_distances) if self.injection_distances else None

    def lines(self) -> list[str]:
        fmt = lambda d: " ".join(f"{k}:{v}" for k, v in sorted(d.items())) or "-"
        undef = lambda x: "undefined" if x is None else str(x)
        return [
            f"q: {self.q}",
            f"n: {self.n}",
            f"size: {self.size}",
            f"dimensions: {fmt(self.dimension_distribution)}",
            f"min_subspace_distance: {undef(self.min_subspace_distance)}",
            f"subspace_distances: {fmt(self.subspace_distances)}",
            f"min_injection_distance: {undef(self.min_injection_distance)}",
            f"injection_distances: {fmt(self.injection_distances)}",
        ]


def analyze(C: SubspaceCode) -> CodeReport:
    if not len(C):
        raise ValueError("cannot analyze an empty code")
    ds: Counter = Counter()
    di: Counter = Counter()
    for U, V in itertools.combinations(C.sorted_words(), 2):
        w = intersect(U, V).dim
        ds[U.dim + V.dim - 2 * w] += 1
        di[max(U.dim, V.dim) - w] += 1
    return CodeReport(
        C.field.q, C.n, len(C), dict(sorted(Counter(U.dim for U in C.words).items())), dict(sorted(ds.items())),
        dict(sorted(di.items())),
    )


def is_spread(C: SubspaceCode) -> bool:
    dims = C.dims
    if len(dims) != 1:
        return False
    (k,) = dims
    q, n = C.field.q, C.n
    if k < 1 or len(C) * (q ** k - 1) != q ** n - 1:
        return False
    return all(intersect(U, V).dim == 0 for U, V in itertools.combinations(C.words, 2))
