"""The semilinear group GL_n(q) x| Aut(GF(q)) acting on subspaces from the right.

Multiplication follows (A, a)(B, b) = (A a^{-1}(B), ab), and a map acts on a
subspace by U(A, a) = rs(a(U A)).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

import numpy as np

from .field import FieldSpec
from .linalg import DEFAULT_CAP, CapExceeded, MatrixGF, code_row, gl_order, right_kernel, row_code
from .search import ArrayField, Membership, default_jobs, find_maps
from .space import Subspace

if TYPE_CHECKING:
    from .codes import SubspaceCode

# right-multiplication lookup tables are built only up to this many vectors
TABLE_LIMIT = 1 << 20


class NotAnAutomorphism(ValueError):
    pass


class SemilinearMap:
    """(A, frob): an invertible matrix and the Frobenius exponent j of x -> x^(p^j)."""

    __slots__ = ("A", "frob")

    def __init__(self, A: MatrixGF, frob: int = 0, *, check: bool = True):
        if check:
            if A.rows != A.cols:
                raise ValueError("semilinear maps need a square matrix")
            if not A.is_invertible():
                raise ValueError("matrix is not invertible")
        self.A = A
        self.frob = frob % A.field.m

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "SemilinearMap":
        return cls(MatrixGF.identity(n, field), 0, check=False)

    @classmethod
    def from_key(cls, key: tuple, n: int, field: FieldSpec) -> "SemilinearMap":
        rows, j = key
        A = MatrixGF._raw(n, n, tuple(x for c in rows for x in code_row(c, n, field.q)), field)
        return cls(A, j, check=False)

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.rows

    def key(self) -> tuple:
        q = self.field.q
        return tuple(row_code(self.A.row(i), q) for i in range(self.n)), self.frob

    def __eq__(self, other):
        return isinstance(other, SemilinearMap) and self.A == other.A and self.frob == other.frob

    def __hash__(self):
        return hash((self.A, self.frob))

    def __repr__(self):
        return f"SemilinearMap({self.A.to_rows()}, frob={self.frob})"

    def __mul__(self, other: "SemilinearMap") -> "SemilinearMap":
        return compose(self, other)

    def inverse(self) -> "SemilinearMap":
        return inverse(self)


def compose(g: SemilinearMap, h: SemilinearMap) -> SemilinearMap:
    if g.field != h.field or g.n != h.n:
        raise ValueError("semilinear maps over different ambients")
    return SemilinearMap(g.A @ h.A.frobenius(-g.frob), g.frob + h.frob, check=False)


def inverse(g: SemilinearMap) -> SemilinearMap:
    return SemilinearMap(g.A.inverse().frobenius(g.frob), -g.frob, check=False)


def act(U: Subspace, g: SemilinearMap) -> Subspace:
    if U.n != g.n or U.field != g.field:
        raise ValueError(f"cannot act on a subspace of dimension-{U.n} space with a {g.n}x{g.n} map")
    if not U.dim:
        return U
    return Subspace((U.basis @ g.A).frobenius(g.frob), U.n)


def act_code(words: Iterable[Subspace], g: SemilinearMap) -> set[Subspace]:
    return {act(U, g) for U in words}


# --- explicit groups ----------------------------------------------------------

@dataclass
class GroupClosure:
    """An explicitly enumerated group of semilinear maps.

    Elements are kept as keys (row codes, frob) to keep large groups cheap;
    iterate to get :class:`SemilinearMap` values in key order.
    """

    field: FieldSpec
    n: int
    generators: tuple[SemilinearMap, ...]
    keys: frozenset
    truncated: bool = False
    source: str = "closure"
    maximal: bool = False       # certified to be the full automorphism group
    notes: dict = dc_field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[SemilinearMap]:
        for k in sorted(self.keys):
            yield SemilinearMap.from_key(k, self.n, self.field)

    def __contains__(self, g: SemilinearMap) -> bool:
        return g.key() in self.keys

    @property
    def elements(self) -> frozenset:
        return frozenset(self)

    def is_linear(self) -> bool:
        return all(j == 0 for _, j in self.keys)

    def matrices(self) -> np.ndarray:
        """All elements as an (order, n, n) array, key order."""
        q = self.field.q
        keys = sorted(self.keys)
        codes = np.array([k[0] for k in keys], dtype=np.int64).reshape(len(keys), self.n)
        digits = np.empty((len(keys), self.n, self.n), dtype=np.int64)
        for t in range(self.n - 1, -1, -1):
            codes, digits[:, :, t] = np.divmod(codes, q)
        return digits


def _vectors(n: int, q: int) -> np.ndarray:
    return np.array(np.unravel_index(np.arange(q ** n), (q,) * n), dtype=np.int64).T


def _right_tables(B: MatrixGF, af: ArrayField, vecs: np.ndarray) -> list[np.ndarray]:
    """For each Frobenius exponent s: code(v) -> code(v frob_s(B))."""
    n, q, m = B.rows, B.field.q, B.field.m
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out = []
    for s in range(m):
        Bs = np.array(B.frobenius(s).entries, dtype=np.int64).reshape(n, n)
        out.append(af.matmul(vecs, Bs) @ weights)
    return out


def closure(generators: Sequence[SemilinearMap], cap: int = DEFAULT_CAP, *, field: FieldSpec | None = None,
            n: int | None = None) -> GroupClosure:
    """Breadth-first closure of the generators under right multiplication.

    An empty generator list gives the trivial group (``field`` and ``n`` are
    then required).  Stops with ``truncated=True`` once ``cap`` elements exist.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    gens = tuple(generators)
    if gens:
        field, n = gens[0].field, gens[0].n
        if any(g.field != field or g.n != n for g in gens):
            raise ValueError("generators act on different ambients")
    elif field is None or n is None:
        raise ValueError("trivial group needs field and n")
    q, m = field.q, field.m
    ident = SemilinearMap.identity(n, field).key()
    seen = {ident}
    truncated = False
    if q ** n <= TABLE_LIMIT and (field.is_prime or q <= 256):
        af = ArrayField(field)
        vecs = _vectors(n, q)
        tables = [[t.tolist() for t in _right_tables(g.A, af, vecs)] for g in gens]
        steps = [(tabs, g.frob) for tabs, g in zip(tables, gens)]
        frontier = deque([ident])
        while frontier and not truncated:
            rows, j = frontier.popleft()
            for tabs, b in steps:
                tab = tabs[-j % m]
                new = (tuple([tab[r] for r in rows]), (j + b) % m)
                if new not in seen:
                    if len(seen) >= cap:
                        truncated = True
                        break
                    seen.add(new)
                    frontier.append(new)
    else:
        frontier = deque([SemilinearMap.identity(n, field)])
        while frontier and not truncated:
            x = frontier.popleft()
            for g in gens:
                y = compose(x, g)
                k = y.key()
                if k not in seen:
                    if len(seen) >= cap:
                        truncated = True
                        break
                    seen.add(k)
                    frontier.append(y)
    return GroupClosure(field, n, gens, frozenset(seen), truncated)


def is_automorphism(C: "SubspaceCode", g: SemilinearMap) -> bool:
    words = C.word_set
    return all(act(U, g) in words for U in C.words)


def _frobs(field: FieldSpec, semilinear: bool) -> list[int]:
    # over prime fields Aut(GF(p)) is trivial: semilinear == linear
    return list(range(field.m)) if semilinear else [0]


def _keys_from_hits(hits, q: int) -> set:
    weights = q ** np.arange(hits[0][0].shape[0] - 1, -1, -1, dtype=np.int64) if hits else None
    return {(tuple((A @ weights).tolist()), j) for A, j in hits}


def automorphism_group(
    C: "SubspaceCode",
    mode: str = "linear",
    strategy: str = "brute",
    generators: Sequence[SemilinearMap] | None = None,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int | None = None,
    prune: bool = True,
) -> GroupClosure:
    """Aut(C) (mode ``linear``) or SAut(C) (mode ``semilinear``).

    ``brute`` searches all of GL_n(q) (times the Frobenius maps) and returns the
    full stabilizer.  ``verify`` closes ``generators``, checks every element
    and returns that group with ``maximal=False``.
    """
    if mode not in ("linear", "semilinear"):
        raise ValueError(f"unknown mode {mode!r}")
    F, n = C.field, C.n
    jobs = default_jobs() if jobs is None else jobs
    if strategy == "brute":
        frobs = _frobs(F, mode == "semilinear")
        res = find_maps(C.words, C.words, F, n, frobs, cap=cap, jobs=jobs, prune=prune)
        keys = frozenset(_keys_from_hits(res.maps, F.q))
        return GroupClosure(F, n, (), keys, False, "brute", True, {"candidates": res.candidates})
    if strategy in ("verify", "verify_closure"):
        if not generators:
            raise ValueError("verify strategy needs generators")
        for i, g in enumerate(generators):
            if mode == "linear" and g.frob:
                raise NotAnAutomorphism(f"generator {i} is not linear")
            if not is_automorphism(C, g):
                raise NotAnAutomorphism(f"generator {i} does not preserve the code")
        G = closure(generators, cap)
        if G.truncated:
            raise CapExceeded("closure of the supplied generators", cap + 1, cap)
        bad = first_non_automorphism(C, G)
        if bad is not None:
            raise NotAnAutomorphism(f"closure element {bad!r} does not preserve the code")
        G.source = "verify"
        G.maximal = False
        return G
    raise ValueError(f"unknown strategy {strategy!r}")


def first_non_automorphism(C: "SubspaceCode", G: GroupClosure, batch: int = 1 << 15) -> SemilinearMap | None:
    """Check every element of G against C in numpy batches; None if all pass."""
    F, n = C.field, C.n
    proper = [U for U in C.words if 0 < U.dim < n]
    if not proper:
        return None
    af = ArrayField(F)
    bases = [np.array(U.basis.entries, dtype=np.int64).reshape(U.dim, n) for U in proper]
    keys = sorted(G.keys)
    mats = G.matrices()
    frobs = np.array([k[1] for k in keys], dtype=np.int64)
    for j in sorted(set(frobs.tolist())):
        # frob_j(U A) in C  <=>  U A in frob_{-j}(C)
        member = Membership(af, n, [Subspace(V.basis.frobenius(-j)) for V in proper])
        sel = np.nonzero(frobs == j)[0]
        for s in range(0, len(sel), batch):
            idx = sel[s:s + batch]
            ok = np.ones(len(idx), dtype=bool)
            block = mats[idx]
            for U, Ub in zip(proper, bases):
                img = af.matmul(Ub, block)
                ok &= member(img)
            if not ok.all():
                bad = idx[np.nonzero(~ok)[0][0]]
                return SemilinearMap.from_key(keys[bad], n, F)
    return None


# --- stabilizers ---------------------------------------------------------------

def is_stabilizer_element(U: Subspace, g: SemilinearMap) -> bool:
    return act(U, g) == U


def stabilizer_order_formula(n: int, k: int, q: int) -> int:
    return gl_order(k, q) * gl_order(n - k, q) * q ** (k * (n - k))


def stabilizer_order(U: Subspace, *, cap: int = DEFAULT_CAP, jobs: int = 1) -> int:
    """|Stab_{GL_n}(U)| by brute force, cross-checked against the closed formula."""
    res = find_maps([U], [U], U.field, U.n, cap=cap, jobs=jobs)
    count = len(res.maps)
    expected = stabilizer_order_formula(U.n, U.dim, U.field.q)
    if count != expected:
        raise AssertionError(f"stabilizer count {count} disagrees with formula {expected}")
    return count


def stabilizer_condition(U: Subspace, G: GroupClosure, g: SemilinearMap) -> bool:
    """For every b' in G some b'' in G has U b' g b'' = U.

    Equivalent to g in Aut(U G) when b', b'' range over G; both quantifiers
    are over G, not over all of GL_n.
    """
    elems = list(G)
    # W b'' = U  <=>  W = U b''^{-1}; index one candidate b'' per image
    back: dict[Subspace, SemilinearMap] = {}
    for b2 in elems:
        back.setdefault(act(U, inverse(b2)), b2)
    for b1 in elems:
        W = act(act(U, b1), g)
        b2 = back.get(W)
        if b2 is None or act(W, b2) != U:
            return False
    return True
