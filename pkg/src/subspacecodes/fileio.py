"""Text formats for subspace codes (.sc), rank-metric codes (.rm) and generator sets (.gl).

All three share a header::

    %SC1 | %RM1 | %GL1
    field <p> <m>
    poly <c_0> ... <c_{m-1}>      (only when m > 1)

Element indices are sum(a_i p^i).  ``#`` starts a comment; blank lines are
ignored.  Serializers emit canonical, byte-stable text.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .action import SemilinearMap
from .codes import RankMetricCode, SubspaceCode
from .field import FieldError, FieldSpec, field_make
from .linalg import MatrixGF
from .space import Subspace


class FormatError(ValueError):
    pass


class _Lines:
    def __init__(self, text: str):
        self._lines: list[tuple[int, list[str]]] = []
        for no, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self._lines.append((no, line.split()))
        self._pos = 0

    def done(self) -> bool:
        return self._pos >= len(self._lines)

    def peek(self) -> tuple[int, list[str]]:
        return self._lines[self._pos]

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.done():
            raise FormatError(f"unexpected end of file, expected {what}")
        item = self._lines[self._pos]
        self._pos += 1
        return item

    def keyword(self, word: str, nargs: int | None = None) -> list[int]:
        no, toks = self.next(f"'{word}' line")
        if toks[0] != word:
            raise FormatError(f"line {no}: expected '{word}', got '{toks[0]}'")
        try:
            args = [int(t) for t in toks[1:]]
        except ValueError:
            raise FormatError(f"line {no}: non-integer argument") from None
        if nargs is not None and len(args) != nargs:
            raise FormatError(f"line {no}: '{word}' takes {nargs} arguments")
        return args

    def row(self, width: int, q: int) -> list[int]:
        no, toks = self.next("matrix row")
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise FormatError(f"line {no}: expected {width} element indices, got {' '.join(toks)!r}") from None
        if len(vals) != width:
            raise FormatError(f"line {no}: expected {width} entries, got {len(vals)}")
        for v in vals:
            if not 0 <= v < q:
                raise FormatError(f"line {no}: element index {v} outside [0, {q})")
        return vals

    def rows(self, count: int, width: int, q: int) -> list[list[int]]:
        out = []
        for i in range(count):
            if not self.done() and self.peek()[1][0].isalpha():
                no = self.peek()[0]
                raise FormatError(f"line {no}: block declares {count} rows but has {i}")
            out.append(self.row(width, q))
        return out


def _read_header(lines: _Lines, magic: str) -> FieldSpec:
    if lines.done():
        raise FormatError("empty file")
    no, toks = lines.next("magic line")
    if toks != [magic]:
        raise FormatError(f"line {no}: bad magic line, expected {magic}")
    p, m = lines.keyword("field", 2)
    modulus = None
    if m > 1:
        modulus = lines.keyword("poly", m)
    try:
        return field_make(p, m, modulus)
    except FieldError as exc:
        raise FormatError(str(exc)) from None


def _header(magic: str, F: FieldSpec) -> list[str]:
    out = [magic, f"field {F.p} {F.m}"]
    if F.m > 1:
        out.append("poly " + " ".join(str(c) for c in F.modulus))
    return out


def _fmt_rows(M: MatrixGF) -> Iterator[str]:
    for i in range(M.rows):
        yield " ".join(str(x) for x in M.row(i))


# --- .sc ---------------------------------------------------------------------

def parse_code(text: str) -> SubspaceCode:
    lines = _Lines(text)
    F = _read_header(lines, "%SC1")
    (n,) = lines.keyword("ambient", 1)
    words: list[Subspace] = []
    seen: set[Subspace] = set()
    while not lines.done():
        no = lines.peek()[0]
        (k,) = lines.keyword("word", 1)
        rows = lines.rows(k, n, F.q)
        U = Subspace.from_rows(rows, F, n) if rows else Subspace.zero(n, F)
        if U in seen:
            raise FormatError(f"line {no}: duplicate codeword after canonicalization")
        seen.add(U)
        words.append(U)
    return SubspaceCode(F, n, words)


def serialize_code(C: SubspaceCode) -> str:
    out = _header("%SC1", C.field) + [f"ambient {C.n}"]
    for U in C.sorted_words():
        out.append(f"word {U.dim}")
        out.extend(_fmt_rows(U.basis))
    return "\n".join(out) + "\n"


# --- .rm ---------------------------------------------------------------------

def parse_rank_code(text: str) -> RankMetricCode:
    lines = _Lines(text)
    F = _read_header(lines, "%RM1")
    k, m = lines.keyword("shape", 2)
    mats = []
    seen = set()
    while not lines.done():
        no = lines.peek()[0]
        lines.keyword("mat", 0)
        X = MatrixGF.from_rows(lines.rows(k, m, F.q), F, m)
        if X in seen:
            raise FormatError(f"line {no}: duplicate matrix")
        seen.add(X)
        mats.append(X)
    try:
        return RankMetricCode(F, k, m, mats)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_rank_code(R: RankMetricCode) -> str:
    out = _header("%RM1", R.field) + [f"shape {R.k} {R.m}"]
    for X in sorted(R.words, key=MatrixGF.sort_key):
        out.append("mat")
        out.extend(_fmt_rows(X))
    return "\n".join(out) + "\n"


# --- .gl ---------------------------------------------------------------------

def parse_generators(text: str) -> list[SemilinearMap]:
    lines = _Lines(text)
    F = _read_header(lines, "%GL1")
    (n,) = lines.keyword("ambient", 1)
    gens = []
    while not lines.done():
        no, toks = lines.next("'gen' line")
        if toks[0] != "gen" or len(toks) not in (1, 3) or (len(toks) == 3 and toks[1] != "frob"):
            raise FormatError(f"line {no}: expected 'gen' or 'gen frob <j>'")
        j = int(toks[2]) if len(toks) == 3 else 0
        if not 0 <= j < F.m:
            raise FormatError(f"line {no}: Frobenius exponent {j} outside [0, {F.m})")
        A = MatrixGF.from_rows(lines.rows(n, n, F.q), F, n)
        try:
            gens.append(SemilinearMap(A, j))
        except ValueError as exc:
            raise FormatError(f"line {no}: {exc}") from None
    return gens


def serialize_generators(gens: Sequence[SemilinearMap], field: FieldSpec | None = None, n: int | None = None) -> str:
    if gens:
        field, n = gens[0].field, gens[0].n
    if field is None or n is None:
        raise ValueError("an empty generator set needs field and n")
    out = _header("%GL1", field) + [f"ambient {n}"]
    for g in gens:
        out.append(f"gen frob {g.frob}" if g.frob else "gen")
        out.extend(_fmt_rows(g.A))
    return "\n".join(out) + "\n"
