from __future__ import annotations

from importlib import resources

import pytest

from conftest import GF2, GF4, random_subspace
from subspacecodes import reference as ref
from subspacecodes.action import SemilinearMap
from subspacecodes.codes import SubspaceCode
from subspacecodes.fileio import (
    FormatError,
    parse_code,
    parse_generators,
    parse_rank_code,
    serialize_code,
    serialize_generators,
    serialize_rank_code,
)
from subspacecodes.linalg import MatrixGF, hstack, random_invertible


def data(name: str) -> str:
    return resources.files("subspacecodes").joinpath("data", name).read_text()


def test_round_trips(rng):
    C = ref.spread_listing(3)
    text = serialize_code(C)
    assert parse_code(text) == C and serialize_code(parse_code(text)) == text
    R = ref.rank_code()
    assert parse_rank_code(serialize_rank_code(R)) == R
    gens = ref.spread_data(3)["generators"]
    assert parse_generators(serialize_generators(gens)) == gens


def test_extension_field_round_trip(rng):
    C = SubspaceCode(GF4, 3, {random_subspace(GF4, 3, rng) for _ in range(5)})
    text = serialize_code(C)
    assert "poly 1 1" in text
    assert parse_code(text) == C
    g = [SemilinearMap(random_invertible(3, GF4, rng), 1)]
    assert parse_generators(serialize_generators(g)) == g


def test_serialization_is_order_independent():
    C = ref.spread_listing(2)
    D = SubspaceCode(GF2, 4, reversed(C.words))
    assert serialize_code(C) == serialize_code(D)


def test_rows_are_canonicalized():
    C = parse_code("%SC1\nfield 2 1\nambient 4\nword 2\n0 1 0 0\n1 0 0 0\n")
    (U,) = C.words
    assert U.basis == hstack(MatrixGF.identity(2, GF2), MatrixGF.zeros(2, 2, GF2))


def test_shipped_fixtures():
    assert len(parse_code(data("example1.sc"))) == 5
    assert parse_code(data("example1.sc")) == ref.spread_listing(2)
    assert len(parse_code(data("example2.sc"))) == 10
    assert parse_rank_code(data("rank_code.rm")) == ref.rank_code()
    assert len(parse_generators(data("example1_aut.gl"))) == 4


def test_comments_and_blank_lines():
    C = parse_code("# a code\n%SC1\n\nfield 2 1  # binary\nambient 2\nword 1\n1 1\n")
    assert len(C) == 1


@pytest.mark.parametrize(
    "text,needle",
    [
        ("%SC2\nfield 2 1\nambient 2\n", "magic"),
        ("%SC1\nfield 2 1\nambient 2\nword 1\n2 0\n", "outside"),
        ("%SC1\nfield 2 1\nambient 2\nword 2\n1 0\nword 1\n0 1\n", "declares 2 rows"),
        ("%SC1\nfield 2 1\nambient 2\nword 2\n1 0\n", "end of file"),
        ("%SC1\nfield 2 1\nambient 2\nword 1\n1 0\nword 1\n1 0\n", "duplicate"),
        ("%SC1\nfield 2 1\nambient 2\nword 1\n1 0 1\n", "expected 2 entries"),
        ("%SC1\nfield 4 1\nambient 2\n", "prime"),
        ("%SC1\nfield 2 2\npoly 0 1\nambient 2\n", "reducible"),
        ("", "empty"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises(FormatError) as err:
        parse_code(text)
    assert needle in str(err.value)


def test_rank_and_generator_errors():
    with pytest.raises(FormatError):
        parse_rank_code("%RM1\nfield 2 1\nshape 3 2\nmat\n1 0\n0 1\n1 1\n")
    with pytest.raises(FormatError):
        parse_rank_code("%RM1\nfield 2 1\nshape 1 2\nmat\n1 0\nmat\n1 0\n")
    with pytest.raises(FormatError):
        parse_generators("%GL1\nfield 2 1\nambient 2\ngen\n1 1\n1 1\n")
    with pytest.raises(FormatError):
        parse_generators("%GL1\nfield 2 1\nambient 2\ngen frob 1\n1 0\n0 1\n")
