from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings

from subspacecodes.field import FieldSpec, field_make
from subspacecodes.linalg import MatrixGF
from subspacecodes.space import Subspace

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def span_set(rows, F: FieldSpec) -> frozenset:
    """Every vector in the row space, by brute-force linear combinations."""
    rows = [tuple(r) for r in rows]
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            for i, x in enumerate(r):
                v[i] = F.add(v[i], F.mul(c, x))
        out.add(tuple(v))
    return frozenset(out)


def vectors_of(U: Subspace) -> frozenset:
    if U.dim == 0:
        return frozenset({(0,) * U.n})
    return span_set(U.basis.to_rows(), U.field)


def random_subspace(F: FieldSpec, n: int, rng: random.Random, k: int | None = None) -> Subspace:
    k = rng.randint(0, n) if k is None else k
    while True:
        rows = [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)]
        if not rows:
            return Subspace.zero(n, F)
        U = Subspace.from_rows(rows, F, n)
        if U.dim == k:
            return U


GF2 = field_make(2)
GF3 = field_make(3)
GF4 = field_make(2, 2)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
