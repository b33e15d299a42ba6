"""Shared fixtures: small reference matroids and frozen k=7 exemplars.

The GF(5) matrices below were found by seeded random search over
coordinate-fiber constructions and are frozen here as regression vectors;
every property asserted about them is re-derived by the library at test
time, never trusted from the search that found them.
"""

from itertools import combinations

import pytest

from ccilab.bitset import mask_of
from ccilab.envelope import Envelope
from ccilab.matroid import Matroid

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

FANO_COLUMNS = [
    (a, b, c)
    for a in (0, 1)
    for b in (0, 1)
    for c in (0, 1)
    if (a, b, c) != (0, 0, 0)
]


def _envelope_matrix(xrows: list[list[int]]) -> list[list[int]]:
    """[I5; 0 | X-rows; 1]: five coordinate columns plus seven CCI columns."""
    rows = [[1 if c == i else 0 for c in range(5)] + xrows[i] for i in range(5)]
    rows.append([0] * 5 + [1] * 7)
    return rows


# reduce() lands on R1-lemmaA: one (1,3,3) and four (3,4) hyperplane-
# partitions, no size-2 class anywhere; note the (1,1,5) cohyperplane types
R1_XROWS = [
    [3, 4, 4, 3, 4, 3, 3],
    [2, 1, 1, 2, 2, 2, 1],
    [1, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 0, 1],
    [2, 0, 1, 0, 1, 1, 0],
]

# reduce() lands on R3-thm-case2: all ten partitions have type (1,3,3) and
# share their singleton class
R3_XROWS = [
    [0, 4, 2, 4, 2, 2, 4],
    [4, 3, 3, 3, 2, 2, 2],
    [1, 0, 3, 3, 0, 3, 0],
    [0, 3, 3, 1, 1, 1, 3],
    [1, 2, 4, 2, 4, 2, 4],
]

# all five hyperplane-partitions have type (3,4); rule_r4_all34 fires with
# sub-case (a) when called directly (reduce() prefers R0 via the
# cohyperplane side)
R4_FIBERS = [(0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 1, 5), (0, 2, 3)]


@pytest.fixture(scope="session")
def k4():
    return Matroid.from_graph(4, K4_EDGES)


@pytest.fixture(scope="session")
def k5():
    return Matroid.from_graph(5, list(combinations(range(5), 2)))


@pytest.fixture(scope="session")
def fano():
    return Matroid.from_matrix(2, [[v[i] for v in FANO_COLUMNS] for i in range(3)])


@pytest.fixture(scope="session")
def u612_envelope():
    m = Matroid.uniform(6, 12)
    return Envelope(m, mask_of(range(7)), tuple(range(12)))


def _frozen_envelope(xrows):
    m = Matroid.from_matrix(5, _envelope_matrix(xrows))
    return Envelope(m, mask_of(range(5, 12)), tuple(range(12)))


@pytest.fixture(scope="session")
def r1_envelope():
    return _frozen_envelope(R1_XROWS)


@pytest.fixture(scope="session")
def r3_envelope():
    return _frozen_envelope(R3_XROWS)


@pytest.fixture(scope="session")
def r4_envelope():
    xrows = [[1 if pt in fib else 0 for pt in range(7)] for fib in R4_FIBERS]
    return _frozen_envelope(xrows)


@pytest.fixture(scope="session")
def small_catalog(k4, k5, fano):
    """A hand-picked bag of matroids for invariant sweeps."""
    return [
        Matroid.uniform(0, 0),
        Matroid.uniform(0, 1),
        Matroid.uniform(1, 1),
        Matroid.uniform(1, 2),
        Matroid.uniform(2, 4),
        Matroid.uniform(3, 3),
        Matroid.uniform(2, 5),
        Matroid.uniform(3, 6),
        Matroid.uniform(4, 8),
        k4,
        k4.dual(),
        k5,
        fano,
        fano.dual(),
        Matroid.from_graph(3, [(0, 1), (0, 1), (2, 2)]),  # parallel pair + loop
    ]
