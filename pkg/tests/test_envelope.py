import pytest

from ccilab.bitset import mask_of
from ccilab.envelope import (
    all_envelopes,
    build_envelope,
    envelope_violation,
    is_envelope,
)
from ccilab.errors import IntersectionTooSmall, NotACircuit, NotACocircuit
from ccilab.matroid import Matroid, expand_mask


def four_cycles(k4):
    return [c for c in k4.circuits() if c.bit_count() == 4]


def test_k4_four_cycle_is_envelope(k4):
    x = four_cycles(k4)[0]
    ok, why = is_envelope(k4, x)
    assert ok, why


def test_k4_triangle_fails_size_equation(k4):
    triangle = next(c for c in k4.circuits() if c.bit_count() == 3)
    ok, why = is_envelope(k4, triangle)
    assert not ok
    assert "below 4" in why  # k = 3 fails before the 2k-2 = 4 size equation


def test_u24_subset_fails_k_requirement():
    u = Matroid.uniform(2, 4)
    ok, why = is_envelope(u, mask_of([0, 1, 2]))
    assert not ok and "below 4" in why


def test_build_envelope_fixed_point(k4):
    x = four_cycles(k4)[0]
    env = build_envelope(k4, x, x)  # the 4-cycle is circuit and cocircuit
    assert env.matroid == k4
    assert env.x == x
    assert env.index_map == tuple(range(6))
    assert env.k == 4 and env.y == k4.full & ~x


def test_build_envelope_k5(k5):
    found = next(
        (c, cc)
        for c in k5.circuits()
        for cc in k5.cocircuits()
        if (c & cc).bit_count() == 4
    )
    env = build_envelope(k5, *found)
    assert env.matroid.n == 6 and env.matroid.r == 3
    ok, why = is_envelope(env.matroid, env.x)
    assert ok, why
    # X maps back to the original intersection through the index map
    back = expand_mask(env.x, env.index_map)
    assert back == found[0] & found[1]


def test_build_envelope_validates_inputs(k4):
    x = four_cycles(k4)[0]
    not_circuit = mask_of([0, 1])
    with pytest.raises(NotACircuit):
        build_envelope(k4, not_circuit, x)
    with pytest.raises(NotACocircuit):
        build_envelope(k4, x, not_circuit)
    triangle = next(c for c in k4.circuits() if c.bit_count() == 3)
    star = next(cc for cc in k4.cocircuits() if (cc & triangle).bit_count() == 2)
    with pytest.raises(IntersectionTooSmall):
        build_envelope(k4, triangle, star)


def test_all_envelopes_counts(k4):
    envs = all_envelopes(k4, 4)
    assert len(envs) == 3  # one per 4-cycle of the graph
    assert all(e.matroid == k4 for e in envs)
    assert all_envelopes(Matroid.uniform(2, 4), 4) == []
    assert all_envelopes(Matroid.uniform(3, 3), 4) == []
    with pytest.raises(ValueError):
        all_envelopes(k4, 8)


def test_envelope_dual_symmetry(k4, k5, u612_envelope):
    for env in [all_envelopes(k4, 4)[0], all_envelopes(k5, 4)[0], u612_envelope]:
        ok, why = is_envelope(env.matroid.dual(), env.x)
        assert ok, why


def test_envelope_minimality(k5):
    env = all_envelopes(k5, 4)[0]
    n = env.matroid
    assert n.n == 2 * env.k - 2
    # removing any further element outside X must break the conditions
    rest = n.full & ~env.x
    while rest:
        low = rest & -rest
        rest ^= low
        for op in ("delete", "contract"):
            minor = getattr(n, op)(low)
            assert envelope_violation(minor, _shift(env.x, low)) is not None


def _shift(x: int, removed_bit: int) -> int:
    """Re-index x after removing one element below some of its bits."""
    idx = removed_bit.bit_length() - 1
    high = x >> (idx + 1)
    return (x & ((1 << idx) - 1)) | (high << idx)


def test_uniform_6_12_is_k7_envelope(u612_envelope):
    ok, why = is_envelope(u612_envelope.matroid, u612_envelope.x)
    assert ok, why
    assert u612_envelope.k == 7


def test_frozen_k7_exemplars_are_envelopes(r1_envelope, r3_envelope, r4_envelope):
    for env in (r1_envelope, r3_envelope, r4_envelope):
        ok, why = is_envelope(env.matroid, env.x)
        assert ok, why
        assert env.k == 7 and env.matroid.n == 12 and env.matroid.r == 6
