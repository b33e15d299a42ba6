"""Hyperplane- and cohyperplane-partitions of an envelope's CCI.

Fix an envelope (N, X) with |X| = k and Y = E(N) \\ X.  For any (k-3)-subset
J of Y, the flats cl(J | {x}) with x in X are hyperplanes of N whose traces
on X partition X; each class Xi satisfies cl(J | Xi) = J | Xi.  The same
construction in the dual gives cohyperplane-partitions.  The type of a
partition is its ascending list of class sizes.

Types are heavily constrained: no class ever has size k-1 (that would leave
a size-1 CCI) and a single-class partition is impossible (X has full rank).
The structural facts lemma_b_facts and lemma_d_containment assert further
theorem-level constraints and raise InvariantBroken on violation; the
certificate extractors lemma_a_certificate and lemma_c_certificate return
None when their pattern is absent, so the reduction engine can chain them.
Every set a lemma returns is re-verified from rank and closure queries,
never trusted from its construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitset import canon_key, index_tuple, ksubsets
from .envelope import Envelope
from .errors import (
    BadJSize,
    InvariantBroken,
    MismatchedEnvelope,
    NotWithinY,
    PreconditionViolated,
)
from .matroid import Matroid

HYPERPLANE = "hyperplane"
COHYPERPLANE = "cohyperplane"

# integer partitions of 7 a partition type may take once size-2 classes are
# routed to the short-cut rule; anything else (and in particular 5+1+1) is
# reported as an anomaly rather than asserted away
ADMISSIBLE_K7_TYPES = frozenset(
    {(3, 4), (1, 3, 3), (1, 1, 1, 4), (1, 1, 1, 1, 3), (1, 1, 1, 1, 1, 1, 1)}
)


def _class_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask & -mask)


@dataclass(frozen=True)
class HPartition:
    """A (co)hyperplane-partition (J; X1, ..., Xm) of the envelope's CCI."""

    kind: str
    j: int
    classes: tuple[int, ...]
    env: Envelope = field(compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def type_vec(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.classes)

    def singletons(self) -> tuple[int, ...]:
        """Element bits of the size-1 classes, canonical order."""
        return tuple(c for c in self.classes if c.bit_count() == 1)

    def class_containing(self, subset: int) -> int | None:
        for c in self.classes:
            if subset & ~c == 0:
                return c
        return None

    def as_partition(self) -> frozenset[int]:
        """The classes as a plain set partition of X (kind and J forgotten)."""
        return frozenset(self.classes)

    def __repr__(self) -> str:
        cls = ", ".join(str(set(index_tuple(c))) for c in self.classes)
        return f"HPartition({self.kind[0]}, J={set(index_tuple(self.j))}; {cls})"


@dataclass(frozen=True)
class InducedPartition:
    """Common refinement of two partitions of X: the nonempty pairwise
    intersections of their classes."""

    parts: tuple[int, ...]
    sources: tuple[HPartition, HPartition]

    def singleton_parts(self) -> tuple[int, ...]:
        return tuple(p for p in self.parts if p.bit_count() == 1)


def _side(env: Envelope, kind: str) -> Matroid:
    return env.matroid if kind == HYPERPLANE else env.matroid.dual()


def _check_corank1_flat(n: Matroid, subset: int, what: str) -> None:
    if n.rank(subset) != n.r - 1 or n.closure(subset) != subset:
        raise InvariantBroken(f"{what} {index_tuple(subset)} is not a corank-1 flat")


def _partition(env: Envelope, j: int, kind: str) -> HPartition:
    k = env.k
    if j & ~env.y:
        raise NotWithinY(f"J = {index_tuple(j)} is not inside Y = {index_tuple(env.y)}")
    if j.bit_count() != k - 3:
        raise BadJSize(f"|J| = {j.bit_count()}, needs k-3 = {k - 3}")
    n = _side(env, kind)
    groups: dict[int, int] = {}
    rem = env.x
    while rem:
        low = rem & -rem
        rem ^= low
        cl = n.closure(j | low)
        groups[cl] = groups.get(cl, 0) | low
    for cl, cls in groups.items():
        if cl != (j | cls):
            raise InvariantBroken(
                f"closure {index_tuple(cl)} is not J | class for class {index_tuple(cls)}"
            )
        if cl & env.y != j:
            raise InvariantBroken("closure trace on Y differs from J")
        _check_corank1_flat(n, cl, f"{kind} class closure")
    classes = tuple(sorted(groups.values(), key=_class_key))
    if len(classes) < 2:
        raise InvariantBroken("single-class partition: X would lie in a hyperplane")
    if any(c.bit_count() == k - 1 for c in classes):
        raise InvariantBroken("class of size k-1: would force a size-1 CCI")
    return HPartition(kind, j, classes, env)


def hyperplane_partition(env: Envelope, j: int) -> HPartition:
    """Partition of X by the hyperplanes cl(J | {x}), x in X."""
    return _partition(env, j, HYPERPLANE)


def cohyperplane_partition(env: Envelope, j: int) -> HPartition:
    """The hyperplane-partition taken in the dual matroid."""
    return _partition(env, j, COHYPERPLANE)


def parameter_sets(env: Envelope) -> list[int]:
    """All k-2 choices of J: the size-(k-3) subsets of Y, canonical order."""
    return sorted(ksubsets(env.y, env.k - 3), key=canon_key)


def all_partitions(env: Envelope) -> tuple[list[HPartition], list[HPartition]]:
    """(hyperplane-partitions, cohyperplane-partitions), J ascending."""
    js = parameter_sets(env)
    return (
        [hyperplane_partition(env, j) for j in js],
        [cohyperplane_partition(env, j) for j in js],
    )


def induced(p1: HPartition, p2: HPartition) -> InducedPartition:
    """Partition of X induced by two (co)hyperplane-partitions."""
    if p1.env != p2.env:
        raise MismatchedEnvelope("partitions come from different envelopes")
    parts = [
        a & b
        for a in p1.classes
        for b in p2.classes
        if a & b
    ]
    return InducedPartition(tuple(sorted(parts, key=_class_key)), (p1, p2))


def lemma_a_certificate(
    env: Envelope, p1: HPartition, p2: HPartition
) -> tuple[int, int] | None:
    """Split-pair extraction from two same-kind partitions.

    If p1 = (J; X1, X2) and the partition induced with p2 = (J'; ...) has
    singletons {x1} in X1 and {x2} in X2 whose union lies in no class of
    p2, then (J & J') | {x1, x2} is a corank-1 flat on p1's side and
    X \\ {x1, x2} is a CCI of size k-2.  Returns (flat, removed_pair), or
    None when no qualifying singleton pair exists.
    """
    if p1.kind != p2.kind:
        raise PreconditionViolated("lemma_a needs two partitions of the same kind")
    if p1.m != 2:
        raise PreconditionViolated("lemma_a needs p1 to have exactly two classes")
    if p1.env != p2.env:
        raise MismatchedEnvelope("partitions come from different envelopes")
    ind = induced(p1, p2)
    x1_cls, x2_cls = p1.classes
    singles = ind.singleton_parts()
    for s1 in singles:
        if not s1 & x1_cls:
            continue
        for s2 in singles:
            if not s2 & x2_cls:
                continue
            pair = s1 | s2
            if p2.class_containing(pair) is not None:
                continue
            flat = (p1.j & p2.j) | pair
            _check_corank1_flat(_side(env, p1.kind), flat, "lemma_a flat")
            return flat, pair
    return None


@dataclass(frozen=True)
class PairFacts:
    """Verified structural facts about two same-kind 2-class partitions."""

    distinct_classes: bool
    m: int
    big_parts_when_3: bool
    parts: tuple[int, ...]
    flats: dict[tuple[int, int], int]  # part-index pair -> verified corank-1 flat


def lemma_b_facts(env: Envelope, p1: HPartition, p2: HPartition) -> PairFacts:
    """Structural facts for 2-class partitions with distinct J.

    The two partitions always differ as partitions of X, their induced
    partition has 3 or 4 parts (all of size > 1 when it has 3), and the
    union of two induced parts not contained in a class of either source,
    together with J & J', is a corank-1 flat.  Violations raise
    InvariantBroken since these are theorem-level guarantees.
    """
    if p1.kind != p2.kind or p1.m != 2 or p2.m != 2:
        raise PreconditionViolated("lemma_b needs two 2-class partitions of equal kind")
    if p1.j == p2.j:
        raise PreconditionViolated("lemma_b needs distinct parameter sets")
    if p1.env != p2.env:
        raise MismatchedEnvelope("partitions come from different envelopes")
    if p1.as_partition() == p2.as_partition():
        raise InvariantBroken("2-class partitions with distinct J coincide on X")
    ind = induced(p1, p2)
    m = len(ind.parts)
    if m not in (3, 4):
        raise InvariantBroken(f"induced partition has {m} parts, expected 3 or 4")
    big3 = m != 3 or all(p.bit_count() > 1 for p in ind.parts)
    if not big3:
        raise InvariantBroken("3-part induced partition has a singleton part")
    side = _side(env, p1.kind)
    flats: dict[tuple[int, int], int] = {}
    for i in range(m):
        for jdx in range(i + 1, m):
            union = ind.parts[i] | ind.parts[jdx]
            if p1.class_containing(union) or p2.class_containing(union):
                continue
            flat = (p1.j & p2.j) | union
            _check_corank1_flat(side, flat, "lemma_b flat")
            flats[(i, jdx)] = flat
    return PairFacts(True, m, big3, ind.parts, flats)


def lemma_c_certificate(
    env: Envelope, p: HPartition, q: HPartition
) -> tuple[int, int, int] | None:
    """Opposite-kind singleton extraction.

    For a hyperplane-partition p = (J; {x}, ...) and a cohyperplane-
    partition q = (J*; {x*}, ...) with J != J* and x != x*, the sets
    J | {x} and J* | {x*} are a hyperplane and a cohyperplane whose union
    covers Y and the two singletons, so X \\ {x, x*} is a CCI of size k-2.
    Returns (hyperplane, cohyperplane, removed_pair) or None.
    """
    if p.kind != HYPERPLANE or q.kind != COHYPERPLANE:
        raise PreconditionViolated("lemma_c needs a hyperplane- and a cohyperplane-partition")
    if p.env != q.env:
        raise MismatchedEnvelope("partitions come from different envelopes")
    if p.j == q.j:
        return None
    for sx in p.singletons():
        for sq in q.singletons():
            if sx == sq:
                continue
            h = p.j | sx
            h_star = q.j | sq
            _check_corank1_flat(env.matroid, h, "lemma_c hyperplane")
            _check_corank1_flat(env.matroid.dual(), h_star, "lemma_c cohyperplane")
            return h, h_star, sx | sq
    return None


@dataclass(frozen=True)
class ContainmentFacts:
    forbidden_sizes_ok: bool
    x1_inside: int | None  # class of q containing p's first class, when defined


def lemma_d_containment(env: Envelope, p: HPartition, q: HPartition) -> ContainmentFacts:
    """Trace-size constraints between opposite-kind partitions.

    No class of q may meet a class Xi of the 2-class partition p in exactly
    |Xi| - 1 elements (that union pattern would produce a size-1 CCI).  When
    p has type (2, k-2) or (3, k-3) and q also has two classes, the smaller
    class of p is wholly inside one class of q, which is returned.
    """
    if p.kind != HYPERPLANE or q.kind != COHYPERPLANE:
        raise PreconditionViolated("lemma_d needs a hyperplane- and a cohyperplane-partition")
    if p.m != 2:
        raise PreconditionViolated("lemma_d needs p to have exactly two classes")
    if p.j == q.j:
        raise PreconditionViolated("lemma_d needs distinct parameter sets")
    if p.env != q.env:
        raise MismatchedEnvelope("partitions come from different envelopes")
    for xi in p.classes:
        for q_cls in q.classes:
            if (xi & q_cls).bit_count() == xi.bit_count() - 1:
                raise InvariantBroken(
                    f"class {index_tuple(xi)} meets {index_tuple(q_cls)} in all but one element"
                )
    x1_inside = None
    k = env.k
    if p.type_vec in ((2, k - 2), (3, k - 3)) and q.m == 2:
        x1 = p.classes[0]
        x1_inside = q.class_containing(x1)
        if x1_inside is None:
            raise InvariantBroken(
                f"class {index_tuple(x1)} lies in no class of the opposite 2-class partition"
            )
    return ContainmentFacts(True, x1_inside)


def partition_type_census(
    env: Envelope, parts: tuple[list[HPartition], list[HPartition]] | None = None
) -> tuple[list[tuple[int, ...]], list[str]]:
    """Observed partition types and, for k = 7, any type outside the known
    list.

    The admissible list is conditional on the envelope having no size-2
    class anywhere (such envelopes are fully handled by the short-cut
    rule), so envelopes with one are censused but never flagged.
    """
    h_parts, c_parts = parts if parts is not None else all_partitions(env)
    types = [p.type_vec for p in h_parts + c_parts]
    anomalies = []
    if env.k == 7 and not any(2 in tv for tv in types):
        for p in h_parts + c_parts:
            tv = p.type_vec
            if tv not in ADMISSIBLE_K7_TYPES:
                anomalies.append(
                    f"{p.kind}-partition J={index_tuple(p.j)} has unexpected type {tv}"
                )
    return types, anomalies
