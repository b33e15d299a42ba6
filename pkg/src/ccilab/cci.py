"""Circuit-cocircuit intersections (CCIs) and their size spectra.

A CCI is a nonempty set of the form C & C* for a circuit C and a cocircuit
C*.  Such a set never has size 1, and the CCI family is closed under
dualization and under taking minors; both facts are exposed here as
executable checks.  Empty intersections are not recorded: a circuit and a
cocircuit may be disjoint, but everything downstream concerns sizes >= 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bitset import index_tuple, sort_family
from .errors import InvariantBroken, RankZero
from .matroid import Matroid, expand_mask, surviving_labels


@dataclass(frozen=True)
class CCIRecord:
    """One witnessed CCI: the circuit/cocircuit pair and their intersection."""

    circuit: int
    cocircuit: int
    intersection: int
    size: int

    def validate(self, m: Matroid) -> None:
        if self.circuit not in m.circuits():
            raise InvariantBroken("witness circuit is not a circuit")
        if self.cocircuit not in m.cocircuits():
            raise InvariantBroken("witness cocircuit is not a cocircuit")
        meet = self.circuit & self.cocircuit
        if meet != self.intersection or meet.bit_count() != self.size:
            raise InvariantBroken("witness intersection mismatch")
        if self.size == 1:
            raise InvariantBroken("size-1 CCI cannot exist")


@dataclass(frozen=True)
class CCISpectrum:
    sizes: tuple[int, ...]
    witnesses: dict[int, CCIRecord] = field(compare=False)


def ccis_via_pairs(m: Matroid) -> tuple[int, ...]:
    """All CCIs, enumerated directly as circuit/cocircuit intersections."""
    out = set()
    for c in m.circuits():
        for cc in m.cocircuits():
            meet = c & cc
            if meet:
                out.add(meet)
    return sort_family(out)


def ccis_via_complements(m: Matroid) -> tuple[int, ...]:
    """All CCIs, as complements of a hyperplane/cohyperplane union.

    E \\ (H | H*) = (E \\ H) & (E \\ H*) is exactly a cocircuit meeting a
    circuit, so this agrees with ccis_via_pairs; the two routes cross-check
    each other in the test suite.
    """
    if m.r == 0 or m.r == m.n:
        return ()  # no cohyperplanes resp. no hyperplanes, hence no circuits
    out = set()
    try:
        hyps = m.hyperplanes()
        cohyps = m.cohyperplanes()
    except RankZero:
        return ()
    for h in hyps:
        for hc in cohyps:
            rest = m.full & ~(h | hc)
            if rest:
                out.add(rest)
    return sort_family(out)


def cci_spectrum(m: Matroid) -> CCISpectrum:
    """Occurring CCI sizes with one canonically-first witness per size."""
    witnesses: dict[int, CCIRecord] = {}
    for c in m.circuits():
        for cc in m.cocircuits():
            meet = c & cc
            size = meet.bit_count()
            if size and size not in witnesses:
                witnesses[size] = CCIRecord(c, cc, meet, size)
    return CCISpectrum(tuple(sorted(witnesses)), witnesses)


@dataclass
class ClosureReport:
    passed: bool
    checked: int
    failure: str | None = None


def check_duality_closure(m: Matroid) -> ClosureReport:
    """The CCI family of M must equal the CCI family of its dual."""
    mine = ccis_via_pairs(m)
    theirs = ccis_via_pairs(m.dual())
    if mine != theirs:
        extra = set(mine) ^ set(theirs)
        return ClosureReport(False, 1, f"families differ on {sorted(map(index_tuple, extra))}")
    return ClosureReport(True, 1)


def check_minor_closure(m: Matroid, trials: int, rng_seed: int) -> ClosureReport:
    """Every CCI of a random minor, mapped back to original labels, must be
    a CCI of M.  A failure signals an implementation bug: the closure of
    CCIs under minors is unconditional."""
    rng = random.Random(rng_seed)
    parent_ccis = set(ccis_via_pairs(m))
    checked = 0
    for _ in range(trials):
        if m.n == 0:
            break
        elems = list(range(m.n))
        rng.shuffle(elems)
        removed = rng.randrange(m.n)  # keep at least one element
        dmask = cmask = 0
        for e in elems[:removed]:
            if rng.random() < 0.5:
                dmask |= 1 << e
            else:
                cmask |= 1 << e
        minor = m.minor(delete=dmask, contract=cmask)
        labels = surviving_labels(m.n, dmask | cmask)
        checked += 1
        for x in ccis_via_pairs(minor):
            back = expand_mask(x, labels)
            if back not in parent_ccis:
                return ClosureReport(
                    False,
                    checked,
                    f"CCI {index_tuple(back)} of minor (del={index_tuple(dmask)}, "
                    f"con={index_tuple(cmask)}) is not a CCI of the parent",
                )
    return ClosureReport(True, checked)
