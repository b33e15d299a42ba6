"""Envelopes: minimum-size minors carrying a circuit-cocircuit intersection.

For a CCI X of size k >= 4, the parent matroid always has a minor N on
exactly 2k-2 elements with r(N) = r(N*) = k-1 in which X is itself both a
circuit and a cocircuit; the complement Y = E(N) \\ X is then independent
in N and its dual, and is simultaneously a hyperplane and a cohyperplane.
We call (N, X) an envelope.  All partition and reduction machinery in this
package operates on envelopes.

Construction works by guarded descent: repeatedly delete or contract one
element outside X, requiring that X stay a CCI of the current minor.  Any
CCI of a minor is a CCI of the intermediate minors above it, so from every
guarded state some guarded move exists until the ground set reaches size
2k-2, at which point minimality forces the envelope conditions.  No
backtracking is ever needed; a failure raises SearchExhausted and means a
bug, not a missing envelope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitset import canon_key, index_tuple, subsets_of
from .errors import (
    IntersectionTooSmall,
    NotACircuit,
    NotACocircuit,
    SearchExhausted,
)
from .matroid import Matroid, compress_mask, surviving_labels


@dataclass(frozen=True)
class Envelope:
    """A matroid N with a distinguished set X satisfying the envelope
    conditions, plus the label map back into the parent matroid."""

    matroid: Matroid
    x: int
    index_map: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.x.bit_count()

    @property
    def y(self) -> int:
        return self.matroid.full & ~self.x


def envelope_violation(n: Matroid, x: int) -> str | None:
    """Name of the first violated envelope condition, or None if all hold."""
    k = x.bit_count()
    y = n.full & ~x
    if x & ~n.full:
        return "X is not a subset of the ground set"
    if k < 4:
        return f"|X| = {k} is below 4"
    if n.n != 2 * k - 2:
        return f"ground set has {n.n} elements, needs 2k-2 = {2 * k - 2}"
    if n.r != k - 1:
        return f"rank is {n.r}, needs k-1 = {k - 1}"
    if n.n - n.r != k - 1:
        return f"dual rank is {n.n - n.r}, needs k-1 = {k - 1}"
    if x not in n.circuits():
        return "X is not a circuit"
    if x not in n.cocircuits():
        return "X is not a cocircuit"
    if not n.is_independent(y):
        return "complement Y is dependent"
    if not n.dual().is_independent(y):
        return "complement Y is dependent in the dual"
    if y not in n.hyperplanes():
        return "complement Y is not a hyperplane"
    if y not in n.cohyperplanes():
        return "complement Y is not a cohyperplane"
    return None


def is_envelope(n: Matroid, x: int) -> tuple[bool, str]:
    why = envelope_violation(n, x)
    return (why is None, why or "ok")


def _minor_corank1_flats(m: Matroid, delete: int, contract: int, within: int, dualize: bool):
    """Hyperplanes (or cohyperplanes, if dualize) of m \\ delete / contract
    that are contained in ``within``.  Masks use the parent's labels."""
    rk = m._rank_table()
    ground = m.full & ~(delete | contract)
    r_con = rk[contract]
    r_minor = rk[m.full & ~delete] - r_con

    if dualize:
        n_minor = ground.bit_count()
        r_star = n_minor - r_minor

        def rank_of(s: int) -> int:
            return s.bit_count() - r_minor + rk[(ground & ~s) | contract] - r_con

        target = r_star - 1
    else:

        def rank_of(s: int) -> int:
            return rk[s | contract] - r_con

        target = r_minor - 1

    if target < 0:
        return []
    out = []
    for a in subsets_of(within):
        if rank_of(a) != target:
            continue
        rest = ground & ~a
        closed = True
        while rest:
            low = rest & -rest
            rest ^= low
            if rank_of(a | low) == target:
                closed = False
                break
        if closed:
            out.append(a)
    return out


def _stays_cci(m: Matroid, delete: int, contract: int, x: int) -> bool:
    """Is x a CCI of the minor m \\ delete / contract?

    Equivalent formulation: some hyperplane H and cohyperplane H* of the
    minor satisfy H | H* = E(minor) \\ x, i.e. x is the complement of their
    union.  Both flats necessarily avoid x, so the search space is the
    submasks of the complement.
    """
    ground = m.full & ~(delete | contract)
    w = ground & ~x
    hyps = _minor_corank1_flats(m, delete, contract, w, dualize=False)
    if not hyps:
        return False
    cohyps = _minor_corank1_flats(m, delete, contract, w, dualize=True)
    for h in hyps:
        need = w & ~h
        for hc in cohyps:
            if need & ~hc == 0:
                return True
    return False


def build_envelope(m: Matroid, circuit: int, cocircuit: int) -> Envelope:
    """Shrink m around the CCI circuit & cocircuit down to an envelope."""
    if circuit not in m.circuits():
        raise NotACircuit(f"{index_tuple(circuit)} is not a circuit")
    if cocircuit not in m.cocircuits():
        raise NotACocircuit(f"{index_tuple(cocircuit)} is not a cocircuit")
    x = circuit & cocircuit
    k = x.bit_count()
    if k < 4:
        raise IntersectionTooSmall(f"|C & C*| = {k}, envelope needs >= 4")

    target = 2 * k - 2
    closure_c = m.closure(circuit)
    union = circuit | cocircuit
    moves: list[tuple[int, bool]] = []  # (element bit, contract?)
    for shell in (m.full & ~union, union & ~x):
        rem = shell
        while rem:
            low = rem & -rem
            rem ^= low
            # mirror the spanning/cospanning reduction: elements spanned by
            # the circuit get contracted first, outside elements deleted
            prefer_contract = bool(closure_c & low) and not (circuit & low)
            if low & circuit:
                prefer_contract = True
            if low & cocircuit and not (low & circuit):
                prefer_contract = False
            moves.append((low, prefer_contract))
            moves.append((low, not prefer_contract))

    delete = contract = 0
    size = m.n
    while size > target:
        for bit, do_contract in moves:
            if bit & (delete | contract):
                continue
            d2, c2 = (delete, contract | bit) if do_contract else (delete | bit, contract)
            if _stays_cci(m, d2, c2, x):
                delete, contract = d2, c2
                size -= 1
                break
        else:
            raise SearchExhausted(
                f"no guarded move from state del={index_tuple(delete)}, "
                f"con={index_tuple(contract)}; this is a bug"
            )

    labels = surviving_labels(m.n, delete | contract)
    minor = m.minor(delete=delete, contract=contract)
    x_new = compress_mask(x, labels)
    why = envelope_violation(minor, x_new)
    if why is not None:
        raise SearchExhausted(f"guarded descent ended at a non-envelope: {why}")
    return Envelope(minor, x_new, labels)


def all_envelopes(m: Matroid, k: int) -> list[Envelope]:
    """One envelope per distinct size-k CCI of m, in canonical CCI order."""
    if not 4 <= k <= 7:
        raise ValueError(f"k must be in 4..7, got {k}")
    witness: dict[int, tuple[int, int]] = {}
    for c in m.circuits():
        for cc in m.cocircuits():
            x = c & cc
            if x.bit_count() == k and x not in witness:
                witness[x] = (c, cc)
    ordered = sorted(witness, key=canon_key)
    return [build_envelope(m, *witness[x]) for x in ordered]
