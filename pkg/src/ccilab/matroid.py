"""Matroids over small ground sets, represented by their basis family.

A matroid is stored canonically as (n, bases) where bases is the sorted
tuple of basis bitmasks.  All derived data (rank function, circuits,
hyperplanes, duals, minors) is computed from the basis family, which keeps
duality and minors exact and leaves no room for oracle-consistency bugs at
the ground-set sizes this package targets (n <= 16).

Rank queries are answered from a lazily built table indexed by subset
bitmask.  The table is filled by independent-set growth: a maximal
independent subset of S extends to one of S | {e} iff the extension stays
independent, so a single sweep in increasing mask order settles every
subset.  Tests cross-check the table against the direct definition
max_B |B & S|.

Instances are immutable after construction.  Lazy caches are populated
with plain attribute assignment, so concurrent readers observe either the
absent or the fully computed value, never a partial one.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .bitset import (
    capacity,
    full_mask,
    index_tuple,
    indices,
    mask_of,
    sort_family,
)
from .errors import (
    CapacityExceeded,
    EmptyFamily,
    EverythingDeleted,
    ExchangeAxiomViolation,
    NotPrimeField,
    RankZero,
)

_PRIMES = (2, 3, 5, 7)


def _rebuild(n: int, bases: tuple[int, ...]) -> "Matroid":
    return Matroid(n, bases, _trusted=True)


class Matroid:
    """Immutable matroid given by its basis family (bitmask-encoded)."""

    def __init__(self, n: int, bases: Iterable[int], *, _trusted: bool = False):
        if n > capacity():
            raise CapacityExceeded(f"ground set of size {n} exceeds capacity {capacity()}")
        fam = sort_family(bases)
        if not fam:
            raise EmptyFamily("a matroid needs at least one basis")
        self.n = n
        self.r = fam[0].bit_count()
        self.bases = fam
        self.full = full_mask(n)
        if not _trusted:
            self._verify_basis_axioms()

    # -- construction --------------------------------------------------------

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Sequence[int]]) -> "Matroid":
        """Build from explicit bases (lists of element indices); verifies the
        exchange axiom over all basis pairs."""
        masks = []
        for b in bases:
            if any(e < 0 or e >= n for e in b):
                raise ValueError(f"basis {sorted(b)} not a subset of 0..{n - 1}")
            masks.append(mask_of(b))
        return cls(n, masks)

    @classmethod
    def from_matrix(cls, field: int, entries: Sequence[Sequence[int]]) -> "Matroid":
        """Column matroid of a matrix over GF(p), p in {2, 3, 5, 7}.

        Bases are the column subsets of size rank(matrix) that are linearly
        independent over GF(p).
        """
        if field not in _PRIMES:
            raise NotPrimeField(f"field must be one of {_PRIMES}, got {field}")
        rows = len(entries)
        ncols = len(entries[0]) if rows else 0
        if any(len(row) != ncols for row in entries):
            raise ValueError("ragged matrix")
        if ncols > capacity():
            raise CapacityExceeded(f"{ncols} columns exceed capacity {capacity()}")
        cols = [tuple(entries[i][j] % field for i in range(rows)) for j in range(ncols)]
        r = _gf_rank(cols, field)
        if r == 0:
            return cls(ncols, [0], _trusted=True)
        bases = [
            mask_of(sub)
            for sub in combinations(range(ncols), r)
            if _gf_rank([cols[j] for j in sub], field) == r
        ]
        return cls(ncols, bases, _trusted=True)

    @classmethod
    def from_graph(cls, num_vertices: int, edges: Sequence[tuple[int, int]]) -> "Matroid":
        """Cycle matroid of a multigraph; bases are the maximum spanning forests.

        Loops and parallel edges are permitted (a loop is a rank-0 circuit).
        """
        m = len(edges)
        if m > capacity():
            raise CapacityExceeded(f"{m} edges exceed capacity {capacity()}")
        r = _forest_size(num_vertices, edges, range(m))
        if r == 0:
            return cls(m, [0], _trusted=True)
        bases = [
            mask_of(sub)
            for sub in combinations(range(m), r)
            if _forest_size(num_vertices, edges, sub) == r
        ]
        return cls(m, bases, _trusted=True)

    @classmethod
    def uniform(cls, r: int, n: int) -> "Matroid":
        """U(r, n): every r-subset is a basis."""
        if not 0 <= r <= n:
            raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
        if n > capacity():
            raise CapacityExceeded(f"ground set of size {n} exceeds capacity {capacity()}")
        return cls(n, [mask_of(c) for c in combinations(range(n), r)], _trusted=True)

    def _verify_basis_axioms(self) -> None:
        if any(b.bit_count() != self.r for b in self.bases):
            sizes = sorted({b.bit_count() for b in self.bases})
            raise ExchangeAxiomViolation(f"bases of unequal sizes {sizes}")
        if any(b & ~self.full for b in self.bases):
            raise ValueError("basis uses elements outside the ground set")
        in_family = set(self.bases)
        for b1 in self.bases:
            for b2 in self.bases:
                if b1 == b2:
                    continue
                for e in indices(b1 & ~b2):
                    stump = b1 ^ (1 << e)
                    if not any(stump | (1 << f) in in_family for f in indices(b2 & ~b1)):
                        raise ExchangeAxiomViolation(
                            f"no exchange for element {e} between bases "
                            f"{index_tuple(b1)} and {index_tuple(b2)}"
                        )

    # -- rank machinery --------------------------------------------------------

    def _independent_table(self) -> bytearray:
        """ind[S] == 1 iff subset S is independent (contained in a basis)."""
        tab = getattr(self, "_ind", None)
        if tab is None:
            tab = bytearray(1 << self.n)
            stack = []
            for b in self.bases:
                if not tab[b]:
                    tab[b] = 1
                    stack.append(b)
            while stack:
                s = stack.pop()
                rem = s
                while rem:
                    low = rem & -rem
                    rem ^= low
                    t = s ^ low
                    if not tab[t]:
                        tab[t] = 1
                        stack.append(t)
            self._ind = tab
        return tab

    def _rank_table(self) -> list[int]:
        """rank[S] for every subset mask S, via independent-set growth."""
        tab = getattr(self, "_rank_tab", None)
        if tab is None:
            ind = self._independent_table()
            size = 1 << self.n
            tab = [0] * size
            grown = [0] * size  # a maximal independent subset of each S
            for s in range(1, size):
                low = s & -s
                t = s ^ low
                cand = grown[t] | low
                if ind[cand]:
                    grown[s] = cand
                    tab[s] = tab[t] + 1
                else:
                    grown[s] = grown[t]
                    tab[s] = tab[t]
            self._rank_tab = tab
        return tab

    def rank(self, subset: int) -> int:
        """Rank of a subset (max size of an independent subset of it)."""
        return self._rank_table()[subset]

    def corank(self, subset: int) -> int:
        """r(M) - r(subset): the number of rank steps the subset is below
        spanning.  (Not the dual rank.)"""
        return self.r - self.rank(subset)

    def is_independent(self, subset: int) -> bool:
        return bool(self._independent_table()[subset])

    def spans(self, subset: int) -> bool:
        return self.rank(subset) == self.r

    def closure(self, subset: int) -> int:
        """Smallest flat containing the subset."""
        rk = self._rank_table()
        r0 = rk[subset]
        out = subset
        rest = self.full & ~subset
        while rest:
            low = rest & -rest
            rest ^= low
            if rk[subset | low] == r0:
                out |= low
        return out

    def is_flat(self, subset: int) -> bool:
        return self.closure(subset) == subset

    # -- derived families ------------------------------------------------------

    def circuits(self) -> tuple[int, ...]:
        """Minimal dependent sets, canonical order."""
        fam = getattr(self, "_circuits", None)
        if fam is None:
            ind = self._independent_table()
            out = []
            for s in range(1, 1 << self.n):
                if ind[s]:
                    continue
                rem = s
                minimal = True
                while rem:
                    low = rem & -rem
                    rem ^= low
                    if not ind[s ^ low]:
                        minimal = False
                        break
                if minimal:
                    out.append(s)
            fam = sort_family(out)
            self._circuits = fam
        return fam

    def cocircuits(self) -> tuple[int, ...]:
        """Circuits of the dual; equal to complements of hyperplanes."""
        return self.dual().circuits()

    def hyperplanes(self) -> tuple[int, ...]:
        """Flats of corank 1, as closures of independent (r-1)-sets."""
        fam = getattr(self, "_hyperplanes", None)
        if fam is None:
            if self.r == 0:
                raise RankZero("rank-0 matroid has no hyperplanes")
            ind = self._independent_table()
            want = self.r - 1
            seen = set()
            for s in range(1 << self.n):
                if s.bit_count() == want and ind[s]:
                    seen.add(self.closure(s))
            fam = sort_family(seen)
            self._hyperplanes = fam
        return fam

    def cohyperplanes(self) -> tuple[int, ...]:
        return self.dual().hyperplanes()

    # -- duality and minors ------------------------------------------------------

    def dual(self) -> "Matroid":
        """Matroid whose bases are the complements of this one's bases."""
        d = getattr(self, "_dual", None)
        if d is None:
            d = Matroid(self.n, [self.full ^ b for b in self.bases], _trusted=True)
            d._dual = self
            self._dual = d
        return d

    def delete(self, subset: int) -> "Matroid":
        return self.minor(delete=subset)

    def contract(self, subset: int) -> "Matroid":
        return self.minor(contract=subset)

    def minor(self, delete: int = 0, contract: int = 0) -> "Matroid":
        """Delete and contract the given disjoint subsets.

        The surviving elements are re-indexed by ascending original index;
        use ``surviving_labels`` for the index map.  Deleting then
        contracting commutes element-wise, so a single combined operation
        is exact: r_minor(S) = r(S | contract) - r(contract).
        """
        if delete & contract:
            raise ValueError("delete and contract sets overlap")
        if (delete | contract) & ~self.full:
            raise ValueError("minor sets use elements outside the ground set")
        survivors = self.full & ~(delete | contract)
        if survivors == 0 and self.n > 0:
            raise EverythingDeleted("minor would have an empty ground set")
        rk = self._rank_table()
        r_con = rk[contract]
        new_r = rk[self.full & ~delete] - r_con
        labels = index_tuple(survivors)
        pos = {e: i for i, e in enumerate(labels)}
        new_bases = []
        for sub in combinations(labels, new_r):
            m = mask_of(sub)
            if rk[m | contract] - r_con == new_r:
                new_bases.append(mask_of(pos[e] for e in sub))
        return Matroid(len(labels), new_bases, _trusted=True)

    # -- plumbing -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.bases == other.bases
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bases))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, r={self.r}, {len(self.bases)} bases)"

    def __reduce__(self):
        return (_rebuild, (self.n, self.bases))


def surviving_labels(n: int, removed: int) -> tuple[int, ...]:
    """Original labels of a minor's elements, ascending (index map new->old)."""
    return index_tuple(full_mask(n) & ~removed)


def compress_mask(mask: int, labels: Sequence[int]) -> int:
    """Re-express a mask over original labels in the minor's indexing."""
    out = 0
    for i, e in enumerate(labels):
        if mask >> e & 1:
            out |= 1 << i
    return out


def expand_mask(mask: int, labels: Sequence[int]) -> int:
    """Map a minor-indexed mask back to original labels."""
    out = 0
    for i, e in enumerate(labels):
        if mask >> i & 1:
            out |= 1 << e
    return out


# -- small helpers over GF(p) and graphs ------------------------------------


def _gf_rank(cols: list[tuple[int, ...]], p: int) -> int:
    """Rank over GF(p) of the given column vectors (Gaussian elimination)."""
    if not cols:
        return 0
    rows = len(cols[0])
    mat = [[cols[j][i] % p for j in range(len(cols))] for i in range(rows)]
    row = 0
    for col in range(len(cols)):
        piv = next((i for i in range(row, rows) if mat[i][col]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = pow(mat[row][col], p - 2, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for i in range(rows):
            if i != row and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[row])]
        row += 1
        if row == rows:
            break
    return row


def _forest_size(num_vertices: int, edges: Sequence[tuple[int, int]], chosen) -> int:
    """Greedy forest size over the chosen edge indices (cycle edges skipped).

    Equals len(chosen) iff the chosen edges form a forest; over all edges it
    is the rank of the cycle matroid.
    """
    parent = list(range(num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = 0
    for idx in chosen:
        u, v = edges[idx]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count += 1
    return count
