"""Matroid catalogs, file I/O, the counterexample search, and batch verify.

Catalog specs are comma-separated segments:

    uniform:N       all U(r, n) with 0 <= r <= n <= N
    binary:R:N      column matroids of up-to-N-point subsets of PG(R-1, 2)
    ternary:R:N     same over GF(3)
    graphs:V        cycle matroids of connected graphs on up to V vertices
    dir:PATH        every *.json matroid file under PATH, sorted by name

Any segment may carry a ``+duals`` suffix to also stream the dual of each
matroid.  Representable and graphic segments deduplicate by labeled basis
family (isomorphism reduction is out of scope); ids are assigned
sequentially over the whole stream, so a fixed spec yields a fixed stream.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path
from typing import Iterator

from .bitset import index_tuple, mask_of
from .cci import cci_spectrum
from .errors import SpecTooLarge
from .matroid import Matroid
from .reduction import verify_conjecture

FORMAT_TAG = "matroid/v1"

# desk-scale guards: the point is exhaustive checking, not big data
MAX_UNIFORM_N = 10
MAX_GRAPH_VERTICES = 6
MAX_SUBSET_ESTIMATE = 300_000


# -- matroid files -----------------------------------------------------------


def matroid_from_repr(repr_obj: dict) -> Matroid:
    kind = repr_obj.get("kind")
    if kind == "bases":
        n = repr_obj["n"]
        return Matroid.from_bases(n, repr_obj["bases"])
    if kind == "matrix":
        entries = repr_obj["entries"]
        if len(entries) != repr_obj["rows"] or any(
            len(row) != repr_obj["cols"] for row in entries
        ):
            raise ValueError("matrix entries do not match the declared shape")
        return Matroid.from_matrix(repr_obj["field"], entries)
    if kind == "uniform":
        return Matroid.uniform(repr_obj["r"], repr_obj["n"])
    if kind == "graph":
        edges = [tuple(e) for e in repr_obj["edges"]]
        return Matroid.from_graph(repr_obj["vertices"], edges)
    raise ValueError(f"unknown matroid repr kind {kind!r}")


def read_matroid_file(path: str | Path) -> tuple[Matroid, str]:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("format") != FORMAT_TAG:
        raise ValueError(f"not a {FORMAT_TAG} file: {path}")
    m = matroid_from_repr(obj["repr"])
    if m.n != obj["n"]:
        raise ValueError(f"declared n={obj['n']} but repr yields n={m.n}")
    return m, obj.get("name", Path(path).stem)


def matroid_to_obj(m: Matroid, name: str | None = None) -> dict:
    obj = {
        "format": FORMAT_TAG,
        "n": m.n,
        "repr": {"kind": "bases", "n": m.n, "bases": [list(index_tuple(b)) for b in m.bases]},
    }
    if name is not None:
        obj["name"] = name
    return obj


def write_matroid_file(path: str | Path, m: Matroid, name: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matroid_to_obj(m, name), fh, indent=1)
        fh.write("\n")


# -- generators ----------------------------------------------------------------


def _projective_points(p: int, r: int) -> list[tuple[int, ...]]:
    """Points of PG(r-1, p): nonzero vectors, first nonzero coordinate 1."""
    pts = []
    for v in product(range(p), repeat=r):
        nz = next((x for x in v if x), None)
        if nz == 1:
            pts.append(v)
    return pts


def _column_rank_table(points: list[tuple[int, ...]], p: int, max_size: int) -> list[int]:
    """rank[mask] over GF(p) for every subset of the point list with at most
    max_size + 1 elements, by incremental echelon reduction."""
    npts = len(points)
    size = 1 << npts
    rank = [0] * size
    ech: list[tuple] = [()] * size
    for mask in range(1, size):
        if mask.bit_count() > max_size:
            continue
        low = mask & -mask
        t = mask ^ low
        vec = list(points[low.bit_length() - 1])
        for piv, bv in ech[t]:
            f = vec[piv]
            if f:
                vec = [(a - f * b) % p for a, b in zip(vec, bv)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            rank[mask] = rank[t]
            ech[mask] = ech[t]
        else:
            inv = pow(vec[piv], p - 2, p)
            norm = tuple((x * inv) % p for x in vec)
            rank[mask] = rank[t] + 1
            ech[mask] = ech[t] + ((piv, norm),)
    return rank


def _representable_segment(p: int, max_rank: int, max_n: int) -> Iterator[tuple[str, Matroid]]:
    points = _projective_points(p, max_rank)
    npts = len(points)
    estimate = sum(_comb(npts, i) for i in range(max_n + 1))
    if estimate > MAX_SUBSET_ESTIMATE:
        raise SpecTooLarge(
            f"GF({p}) rank<={max_rank} n<={max_n} would enumerate ~{estimate} subsets"
        )
    rank = _column_rank_table(points, p, max_n)
    seen: set[tuple] = set()
    field_name = {2: "binary", 3: "ternary", 5: "gf5", 7: "gf7"}[p]
    for n in range(max_n + 1):
        for combo in combinations(range(npts), n):
            amask = mask_of(combo)
            r = rank[amask]
            pos = {e: i for i, e in enumerate(combo)}
            if r == 0:
                fam = (0,)
            else:
                fam = tuple(
                    mask_of(pos[e] for e in sub)
                    for sub in combinations(combo, r)
                    if rank[mask_of(sub)] == r
                )
            key = (n, fam)
            if key in seen:
                continue
            seen.add(key)
            name = f"{field_name}[{','.join(str(c) for c in combo)}]"
            yield name, Matroid(n, fam, _trusted=True)


def _connected(v: int, edges: list[tuple[int, int]]) -> bool:
    if v == 1:
        return True
    parent = list(range(v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    root = find(0)
    return all(find(i) == root for i in range(v))


def _graphs_segment(max_vertices: int) -> Iterator[tuple[str, Matroid]]:
    if max_vertices > MAX_GRAPH_VERTICES:
        raise SpecTooLarge(f"graphs over {MAX_GRAPH_VERTICES} vertices are beyond desk scale")
    seen: set[tuple] = set()
    for v in range(1, max_vertices + 1):
        all_edges = list(combinations(range(v), 2))
        for emask in range(1 << len(all_edges)):
            edges = [all_edges[i] for i in range(len(all_edges)) if emask >> i & 1]
            if not _connected(v, edges):
                continue
            m = Matroid.from_graph(v, edges)
            key = (m.n, m.bases)
            if key in seen:
                continue
            seen.add(key)
            name = f"graph{v}[{','.join(f'{a}{b}' for a, b in edges)}]"
            yield name, m


def _uniform_segment(max_n: int) -> Iterator[tuple[str, Matroid]]:
    if max_n > MAX_UNIFORM_N:
        raise SpecTooLarge(f"uniform catalogs stop at n = {MAX_UNIFORM_N}")
    for n in range(max_n + 1):
        for r in range(n + 1):
            yield f"uniform({r},{n})", Matroid.uniform(r, n)


def _dir_segment(path: str) -> Iterator[tuple[str, Matroid]]:
    base = Path(path)
    for fp in sorted(base.glob("*.json")):
        m, name = read_matroid_file(fp)
        yield name, m


def _comb(n: int, k: int) -> int:
    import math

    return math.comb(n, k) if 0 <= k <= n else 0


def _parse_segment(segment: str) -> tuple[Iterator[tuple[str, Matroid]], bool]:
    seg = segment.strip()
    with_duals = seg.endswith("+duals")
    if with_duals:
        seg = seg[: -len("+duals")]
    parts = seg.split(":")
    kind = parts[0]
    try:
        if kind == "uniform" and len(parts) == 2:
            return _uniform_segment(int(parts[1])), with_duals
        if kind in ("binary", "ternary") and len(parts) == 3:
            p = 2 if kind == "binary" else 3
            return _representable_segment(p, int(parts[1]), int(parts[2])), with_duals
        if kind == "graphs" and len(parts) == 2:
            return _graphs_segment(int(parts[1])), with_duals
        if kind == "dir" and len(parts) >= 2:
            return _dir_segment(":".join(parts[1:])), with_duals
    except ValueError as exc:
        raise ValueError(f"bad catalog segment {segment!r}: {exc}") from exc
    raise ValueError(f"unknown catalog segment {segment!r}")


def gen_catalog(spec: str) -> Iterator[tuple[str, str, Matroid]]:
    """Stream (id, name, matroid) for a catalog spec; ids are sequential."""
    counter = 0
    for segment in spec.split(","):
        stream, with_duals = _parse_segment(segment)
        for name, m in stream:
            yield f"m{counter:06d}", name, m
            counter += 1
            if with_duals:
                yield f"m{counter:06d}", f"dual({name})", m.dual()
                counter += 1


# -- counterexample search ------------------------------------------------------


def find_counterexample_k1(n: int = 6, r: int = 3) -> list[Matroid]:
    """All simple rank-3 matroids on 6 elements whose CCI spectrum contains
    4 but not 3 (so the size-(k-1) strengthening of the reduction fails at
    k = 4 while the size-(k-2) statement holds).

    Simple rank-3 matroids correspond exactly to families of "lines"
    (subsets of size >= 3, pairwise meeting in at most one point): the
    dependent triples are those inside a line.  The search enumerates all
    such families.
    """
    if (n, r) != (6, 3):
        raise ValueError("the counterexample search is fixed at n=6, r=3")
    ground = list(range(n))
    candidates = [
        frozenset(c)
        for size in (3, 4, 5)
        for c in combinations(ground, size)
    ]
    compatible = {
        (i, j): len(candidates[i] & candidates[j]) <= 1
        for i in range(len(candidates))
        for j in range(i + 1, len(candidates))
    }
    triples = list(combinations(ground, 3))
    results = []

    def matroid_of(lines: list[int]) -> Matroid | None:
        fams = [candidates[i] for i in lines]
        bases = [
            mask_of(t)
            for t in triples
            if not any(set(t) <= line for line in fams)
        ]
        if not bases:
            return None  # rank below 3
        return Matroid(n, bases, _trusted=True)

    def dfs(start: int, chosen: list[int]) -> None:
        m = matroid_of(chosen)
        if m is not None:
            sizes = cci_spectrum(m).sizes
            if 4 in sizes and 3 not in sizes:
                results.append(m)
        for i in range(start, len(candidates)):
            if all(compatible[(j, i)] for j in chosen):
                chosen.append(i)
                dfs(i + 1, chosen)
                chosen.pop()

    dfs(0, [])
    uniq = sorted(set(results), key=lambda m: m.bases)
    return uniq


# -- batch verification -----------------------------------------------------------


def record_for(ident: str, name: str, m: Matroid) -> dict:
    """One report record; field order is fixed for byte-stable output."""
    report = verify_conjecture(m)
    entries = []
    for e in report.entries:
        entry = {
            "k": e.k,
            "satisfied": e.satisfied,
            "rule": e.rule,
            "oracle_agrees": e.oracle_agrees,
            "certificate": e.certificate.as_dict() if e.certificate else None,
            "index_map": list(e.index_map) if e.index_map else None,
        }
        entries.append(entry)
    return {
        "id": ident,
        "name": name,
        "n": m.n,
        "rank": m.r,
        "cci_sizes": list(report.spectrum),
        "entries": entries,
        "anomalies": report.anomalies,
        "violations": report.violations,
    }


def _verify_worker(item: tuple[str, str, int, tuple[int, ...]]) -> str:
    ident, name, n, bases = item
    m = Matroid(n, bases, _trusted=True)
    return json.dumps(record_for(ident, name, m), separators=(",", ":"))


@dataclass
class RunSummary:
    total: int
    satisfied: int
    rules: Counter
    violations: int
    anomalies: int
    elapsed: float

    def ok(self) -> bool:
        return self.violations == 0 and self.anomalies == 0


def run_verify(spec: str, jobs: int = 1, out: str | Path = "report.jsonl") -> RunSummary:
    """Verify the whole catalog, streaming JSON Lines records ordered by id.

    An existing report is resumed: record ids already present are skipped
    and the remaining ones appended, so an interrupted run can be finished
    by re-running with the same spec and path.  Timing is reported in the
    summary only; records are byte-stable across runs and job counts.
    """
    out = Path(out)
    done: set[str] = set()
    summary = RunSummary(0, 0, Counter(), 0, 0, 0.0)
    if out.exists():
        with open(out, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    done.add(json.loads(line)["id"])
                    _tally(summary, line)
    t0 = time.monotonic()
    items = [
        (ident, name, m.n, m.bases)
        for ident, name, m in gen_catalog(spec)
        if ident not in done
    ]
    with open(out, "a", encoding="utf-8") as fh:
        if jobs > 1:
            import multiprocessing as mp

            with mp.Pool(jobs) as pool:
                lines = pool.imap(_verify_worker, items, chunksize=16)
                for line in lines:
                    _tally(summary, line)
                    fh.write(line + "\n")
        else:
            for item in items:
                line = _verify_worker(item)
                _tally(summary, line)
                fh.write(line + "\n")
    summary.elapsed = time.monotonic() - t0
    return summary


def _tally(summary: RunSummary, line: str) -> None:
    rec = json.loads(line)
    summary.total += 1
    if all(e["satisfied"] for e in rec["entries"]):
        summary.satisfied += 1
    for e in rec["entries"]:
        if e["rule"]:
            summary.rules[e["rule"]] += 1
    summary.violations += len(rec["violations"])
    summary.anomalies += len(rec["anomalies"])
