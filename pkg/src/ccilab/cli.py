"""Command-line interface.

Exit codes: 0 success, 1 a violation/anomaly/check failure was found,
2 usage error (bad arguments, unreadable file, malformed input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bitset import index_tuple, mask_of
from .catalog import (
    find_counterexample_k1,
    matroid_to_obj,
    read_matroid_file,
    run_verify,
)
from .cci import cci_spectrum, ccis_via_pairs, check_duality_closure, check_minor_closure
from .envelope import build_envelope, is_envelope
from .errors import CCILabError
from .matroid import Matroid
from .partitions import all_partitions
from .reduction import reduce_envelope


def _parse_elems(text: str) -> int:
    try:
        return mask_of(int(tok) for tok in text.split(",") if tok != "")
    except ValueError:
        print(f"error: expected comma-separated element indices, got {text!r}", file=sys.stderr)
        raise SystemExit(2)


def _load(path: str) -> tuple[Matroid, str]:
    try:
        return read_matroid_file(path)
    except (OSError, ValueError, json.JSONDecodeError, CCILabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _witness_envelope(m: Matroid, x: int):
    """Envelope for a given CCI set, via its canonical witness pair."""
    for c in m.circuits():
        if x & ~c:
            continue
        for cc in m.cocircuits():
            if (c & cc) == x:
                return build_envelope(m, c, cc)
    print(f"error: {sorted(index_tuple(x))} is not a CCI of this matroid", file=sys.stderr)
    raise SystemExit(2)


def cmd_info(args) -> int:
    m, name = _load(args.file)
    spectrum = cci_spectrum(m)
    out = {
        "name": name,
        "n": m.n,
        "rank": m.r,
        "bases": len(m.bases),
        "cci_sizes": list(spectrum.sizes),
    }
    status = 0
    if args.trials:
        dual_rep = check_duality_closure(m)
        minor_rep = check_minor_closure(m, args.trials, args.seed)
        out["duality_closure"] = dual_rep.passed
        out["minor_closure"] = minor_rep.passed
        if not (dual_rep.passed and minor_rep.passed):
            status = 1
    if args.json:
        print(json.dumps(out))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return status


def cmd_ccis(args) -> int:
    m, _ = _load(args.file)
    fam = ccis_via_pairs(m)
    if args.json:
        print(json.dumps([list(index_tuple(x)) for x in fam]))
    else:
        for x in fam:
            print(",".join(map(str, index_tuple(x))))
    return 0


def cmd_envelope(args) -> int:
    m, _ = _load(args.file)
    circuit = _parse_elems(args.circuit)
    cocircuit = _parse_elems(args.cocircuit)
    try:
        env = build_envelope(m, circuit, cocircuit)
    except CCILabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    obj = {
        "matroid": matroid_to_obj(env.matroid),
        "x": list(index_tuple(env.x)),
        "k": env.k,
        "index_map": list(env.index_map),
    }
    if args.json:
        print(json.dumps(obj))
    else:
        print(f"envelope on {env.matroid.n} elements, rank {env.matroid.r}")
        print(f"x: {list(index_tuple(env.x))}")
        print(f"index_map: {list(env.index_map)}")
    return 0


def cmd_partitions(args) -> int:
    m, _ = _load(args.file)
    x = _parse_elems(args.cci)
    if m.n == 2 * x.bit_count() - 2 and is_envelope(m, x)[0]:
        from .envelope import Envelope

        env = Envelope(m, x, tuple(range(m.n)))
    else:
        env = _witness_envelope(m, x)
    hp, cp = all_partitions(env)
    fam = cp if args.dual else hp
    rows = [
        {
            "kind": p.kind,
            "j": list(index_tuple(p.j)),
            "classes": [list(index_tuple(c)) for c in p.classes],
            "type": list(p.type_vec),
        }
        for p in fam
    ]
    if args.json:
        print(json.dumps({"index_map": list(env.index_map), "partitions": rows}))
    else:
        print(f"index_map: {list(env.index_map)}")
        for row in rows:
            print(f"J={row['j']} type={tuple(row['type'])} classes={row['classes']}")
    return 0


def cmd_reduce(args) -> int:
    m, _ = _load(args.file)
    x = _parse_elems(args.cci)
    if m.n == 2 * x.bit_count() - 2 and is_envelope(m, x)[0]:
        from .envelope import Envelope

        env = Envelope(m, x, tuple(range(m.n)))
    else:
        env = _witness_envelope(m, x)
    try:
        cert = reduce_envelope(env)
    except CCILabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    obj = cert.as_dict()
    obj["index_map"] = list(env.index_map)
    if args.json:
        print(json.dumps(obj))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")
    return 0


def cmd_verify(args) -> int:
    jobs = args.jobs or int(os.environ.get("CCILAB_JOBS", "1"))
    try:
        summary = run_verify(args.catalog, jobs=jobs, out=args.report)
    except (CCILabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    obj = {
        "total": summary.total,
        "satisfied": summary.satisfied,
        "rules": dict(sorted(summary.rules.items())),
        "violations": summary.violations,
        "anomalies": summary.anomalies,
        "elapsed_s": round(summary.elapsed, 3),
    }
    if args.json:
        print(json.dumps(obj))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")
    return 0 if summary.ok() else 1


def cmd_counterexample(args) -> int:
    found = find_counterexample_k1()
    if args.json:
        print(json.dumps([matroid_to_obj(m) for m in found]))
    else:
        print(f"{len(found)} matroids on 6 elements with a size-4 CCI and no size-3 CCI")
        for m in found:
            print(f"  rank {m.r}, bases {[list(index_tuple(b)) for b in m.bases]}")
    return 0 if found else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ccilab",
        description="circuit-cocircuit intersection computations on small matroids",
    )
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="rank, basis count, CCI size spectrum")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=0,
                   help="also run duality/minor closure checks on this many random minors")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("ccis", help="list all circuit-cocircuit intersections")
    p.add_argument("file")
    p.set_defaults(func=cmd_ccis)

    p = sub.add_parser("envelope", help="shrink to an envelope around a CCI")
    p.add_argument("file")
    p.add_argument("--circuit", required=True, help="comma-separated element indices")
    p.add_argument("--cocircuit", required=True)
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("partitions", help="(co)hyperplane-partitions of a CCI's envelope")
    p.add_argument("file")
    p.add_argument("--cci", required=True)
    p.add_argument("--dual", action="store_true", help="show the cohyperplane side")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("reduce", help="certificate for a size-(k-2) CCI")
    p.add_argument("file")
    p.add_argument("--cci", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="batch-verify a catalog, stream a JSONL report")
    p.add_argument("--catalog", required=True)
    p.add_argument("--jobs", type=int, default=0,
                   help="worker processes (default: CCILAB_JOBS or 1)")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample",
                       help="6-element rank-3 matroids with a size-4 but no size-3 CCI")
    p.set_defaults(func=cmd_counterexample)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
