"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or
descriptor parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass

from . import bordism, theorems
from .bordism import bordant, bounds, sw_profile
from .manifolds import DescriptorError, dimension, euler_mod2, parse, total_sw_class

log = logging.getLogger("dold_milnor")

SUITES = ("remark1", "prop1", "prop2", "prop3", "prop4", "prop5", "result2", "result3")


@dataclass
class Report:
    """What a command produced: a JSON-able payload, its text rendering, and a status."""

    payload: object
    text: str
    status: int = 0


class UsageError(Exception):
    pass


def _manifold(text: str):
    try:
        return parse(text)
    except DescriptorError as exc:
        raise UsageError(str(exc)) from None


def _fmt_partition(w) -> str:
    return "[" + ",".join(map(str, w)) + "]"


def cmd_sw_class(args) -> Report:
    M = _manifold(args.manifold)
    w = total_sw_class(M)
    ring = w.ring
    mons = [ring.format_monomial(m) for m in w.sorted_terms()]
    payload = {
        "manifold": str(M),
        "dim": dimension(M),
        "generators": [{"name": g.name, "degree": g.degree, "truncation": g.truncation} for g in ring.generators],
        "monomials": mons,
    }
    return Report(payload, f"W({M}) = {' + '.join(mons)}")


def _profile_table(M, prof) -> str:
    lines = [f"{M}  dim {prof.dim}  bits {prof.bits}"]
    width = max((len(_fmt_partition(w)) for w in prof.partitions), default=2)
    for w, b in zip(prof.partitions, prof.bits):
        lines.append(f"  {_fmt_partition(w):<{width}}  {b}")
    return "\n".join(lines)


def cmd_sw_numbers(args) -> Report:
    M = _manifold(args.manifold)
    prof = sw_profile(M)
    return Report(bordism.profile_to_json(M, prof), _profile_table(M, prof))


def cmd_bordant(args) -> Report:
    M, N = _manifold(args.first), _manifold(args.second)
    dm, dn = dimension(M), dimension(N)
    result = bordant(M, N)
    payload = {"first": str(M), "second": str(N), "bordant": result}
    if dm != dn:
        payload["reason"] = f"dimension mismatch ({dm} vs {dn})"
        payload["mismatches"] = []
        text = f"false  ({M} has dim {dm}, {N} has dim {dn})"
    else:
        miss = bordism.mismatched_partitions(M, N)
        payload["mismatches"] = [list(w) for w in miss]
        text = "true" if result else "false  mismatched partitions: " + " ".join(map(_fmt_partition, miss))
    return Report(payload, text)


def cmd_bounds(args) -> Report:
    M = _manifold(args.manifold)
    b = bounds(M)
    return Report({"manifold": str(M), "bounds": b}, "true" if b else "false")


def cmd_euler(args) -> Report:
    M = _manifold(args.manifold)
    d = dimension(M)
    formula = euler_mod2(M)
    top = sw_profile(M)[(d,) if d else ()]
    payload = {"manifold": str(M), "euler_mod2": formula, "top_sw_number": top, "agree": formula == top}
    text = f"chi({M}) mod 2 = {formula} (formula), {top} (top SW number)"
    return Report(payload, text, 0 if formula == top else 1)


def _family_suite(tag: str, max_dim: int) -> Report:
    records = [theorems.verify_pair(p) for p in theorems.enumerate_family_pairs(tag, max_dim)]
    failed = [r for r in records if not r.bordant]
    rows = [
        {
            "milnor": str(r.pair.milnor),
            "partner": str(r.pair.partner),
            "dim": r.pair.dim,
            "parameters": r.pair.params(),
            "bordant": r.bordant,
            "mismatches": [list(w) for w in r.mismatches],
        }
        for r in records
    ]
    lines = [f"{'PASS' if r.bordant else 'FAIL'}  {r.pair}" for r in records]
    lines.append(f"{tag}: {len(records) - len(failed)} passed, {len(failed)} failed (max dim {max_dim})")
    payload = {"suite": tag, "max_dim": max_dim, "passed": len(records) - len(failed), "failed": len(failed), "pairs": rows}
    return Report(payload, "\n".join(lines), 1 if failed else 0)


def _predicate_suite(name: str, max_dim: int) -> Report:
    rows = []
    if name == "result2":
        for H in theorems.milnor_manifolds(max_dim):
            rows.append((str(H), theorems.milnor_bounds_predicate(H.m, H.n), bounds(H)))
    else:
        for d in range(max_dim + 1):
            for P in theorems.dold_manifolds(d):
                rows.append((str(P), theorems.dold_bounds_predicate(P.m, P.n), bounds(P)))
    failed = [r for r in rows if r[1] != r[2]]
    lines = [f"FAIL  {m}: predicate {p}, exact {e}" for m, p, e in failed]
    lines.append(f"{name}: {len(rows) - len(failed)} agree, {len(failed)} disagree (max dim {max_dim})")
    payload = {
        "suite": name,
        "max_dim": max_dim,
        "passed": len(rows) - len(failed),
        "failed": len(failed),
        "rows": [{"manifold": m, "predicate": p, "bounds": e} for m, p, e in rows],
    }
    return Report(payload, "\n".join(lines), 1 if failed else 0)


def _prop5_suite(max_dim: int) -> Report:
    rep = theorems.prop5_check(max_dim)
    lines = [
        f"{'PASS' if not c.dold_matches and c.euler == 0 else 'FAIL'}  {c.milnor}: chi=0, "
        f"{sum(1 for _, b, _ in c.dolds if not b)} non-bounding Dold partners, none bordant"
        for c in rep.cases
    ]
    lines += [f"VIOLATION  {v}" for v in rep.violations]
    lines.append(f"prop5: {len(rep.cases)} cases, {len(rep.violations)} violations (max dim {max_dim})")
    payload = {
        "suite": "prop5",
        "max_dim": max_dim,
        "cases": [str(c.milnor) for c in rep.cases],
        "violations": rep.violations,
    }
    return Report(payload, "\n".join(lines), 1 if rep.violations else 0)


def cmd_verify(args) -> Report:
    suite = args.suite
    if suite == "prop5":
        return _prop5_suite(args.max_dim)
    if suite.startswith("result"):
        return _predicate_suite(suite, args.max_dim)
    return _family_suite(suite.capitalize(), args.max_dim)


def cmd_scan(args) -> Report:
    rep = theorems.conjecture_scan(args.max_dim, jobs=args.jobs)
    lines = [f"{'manifold':<10} {'dim':>3}  {'bounds':<6}  {'covered_by':<10}  dold_matches"]
    for c in rep.candidates:
        lines.append(
            f"{str(c.milnor):<10} {c.dim:>3}  {str(c.bounds).lower():<6}  {c.covered_by or '-':<10}  "
            + (" ".join(map(str, c.dold_matches)) or "-")
        )
    residual = rep.residual()
    bad = rep.counterexamples()
    lines.append(f"residual non-bounding candidates: {len(residual)}; with a Dold match: {len(bad)}")
    return Report(rep.to_json(), "\n".join(lines), 1 if bad else 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, metavar="N")
    common.add_argument("--cache", metavar="PATH", default=os.environ.get("BORDISM_CACHE"),
                        help="profile cache file (default: $BORDISM_CACHE)")
    common.add_argument("--max-dim", type=int, default=16, metavar="D")

    parser = argparse.ArgumentParser(prog="dold-milnor", description="Stiefel-Whitney numbers and unoriented bordism of Dold and Milnor manifolds.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("sw-class", parents=[common], help="total Stiefel-Whitney class")
    p.add_argument("manifold")
    p.set_defaults(func=cmd_sw_class)
    p = sub.add_parser("sw-numbers", parents=[common], help="all Stiefel-Whitney numbers")
    p.add_argument("manifold")
    p.set_defaults(func=cmd_sw_numbers)
    p = sub.add_parser("bordant", parents=[common], help="decide unoriented bordism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_bordant)
    p = sub.add_parser("bounds", parents=[common], help="decide whether a manifold bounds")
    p.add_argument("manifold")
    p.set_defaults(func=cmd_bounds)
    p = sub.add_parser("euler", parents=[common], help="Euler characteristic mod 2")
    p.add_argument("manifold")
    p.set_defaults(func=cmd_euler)
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("scan", parents=[common], help="classify Milnor manifolds and search for Dold partners")
    p.set_defaults(func=cmd_scan)
    return parser


def serialize_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.payload, indent=2) + "\n"
    return report.text + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.max_dim < 0 or args.jobs < 1:
        print("error: --max-dim must be >= 0 and --jobs >= 1", file=sys.stderr)
        return 2

    cache = bordism.ProfileCache(args.cache) if args.cache else None
    if cache:
        log.info("loaded %d cached profiles from %s", cache.load(), cache.path)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    log.info("%s finished in %.2fs", args.verb, time.perf_counter() - start)
    if cache:
        cache.save()

    out = serialize_report(report, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(out)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
