"""Command-line front end.

Human-readable lines go to stdout; the JSON report goes to ``--out`` (or to
stdout with ``--json``).  Exit status: 0 when every requested check passes,
1 when a verification fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .charpoly import LEMMAS, DomainError, algebraic_ok, check_inequality
from .graph import GraphError
from .graph6 import Graph6Error, from_graph6, to_graph6
from .reports import dumps, make_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _m_values(args) -> list[int]:
    if args.m is not None and args.m_range is not None:
        raise UsageError("give --m or --m-range, not both")
    if args.m is not None:
        return [args.m]
    if args.m_range is None:
        raise UsageError("one of --m or --m-range is required")
    try:
        parts = [int(p) for p in args.m_range.split(":")]
    except ValueError:
        raise UsageError(f"--m-range must be a:b or a:b:step, got {args.m_range!r}") from None
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0 or parts[0] > parts[1]:
        raise UsageError(f"--m-range must be a:b or a:b:step with a <= b and step > 0, got {args.m_range!r}")
    return list(range(parts[0], parts[1] + 1, parts[2]))


def _graph_args(values: list[str]) -> list[str]:
    if values:
        return values
    lines = [ln.strip() for ln in sys.stdin if ln.strip()]
    if not lines:
        raise UsageError("no graph6 input on the command line or stdin")
    return lines


# -- subcommands ---------------------------------------------------------------------


def cmd_construct(args):
    from .families import FamilyId, build, manifest

    fid = FamilyId(args.family, args.m, args.a, args.b)
    if args.family == "SKab":
        if args.a is None or args.b is None:
            raise UsageError("SKab needs --a and --b")
        fid = FamilyId("SKab", None, args.a, args.b)
    elif args.m is None:
        raise UsageError(f"{args.family} needs --m")
    g = build(fid)
    man = manifest(fid, g)
    print(man["graph6"])
    if not man["valid"]:
        for f in man["failures"]:
            print(f"FAIL {f}", file=sys.stderr)
    return man["valid"], man


def cmd_spectrum(args):
    from .spectral import spectrum, triangles_from_spectrum

    out = []
    for text in _graph_args(args.graph6):
        g = from_graph6(text)
        spec = spectrum(g)
        vals = list(spec.values)
        print(" ".join(f"{v:.{args.digits}f}" for v in vals))
        out.append({
            "graph6": to_graph6(g),
            "n": g.n,
            "m": g.m,
            "eigenvalues": vals,
            "spectral_radius": vals[0] if vals else 0.0,
            "triangles": triangles_from_spectrum(spec) if vals else 0.0,
        })
    return True, out[0] if len(out) == 1 else out


def cmd_verify_lemma(args):
    results, failed, flagged = [], [], []
    for m in _m_values(args):
        r = check_inequality(args.lemma, m, args.a, args.b)
        results.append(r.to_dict())
        if r.flagged or not algebraic_ok(r):
            flagged.append(m)
        if not r.holds:
            failed.append(m)
            print(f"m={m}: FAIL margin={r.margin!r} witness={r.witness}")
        elif not args.quiet:
            note = " (flagged)" if r.flagged else ""
            print(f"m={m}: holds margin={r.margin:.6g}{note}")
    print(f"{args.lemma}: {len(results) - len(failed)}/{len(results)} hold")
    report = {"lemma": args.lemma, "checked": len(results), "failed": failed, "flagged": flagged, "results": results}
    return not failed, report


def cmd_threshold(args):
    from .forbidden import CatalogError, get_entry, min_even_threshold, triangle_lower_bound

    try:
        entry = get_entry(args.entry)
    except (CatalogError, ValueError) as e:
        raise UsageError(str(e)) from None
    if args.m is not None and args.m % 2:
        raise UsageError(f"--m must be even, got {args.m}")
    report = {"entry": entry.name, "stated_threshold": entry.stated_threshold, "m_star": None, "monotone": None}
    ok = True
    m_eval = args.m if args.m is not None else entry.stated_threshold
    try:
        scan = min_even_threshold(entry, cap=args.cap)
        report.update(m_star=scan.m_star, monotone=scan.monotone)
        print(f"{entry.name}: m* = {scan.m_star}")
    except CatalogError as e:
        ok = False
        report["error"] = str(e)
        print(f"{entry.name}: FAIL {e}")
    cert = triangle_lower_bound(entry, m_eval)
    report["certificate"] = cert.to_dict()
    print(f"{entry.name}: lower bound at m={m_eval} is {cert.lower_bound:.6g}")
    if args.m is not None and not cert.positive:
        ok = False
    if cert.committed_max > 2 * m_eval:
        ok = False
    return ok, report


def cmd_search(args):
    from .search import extremal

    rep = extremal(args.m, jobs=args.jobs)
    for s in rep.maximizers:
        print(s)
    print(f"m={rep.m}: {rep.graphs_enumerated} graphs, lambda_max={rep.lambda_max:.10f} {' '.join(rep.identified)}")
    return all(rep.verdicts.values()), rep.to_dict()


def cmd_audit(args):
    from .search import structure_audit

    out, ok = [], True
    for text in _graph_args(args.graph6):
        a = structure_audit(from_graph6(text))
        good = a["claim_shortest_odd_cycle_5"] and bool(a["claim_at_most_one_distance_2"])
        ok &= good
        tag = "ok" if good else "VIOLATION"
        print(f"{text}: shortest odd cycle {a['shortest_odd_cycle']}, distance-2 {a.get('distance_2')}, {tag}")
        out.append(a)
    return ok, out[0] if len(out) == 1 else out


def cmd_catalog(args):
    from .forbidden import NAMES, catalog_path, regenerate_catalog

    path = catalog_path() if args.write else None
    doc = regenerate_catalog(jobs=args.jobs, path=path)
    ok = len(doc["entries"]) == len(NAMES) and all(e["realizations"] for e in doc["entries"])
    for e in doc["entries"]:
        print(f"{e['name']}: {len(e['realizations'])} realization(s) {' '.join(e['realizations'])}")
    if path is not None:
        print(f"wrote {path}")
    return ok, doc


COMMANDS = {
    "construct": cmd_construct,
    "spectrum": cmd_spectrum,
    "verify-lemma": cmd_verify_lemma,
    "threshold": cmd_threshold,
    "search": cmd_search,
    "audit": cmd_audit,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    from .families import TAGS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--json", action="store_true", help="print the JSON report to stdout")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for sharded work")

    p = argparse.ArgumentParser(prog="spectrex", description="Spectral extremal checks for triangle-free non-bipartite graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a named family member")
    c.add_argument("--family", required=True, choices=TAGS)
    c.add_argument("--m", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--b", type=int)

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues of graph6 inputs")
    s.add_argument("graph6", nargs="*")
    s.add_argument("--digits", type=int, default=6)

    v = sub.add_parser("verify-lemma", parents=[common], help="check a root inequality")
    v.add_argument("--lemma", required=True, choices=LEMMAS)
    v.add_argument("--m", type=int)
    v.add_argument("--m-range", help="a:b[:step], inclusive")
    v.add_argument("--a", type=int)
    v.add_argument("--b", type=int)
    v.add_argument("--quiet", action="store_true", help="print failures only")

    t = sub.add_parser("threshold", parents=[common], help="smallest even m with a positive triangle bound")
    t.add_argument("--entry", required=True, help="catalog name (H1..L4) or C<odd s>")
    t.add_argument("--m", type=int, help="also require a positive bound at this even m")
    t.add_argument("--cap", type=int, default=10_000)

    se = sub.add_parser("search", parents=[common], help="exhaustive extremal search")
    se.add_argument("--m", type=int, required=True)

    a = sub.add_parser("audit", parents=[common], help="shortest-odd-cycle and distance claims")
    a.add_argument("graph6", nargs="*")

    ca = sub.add_parser("catalog", parents=[common], help="regenerate forbidden-subgraph realizations")
    ca.add_argument("--write", action="store_true", help="write catalog.json into the data directory")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad flags
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        ok, report = COMMANDS[args.command](args)
    except (UsageError, DomainError, GraphError, Graph6Error, ValueError) as e:
        print(f"spectrex {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    doc = make_report(args.command, ok, report)
    text = dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
