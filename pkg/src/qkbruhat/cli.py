"""
Command-line surface for the quantum operator engine: actions, posets,
chain enumeration, operator diagrams, equivalence checks, theorem-family
verification, minimal-relation mining, and the conjecture scan.

Exit codes: 0 success (or equivalent), 1 not equivalent / verification
failure, 2 parse error, 3 cap exceeded, 4 incomplete relation cache.
"""

import argparse
import json
import os
import sys

from .perms import parse_perm, format_perm
from .qalgebra import ZERO, Zero, QElement, format_element, element_to_json
from .operators import (parse_composition, format_composition, apply_word,
                        render_diagram, word_to_json, support)
from .orders import (build_poset, interval, maximal_chains, poset_to_dot,
                     poset_to_json, _node_text)
from .equiv import (Engine, RelationDB, are_equivalent, is_zero_equivalent,
                    minimal_relations)
from . import catalog

__all__ = ["main"]

EXIT_OK = 0
EXIT_DIFFER = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_DB = 4

# compiled safety limits
MAX_N = 8
MAX_DEGREE = 5
MAX_SUPPORT = 8


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# act

def _cmd_act(args) -> int:
    word = parse_composition(args.word, order=args.word_order)
    u = parse_perm(args.perm)
    if not 1 <= args.k <= len(u) - 1:
        raise ValueError(f"column k={args.k} out of range for n={len(u)}")
    res = apply_word(word, u, args.k)
    if args.format == "json":
        print(json.dumps({"result": element_to_json(res)}, sort_keys=True))
    else:
        print(format_element(res, args.k))
    return EXIT_OK


# ---------------------------------------------------------------------------
# equiv

def _witness_json(witness):
    if witness is None:
        return None
    u, k, r1, r2 = witness
    return {"u": list(u), "k": k,
            "lhs": element_to_json(r1), "rhs": element_to_json(r2)}


def _cmd_equiv(args) -> int:
    engine = Engine(max_support=MAX_SUPPORT, jobs=args.jobs)
    if args.zero is not None:
        word = parse_composition(args.zero, order=args.word_order)
        if len(support(word)) > MAX_SUPPORT:
            raise ResourceWarning(f"support exceeds the cap {MAX_SUPPORT}")
        verdict = is_zero_equivalent(word, engine)
        equivalent = verdict.kind == "zero"
    else:
        if args.words is None or len(args.words) != 2:
            raise ValueError("equiv needs two compositions, or --zero WORD")
        w1 = parse_composition(args.words[0], order=args.word_order)
        w2 = parse_composition(args.words[1], order=args.word_order)
        if len(support(w1) | support(w2)) > MAX_SUPPORT:
            raise ResourceWarning(f"support exceeds the cap {MAX_SUPPORT}")
        verdict = are_equivalent(w1, w2, engine)
        equivalent = verdict.kind in ("zero", "nonzero-equal")
    if args.format == "json":
        print(json.dumps({"kind": verdict.kind,
                          "witness": _witness_json(verdict.witness)},
                         sort_keys=True))
    else:
        print(verdict.kind)
        if verdict.witness is not None:
            u, k, r1, r2 = verdict.witness
            print(f"witness: u={format_perm(u)} k={k}: "
                  f"{format_element(r1)} vs {format_element(r2)}")
    return EXIT_OK if equivalent else EXIT_DIFFER


# ---------------------------------------------------------------------------
# poset / chains / diagram

def _cmd_poset(args) -> int:
    if args.n > MAX_N:
        raise ResourceWarning(f"n={args.n} exceeds the cap {MAX_N}")
    p = build_poset(args.n, args.k, args.max_qdeg)
    if args.format == "dot":
        sys.stdout.write(poset_to_dot(p))
    elif args.format == "json":
        print(json.dumps(poset_to_json(p), sort_keys=True))
    else:
        print(f"poset n={p.n} k={p.k} max_qdeg={p.max_qdeg}: "
              f"{len(p.nodes)} nodes, {len(p.edges)} edges")
        for lo, up, lab in p.edges:
            mark = "~" if lab.kind == "quantum" else "-"
            print(f"  {_node_text(lo, p.k)} {mark}> {_node_text(up, p.k)}")
    return EXIT_OK


def _cmd_chains(args) -> int:
    lo = parse_perm(args.lo)
    hi = parse_perm(args.hi)
    if len(lo) != len(hi):
        raise ValueError("endpoints must have the same size")
    n = len(lo)
    if n > MAX_N:
        raise ResourceWarning(f"n={n} exceeds the cap {MAX_N}")
    p = build_poset(n, args.k, args.max_qdeg)
    zero_exp = (0,) * (n - 1)
    chains = maximal_chains(p, (zero_exp, lo), (zero_exp, hi))
    if args.format == "json":
        print(json.dumps({
            "lo": list(lo), "hi": list(hi), "k": args.k,
            "chains": [[{"a": lab.a, "b": lab.b, "kind": lab.kind}
                        for lab in ch] for ch in chains]}, sort_keys=True))
    else:
        print(f"{len(chains)} maximal chains from {format_perm(lo)} to "
              f"{format_perm(hi)} at k={args.k}")
        for ch in chains:
            print("  " + " ".join(
                f"s({min(lab.a, lab.b)},{max(lab.a, lab.b)})"
                for lab in ch))
    return EXIT_OK


def _cmd_diagram(args) -> int:
    word = parse_composition(args.word, order=args.word_order)
    fmt = "svg" if args.format == "svg" else "ascii"
    sys.stdout.write(render_diagram(word, fmt))
    return EXIT_OK


# ---------------------------------------------------------------------------
# relation cache handling

def _mining_plan(max_degree: int, max_support: int):
    """The (degree, support) levels minimal_relations would compute."""
    plan = []
    for d in range(2, max_degree + 1):
        bound = min(2 * d, max_support)
        if d >= 4:
            bound = min(bound, 2 * d - 3)
        for m in range(2, bound + 1):
            plan.append((d, m))
    return plan


def _db_covers(db: RelationDB, max_degree: int, max_support: int) -> bool:
    return all(f"d{d}m{m}" in db.stats
               for d, m in _mining_plan(max_degree, max_support))


def _load_cache(path: str, max_degree: int, max_support: int):
    """Load a relation cache, or return an exit code on failure."""
    if not os.path.exists(path):
        _err(f"relation cache {path!r} not found; "
             f"run `qkbruhat mine {max_degree} {max_support} "
             f"--cache {path}` first")
        return EXIT_DB
    db = RelationDB.load(path)
    if not _db_covers(db, max_degree, max_support):
        _err(f"relation cache {path!r} does not cover degree "
             f"{max_degree} and support {max_support}; "
             f"run `qkbruhat mine {max_degree} {max_support} "
             f"--cache {path}` first")
        return EXIT_DB
    return db


# family ids whose verification consults the mined relation database,
# with the caps the database must cover
_DB_NEEDS = {"three0e": (3, 6), "d3nz": (3, 6), "4zero": (4, 6),
             "conj": (3, 6)}


def _cmd_verify(args) -> int:
    ids = catalog.FAMILY_IDS if args.family == "all" else (args.family,)
    for fid in ids:
        if fid not in catalog.FAMILY_IDS:
            raise ValueError(f"unknown family {fid!r}; choose from "
                             f"{', '.join(catalog.FAMILY_IDS)} or 'all'")
    engine = Engine(max_support=MAX_SUPPORT, jobs=args.jobs)
    db = None
    if args.cache:
        caps = [_DB_NEEDS[f] for f in ids if f in _DB_NEEDS]
        if caps:
            need = (max(c[0] for c in caps), max(c[1] for c in caps))
            db = _load_cache(args.cache, *need)
            if isinstance(db, int):
                return db
    reports = []
    for fid in ids:
        reports.append(catalog.verify_family(
            fid, engine, db if fid in _DB_NEEDS else None))
        if fid in ("arblength-zero", "arblength-nonzero",
                   "pathovercs", "cycofnew"):
            rep = catalog.verify_minimality(fid, engine)
            rep["family"] = f"{fid} (minimality)"
            reports.append(rep)
    failed = any(r["failures"] for r in reports)
    if args.format == "json":
        print(json.dumps(reports, sort_keys=True, default=list))
    else:
        for r in reports:
            print(catalog.report_to_text(r))
        print(f"verify: {len(reports)} reports, "
              f"{'FAIL' if failed else 'all PASS'}")
    if args.figures:
        _verify_figures(args.figures, reports)
    return EXIT_DIFFER if failed else EXIT_OK


def _cmd_scan(args) -> int:
    if args.max_degree > MAX_DEGREE or args.max_support > MAX_SUPPORT:
        raise ResourceWarning(
            f"caps exceed the compiled limits ({MAX_DEGREE}, {MAX_SUPPORT})")
    engine = Engine(max_support=args.max_support, jobs=args.jobs)
    db = None
    if args.cache:
        db = _load_cache(args.cache, args.max_degree, args.max_support)
        if isinstance(db, int):
            return db
    report = catalog.conjecture_scan(args.max_degree, args.max_support,
                                     engine, db=db)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, default=list))
    else:
        print(catalog.report_to_text(report))
    if args.figures:
        _scan_figures(args.figures, report)
    return EXIT_DIFFER if report["outliers"] else EXIT_OK


def _cmd_mine(args) -> int:
    if args.degree > MAX_DEGREE or args.support > MAX_SUPPORT:
        raise ResourceWarning(
            f"caps exceed the compiled limits ({MAX_DEGREE}, {MAX_SUPPORT})")
    engine = Engine(max_support=args.support, jobs=args.jobs)
    db = minimal_relations(args.degree, args.support, engine)
    if args.cache:
        db.save(args.cache)
        print(f"wrote {len(db.records)} records to {args.cache}")
    if args.format == "json":
        print(json.dumps(db.to_json(), sort_keys=True))
    else:
        for key in sorted(db.stats):
            print(f"{key}: {db.stats[key]}")
        for r in db.records:
            rhs = "0" if r.rhs is None else format_composition(r.rhs)
            print(f"{r.orbit_id}: {format_composition(r.lhs)} = {rhs} "
                  f"(orbit size {r.orbit_size})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# figures

def _figures_dir(path: str):
    os.makedirs(path, exist_ok=True)
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _verify_figures(path: str, reports: list) -> None:
    plt = _figures_dir(path)
    names = [r["family"] for r in reports]
    counts = [r["instances"] for r in reports]
    colors = ["tab:red" if r["failures"] else "tab:green" for r in reports]
    fig, ax = plt.subplots(figsize=(8, 0.4 * len(names) + 1.5))
    ax.barh(range(len(names)), counts, color=colors)
    ax.set_yticks(range(len(names)), names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("instances checked")
    ax.set_title("family verification")
    fig.tight_layout()
    fig.savefig(os.path.join(path, "verify-families.png"), dpi=150)
    plt.close(fig)
    with open(os.path.join(path, "verify-families.tsv"), "w") as fh:
        fh.write("family\tinstances\tfailures\n")
        for r in reports:
            fh.write(f"{r['family']}\t{r['instances']}\t"
                     f"{len(r['failures'])}\n")


def _scan_figures(path: str, report: dict) -> None:
    plt = _figures_dir(path)
    levels = sorted(k for k in report["stats"] if k.startswith("d")
                    and "m" in k and "-" not in k)
    zeros = [report["stats"][k]["minimal_zero_words"] for k in levels]
    pairs = [report["stats"][k]["minimal_pairs"] for k in levels]
    words = [report["stats"][k]["total_words"] for k in levels]
    x = range(len(levels))
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar([i - 0.2 for i in x], zeros, width=0.4, label="minimal zero words")
    ax.bar([i + 0.2 for i in x], pairs, width=0.4, label="minimal pairs")
    ax.set_xticks(list(x), levels, rotation=45, fontsize=8)
    ax.set_ylabel("count")
    ax.set_title("minimal relations by degree and support")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(path, "scan-minimal.png"), dpi=150)
    plt.close(fig)
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(list(x), words, color="tab:blue")
    ax.set_yscale("log")
    ax.set_xticks(list(x), levels, rotation=45, fontsize=8)
    ax.set_ylabel("words (log)")
    ax.set_title("search-space size by degree and support")
    fig.tight_layout()
    fig.savefig(os.path.join(path, "scan-words.png"), dpi=150)
    plt.close(fig)
    with open(os.path.join(path, "scan-stats.tsv"), "w") as fh:
        cols = ("total_words", "zero_words", "nonzero_classes",
                "nontrivial_classes", "minimal_zero_words", "minimal_pairs")
        fh.write("level\t" + "\t".join(cols) + "\n")
        for k in levels:
            fh.write(k + "\t" + "\t".join(
                str(report["stats"][k][c]) for c in cols) + "\n")


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qkbruhat",
        description="quantum k-Bruhat order and operator monoid toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--word-order", choices=("display", "apply"),
                       default="display",
                       help="display: leftmost operator acts last")
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("act", help="apply a composition to a permutation")
    p.add_argument("word")
    p.add_argument("--perm", required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("equiv", help="decide equivalence of compositions")
    p.add_argument("words", nargs="*", default=None)
    p.add_argument("--zero", default=None,
                   help="test a single composition against zero")
    common(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("poset", help="truncated quantum order poset")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--max-qdeg", type=int, default=0)
    common(p, formats=("text", "json", "dot"))
    p.set_defaults(func=_cmd_poset)

    p = sub.add_parser("chains", help="maximal chains in an interval")
    p.add_argument("lo")
    p.add_argument("hi")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-qdeg", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_chains)

    p = sub.add_parser("diagram", help="render a composition diagram")
    p.add_argument("word")
    common(p, formats=("text", "svg"))
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("verify", help="verify a theorem family")
    p.add_argument("family", help="family id or 'all'")
    p.add_argument("--cache", default=None,
                   help="relation database JSON to reuse")
    p.add_argument("--figures", default=None,
                   help="directory for summary charts")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="scan minimal relations against the "
                                    "conjectured generators")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-support", type=int, default=6)
    p.add_argument("--cache", default=None)
    p.add_argument("--figures", default=None)
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("mine", help="mine minimal relations")
    p.add_argument("degree", type=int)
    p.add_argument("support", type=int)
    p.add_argument("--cache", default=None,
                   help="write the relation database here")
    common(p)
    p.set_defaults(func=_cmd_mine)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except ResourceWarning as exc:
        _err(str(exc))
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
