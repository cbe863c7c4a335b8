"""
Command-line front end.

    braidgraph words --type A --n 4 --element w0
    braidgraph graph --type A --n 4 --element w0 --format dot
    braidgraph diameter --type B --n 3 --element w0 --mode exact
    braidgraph accessible --type A --n 4 --element w0 --all-sources
    braidgraph conjecture --type A --n 5 --format json

Exit codes: 0 success, 1 a checked property failed (a bug), 2 invalid input,
3 vertex budget exceeded.  ``BRAIDGRAPH_BUDGET``, ``BRAIDGRAPH_SEED`` and
``BRAIDGRAPH_WORKERS`` override the defaults of the matching flags.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import __version__
from .canonical import canonical_word, flag_level, verify_flag_incidence
from .coxeter import GroupSpec, crossing_sequence, parse_element, parse_word
from .errors import (
    BraidGraphError, BudgetExceededError, DomainError, InvalidInputError, InvariantError,
    NotExhaustiveError, UnsupportedModeError,
)
from .formulas import (
    conjecture_check, count_flats_by_geometry, l2_closed_form, table_rows,
)
from .rank2 import enumerate_flats, flat_table, hyperplane_label, l2_of
from .wordgraph import (
    ALL_PAIRS_LIMIT, DEFAULT_BUDGET, DiameterMode, bfs_distances, build_graph, diameter,
    enumerate_words, inaccessible_vertices, is_accessible, to_dot, to_json,
)

log = logging.getLogger("braidgraph")

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InvalidInputError(f"environment variable {name}={raw!r} is not an integer") from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="family", choices=["A", "B"], type=str.upper)
    common.add_argument("--n", type=int)
    common.add_argument("--element", default="w0",
                        help='"w0", type A one-line such as 3412, or a signed list such as -3,-2,-1')
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--output", "-o", help="write results here instead of stdout")
    common.add_argument("--budget", type=int, default=None,
                        help=f"vertex budget (default {DEFAULT_BUDGET})")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled steps (default 0)")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: available cores)")
    common.add_argument("--all-pairs-limit", type=int, default=ALL_PAIRS_LIMIT,
                        help="largest graph for BFS from every vertex")
    common.add_argument("--quiet", "-q", action="store_true", help="suppress progress messages")

    p = argparse.ArgumentParser(prog="braidgraph", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("words", parents=[common], help="list reduced words")
    sub.add_parser("graph", parents=[common], help="export the braid-move graph")
    d = sub.add_parser("distance", parents=[common], help="BFS distances and separation gaps")
    d.add_argument("--source", help="source word (default: canonical flag word)")
    dm = sub.add_parser("diameter", parents=[common], help="graph diameter")
    dm.add_argument("--mode", choices=[m.value for m in DiameterMode], default="exact")
    sub.add_parser("canonical", parents=[common], help="canonical flag-incident word")
    a = sub.add_parser("accessible", parents=[common], help="accessibility of a word")
    a.add_argument("--source", help="word to test (default: canonical flag word)")
    a.add_argument("--all-sources", action="store_true", help="test every vertex")
    sub.add_parser("flats", parents=[common], help="rank-two flats (of the element if given)")
    f = sub.add_parser("formulas", parents=[common], help="closed-form flat counts")
    f.add_argument("--family", help="A, B, D, E6, E7, E8, F4, H3, H4 or I2")
    sub.add_parser("conjecture", parents=[common], help="diameter bounds over every element")
    return p


def _spec(args) -> GroupSpec:
    if args.family is None or args.n is None:
        raise InvalidInputError(f"{args.command} needs --type and --n")
    return GroupSpec(args.family, args.n)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _word_list(letters) -> str:
    return "\n".join(str(r) for r in letters) + "\n"


def cmd_words(args) -> int:
    spec = _spec(args)
    w = parse_element(spec, args.element)
    words = enumerate_words(w, budget=args.budget)
    if args.format == "json":
        _emit(args, json.dumps({"spec": str(spec), "element": str(w), "count": len(words),
                                "words": [str(r) for r in words]}, indent=2) + "\n")
    else:
        _emit(args, _word_list(words))
    return EXIT_OK


def cmd_graph(args) -> int:
    spec = _spec(args)
    g = build_graph(parse_element(spec, args.element), budget=args.budget)
    if args.format == "dot":
        _emit(args, to_dot(g))
    elif args.format == "json":
        _emit(args, to_json(g))
    else:
        lines = [f"{len(g.vertices)} vertices, {len(g.edges)} edges"]
        lines += [f"{g.vertices[u]} -- {g.vertices[v]}  {f.name}" for u, v, f in g.edges]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_distance(args) -> int:
    spec = _spec(args)
    w = parse_element(spec, args.element)
    g = build_graph(w, budget=args.budget)
    src = parse_word(spec, args.source) if args.source else canonical_word(w)
    s = g.vertex(src)
    rep = bfs_distances(g, g.vertices[s])
    rows = [(str(r), rep.distances[r], rep.distances[r] - rep.lower_bound_gaps[r], rep.lower_bound_gaps[r])
            for r in g.vertices]
    if args.format == "json":
        _emit(args, json.dumps({"source": str(rep.source), "eccentricity": rep.eccentricity,
                                "rows": [dict(zip(("word", "distance", "separation", "gap"), row))
                                         for row in rows]}, indent=2) + "\n")
    else:
        out = [f"source {rep.source}, eccentricity {rep.eccentricity}",
               f"{'word':>12} {'dist':>5} {'|sep|':>5} {'gap':>4}"]
        out += [f"{a:>12} {b:>5} {c:>5} {d:>4}" for a, b, c, d in rows]
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def cmd_diameter(args) -> int:
    spec = _spec(args)
    w = parse_element(spec, args.element)
    mode = DiameterMode(args.mode)
    if mode is DiameterMode.THEOREM:
        if not w.is_longest:
            raise UnsupportedModeError(
                f"theorem mode applies only to the longest element, not {w}; use --mode exact")
        _emit(args, f"{len(flat_table(spec))}\n")
        return EXIT_OK
    g = build_graph(w, budget=args.budget)
    try:
        value = diameter(g, mode, workers=args.workers, all_pairs_limit=args.all_pairs_limit,
                         seed=args.seed)
    except NotExhaustiveError as exc:
        _emit(args, f">= {exc.lower} (not exhaustive; upper bound {exc.upper})\n")
        return EXIT_OK
    if w.is_longest and value != len(flat_table(spec)):
        raise InvariantError(f"diameter {value} of G(w0) differs from the number of rank-two flats")
    _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_canonical(args) -> int:
    spec = _spec(args)
    w = parse_element(spec, args.element)
    r = canonical_word(w)
    seq = crossing_sequence(r)
    if not verify_flag_incidence(r):
        raise InvariantError(f"canonical word {r} of {w} is not flag-incident")
    if args.format == "json":
        _emit(args, json.dumps({"element": str(w), "word": str(r),
                                "crossings": [hyperplane_label(spec, h) for h in seq.crossings],
                                "levels": [flag_level(h) for h in seq.crossings]}, indent=2) + "\n")
    else:
        _emit(args, f"{r}\n" + " ".join(hyperplane_label(spec, h) for h in seq.crossings) + "\n")
    return EXIT_OK


def cmd_accessible(args) -> int:
    spec = _spec(args)
    w = parse_element(spec, args.element)
    g = build_graph(w, budget=args.budget)
    if args.all_sources:
        bad = inaccessible_vertices(g)
        if args.format == "json":
            _emit(args, json.dumps({"vertices": len(g.vertices), "inaccessible": [
                {"word": str(a.source), "witness": str(a.witness), "distance": a.distance,
                 "separation": a.separation_size} for a in bad]}, indent=2) + "\n")
        else:
            out = [f"{len(bad)} of {len(g.vertices)} words are not accessible"]
            out += [f"{a.source}  witness {a.witness}: distance {a.distance} > |separation| {a.separation_size}"
                    for a in bad]
            _emit(args, "\n".join(out) + "\n")
        return EXIT_OK
    canonical = args.source is None
    src = canonical_word(w) if canonical else parse_word(spec, args.source)
    acc = is_accessible(g, src)
    if acc:
        _emit(args, f"{src} accessible\n")
        return EXIT_OK
    _emit(args, f"{src} not accessible: witness {acc.witness} at distance {acc.distance}"
                f" with |separation| {acc.separation_size}\n")
    if canonical:
        raise InvariantError(f"canonical flag word {src} of {w} is not L2-accessible")
    return EXIT_OK


def cmd_flats(args) -> int:
    spec = _spec(args)
    if args.element and args.element != "all":
        w = parse_element(spec, args.element)
        flats = sorted(l2_of(w))
    else:
        flats = sorted(enumerate_flats(spec))
    if args.format == "json":
        _emit(args, json.dumps([{"name": f.name, "members": [hyperplane_label(spec, h) for h in f.members]}
                                for f in flats], indent=2) + "\n")
    else:
        _emit(args, f"{len(flats)} flats\n" + "".join(
            f"{f.name}: {' '.join(hyperplane_label(spec, h) for h in f.members)}\n" for f in flats))
    return EXIT_OK


def cmd_formulas(args) -> int:
    rows = []
    if args.family:
        fam = args.family.upper()
        value = l2_closed_form(fam, args.n)
        row = {"family": fam, "parameter": args.n, "closed_form": value}
        if fam in ("A", "B", "D"):
            row["geometric"] = count_flats_by_geometry(fam, args.n)
        if fam in ("A", "B"):
            row["enumerated"] = len(enumerate_flats(GroupSpec(fam, args.n)))
        rows.append(row)
    else:
        n = args.n if args.n is not None else 4
        for r in table_rows(n):
            rows.append({"family": r.family, "parameter": r.parameter, "closed_form": r.count})
    mismatch = any(len({v for k, v in r.items() if k in ("closed_form", "geometric", "enumerated")}) > 1
                   for r in rows)
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=2) + "\n")
    else:
        out = []
        for r in rows:
            extra = "".join(f"  {k}={r[k]}" for k in ("geometric", "enumerated") if k in r)
            param = "" if r["parameter"] is None else f"(n={r['parameter']})"
            out.append(f"{r['family']}{param}: |L2| = {r['closed_form']}{extra}")
        _emit(args, "\n".join(out) + "\n")
    if mismatch:
        raise InvariantError("flat counts disagree between closed form and direct enumeration")
    return EXIT_OK


def cmd_conjecture(args) -> int:
    spec = _spec(args)
    report = conjecture_check(spec, budget=args.budget, workers=args.workers)
    _emit(args, report.to_jsonl() if args.format == "json" else report.to_text())
    if not report.passed:
        bad = report.failures()[0]
        raise InvariantError(f"diameter bounds fail at w = {bad.element}: diameter {bad.diameter},"
                             f" |L2(w)| = {bad.l2}")
    return EXIT_OK


COMMANDS = {
    "words": cmd_words, "graph": cmd_graph, "distance": cmd_distance, "diameter": cmd_diameter,
    "canonical": cmd_canonical, "accessible": cmd_accessible, "flats": cmd_flats,
    "formulas": cmd_formulas, "conjecture": cmd_conjecture,
}


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let ``--element -3,-2,-1`` through argparse, which would read the value as a flag."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a == "--element":
            value = next(it, None)
            if value is None:
                out.append(a)
            elif value[:1] == "-" and value[1:2].isdigit():
                out.append(f"--element={value}")
            else:
                out += [a, value]
        else:
            out.append(a)
    return out


def run(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = _parser().parse_args(_join_negative_values(argv))
    logging.basicConfig(stream=sys.stderr, format="%(name)s: %(message)s",
                        level=logging.WARNING if args.quiet else logging.INFO)
    try:
        if args.budget is None:
            args.budget = _env_int("BRAIDGRAPH_BUDGET", DEFAULT_BUDGET)
        if args.seed is None:
            args.seed = _env_int("BRAIDGRAPH_SEED", 0)
        if args.workers is None:
            args.workers = _env_int("BRAIDGRAPH_WORKERS", os.cpu_count() or 1)
        if args.format == "dot" and args.command != "graph":
            raise InvalidInputError("dot output is only available for the graph command")
        return COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"braidgraph: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantError as exc:
        print(f"braidgraph: property violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidInputError, DomainError, UnsupportedModeError) as exc:
        print(f"braidgraph: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BraidGraphError as exc:
        print(f"braidgraph: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
