"""
Acceptance criteria, one test per criterion.

Each check records a PASS/FAIL line (with timing) that the terminal summary
prints at the end of the run; ``python tests/test_acceptance.py`` prints the
same lines without pytest.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from braidgraph import (  # noqa: E402
    Element, GroupSpec, all_elements, antipode, build_graph, canonical_word, crossing_sequence,
    diameter, enumerate_words, is_accessible, l2_closed_form, separation, verify_flag_incidence,
    verify_metric_axioms,
)
from braidgraph.coxeter import hyperplanes  # noqa: E402
from braidgraph.formulas import conjecture_check, count_flats_by_geometry  # noqa: E402
from braidgraph.rank2 import enumerate_flats, flat_table, l2_mask  # noqa: E402
from braidgraph.wordgraph import bfs_distances, inaccessible_vertices  # noqa: E402

from conftest import DRAWN_POSITIONS, INACCESSIBLE_A4, drawn_edges  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _clear_caches():
    flat_table.cache_clear()
    hyperplanes.cache_clear()


# ---------------------------------------------------------------------------

def check_1():
    _clear_caches()
    with Timer() as t:
        spec = GroupSpec("A", 4)
        words = enumerate_words(spec.longest_element())
        g = build_graph(spec.longest_element())
    names = [str(r) for r in words]
    built = {frozenset((str(g.vertices[u]), str(g.vertices[v]))) for u, v, _ in g.edges}
    ok = (sorted(names) == sorted(DRAWN_POSITIONS) and len(names) == 16
          and built == drawn_edges() and t.elapsed < 1.0)
    return ok, f"16 words {'match' if set(names) == set(DRAWN_POSITIONS) else 'DIFFER'}, " \
               f"{len(built)} edges {'equal' if built == drawn_edges() else 'DIFFER from'} the drawing, " \
               f"{t.elapsed:.3f}s (< 1s)"


def check_2():
    with Timer() as t:
        got = {n: diameter(build_graph(GroupSpec("A", n).longest_element())) for n in (3, 4, 5)}
    want = {n: l2_closed_form("A", n) for n in (3, 4, 5)}
    ok = got == want and t.elapsed < 10
    return ok, f"diameters {got} vs closed form {want}, {t.elapsed:.2f}s (< 10s)"


def check_3():
    with Timer() as t:
        got = {n: diameter(build_graph(GroupSpec("B", n).longest_element())) for n in (2, 3)}
    want = {n: l2_closed_form("B", n) for n in (2, 3)}
    ok = got == want == {2: 1, 3: 13} and t.elapsed < 10
    return ok, f"diameters {got} vs closed form {want}, {t.elapsed:.2f}s (< 10s)"


def check_4():
    g = build_graph(GroupSpec("A", 4).longest_element())
    bad = {str(a.source) for a in inaccessible_vertices(g)}
    witnesses_ok = True
    for word in INACCESSIBLE_A4:
        rep = bfs_distances(g, word)
        if not any(d == 7 and d - rep.lower_bound_gaps[r] == 5 for r, d in rep.distances.items()):
            witnesses_ok = False
    others = [r for r in g.vertices if str(r) not in INACCESSIBLE_A4]
    others_ok = len(others) == 12 and all(is_accessible(g, r) for r in others)
    ok = bad == INACCESSIBLE_A4 and witnesses_ok and others_ok
    return ok, f"inaccessible = {sorted(bad)}, distance-7/separation-5 witnesses " \
               f"{'found' if witnesses_ok else 'MISSING'}, other 12 accessible: {others_ok}"


def check_5():
    specs = [GroupSpec("A", n) for n in (2, 3, 4, 5)] + [GroupSpec("B", n) for n in (1, 2, 3)]
    failures, count = [], 0
    with Timer() as t:
        for spec in specs:
            for w in all_elements(spec):
                count += 1
                g = build_graph(w)
                flagged = [r for r in g.vertices if verify_flag_incidence(r)]
                r0 = canonical_word(w)
                if flagged != [r0] or not is_accessible(g, r0):
                    failures.append(str(w))
    ok = not failures and t.elapsed < 300
    return ok, f"{count} elements, {len(failures)} failures, {t.elapsed:.1f}s (< 300s)"


def check_6():
    r = canonical_word(Element(GroupSpec("A", 6), (3, 1, 6, 4, 2, 5)))
    text = "(" + ",".join(map(str, r.letters)) + ")"
    cross = "(" + ",".join(str(h) for h in crossing_sequence(r)) + ")"
    ok = text == "(2,1,3,5,4,3)" and cross == "(H23,H13,H24,H56,H26,H46)"
    return ok, f"word {text}, crossings {cross}"


def check_7():
    out = []
    for w, want in ((Element(GroupSpec("A", 4), (3, 4, 1, 2)), (2, 1, 2)),
                    (Element(GroupSpec("B", 3), (-3, -2, -1)), (2, 1, 3))):
        g = build_graph(w)
        out.append(((len(g.vertices), diameter(g), l2_mask(w).bit_count()), want))
    ok = all(got == want for got, want in out)
    return ok, "; ".join(f"(words, diam, |L2|) = {got}" for got, _ in out)


def check_8():
    specs = [GroupSpec("A", n) for n in (2, 3, 4, 5)] + [GroupSpec("B", n) for n in (1, 2, 3)]
    parts, ok = [], True
    with Timer() as t:
        for spec in specs:
            rep = conjecture_check(spec)
            lo, hi = rep.extremal()
            ok &= rep.passed and not any(r.floor_only for r in rep.rows)
            if lo is not None:
                ok &= "min ratio" in rep.to_text()
                parts.append(f"{spec}: {len(rep.rows)} ok, ratio {lo.ratio}@{lo.element}..{hi.ratio}@{hi.element}")
            else:
                parts.append(f"{spec}: {len(rep.rows)} ok")
    ok &= t.elapsed < 300
    return ok, "; ".join(parts) + f"; {t.elapsed:.1f}s (< 300s)"


def check_9():
    specs = [GroupSpec("A", n) for n in (2, 3, 4, 5)] + [GroupSpec("B", n) for n in (1, 2, 3)]
    checks, failures, sampled = 0, 0, 0
    for spec in specs:
        for w in all_elements(spec):
            rep = verify_metric_axioms(enumerate_words(w), exhaustive_threshold=200, samples=5000)
            checks += rep.checks
            failures += len(rep.failures)
            sampled += not rep.exhaustive
    ok = checks >= 10_000 and failures == 0
    return ok, f"{checks} checks ({sampled} sampled word sets), {failures} failures"


def check_10():
    rows = []
    with Timer() as t:
        for n in range(2, 13):
            a = (len(enumerate_flats(GroupSpec("A", n))), l2_closed_form("A", n), count_flats_by_geometry("A", n))
            rows.append(len(set(a)) == 1)
        for n in range(1, 13):
            b = (len(enumerate_flats(GroupSpec("B", n))), l2_closed_form("B", n), count_flats_by_geometry("B", n))
            rows.append(len(set(b)) == 1)
        for n in range(2, 13):
            rows.append(count_flats_by_geometry("D", n) == l2_closed_form("D", n))
        d4 = count_flats_by_geometry("D", 4)
    ok = all(rows) and d4 == 34 and t.elapsed < 30
    return ok, f"{sum(rows)}/{len(rows)} family/n rows agree, D4 = {d4}, {t.elapsed:.2f}s (< 30s)"


def _equivariance(spec, exhaustive):
    g = build_graph(spec.longest_element())
    n = len(g.vertices)
    image = [g.vertex(antipode(r)) for r in g.vertices]
    fails = sum(1 for k in range(n) if image[image[k]] != k)
    edges = {frozenset((u, v)) for u, v, _ in g.edges}
    fails += sum(1 for u, v, _ in g.edges if frozenset((image[u], image[v])) not in edges)
    full = g.l2_mask
    pairs = 0
    if exhaustive:
        table_flats = enumerate_flats(spec)
        for a in g.vertices:
            for b in g.vertices:
                pairs += 1
                if separation(a, g.vertices[image[g.vertex(b)]]).flats != table_flats - separation(a, b).flats:
                    fails += 1
    else:
        sig = g.signatures
        for a in range(n):
            for b in range(n):
                pairs += 1
                if sig[a] ^ sig[image[b]] != full ^ sig[a] ^ sig[b]:
                    fails += 1
        rng = random.Random(0)
        for _ in range(2000):
            a, b = g.vertices[rng.randrange(n)], g.vertices[rng.randrange(n)]
            pairs += 1
            if separation(a, antipode(b)).bits != full ^ separation(a, b).bits:
                fails += 1
    return fails, pairs


def check_11():
    total_fail, total_pairs = 0, 0
    for family, n in (("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 1), ("B", 2), ("B", 3)):
        f, p = _equivariance(GroupSpec(family, n), exhaustive=n <= 4)
        total_fail += f
        total_pairs += p
    return total_fail == 0, f"{total_pairs} pairs checked, {total_fail} failures"


CRITERIA = {
    1: ("reference drawing of A4 reproduced", check_1),
    2: ("type A diameter = closed form, n = 3..5", check_2),
    3: ("type B diameter = closed form, n = 2..3", check_3),
    4: ("inaccessible words of A4 w0", check_4),
    5: ("canonical word unique and accessible, exhaustive", check_5),
    6: ("canonical word pin for 316425", check_6),
    7: ("single-edge examples", check_7),
    8: ("diameter bounds for every element", check_8),
    9: ("metric axiom suite", check_9),
    10: ("flat-count cross-validation", check_10),
    11: ("antipode equivariance and automorphism", check_11),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    title, check = CRITERIA[number]
    ok, detail = check()
    record(number, title, ok, detail)
    print(RESULTS[number][1])
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, (title, check) in sorted(CRITERIA.items()):
        ok, detail = check()
        record(number, title, ok, detail)
        print(RESULTS[number][1], flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
