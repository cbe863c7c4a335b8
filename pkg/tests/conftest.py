from __future__ import annotations

import math
from collections import deque

import pytest

from braidgraph import GroupSpec, build_graph

# Reference drawing of the A4 longest-element graph: vertex labels at their (x, y) positions.
DRAWN_POSITIONS = {
    "121321": (31, 7), "123121": (59, 7),
    "212321": (17, 16), "123212": (73, 16),
    "213231": (9, 30), "132312": (82, 30),
    "231231": (-7, 41), "132132": (97, 41),
    "213213": (35, 41), "312312": (55, 41),
    "231213": (9, 51), "312132": (82, 51),
    "232123": (17, 65), "321232": (73, 65),
    "323123": (31, 74), "321323": (59, 74),
}

INACCESSIBLE_A4 = {"213213", "231231", "132132", "312312"}


# Edges of the drawing: the outer 14-cycle in drawn order, and the two inner
# vertices each joined to the ring vertices flanking them.
DRAWN_RING = ["121321", "123121", "123212", "132312", "132132", "312132", "321232",
                "321323", "323123", "232123", "231213", "231231", "213231", "212321"]
DRAWN_INNER = [("213213", "213231"), ("213213", "231213"),
                 ("312312", "132312"), ("312312", "312132")]


def drawn_edges() -> set[frozenset[str]]:
    ring = DRAWN_RING
    edges = {frozenset((ring[k], ring[(k + 1) % len(ring)])) for k in range(len(ring))}
    return edges | {frozenset(e) for e in DRAWN_INNER}


# ---------------------------------------------------------------------------
# independent oracles

def _act(images: tuple[int, ...], a: int) -> tuple[int, ...]:
    t = list(images)
    if a == 0:
        t[0] = -t[0]
    else:
        t[a - 1], t[a] = t[a], t[a - 1]
    return tuple(t)


def cayley_lengths(family: str, n: int) -> dict[tuple[int, ...], int]:
    """Word length of every element by breadth-first search on the Cayley graph."""
    gens = range(1, n) if family == "A" else range(0, n)
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for a in gens:
            y = _act(x, a)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def staircase_syt(n: int) -> int:
    """Hook-length count of standard tableaux of shape (n-1, ..., 1)."""
    shape = list(range(n - 1, 0, -1))
    cells = sum(shape)
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in shape[i + 1:] if r > j)
            hooks *= arm + leg + 1
    return math.factorial(cells) // hooks


def brute_force_words(family: str, n: int, images: tuple[int, ...]) -> set[tuple[int, ...]]:
    """All words of minimal length reaching ``images``, by layered search."""
    lengths = cayley_lengths(family, n)
    gens = range(1, n) if family == "A" else range(0, n)
    target_len = lengths[images]
    layer = {(): tuple(range(1, n + 1))}
    for _ in range(target_len):
        nxt = {}
        for word, x in layer.items():
            for a in gens:
                y = _act(x, a)
                if lengths[y] == lengths[x] + 1:
                    nxt[word + (a,)] = y
        layer = nxt
    return {w for w, x in layer.items() if x == images}


@pytest.fixture(scope="session")
def A4():
    return GroupSpec("A", 4)


@pytest.fixture(scope="session")
def B3():
    return GroupSpec("B", 3)


@pytest.fixture(scope="session")
def g_a4(A4):
    return build_graph(A4.longest_element())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number][1])
