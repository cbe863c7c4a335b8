"""
The graph of reduced words of an element, with braid moves as edges.

Vertices are the reduced words of ``w`` sorted lexicographically; each edge
carries the rank-two flat on which its two words disagree.  Distances come
from plain BFS over integer adjacency lists.
"""

from __future__ import annotations

import enum
import json
import logging
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .coxeter import Element, Family, GroupSpec, Word, crossing_indices, evaluate, is_reduced
from .errors import (
    BudgetExceededError, DomainError, InvalidInputError, InvariantError, NotExhaustiveError,
    UnsupportedModeError,
)
from .moves import braid_moves
from .rank2 import Rank2Flat, flat_table, l2_mask, signature

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_BUDGET", "ALL_PAIRS_LIMIT", "WordGraph", "DistanceReport", "Accessibility",
    "DiameterMode", "DiameterBounds", "count_words", "enumerate_words", "braid_neighbors",
    "build_graph", "bfs_distances", "eccentricities", "diameter", "diameter_bounds",
    "is_accessible", "inaccessible_vertices", "antipode", "to_dot", "to_json",
]

DEFAULT_BUDGET = 5_000_000
ALL_PAIRS_LIMIT = 100_000


# --------------------------------------------------------------------------
# enumeration

def _descents(images: tuple[int, ...], gens: range) -> list[int]:
    out = []
    for a in gens:
        if a == 0:
            if images[0] < 0:
                out.append(0)
        elif images[a - 1] > images[a]:
            out.append(a)
    return out


def _times(images: tuple[int, ...], a: int) -> tuple[int, ...]:
    x = list(images)
    if a == 0:
        x[0] = -x[0]
    else:
        x[a - 1], x[a] = x[a], x[a - 1]
    return tuple(x)


def count_words(w: Element) -> int:
    """Number of reduced words, by recursion over right descents."""
    gens = w.spec.generators
    memo: dict[tuple[int, ...], int] = {}
    identity = tuple(range(1, w.spec.n + 1))

    def count(x):
        if x == identity:
            return 1
        c = memo.get(x)
        if c is None:
            c = memo[x] = sum(count(_times(x, a)) for a in _descents(x, gens))
        return c

    return count(w.images)


def _word_letters(w: Element, budget: int) -> list[tuple[int, ...]]:
    total = count_words(w)
    if total > budget:
        raise BudgetExceededError(
            f"{w} in type {w.spec} has {total} reduced words, above the vertex budget of {budget}"
            " (raise it with --budget or BRAIDGRAPH_BUDGET)",
            required=total, budget=budget)
    gens = w.spec.generators
    identity = tuple(range(1, w.spec.n + 1))
    memo: dict[tuple[int, ...], list[tuple[int, ...]]] = {identity: [()]}

    def words(x):
        out = memo.get(x)
        if out is None:
            out = []
            for a in _descents(x, gens):
                suffix = (a,)
                out.extend(u + suffix for u in words(_times(x, a)))
            memo[x] = out
        return out

    return sorted(words(w.images))


def enumerate_words(w: Element, *, budget: int = DEFAULT_BUDGET) -> list[Word]:
    """All reduced words of ``w``, sorted lexicographically."""
    return [Word(w.spec, t) for t in _word_letters(w, budget)]


def braid_neighbors(r: Word) -> list[tuple[Word, Rank2Flat]]:
    """Words one braid move away from ``r``, each with the flat the move flips."""
    if not is_reduced(r):
        raise DomainError(f"word {r} is not reduced")
    table = flat_table(r.spec)
    cross = crossing_indices(r.spec, r.letters)
    out = [(Word(r.spec, z), table.flats[table.flat_of(cross[k], cross[k + 1])])
           for z, k, _ in braid_moves(r.spec.family, r.letters)]
    return sorted(out)


# --------------------------------------------------------------------------
# the graph

@dataclass
class WordGraph:
    spec: GroupSpec
    element: Element
    vertices: list[Word]
    edges: list[tuple[int, int, Rank2Flat]]
    adjacency: list[list[int]] = field(repr=False)
    labels: dict[tuple[int, int], int] = field(repr=False)
    index: dict[tuple[int, ...], int] = field(repr=False)
    signatures: list[int] = field(repr=False)
    l2_mask: int = 0

    def __len__(self):
        return len(self.vertices)

    def vertex(self, r: Word | str | Sequence[int]) -> int:
        if isinstance(r, str):
            from .coxeter import parse_word
            r = parse_word(self.spec, r)
        letters = tuple(r.letters if isinstance(r, Word) else r)
        try:
            return self.index[letters]
        except KeyError:
            raise DomainError(f"{Word(self.spec, letters)} is not a reduced word of {self.element}") from None

    def separation_size(self, u: int, v: int) -> int:
        return (self.signatures[u] ^ self.signatures[v]).bit_count()

    @property
    def l2_size(self) -> int:
        return self.l2_mask.bit_count()

    def label(self, u: int, v: int) -> Rank2Flat:
        return flat_table(self.spec).flats[self.labels[(u, v) if u < v else (v, u)]]


def build_graph(w: Element, *, budget: int = DEFAULT_BUDGET) -> WordGraph:
    spec = w.spec
    table = flat_table(spec)
    words = _word_letters(w, budget)
    index = {t: k for k, t in enumerate(words)}
    mask = l2_mask(w)
    adjacency: list[list[int]] = [[] for _ in words]
    labels: dict[tuple[int, int], int] = {}
    signatures = [signature(spec, t, mask) for t in words]
    for u, t in enumerate(words):
        cross = crossing_indices(spec, t)
        for z, k, _ in braid_moves(spec.family, t):
            v = index.get(z)
            if v is None:
                raise InvariantError(f"braid move from {Word(spec, t)} left the set of reduced words")
            adjacency[u].append(v)
            if u < v:
                f = table.flat_of(cross[k], cross[k + 1])
                if signatures[u] ^ signatures[v] != 1 << f:
                    raise InvariantError(
                        f"edge {Word(spec, t)} -- {Word(spec, z)} is not separated by exactly its move flat")
                labels[u, v] = f
    for nb in adjacency:
        nb.sort()
    edges = [(u, v, table.flats[f]) for (u, v), f in sorted(labels.items())]
    return WordGraph(spec, w, [Word(spec, t) for t in words], edges, adjacency, labels,
                     index, signatures, mask)


# --------------------------------------------------------------------------
# distances

def _bfs(adjacency: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [-1] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adjacency[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


@dataclass
class DistanceReport:
    source: Word
    distances: dict[Word, int]
    eccentricity: int
    lower_bound_gaps: dict[Word, int]


def bfs_distances(g: WordGraph, source: Word | str) -> DistanceReport:
    s = g.vertex(source)
    dist = _bfs(g.adjacency, s)
    if min(dist) < 0:
        raise InvariantError(f"graph of {g.element} is disconnected")
    gaps = {}
    for v, d in enumerate(dist):
        gap = d - g.separation_size(s, v)
        if gap < 0:
            raise InvariantError(f"distance below separation size between {g.vertices[s]} and {g.vertices[v]}")
        gaps[g.vertices[v]] = gap
    return DistanceReport(g.vertices[s], dict(zip(g.vertices, dist)), max(dist), gaps)


_WORKER_ADJ: list[list[int]] | None = None


def _init_worker(adjacency):
    global _WORKER_ADJ
    _WORKER_ADJ = adjacency


def _ecc_chunk(sources: Sequence[int]) -> list[int]:
    return [max(_bfs(_WORKER_ADJ, s)) for s in sources]


def eccentricities(g: WordGraph, *, workers: int = 1) -> list[int]:
    """Eccentricity of every vertex (BFS from each; optionally in worker processes)."""
    n = len(g.vertices)
    if workers <= 1 or n < 256:
        return [max(_bfs(g.adjacency, s)) for s in range(n)]
    size = -(-n // (4 * workers))
    chunks = [range(a, min(n, a + size)) for a in range(0, n, size)]
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(g.adjacency,)) as ex:
        return [e for part in ex.map(_ecc_chunk, chunks) for e in part]


class DiameterMode(str, enum.Enum):
    EXACT = "exact"
    THEOREM = "theorem"


@dataclass(frozen=True)
class DiameterBounds:
    lower: int
    upper: int
    sources: int
    certificate: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def diameter(g: WordGraph, mode: DiameterMode | str = DiameterMode.EXACT, *,
             workers: int = 1, all_pairs_limit: int = ALL_PAIRS_LIMIT, seed: int = 0) -> int:
    """Diameter of ``g``.

    ``exact`` runs BFS from every vertex up to ``all_pairs_limit`` vertices;
    above that it returns a value only when :func:`diameter_bounds` pins it
    down and raises :class:`NotExhaustiveError` otherwise.  ``theorem`` is only
    valid for the longest element and returns the number of rank-two flats.
    """
    mode = DiameterMode(mode)
    if mode is DiameterMode.THEOREM:
        if not g.element.is_longest:
            raise UnsupportedModeError(
                f"the closed-form diameter only applies to the longest element, not {g.element};"
                " use exact mode or the conjecture report")
        return len(flat_table(g.spec))
    if len(g.vertices) <= all_pairs_limit:
        return max(eccentricities(g, workers=workers))
    b = diameter_bounds(g, seed=seed)
    if not b.exact:
        raise NotExhaustiveError(
            f"diameter of G({g.element}) only bounded: {b.lower} <= diam <= {b.upper} (not exhaustive)",
            lower=b.lower, upper=b.upper)
    return b.lower


def _top_two(dist: Sequence[int]) -> int:
    a = b = 0
    for d in dist:
        if d > a:
            a, b = d, a
        elif d > b:
            b = d
    return a + b


def diameter_bounds(g: WordGraph, *, sweeps: int = 4, seed: int = 0) -> DiameterBounds:
    """Certified bounds from a handful of BFS runs.

    Sources are the canonical flag word, its antipode (longest element only)
    and the endpoints of seeded double sweeps.  The lower bound is the largest
    eccentricity seen.  The upper bound is the best two-farthest-vertices
    bound over those sources, or ``|L2|`` when the longest element has a
    verified accessible vertex whose antipodal map is an equivariant
    automorphism.
    """
    from .canonical import canonical_word

    rng = random.Random(seed)
    n = len(g.vertices)
    seen: dict[int, list[int]] = {}

    def run(s):
        if s not in seen:
            seen[s] = _bfs(g.adjacency, s)
        return seen[s]

    r0 = g.vertex(canonical_word(g.element))
    run(r0)
    longest = g.element.is_longest
    if longest:
        run(g.vertex(antipode(g.vertices[r0])))
    for _ in range(sweeps):
        d = run(rng.randrange(n))
        far = max(range(n), key=d.__getitem__)
        run(far)
    lower = max(max(d) for d in seen.values())
    upper = min(n - 1, min(_top_two(d) for d in seen.values()))
    certificate = "two-farthest bound"
    if longest and upper > lower:
        for s, d in seen.items():
            if all(d[v] == g.separation_size(s, v) for v in range(n)) and _antipode_certified(g, s):
                if g.l2_size < upper:
                    upper, certificate = g.l2_size, "accessible vertex with equivariant antipode"
                break
    return DiameterBounds(lower, upper, len(seen), certificate)


def _antipode_certified(g: WordGraph, x0: int) -> bool:
    """The antipodal map is a graph automorphism and is equivariant against ``x0``."""
    table = flat_table(g.spec)
    image = [g.index[antipode_letters(g.spec, t.letters)] for t in g.vertices]
    full = table.full_mask & g.l2_mask
    for u, nbs in enumerate(g.adjacency):
        if sorted(image[v] for v in nbs) != sorted(g.adjacency[image[u]]):
            return False
    s0 = g.signatures[x0]
    return all(s0 ^ g.signatures[image[y]] == full ^ s0 ^ g.signatures[y] for y in range(len(g.vertices)))


# --------------------------------------------------------------------------
# accessibility

@dataclass(frozen=True)
class Accessibility:
    source: Word
    accessible: bool
    witness: Word | None = None
    distance: int = 0
    separation_size: int = 0

    @property
    def gap(self) -> int:
        return self.distance - self.separation_size

    def __bool__(self):
        return self.accessible


def is_accessible(g: WordGraph, r0: Word | str) -> Accessibility:
    """Whether every vertex sits at distance exactly ``|separation(r0, .)|`` from ``r0``.

    On failure the witness is the vertex with the largest gap (ties: first in order).
    """
    s = g.vertex(r0)
    dist = _bfs(g.adjacency, s)
    best = None
    for v, d in enumerate(dist):
        gap = d - g.separation_size(s, v)
        if gap and (best is None or gap > best[0]):
            best = (gap, v)
    if best is None:
        return Accessibility(g.vertices[s], True)
    v = best[1]
    return Accessibility(g.vertices[s], False, g.vertices[v], dist[v], g.separation_size(s, v))


def inaccessible_vertices(g: WordGraph) -> list[Accessibility]:
    out = []
    for r in g.vertices:
        acc = is_accessible(g, r)
        if not acc:
            out.append(acc)
    return out


# --------------------------------------------------------------------------
# antipode

def antipode_letters(spec: GroupSpec, letters: Sequence[int]) -> tuple[int, ...]:
    if spec.family is Family.A:
        return tuple(spec.n - a for a in reversed(letters))
    return tuple(reversed(letters))


def antipode(r: Word) -> Word:
    """The word crossing every hyperplane in the opposite order.

    Type A reverses and replaces each ``i`` by ``n - i``; in type B the longest
    element is central, so reversal alone does it.
    """
    if not evaluate(r).is_longest or not is_reduced(r):
        raise DomainError(f"antipode needs a reduced word of the longest element; {r} is not one")
    return Word(r.spec, antipode_letters(r.spec, r.letters))


# --------------------------------------------------------------------------
# export

def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: WordGraph) -> str:
    """Graphviz source; commutation edges are drawn bold."""
    lines = [f"graph {_dot_quote('G(' + str(g.element) + ')')} {{",
             f"  label={_dot_quote(f'reduced words of {g.element} in type {g.spec}')};"]
    for r in g.vertices:
        lines.append(f"  {_dot_quote(str(r))};")
    for u, v, flat in g.edges:
        style = ', style="bold"' if len(flat) == 2 else ""
        lines.append(f"  {_dot_quote(str(g.vertices[u]))} -- {_dot_quote(str(g.vertices[v]))}"
                     f" [label={_dot_quote(flat.name)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: WordGraph, *, diameter_value: int | None = None) -> str:
    stats = {"vertexCount": len(g.vertices), "edgeCount": len(g.edges)}
    if diameter_value is not None:
        stats["diameter"] = diameter_value
    doc = {
        "spec": str(g.spec),
        "element": str(g.element),
        "vertices": [str(r) for r in g.vertices],
        "edges": [{"u": str(g.vertices[u]), "v": str(g.vertices[v]), "label": f.name}
                  for u, v, f in g.edges],
        "stats": stats,
    }
    return json.dumps(doc, indent=2) + "\n"


def graph_for(spec: GroupSpec, element: Element | str, *, budget: int = DEFAULT_BUDGET) -> WordGraph:
    if isinstance(element, str):
        from .coxeter import parse_element
        element = parse_element(spec, element)
    if element.spec != spec:
        raise InvalidInputError(f"element {element} does not belong to {spec}")
    return build_graph(element, budget=budget)
