"""
The flag-incident reduced word of an element.

With the flag ``{x_1 = ... = x_{n-k}}`` (type A) or ``{x_1 = ... = x_{n-k} = 0}``
(type B), the level of a hyperplane is the largest coordinate index it
involves.  A word is flag-incident when its crossings have weakly increasing
level; every element has exactly one such word, and it is accessible in the
word graph.

Two constructions are provided.  :func:`canonical_word` deletes the entry of
largest absolute value and appends the suffix that walks it back into place;
:func:`greedy_flag_word` walks the gallery chamber by chamber, always
crossing the unique remaining wall of lowest level.  The first is fast and the
second is the reference it falls back on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .coxeter import (
    Element, Family, GroupSpec, Hyperplane, Word, _act, _wall, crossing_sequence, evaluate,
    inversion_set, is_reduced,
)
from .errors import InvariantError
from .rank2 import flat_table
from .wordgraph import DEFAULT_BUDGET, build_graph, is_accessible, _bfs

log = logging.getLogger(__name__)

__all__ = [
    "flag_level", "canonical_word_w0", "canonical_word", "greedy_flag_word",
    "verify_flag_incidence", "AccessibilityCertificate", "certify_accessibility",
]


def flag_level(h: Hyperplane) -> int:
    return h.j


def canonical_word_w0(spec: GroupSpec) -> Word:
    """Descending runs ``1, 21, 321, ...`` (A) or palindromic runs ``0, 101, 21012, ...`` (B)."""
    letters: list[int] = []
    if spec.family is Family.A:
        for k in range(1, spec.n):
            letters.extend(range(k, 0, -1))
    else:
        for k in range(spec.n):
            letters.extend(range(k, 0, -1))
            letters.append(0)
            letters.extend(range(1, k + 1))
    return Word(spec, tuple(letters))


def _suffix(n: int, value: int, position: int) -> list[int]:
    """Letters carrying ``n`` from position ``n`` to ``position`` with the sign of ``value``."""
    if value > 0:
        return list(range(n - 1, position - 1, -1))
    return list(range(n - 1, 0, -1)) + [0] + list(range(1, position))


def _suffix_rule(spec: GroupSpec, images: tuple[int, ...]) -> list[int]:
    letters: list[int] = []
    current = list(images)
    suffixes = []
    for m in range(spec.n, 0, -1):
        p = next(k for k, x in enumerate(current) if abs(x) == m)
        suffixes.append(_suffix(m, current[p], p + 1))
        del current[p]
    for s in reversed(suffixes):
        letters.extend(s)
    return letters


def verify_flag_incidence(r: Word) -> bool:
    """Crossings have weakly increasing flag level."""
    levels = [flag_level(h) for h in crossing_sequence(r).crossings]
    return all(a <= b for a, b in zip(levels, levels[1:]))


def greedy_flag_word(w: Element) -> Word:
    """Walk from the base chamber to ``w``, crossing the lowest-level remaining wall."""
    spec = w.spec
    remaining = set(inversion_set(w))
    images = list(range(1, spec.n + 1))
    letters = []
    while remaining:
        level = min(flag_level(h) for h in remaining)
        candidates = []
        for a in spec.generators:
            h = Hyperplane(*_wall(images, a))
            if h in remaining and flag_level(h) == level:
                candidates.append((a, h))
        if len(candidates) != 1:
            raise InvariantError(
                f"flag walk towards {w} has {len(candidates)} admissible walls at level {level}"
                f" after {Word(spec, tuple(letters))}")
        a, h = candidates[0]
        letters.append(a)
        remaining.discard(h)
        _act(images, a, spec.family)
    return Word(spec, tuple(letters))


def canonical_word(w: Element, *, check: bool = True) -> Word:
    """The unique flag-incident reduced word of ``w``."""
    r = Word(w.spec, tuple(_suffix_rule(w.spec, w.images)))
    if check and not (is_reduced(r) and evaluate(r) == w and verify_flag_incidence(r)):
        log.warning("suffix rule produced %s for %s, falling back to the flag walk", r, w)
        r = greedy_flag_word(w)
    return r


@dataclass(frozen=True)
class AccessibilityCertificate:
    element: Element
    word: Word
    accessible: bool
    vertices: int
    eccentricity: int
    l2_size: int
    witness: Word | None = None

    @property
    def passed(self) -> bool:
        if not self.accessible:
            return False
        return not self.element.is_longest or self.eccentricity == len(flat_table(self.element.spec))

    def __bool__(self):
        return self.passed


def certify_accessibility(w: Element, *, budget: int = DEFAULT_BUDGET) -> AccessibilityCertificate:
    """Check that the canonical word is accessible; for the longest element also that its eccentricity is ``|L2|``."""
    g = build_graph(w, budget=budget)
    r0 = canonical_word(w)
    acc = is_accessible(g, r0)
    ecc = max(_bfs(g.adjacency, g.vertex(r0)))
    return AccessibilityCertificate(w, r0, acc.accessible, len(g.vertices), ecc, g.l2_size, acc.witness)
