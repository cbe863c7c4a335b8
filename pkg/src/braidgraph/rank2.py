"""
Rank-two flats, induced crossing orders and separation sets.

A rank-two flat is stored as the sorted tuple of hyperplanes through a common
codimension-two subspace.  Flats are indexed canonically per group spec, and
separation sets are bitsets over that index.

Each word of ``w`` crosses the members of a fully inverted flat in one of two
mutually reversed orders, so one bit per flat (is the first member crossed
after the second?) records the order.  :func:`signature` packs those bits;
:func:`separation` computes the definition directly by comparing restricted
crossing sequences and is the reference the signatures are tested against.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .coxeter import (
    Element, Family, GroupSpec, Hyperplane, Word,
    crossing_indices, crossing_sequence, evaluate, hyperplane_index, hyperplanes, inversion_set,
)
from .errors import DomainError
from .moves import braid_moves

__all__ = [
    "Rank2Flat", "InducedOrder", "SeparationSet", "FlatTable", "MetricReport",
    "flat_table", "enumerate_flats", "l2_of", "induced_order", "separation",
    "signature", "verify_metric_axioms", "hyperplane_label",
]


def hyperplane_label(spec: GroupSpec, h: Hyperplane) -> str:
    return str(h) if spec.family is Family.A else h.equation()


@dataclass(frozen=True, order=True)
class Rank2Flat:
    spec: GroupSpec
    members: tuple[Hyperplane, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, h):
        return h in self.members

    @property
    def name(self) -> str:
        if self.spec.family is Family.A:
            return _type_a_name(self.members)
        coords = [h for h in self.members if h.is_coordinate]
        shown = coords if len(coords) == 2 else list(self.members[:2])
        return "{" + ",".join(h.equation() for h in shown) + "}"

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Rank2Flat({self.spec}, {self.name})"


def _type_a_name(members: Sequence[Hyperplane]) -> str:
    wide = any(h.j > 9 for h in members)
    join = "-".join if wide else "".join
    if len(members) == 3:
        idx = sorted({h.i for h in members} | {h.j for h in members})
        return "X_{" + join(str(k) for k in idx) + "}"
    a, b = members
    return "X_{" + join((str(a.i), str(a.j))) + "," + join((str(b.i), str(b.j))) + "}"


@dataclass(frozen=True)
class InducedOrder:
    flat: Rank2Flat
    order: tuple[Hyperplane, ...]


class FlatTable:
    """Canonically indexed rank-two flats of one group spec."""

    def __init__(self, spec: GroupSpec, flats: Sequence[Rank2Flat]):
        self.spec = spec
        self.hyperplanes = hyperplanes(spec)
        self.hindex = hyperplane_index(spec)
        self.flats: tuple[Rank2Flat, ...] = tuple(sorted(flats))
        self.index = {f: k for k, f in enumerate(self.flats)}
        # member hyperplane indices, sorted
        self.members: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(self.hindex[h] for h in f.members)) for f in self.flats)
        self.pair_to_flat: dict[tuple[int, int], int] = {}
        for k, mem in enumerate(self.members):
            for a, b in itertools.combinations(mem, 2):
                self.pair_to_flat[a, b] = k
        self.full_mask = (1 << len(self.flats)) - 1

    def __len__(self):
        return len(self.flats)

    def flat_of(self, a: int, b: int) -> int:
        return self.pair_to_flat[(a, b) if a < b else (b, a)]

    def mask_of(self, flats: Iterable[Rank2Flat]) -> int:
        bits = 0
        for f in flats:
            bits |= 1 << self.index[f]
        return bits

    def from_mask(self, bits: int) -> frozenset[Rank2Flat]:
        return frozenset(self.flats[k] for k in _iter_bits(bits))

    def inverted_mask(self, inverted: Iterable[int]) -> int:
        """Bitset of flats all of whose members are among the given hyperplane indices."""
        inv = set(inverted)
        bits = 0
        for k, mem in enumerate(self.members):
            if all(h in inv for h in mem):
                bits |= 1 << k
        return bits


def _iter_bits(bits: int):
    k = 0
    while bits:
        if bits & 1:
            yield k
        bits >>= 1
        k += 1


@dataclass(frozen=True)
class SeparationSet:
    table: FlatTable = field(repr=False, compare=False)
    bits: int

    @property
    def flats(self) -> frozenset[Rank2Flat]:
        return self.table.from_mask(self.bits)

    def __len__(self):
        return self.bits.bit_count()

    def __iter__(self):
        return iter(sorted(self.flats))

    def __contains__(self, flat):
        k = self.table.index.get(flat)
        return k is not None and bool(self.bits >> k & 1)

    def __xor__(self, other: SeparationSet) -> SeparationSet:
        return SeparationSet(self.table, self.bits ^ other.bits)

    def __eq__(self, other):
        if isinstance(other, SeparationSet):
            return self.bits == other.bits
        if isinstance(other, (set, frozenset)):
            return self.flats == other
        return NotImplemented

    def __hash__(self):
        return hash(self.bits)

    def names(self) -> list[str]:
        return [f.name for f in sorted(self.flats)]


# --------------------------------------------------------------------------
# flat enumeration

def _close_pair(spec: GroupSpec, h: Hyperplane, g: Hyperplane) -> tuple[Hyperplane, ...]:
    """All hyperplanes through the codimension-two subspace ``h ∩ g``."""
    support = h.support | g.support
    if spec.family is Family.A:
        if len(support) == 3:
            i, j, k = sorted(support)
            return (Hyperplane(i, j), Hyperplane(i, k), Hyperplane(j, k))
        return tuple(sorted((h, g)))
    if len(support) == 2:
        i, j = sorted(support)
        return tuple(sorted((Hyperplane(i, i, -1), Hyperplane(j, j, -1),
                             Hyperplane(i, j, 1), Hyperplane(i, j, -1))))
    if len(support) == 3 and not h.is_coordinate and not g.is_coordinate:
        # x_a = e x_b and x_b = d x_c force x_a = e d x_c
        (shared,) = h.support & g.support
        (a,) = h.support - {shared}
        (c,) = g.support - {shared}
        third = Hyperplane(min(a, c), max(a, c), h.sign * g.sign)
        return tuple(sorted((h, g, third)))
    return tuple(sorted((h, g)))


@lru_cache(maxsize=None)
def flat_table(spec: GroupSpec) -> FlatTable:
    found = set()
    for h, g in itertools.combinations(hyperplanes(spec), 2):
        found.add(_close_pair(spec, h, g))
    return FlatTable(spec, [Rank2Flat(spec, m) for m in found])


def enumerate_flats(spec: GroupSpec) -> frozenset[Rank2Flat]:
    return frozenset(flat_table(spec).flats)


def l2_of(w: Element) -> frozenset[Rank2Flat]:
    """Flats all of whose hyperplanes are inversions of ``w``."""
    inv = inversion_set(w)
    return frozenset(f for f in flat_table(w.spec).flats if all(h in inv for h in f.members))


def l2_mask(w: Element) -> int:
    table = flat_table(w.spec)
    return table.inverted_mask(table.hindex[h] for h in inversion_set(w))


# --------------------------------------------------------------------------
# induced orders and separation

def induced_order(r: Word, flat: Rank2Flat) -> InducedOrder:
    seq = crossing_sequence(r)
    pos = seq.positions()
    if not all(h in pos for h in flat.members):
        raise DomainError(f"flat {flat.name} is not fully inverted by the product of {r}")
    return InducedOrder(flat, tuple(sorted(flat.members, key=pos.__getitem__)))


def _positions(spec: GroupSpec, letters: Sequence[int]) -> list[int]:
    pos = [-1] * len(hyperplanes(spec))
    for k, h in enumerate(crossing_indices(spec, letters)):
        pos[h] = k
    return pos


def separation(r: Word, r2: Word) -> SeparationSet:
    """Flats on which the restricted crossing orders of ``r`` and ``r2`` differ."""
    if r.spec != r2.spec or evaluate(r) != evaluate(r2):
        raise DomainError(f"words {r} and {r2} have different products; separation is undefined")
    crossing_sequence(r), crossing_sequence(r2)  # reducedness check
    return _separation_positions(flat_table(r.spec), _positions(r.spec, r.letters),
                                 _positions(r.spec, r2.letters))


def _separation_positions(table: FlatTable, p: Sequence[int], q: Sequence[int]) -> SeparationSet:
    bits = 0
    for k, mem in enumerate(table.members):
        a = sorted((h for h in mem if p[h] >= 0), key=p.__getitem__)
        b = sorted((h for h in mem if q[h] >= 0), key=q.__getitem__)
        if a != b:
            bits |= 1 << k
    return SeparationSet(table, bits)


def signature(spec: GroupSpec, letters: Sequence[int], mask: int | None = None) -> int:
    """One orientation bit per flat; restricted to ``mask`` (default: flats fully crossed)."""
    table = flat_table(spec)
    pos = _positions(spec, letters)
    bits = 0
    for k, mem in enumerate(table.members):
        if mask is not None and not mask >> k & 1:
            continue
        a, b = pos[mem[0]], pos[mem[1]]
        if a < 0 or b < 0:
            continue
        if a > b:
            bits |= 1 << k
    return bits


# --------------------------------------------------------------------------
# set-valued metric axioms

@dataclass
class MetricReport:
    words: int
    checks: int = 0
    exhaustive: bool = True
    failures: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


def verify_metric_axioms(
    words: Sequence[Word],
    *,
    exhaustive_threshold: int = 200,
    samples: int = 20000,
    seed: int = 0,
    sep: Callable[[Word, Word], SeparationSet] | None = None,
    max_failures: int = 20,
) -> MetricReport:
    """Check symmetry, the symmetric-difference identity, the edge rule and injectivity.

    Separation sets come from the definition (or from ``sep``, to test the
    harness itself).  Up to ``exhaustive_threshold`` words every pair and
    triple is checked; beyond it, ``samples`` seeded random pairs and triples
    are checked, plus injectivity from a few sampled base words.
    """
    words = list(words)
    N = len(words)
    report = MetricReport(words=N, exhaustive=N <= exhaustive_threshold)
    if N == 0:
        return report
    spec = words[0].spec
    table = flat_table(spec)
    letters = [w.letters for w in words]

    if sep is None:
        if len({evaluate(w) for w in words}) != 1:
            raise DomainError("verify_metric_axioms needs words with a common product")
        positions = [_positions(spec, w.letters) for w in words]

        def compute(a, b):
            return _separation_positions(table, positions[a], positions[b]).bits
    else:
        def compute(a, b):
            return sep(words[a], words[b]).bits

    cache: dict[tuple[int, int], int] = {}

    def S(a, b):
        v = cache.get((a, b))
        if v is None:
            v = cache[a, b] = compute(a, b)
        return v

    def fail(kind, *idx):
        if len(report.failures) < max_failures:
            report.failures.append((kind, tuple(str(words[i]) for i in idx)))

    index = {w: k for k, w in enumerate(letters)}
    neighbours = [set() for _ in range(N)]
    for a in range(N):
        for z, _, _ in braid_moves(spec.family, letters[a]):
            b = index.get(z)
            if b is not None:
                neighbours[a].add(b)

    def check_pair(a, b):
        report.checks += 1
        sab, sba = S(a, b), S(b, a)
        if sab != sba:
            fail("asymmetric", a, b)
        if (a == b) and sab:
            fail("nonzero self-separation", a)
        if (sab.bit_count() == 1) != (b in neighbours[a]):
            fail("edge rule", a, b)

    def check_row(a):
        report.checks += 1
        if len({S(a, b) for b in range(N)}) != N:
            fail("not injective from base", a)

    if report.exhaustive:
        for a in range(N):
            for b in range(N):
                check_pair(a, b)
            check_row(a)
        M = _triple_matrix(N, S)
        for y in range(N):
            report.checks += N * N
            if isinstance(M, np.ndarray):
                bad = np.nonzero((M[:, y][:, None] ^ M[y, :][None, :]) != M)
                for x, z in zip(*bad):
                    fail("symmetric difference", x, y, z)
            else:
                for x in range(N):
                    for z in range(N):
                        if M[x][z] != M[x][y] ^ M[y][z]:
                            fail("symmetric difference", x, y, z)
        return report

    rng = random.Random(seed)
    for a in sorted({0, *rng.sample(range(N), min(N, 3))}):
        check_row(a)
    for a in range(N):
        for b in neighbours[a]:
            check_pair(a, b)
    for _ in range(samples):
        x, y, z = rng.randrange(N), rng.randrange(N), rng.randrange(N)
        check_pair(x, y)
        report.checks += 1
        if S(x, z) != S(x, y) ^ S(y, z):
            fail("symmetric difference", x, y, z)
    return report


def _triple_matrix(N, S):
    """Pairwise separations as a uint64 matrix over locally re-indexed flats."""
    used = 0
    for a in range(N):
        for b in range(N):
            used |= S(a, b)
    local = list(_iter_bits(used))
    if len(local) > 64:
        return [[S(a, b) for b in range(N)] for a in range(N)]
    remap = {k: 1 << i for i, k in enumerate(local)}
    M = np.zeros((N, N), dtype=np.uint64)
    for a in range(N):
        for b in range(N):
            M[a, b] = sum(remap[k] for k in _iter_bits(S(a, b)))
    return M
