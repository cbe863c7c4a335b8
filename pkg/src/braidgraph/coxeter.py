"""
Group elements, words and hyperplanes for the Coxeter groups of types A and B.

Type A(n) is the symmetric group on ``1..n`` with generators ``s_1..s_{n-1}``;
``s_i`` swaps positions ``i`` and ``i+1``.  Type B(n) is the group of signed
permutations with generators ``s_0..s_{n-1}``; ``s_0`` negates the entry in
position 1.  Elements are stored in one-line notation and words act by right
multiplication, so appending ``s_i`` to a word acts on positions.

The base chamber is the identity chamber ``x_1 < ... < x_n`` (type A) or
``0 < x_1 < ... < x_n`` (type B).  The chamber of ``w`` contains the point
``y`` with ``y[|w(j)|] = sign(w(j)) * j``; a hyperplane separates the base
chamber from ``w``'s chamber when its linear form changes sign between the
two points.

>>> A4 = GroupSpec(Family.A, 4)
>>> w = evaluate(Word(A4, (1, 2, 1, 3, 2, 1)))
>>> w
Element(A4, 4321)
>>> length(w)
6
>>> [str(h) for h in crossing_sequence(Word(A4, (1, 2, 1, 3, 2, 1))).crossings]
['H12', 'H13', 'H23', 'H14', 'H24', 'H34']
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InvalidInputError

__all__ = [
    "Family", "GroupSpec", "Element", "Word", "Hyperplane", "CrossingSequence",
    "evaluate", "length", "is_reduced", "inversion_set", "crossing_sequence",
    "hyperplanes", "hyperplane_index", "all_elements", "parse_word", "parse_element",
    "right_descents", "multiply",
]


class Family(str, enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True, order=True)
class GroupSpec:
    family: Family
    n: int

    def __post_init__(self):
        if not isinstance(self.family, Family):
            try:
                object.__setattr__(self, "family", Family(str(self.family).upper()))
            except ValueError:
                raise InvalidInputError(f"unknown Coxeter family {self.family!r}; expected A or B") from None
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise InvalidInputError(f"rank parameter must be an integer, got {self.n!r}")
        minimum = 2 if self.family is Family.A else 1
        if self.n < minimum:
            raise InvalidInputError(f"type {self.family.value} requires n >= {minimum}, got n={self.n}")

    def __str__(self):
        return f"{self.family.value}{self.n}"

    @property
    def generators(self) -> range:
        """Generator indices exactly as written in the usual subscripts."""
        if self.family is Family.A:
            return range(1, self.n)
        return range(0, self.n)

    def check_letter(self, letter: int) -> None:
        if letter not in self.generators:
            g = self.generators
            raise InvalidInputError(
                f"generator index {letter} out of range [{g.start}, {g.stop - 1}] for type {self}")

    def identity(self) -> Element:
        return Element(self, tuple(range(1, self.n + 1)))

    def longest_element(self) -> Element:
        if self.family is Family.A:
            return Element(self, tuple(range(self.n, 0, -1)))
        return Element(self, tuple(-i for i in range(1, self.n + 1)))

    @property
    def order(self) -> int:
        f = 1
        for k in range(2, self.n + 1):
            f *= k
        return f if self.family is Family.A else f * 2 ** self.n


@dataclass(frozen=True, order=True)
class Element:
    spec: GroupSpec
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = self.spec.n
        if len(images) != n or sorted(abs(x) for x in images) != list(range(1, n + 1)):
            raise InvalidInputError(f"{images} is not a signed permutation of 1..{n}")
        if self.spec.family is Family.A and any(x < 0 for x in images):
            raise InvalidInputError(f"type A elements have positive entries, got {images}")

    def __repr__(self):
        return f"Element({self.spec}, {self})"

    def __str__(self):
        return format_element(self)

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __mul__(self, other: Element) -> Element:
        return multiply(self, other)

    def inverse(self) -> Element:
        inv = [0] * self.spec.n
        for pos, value in enumerate(self.images, start=1):
            inv[abs(value) - 1] = pos if value > 0 else -pos
        return Element(self.spec, tuple(inv))

    @property
    def is_longest(self) -> bool:
        return self == self.spec.longest_element()


@dataclass(frozen=True, order=True)
class Word:
    spec: GroupSpec
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        for a in letters:
            self.spec.check_letter(a)

    def __repr__(self):
        return f"Word({self.spec}, {self})"

    def __str__(self):
        return format_letters(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    def __add__(self, other: Word) -> Word:
        if other.spec != self.spec:
            raise InvalidInputError(f"cannot concatenate words of {self.spec} and {other.spec}")
        return Word(self.spec, self.letters + other.letters)


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The hyperplane ``x_i = sign * x_j`` with ``i <= j``.

    ``i == j`` (with sign -1) is the coordinate hyperplane ``x_i = 0``.  Type A
    only uses ``sign == +1`` and ``i < j``.
    """
    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.i <= self.j or self.sign not in (1, -1):
            raise InvalidInputError(f"bad hyperplane data {(self.i, self.j, self.sign)}")
        if self.i == self.j and self.sign != -1:
            raise InvalidInputError("x_i = x_i is not a hyperplane")

    @property
    def is_coordinate(self) -> bool:
        return self.i == self.j

    @property
    def support(self) -> frozenset[int]:
        return frozenset((self.i, self.j))

    def normal(self, n: int) -> tuple[int, ...]:
        v = [0] * n
        v[self.i - 1] += 1
        v[self.j - 1] -= self.sign
        return tuple(v)

    def form(self, point: Sequence[int]) -> int:
        return point[self.i - 1] - self.sign * point[self.j - 1]

    def equation(self) -> str:
        if self.is_coordinate:
            return f"x{self.i}=0"
        return f"x{self.i}={'' if self.sign > 0 else '-'}x{self.j}"

    def __str__(self):
        if self.is_coordinate or self.sign < 0:
            return self.equation()
        if self.j <= 9:
            return f"H{self.i}{self.j}"
        return f"H{self.i},{self.j}"


@dataclass(frozen=True)
class CrossingSequence:
    word: Word
    crossings: tuple[Hyperplane, ...]

    def __len__(self):
        return len(self.crossings)

    def __iter__(self):
        return iter(self.crossings)

    def positions(self) -> dict[Hyperplane, int]:
        return {h: k for k, h in enumerate(self.crossings)}


# --------------------------------------------------------------------------
# formatting and parsing

def format_letters(letters: Sequence[int]) -> str:
    if all(0 <= a <= 9 for a in letters):
        return "".join(str(a) for a in letters)
    return ",".join(str(a) for a in letters)


def format_element(w: Element) -> str:
    if w.spec.family is Family.A and w.spec.n <= 9:
        return "".join(str(x) for x in w.images)
    return ",".join(str(x) for x in w.images)


def parse_word(spec: GroupSpec, text: str) -> Word:
    """Parse ``"121321"`` or ``"1,2,1,3,2,1"`` (the empty string is the empty word)."""
    text = text.strip()
    try:
        if "," in text:
            letters = tuple(int(t) for t in text.split(","))
        else:
            letters = tuple(int(c) for c in text)
    except ValueError:
        raise InvalidInputError(f"cannot parse word {text!r}") from None
    return Word(spec, letters)


def parse_element(spec: GroupSpec, text: str) -> Element:
    """Parse ``"w0"``, ``"e"``, type A ``"3412"``, or a comma list such as ``"-3,-2,-1"``."""
    text = text.strip()
    if text.lower() in ("w0", "longest"):
        return spec.longest_element()
    if text.lower() in ("e", "id", "identity"):
        return spec.identity()
    try:
        if "," in text:
            images = tuple(int(t) for t in text.split(","))
        elif spec.family is Family.A and text.isdigit():
            images = tuple(int(c) for c in text)
        else:
            images = (int(text),)
    except ValueError:
        raise InvalidInputError(f"cannot parse element {text!r}") from None
    return Element(spec, images)


# --------------------------------------------------------------------------
# raw tuple arithmetic

def _act(images: list[int], letter: int, family: Family) -> None:
    """Right-multiply a mutable one-line array by a generator, in place."""
    if letter == 0:
        images[0] = -images[0]
    else:
        images[letter - 1], images[letter] = images[letter], images[letter - 1]


def _wall(images: Sequence[int], letter: int) -> tuple[int, int, int]:
    """Hyperplane (i, j, sign) between the chamber of ``images`` and its ``s_letter`` neighbour."""
    if letter == 0:
        a = abs(images[0])
        return (a, a, -1)
    a, b = images[letter - 1], images[letter]
    p, q = abs(a), abs(b)
    sign = 1 if (a > 0) == (b > 0) else -1
    return (p, q, sign) if p < q else (q, p, sign)


def _is_descent(images: Sequence[int], letter: int) -> bool:
    if letter == 0:
        return images[0] < 0
    return images[letter - 1] > images[letter]


def _chamber_point(images: Sequence[int]) -> list[int]:
    point = [0] * len(images)
    for pos, value in enumerate(images, start=1):
        point[abs(value) - 1] = pos if value > 0 else -pos
    return point


# --------------------------------------------------------------------------
# hyperplane tables

@lru_cache(maxsize=None)
def hyperplanes(spec: GroupSpec) -> tuple[Hyperplane, ...]:
    """All reflecting hyperplanes in canonical (sorted) order."""
    n = spec.n
    out = [Hyperplane(i, j, 1) for i, j in itertools.combinations(range(1, n + 1), 2)]
    if spec.family is Family.B:
        out += [Hyperplane(i, j, -1) for i, j in itertools.combinations(range(1, n + 1), 2)]
        out += [Hyperplane(i, i, -1) for i in range(1, n + 1)]
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def hyperplane_index(spec: GroupSpec) -> dict[Hyperplane, int]:
    return {h: k for k, h in enumerate(hyperplanes(spec))}


# --------------------------------------------------------------------------
# operations

def evaluate(word: Word) -> Element:
    """Product of the word's generators, applied left to right to the identity."""
    spec = word.spec
    images = list(range(1, spec.n + 1))
    for a in word.letters:
        _act(images, a, spec.family)
    return Element(spec, tuple(images))


def multiply(u: Element, v: Element) -> Element:
    """Composition ``u * v`` (apply ``v`` first, as maps on signed basis vectors)."""
    if u.spec != v.spec:
        raise InvalidInputError(f"cannot multiply elements of {u.spec} and {v.spec}")
    out = []
    for x in v.images:
        y = u.images[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return Element(u.spec, tuple(out))


def inversion_set(w: Element) -> frozenset[Hyperplane]:
    """Hyperplanes separating the base chamber from the chamber of ``w``."""
    base = list(range(1, w.spec.n + 1))
    point = _chamber_point(w.images)
    return frozenset(h for h in hyperplanes(w.spec)
                     if (h.form(base) > 0) != (h.form(point) > 0))


def length(w: Element) -> int:
    return len(inversion_set(w))


def right_descents(w: Element) -> list[int]:
    return [a for a in w.spec.generators if _is_descent(w.images, a)]


def is_reduced(word: Word) -> bool:
    return len(word) == length(evaluate(word))


def crossing_sequence(word: Word) -> CrossingSequence:
    """Hyperplanes crossed by the gallery of ``word``, in order."""
    images = list(range(1, word.spec.n + 1))
    crossed = []
    for a in word.letters:
        crossed.append(Hyperplane(*_wall(images, a)))
        _act(images, a, word.spec.family)
    if len(set(crossed)) != len(crossed):
        raise DomainError(f"word {word} is not reduced for type {word.spec}: it recrosses a hyperplane")
    return CrossingSequence(word, tuple(crossed))


def crossing_indices(spec: GroupSpec, letters: Sequence[int]) -> list[int]:
    """Crossing sequence as hyperplane indices; no reducedness check."""
    index = hyperplane_index(spec)
    images = list(range(1, spec.n + 1))
    out = []
    for a in letters:
        out.append(index[Hyperplane(*_wall(images, a))])
        _act(images, a, spec.family)
    return out


def all_elements(spec: GroupSpec) -> Iterator[Element]:
    """Every group element, in lexicographic order of one-line notation."""
    n = spec.n
    if spec.family is Family.A:
        for p in itertools.permutations(range(1, n + 1)):
            yield Element(spec, p)
        return
    signed = []
    for p in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            signed.append(tuple(s * x for s, x in zip(signs, p)))
    for images in sorted(signed):
        yield Element(spec, images)


def words_from(spec: GroupSpec, letter_seqs: Iterable[Sequence[int]]) -> list[Word]:
    return [Word(spec, tuple(s)) for s in letter_seqs]
