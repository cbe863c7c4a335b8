"""Braid moves on raw letter tuples."""

from __future__ import annotations

from typing import Iterator

from .coxeter import Family


def braid_moves(family: Family, letters: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], int, int]]:
    """Yield ``(new_letters, start, span)`` for every single braid move.

    Commutations ``ab -> ba`` need ``|a - b| >= 2``.  Long moves are
    ``aba -> bab`` for ``|a - b| == 1``, except that in type B the pair
    ``{0, 1}`` has the length-four relation ``0101 <-> 1010`` instead.

    >>> [m for m, _, _ in braid_moves(Family.A, (1, 2, 1, 3))]
    [(2, 1, 2, 3), (1, 2, 3, 1)]
    >>> [m for m, _, _ in braid_moves(Family.B, (0, 1, 0, 1))]
    [(1, 0, 1, 0)]
    """
    L = len(letters)
    for k in range(L - 1):
        a, b = letters[k], letters[k + 1]
        if abs(a - b) >= 2:
            yield letters[:k] + (b, a) + letters[k + 2:], k, 2
        elif abs(a - b) == 1:
            if family is Family.B and {a, b} == {0, 1}:
                if k + 3 < L and letters[k + 2] == a and letters[k + 3] == b:
                    yield letters[:k] + (b, a, b, a) + letters[k + 4:], k, 4
            elif k + 2 < L and letters[k + 2] == a:
                yield letters[:k] + (b, a, b) + letters[k + 3:], k, 3
