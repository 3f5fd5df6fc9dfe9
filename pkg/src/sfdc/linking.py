"""Linking operators: diagram surgery that joins two positions.

Linking positions i and j of a word removes the letters there; if both
positions carried the same letter a closed loop (circle) is formed and
the value picks up a factor n, otherwise the two letters are identified
through their remaining occurrences.  Multi-pair linking applies
disjoint pairs with original-position bookkeeping, so the outcome does
not depend on the order the pairs are processed in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Word, canonicalize


class OverlapError(ValueError):
    """Linking pairs share a position or letter index."""


class CircleUnexpectedError(RuntimeError):
    """A circle formed where the construction guarantees none."""


@dataclass(frozen=True)
class LinkSpec:
    """Disjoint ordered index pairs (i, j) with i < j, stored sorted."""

    pairs: tuple

    def __post_init__(self):
        norm = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        seen = set()
        for i, j in norm:
            if i >= j:
                raise ValueError("pair (%d, %d) must have i < j" % (i, j))
            for x in (i, j):
                if x in seen:
                    raise OverlapError("index %d used twice" % x)
                seen.add(x)
        object.__setattr__(self, "pairs", norm)

    @classmethod
    def from_string(cls, text):
        """Parse 'i:j[,i:j...]'."""
        pairs = []
        for chunk in text.split(","):
            i, _, j = chunk.partition(":")
            pairs.append((int(i), int(j)))
        return cls(tuple(pairs))

    @property
    def l(self):
        return len(self.pairs)

    def indices(self):
        return tuple(x for p in self.pairs for x in p)

    def __str__(self):
        return ",".join("%d:%d" % p for p in self.pairs)


@dataclass(frozen=True)
class LinkedWord:
    """Surgery result; the semantic value is n^circles * |word|."""

    circles: int
    word: Word


def multi_link(w: Word, spec: LinkSpec) -> LinkedWord:
    """Link every (i, j) position pair of the spec, accumulating circles."""
    size = len(w)
    for x in spec.indices():
        if not 1 <= x <= size:
            raise IndexError("position %d out of range 1..%d" % (x, size))
    parent = {}

    def find(a):
        root = a
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(a, a) != a:
            parent[a], a = root, parent[a]
        return root

    alive = {pos: letter for pos, letter in enumerate(w.letters, start=1)}
    circles = 0
    for i, j in spec.pairs:
        li, lj = find(alive.pop(i)), find(alive.pop(j))
        if li == lj:
            circles += 1
        else:
            parent[lj] = li
    remaining = [find(alive[p]) for p in sorted(alive)]
    return LinkedWord(circles, canonicalize(Word(remaining)))


def link(w: Word, i: int, j: int) -> LinkedWord:
    """Link a single position pair (1-based, i < j)."""
    return multi_link(w, LinkSpec(((i, j),)))


def tau(k: int) -> Word:
    """The fully nested palindromic word a1..ak ak..a1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Word(tuple(range(k)) + tuple(reversed(range(k))))


def tau_permuted(k: int, sigma) -> Word:
    """a1..ak a_sigma(1)..a_sigma(k) for a permutation sigma of 1..k."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, k + 1)):
        raise ValueError("sigma must be a permutation of 1..%d" % k)
    return Word(tuple(range(k)) + tuple(s - 1 for s in sigma))


def _letter_spec_positions(k, spec, sigma=None):
    """Map a letter-pair spec to right-half position pairs."""
    for x in spec.indices():
        if not 1 <= x <= k:
            raise IndexError("letter index %d out of range 1..%d" % (x, k))
    if sigma is None:
        where = {i: 2 * k - i + 1 for i in range(1, k + 1)}
    else:
        where = {s: k + pos for pos, s in enumerate(sigma, start=1)}
    return LinkSpec(tuple(tuple(sorted((where[i], where[j]))) for i, j in spec.pairs))


def tau_linked(k: int, spec: LinkSpec, sigma=None) -> Word:
    """Link letters of the right half of tau (or of a permuted variant).

    The letter pairs (i1, i2) of the spec are joined at the positions
    where a_i1 and a_i2 appear in the right half; this never closes a
    circle.
    """
    base = tau(k) if sigma is None else tau_permuted(k, sigma)
    linked = multi_link(base, _letter_spec_positions(k, spec, sigma))
    if linked.circles:
        raise CircleUnexpectedError("right-half linking closed %d circle(s)" % linked.circles)
    return linked.word


def left_positions(spec: LinkSpec) -> LinkSpec:
    """Letter pairs as left-half positions (letter a_i sits at position i)."""
    return LinkSpec(spec.pairs)
