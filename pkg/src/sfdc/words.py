"""Words, pairings and their arc diagrams.

A word is a sequence of letters in which every letter appears exactly
twice; it encodes a perfect matching on positions 1..2k.  Letters are
small non-negative integers (0-based ids); the text form shows them as
a..z when possible.  The canonical form renames letters in order of
first occurrence, so each matching has exactly one canonical word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeLimitError

DEFAULT_K_CAP = 8


class LetterCountError(ValueError):
    """Some letter does not appear exactly twice."""


class EmptyTokenError(ValueError):
    """A comma-separated word contains an empty token."""


class UnsupportedFormatError(ValueError):
    """Unknown diagram rendering format."""


class Word:
    """Immutable word; ``letters`` is a tuple of 0-based letter ids."""

    __slots__ = ("letters", "_pairing")

    def __init__(self, letters):
        letters = tuple(int(x) for x in letters)
        counts = {}
        for x in letters:
            if x < 0:
                raise LetterCountError("negative letter id %d" % x)
            counts[x] = counts.get(x, 0) + 1
        bad = [x for x, c in counts.items() if c != 2]
        if bad:
            raise LetterCountError("letters %s do not appear exactly twice" % sorted(bad))
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_pairing", None)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @property
    def k(self):
        return len(self.letters) // 2

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    @property
    def pairing(self):
        """Sorted tuple of 1-based position pairs (i, j) with i < j."""
        if self._pairing is None:
            first = {}
            pairs = []
            for pos, x in enumerate(self.letters, start=1):
                if x in first:
                    pairs.append((first.pop(x), pos))
                else:
                    first[x] = pos
            object.__setattr__(self, "_pairing", tuple(sorted(pairs)))
        return self._pairing

    def is_canonical(self):
        nxt = 0
        seen = {}
        for x in self.letters:
            if x not in seen:
                if x != nxt:
                    return False
                seen[x] = True
                nxt += 1
        return True

    def to_text(self):
        if not self.letters:
            return ""
        if max(self.letters) < 26:
            return "".join(chr(97 + x) for x in self.letters)
        return ",".join(str(x) for x in self.letters)

    def __repr__(self):
        return "Word(%r)" % self.to_text()


EMPTY_WORD = Word(())


@dataclass(frozen=True)
class DiagramRender:
    format: str
    text: str


def parse_word(text: str) -> Word:
    """Parse ``"aabccb"`` or comma-separated tokens. Not canonicalized."""
    if text == "":
        return EMPTY_WORD
    if "," in text:
        tokens = text.split(",")
        if any(t.strip() == "" for t in tokens):
            raise EmptyTokenError("empty token in %r" % text)
        tokens = [t.strip() for t in tokens]
        if all(t.isdigit() for t in tokens):
            ids = [int(t) for t in tokens]
        else:
            order = {t: i for i, t in enumerate(sorted(set(tokens)))}
            ids = [order[t] for t in tokens]
        return Word(ids)
    if not all("a" <= c <= "z" for c in text):
        raise EmptyTokenError("contiguous words use letters a-z only: %r" % text)
    return Word(ord(c) - 97 for c in text)


def canonicalize(w: Word) -> Word:
    """Rename letters in order of first occurrence."""
    rename = {}
    out = []
    for x in w.letters:
        if x not in rename:
            rename[x] = len(rename)
        out.append(rename[x])
    return Word(out)


def word_from_pairing(pairs) -> Word:
    """Canonical word realizing a perfect matching on 1..2k."""
    pairs = sorted(tuple(sorted(p)) for p in pairs)
    letters = [None] * (2 * len(pairs))
    for lid, (i, j) in enumerate(pairs):
        if letters[i - 1] is not None or letters[j - 1] is not None:
            raise LetterCountError("pairing positions overlap")
        letters[i - 1] = lid
        letters[j - 1] = lid
    if any(x is None for x in letters):
        raise LetterCountError("pairing does not cover all positions")
    return canonicalize(Word(letters))


def _pairings(positions):
    if not positions:
        yield ()
        return
    first = positions[0]
    for idx in range(1, len(positions)):
        rest = positions[1:idx] + positions[idx + 1:]
        for sub in _pairings(rest):
            yield ((first, positions[idx]),) + sub


def enumerate_words(k: int, cap: int = DEFAULT_K_CAP):
    """All (2k-1)!! canonical words of half-length k, deterministic order.

    Positions are paired greedily: smallest open position first, partner
    ascending.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > cap:
        raise SizeLimitError("k=%d exceeds cap %d" % (k, cap))
    return [word_from_pairing(p) for p in _pairings(tuple(range(1, 2 * k + 1)))]


def double_factorial(m: int) -> int:
    """Product m*(m-2)*(m-4)*...; equals 1 for m <= 0."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def reverse(w: Word) -> Word:
    """Reflect the diagram about a vertical line (an involution)."""
    return canonicalize(Word(reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    """Juxtapose two words on disjoint alphabets, then canonicalize."""
    shift = (max(u.letters) + 1) if u.letters else 0
    return canonicalize(Word(u.letters + tuple(x + shift for x in v.letters)))


def _arc_heights(pairs):
    heights = {}
    for arc in sorted(pairs, key=lambda p: (p[1] - p[0], p[0])):
        h = 1
        for other, oh in heights.items():
            if max(arc[0], other[0]) < min(arc[1], other[1]):
                h = max(h, oh + 1)
        heights[arc] = h
    return heights


def _render_ascii(w: Word) -> str:
    if not w.letters:
        return "(empty word)"
    col = lambda p: 2 * (p - 1)
    width = col(len(w)) + 1
    heights = _arc_heights(w.pairing)
    maxh = max(heights.values())
    lines = []
    for row in range(maxh, 0, -1):
        line = [" "] * width
        for (i, j), h in heights.items():
            if h == row:
                for c in range(col(i) + 1, col(j)):
                    line[c] = "-"
                line[col(i)] = "."
                line[col(j)] = "."
        for (i, j), h in heights.items():
            if h > row:
                line[col(i)] = "|"
                line[col(j)] = "|"
        lines.append("".join(line).rstrip())
    letters = [" "] * width
    text = w.to_text()
    if "," in text:
        return "\n".join(lines) + "\n" + text
    for p, ch in enumerate(text, start=1):
        letters[col(p)] = ch
    lines.append("".join(letters).rstrip())
    return "\n".join(lines)


def _render_dot(w: Word) -> str:
    lines = ["graph word {", "  rankdir=LR;", "  node [shape=point];"]
    for p in range(1, len(w) + 1):
        lines.append("  %d;" % p)
    for i, j in w.pairing:
        lines.append("  %d -- %d;" % (i, j))
    lines.append("}")
    return "\n".join(lines)


def render(w: Word, format: str = "ascii-arc") -> DiagramRender:
    """Arc diagram of a word; formats: ascii-arc, dot."""
    if format == "ascii-arc":
        return DiagramRender(format, _render_ascii(w))
    if format == "dot":
        return DiagramRender(format, _render_dot(w))
    raise UnsupportedFormatError("unsupported format %r" % (format,))
