import itertools

import pytest

from sfdc import (LinkSpec, LinkedWord, link, multi_link, tau, tau_permuted,
                  tau_linked, OverlapError, CircleUnexpectedError, parse_word,
                  enumerate_words, canonicalize, Word)
from sfdc.linking import left_positions


def surgery(word, pairs):
    """Independent matching-surgery computation of multi-pair linking.

    Vertices are positions; the word pairing and the link pairs form a
    graph whose cycles become circles and whose paths pair the surviving
    endpoints.
    """
    edges = {}
    for i, j in word.pairing:
        edges.setdefault(i, []).append(j)
        edges.setdefault(j, []).append(i)
    linked = {}
    for i, j in pairs:
        linked[i] = j
        linked[j] = i
    removed = set(linked)
    circles = 0
    seen = set()
    result_pairs = []
    for start in range(1, len(word) + 1):
        if start in seen or start in removed:
            continue
        # walk: matching edge, then link edge, alternating
        path = [start]
        cur, via_match = start, True
        while True:
            nxt = edges[cur][0] if via_match else linked.get(cur)
            if nxt is None:
                break
            path.append(nxt)
            cur, via_match = nxt, not via_match
        seen.update(path)
        result_pairs.append((start, path[-1]))
    # cycles: components fully inside removed positions
    seen_cycle = set()
    for start in sorted(removed):
        if start in seen_cycle or start in seen:
            continue
        cur, via_match = start, True
        comp = {start}
        while True:
            cur = edges[cur][0] if via_match else linked[cur]
            via_match = not via_match
            if cur == start and via_match:
                break
            comp.add(cur)
        if all(p in removed or p in comp for p in comp):
            circles += 1
            seen_cycle.update(comp)
    keep = sorted(p for p in range(1, len(word) + 1) if p not in removed)
    renumber = {p: idx + 1 for idx, p in enumerate(keep)}
    new_pairs = [(renumber[min(a, b)], renumber[max(a, b)]) for a, b in result_pairs]
    from sfdc import word_from_pairing
    return circles, word_from_pairing(new_pairs) if new_pairs else Word(())


def all_specs(size, max_pairs=None):
    positions = range(1, size + 1)
    out = []
    top = (max_pairs or size // 2) + 1
    for l in range(1, top):
        for subset in itertools.combinations(positions, 2 * l):
            for perm in _matchings(subset):
                out.append(LinkSpec(perm))
    return out


def _matchings(items):
    if not items:
        yield ()
        return
    first = items[0]
    for idx in range(1, len(items)):
        for rest in _matchings(items[1:idx] + items[idx + 1:]):
            yield ((first, items[idx]),) + rest


def test_link_goldens():
    got = link(parse_word("aabccb"), 1, 2)
    assert got == LinkedWord(1, parse_word("abba"))
    got = link(parse_word("aabccb"), 1, 3)
    assert got == LinkedWord(0, parse_word("abba"))
    assert link(parse_word("aa"), 1, 2) == LinkedWord(1, Word(()))


def test_multi_link_goldens():
    assert multi_link(parse_word("aabb"), LinkSpec(((1, 2), (3, 4)))) == LinkedWord(2, Word(()))
    assert multi_link(parse_word("abba"), LinkSpec(((1, 4), (2, 3)))) == LinkedWord(2, Word(()))
    assert multi_link(parse_word("abab"), LinkSpec(((1, 3), (2, 4)))) == LinkedWord(2, Word(()))


def test_multi_link_against_surgery():
    for k in range(1, 4):
        for w in enumerate_words(k):
            for spec in all_specs(2 * k):
                got = multi_link(w, spec)
                circles, word = surgery(w, spec.pairs)
                assert (got.circles, got.word) == (circles, word), (w, spec)


def test_multi_link_order_independence():
    for k in range(1, 4):
        for w in enumerate_words(k):
            for spec in all_specs(2 * k):
                if spec.l < 2:
                    continue
                expected = multi_link(w, spec)
                for order in itertools.permutations(spec.pairs):
                    circles = 0
                    alive = list(range(1, len(w) + 1))
                    cur = w
                    for i, j in order:
                        ci, cj = alive.index(i) + 1, alive.index(j) + 1
                        step = link(cur, ci, cj)
                        circles += step.circles
                        cur = step.word
                        alive.remove(i)
                        alive.remove(j)
                    assert (circles, cur) == (expected.circles, expected.word)


def test_spec_validation():
    with pytest.raises(OverlapError):
        LinkSpec(((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        LinkSpec(((3, 3),))
    with pytest.raises(IndexError):
        multi_link(parse_word("aabb"), LinkSpec(((1, 5),)))
    assert LinkSpec.from_string("3:4,1:2").pairs == ((1, 2), (3, 4))


def test_tau():
    assert tau(1) == parse_word("aa")
    assert tau(2) == parse_word("abba")
    assert tau(3) == parse_word("abccba")
    assert tau_permuted(3, (3, 2, 1)) == tau(3)
    assert tau_permuted(2, (1, 2)) == parse_word("abab")


def test_tau_linked_goldens():
    assert tau_linked(2, LinkSpec(((1, 2),))) == parse_word("aa")
    assert tau_linked(3, LinkSpec(((1, 2),))) == parse_word("aabb")
    assert tau_linked(3, LinkSpec(((1, 3),))) == parse_word("abab")
    assert tau_linked(3, LinkSpec(((2, 3),))) == parse_word("abba")


def test_tau_linked_never_circles():
    for k in range(1, 5):
        for spec in all_specs(k, max_pairs=k // 2):
            tau_linked(k, spec)  # CircleUnexpectedError would fail the test


def test_diagonal_closure():
    # linking the same letter pairs on both halves closes one circle per
    # pair and leaves the nested word on the untouched letters
    for k in range(1, 5):
        for spec in all_specs(k, max_pairs=k // 2):
            word = tau_linked(k, spec)
            closed = multi_link(word, left_positions(spec))
            assert closed.circles == spec.l
            assert closed.word == tau(k - 2 * spec.l)
