"""Reduction of words to their scalar polynomials.

Every word acts on a Laplace-Beltrami eigenfunction as a scalar that is
a polynomial in the eigenvalue variable θ and the curvature constant K,
with coefficients polynomial in the dimension n.  The value is computed
by rewriting the word toward the fully paired form ``aabbcc...`` (value
θ^k) through adjacent transpositions; each transposition away from the
last two positions picks up curvature correction terms supported on
words that are two letters shorter:

* swapping a matched adjacent pair, or the last two positions, is free;
* otherwise, swapping positions (i, i+1) holding distinct letters x, y
  contributes, for each later position j:
    - letter x there:   +K(n-1) times the word with slot j set to y,
    - letter y there:   -K(n-1) times the word with slot j set to x,
    - another letter z: -K times (slot x, other z renamed y)
                        +K times (slot y, other z renamed x),
  where positions i and i+1 are removed.

Terms whose letter at j appears twice among the later positions cancel
in pairs, so they can be skipped; the ``cancellation`` switch controls
this (on by default, with the off mode kept for equivalence testing).

Results are memoized per canonical word; the cache behaves as if
updates were atomic per key, so concurrent use is safe.
"""

from __future__ import annotations

from .algebra import DiagramPoly, RationalFunctionN, RF_ZERO, DP_ONE
from .words import Word, canonicalize

RF_N_MINUS_1 = RationalFunctionN.from_coeffs([-1, 1])


class GradeError(ValueError):
    """Polynomial is not shaped like a reduction output."""


def _canon(t):
    rename = {}
    out = []
    for x in t:
        if x not in rename:
            rename[x] = len(rename)
        out.append(rename[x])
    return tuple(out)


def _expansion(v, i0, cancellation):
    """Correction terms for |v> - |swap(v, i0, i0+1)>.

    Returns a list of (sign, big, word-tuple): the coefficient of each
    term is sign*K*(n-1) when big is true and sign*K otherwise.
    """
    x, y = v[i0], v[i0 + 1]
    if x == y or i0 == len(v) - 2:
        return []
    out = []
    tail = v[i0 + 2:]
    if cancellation:
        counts = {}
        for c in tail:
            counts[c] = counts.get(c, 0) + 1
    prefix = v[:i0]
    for jj, aj in enumerate(tail):
        if cancellation and counts[aj] == 2:
            continue
        rest = prefix + tail[:jj] + tail[jj + 1:]
        if aj == x:
            out.append((1, True, prefix + tail[:jj] + (y,) + tail[jj + 1:]))
        elif aj == y:
            out.append((-1, True, prefix + tail[:jj] + (x,) + tail[jj + 1:]))
        else:
            slot = len(prefix) + jj
            w1 = tuple((y if c == aj else c) for c in rest[:slot]) + (x,) + \
                tuple((y if c == aj else c) for c in rest[slot:])
            w2 = tuple((x if c == aj else c) for c in rest[:slot]) + (y,) + \
                tuple((x if c == aj else c) for c in rest[slot:])
            out.append((-1, False, w1))
            out.append((1, False, w2))
    return out


class Reducer:
    """Reduction engine with a configurable transposition schedule.

    schedule: 'leftmost' closes the leftmost unmatched pair slot first,
    'rightmost' the last slot first.  Both reach the same polynomial
    (tested exhaustively); the default engine uses 'leftmost'.
    """

    def __init__(self, schedule="leftmost", cancellation=True, memoize=True):
        if schedule not in ("leftmost", "rightmost"):
            raise ValueError("unknown schedule %r" % (schedule,))
        self.schedule = schedule
        self.cancellation = cancellation
        self._memo = {} if memoize else None

    def reduce(self, w) -> DiagramPoly:
        t = _canon(w.letters if isinstance(w, Word) else tuple(w))
        return self._reduce(t)

    def _reduce(self, t):
        if self._memo is not None:
            hit = self._memo.get(t)
            if hit is not None:
                return hit
        val = self._compute(t)
        if self._memo is not None:
            self._memo[t] = val
        return val

    def _corrections(self, v, i0):
        acc = DiagramPoly.zero()
        for sign, big, shorter in _expansion(v, i0, self.cancellation):
            rf = RF_N_MINUS_1 if big else RationalFunctionN(1)
            if sign < 0:
                rf = -rf
            acc = acc + self._reduce(_canon(shorter)).scale(rf) * DiagramPoly.monomial(0, 1)
        return acc

    def _compute(self, t):
        size = len(t)
        if size == 0:
            return DP_ONE
        if all(t[i] == t[i + 1] for i in range(0, size, 2)):
            return DiagramPoly.theta_power(size // 2)
        acc = DiagramPoly.zero()
        v = list(t)
        if self.schedule == "leftmost":
            p = 0
            while v[p] == v[p + 1]:
                p += 2
            q = v.index(v[p], p + 1)
            for i0 in range(q - 1, p, -1):
                acc = acc + self._corrections(tuple(v), i0)
                v[i0], v[i0 + 1] = v[i0 + 1], v[i0]
        else:
            s = size
            while s >= 2 and v[s - 2] == v[s - 1]:
                s -= 2
            q = v.index(v[s - 1])
            for i0 in range(q, s - 2):
                acc = acc + self._corrections(tuple(v), i0)
                v[i0], v[i0 + 1] = v[i0 + 1], v[i0]
        return acc + self._reduce(_canon(v))

    # -- cache persistence (used by the CLI) ---------------------------

    def export_cache(self):
        out = {}
        for t, poly in (self._memo or {}).items():
            key = ",".join(str(x) for x in t)
            out[key] = poly.to_json_obj()
        return out

    def import_cache(self, data):
        if self._memo is None:
            return
        for key, obj in data.items():
            t = tuple(int(x) for x in key.split(",")) if key else ()
            self._memo[t] = DiagramPoly.from_json_obj(obj)


_default = Reducer()


def reduce_word(w) -> DiagramPoly:
    """Reduce a word with the shared default engine."""
    return _default.reduce(w)


def default_reducer() -> Reducer:
    return _default


def transpose_step(w: Word, i: int):
    """Expansion of |w> - |w with positions (i, i+1) swapped|, 1-based i.

    Returns a list of (coefficient, word) pairs with canonical words and
    like terms merged; the list is empty when the swap is free.
    """
    if not 1 <= i <= len(w) - 1:
        raise IndexError("position %d out of range for word of length %d" % (i, len(w)))
    merged = {}
    for sign, big, shorter in _expansion(tuple(w.letters), i - 1, False):
        t = _canon(shorter)
        rf = RF_N_MINUS_1 if big else RationalFunctionN(1)
        if sign < 0:
            rf = -rf
        merged[t] = merged.get(t, RF_ZERO) + rf
    out = []
    for t in sorted(merged):
        if not merged[t].is_zero:
            out.append((DiagramPoly.monomial(0, 1, merged[t]), Word(t)))
    return out


def leading_part(p: DiagramPoly, k: int) -> DiagramPoly:
    """Top homogeneous component when θ and n both count as degree 1.

    For reduction outputs every term θ^a K^b c(n) has a + b = k and the
    component of degree k keeps exactly the n^b part of c(n).
    """
    out = {}
    for (a, b), c in p.terms.items():
        if a + b != k:
            raise GradeError("term θ^%d K^%d breaks (θ,K)-homogeneity of degree %d" % (a, b, k))
        if not c.is_polynomial():
            raise GradeError("coefficient %s is not polynomial in n" % (c,))
        top = c.n_coefficient(b)
        if top:
            out[(a, b)] = RationalFunctionN.n_power(b, top)
    return DiagramPoly(out)
