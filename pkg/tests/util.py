"""Shared expected-value builders for tests."""

from sfdc import DiagramPoly, RationalFunctionN, Word


def staircase(tops):
    """Product of (θ + t*K*n) over t in tops, expanded."""
    out = DiagramPoly.constant(1)
    for t in tops:
        out = out * DiagramPoly({(1, 0): 1, (0, 1): RationalFunctionN.n_power(1, t)})
    return out


def dominant_expected(k):
    """θ(θ+Kn)(θ+2Kn)...(θ+(k-1)Kn)."""
    return staircase(range(k))


def nested_with_inner_arc(k, i):
    """a1..ai a_{i+1}..a_{k-1} a_{k-1}..a_{i+1} akak ai..a1 (0-based ids)."""
    ids = (list(range(i)) + list(range(i, k - 1)) + list(reversed(range(i, k - 1)))
           + [k - 1, k - 1] + list(reversed(range(i))))
    return Word(ids)
