"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in ``nvars`` variables is stored as a dict mapping exponent
tuples to coefficients, e.g. with variables (n, K, t) the polynomial
``n*t^2 - 3`` is ``{(1, 0, 2): 1, (0, 0, 0): -3}``.  Coefficients are
``int`` or ``fractions.Fraction``; zero coefficients are never stored.

Everything here is exact: addition, multiplication, exact division,
differentiation, evaluation, and gcd (content / primitive-part recursion
with a primitive pseudo-remainder sequence in the main variable).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c} if terms else {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        p = cls(nvars)
        if c:
            p.terms[(0,) * nvars] = c
        return p

    @classmethod
    def one(cls, nvars):
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars, index, power=1, coeff=1):
        e = [0] * nvars
        e[index] = power
        return cls(nvars, {tuple(e): coeff})

    def copy(self):
        return MultiPoly(self.nvars, dict(self.terms))

    # -- predicates ---------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(next(iter(self.terms.values())))

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.nvars != other.nvars or len(self.terms) != len(other.terms):
            return False
        for e, c in self.terms.items():
            if other.terms.get(e, 0) != c:
                return False
        return True

    def __hash__(self):
        return hash((self.nvars, frozenset((e, Fraction(c)) for e, c in self.terms.items())))

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------

    def degree(self, var=None):
        """Degree in one variable, or total degree if var is None; -1 for 0."""
        if self.is_zero:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def coeff_of(self, var, power):
        """Coefficient of var**power, as a polynomial in the same variables."""
        out = {}
        for e, c in self.terms.items():
            if e[var] == power:
                e2 = list(e)
                e2[var] = 0
                out[tuple(e2)] = c
        return MultiPoly(self.nvars, out)

    def lex_leading(self):
        """(exponents, coefficient) of the lexicographically greatest monomial."""
        e = max(self.terms)
        return e, self.terms[e]

    def derivative(self, var):
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                e2 = list(e)
                e2[var] -= 1
                out[tuple(e2)] = c * e[var]
        return MultiPoly(self.nvars, out)

    def subs_var(self, var, value):
        """Substitute a rational value for one variable."""
        out = MultiPoly(self.nvars)
        cache = {0: 1}
        for e, c in self.terms.items():
            k = e[var]
            if k not in cache:
                cache[k] = value ** k
            e2 = list(e)
            e2[var] = 0
            e2 = tuple(e2)
            s = out.terms.get(e2, 0) + c * cache[k]
            if s:
                out.terms[e2] = s
            else:
                out.terms.pop(e2, None)
        return out

    def eval_all(self, values):
        """Evaluate at a full point (one value per variable)."""
        total = Fraction(0)
        powcache = [{} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = Fraction(c)
            for i, k in enumerate(e):
                if k:
                    pc = powcache[i]
                    if k not in pc:
                        pc[k] = Fraction(values[i]) ** k
                    term *= pc[k]
            total += term
        return total

    # -- division and gcd ---------------------------------------------

    def exact_div(self, other):
        """Exact quotient self/other; raises ExactDivisionError otherwise."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            c = other.constant_value()
            return MultiPoly(self.nvars, {e: _ratio(v, c) for e, v in self.terms.items()})
        quot = {}
        rem = dict(self.terms)
        de, dc = other.lex_leading()
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in qe):
                raise ExactDivisionError("leading monomial not divisible")
            qc = _ratio(c, dc)
            quot[qe] = quot.get(qe, 0) + qc
            for oe, oc in other.terms.items():
                te = tuple(a + b for a, b in zip(qe, oe))
                s = rem.get(te, 0) - qc * oc
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
        return MultiPoly(self.nvars, quot)

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except ExactDivisionError:
            return False

    # -- printing -------------------------------------------------------

    def to_string(self, names, compact=False):
        """Human-readable form, terms in descending lexicographic order."""
        if self.is_zero:
            return "0"
        plus, minus = ("+", "-") if compact else (" + ", " - ")
        out = ""
        for e in sorted(self.terms, reverse=True):
            c = Fraction(self.terms[e])
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append("%s^%d" % (names[i], k))
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not out:
                out = body if c > 0 else "-" + body
            else:
                out += (plus if c > 0 else minus) + body
        return out

    def __repr__(self):
        return "MultiPoly(%d, %s)" % (self.nvars, self.terms)


def _ratio(a, b):
    q = Fraction(a) / Fraction(b)
    return int(q) if q.denominator == 1 else q


def _frac_gcd(values):
    """gcd of rationals: gcd of numerators over lcm of denominators."""
    num = 0
    den = 1
    for v in values:
        f = Fraction(v)
        num = _int_gcd(num, abs(f.numerator))
        den = den * f.denominator // _int_gcd(den, f.denominator)
    return Fraction(num, den)


def normalize_sign(p):
    """Scale p so coefficients are coprime integers, lex-leading one positive."""
    if p.is_zero:
        return p
    g = _frac_gcd(p.terms.values())
    _, lead = p.lex_leading()
    if lead < 0:
        g = -g
    return MultiPoly(p.nvars, {e: _ratio(c, g) for e, c in p.terms.items()})


def _prem(f, g, var):
    """Pseudo-remainder of f by g in the given variable."""
    dg = g.degree(var)
    lcg = g.coeff_of(var, dg)
    r = f
    e = f.degree(var) - dg + 1
    while not r.is_zero and r.degree(var) >= dg:
        dr = r.degree(var)
        lcr = r.coeff_of(var, dr)
        shift = MultiPoly.var(f.nvars, var, dr - dg) if dr > dg else MultiPoly.one(f.nvars)
        r = r * lcg - lcr * shift * g
        e -= 1
    if e > 0:
        r = r * lcg ** e
    return r


def _content_primitive(p, var):
    """Split p = content * primitive with respect to one variable."""
    coeffs = [p.coeff_of(var, d) for d in range(p.degree(var) + 1)]
    coeffs = [c for c in coeffs if not c.is_zero]
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant() and Fraction(abs(cont.constant_value())) == 1:
            break
        cont = poly_gcd(cont, c)
    cont = normalize_sign(cont)
    return cont, p.exact_div(cont)


def poly_gcd(f, g):
    """gcd in Q[x1..xk], normalized to coprime integer coefficients."""
    if f.is_zero:
        return normalize_sign(g)
    if g.is_zero:
        return normalize_sign(f)
    var = None
    for v in range(f.nvars - 1, -1, -1):
        if f.degree(v) > 0 or g.degree(v) > 0:
            var = v
            break
    if var is None:
        return MultiPoly.one(f.nvars)
    cf, pf = _content_primitive(f, var)
    cg, pg = _content_primitive(g, var)
    cont = poly_gcd(cf, cg)
    if pf.degree(var) < pg.degree(var):
        pf, pg = pg, pf
    while not pg.is_zero:
        r = _prem(pf, pg, var)
        if not r.is_zero:
            _, r = _content_primitive(r, var)
        pf, pg = pg, r
    _, pf = _content_primitive(pf, var)
    return normalize_sign(cont * pf)
