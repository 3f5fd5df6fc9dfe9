"""Exact coefficient arithmetic for the diagram calculus.

Three layers, all over arbitrary-precision rationals:

* ``RationalFunctionN`` -- a reduced ratio p(n)/q(n) of univariate
  polynomials in the dimension symbol n, with monic denominator.
* ``DiagramPoly`` -- a polynomial in the eigenvalue variable θ and the
  curvature constant K whose coefficients are RationalFunctionN values.
* ``FieldElem`` -- a reduced ratio of polynomials in (n, K, θ); this is
  where solved linking coefficients live.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly, poly_gcd, normalize_sign, ExactDivisionError

# Variable order used for trivariate polynomials throughout.
VAR_N, VAR_K, VAR_T = 0, 1, 2
NAMES3 = ("n", "K", "θ")
NAMES3_ASCII = ("n", "K", "t")


class PoleError(ZeroDivisionError):
    """A substituted value annihilates a coefficient denominator."""


def _as_frac_str(c) -> str:
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


def _coeffs_to_poly(coeffs):
    terms = {}
    for d, c in enumerate(coeffs):
        f = Fraction(c)
        if f:
            terms[(d,)] = int(f) if f.denominator == 1 else f
    return MultiPoly(1, terms)


class RationalFunctionN:
    """Reduced ratio of polynomials in n; denominator monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(1, num)
        if den is None:
            den = MultiPoly.one(1)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(1, den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = MultiPoly.one(1)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.terms[max(den.terms)] if not den.is_zero else 1
        if lead != 1:
            inv = Fraction(1, 1) / Fraction(lead)
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_coeffs(cls, num_coeffs, den_coeffs=(1,)):
        return cls(_coeffs_to_poly(num_coeffs), _coeffs_to_poly(den_coeffs))

    @classmethod
    def n_power(cls, d, coeff=1):
        return cls(MultiPoly.var(1, 0, d, coeff))

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_polynomial(self):
        return self.den.degree(0) <= 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionN):
            other = RationalFunctionN(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RationalFunctionN):
            other = RationalFunctionN(other)
        return RationalFunctionN(self.num * other.den + other.num * self.den,
                                 self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionN(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunctionN):
            other = RationalFunctionN(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunctionN):
            other = RationalFunctionN(other)
        return RationalFunctionN(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunctionN):
            other = RationalFunctionN(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunctionN(self.num * other.den, self.den * other.num)

    def evaluate(self, n_val) -> Fraction:
        dv = self.den.eval_all((n_val,))
        if dv == 0:
            raise PoleError("denominator vanishes at n=%s" % (n_val,))
        return self.num.eval_all((n_val,)) / dv

    def n_coefficient(self, d) -> Fraction:
        """Coefficient of n^d in the numerator (denominator must be 1)."""
        if not self.is_polynomial():
            raise ValueError("not a polynomial in n")
        return Fraction(self.num.terms.get((d,), 0)) / Fraction(self.den.constant_value())

    # -- printing ---------------------------------------------------------

    def num_string(self):
        return self.num.to_string(("n",))

    def __str__(self):
        if self.den.is_constant():
            return self.num.to_string(("n",))
        return "(%s)/(%s)" % (self.num.to_string(("n",)), self.den.to_string(("n",)))

    __repr__ = __str__


RF_ZERO = RationalFunctionN(0)
RF_ONE = RationalFunctionN(1)


def _coeff_fragment(rf: RationalFunctionN):
    """Split a coefficient into (sign, magnitude-text or None if magnitude 1)."""
    lead = Fraction(rf.num.terms[max(rf.num.terms)])
    sign = -1 if lead < 0 else 1
    mag = RationalFunctionN(-rf.num, rf.den) if sign < 0 else rf
    if mag.den.is_constant() and mag.num.is_constant():
        c = mag.num.constant_value() / mag.den.constant_value()
        if c == 1:
            return sign, None
        return sign, (str(c) if c.denominator == 1 else "(%s)" % c)
    num_s = mag.num.to_string(("n",), compact=True)
    if mag.den.is_constant() and mag.den.constant_value() == 1:
        return sign, num_s if len(mag.num.terms) == 1 else "(%s)" % num_s
    den_s = mag.den.to_string(("n",), compact=True)
    if len(mag.num.terms) > 1:
        num_s = "(%s)" % num_s
    if len(mag.den.terms) > 1:
        den_s = "(%s)" % den_s
    return sign, "(%s/%s)" % (num_s, den_s)


class DiagramPoly:
    """Polynomial in (θ, K) over the field of rational functions in n.

    Stored as a map (θ-degree a, K-degree b) -> RationalFunctionN with no
    zero coefficients; canonical term order is a descending then b
    descending.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for ab, c in terms.items():
                if not isinstance(c, RationalFunctionN):
                    c = RationalFunctionN(c)
                if not c.is_zero:
                    self.terms[ab] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a, b, coeff=1):
        return cls({(a, b): coeff})

    @classmethod
    def theta_power(cls, k):
        return cls({(k, 0): 1})

    @property
    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-t[0][0], -t[0][1]))

    def __eq__(self, other):
        if not isinstance(other, DiagramPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[ab] == other.terms[ab] for ab in self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for ab, c in other.terms.items():
            s = out.get(ab, RF_ZERO) + c
            if s.is_zero:
                out.pop(ab, None)
            else:
                out[ab] = s
        return DiagramPoly(out)

    def __neg__(self):
        return DiagramPoly({ab: -c for ab, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, DiagramPoly):
            return self.scale(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                ab = (a1 + a2, b1 + b2)
                s = out.get(ab, RF_ZERO) + c1 * c2
                if s.is_zero:
                    out.pop(ab, None)
                else:
                    out[ab] = s
        return DiagramPoly(out)

    def scale(self, c):
        if not isinstance(c, RationalFunctionN):
            c = RationalFunctionN(c)
        if c.is_zero:
            return DiagramPoly()
        return DiagramPoly({ab: v * c for ab, v in self.terms.items()})

    def coefficient(self, a, b) -> RationalFunctionN:
        return self.terms.get((a, b), RF_ZERO)

    def substitute(self, theta, k_const, n_val) -> Fraction:
        """Exact evaluation at rational θ, K and an integer n."""
        theta = Fraction(theta)
        k_const = Fraction(k_const)
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c.evaluate(n_val) * theta ** a * k_const ** b
        return total

    def substitute_n(self, n_val):
        """Fix n, leaving a polynomial in (θ, K) with rational coefficients."""
        return DiagramPoly({ab: RationalFunctionN(c.evaluate(n_val))
                            for ab, c in self.terms.items()})

    def set_curvature_zero(self):
        return DiagramPoly({ab: c for ab, c in self.terms.items() if ab[1] == 0})

    def is_homogeneous(self, k) -> bool:
        return all(a + b == k for a, b in self.terms)

    def theta_degree(self):
        return max((a for a, _ in self.terms), default=-1)

    # -- canonical text and JSON forms -----------------------------------

    def to_string(self, unicode_theta=True):
        if not self.terms:
            return "0"
        tch = "θ" if unicode_theta else "t"
        parts = []
        for (a, b), c in self.sorted_terms():
            sign, mag = _coeff_fragment(c)
            factors = []
            if mag is not None:
                factors.append(mag)
            if b == 1:
                factors.append("K")
            elif b > 1:
                factors.append("K^%d" % b)
            if a == 1:
                factors.append(tch)
            elif a > 1:
                factors.append("%s^%d" % (tch, a))
            body = "*".join(factors) if factors else "1"
            if not parts:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append(("+ " if sign > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_string()

    __repr__ = __str__

    def to_json_obj(self):
        out = []
        for (a, b), c in self.sorted_terms():
            num = [_as_frac_str(c.num.terms.get((d,), 0)) for d in range(c.num.degree(0) + 1)]
            den = [_as_frac_str(c.den.terms.get((d,), 0)) for d in range(c.den.degree(0) + 1)]
            out.append({"a": a, "b": b, "num_coeffs": num or ["0"], "den_coeffs": den})
        return out

    @classmethod
    def from_json_obj(cls, obj):
        terms = {}
        for t in obj:
            rf = RationalFunctionN.from_coeffs([Fraction(x) for x in t["num_coeffs"]],
                                               [Fraction(x) for x in t["den_coeffs"]])
            terms[(t["a"], t["b"])] = rf
        return cls(terms)

    def to_multipoly(self):
        """Lift to a trivariate polynomial in (n, K, θ); denominators must be 1."""
        out = MultiPoly(3)
        for (a, b), c in self.terms.items():
            if not c.is_polynomial():
                raise ValueError("coefficient has an n-denominator")
            scale = Fraction(1) / Fraction(c.den.constant_value())
            for (d,), coef in c.num.terms.items():
                out = out + MultiPoly(3, {(d, b, a): Fraction(coef) * scale})
        return out


DP_ONE = DiagramPoly.constant(1)


class FieldElem:
    """Reduced ratio of polynomials in (n, K, θ)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(3, num)
        if den is None:
            den = MultiPoly.one(3)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(3, den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = MultiPoly.one(3)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = num.exact_div(g)
                den = den.exact_div(g)
        dnorm = normalize_sign(den)
        scale = Fraction(den.terms[max(den.terms)]) / Fraction(dnorm.terms[max(dnorm.terms)])
        if scale != 1:
            num = num * (Fraction(1) / scale)
        self.num = num
        self.den = dnorm

    @classmethod
    def from_diagram_poly(cls, dp: DiagramPoly):
        num = MultiPoly(3)
        den = MultiPoly.one(3)
        for (a, b), c in dp.terms.items():
            cnum = MultiPoly(3, {(d, b, a): v for (d,), v in c.num.terms.items()})
            cden = MultiPoly(3, {(d, 0, 0): v for (d,), v in c.den.terms.items()})
            num = num * cden + cnum * den
            den = den * cden
        return cls(num, den)

    @property
    def is_zero(self):
        return self.num.is_zero

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            other = FieldElem(other)
        return self.num == other.num and self.den == other.den

    def __add__(self, other):
        if not isinstance(other, FieldElem):
            other = FieldElem(other)
        return FieldElem(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, FieldElem):
            other = FieldElem(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            other = FieldElem(other)
        return FieldElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, FieldElem):
            other = FieldElem(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero field element")
        return FieldElem(self.num * other.den, self.den * other.num)

    def evaluate(self, n_val, k_val, theta_val) -> Fraction:
        dv = self.den.eval_all((n_val, k_val, theta_val))
        if dv == 0:
            raise PoleError("denominator vanishes at (n,K,θ)=(%s,%s,%s)" % (n_val, k_val, theta_val))
        return self.num.eval_all((n_val, k_val, theta_val)) / dv

    def subs_n(self, n_val):
        return FieldElem(self.num.subs_var(VAR_N, n_val), self.den.subs_var(VAR_N, n_val))

    def denominator_theta_free(self):
        return self.den.degree(VAR_T) <= 0

    def theta_degree(self):
        """Degree in θ of the numerator minus that of the denominator."""
        return self.num.degree(VAR_T) - max(self.den.degree(VAR_T), 0)

    def to_diagram_poly(self) -> DiagramPoly:
        """Convert back when the denominator involves only n."""
        if self.den.degree(VAR_K) > 0 or self.den.degree(VAR_T) > 0:
            raise ValueError("denominator involves K or θ")
        den1 = MultiPoly(1, {(e[VAR_N],): c for e, c in self.den.terms.items()})
        groups = {}
        for e, c in self.num.terms.items():
            ab = (e[VAR_T], e[VAR_K])
            groups.setdefault(ab, {})[(e[VAR_N],)] = c
        return DiagramPoly({ab: RationalFunctionN(MultiPoly(1, g), den1)
                            for ab, g in groups.items()})

    def to_string(self, unicode_theta=True):
        names = NAMES3 if unicode_theta else NAMES3_ASCII
        num_s = self.num.to_string(names)
        if self.den.is_constant() and self.den.constant_value() == 1:
            return num_s
        den_s = self.den.to_string(names)
        if len(self.num.terms) > 1:
            num_s = "(%s)" % num_s
        if len(self.den.terms) > 1:
            den_s = "(%s)" % den_s
        return "%s/%s" % (num_s, den_s)

    def __str__(self):
        return self.to_string()

    __repr__ = __str__


FE_ZERO = FieldElem(0)
FE_ONE = FieldElem(1)


def poly_arith(op, lhs, rhs):
    """Dispatch basic DiagramPoly arithmetic by name."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "scalar_mul":
        return rhs.scale(lhs) if isinstance(rhs, DiagramPoly) else lhs.scale(rhs)
    raise ValueError("unknown operation %r" % (op,))


def substitute(p: DiagramPoly, theta, k_const, n_val) -> Fraction:
    """Exact rational evaluation of a DiagramPoly."""
    return p.substitute(theta, k_const, n_val)
