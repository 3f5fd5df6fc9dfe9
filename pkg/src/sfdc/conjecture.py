"""Linking-coefficient linear system, target polynomial, and its verification.

For the nested word tau(k) one forms all right-half linkings indexed by
letter-pair specs.  Requiring every left-half linking of the resulting
combination to vanish gives a square linear system for the coefficients
x_spec; the target polynomial is the value of the combination itself.
Two claims are checked:

1. every solved coefficient for an l-pair spec is a polynomial in θ of
   degree (at most) l, with a θ-free denominator;
2. the target equals C(n) * prod_{p=0}^{k-1} (θ + K·p(n+p-1)) for a
   constant C(n) depending only on n.

The worked small cases force C(n) = (n-1)n...(n+k-3) / (n(n+2)...(n+2k-4)),
a reading with k-1 factors in both products; the report also evaluates
the wider k-factor reading for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SizeLimitError
from .multipoly import MultiPoly
from .algebra import (DiagramPoly, RationalFunctionN, FieldElem, RF_ONE,
                      VAR_N)
from .linsolve import solve_linear, residuals, SingularSystemError
from .linking import LinkSpec, LinkedWord, tau, tau_permuted, tau_linked, multi_link, left_positions
from .reduction import default_reducer
from .words import double_factorial

DEFAULT_K_CAP = 6
DIAGONAL_NOTE = ("diagonal closure: one circle per linked pair, so the closure factor is "
                 "n^l for an l-pair spec (a flat n^k factor would not match the k=2,3 systems)")


class NotDivisibleError(ArithmeticError):
    """Target polynomial is not an exact multiple of the root product."""


def system_index(k: int):
    """All letter-pair specs over {1..k}, ordered by pair count then lexicographically."""
    specs = []
    for l in range(1, k // 2 + 1):
        for subset in itertools.combinations(range(1, k + 1), 2 * l):
            stack = [((), subset)]
            while stack:
                done, rest = stack.pop()
                if not rest:
                    specs.append(LinkSpec(done))
                    continue
                first = rest[0]
                for idx in range(1, len(rest)):
                    stack.append((done + ((first, rest[idx]),),
                                  rest[1:idx] + rest[idx + 1:]))
    return sorted(specs, key=lambda s: (s.l, s.pairs))


def expected_system_size(k: int) -> int:
    return sum(_comb(k, 2 * l) * double_factorial(2 * l - 1) for l in range(1, k // 2 + 1))


def _comb(a, b):
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def _value(linked: LinkedWord) -> MultiPoly:
    """n^circles * |word| as a trivariate polynomial in (n, K, θ)."""
    mp = default_reducer().reduce(linked.word).to_multipoly()
    if linked.circles:
        mp = mp * MultiPoly.var(3, VAR_N, linked.circles)
    return mp


def build_system(k: int, sigma=None, cap: int = DEFAULT_K_CAP):
    """Square system (index, matrix, rhs) over polynomials in (n, K, θ)."""
    if k > cap:
        raise SizeLimitError("k=%d exceeds cap %d" % (k, cap))
    if k < 2:
        raise ValueError("the linear system needs k >= 2")
    index = system_index(k)
    base = tau(k) if sigma is None else tau_permuted(k, sigma)
    columns = [tau_linked(k, spec, sigma) for spec in index]
    matrix = []
    rhs = []
    for row_spec in index:
        at = left_positions(row_spec)
        matrix.append([_value(multi_link(wc, at)) for wc in columns])
        rhs.append(-_value(multi_link(base, at)))
    return index, matrix, rhs


def _subs_n(matrix, rhs, n_value):
    m2 = [[e.subs_var(VAR_N, Fraction(n_value)) for e in row] for row in matrix]
    b2 = [e.subs_var(VAR_N, Fraction(n_value)) for e in rhs]
    return m2, b2


def solve_coefficients(k: int, method: str = "bareiss", sigma=None, n_value=None,
                       cap: int = DEFAULT_K_CAP):
    """Exact solution of the linking system, keyed by spec.

    Every equation's residual is verified to be identically zero.
    """
    index, matrix, rhs = build_system(k, sigma, cap)
    if n_value is not None:
        matrix, rhs = _subs_n(matrix, rhs, n_value)
    x = solve_linear(matrix, rhs, method)
    bad = [i for i, r in enumerate(residuals(matrix, rhs, x)) if not r.is_zero]
    if bad:
        raise ArithmeticError("nonzero residuals in rows %s" % bad)
    return dict(zip(index, x))


def target_polynomial(k: int, coefficients=None, sigma=None, n_value=None,
                      cap: int = DEFAULT_K_CAP) -> DiagramPoly:
    """|tau| plus the x-weighted right-half linkings, as a (θ, K) polynomial."""
    reducer = default_reducer()
    if k == 1:
        return reducer.reduce(tau(1))
    if coefficients is None:
        coefficients = solve_coefficients(k, sigma=sigma, n_value=n_value, cap=cap)
    base = reducer.reduce(tau(k) if sigma is None else tau_permuted(k, sigma))
    if n_value is not None:
        base = base.substitute_n(n_value)
    total = FieldElem.from_diagram_poly(base)
    for spec, x in coefficients.items():
        dp = reducer.reduce(tau_linked(k, spec, sigma))
        if n_value is not None:
            dp = dp.substitute_n(n_value)
        total = total + x * FieldElem.from_diagram_poly(dp)
    return total.to_diagram_poly()


def root_product(k: int, n_value=None) -> DiagramPoly:
    """prod_{p=0}^{k-1} (θ + K*p*(n+p-1)), expanded."""
    out = DiagramPoly.constant(1)
    for p in range(k):
        lin = RationalFunctionN.from_coeffs([p * (p - 1), p])
        out = out * DiagramPoly({(1, 0): RF_ONE, (0, 1): lin})
    if n_value is not None:
        out = out.substitute_n(n_value)
    return out


def closed_form_constant(k: int) -> RationalFunctionN:
    """C(n) with k-1 factors: (n-1)n...(n+k-3) over n(n+2)...(n+2k-4)."""
    num = MultiPoly.one(1)
    den = MultiPoly.one(1)
    for i in range(k - 1):
        num = num * MultiPoly(1, {(1,): 1, (0,): i - 1})
        den = den * MultiPoly(1, {(1,): 1, (0,): 2 * i})
    return RationalFunctionN(num, den)


def closed_form_constant_wide(k: int) -> RationalFunctionN:
    """The k-factor reading of the same constant, kept for comparison."""
    num = MultiPoly.one(1)
    den = MultiPoly.one(1)
    for i in range(k):
        num = num * MultiPoly(1, {(1,): 1, (0,): i - 1})
        den = den * MultiPoly(1, {(1,): 1, (0,): 2 * i})
    return RationalFunctionN(num, den)


def conjectured_product(k: int):
    """(C(n) * root product, C(n)) under the worked-example reading."""
    c = closed_form_constant(k)
    return root_product(k).scale(c), c


def extract_constant(target: DiagramPoly, k: int, n_value=None) -> RationalFunctionN:
    """Divide the target by the root product; exact or NotDivisibleError."""
    prod = root_product(k, n_value)
    c = target.coefficient(k, 0)
    if not (target - prod.scale(c)).is_zero:
        raise NotDivisibleError("target is not a constant multiple of the root product")
    return c


@dataclass
class ConjectureReport:
    k: int
    mode: str
    x: dict
    target: DiagramPoly
    product: DiagramPoly
    c_constant: object
    conj1_pass: bool
    conj2_pass: bool
    c_pass: bool
    diagnostics: list = field(default_factory=list)

    @property
    def all_pass(self):
        return self.conj1_pass and self.conj2_pass and self.c_pass

    def to_json_obj(self):
        coeffs = []
        for spec, val in self.x.items():
            coeffs.append({
                "pairs": [list(p) for p in spec.pairs],
                "value": val.to_string(unicode_theta=False),
                "theta_degree": val.theta_degree(),
            })
        return {
            "k": self.k,
            "mode": self.mode,
            "coefficients": coeffs,
            "target": self.target.to_json_obj(),
            "product": self.product.to_json_obj(),
            "c_constant": str(self.c_constant),
            "conj1_pass": self.conj1_pass,
            "conj2_pass": self.conj2_pass,
            "c_pass": self.c_pass,
            "diagnostics": list(self.diagnostics),
        }

    def summary_lines(self, unicode_theta=True):
        lines = ["k = %d  (%s mode)" % (self.k, self.mode)]
        for spec, val in self.x.items():
            lines.append("  x[%s] = %s" % (spec, val.to_string(unicode_theta)))
        lines.append("  target  = %s" % self.target.to_string(unicode_theta))
        lines.append("  product = %s" % self.product.to_string(unicode_theta))
        lines.append("  C = %s" % (self.c_constant,))
        lines.append("  degree claim: %s   product claim: %s   constant claim: %s"
                     % tuple("pass" if b else "FAIL"
                             for b in (self.conj1_pass, self.conj2_pass, self.c_pass)))
        lines.extend("  note: %s" % d for d in self.diagnostics)
        return lines


def _check_degrees(x_map, diagnostics):
    ok = True
    for spec, val in x_map.items():
        if val.is_zero:
            diagnostics.append("x[%s] is identically zero" % spec)
            continue
        if not val.denominator_theta_free():
            diagnostics.append("x[%s] has a θ-dependent denominator" % spec)
            ok = False
            continue
        deg = val.theta_degree()
        if deg > spec.l:
            diagnostics.append("x[%s] has θ-degree %d > %d" % (spec, deg, spec.l))
            ok = False
        elif deg < spec.l:
            diagnostics.append("x[%s] has θ-degree %d < %d (treated as pass)"
                               % (spec, deg, spec.l))
    return ok


def verify_conjectures(k: int, mode: str = "symbolic", n_samples=(2, 3, 5, 7, 11),
                       cap: int = DEFAULT_K_CAP) -> ConjectureReport:
    """Solve the system and check both claims, exactly."""
    diagnostics = [DIAGONAL_NOTE]
    if k == 1:
        target = target_polynomial(1)
        prod = root_product(1)
        return ConjectureReport(1, mode, {}, target, prod, RF_ONE,
                                True, target == prod, True,
                                diagnostics + ["k=1 is degenerate: no linkable pairs"])
    closed = closed_form_constant(k)
    wide = closed_form_constant_wide(k)
    diagnostics.append("closed-form C candidates: %s (k-1 factors) vs %s (k factors)"
                       % (closed, wide))
    if mode == "symbolic":
        x_map = solve_coefficients(k, cap=cap)
        target = target_polynomial(k, x_map, cap=cap)
        prod = root_product(k)
        conj1 = _check_degrees(x_map, diagnostics)
        try:
            c = extract_constant(target, k)
            conj2 = True
        except NotDivisibleError as exc:
            diagnostics.append(str(exc))
            c = target.coefficient(k, 0)
            conj2 = False
        c_pass = conj2 and c == closed
        if conj2 and c == wide:
            diagnostics.append("extracted C also matches the k-factor reading")
        return ConjectureReport(k, mode, x_map, target, prod.scale(c), c,
                                conj1, conj2, c_pass, diagnostics)
    if mode != "numeric":
        raise ValueError("mode must be 'symbolic' or 'numeric'")
    index, matrix, rhs = build_system(k, cap=cap)
    first = None
    symbolic_x = None
    conj1 = conj2 = c_pass = True
    for n_val in n_samples:
        m2, b2 = _subs_n(matrix, rhs, n_val)
        try:
            x = solve_linear(m2, b2)
        except SingularSystemError:
            # Below the diagram-independence bound the specialized matrix
            # degenerates; the solution regarded as a function of n still
            # specializes, so fall back to it and re-check the residuals.
            if symbolic_x is None:
                symbolic_x = solve_linear(matrix, rhs)
            x = [fe.subs_n(Fraction(n_val)) for fe in symbolic_x]
            bad = [i for i, r in enumerate(residuals(m2, b2, x)) if not r.is_zero]
            if bad:
                raise ArithmeticError("specialized solution fails rows %s at n=%d"
                                      % (bad, n_val))
            diagnostics.append("n=%d: specialized matrix is singular; used the "
                               "n-symbolic solution (residuals re-checked)" % n_val)
        x_map = dict(zip(index, x))
        target = target_polynomial(k, x_map, n_value=n_val, cap=cap)
        conj1 = _check_degrees(x_map, diagnostics) and conj1
        try:
            c = extract_constant(target, k, n_value=n_val)
        except NotDivisibleError as exc:
            diagnostics.append("n=%d: %s" % (n_val, exc))
            conj2 = False
            c = target.coefficient(k, 0)
        expect = closed.evaluate(n_val)
        sample_c = c.evaluate(n_val) if not c.is_polynomial() else c.n_coefficient(0)
        if sample_c != expect:
            diagnostics.append("n=%d: extracted C=%s, closed form gives %s"
                               % (n_val, sample_c, expect))
            c_pass = False
        else:
            diagnostics.append("n=%d: C=%s matches closed form" % (n_val, sample_c))
        if first is None:
            first = (x_map, target, c)
    x_map, target, c = first
    return ConjectureReport(k, mode, x_map, target,
                            root_product(k, n_samples[0]).scale(c), closed,
                            conj1, conj2, c_pass, diagnostics)
