"""Exact linear solvers over the (n, K, θ) fraction field.

Two routes: fraction-free Bareiss elimination over the polynomial ring
(divisions deferred and always exact), and naive Gaussian elimination
with field arithmetic.  The two must agree; tests compare them.
"""

from __future__ import annotations

from .multipoly import MultiPoly
from .algebra import FieldElem, FE_ZERO


class SingularSystemError(ValueError):
    """Coefficient matrix is singular; carries a nonzero kernel vector."""

    def __init__(self, message, kernel=None):
        super().__init__(message)
        self.kernel = kernel


def _as_field(entry):
    return entry if isinstance(entry, FieldElem) else FieldElem(entry)


def _pick_pivot(rows, col, start, matrix):
    """Row index of the lowest-total-degree nonzero entry in a column."""
    best = None
    best_deg = None
    for r in range(start, rows):
        e = matrix[r][col]
        if isinstance(e, FieldElem):
            if e.is_zero:
                continue
            deg = e.num.degree()
        else:
            if e.is_zero:
                continue
            deg = e.degree()
        if best is None or deg < best_deg:
            best, best_deg = r, deg
    return best


def kernel_vector(a):
    """A nonzero rational-function vector v with a @ v == 0, or None."""
    n = len(a)
    m = [[_as_field(e) for e in row] for row in a]
    pivot_of_col = {}
    row = 0
    for col in range(n):
        piv = _pick_pivot(n, col, row, m)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [e / pv for e in m[row]]
        for r in range(n):
            if r != row and not m[r][col].is_zero:
                f = m[r][col]
                m[r] = [er - f * ec for er, ec in zip(m[r], m[row])]
        pivot_of_col[col] = row
        row += 1
        if row == n:
            break
    free = [c for c in range(n) if c not in pivot_of_col]
    if not free:
        return None
    fc = free[0]
    v = [FE_ZERO] * n
    v[fc] = FieldElem(1)
    for col, r in pivot_of_col.items():
        v[col] = -m[r][fc]
    return v


def solve_bareiss(a, b):
    """Solve a square system with MultiPoly entries; exact FieldElem result."""
    n = len(a)
    if n == 0:
        return []
    nvars = a[0][0].nvars
    m = [[a[r][c].copy() for c in range(n)] + [b[r].copy()] for r in range(n)]
    prev = MultiPoly.one(nvars)
    for t in range(n):
        piv = _pick_pivot(n, t, t, m)
        if piv is None:
            raise SingularSystemError("singular system (pivot column %d)" % t,
                                      kernel=kernel_vector(a))
        if piv != t:
            m[t], m[piv] = m[piv], m[t]
        for r in range(t + 1, n):
            for c in range(t + 1, n + 1):
                m[r][c] = (m[t][t] * m[r][c] - m[r][t] * m[t][c]).exact_div(prev)
            m[r][t] = MultiPoly.zero(nvars)
        prev = m[t][t]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = FieldElem(m[i][n])
        for j in range(i + 1, n):
            s = s - FieldElem(m[i][j]) * x[j]
        x[i] = s / FieldElem(m[i][i])
    return x


def solve_naive(a, b):
    """Gaussian elimination with rational-function arithmetic throughout."""
    n = len(a)
    if n == 0:
        return []
    m = [[_as_field(e) for e in a[r]] + [_as_field(b[r])] for r in range(n)]
    for t in range(n):
        piv = _pick_pivot(n, t, t, m)
        if piv is None:
            raise SingularSystemError("singular system (pivot column %d)" % t,
                                      kernel=kernel_vector(a))
        if piv != t:
            m[t], m[piv] = m[piv], m[t]
        pv = m[t][t]
        for r in range(t + 1, n):
            if m[r][t].is_zero:
                continue
            f = m[r][t] / pv
            for c in range(t, n + 1):
                m[r][c] = m[r][c] - f * m[t][c]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = m[i][n]
        for j in range(i + 1, n):
            s = s - m[i][j] * x[j]
        x[i] = s / m[i][i]
    return x


def residuals(a, b, x):
    """A·x − b as FieldElem values; all zero for a valid solution."""
    out = []
    for r in range(len(a)):
        s = -_as_field(b[r])
        for c in range(len(a)):
            s = s + _as_field(a[r][c]) * x[c]
        out.append(s)
    return out


def solve_linear(a, b, method="bareiss"):
    """Solve a square nonsingular system; residuals are identically zero."""
    if method == "bareiss":
        return solve_bareiss(a, b)
    if method == "naive":
        return solve_naive(a, b)
    raise ValueError("unknown method %r" % (method,))
