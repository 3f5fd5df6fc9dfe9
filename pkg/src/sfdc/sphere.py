"""Independent exact check on the unit sphere S^n in R^{n+1}.

Eigenfunctions of the sphere Laplacian are restrictions of harmonic
homogeneous polynomials; the eigenvalue of a degree-p harmonic is
λ = p(p+n-1), and the curvature constant is +1.  Iterated covariant
derivatives are computed by ambient differentiation followed by
projecting every tensor slot with P = I - x xᵀ, with components kept
reduced modulo the relation Σ x_i² = 1.  Contractions against paired
tensor slots use the projector components P^{ab}, so no frame is ever
chosen, and all arithmetic is over exact rationals.

This path shares nothing with the word-reduction engine; agreement of
the two at spectral points θ = -p(p+n-1), K = 1 is the strongest
integrity check in the test suite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .multipoly import MultiPoly
from .words import Word


class BasePointError(ValueError):
    """The eigenfunction vanishes at the chosen base point."""


# -- ambient polynomial helpers ----------------------------------------


def ambient_laplacian(poly: MultiPoly) -> MultiPoly:
    out = MultiPoly(poly.nvars)
    for i in range(poly.nvars):
        out = out + poly.derivative(i).derivative(i)
    return out


def reduce_mod_sphere(poly: MultiPoly) -> MultiPoly:
    """Normal form modulo (Σ x_i² - 1): last variable kept to degree < 2."""
    d = poly.nvars
    last = d - 1
    rest_sq = MultiPoly.one(d)
    rest_sq = rest_sq - sum((MultiPoly.var(d, i, 2) for i in range(last)), MultiPoly(d))
    out = MultiPoly(d)
    spow = {0: MultiPoly.one(d)}
    for e, c in poly.terms.items():
        q, r = divmod(e[last], 2)
        if q == 0:
            out = out + MultiPoly(d, {e: c})
            continue
        if q not in spow:
            spow[q] = rest_sq ** q
        e2 = list(e)
        e2[last] = r
        out = out + MultiPoly(d, {tuple(e2): c}) * spow[q]
    return out


def _nCr(a, b):
    if b < 0:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def eigenspace_dimension(n: int, p: int) -> int:
    d = n + 1
    return _nCr(d + p - 1, p) - _nCr(d + p - 3, p - 2)


def _monomials(d, deg):
    """Exponent tuples of total degree deg, lexicographically descending."""
    if d == 1:
        return [(deg,)]
    out = []
    for e0 in range(deg, -1, -1):
        out.extend((e0,) + rest for rest in _monomials(d - 1, deg - e0))
    return out


def _nullspace(rows, ncols):
    """Basis of the rational nullspace of a dense matrix (list of rows)."""
    m = [list(map(Fraction, row)) for row in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(ncols):
        if c in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for pc, pr in pivots.items():
            v[pc] = -m[pr][c]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class HarmonicEigenfunction:
    n: int
    p: int
    index: int
    poly: MultiPoly
    lam: int


def make_eigenfunction(n: int, p: int, index: int = 0) -> HarmonicEigenfunction:
    """The index-th member of a deterministic harmonic basis of degree p."""
    if n < 2 or p < 0:
        raise ValueError("need n >= 2 and p >= 0")
    d = n + 1
    if p == 0:
        basis_polys = [MultiPoly.one(d)]
    elif p == 1:
        basis_polys = [MultiPoly.var(d, i) for i in range(d)]
    else:
        monos = _monomials(d, p)
        out_monos = _monomials(d, p - 2)
        row_of = {e: i for i, e in enumerate(out_monos)}
        cols = []
        for e in monos:
            col = [Fraction(0)] * len(out_monos)
            for i in range(d):
                if e[i] >= 2:
                    e2 = list(e)
                    e2[i] -= 2
                    col[row_of[tuple(e2)]] += e[i] * (e[i] - 1)
            cols.append(col)
        rows = [[cols[c][r] for c in range(len(monos))] for r in range(len(out_monos))]
        basis_polys = []
        for v in _nullspace(rows, len(monos)):
            den_lcm = 1
            for x in v:
                den_lcm = den_lcm * x.denominator // _gcd(den_lcm, x.denominator)
            ints = [int(x * den_lcm) for x in v]
            g = 0
            for x in ints:
                g = _gcd(g, abs(x))
            ints = [x // g for x in ints]
            basis_polys.append(MultiPoly(d, {e: c for e, c in zip(monos, ints) if c}))
    if index >= len(basis_polys):
        raise IndexError("eigenspace of (n=%d, p=%d) has dimension %d"
                         % (n, p, len(basis_polys)))
    poly = basis_polys[index]
    if not ambient_laplacian(poly).is_zero:
        raise AssertionError("constructed polynomial is not harmonic")
    return HarmonicEigenfunction(n, p, index, poly, p * (p + n - 1))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- tensor fields ------------------------------------------------------


class AmbientTensorField:
    """Tangential tensor on S^n stored through ambient components.

    ``components`` maps index tuples in {0..n}^rank to reduced
    polynomials; absent indices are zero.
    """

    __slots__ = ("rank", "dim", "components")

    def __init__(self, rank, dim, components):
        self.rank = rank
        self.dim = dim
        self.components = components

    def evaluate(self, q):
        out = {}
        for idx, poly in self.components.items():
            v = poly.eval_all(q)
            if v:
                out[idx] = v
        return out


def covariant_derivative(t: AmbientTensorField) -> AmbientTensorField:
    """Levi-Civita derivative: ambient gradient, then project every slot.

    The new direction slot comes first, matching the recursive reading
    of an iterated derivative.
    """
    d = t.dim
    u = {}
    for idx, poly in t.components.items():
        for a in range(d):
            dp = poly.derivative(a)
            if not dp.is_zero:
                u[(a,) + idx] = dp
    xv = [MultiPoly.var(d, i) for i in range(d)]
    for s in range(t.rank + 1):
        radial = {}
        for idx, poly in u.items():
            key = idx[:s] + idx[s + 1:]
            acc = radial.get(key)
            term = xv[idx[s]] * poly
            radial[key] = term if acc is None else acc + term
        for key, rp in radial.items():
            if rp.is_zero:
                continue
            for a in range(d):
                idx = key[:s] + (a,) + key[s:]
                v = u.get(idx, MultiPoly(d)) - xv[a] * rp
                if v.is_zero:
                    u.pop(idx, None)
                else:
                    u[idx] = v
    reduced = {}
    for idx, poly in u.items():
        rp = reduce_mod_sphere(poly)
        if not rp.is_zero:
            reduced[idx] = rp
    return AmbientTensorField(t.rank + 1, d, reduced)


def is_tangential(t: AmbientTensorField) -> bool:
    """Every slot contracted with the position vector vanishes mod the sphere."""
    d = t.dim
    xv = [MultiPoly.var(d, i) for i in range(d)]
    for s in range(t.rank):
        sums = {}
        for idx, poly in t.components.items():
            key = idx[:s] + idx[s + 1:]
            term = xv[idx[s]] * poly
            acc = sums.get(key)
            sums[key] = term if acc is None else acc + term
        for sp in sums.values():
            if not reduce_mod_sphere(sp).is_zero:
                return False
    return True


# -- rational sphere points ---------------------------------------------

_PATTERNS = (
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)),
    (Fraction(2, 7), Fraction(3, 7), Fraction(6, 7)),
    (Fraction(12, 13), Fraction(4, 13), Fraction(3, 13)),
    (Fraction(4, 9), Fraction(4, 9), Fraction(7, 9)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
)


def sphere_points(n: int):
    """A fixed list of exact rational points on S^n (unit vectors)."""
    d = n + 1
    points = []
    for pat in _PATTERNS:
        if len(pat) > d:
            continue
        base = tuple(pat) + (Fraction(0),) * (d - len(pat))
        for shift in range(d):
            q = tuple(base[(i - shift) % d] for i in range(d))
            if q not in points:
                points.append(q)
    assert all(sum(x * x for x in q) == 1 for q in points)
    return points


def pick_points(f: HarmonicEigenfunction, count: int):
    """First points of the fixed list where f does not vanish."""
    out = []
    for q in sphere_points(f.n):
        if f.poly.eval_all(q) != 0:
            out.append(q)
            if len(out) == count:
                return out
    raise BasePointError("fewer than %d usable points for (n=%d, p=%d, index=%d)"
                         % (count, f.n, f.p, f.index))


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class SphereOracle:
    """Derivative tower of one eigenfunction, with exact contractions."""

    def __init__(self, n, p, index=0):
        self.f = make_eigenfunction(n, p, index)
        self.n = n
        self.dim = n + 1
        self.lam = self.f.lam
        self.theta_value = Fraction(-self.f.lam)
        self._tower = [AmbientTensorField(0, self.dim, {(): reduce_mod_sphere(self.f.poly)})]
        self._evals = {}

    def derivative_tensor(self, m) -> AmbientTensorField:
        while len(self._tower) <= m:
            self._tower.append(covariant_derivative(self._tower[-1]))
        return self._tower[m]

    def eval_tensor(self, m, q):
        key = (m, q)
        if key not in self._evals:
            self._evals[key] = self.derivative_tensor(m).evaluate(q)
        return self._evals[key]

    def projector(self, q):
        return [[(1 if a == b else 0) - q[a] * q[b] for b in range(self.dim)]
                for a in range(self.dim)]

    def contract_word(self, w: Word, q) -> Fraction:
        """Ratio (∇^{2k} f)(paired slots per w) / f(q); exact."""
        fq = self.f.poly.eval_all(q)
        if fq == 0:
            raise BasePointError("f vanishes at %s" % (q,))
        vals = self.eval_tensor(len(w), q)
        proj = self.projector(q)
        pairs = [(i - 1, j - 1) for i, j in w.pairing]
        total = Fraction(0)
        for idx, v in vals.items():
            c = v
            for s1, s2 in pairs:
                pc = proj[idx[s1]][idx[s2]]
                if pc == 0:
                    c = 0
                    break
                c = c * pc
            if c:
                total += c
        return total / fq

    def lambda_values(self, q):
        """Volume-form components ε_{b a_1..a_n} x_b evaluated at q."""
        out = {}
        for perm in itertools.permutations(range(self.dim)):
            key = perm[1:]
            out[key] = out.get(key, Fraction(0)) + _perm_sign(perm) * q[perm[0]]
        return out

    def contract_volume(self, k, sigma_seed=0, q=None) -> Fraction:
        """Contract ∇^{2k+n} f against a random slot assignment of pair
        tensors and the volume block; always exactly zero."""
        r = 2 * k + self.n
        if q is None:
            q = sphere_points(self.n)[0]
        rng = random.Random(sigma_seed)
        slots = list(range(r))
        rng.shuffle(slots)
        pairs = [(slots[2 * i], slots[2 * i + 1]) for i in range(k)]
        vol_slots = slots[2 * k:]
        vals = self.eval_tensor(r, q)
        proj = self.projector(q)
        lam = self.lambda_values(q)
        total = Fraction(0)
        for idx, v in vals.items():
            c = v
            for s1, s2 in pairs:
                pc = proj[idx[s1]][idx[s2]]
                if pc == 0:
                    c = 0
                    break
                c = c * pc
            if not c:
                continue
            lv = lam.get(tuple(idx[s] for s in vol_slots))
            if lv:
                total += c * lv
        return total

    def _contract_vectors(self, m, q, vectors):
        vals = self.eval_tensor(m, q)
        total = Fraction(0)
        for idx, v in vals.items():
            c = v
            for s, vec in enumerate(vectors):
                f = vec[idx[s]]
                if f == 0:
                    c = 0
                    break
                c = c * f
            if c:
                total += c
        return total

    def commutation_check(self, m, i, frame, q) -> bool:
        """Swap identity of slots (i, i+1): symmetric at the end,
        curvature-corrected elsewhere; also checks last-two symmetry."""
        if not 1 <= i <= m - 1:
            raise IndexError("slot %d out of range 1..%d" % (i, m - 1))
        proj = self.projector(q)
        zs = [tuple(proj[c - 1][a] for a in range(self.dim)) for c in frame]
        if len(zs) != m:
            raise ValueError("frame must provide %d vectors" % m)
        swapped = list(zs)
        swapped[m - 2], swapped[m - 1] = swapped[m - 1], swapped[m - 2]
        if self._contract_vectors(m, q, zs) != self._contract_vectors(m, q, swapped):
            return False
        at = list(zs)
        at[i - 1], at[i] = at[i], at[i - 1]
        lhs = self._contract_vectors(m, q, zs) - self._contract_vectors(m, q, at)
        rhs = Fraction(0)
        zi, zi1 = zs[i - 1], zs[i]
        for j in range(i + 2, m + 1):
            zj = zs[j - 1]
            gij = sum(a * b for a, b in zip(zi, zj))
            gi1j = sum(a * b for a, b in zip(zi1, zj))
            w = tuple(gij * b - gi1j * a for a, b in zip(zi, zi1))
            args = [zs[s - 1] for s in range(1, m + 1) if s not in (i, i + 1)]
            args[j - 3] = w
            rhs += self._contract_vectors(m - 2, q, args)
        return lhs == rhs


_oracles = {}


def get_oracle(n, p, index=0) -> SphereOracle:
    key = (n, p, index)
    if key not in _oracles:
        _oracles[key] = SphereOracle(n, p, index)
    return _oracles[key]


def contract_word(n, p, w: Word, q, index=0) -> Fraction:
    return get_oracle(n, p, index).contract_word(w, q)


def contract_volume(n, p, k, sigma_seed=0) -> Fraction:
    return get_oracle(n, p).contract_volume(k, sigma_seed)


def commutation_check(n, p, m, i, frame, q) -> bool:
    return get_oracle(n, p).commutation_check(m, i, frame, q)
