import itertools
import json
import random
from fractions import Fraction

import pytest

from sfdc import (DiagramPoly, RationalFunctionN, FieldElem, LinkSpec,
                  SizeLimitError, NotDivisibleError, SingularSystemError)
from sfdc.conjecture import (system_index, expected_system_size, build_system,
                             solve_coefficients, target_polynomial, root_product,
                             conjectured_product, closed_form_constant,
                             closed_form_constant_wide, extract_constant,
                             verify_conjectures, DIAGONAL_NOTE)
from sfdc.linsolve import solve_linear
from sfdc.multipoly import MultiPoly
from util import staircase


def rf(num, den=(1,)):
    return RationalFunctionN.from_coeffs(num, den)


def fe(num_terms, den_terms):
    return FieldElem(MultiPoly(3, num_terms), MultiPoly(3, den_terms))


N = (1, 0, 0)
K = (0, 1, 0)
T = (0, 0, 1)
ONE = (0, 0, 0)


def test_system_index_sizes():
    # number of ways to choose disjoint letter pairs inside {1..k}
    expected = {2: 1, 3: 3, 4: 9, 5: 25, 6: 75}
    for k, size in expected.items():
        idx = system_index(k)
        assert len(idx) == size == expected_system_size(k)
        assert len(set(idx)) == size
        assert idx == sorted(idx, key=lambda s: (s.l, s.pairs))


def test_build_system_k2_golden():
    index, matrix, rhs = build_system(2)
    assert index == [LinkSpec(((1, 2),))]
    assert matrix == [[MultiPoly(3, {N: 1})]]
    assert rhs == [MultiPoly(3, {T: -1})]


def test_build_system_k3_golden():
    index, matrix, rhs = build_system(3)
    assert index == [LinkSpec(((1, 2),)), LinkSpec(((1, 3),)), LinkSpec(((2, 3),))]
    nt = MultiPoly(3, {(1, 0, 1): 1})
    t = MultiPoly(3, {T: 1})
    assert matrix == [[nt, t, t], [t, nt, t], [t, t, nt]]
    th2 = MultiPoly(3, {(0, 0, 2): -1})
    mixed = MultiPoly(3, {(0, 0, 2): -1, (1, 1, 1): -1, (0, 1, 1): 1})
    assert rhs == [th2, mixed, mixed]


def test_build_system_k4_shape():
    index, matrix, rhs = build_system(4)
    assert len(index) == 9
    assert sum(1 for s in index if s.l == 1) == 6
    assert sum(1 for s in index if s.l == 2) == 3
    assert len(matrix) == 9 and all(len(row) == 9 for row in matrix)


def test_solve_k2_golden():
    xs = solve_coefficients(2)
    assert xs[LinkSpec(((1, 2),))] == fe({T: -1}, {N: 1})


def test_solve_k3_golden():
    xs = solve_coefficients(3)
    den = {N: 1, ONE: 2}
    assert xs[LinkSpec(((1, 2),))] == fe({K: 2, T: -1}, den)
    assert xs[LinkSpec(((1, 3),))] == fe({(1, 1, 0): -1, T: -1}, den)
    assert xs[LinkSpec(((2, 3),))] == xs[LinkSpec(((1, 3),))]


def test_target_k2_golden():
    # ((n-1)/n) θ(θ+Kn)
    expected = DiagramPoly({(2, 0): rf([-1, 1], [0, 1]), (1, 1): rf([-1, 1])})
    assert target_polynomial(2) == expected
    assert expected == root_product(2).scale(rf([-1, 1], [0, 1]))


def test_target_k3_golden():
    expected = root_product(3).scale(rf([-1, 1], [2, 1]))
    assert target_polynomial(3) == expected


def test_target_k1_degenerate():
    assert target_polynomial(1) == DiagramPoly.theta_power(1)


def test_root_product_structure():
    for k in range(1, 5):
        prod = root_product(k)
        assert prod.coefficient(k, 0) == rf([1])
        # roots at θ = -K p (n+p-1) for sampled integers
        rng = random.Random(3)
        for _ in range(5):
            n_val = rng.randint(2, 9)
            k_val = Fraction(rng.randint(1, 5))
            for p in range(k):
                theta = -k_val * p * (n_val + p - 1)
                assert prod.substitute(theta, k_val, n_val) == 0


def test_target_vanishes_at_spectral_roots():
    rng = random.Random(11)
    for k in (2, 3, 4):
        target = target_polynomial(k)
        for _ in range(5):
            n_val = rng.randint(3, 11)
            k_val = Fraction(rng.randint(1, 4))
            for p in range(k):
                theta = -k_val * p * (n_val + p - 1)
                assert target.substitute(theta, k_val, n_val) == 0


def test_closed_form_constants():
    assert closed_form_constant(1) == rf([1])
    assert closed_form_constant(2) == rf([-1, 1], [0, 1])
    assert closed_form_constant(3) == rf([-1, 1], [2, 1])
    assert closed_form_constant(4) == rf([-1, 0, 1], [8, 6, 1])
    # the k-factor reading disagrees with the k=2 golden value
    assert closed_form_constant_wide(2) == rf([-1, 1], [2, 1])
    assert closed_form_constant_wide(2) != closed_form_constant(2)


def test_conjectured_product():
    prod, c = conjectured_product(2)
    assert c == rf([-1, 1], [0, 1])
    assert prod == target_polynomial(2)
    prod, c = conjectured_product(3)
    assert prod == target_polynomial(3)
    prod, c = conjectured_product(1)
    assert c == rf([1]) and prod == DiagramPoly.theta_power(1)


def test_extract_constant_not_divisible():
    bad = target_polynomial(2) + DiagramPoly({(0, 2): 1})
    with pytest.raises(NotDivisibleError):
        extract_constant(bad, 2)


def test_verify_symbolic_small():
    for k in (1, 2, 3, 4):
        report = verify_conjectures(k)
        assert report.conj1_pass and report.conj2_pass and report.c_pass, k
        assert DIAGONAL_NOTE in report.diagnostics
    assert verify_conjectures(3).c_constant == rf([-1, 1], [2, 1])


def test_verify_numeric_k4():
    report = verify_conjectures(4, mode="numeric", n_samples=(2, 3, 5, 7, 11))
    assert report.conj1_pass and report.conj2_pass and report.c_pass
    assert any("singular" in d for d in report.diagnostics)  # n=2 degenerates


def test_numeric_symbolic_agreement():
    for k in (2, 3, 4):
        sym = solve_coefficients(k)
        for n_val in (3, 5, 7, 11):
            num = solve_coefficients(k, n_value=n_val)
            for spec, val in sym.items():
                assert val.subs_n(Fraction(n_val)) == num[spec], (k, n_val, spec)


def test_methods_agree():
    for k in (2, 3):
        assert solve_coefficients(k, method="bareiss") == solve_coefficients(k, method="naive")


def _relabel(spec, g):
    return LinkSpec(tuple(tuple(sorted((g[i], g[j]))) for i, j in spec.pairs))


def test_starting_word_robustness():
    # Any permuted starting word gives the same system after a relabeling
    # of the specs by a letter permutation, and the identical target.
    for k in (2, 3):
        index, matrix, rhs = build_system(k)
        pos = {s: i for i, s in enumerate(index)}
        xs = solve_coefficients(k)
        base_target = target_polynomial(k)
        for sigma in itertools.permutations(range(1, k + 1)):
            index2, matrix2, rhs2 = build_system(k, sigma=sigma)
            assert index2 == index
            xs2 = solve_coefficients(k, sigma=sigma)
            assert target_polynomial(k, xs2, sigma=sigma) == base_target
            aligned = False
            for gperm in itertools.permutations(range(1, k + 1)):
                g = dict(zip(range(1, k + 1), gperm))
                if any(rhs2[pos[_relabel(j, g)]] != rhs[pos[j]] for j in index):
                    continue
                if any(matrix2[pos[_relabel(j, g)]][pos[_relabel(i, g)]] != matrix[pos[j]][pos[i]]
                       for j in index for i in index):
                    continue
                if all(xs2[_relabel(i, g)] == xs[i] for i in index):
                    aligned = True
                    break
            assert aligned, (k, sigma)


def test_conj1_theta_degrees():
    for k in (2, 3, 4):
        for spec, val in solve_coefficients(k).items():
            assert val.denominator_theta_free()
            assert val.theta_degree() == spec.l


def test_report_json():
    report = verify_conjectures(3)
    obj = json.loads(json.dumps(report.to_json_obj()))
    assert obj["k"] == 3
    assert obj["conj1_pass"] and obj["conj2_pass"] and obj["c_pass"]
    assert len(obj["coefficients"]) == 3
    assert DiagramPoly.from_json_obj(obj["target"]) == target_polynomial(3)


def test_size_cap():
    with pytest.raises(SizeLimitError):
        build_system(7)
    with pytest.raises(ValueError):
        build_system(1)
