from fractions import Fraction

import pytest

from sfdc import (make_eigenfunction, covariant_derivative, is_tangential,
                  sphere_points, pick_points, get_oracle, BasePointError,
                  parse_word, reduce_word, substitute, enumerate_words)
from sfdc.sphere import (ambient_laplacian, reduce_mod_sphere,
                         eigenspace_dimension, AmbientTensorField)
from sfdc.multipoly import MultiPoly


def test_eigenfunctions_are_harmonic():
    for n in (2, 3):
        for p in (0, 1, 2, 3):
            for idx in (0, 1):
                if idx >= eigenspace_dimension(n, p):
                    continue
                f = make_eigenfunction(n, p, idx)
                assert ambient_laplacian(f.poly).is_zero
                assert not f.poly.is_zero
                assert all(sum(e) == p for e in f.poly.terms)
                assert f.lam == p * (p + n - 1)


def test_eigenspace_dimensions():
    assert eigenspace_dimension(2, 1) == 3
    assert eigenspace_dimension(2, 2) == 5
    assert eigenspace_dimension(3, 1) == 4
    assert eigenspace_dimension(3, 2) == 9


def test_eigenfunction_index_error():
    with pytest.raises(IndexError):
        make_eigenfunction(2, 1, 3)
    with pytest.raises(IndexError):
        make_eigenfunction(2, 2, 5)


def test_projected_gradient_of_coordinate():
    # f a coordinate function: (∇f)_a = δ_{ac} - x_a x_c
    f = make_eigenfunction(2, 1, 0)
    c = next(i for i in range(3) if f.poly == MultiPoly.var(3, i))
    t = covariant_derivative(AmbientTensorField(0, 3, {(): f.poly}))
    for a in range(3):
        expected = MultiPoly.const(3, 1 if a == c else 0) - \
            MultiPoly.var(3, a) * MultiPoly.var(3, c)
        assert t.components.get((a,), MultiPoly(3)) == reduce_mod_sphere(expected)


def test_tangentiality():
    oracle = get_oracle(2, 2)
    for m in (1, 2, 3):
        assert is_tangential(oracle.derivative_tensor(m))


def test_laplacian_eigenvalue_via_pair_contraction():
    # contracting the double derivative with the paired-slot tensor gives -λ
    for n, p in ((2, 1), (2, 2), (3, 1)):
        oracle = get_oracle(n, p)
        q = pick_points(oracle.f, 1)[0]
        assert oracle.contract_word(parse_word("aa"), q) == -oracle.lam


def test_empty_word_ratio_is_one():
    oracle = get_oracle(2, 1)
    q = pick_points(oracle.f, 1)[0]
    assert oracle.contract_word(parse_word(""), q) == 1


def test_base_point_error():
    oracle = get_oracle(2, 1)
    zero_q = next(q for q in sphere_points(2) if oracle.f.poly.eval_all(q) == 0)
    with pytest.raises(BasePointError):
        oracle.contract_word(parse_word("aa"), zero_q)
    assert all(oracle.f.poly.eval_all(q) != 0 for q in pick_points(oracle.f, 2))


def test_point_independence():
    oracle = get_oracle(2, 2)
    w = parse_word("abab")
    ratios = {oracle.contract_word(w, q) for q in pick_points(oracle.f, 3)}
    assert len(ratios) == 1


def test_eigenfunction_independence():
    w = parse_word("abba")
    values = set()
    for idx in range(eigenspace_dimension(2, 1)):
        oracle = get_oracle(2, 1, idx)
        q = pick_points(oracle.f, 1)[0]
        values.add(oracle.contract_word(w, q))
    assert len(values) == 1


def test_engine_agreement_spot():
    for n, p in ((2, 1), (3, 1)):
        oracle = get_oracle(n, p)
        q = pick_points(oracle.f, 1)[0]
        for text in ("aa", "aabb", "abab", "abba"):
            w = parse_word(text)
            expected = substitute(reduce_word(w), oracle.theta_value, 1, n)
            assert oracle.contract_word(w, q) == expected


def test_sphere_points_exact():
    for n in (2, 3, 4):
        pts = sphere_points(n)
        assert len(pts) >= 6
        assert all(sum(x * x for x in q) == 1 for q in pts)


def test_volume_annihilation_spot():
    assert get_oracle(2, 1).contract_volume(0, sigma_seed=1) == 0
    assert get_oracle(2, 2).contract_volume(1, sigma_seed=2) == 0
    assert get_oracle(3, 1).contract_volume(0, sigma_seed=3) == 0


def test_commutation_spot():
    o = get_oracle(2, 2)
    q = pick_points(o.f, 1)[0]
    assert o.commutation_check(3, 2, (1, 2, 3), q)
    assert o.commutation_check(3, 1, (1, 2, 3), q)
    o3 = get_oracle(3, 1)
    q3 = pick_points(o3.f, 1)[0]
    assert o3.commutation_check(4, 2, (1, 2, 3, 4), q3)


def test_commutation_index_error():
    o = get_oracle(2, 1)
    q = pick_points(o.f, 1)[0]
    with pytest.raises(IndexError):
        o.commutation_check(3, 3, (1, 2, 3), q)


def test_reduce_mod_sphere_idempotent_and_sound():
    d = 3
    x = [MultiPoly.var(d, i) for i in range(d)]
    norm = x[0] * x[0] + x[1] * x[1] + x[2] * x[2]
    assert reduce_mod_sphere(norm) == MultiPoly.one(d)
    p = norm * norm * x[1] - x[0]
    r = reduce_mod_sphere(p)
    assert r == reduce_mod_sphere(r)
    q = sphere_points(2)[3]
    assert r.eval_all(q) == p.eval_all(q)
