import json
import math
import random
from fractions import Fraction

import pytest

from bdalg import (BDElement, Cyclo, INF, LocConstFn, MatrixSymbol,
                   SupernaturalNumber, character, operator_norm,
                   root_of_unity, spectrum_sample)
from bdalg.verify import rand_bd

from oracles import apply_to_basis, columns_equal, compose_on_basis, entry

S = SupernaturalNumber.of({2: INF, 3: INF})
U = BDElement.shift(S)
CHI2 = character(2, 1)
CHI4 = character(4, 1)
F = LocConstFn([Fraction(1, 2), 3])
G = LocConstFn([2, Fraction(1, 3)])


def test_mul_against_basis_oracle():
    a = BDElement(S, {1: CHI2})
    prod = a * a
    for k in range(-8, 9):
        assert columns_equal(apply_to_basis(prod, k), compose_on_basis(a, a, k))
    # frozen expected value: (U M_chi2)^2 = -U^2
    assert prod == BDElement.shift(S, 2).scale(-1)


def test_mul_random_against_oracle():
    rng = random.Random(17)
    for _ in range(30):
        a = rand_bd(rng, S, (1, 2, 3, 4), max_n=3)
        b = rand_bd(rng, S, (1, 2, 6), max_n=3)
        prod = a * b
        for k in range(-8, 9):
            assert columns_equal(apply_to_basis(prod, k), compose_on_basis(a, b, k))


def test_mul_unit_and_diagonal():
    one = BDElement.one(S)
    b = BDElement(S, {0: LocConstFn([1, 2, 3]), 2: character(3, 1)})
    assert b * one == b
    assert one * b == b
    assert BDElement.mult_op(S, F) * BDElement.mult_op(S, G) == BDElement.mult_op(S, F * G)


def test_covariance_relation():
    assert BDElement.mult_op(S, F) * U == U * BDElement.mult_op(S, F.pullback(1))


def test_product_is_associative_and_distributive():
    rng = random.Random(19)
    for _ in range(15):
        a = rand_bd(rng, S, (1, 2), max_n=2, max_terms=2)
        b = rand_bd(rng, S, (2, 4), max_n=2, max_terms=2)
        c = rand_bd(rng, S, (1, 3), max_n=2, max_terms=2)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


def test_adjoint():
    assert U.adjoint() == BDElement(S, {-1: LocConstFn.constant(1)})
    assert BDElement.mult_op(S, F).adjoint() == BDElement.mult_op(S, F.conj())
    # (U M_chi4)* = U^-1 M_g with g = zeta_4 * conj(chi4), checked by hand
    adj = BDElement(S, {1: CHI4}).adjoint()
    assert adj == BDElement(S, {-1: CHI4.conj().scale(root_of_unity(1, 4))})
    # basis-window oracle: <E_i, a* E_j> = conj(<E_j, a E_i>)
    a = BDElement(S, {1: CHI4, 0: F, -2: G})
    astar = a.adjoint()
    for i in range(-6, 7):
        for j in range(-6, 7):
            assert entry(astar, i, j) == entry(a, j, i).conj()


def test_adjoint_involutive_antimultiplicative():
    rng = random.Random(23)
    for _ in range(20):
        a = rand_bd(rng, S, (1, 2, 4), max_n=2)
        b = rand_bd(rng, S, (1, 3), max_n=2)
        assert a.adjoint().adjoint() == a
        assert (a * b).adjoint() == b.adjoint() * a.adjoint()


def test_delta_label():
    assert U.delta_label() == U
    assert BDElement.mult_op(S, F).delta_label() == BDElement.zero(S)
    c = BDElement(S, {-2: F})
    assert c.delta_label() == c.scale(-2)


def test_delta_leibniz():
    rng = random.Random(29)
    for _ in range(30):
        a = rand_bd(rng, S, (1, 2, 3), max_n=3)
        b = rand_bd(rng, S, (1, 2, 6), max_n=3)
        assert (a * b).delta_label() == a * b.delta_label() + a.delta_label() * b


def test_circle_action():
    assert U.circle_action(Fraction(1, 2)) == U.scale(-1)
    assert BDElement.mult_op(S, F).circle_action(Fraction(1, 3)) == BDElement.mult_op(S, F)
    u2f = BDElement(S, {2: F})
    assert u2f.circle_action(Fraction(1, 4)) == u2f.scale(-1)


def test_circle_action_is_automorphism():
    rng = random.Random(31)
    theta = Fraction(1, 3)
    for _ in range(10):
        a = rand_bd(rng, S, (1, 2), max_n=2)
        b = rand_bd(rng, S, (1, 3), max_n=2)
        assert (a * b).circle_action(theta) == a.circle_action(theta) * b.circle_action(theta)
        assert a.circle_action(theta).adjoint() == a.adjoint().circle_action(theta)


def test_fourier_equivariance():
    rng = random.Random(37)
    theta = Fraction(2, 5)
    for _ in range(15):
        b = rand_bd(rng, S, (1, 2, 4), max_n=3)
        rb = b.circle_action(theta)
        for n in range(-3, 4):
            assert rb.fourier_coefficient(n) == \
                b.fourier_coefficient(n).scale(root_of_unity(2 * n, 5))


def test_fourier_coefficient():
    b = BDElement(S, {1: F, 0: G})
    assert b.fourier_coefficient(1) == F
    assert b.fourier_coefficient(5).is_zero()
    assert b.fourier_coefficient(0) == G


def test_fourier_reconstruction():
    rng = random.Random(41)
    for _ in range(30):
        b = rand_bd(rng, S, (1, 2, 3, 4, 6), max_n=4)
        rebuilt = BDElement(S, {n: b.fourier_coefficient(n) for n in b.support})
        assert rebuilt == b


def test_symbol_shift():
    sym = BDElement(S, {1: LocConstFn.constant(1, 2)}).matrix_symbol()
    assert sym.entries[0][1].coefficient(1) == 1
    assert sym.entries[1][0].coefficient(0) == 1
    assert sym.entries[0][0].is_zero() and sym.entries[1][1].is_zero()


def test_symbol_diagonal():
    sym = BDElement.mult_op(S, CHI2).matrix_symbol()
    assert sym.entries[0][0].coefficient(0) == 1
    assert sym.entries[1][1].coefficient(0) == -1
    assert sym.entries[0][1].is_zero()


def test_symbol_u_squared():
    sym = BDElement(S, {2: LocConstFn.constant(1, 2)}).matrix_symbol()
    for i in range(2):
        assert sym.entries[i][i].coefficient(1) == 1
    assert sym.entries[0][1].is_zero() and sym.entries[1][0].is_zero()


def test_symbol_star_homomorphism():
    rng = random.Random(43)
    for _ in range(15):
        a = rand_bd(rng, S, (2, 4), max_n=3)
        b = rand_bd(rng, S, (1, 4), max_n=3)
        l = math.lcm(a.period, b.period)
        al, bl = a.with_period(l), b.with_period(l)
        assert (a * b).with_period(l).matrix_symbol() == al.matrix_symbol() * bl.matrix_symbol()
        assert a.adjoint().matrix_symbol() == a.matrix_symbol().star()
        assert (a + b).with_period(l).matrix_symbol() == al.matrix_symbol() + bl.matrix_symbol()


def test_norm_diagonal_exact():
    rep = operator_norm(BDElement.mult_op(S, LocConstFn([1, -2])))
    assert rep.value == 2.0
    assert rep.kind == "exact"
    assert rep.window == (2.0, 2.0)


def test_norm_u_plus_uinv():
    rep = operator_norm(U + U.adjoint(), grid=1024)
    assert rep.kind == "grid-estimate"
    assert abs(rep.value - 2.0) < 1e-6
    assert rep.window == (1.0, 2.0)


def test_norm_u_powers_of_two():
    for m in range(7):
        rep = operator_norm(U, m=m, grid=256)
        assert abs(rep.value - 2 ** m) < 1e-9


def test_norm_methods_agree_bitwise():
    rng = random.Random(47)
    for _ in range(10):
        a = rand_bd(rng, S, (1, 2, 3), max_n=3)
        for m in (0, 2, 5):
            rb = operator_norm(a, m=m, grid=64, method="binomial")
            rr = operator_norm(a, m=m, grid=64, method="recursive")
            assert rb.value == rr.value
            assert rb.window == rr.window


def test_norm_sandwich_and_fourier_contractivity():
    rng = random.Random(53)
    for _ in range(40):
        a = rand_bd(rng, S, (1, 2, 4), max_n=4)
        rep = operator_norm(a, grid=256)
        assert rep.window[0] <= rep.value + 1e-9
        assert rep.value <= rep.window[1] + 1e-9
        for n in a.support:
            assert a.coeffs[n].sup_norm() <= rep.value + 1e-9


def test_norm_rejects_small_grid():
    with pytest.raises(ValueError):
        operator_norm(U, grid=8)


def test_trace():
    assert BDElement(S, {3: F}).trace().is_zero()
    assert BDElement.mult_op(S, character(6, 2)).trace().is_zero()
    kappa41 = LocConstFn([0, 1, 0, 0])
    assert BDElement.mult_op(S, kappa41).trace() == Fraction(1, 4)
    assert BDElement.one(S).trace() == 1


def test_trace_is_tracial():
    rng = random.Random(59)
    for _ in range(20):
        a = rand_bd(rng, S, (1, 2, 3), max_n=2)
        b = rand_bd(rng, S, (2, 3), max_n=2)
        assert (a * b).trace() == (b * a).trace()


def test_spectrum_samples():
    pts = spectrum_sample(BDElement.mult_op(S, CHI2), grid=16)
    rounded = {complex(round(w.real, 9), round(w.imag, 9)) for w in pts}
    assert rounded == {1 + 0j, -1 + 0j}
    for w in spectrum_sample(U, grid=32):
        assert abs(abs(w) - 1) < 1e-9
    half = (U + U.adjoint()).scale(Fraction(1, 2))
    for w in spectrum_sample(half, grid=64):
        assert abs(w.imag) < 1e-9
        assert -1 - 1e-9 <= w.real <= 1 + 1e-9


def test_period_must_divide_s():
    with pytest.raises(ValueError):
        BDElement(SupernaturalNumber.of({2: INF}), {0: LocConstFn([1, 2, 3])})


def test_serialization_roundtrip():
    a = BDElement(S, {1: CHI4, 0: F, -2: G})
    obj = json.loads(json.dumps(a.to_json()))
    assert BDElement.from_json(obj) == a
    with pytest.raises(ValueError):
        BDElement.from_json({"S": [], "coeffs": {}})
    sym = a.matrix_symbol()
    assert MatrixSymbol.from_json(json.loads(json.dumps(sym.to_json()))) == sym
