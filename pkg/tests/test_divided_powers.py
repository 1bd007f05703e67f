from fractions import Fraction
from itertools import product

import pytest

from oracles import gen_binomial
from vacalc.divided_powers import (DPElement, TensorDP, antipode, coproduct_left_first, dp_act_laurent,
                                   dp_coproduct, dp_mul, hmod_vandermonde_check, iterated_coproduct,
                                   tensor_power_check)
from vacalc.laurent import LaurentPoly, binomial
from vacalc.pbw import AlgebraFamily, State, dp_act_state, universal_extension_map

D = DPElement.D
x = LaurentPoly.var("x")


def test_products():
    assert dp_mul(D(1), D(1)) == D(2, 2)
    assert dp_mul(D(0), D(4)) == D(4)
    assert dp_mul(D(2), D(3)) == D(5, 10)


def test_coproducts():
    assert dp_coproduct(0) == TensorDP(2, {(0, 0): 1})
    assert dp_coproduct(1) == TensorDP(2, {(0, 1): 1, (1, 0): 1})
    assert dp_coproduct(2) == TensorDP(2, {(0, 2): 1, (1, 1): 1, (2, 0): 1})


def test_iterated():
    assert iterated_coproduct(D(3), 1) == TensorDP(1, {(3,): 1})
    assert iterated_coproduct(D(1), 3) == TensorDP(3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    d2 = iterated_coproduct(D(2), 3)
    assert len(d2.terms) == 6 and set(d2.terms.values()) == {1}
    assert d2 == coproduct_left_first(D(2), 3)


@pytest.mark.parametrize("i", range(9))
def test_coassociative_cocommutative(i):
    assert iterated_coproduct(D(i), 3) == coproduct_left_first(D(i), 3)
    assert dp_coproduct(i).swap() == dp_coproduct(i)


@pytest.mark.parametrize("i,j", list(product(range(9), repeat=2)))
def test_bialgebra(i, j):
    assert tensor_power_check(i, j)


def test_counit_and_antipode():
    # m (S (x) id) Delta = unit * counit
    for i in range(1, 7):
        total = DPElement()
        for (p, q), c in dp_coproduct(i).terms.items():
            total = total + dp_mul(antipode(D(p)), D(q)) * c
        assert total == DPElement()


def test_laurent_action():
    assert dp_act_laurent(D(2), x ** 3, "x") == x * 3
    assert dp_act_laurent(D(1), x ** -1, "x") == -(x ** -2)
    # generalized binomial: C(-2, 3) = (-2)(-3)(-4)/3! = -4
    assert gen_binomial(-2, 3) == -4
    assert dp_act_laurent(D(3), x ** -2, "x") == x ** -5 * -4


@pytest.mark.parametrize("m", range(-6, 7))
def test_generalized_binomial(m):
    for i in range(6):
        assert binomial(m, i) == gen_binomial(m, i)


def test_derivation():
    f, g = x ** 3 + x ** -2 * 5, x ** -1 - x * 2
    lhs = dp_act_laurent(D(1), f * g, "x")
    rhs = dp_act_laurent(D(1), f, "x") * g + f * dp_act_laurent(D(1), g, "x")
    assert lhs == rhs


@pytest.mark.parametrize("k", range(5))
def test_vandermonde_sweep(k):
    for m in range(-4, 5):
        for n in range(-4, 5):
            assert hmod_vandermonde_check(k, m, n)


class TestStateAction:
    def test_heisenberg(self):
        H = AlgebraFamily.heisenberg(1)
        b1 = State.monomial(H, ((-1, 0),))
        assert dp_act_state(1, b1) == State.monomial(H, ((-2, 0),))
        assert not dp_act_state(3, State.vacuum(H))

    def test_loop_rule(self):
        # D^(i) J_{-m} = C(m+i-1, i) J_{-m-i}; for m = 1, i = 2 the coefficient is 1
        S = AlgebraFamily.sl2(1)
        e1 = State.monomial(S, (S.gen("e", -1),))
        assert dp_act_state(2, e1) == State.monomial(S, (S.gen("e", -3),))
        for m in range(1, 5):
            for i in range(5):
                s = dp_act_state(i, State.monomial(S, (S.gen("h", -m),)))
                assert s == State.monomial(S, (S.gen("h", -m - i),), gen_binomial(m + i - 1, i))

    def test_virasoro_rule(self):
        # D^(i) = L_{-1}^i / i!, and [L_{-1}, L_{-n}] = (n-1) L_{-n-1}
        V = AlgebraFamily.virasoro(1)
        for n in range(2, 6):
            for i in range(5):
                s = dp_act_state(i, State.monomial(V, ((-n, 0),)))
                assert s == State.monomial(V, ((-n - i, 0),), gen_binomial(n + i - 2, i))

    def test_universal_map(self):
        H = AlgebraFamily.heisenberg(1)
        assert universal_extension_map(H, 0, ["b"]) == State.monomial(H, ((-1, 0),))
        assert universal_extension_map(H, 1, ["b"]) == State.monomial(H, ((-2, 0),))
        assert universal_extension_map(H, 1, ["b", "b"]) == State.monomial(H, ((-2, 0), (-1, 0)), 2)
