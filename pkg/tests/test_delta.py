import random
from fractions import Fraction

import pytest
import sympy

from vacalc.delta import (DeltaTerm, delta_annihilation_check, delta_contract, delta_symmetry_check,
                          delta_window, pairing_matrix, reduce_by_difference)
from vacalc.laurent import LaurentPoly, residue

z, w = LaurentPoly.var("z"), LaurentPoly.var("w")


def brute_contract(f: LaurentPoly, n: int, lo=-30, hi=30) -> LaurentPoly:
    """Res_z f(z) d_z^n delta(z, w) from an explicit window."""
    series = delta_window("z", "w", lo, hi, n)
    return residue(f * series, "z")


def test_sifting():
    assert residue(z ** 2 * delta_window("z", "w", -5, 5), "z") == w ** 2


def test_contract_examples():
    assert delta_contract(LaurentPoly.var("x1", 2), DeltaTerm(1, 2)) == LaurentPoly.var("x2", 2)
    assert delta_contract(LaurentPoly.constant(1), DeltaTerm(1, 2, 2)).is_zero()
    assert delta_contract(LaurentPoly.var("x1", 3), DeltaTerm(1, 2, 1)) == LaurentPoly.var("x2", 2, -3)


@pytest.mark.parametrize("e,n", [(3, 1), (4, 2), (2, 0), (5, 3)])
def test_contract_matches_window(e, n):
    sym = delta_contract(LaurentPoly.var("x1", e), DeltaTerm(1, 2, n)).rename({"x2": "w"})
    assert sym == brute_contract(z ** e, n)


@pytest.mark.parametrize("n", [0, 3])
def test_annihilation_examples(n):
    win = (-10, 10) if n == 0 else (-20, 20)
    assert delta_annihilation_check(n, win) is True


def test_annihilation_one_short():
    assert delta_annihilation_check(1, (-10, 10), power=1) is False


def test_annihilation_window_too_small():
    assert delta_annihilation_check(4, (0, 1)) is None


@pytest.mark.parametrize("n", range(6))
def test_annihilation_sweep(n):
    r = 2 * n + 10
    assert delta_annihilation_check(n, (-r, r)) is True


def test_symbolic_rewrite_agrees():
    d = DeltaTerm(1, 2, 3)
    assert reduce_by_difference([d], 4) == []
    once = reduce_by_difference([d], 1)
    assert once == [DeltaTerm(1, 2, 2, Fraction(-3))]


def test_symmetry_windows():
    for lo, hi in [(-6, 6), (-10, 3), (-4, 12)]:
        assert delta_symmetry_check(lo, hi)


def test_pairing_rank():
    m = pairing_matrix(-5, 5)
    for a, row in enumerate(m):
        for b, v in enumerate(row):
            assert v == (1 if (a - 5) + (b - 5) == -1 else 0)
    # a + b = -1 has ten solutions in [-5, 5]: the exponent 5 has no partner
    assert sympy.Matrix(m).rank() == 10
    assert sympy.Matrix(pairing_matrix(-5, 4)).rank() == 10
