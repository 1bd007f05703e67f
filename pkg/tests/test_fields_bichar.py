import random
from fractions import Fraction

import pytest

from vacalc.bicharacter import (BicharacterError, Counit, Flipped, TableBicharacter, bichar_convolve,
                                bichar_eval, bichar_inverse, default_bicharacter, phi_r,
                                singular_extension, triple_twisted, twisted_product)
from vacalc.fields import FieldSeries, nested_normal_order, normal_order_pair
from vacalc.pbw import AlgebraFamily, State, basis_up_to, dp_act_state
from vacalc.quantum import toy_bicharacter
from vacalc.singular import SingularFn

H = AlgebraFamily.heisenberg(1)
S = AlgebraFamily.sl2(1)
V = AlgebraFamily.virasoro(1)
b1 = ((-1, 0),)
b2 = ((-2, 0),)


def st(f, m, c=1):
    return State.monomial(f, m, c)


class TestFields:
    def test_normal_ordered_pair(self):
        bf = FieldSeries.of_state(st(H, b1))
        pair = normal_order_pair(bf, bf)
        # z^0 w^0 coefficient is b_{-1} b_{-1}
        assert pair.coefficient(0, 0, State.vacuum(H)) == st(H, b1 + b1)

    def test_identity_field(self):
        bf = FieldSeries.of_state(st(H, b1))
        ident = FieldSeries.identity(H)
        assert normal_order_pair(ident, bf).diagonal().field == bf.field

    def test_nesting(self):
        bf = FieldSeries.of_state(st(H, b1))
        d = FieldSeries.of_state(st(H, b2))
        f = nested_normal_order([bf, d, bf])
        # :b :D b b:: applied to the vacuum at mode -1 is the state itself
        assert f.mode(-1, State.vacuum(H)) == st(H, ((-2, 0), (-1, 0), (-1, 0)))

    def test_virasoro_modes(self):
        T = FieldSeries.of_state(st(V, ((-2, 0),)))
        got = T.apply(st(V, ((-2, 0),)))
        assert got[0] == st(V, ((-3, 0),))
        assert got[1] == st(V, ((-2, 0),), 2)
        assert 2 not in got
        assert got[3] == State.vacuum(V) * Fraction(1, 2)

    def test_window_exactness(self):
        T = FieldSeries(V, FieldSeries.of_state(st(V, ((-2, 0),))).field, window=(-3, 2))
        assert not T.is_exact_on(st(V, ((-2, 0),)))
        assert FieldSeries.of_state(st(V, ((-2, 0),))).is_exact_on(st(V, ((-2, 0),)))


class TestBicharacter:
    r = default_bicharacter(H)

    def test_counit_values(self):
        assert self.r.evaluate((), ()) == SingularFn.lift(1)
        assert not self.r.evaluate((), b1)
        assert not self.r.evaluate(b1, ())

    def test_heisenberg_table(self):
        assert self.r.evaluate(b1, b1) == SingularFn.pole(1, 2, 2)
        assert self.r.evaluate(b2, b1) == SingularFn.pole(1, 2, 3, coef=-2)

    def test_monomial_permanent(self):
        # m! c^m delta_{m,n} / (x1 - x2)^{2m}
        for m in range(1, 4):
            got = self.r.evaluate(b1 * m, b1 * m)
            assert got == SingularFn.pole(1, 2, 2 * m, coef=[1, 1, 2, 6][m])
        assert not self.r.evaluate(b1 * 2, b1)

    def test_h_invariance(self):
        for a in basis_up_to(H, 3):
            for b in basis_up_to(H, 3):
                da = dp_act_state(1, st(H, a))
                lhs = bichar_eval(self.r, da, st(H, b))
                rhs = bichar_eval(self.r, st(H, a), st(H, b)).derivative("x1")
                assert lhs == rhs

    def test_missing_pair(self):
        r = TableBicharacter(S, {("e", "f"): SingularFn.pole(1, 2, 2)})
        with pytest.raises(BicharacterError):
            r.evaluate((S.gen("h", -1),), (S.gen("h", -1),))

    def test_monoid(self):
        eps = Counit(H)
        r = self.r
        for a in basis_up_to(H, 3):
            for b in basis_up_to(H, 3):
                assert bichar_convolve(r, eps).evaluate(a, b) == r.evaluate(a, b)
                assert bichar_inverse(eps).evaluate(a, b) == eps.evaluate(a, b)
        assert not bichar_convolve(r, bichar_inverse(r)).evaluate(b1, b1)

    def test_twisted_products(self):
        r = self.r
        a = st(H, b1)
        assert twisted_product(a, a, Counit(H)) == st(H, b1 + b1)
        want = State(H, {b1 + b1: SingularFn.lift(1), (): SingularFn.pole(1, 2, 2)})
        assert twisted_product(a, a, r) == want
        assert twisted_product(State.vacuum(H), a, r) == a.map_coefficients(SingularFn.lift)

    def test_symmetric_commutativity(self):
        r = self.r
        basis = basis_up_to(H, 3)
        for a in basis:
            for b in basis:
                ab = twisted_product(st(H, a), st(H, b), r)
                ba = twisted_product(st(H, b), st(H, a), r)
                assert ab == ba.map_coefficients(lambda v: v.swap(1, 2))

    def test_singular_extension(self):
        r = self.r
        a = st(H, b1)
        assert singular_extension(r, [(a, 1)], [(a, 2)]) == r.evaluate(b1, b1)
        # b b at {1, 2} against b b at {3, 4}: the two perfect matchings
        want = (SingularFn.pole(1, 3, 2) * SingularFn.pole(2, 4, 2)
                + SingularFn.pole(1, 4, 2) * SingularFn.pole(2, 3, 2))
        assert singular_extension(r, [(a, 1), (a, 2)], [(a, 3), (a, 4)]) == want
        # one generator on the right cannot pair with two on the left
        assert not singular_extension(r, [(a, 1), (a, 2)], [(a, 3)])
        vac = State.vacuum(H)
        assert singular_extension(r, [(a, 1), (vac, 2)], [(a, 3)]) == SingularFn.pole(1, 3, 2)
        with pytest.raises(BicharacterError):
            singular_extension(r, [(a, 1)], [(a, 1)])

    @pytest.mark.parametrize("fam", [H, S, V], ids=["heisenberg", "sl2", "virasoro"])
    def test_associativity(self, fam):
        r = default_bicharacter(fam)
        rng = random.Random(7)
        basis = [m for m in basis_up_to(fam, 3)]
        for _ in range(8):
            a, b, c = (st(fam, rng.choice(basis)) for _ in range(3))
            assert triple_twisted(a, b, c, r, "left") == triple_twisted(a, b, c, r, "right")

    def test_phi_r(self):
        res = phi_r(st(H, b1), st(H, b1), self.r, 2)
        assert res.principal == {2: State.vacuum(H)}
        assert res.regular[(0, 0)] == State.monomial(H, b1 + b1)
        eps = phi_r(st(S, (S.gen("e", -1),)), st(S, (S.gen("f", -1),)), Counit(S), 1)
        assert eps.regular[(0, 0)] == State.monomial(S, (S.gen("e", -1), S.gen("f", -1)))

    def test_phi_r_virasoro(self):
        for c in (0, 1, 26):
            Vc = AlgebraFamily.virasoro(c)
            L2 = st(Vc, ((-2, 0),))
            res = phi_r(L2, L2, default_bicharacter(Vc), 1)
            want = {2: State.monomial(Vc, ((-2, 0),), 2), 1: State.monomial(Vc, ((-3, 0),))}
            if c:
                want[4] = State.vacuum(Vc) * (Fraction(c) / 2)
            assert res.principal == want

    def test_toy_is_not_symmetric(self):
        assert default_bicharacter(S).is_symmetric()
        assert not toy_bicharacter().is_symmetric()
        assert Flipped(toy_bicharacter()).evaluate(b1, b1) == SingularFn.pole(2, 1)
