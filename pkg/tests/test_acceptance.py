"""Acceptance criteria 1-12, one reported line each.

Run ``pytest tests/test_acceptance.py -s`` (or ``-v``) to see the
``[PASS]/[FAIL] criterion k`` lines.
"""

import contextlib
import json
import random
from fractions import Fraction

import pytest

from oracles import gen_binomial
from vacalc.bicharacter import (TableBicharacter, bichar_convolve, bichar_inverse,
                                default_bicharacter, triple_twisted, twisted_product, Counit)
from vacalc.cli import main
from vacalc.delta import delta_annihilation_check, delta_symmetry_check, delta_window
from vacalc.divided_powers import hmod_vandermonde_check
from vacalc.laurent import LaurentPoly, residue
from vacalc.pbw import AlgebraFamily, State, basis_up_to
from vacalc.quantum import (braided_comm_check, braided_R_from_bichar, plain_comm_check,
                            rmatrix_hexagon_check, toy_bicharacter, ybe_check)
from vacalc.singular import SingularFn
from vacalc.vertex import (VertexAlgebraInstance, check_locality, check_translation, check_vacuum,
                           ope, ope_commutator, vertex_op)


@contextlib.contextmanager
def criterion(capsys, k, text):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\n[FAIL] criterion {k}: {text}")
        raise
    with capsys.disabled():
        print(f"\n[PASS] criterion {k}: {text}")


def st(f, m, c=1):
    return State.monomial(f, m, c)


def test_c01_heisenberg_ope(capsys, tmp_path):
    with criterion(capsys, 1, "Heisenberg OPE principal {2: |0>}, regular (0,0) b(-1)b(-1)|0>"):
        out = tmp_path / "ope.json"
        assert main(["ope", "b(-1)|0>", "b(-1)|0>", "--family", "heisenberg", "--out", str(out)]) == 0
        res = json.loads(out.read_text())["result"]
        assert res["principal"] == {"2": {"terms": [{"coef": "1", "monomial": "|0>"}]}}
        reg = {(r["i"], r["j"]): r["state"] for r in res["regular"]}
        assert reg[(0, 0)] == {"terms": [{"coef": "1", "monomial": "b(-1)b(-1)|0>"}]}


def test_c02_heisenberg_vertex_op(capsys):
    with criterion(capsys, 2, "Y(b(-n)|0>, x1) b(-k)|0> has x1^i coefficient C(n+i-1,i) b(-n-i)b(-k)|0>"):
        H = AlgebraFamily.heisenberg(1)
        va = VertexAlgebraInstance(H)
        for n in range(1, 5):
            for k in range(1, 5):
                res = vertex_op(va, st(H, ((-n, 0),)), st(H, ((-k, 0),)), 5)
                for i in range(6):
                    mono = tuple(sorted(((-n - i, 0), (-k, 0))))
                    assert res.regular[(i, 0)] == st(H, mono, gen_binomial(n + i - 1, i))


SL2_FORM = {("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2}
SL2_BRACKET = {("e", "f"): ("h", 1), ("f", "e"): ("h", -1), ("h", "e"): ("e", 2),
               ("e", "h"): ("e", -2), ("h", "f"): ("f", -2), ("f", "h"): ("f", 2)}


def test_c03_affine_commutator(capsys):
    with criterion(capsys, 3, "sl2 commutator k(a,b)/(z-w)^2 + [a,b](w)/(z-w) for k in {0,1,-2}, 9 pairs"):
        for k in (0, 1, -2):
            S = AlgebraFamily.sl2(k)
            va = VertexAlgebraInstance(S)
            for a in "efh":
                for b in "efh":
                    res = ope_commutator(va, st(S, (S.gen(a, -1),)), st(S, (S.gen(b, -1),)), 3)
                    want = {}
                    if k and SL2_FORM.get((a, b)):
                        want[2] = va.vacuum * (k * SL2_FORM[(a, b)])
                    if (a, b) in SL2_BRACKET:
                        lab, c = SL2_BRACKET[(a, b)]
                        want[1] = st(S, (S.gen(lab, -1),), c)
                    assert res.principal == want
                    assert not res.regular and not res.defect
                    if k == 0:
                        assert 2 not in res.principal


def test_c04_virasoro_ope(capsys):
    with criterion(capsys, 4, "Virasoro OPE {4: c/2, 2: 2L(-2), 1: L(-3)} for c in {0,1,26}"):
        for c in (0, 1, 26):
            V = AlgebraFamily.virasoro(c)
            va = VertexAlgebraInstance(V)
            L = st(V, ((-2, 0),))
            want = {2: L * 2, 1: st(V, ((-3, 0),))}
            if c:
                want[4] = va.vacuum * (Fraction(c) / 2)
            assert ope(va, L, L, 3).principal == want


def test_c05_delta(capsys):
    with criterion(capsys, 5, "delta sifting (20 monomials), symmetry, (z-w)^(j+1) d^j delta = 0 for j <= 5"):
        rng = random.Random(2024)
        z, w = LaurentPoly.var("z"), LaurentPoly.var("w")
        for _ in range(20):
            e = rng.randint(-8, 8)
            c = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
            f = z ** e * c
            assert residue(f * delta_window("z", "w", -20, 20), "z") == w ** e * c
        for lo, hi in [(-6, 6), (-10, 3), (-4, 12)]:
            assert delta_symmetry_check(lo, hi)
        for j in range(6):
            r = 2 * j + 10
            assert delta_annihilation_check(j, (-r, r)) is True


FAMILIES = [AlgebraFamily.heisenberg(1), AlgebraFamily.sl2(1), AlgebraFamily.virasoro(1)]


def test_c06_twisted_products(capsys):
    with criterion(capsys, 6, "twisted associativity and symmetric commutativity, 50 triples per family"):
        for fam in FAMILIES:
            r = default_bicharacter(fam)
            rng = random.Random(6)
            basis = basis_up_to(fam, 3)
            for _ in range(50):
                a, b, c = (st(fam, rng.choice(basis)) for _ in range(3))
                assert triple_twisted(a, b, c, r, "left") == triple_twisted(a, b, c, r, "right")
                ab = twisted_product(a, b, r)
                ba = twisted_product(b, a, r).map_coefficients(lambda v: v.swap(1, 2))
                assert ab == ba


def random_table(fam, rng):
    table = {}
    for a in fam.labels:
        for b in fam.labels:
            table[(a, b)] = SingularFn.pole(1, 2, rng.randint(1, 3), coef=rng.randint(-3, 3) or 1)
    return TableBicharacter(fam, table)


def test_c07_bicharacter_monoid(capsys):
    with criterion(capsys, 7, "r * r^-1 = e on generator pairs; convolution associative"):
        for fam in FAMILIES:
            r = default_bicharacter(fam)
            gens = [((fam.base_mode(), i),) for i in range(len(fam.labels))] + [()]
            one = bichar_convolve(r, bichar_inverse(r))
            eps = Counit(fam)
            for a in gens:
                for b in gens:
                    assert one.evaluate(a, b) == eps.evaluate(a, b)
        rng = random.Random(7)
        S = AlgebraFamily.sl2(0)
        monos = basis_up_to(S, 2)
        for _ in range(4):
            r, s, t = (random_table(S, rng) for _ in range(3))
            left = bichar_convolve(bichar_convolve(r, s), t)
            right = bichar_convolve(r, bichar_convolve(s, t))
            for _ in range(12):
                a, b = rng.choice(monos), rng.choice(monos)
                assert left.evaluate(a, b) == right.evaluate(a, b)


def test_c08_locality(capsys):
    with criterion(capsys, 8, "locality N: Heisenberg 2, affine k=0 1, affine k=1 2, Virasoro 4"):
        H, V = AlgebraFamily.heisenberg(1), AlgebraFamily.virasoro(1)
        va = VertexAlgebraInstance(H)
        assert check_locality(va, st(H, ((-1, 0),)), st(H, ((-1, 0),)), 6, window=4).detail["N"] == 2
        va = VertexAlgebraInstance(V)
        assert check_locality(va, st(V, ((-2, 0),)), st(V, ((-2, 0),)), 6, window=4).detail["N"] == 4
        for k, N in ((0, 1), (1, 2)):
            S = AlgebraFamily.sl2(k)
            va = VertexAlgebraInstance(S)
            rep = check_locality(va, st(S, (S.gen("e", -1),)), st(S, (S.gen("f", -1),)), 4, window=4)
            assert rep.detail["N"] == N


def test_c09_axioms(capsys):
    with criterion(capsys, 9, "vacuum and translation on every bundled instance (window 4, truncation 6)"):
        from vacalc.cli import load_json, resolve
        from vacalc.serialize import bicharacter_from_json, family_from_json

        fams = [family_from_json(load_json(resolve(n))) for n in ("heisenberg", "sl2", "virasoro")]
        for fname, bname in (("heisenberg", "heis_c1"), ("sl2", "sl2_k1"), ("virasoro", "vir_c1"),
                             ("heisenberg", "toy")):
            base = family_from_json(load_json(resolve(fname)))
            fams.append(bicharacter_from_json(load_json(resolve(bname)), base).family)
        for fam in fams:
            va = VertexAlgebraInstance(fam)
            states = [va.vacuum] + [st(fam, ((fam.base_mode(), i),)) for i in range(len(fam.labels))]
            for a in states:
                assert check_vacuum(va, a, 6, 4)
                assert check_translation(va, a, 6, 4)


def test_c10_quantum(capsys):
    with criterion(capsys, 10, "YBE, both R/product identities and braided commutativity to degree 4; "
                               "toy twist is not plainly commutative"):
        H = AlgebraFamily.heisenberg(1)
        for r in (Counit(H), default_bicharacter(H), toy_bicharacter()):
            R = braided_R_from_bichar(r, 4)
            assert R.unit_check()
            assert ybe_check(R)
            assert rmatrix_hexagon_check(R)
            assert braided_comm_check(r, R, 4)
        assert plain_comm_check(default_bicharacter(H), 4)
        assert not plain_comm_check(toy_bicharacter(), 4)


def test_c11_vandermonde(capsys):
    with criterion(capsys, 11, "H-module Vandermonde sweep k <= 4, |m|, |n| <= 4"):
        for k in range(5):
            for m in range(-4, 5):
                for n in range(-4, 5):
                    assert hmod_vandermonde_check(k, m, n)


def test_c12_determinism(capsys, tmp_path):
    with criterion(capsys, 12, "verify --suite all gives byte-identical JSON across runs"):
        for fam, bichar in (("heisenberg", "heis_c1"), ("sl2", "sl2_k1"), ("heisenberg", "toy")):
            blobs = []
            for k in range(2):
                out = tmp_path / f"{bichar}{k}.json"
                assert main(["verify", "--suite", "all", "--family", fam, "--bichar", bichar,
                             "--out", str(out)]) == 0
                blobs.append(out.read_bytes())
            assert blobs[0] == blobs[1]
