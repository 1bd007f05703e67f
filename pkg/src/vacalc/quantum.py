"""R-matrices from bicharacters, Yang-Baxter and braided commutativity checks,
and the shifted singular rings (additive S_Y, multiplicative S_L).

Everything lives on the symmetric algebra of creation generators, with
tensor slots attached to point labels.  An R-matrix is stored as its action
on basis pairs at points (1, 2) and relabelled when it acts on other slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .bicharacter import Bicharacter, BicharacterError, Counit, TableBicharacter, braiding_form
from .pbw import (AlgebraFamily, Monomial, State, TensorState, basis_up_to, degree,
                  mono_coproduct, pbw_product, sym_product)
from .singular import Ring, RingMismatch, S_E, SingularFn, format_singular

Pair = Tuple[Monomial, Monomial]


def _lift(c, ring: Ring) -> SingularFn:
    return SingularFn.lift(c, ring)


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.passed


class RMatrixOp:
    """A bilinear operator on V (x) V given by its values on basis pairs.

    ``entries[(a, b)]`` maps output pairs to SingularFn coefficients in x1, x2,
    where a sits at point 1 and b at point 2.
    """

    def __init__(self, family: AlgebraFamily, entries: Dict[Pair, Dict[Pair, SingularFn]],
                 degree_bound: int, ring: Ring = S_E, name: str = "R"):
        self.family = family
        self.entries = entries
        self.degree_bound = degree_bound
        self.ring = ring
        self.name = name

    @classmethod
    def identity(cls, family: AlgebraFamily, degree_bound: int, ring: Ring = S_E) -> "RMatrixOp":
        one = SingularFn.lift(1, ring)
        entries = {(a, b): {(a, b): one} for a, b in _pairs(family, degree_bound)}
        return cls(family, entries, degree_bound, ring, "identity")

    def column(self, a: Monomial, b: Monomial) -> Dict[Pair, SingularFn]:
        try:
            return self.entries[(a, b)]
        except KeyError:
            raise ValueError(f"R not materialized on ({self.family.mono_str(a)}, "
                             f"{self.family.mono_str(b)}); raise degree_bound") from None

    def perturbed(self, inp: Pair, out: Pair, factor: int | Fraction = 2) -> "RMatrixOp":
        """Copy with one matrix entry scaled; used for negative controls."""
        entries = {k: dict(v) for k, v in self.entries.items()}
        col = entries[inp]
        col[out] = col.get(out, SingularFn.lift(0, self.ring)) * Fraction(factor)
        if out not in self.entries[inp]:
            raise ValueError("entry is zero; scaling it changes nothing")
        return RMatrixOp(self.family, entries, self.degree_bound, self.ring, self.name + "~")

    def apply(self, t: TensorState, p: int, q: int) -> TensorState:
        """R_{pq}: act on the slots carrying point labels p and q."""
        sp, sq = t.slot(p), t.slot(q)
        out: Dict[Tuple[Monomial, ...], SingularFn] = {}
        for key, c in t.terms.items():
            c = _lift(c, self.ring)
            for (a2, b2), v in self.column(key[sp], key[sq]).items():
                v = v.relabel({1: p, 2: q})
                k = list(key)
                k[sp], k[sq] = a2, b2
                k = tuple(k)
                term = c * v
                out[k] = out[k] + term if k in out else term
        return TensorState(t.family, t.points, out)

    def is_identity(self) -> bool:
        for (a, b), col in self.entries.items():
            if col != {(a, b): SingularFn.lift(1, self.ring)}:
                return False
        return True

    def unit_check(self) -> CheckResult:
        """R(1 (x) a) = 1 (x) a and R(a (x) 1) = a (x) 1."""
        one = SingularFn.lift(1, self.ring)
        n = 0
        for (a, b), col in sorted(self.entries.items()):
            if a and b:
                continue
            n += 1
            if col != {(a, b): one}:
                return CheckResult("unit", False, n, {"pair": (a, b)})
        return CheckResult("unit", True, n)

    def to_json(self) -> List[dict]:
        fam = self.family
        rows = []
        for (a, b), col in sorted(self.entries.items()):
            for (a2, b2), v in sorted(col.items()):
                rows.append({"in": [fam.mono_str(a), fam.mono_str(b)],
                             "out": [fam.mono_str(a2), fam.mono_str(b2)],
                             "coef": format_singular(v)})
        return rows


def _pairs(family: AlgebraFamily, bound: int) -> List[Pair]:
    basis = basis_up_to(family, bound)
    return [(a, b) for a in basis for b in basis if degree(a) + degree(b) <= bound]


def _triples(family: AlgebraFamily, bound: int):
    basis = basis_up_to(family, bound)
    for a in basis:
        for b in basis:
            if degree(a) + degree(b) > bound:
                continue
            for c in basis:
                if degree(a) + degree(b) + degree(c) <= bound:
                    yield a, b, c


def braided_R_from_bichar(r: Bicharacter, degree_bound: int) -> RMatrixOp:
    """R(a (x) b) = sum a' (x) b' r'(b'' (x) a'') with b'' at x2 and a'' at x1."""
    rp = braiding_form(r)
    entries: Dict[Pair, Dict[Pair, SingularFn]] = {}
    for a, b in _pairs(r.family, degree_bound):
        col: Dict[Pair, SingularFn] = {}
        for (a1, a2), ca in mono_coproduct(a).items():
            for (b1, b2), cb in mono_coproduct(b).items():
                v = rp.at(b2, a2, 2, 1)
                if not v:
                    continue
                v = v * (ca * cb)
                key = (a1, b1)
                col[key] = col[key] + v if key in col else v
        entries[(a, b)] = {k: v for k, v in col.items() if v}
    name = "identity" if isinstance(r, Counit) else f"R[{getattr(r, 'name', type(r).__name__)}]"
    return RMatrixOp(r.family, entries, degree_bound, r.ring, name)


def _pure(family: AlgebraFamily, monos: Sequence[Monomial], points: Sequence[int], ring: Ring) -> TensorState:
    return TensorState(family, points, {tuple(monos): SingularFn.lift(1, ring)})


def ybe_check(R: RMatrixOp, degree_bound: int | None = None) -> CheckResult:
    """R12 R13 R23 = R23 R13 R12 on every basis triple up to the bound."""
    bound = R.degree_bound if degree_bound is None else degree_bound
    n = 0
    for a, b, c in _triples(R.family, bound):
        t = _pure(R.family, (a, b, c), (1, 2, 3), R.ring)
        lhs = R.apply(R.apply(R.apply(t, 2, 3), 1, 3), 1, 2)
        rhs = R.apply(R.apply(R.apply(t, 1, 2), 1, 3), 2, 3)
        n += 1
        if lhs != rhs:
            return CheckResult("ybe", False, n, {"triple": (a, b, c), "lhs": lhs, "rhs": rhs})
    return CheckResult("ybe", True, n)


def merge_slots(t: TensorState, p: int, q: int, product: str = "symmetric") -> TensorState:
    """m_{pq}: multiply slot q into slot p and substitute x_q -> x_p."""
    sp, sq = t.slot(p), t.slot(q)
    pts = tuple(x for x in t.points if x != q)
    out: Dict[Tuple[Monomial, ...], object] = {}
    for key, c in t.terms.items():
        if isinstance(c, SingularFn):
            c = c.merge_points(q, p)
        if product == "symmetric":
            prods = {sym_product(key[sp], key[sq]): Fraction(1)}
        else:
            prods = pbw_product(key[sp], key[sq], t.family)
        for m, v in prods.items():
            k = list(key)
            k[sp] = m
            del k[sq]
            k = tuple(k)
            term = c * v
            out[k] = out[k] + term if k in out else term
    return TensorState(t.family, pts, out)


def rmatrix_hexagon_check(R: RMatrixOp, product: str = "symmetric",
                          degree_bound: int | None = None) -> CheckResult:
    """R_{(12)3} m12 = m12 R23 R13 and R_{1(23)} m23 = m23 R12 R13."""
    bound = R.degree_bound if degree_bound is None else degree_bound
    n = 0
    for a, b, c in _triples(R.family, bound):
        t = _pure(R.family, (a, b, c), (1, 2, 3), R.ring)
        n += 1
        lhs = R.apply(merge_slots(t, 1, 2, product), 1, 3)
        rhs = merge_slots(R.apply(R.apply(t, 1, 3), 2, 3), 1, 2, product)
        if lhs != rhs:
            return CheckResult("hexagon", False, n, {"identity": "m12", "triple": (a, b, c),
                                                     "lhs": lhs, "rhs": rhs})
        lhs = R.apply(merge_slots(t, 2, 3, product), 1, 2)
        rhs = merge_slots(R.apply(R.apply(t, 1, 3), 1, 2), 2, 3, product)
        if lhs != rhs:
            return CheckResult("hexagon", False, n, {"identity": "m23", "triple": (a, b, c),
                                                     "lhs": lhs, "rhs": rhs})
    return CheckResult("hexagon", True, n)


def pointed_product(a: Monomial, b: Monomial, r: Bicharacter, pa: int = 1, pb: int = 2) -> State:
    """a o_r b with a at x_pa and b at x_pb (symmetric algebra underneath)."""
    out: Dict[Monomial, SingularFn] = {}
    for (a1, a2), ca in mono_coproduct(a).items():
        for (b1, b2), cb in mono_coproduct(b).items():
            v = r.at(a2, b2, pa, pb)
            if not v:
                continue
            m = sym_product(a1, b1)
            v = v * (ca * cb)
            out[m] = out[m] + v if m in out else v
    return State(r.family, out)


def _twisted_after_R(R: RMatrixOp, r: Bicharacter, a: Monomial, b: Monomial) -> State:
    out = State(r.family, {})
    for (a2, b2), v in R.column(a, b).items():
        out = out + pointed_product(a2, b2, r).map_coefficients(lambda c, v=v: c * v)
    return out


def braided_comm_check(r: Bicharacter, R: RMatrixOp | None = None,
                       degree_bound: int = 4) -> CheckResult:
    """m R = m tau for the twisted product m, on all basis pairs up to the bound.

    ``tau(a (x) b)`` multiplies b (still at x2) by a (still at x1).
    """
    R = braided_R_from_bichar(r, degree_bound) if R is None else R
    n = 0
    for a, b in _pairs(r.family, degree_bound):
        n += 1
        lhs = _twisted_after_R(R, r, a, b)
        rhs = pointed_product(b, a, r, 2, 1)
        if lhs != rhs:
            return CheckResult("braided", False, n, {"pair": (a, b), "mR": lhs, "m_tau": rhs})
    return CheckResult("braided", True, n)


def plain_comm_check(r: Bicharacter, degree_bound: int = 4) -> CheckResult:
    """m = m tau; holds for symmetric r and generally fails otherwise."""
    n = 0
    for a, b in _pairs(r.family, degree_bound):
        n += 1
        lhs = pointed_product(a, b, r)
        rhs = pointed_product(b, a, r, 2, 1)
        if lhs != rhs:
            return CheckResult("commutative", False, n, {"pair": (a, b), "m": lhs, "m_tau": rhs})
    return CheckResult("commutative", True, n)


def braided_associativity_check(r: Bicharacter, degree_bound: int = 3) -> CheckResult:
    """(a o b) o c = a o (b o c) at points 1, 2, 3 on basis triples."""
    from .bicharacter import triple_twisted

    n = 0
    fam = r.family
    for a, b, c in _triples(fam, degree_bound):
        n += 1
        sa, sb, sc = (State.monomial(fam, m) for m in (a, b, c))
        if triple_twisted(sa, sb, sc, r, "left") != triple_twisted(sa, sb, sc, r, "right"):
            return CheckResult("associativity", False, n, {"triple": (a, b, c)})
    return CheckResult("associativity", True, n)


def toy_bicharacter(family: AlgebraFamily | None = None) -> TableBicharacter:
    """Non-symmetric rank-one example r(b (x) b) = 1/(x1 - x2)."""
    fam = family or AlgebraFamily.heisenberg(0)
    if len(fam.labels) != 1:
        raise BicharacterError("the toy bicharacter lives on a rank-one family")
    lab = fam.labels[0]
    return TableBicharacter(fam, {(lab, lab): SingularFn.pole(1, 2, 1)}, S_E, name="toy")


# shifted singular rings


class ShiftedSingularRing:
    """Convenience front end for S_Y (additive) and S_L (multiplicative).

    Additive factors are x_i - x_j - n t and H acts by derivations;
    multiplicative factors are x_i/x_j - gamma and H acts by x_k -> gamma x_k.
    """

    def __init__(self, mode: str = "additive", t: int | Fraction | None = None):
        if mode == "multiplicative":
            self.ring = Ring("multiplicative", None)
        else:
            self.ring = Ring(mode, t)
        self.mode = mode

    @classmethod
    def of(cls, ring: Ring) -> "ShiftedSingularRing":
        out = cls.__new__(cls)
        out.ring, out.mode = ring, ring.mode
        return out

    def factor(self, i: int, j: int, shift: int | Fraction = 0) -> SingularFn:
        """x_i - x_j - shift*t, or x_i/x_j - shift in multiplicative mode."""
        return SingularFn.difference(i, j, shift, self.ring)

    def pole(self, i: int, j: int, shift: int | Fraction = 0, power: int = 1) -> SingularFn:
        if self.mode == "multiplicative":
            return SingularFn.mpole(i, j, shift, power, self.ring)
        return SingularFn.pole(i, j, power, shift, self.ring)

    def const(self, c) -> SingularFn:
        return SingularFn.lift(c, self.ring)

    def act(self, fn: SingularFn, point: int, arg: int | Fraction = 1) -> SingularFn:
        """H-action on the variable x_point.

        additive: divided derivative of order ``arg``;
        multiplicative: the shift x_point -> arg * x_point.
        """
        if fn.ring != self.ring:
            raise RingMismatch(f"{fn.ring.describe()} vs {self.ring.describe()}")
        if self.mode == "multiplicative":
            return fn.shift_point(point, arg)
        return fn.divided_derivative(f"x{point}", int(arg))

    def describe(self) -> str:
        return self.ring.describe()


def shifted_ring_ops(mode: str = "additive", t: int | Fraction | None = None) -> ShiftedSingularRing:
    return ShiftedSingularRing(mode, t)


__all__ = [
    "CheckResult", "RMatrixOp", "braided_R_from_bichar", "ybe_check", "merge_slots",
    "rmatrix_hexagon_check", "pointed_product", "braided_comm_check", "plain_comm_check",
    "braided_associativity_check", "toy_bicharacter", "ShiftedSingularRing", "shifted_ring_ops",
]
