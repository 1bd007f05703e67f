"""Bicharacters, their convolution monoid, and the twisted product.

All bicharacters here live on the associated graded (symmetric) algebra of
the creation generators, where every generator is primitive.  A value
``r(a (x) b)`` is a :class:`SingularFn` in ``x1`` (left argument) and ``x2``
(right argument); callers relabel to other point pairs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .pbw import (AlgebraFamily, Monomial, State, TensorState, VACUUM, VIRASORO,
                  mono_coproduct, mono_iterated_coproduct, pbw_product, sym_product)
from .singular import S_E, Ring, SingularFn

ONE_POINTS = (1, 2)


class BicharacterError(ValueError):
    pass


class Bicharacter:
    """Base class: subclasses implement :meth:`_evaluate` on monomials."""

    def __init__(self, family: AlgebraFamily, ring: Ring = S_E):
        self.family = family
        self.ring = ring
        self._memo: Dict[Tuple[Monomial, Monomial], SingularFn] = {}

    def evaluate(self, a: Monomial, b: Monomial) -> SingularFn:
        key = (tuple(a), tuple(b))
        hit = self._memo.get(key)
        if hit is None:
            hit = self._evaluate(*key)
            self._memo[key] = hit
        return hit

    def _evaluate(self, a: Monomial, b: Monomial) -> SingularFn:
        raise NotImplementedError

    def one(self) -> SingularFn:
        return SingularFn.lift(1, self.ring)

    def zero(self) -> SingularFn:
        return SingularFn.lift(0, self.ring)

    def at(self, a: Monomial, b: Monomial, p: int, q: int) -> SingularFn:
        """Value with the left argument at point p and the right at point q."""
        v = self.evaluate(a, b)
        if (p, q) == (1, 2) or v.is_laurent() and not v.num.variables():
            return v
        return v.relabel({1: p, 2: q})

    def eval_states(self, a: State, b: State, p: int = 1, q: int = 2) -> SingularFn:
        out = self.zero()
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                v = self.at(ma, mb, p, q)
                if v:
                    out = out + v * (ca * cb)
        return out

    def __mul__(self, other: "Bicharacter") -> "Bicharacter":
        return Convolution(self, other)

    def inverse(self) -> "Bicharacter":
        return Inverse(self)


class Counit(Bicharacter):
    """The unit of the convolution monoid."""

    def _evaluate(self, a, b):
        return self.one() if not a and not b else self.zero()


class TableBicharacter(Bicharacter):
    """Determined by values on pairs of base generators.

    A creation generator of label a is D^(i) applied to the base generator
    (J^a_{-1}, b_{-1} or L_{-2}); H-invariance turns those D^(i) into divided
    derivatives in x1 and x2.  Bimultiplicativity with primitive generators
    then gives the permanent formula on monomials.
    """

    def __init__(self, family: AlgebraFamily, table: Mapping[Tuple[str, str], SingularFn],
                 ring: Ring = S_E, name: str = "table"):
        super().__init__(family, ring)
        self.name = name
        self.table: Dict[Tuple[int, int], SingularFn] = {}
        for (la, lb), v in table.items():
            v = SingularFn.lift(v, ring)
            if v.points() - {1, 2}:
                raise BicharacterError("table values may only involve x1 and x2")
            self.table[(family.label_index(la), family.label_index(lb))] = v
        self._gen_memo: Dict[Tuple[Tuple[int, int], Tuple[int, int]], SingularFn] = {}

    def gen_value(self, g, h) -> SingularFn:
        key = (g, h)
        hit = self._gen_memo.get(key)
        if hit is not None:
            return hit
        base = self.family.base_mode()
        i, j = base - g[0], base - h[0]
        if i < 0 or j < 0:
            raise BicharacterError("bicharacters are evaluated on creation generators only")
        try:
            v = self.table[(g[1], h[1])]
        except KeyError:
            la, lb = self.family.labels[g[1]], self.family.labels[h[1]]
            raise BicharacterError(f"generator pair ({la}, {lb}) missing from table") from None
        v = v.divided_derivative("x1", i).divided_derivative("x2", j)
        self._gen_memo[key] = v
        return v

    def _evaluate(self, a, b):
        if len(a) != len(b):
            return self.zero()
        if not a:
            return self.one()
        g, rest = a[0], a[1:]
        out = self.zero()
        seen = set()
        for k, h in enumerate(b):
            if h in seen:
                continue
            seen.add(h)
            mult = b.count(h)
            v = self.gen_value(g, h)
            if not v:
                continue
            sub = b[:k] + b[k + 1:]
            out = out + v * self.evaluate(rest, sub) * mult
        return out

    def is_symmetric(self) -> bool:
        """r(a (x) b)(x1, x2) == r(b (x) a)(x2, x1) on the table."""
        for (p, q), v in self.table.items():
            w = self.table.get((q, p))
            if w is None or v != w.swap(1, 2):
                return False
        return True


class Convolution(Bicharacter):
    """(r * s)(a (x) b) = sum r(a' (x) b') s(a'' (x) b'')."""

    def __init__(self, r: Bicharacter, s: Bicharacter):
        if r.family != s.family:
            raise BicharacterError("bicharacters over different families")
        if r.ring != s.ring:
            raise BicharacterError("bicharacters over different singular rings")
        super().__init__(r.family, r.ring)
        self.r, self.s = r, s

    def _evaluate(self, a, b):
        out = self.zero()
        cb = mono_coproduct(b)
        for (a1, a2), ca in mono_coproduct(a).items():
            for (b1, b2), cbv in cb.items():
                x = self.r.evaluate(a1, b1)
                if not x:
                    continue
                y = self.s.evaluate(a2, b2)
                if y:
                    out = out + x * y * (ca * cbv)
        return out


class Inverse(Bicharacter):
    """r^{-1}(a (x) b) = r(S(a) (x) b); S is (-1)^length on the symmetric algebra."""

    def __init__(self, r: Bicharacter):
        super().__init__(r.family, r.ring)
        self.r = r

    def _evaluate(self, a, b):
        return self.r.evaluate(a, b) * (-1) ** len(a)


class Flipped(Bicharacter):
    """(a (x) b) -> r(b (x) a) with the point variables exchanged."""

    def __init__(self, r: Bicharacter):
        super().__init__(r.family, r.ring)
        self.r = r

    def _evaluate(self, a, b):
        return self.r.evaluate(b, a).swap(1, 2)


class Scaled(Bicharacter):
    """Multiply every value on a chosen generator pair; used for negative controls."""

    def __init__(self, r: Bicharacter, factor: Fraction):
        super().__init__(r.family, r.ring)
        self.r, self.factor = r, Fraction(factor)

    def _evaluate(self, a, b):
        return self.r.evaluate(a, b) * self.factor ** len(a)


def braiding_form(r: Bicharacter) -> Bicharacter:
    """r'(u (x) v) = sum r(u' (x) v') r^{-1}(v'' (x) u'') (points exchanged in r^{-1})."""
    return Convolution(r, Flipped(Inverse(r)))


def counit(family: AlgebraFamily, ring: Ring = S_E) -> Counit:
    return Counit(family, ring)


def bichar_eval(r: Bicharacter, a: State, b: State) -> SingularFn:
    return r.eval_states(a, b)


def bichar_convolve(r: Bicharacter, s: Bicharacter) -> Bicharacter:
    return Convolution(r, s)


def bichar_inverse(r: Bicharacter) -> Bicharacter:
    return Inverse(r)


def default_bicharacter(family: AlgebraFamily, level: Fraction | int | None = None) -> TableBicharacter:
    """k (a, b) / (x1 - x2)^2 for currents, (c/2) / (x1 - x2)^4 for Virasoro."""
    k = family.level if level is None else Fraction(level)
    if family.kind == VIRASORO:
        table = {("L", "L"): SingularFn.pole(1, 2, 4, coef=k / 2)}
    else:
        table = {}
        for i, la in enumerate(family.labels):
            for j, lb in enumerate(family.labels):
                table[(la, lb)] = SingularFn.pole(1, 2, 2, coef=k * family.form[i][j])
    return TableBicharacter(family, table, S_E, name=f"{family.name}-{family.central_label}{k}")


# twisted products


def _product(a: Monomial, b: Monomial, family: AlgebraFamily, product: str) -> Dict[Monomial, Fraction]:
    if product == "symmetric":
        return {sym_product(a, b): Fraction(1)}
    if product == "straighten":
        return pbw_product(a, b, family)
    raise ValueError(f"unknown product {product!r}")


def twisted_product(a: State, b: State, r: Bicharacter, product: str = "symmetric") -> State:
    """a o_r b = sum a'b' r(a'' (x) b''); coefficients are SingularFn in x1, x2."""
    fam = a.family
    out: Dict[Monomial, SingularFn] = {}
    for ma, ca in a.terms.items():
        cop_b = None
        for (a1, a2), va in mono_coproduct(ma).items():
            for mb, cb in b.terms.items():
                cop_b = mono_coproduct(mb)
                for (b1, b2), vb in cop_b.items():
                    val = r.evaluate(a2, b2)
                    if not val:
                        continue
                    scale = va * vb
                    for m, c in _product(a1, b1, fam, product).items():
                        term = val * (ca * cb * scale * c)
                        out[m] = out[m] + term if m in out else term
    return State(fam, out)


def singular_extension(r: Bicharacter, left: Sequence[Tuple[State, int]],
                       right: Sequence[Tuple[State, int]]) -> SingularFn:
    """Multi-point extension sum prod_{i,j} r(a_i^(j) (x) b_j^(i)) at (x_i, x_j)."""
    pts_l = [p for _, p in left]
    pts_r = [p for _, p in right]
    if len(set(pts_l + pts_r)) != len(pts_l) + len(pts_r):
        raise BicharacterError("point labels must be distinct")
    out = r.zero()
    for mons_l, cl in _expand_pure(left):
        for mons_r, cr in _expand_pure(right):
            v = extension_on_monomials(r, list(zip(mons_l, pts_l)), list(zip(mons_r, pts_r)))
            if v:
                out = out + v * (cl * cr)
    return out


def _expand_pure(items: Sequence[Tuple[State, int]]):
    acc = [((), Fraction(1))]
    for s, _p in items:
        acc = [(k + (m,), c * v) for k, c in acc for m, v in s.terms.items()]
    return acc


def extension_on_monomials(r: Bicharacter, left: Sequence[Tuple[Monomial, int]],
                           right: Sequence[Tuple[Monomial, int]]) -> SingularFn:
    nI, nJ = len(left), len(right)
    if nI == 0 or nJ == 0:
        # empty products: r on nothing is the counit of the remaining side
        return r.one() if all(not m for m, _ in list(left) + list(right)) else r.zero()
    splits_l = [mono_iterated_coproduct(m, nJ) for m, _ in left]
    splits_r = [mono_iterated_coproduct(m, nI) for m, _ in right]
    out = r.zero()

    def rec_left(i: int, chosen_l: List[Tuple[Monomial, ...]], coef):
        nonlocal out
        if i == nI:
            rec_right(0, chosen_l, [], coef)
            return
        for legs, c in splits_l[i].items():
            chosen_l.append(legs)
            rec_left(i + 1, chosen_l, coef * c)
            chosen_l.pop()

    def rec_right(j: int, chosen_l, chosen_r: List[Tuple[Monomial, ...]], coef):
        nonlocal out
        if j == nJ:
            val = r.one()
            for ii, (_, p) in enumerate(left):
                for jj, (_, q) in enumerate(right):
                    f = r.at(chosen_l[ii][jj], chosen_r[jj][ii], p, q)
                    if not f:
                        return
                    val = val * f
            out = out + val * coef
            return
        for legs, c in splits_r[j].items():
            # prune: leg lengths must match for a nonzero factor
            if all(len(chosen_l[ii][j]) == len(legs[ii]) for ii in range(nI)):
                chosen_r.append(legs)
                rec_right(j + 1, chosen_l, chosen_r, coef * c)
                chosen_r.pop()

    rec_left(0, [], Fraction(1))
    return out


def pointed_twisted_product(u: TensorState, w: TensorState, r: Bicharacter) -> TensorState:
    """u o w = sum (u' (x) w') r_ext(u'' (x) w'') on the union of the point sets."""
    if set(u.points) & set(w.points):
        raise BicharacterError("point labels must be disjoint")
    pts = u.points + w.points
    out: Dict[Tuple[Monomial, ...], SingularFn] = {}
    for ku, cu in u.terms.items():
        cop_u = [mono_coproduct(m) for m in ku]
        for kw, cw in w.terms.items():
            cop_w = [mono_coproduct(m) for m in kw]
            for left_legs, cl in _leg_choices(cop_u):
                for right_legs, cr in _leg_choices(cop_w):
                    val = extension_on_monomials(
                        r,
                        [(second, p) for (_, second), p in zip(left_legs, u.points)],
                        [(second, q) for (_, second), q in zip(right_legs, w.points)],
                    )
                    if not val:
                        continue
                    key = tuple(first for first, _ in left_legs) + tuple(first for first, _ in right_legs)
                    term = val * cu * cw * (cl * cr)
                    out[key] = out[key] + term if key in out else term
    return TensorState(u.family, pts, out)


def _leg_choices(cops):
    acc = [((), Fraction(1))]
    for cop in cops:
        acc = [(k + (legs,), c * v) for k, c in acc for legs, v in cop.items()]
    return acc


def merge_all(t: TensorState) -> State:
    """Multiply every slot together in the symmetric algebra."""
    out: Dict[Monomial, object] = {}
    for k, c in t.terms.items():
        m = VACUUM
        for part in k:
            m = sym_product(m, part)
        out[m] = out[m] + c if m in out else c
    return State(t.family, out)


def point_state(s: State, point: int) -> TensorState:
    return TensorState(s.family, (point,), {(m,): c for m, c in s.terms.items()})


def triple_twisted(a: State, b: State, c: State, r: Bicharacter, bracket: str) -> State:
    """(a o b) o c or a o (b o c) with a, b, c at points 1, 2, 3."""
    A, B, C = point_state(a, 1), point_state(b, 2), point_state(c, 3)
    if bracket == "left":
        t = pointed_twisted_product(pointed_twisted_product(A, B, r), C, r)
    else:
        t = pointed_twisted_product(A, pointed_twisted_product(B, C, r), r)
    return merge_all(t)


def relabel_state(s: State, mapping: Mapping[int, int]) -> State:
    return s.map_coefficients(lambda v: v.relabel(mapping) if isinstance(v, SingularFn) else v)


def phi_r(a: State, b: State, r: Bicharacter, N: int = 4):
    """Two-point vacuum correlation as an OpeResult (see vertex.twisted_ope)."""
    from .vertex import twisted_ope

    return twisted_ope(a, b, r, N)


__all__ = [
    "Bicharacter", "BicharacterError", "Counit", "TableBicharacter", "Convolution", "Inverse",
    "Flipped", "Scaled", "braiding_form", "counit", "bichar_eval", "bichar_convolve",
    "bichar_inverse", "default_bicharacter", "twisted_product", "singular_extension",
    "extension_on_monomials", "pointed_twisted_product", "merge_all", "point_state",
    "triple_twisted", "relabel_state", "phi_r",
]
