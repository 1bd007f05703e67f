"""Fields over PBW modules and their normal-ordered products.

A field is a hashable tuple:

* ``("id",)``                  the identity field
* ``("gen", a)``               the generating field of label ``a`` (b, J^a or T)
* ``("der", s, F)``            the divided derivative d^(s) F
* ``("nord", F, G)``           the normal-ordered product :F G:

Modes use the product indexing ``F(z) = sum_n F_(n) z^(-n-1)``, so
``J^a_(n) = J^a_n`` and ``T_(n) = L_(n-1)``.  The creation part of a field is
``n < 0``; for every field built here that coincides with the split into
modes that do not kill the vacuum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .laurent import binomial
from .pbw import AlgebraFamily, Monomial, State, degree

Field = tuple
IDENTITY: Field = ("id",)


def gen_field(a: int) -> Field:
    return ("gen", a)


def derivative_field(f: Field, s: int) -> Field:
    if s == 0:
        return f
    if f[0] == "der":
        # d^(s) d^(r) = C(r+s, s) d^(r+s); only used with coefficient 1 here
        raise ValueError("nest derivatives through a single ('der', s, F) node")
    return ("der", s, f)


def normal_order(f: Field, g: Field) -> Field:
    if f == IDENTITY:
        return g
    if g == IDENTITY:
        return f
    return ("nord", f, g)


def field_weight(f: Field, family: AlgebraFamily) -> int:
    tag = f[0]
    if tag == "id":
        return 0
    if tag == "gen":
        return family.weight
    if tag == "der":
        return f[1] + field_weight(f[2], family)
    return field_weight(f[1], family) + field_weight(f[2], family)


def state_field(family: AlgebraFamily, mono: Monomial) -> Field:
    """Y(g_1 ... g_m |0>) = :F_1 :F_2 ... F_m::, F_k = d^(s_k) of a base field."""
    h = family.weight
    out = IDENTITY
    for mode, a in reversed(mono):
        s = -mode - h
        if s < 0:
            raise ValueError("state contains an annihilation generator")
        out = normal_order(derivative_field(gen_field(a), s), out)
    return out


def _cache(family: AlgebraFamily) -> Dict:
    cache = family.__dict__.get("_field_cache")
    if cache is None:
        cache = {}
        family.__dict__["_field_cache"] = cache
    return cache


def field_mode(family: AlgebraFamily, f: Field, n: int, mono: Monomial) -> Dict[Monomial, Fraction]:
    """F_(n) applied to the basis vector ``mono``; memoized per family."""
    d = degree(mono)
    w = field_weight(f, family)
    if d + w - n - 1 < 0:
        return {}
    cache = _cache(family)
    key = (f, n, mono)
    hit = cache.get(key)
    if hit is not None:
        return hit
    tag = f[0]
    res: Dict[Monomial, Fraction]
    if tag == "id":
        res = {mono: Fraction(1)} if n == -1 else {}
    elif tag == "gen":
        mode = n if family.weight == 1 else n - 1
        res = family.apply((mode, f[1]), mono)
    elif tag == "der":
        s, inner = f[1], f[2]
        c = (-1) ** s * binomial(n, s)
        res = {m: c * v for m, v in field_mode(family, inner, n - s, mono).items()} if c else {}
    else:
        A, B = f[1], f[2]
        wa, wb = field_weight(A, family), field_weight(B, family)
        acc: Dict[Monomial, Fraction] = {}
        # creation part of A: sum_{m<0} A_(m) B_(n-m-1)
        for m in range(n - d - wb, 0):
            for m1, c1 in field_mode(family, B, n - m - 1, mono).items():
                for m2, c2 in field_mode(family, A, m, m1).items():
                    acc[m2] = acc.get(m2, 0) + c1 * c2
        # annihilation part of A: sum_{m>=0} B_(n-m-1) A_(m)
        for m in range(0, d + wa):
            for m1, c1 in field_mode(family, A, m, mono).items():
                for m2, c2 in field_mode(family, B, n - m - 1, m1).items():
                    acc[m2] = acc.get(m2, 0) + c1 * c2
        res = {m: c for m, c in acc.items() if c}
    cache[key] = res
    return res


def apply_field_mode(family: AlgebraFamily, f: Field, n: int, s: State) -> State:
    out: Dict[Monomial, object] = {}
    for m, c in s.terms.items():
        for m2, c2 in field_mode(family, f, n, m).items():
            out[m2] = out[m2] + c * c2 if m2 in out else c * c2
    return State(family, out)


class FieldSeries:
    """A field together with a finite window of modes.

    Applying it to a state gives the coefficients ``{n: F_(n) s}`` for n in
    the window; modes outside the window are unknown rather than zero.
    """

    def __init__(self, family: AlgebraFamily, field: Field, variable: str = "z",
                 window: Tuple[int, int] = (-8, 8)):
        self.family = family
        self.field = field
        self.variable = variable
        self.window = window

    @classmethod
    def of_state(cls, s_or_mono, family: AlgebraFamily | None = None, **kw) -> "FieldSeries":
        if isinstance(s_or_mono, State):
            if len(s_or_mono.terms) != 1:
                raise ValueError("use a single PBW monomial")
            (mono, _c), = s_or_mono.terms.items()
            family = s_or_mono.family
        else:
            mono = tuple(s_or_mono)
        return cls(family, state_field(family, mono), **kw)

    @classmethod
    def identity(cls, family: AlgebraFamily, **kw) -> "FieldSeries":
        return cls(family, IDENTITY, **kw)

    @property
    def weight(self) -> int:
        return field_weight(self.field, self.family)

    def mode(self, n: int, s: State) -> State:
        return apply_field_mode(self.family, self.field, n, s)

    def apply(self, s: State) -> Dict[int, State]:
        """Coefficients F_(n) s for n in the window (z^(-n-1) coefficient)."""
        lo, hi = self.window
        out = {}
        for n in range(lo, hi + 1):
            v = self.mode(n, s)
            if v:
                out[n] = v
        return out

    def is_exact_on(self, s: State) -> bool:
        """True when every nonzero positive-power-free mode lies in the window.

        F_(n) s vanishes once deg(s) + weight - n - 1 < 0, so the upper end of
        the window must reach that bound.
        """
        return self.window[1] >= s.max_degree() + self.weight - 1


class NormalOrderedPair:
    """:a(z) b(w): = a(z)_+ b(w) + b(w) a(z)_- as a two-variable expression."""

    def __init__(self, a: FieldSeries, b: FieldSeries):
        if a.family != b.family:
            raise ValueError("fields over different state spaces")
        self.a, self.b = a, b
        self.family = a.family

    def coefficient(self, p: int, q: int, s: State) -> State:
        """Coefficient of z^p w^q applied to s."""
        fa, fb = self.a.field, self.b.field
        na, nb = -p - 1, -q - 1
        fam = self.family
        if na < 0:
            return apply_field_mode(fam, fa, na, apply_field_mode(fam, fb, nb, s))
        return apply_field_mode(fam, fb, nb, apply_field_mode(fam, fa, na, s))

    def diagonal(self) -> FieldSeries:
        """Restriction z = w, the field :a b:(w)."""
        lo = min(self.a.window[0], self.b.window[0])
        hi = max(self.a.window[1], self.b.window[1])
        return FieldSeries(self.family, normal_order(self.a.field, self.b.field), self.b.variable, (lo, hi))


def normal_order_pair(a: FieldSeries, b: FieldSeries) -> NormalOrderedPair:
    return NormalOrderedPair(a, b)


def nested_normal_order(fields: Iterable[FieldSeries]) -> FieldSeries:
    """:f_1 :f_2 ... f_m:: (right-nested)."""
    fields = list(fields)
    if not fields:
        raise ValueError("need at least one field")
    out = fields[-1].field
    for fs in reversed(fields[:-1]):
        out = normal_order(fs.field, out)
    return FieldSeries(fields[0].family, out, fields[-1].variable, fields[0].window)


__all__ = [
    "Field", "IDENTITY", "gen_field", "derivative_field", "normal_order", "field_weight",
    "state_field", "field_mode", "apply_field_mode", "FieldSeries", "NormalOrderedPair",
    "normal_order_pair", "nested_normal_order",
]
