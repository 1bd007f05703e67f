"""Rational functions whose poles sit on (shifted) differences of point variables.

A :class:`SingularFn` is ``numerator / prod(factor**power)``.  Two families of
denominator factors are supported, selected by a :class:`Ring`:

* additive: ``x_i - x_j - c*t`` (``t`` symbolic, or a fixed rational absorbed
  into ``c``); with ``t = 0`` this is the plain difference ring.
* multiplicative: ``x_i/x_j - gamma`` with ``gamma`` a nonzero rational.

Values are kept in a canonical form (``i < j`` in every factor, every factor
coprime to the numerator) so structural equality agrees with equality as
rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .laurent import LaurentPoly, as_scalar, binomial

T_VAR = "t"


class PoleError(ArithmeticError):
    """Raised when an operation would evaluate a factor on its pole."""


class RingMismatch(ValueError):
    pass


def xvar(i: int) -> str:
    return f"x{i}"


def var_index(name: str) -> int:
    if not (name.startswith("x") and name[1:].lstrip("-").isdigit()):
        raise ValueError(f"not a point variable: {name!r}")
    return int(name[1:])


@dataclass(frozen=True)
class Ring:
    """Which singular ring a value lives in.

    ``t is None`` means the shift parameter is the indeterminate ``t``;
    otherwise shifts are multiplied out by the given rational.
    """

    mode: str = "additive"
    t: Fraction | None = Fraction(0)

    def __post_init__(self):
        if self.mode not in ("additive", "multiplicative"):
            raise ValueError(f"unknown ring mode {self.mode!r}")
        if self.t is not None:
            object.__setattr__(self, "t", as_scalar(self.t))

    @property
    def symbolic(self) -> bool:
        return self.t is None

    def describe(self) -> str:
        if self.mode == "multiplicative":
            return "S_L"
        if self.t is None:
            return "S_Y(t)"
        if self.t == 0:
            return "S_e"
        return f"S_Y(t={self.t})"


S_E = Ring()
S_Y = Ring("additive", None)
S_L = Ring("multiplicative", None)

Factor = Tuple[int, int, Fraction]
Denominator = Tuple[Tuple[Factor, int], ...]


def factor_poly(f: Factor, ring: Ring) -> LaurentPoly:
    i, j, c = f
    if ring.mode == "additive":
        p = LaurentPoly.var(xvar(i)) - LaurentPoly.var(xvar(j))
        if c:
            if ring.symbolic:
                p = p - LaurentPoly.var(T_VAR, 1, c)
            else:
                p = p - c
        return p
    return LaurentPoly.monomial({xvar(i): 1, xvar(j): -1}) - c


def _canonical_factor(i: int, j: int, c: Fraction, ring: Ring) -> tuple[Factor, LaurentPoly]:
    """Return (canonical factor, unit) with original = unit * canonical."""
    if i == j:
        raise ValueError("a difference factor needs two distinct points")
    if ring.mode == "additive":
        if i < j:
            return (i, j, c), LaurentPoly.constant(1)
        return (j, i, -c), LaurentPoly.constant(-1)
    if c == 0:
        raise ValueError("multiplicative factors need a nonzero gamma")
    if i < j:
        return (i, j, c), LaurentPoly.constant(1)
    # x_i/x_j - g = -g * (x_i/x_j) * (x_j/x_i - 1/g)
    return (j, i, 1 / c), LaurentPoly.monomial({xvar(i): 1, xvar(j): -1}, -c)


def _root(f: Factor, ring: Ring) -> tuple[str, LaurentPoly]:
    """Variable v and value L such that the factor is a unit times (v - L)."""
    i, j, c = f
    if ring.mode == "additive":
        L = LaurentPoly.var(xvar(j))
        if c:
            L = L + (LaurentPoly.var(T_VAR, 1, c) if ring.symbolic else LaurentPoly.constant(c))
        return xvar(i), L
    return xvar(i), LaurentPoly.var(xvar(j), 1, c)


def _divide_linear(num: LaurentPoly, var: str, L: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient num / (var - L), or None when it does not divide."""
    groups = num.collect(var)
    lo = min(groups)
    hi = max(groups)
    if hi - lo < 1:
        return None
    # Horner on the polynomial var**(-lo) * num
    quotient: Dict[int, LaurentPoly] = {}
    carry = LaurentPoly()
    for e in range(hi, lo, -1):
        carry = groups.get(e, LaurentPoly()) + carry
        quotient[e - 1] = carry
        carry = carry * L
    remainder = groups.get(lo, LaurentPoly()) + carry
    if not remainder.is_zero():
        return None
    out = LaurentPoly()
    v = LaurentPoly.var
    for e, coef in quotient.items():
        if coef:
            out = out + coef * v(var, e) if e else out + coef
    return out


class SingularFn:
    __slots__ = ("num", "den", "ring", "_hash")

    def __init__(self, num: LaurentPoly | int | Fraction = 0,
                 den: Mapping[Factor, int] | Iterable[tuple[Factor, int]] = (),
                 ring: Ring = S_E, *, _canonical: bool = False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        self.ring = ring
        self._hash = None
        if _canonical:
            self.num = num
            self.den = tuple(den.items()) if isinstance(den, Mapping) else tuple(den)
            return
        powers: Dict[Factor, int] = {}
        items = den.items() if isinstance(den, Mapping) else den
        for (i, j, c), p in items:
            if p == 0:
                continue
            if p < 0:
                raise ValueError("denominator powers must be positive")
            f, unit = _canonical_factor(i, j, as_scalar(c), ring)
            powers[f] = powers.get(f, 0) + p
            if unit != 1:
                num = num * (_unit_inverse(unit) ** p)
        self.num, self.den = _reduce(num, powers, ring)

    # construction helpers

    @classmethod
    def pole(cls, i: int, j: int, power: int = 1, shift: int | Fraction = 0,
             ring: Ring = S_E, coef: int | Fraction = 1) -> "SingularFn":
        """``coef / (x_i - x_j - shift*t)**power`` (additive rings)."""
        if ring.mode != "additive":
            raise RingMismatch("pole() builds additive factors; use mpole()")
        c = as_scalar(shift) if ring.symbolic else as_scalar(shift) * ring.t
        return cls(LaurentPoly.constant(coef), {(i, j, c): power}, ring)

    @classmethod
    def mpole(cls, i: int, j: int, gamma: int | Fraction, power: int = 1,
              ring: Ring = S_L, coef: int | Fraction = 1) -> "SingularFn":
        """``coef / (x_i/x_j - gamma)**power`` (multiplicative ring)."""
        if ring.mode != "multiplicative":
            raise RingMismatch("mpole() needs a multiplicative ring")
        return cls(LaurentPoly.constant(coef), {(i, j, as_scalar(gamma)): power}, ring)

    @classmethod
    def difference(cls, i: int, j: int, shift: int | Fraction = 0,
                   ring: Ring = S_E) -> "SingularFn":
        """The factor itself as an element (no pole)."""
        if ring.mode == "additive":
            c = as_scalar(shift) if ring.symbolic else as_scalar(shift) * ring.t
        else:
            c = as_scalar(shift)
        return cls(factor_poly((i, j, c), ring), (), ring)

    @classmethod
    def lift(cls, value, ring: Ring = S_E) -> "SingularFn":
        if isinstance(value, SingularFn):
            if value.ring != ring:
                raise RingMismatch(f"{value.ring.describe()} vs {ring.describe()}")
            return value
        if isinstance(value, LaurentPoly):
            return cls(value, (), ring, _canonical=True)
        return cls(LaurentPoly.constant(as_scalar(value)), (), ring, _canonical=True)

    # basic queries

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return not self.den

    def to_laurent(self) -> LaurentPoly:
        if self.den:
            raise PoleError("value still has poles")
        return self.num

    def den_poly(self) -> LaurentPoly:
        out = LaurentPoly.constant(1)
        for f, p in self.den:
            out = out * factor_poly(f, self.ring) ** p
        return out

    def points(self) -> set[int]:
        pts = {var_index(v) for v in self.num.variables() if v != T_VAR}
        for (i, j, _), _p in self.den:
            pts.update((i, j))
        return pts

    def pole_order(self, i: int, j: int) -> int:
        """Total power of factors pairing points i and j."""
        a, b = min(i, j), max(i, j)
        return sum(p for (fi, fj, _), p in self.den if (fi, fj) == (a, b))

    # arithmetic

    def _coerce(self, other) -> "SingularFn":
        if isinstance(other, SingularFn):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.describe()} vs {other.ring.describe()}")
            return other
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return SingularFn.lift(other, self.ring)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SingularFn(0, (), self.ring, _canonical=True)
            return SingularFn(self.num * other, self.den, self.ring, _canonical=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.den and not other.den:
            return SingularFn(self.num * other.num, (), self.ring, _canonical=True)
        powers = dict(self.den)
        for f, p in other.den:
            powers[f] = powers.get(f, 0) + p
        num, den = _reduce(self.num * other.num, powers, self.ring)
        return SingularFn(num, den, self.ring, _canonical=True)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            num, den = _reduce(self.num + other.num, dict(self.den), self.ring)
            return SingularFn(num, den, self.ring, _canonical=True)
        da, db = dict(self.den), dict(other.den)
        common: Dict[Factor, int] = {}
        for f in set(da) | set(db):
            common[f] = max(da.get(f, 0), db.get(f, 0))
        na, nb = self.num, other.num
        for f, p in common.items():
            fp = factor_poly(f, self.ring)
            if p > da.get(f, 0):
                na = na * fp ** (p - da.get(f, 0))
            if p > db.get(f, 0):
                nb = nb * fp ** (p - db.get(f, 0))
        num, den = _reduce(na + nb, common, self.ring)
        return SingularFn(num, den, self.ring, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return SingularFn(-self.num, self.den, self.ring, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "SingularFn":
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = SingularFn.lift(1, self.ring)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = SingularFn.lift(other, self.ring)
        if not isinstance(other, SingularFn):
            return NotImplemented
        if other.ring != self.ring:
            return False
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den_poly() == other.num * self.den_poly()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.ring))
        return self._hash

    # calculus

    def derivative(self, var: str) -> "SingularFn":
        involved = [(f, p) for f, p in self.den if var in factor_poly(f, self.ring).variables()]
        if not involved:
            return SingularFn(self.num.derivative(var), self.den, self.ring)
        polys = {f: factor_poly(f, self.ring) for f, _ in involved}
        prod_all = LaurentPoly.constant(1)
        for f, _ in involved:
            prod_all = prod_all * polys[f]
        num = self.num.derivative(var) * prod_all
        for f, p in involved:
            rest = LaurentPoly.constant(1)
            for g, _ in involved:
                if g != f:
                    rest = rest * polys[g]
            num = num - self.num * polys[f].derivative(var) * rest * p
        powers = dict(self.den)
        for f, _ in involved:
            powers[f] += 1
        n, d = _reduce(num, powers, self.ring)
        return SingularFn(n, d, self.ring, _canonical=True)

    def divided_derivative(self, var: str, order: int) -> "SingularFn":
        """``d^order/dvar^order / order!``."""
        if order == 0:
            return self
        if not self.den:
            return SingularFn(self.num.divided_derivative(var, order), (), self.ring, _canonical=True)
        single = _single_factor_power(self, var)
        if single is not None:
            return single(order)
        out = self
        for _ in range(order):
            out = out.derivative(var)
        return out * Fraction(1, factorial(order))

    # point relabelling and substitution

    def relabel(self, mapping: Mapping[int, int]) -> "SingularFn":
        """Rename point variables x_i -> x_mapping[i] simultaneously."""
        names = {xvar(i): xvar(j) for i, j in mapping.items()}
        num = self.num.rename(names)
        den = [((mapping.get(i, i), mapping.get(j, j), c), p) for (i, j, c), p in self.den]
        return SingularFn(num, den, self.ring)

    def swap(self, i: int = 1, j: int = 2) -> "SingularFn":
        return self.relabel({i: j, j: i})

    def merge_points(self, src: int, dst: int) -> "SingularFn":
        """Substitute x_src -> x_dst; raises PoleError on a (src, dst) pole."""
        num = self.num.rename({xvar(src): xvar(dst)})
        den = []
        for (i, j, c), p in self.den:
            i2 = dst if i == src else i
            j2 = dst if j == src else j
            if i2 == j2:
                # factor collapses to a constant (or a power of t)
                if self.ring.mode == "multiplicative":
                    val = LaurentPoly.constant(1 - c)
                elif self.ring.symbolic:
                    val = LaurentPoly.var(T_VAR, 1, -c) if c else LaurentPoly()
                else:
                    val = LaurentPoly.constant(-c)
                if val.is_zero():
                    raise PoleError(f"merging x{src} into x{dst} hits a pole")
                num = num * (val ** -p)
            else:
                den.append(((i2, j2, c), p))
        return SingularFn(num, den, self.ring)

    def specialize_zero(self, k: int) -> "SingularFn":
        """Set x_k = 0.  Factors through x_k must become monomials."""
        name = xvar(k)
        lo, _ = self.num.degree_in(name)
        if lo < 0:
            raise PoleError(f"numerator has negative powers of {name}")
        num = self.num.substitute(name, 0)
        den = []
        for (i, j, c), p in self.den:
            if k not in (i, j):
                den.append(((i, j, c), p))
                continue
            if self.ring.mode == "multiplicative" or c != 0:
                raise PoleError(f"factor {(i, j, c)} does not become a monomial at {name}=0")
            other = j if i == k else i
            sign = 1 if i != k else -1
            num = num * LaurentPoly.var(xvar(other), -p, Fraction(sign) ** p)
        return SingularFn(num, den, self.ring)

    def shift_point(self, k: int, gamma: int | Fraction) -> "SingularFn":
        """Multiplicative translation x_k -> gamma * x_k (difference operator)."""
        if self.ring.mode != "multiplicative":
            raise RingMismatch("shift_point acts on multiplicative values")
        gamma = as_scalar(gamma)
        num = self.num.scale_var(xvar(k), gamma)
        den = []
        for (i, j, c), p in self.den:
            if i == k and j != k:
                # gamma*x_i/x_j - c = gamma (x_i/x_j - c/gamma)
                num = num * (1 / gamma ** p)
                den.append(((i, j, c / gamma), p))
            elif j == k and i != k:
                # x_i/(gamma x_j) - c = (x_i/x_j - c gamma)/gamma
                num = num * gamma ** p
                den.append(((i, j, c * gamma), p))
            else:
                den.append(((i, j, c), p))
        return SingularFn(num, den, self.ring)

    def __repr__(self) -> str:
        return f"SingularFn({format_singular(self)})"

    def __str__(self) -> str:
        return format_singular(self)


def _unit_inverse(unit: LaurentPoly) -> LaurentPoly:
    return unit ** -1


def _reduce(num: LaurentPoly, powers: Dict[Factor, int], ring: Ring) -> tuple[LaurentPoly, Denominator]:
    if num.is_zero():
        return num, ()
    den = []
    if num.is_constant() or len(num) == 1:
        # a monomial is coprime to every difference factor
        return num, tuple(sorted((f, p) for f, p in powers.items() if p))
    for f in sorted(powers):
        p = powers[f]
        if not p:
            continue
        var, L = _root(f, ring)
        while p:
            q = _divide_linear(num, var, L)
            if q is None:
                break
            if ring.mode == "multiplicative":
                q = q * LaurentPoly.var(xvar(f[1]))
            num = q
            p -= 1
        if p:
            den.append((f, p))
    return num, tuple(den)


def _single_factor_power(fn: SingularFn, var: str):
    """Closed form for c/(x_i - x_j - s)^p when the numerator is constant."""
    if fn.ring.mode != "additive" or len(fn.den) != 1 or not fn.num.is_constant():
        return None
    (f, p), = fn.den
    i, j, c = f
    if var == xvar(i):
        sign = 1
    elif var == xvar(j):
        sign = -1
    else:
        return lambda order: SingularFn(0, (), fn.ring, _canonical=True)
    k = fn.num.constant_term()

    def build(order: int) -> SingularFn:
        # D^(n) (u)^-p = C(-p, n) u^(-p-n), chain rule du/dvar = sign
        coef = k * binomial(-p, order) * sign ** order
        return SingularFn(LaurentPoly.constant(coef), ((f, p + order),), fn.ring, _canonical=True)

    return build


def format_singular(fn: SingularFn) -> str:
    from .laurent import format_laurent

    num = format_laurent(fn.num)
    if not fn.den:
        return num
    parts = []
    for f, p in fn.den:
        fp = format_laurent(factor_poly(f, fn.ring))
        parts.append(f"({fp})" + (f"^{p}" if p != 1 else ""))
    return f"({num})/({'*'.join(parts)})"


# expansions in a region


def _order_of(mono: Tuple[Tuple[str, int], ...], weights: Mapping[str, int]) -> int:
    total = 0
    for v, e in mono:
        if v not in weights:
            raise ValueError(f"variable {v!r} is not placed in the region")
        total += weights[v] * e
    return total


def _region_weights(region: Sequence[Sequence[str] | str]) -> Dict[str, int]:
    weights: Dict[str, int] = {}
    for w, tier in enumerate(region):
        names = [tier] if isinstance(tier, str) else list(tier)
        for v in names:
            weights[v] = w
    return weights


def _split_dominant(poly: LaurentPoly, weights) -> tuple[LaurentPoly, LaurentPoly, int, int]:
    orders = {m: _order_of(m, weights) for m, _ in poly.items()}
    lo = min(orders.values())
    dom = [m for m, o in orders.items() if o == lo]
    if len(dom) != 1:
        raise ValueError("region leaves the expansion direction ambiguous")
    terms = poly.terms
    dominant = LaurentPoly({dom[0]: terms[dom[0]]})
    rest = LaurentPoly({m: c for m, c in terms.items() if m != dom[0]})
    gap = min((o - lo for m, o in orders.items() if m != dom[0]), default=None)
    return dominant, rest, lo, gap


def truncate_order(poly: LaurentPoly, weights: Mapping[str, int], window: int) -> LaurentPoly:
    return LaurentPoly({m: c for m, c in poly.items() if _order_of(m, weights) < window})


def expand_singular(fn: SingularFn, region: Sequence[Sequence[str] | str], window: int) -> LaurentPoly:
    """Series expansion of ``fn`` in a region, exact for all orders < window.

    ``region`` lists tiers of variables from largest to smallest, e.g.
    ``[["x1"], ["x2", "t"]]`` for ``|x1| >> |x2|, |t|``.  A monomial's order
    is the tier-weighted sum of its exponents (tier k has weight k), and the
    result keeps exactly the terms of order < ``window``.
    """
    weights = _region_weights(region)
    for v in fn.num.variables():
        weights.setdefault(v, None)
    if any(w is None for w in weights.values()):
        missing = sorted(v for v, w in weights.items() if w is None)
        raise ValueError(f"variables {missing} are not placed in the region")
    if fn.num.is_zero():
        return LaurentPoly()
    pieces = []
    for f, p in fn.den:
        dom, rest, lo, gap = _split_dominant(factor_poly(f, fn.ring), weights)
        pieces.append((dom, rest, lo * -p, gap, p))
    num_lo = min(_order_of(m, weights) for m, _ in fn.num.items())
    min_total = num_lo + sum(piece[2] for piece in pieces)
    result = truncate_order(fn.num, weights, window - (min_total - num_lo))
    for dom, rest, m_f, gap, p in pieces:
        bound = window - (min_total - m_f)
        if bound <= m_f:
            return LaurentPoly()
        inv = dom ** -1
        ratio = rest * inv
        # the k-th series term has order >= m_f + k*gap
        kmax = 0 if gap is None else (bound - 1 - m_f) // gap
        series = LaurentPoly()
        power = LaurentPoly.constant(1)
        for k in range(kmax + 1):
            series = series + power * binomial(-p, k)
            power = truncate_order(power * ratio, weights, bound - m_f)
        expansion = truncate_order(series * inv ** p, weights, bound)
        result = truncate_order(result * expansion, weights, window)
    return truncate_order(result, weights, window)
