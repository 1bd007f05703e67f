"""Sparse multivariate Laurent polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Tuple, Union

Scalar = Fraction
Monomial = Tuple[Tuple[str, int], ...]

ScalarLike = Union[int, Fraction]


def as_scalar(value: ScalarLike | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def binomial(m: int, i: int) -> int:
    """Generalized binomial coefficient m(m-1)...(m-i+1)/i! for any integer m."""
    if i < 0:
        return 0
    if m >= 0:
        return comb(m, i)
    # C(m, i) = (-1)^i C(i - m - 1, i) for negative m
    return (-1) ** i * comb(i - m - 1, i)


def _monomial(exps: Mapping[str, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return _monomial(out)


class LaurentPoly:
    """A finite sum of coefficient * product of var**exp with integer exps.

    Instances are immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, ScalarLike] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = as_scalar(c)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: ScalarLike) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1, coef: ScalarLike = 1) -> "LaurentPoly":
        return cls({_monomial({name: exp}): coef})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coef: ScalarLike = 1) -> "LaurentPoly":
        return cls({_monomial(exps): coef})

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def variables(self) -> set[str]:
        return {v for mono in self._terms for v, _ in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    # arithmetic

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return laurent_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((mono, c),) = self._terms.items()
            inv = tuple((v, -e) for v, e in mono)
            return LaurentPoly._raw({inv: 1 / c}) ** (-n)
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus and substitution

    def coefficient(self, exps: Mapping[str, int]) -> Fraction:
        return self._terms.get(_monomial(exps), Fraction(0))

    def degree_in(self, var: str) -> tuple[int, int]:
        """(min, max) exponent of ``var`` over all terms; (0, 0) for zero."""
        exps = [dict(m).get(var, 0) for m in self._terms]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    def collect(self, var: str) -> Dict[int, "LaurentPoly"]:
        """Group terms by the exponent of ``var``; values are free of ``var``."""
        groups: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            e = d.pop(var, 0)
            groups.setdefault(e, {})[_monomial(d)] = c
        return {e: LaurentPoly._raw(t) for e, t in groups.items()}

    def derivative(self, var: str, order: int = 1) -> "LaurentPoly":
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            e = d.get(var, 0)
            falling = 1
            for k in range(order):
                falling *= e - k
            if falling:
                d[var] = e - order
                out[_monomial(d)] = out.get(_monomial(d), 0) + c * falling
        return LaurentPoly({m: c for m, c in out.items()})

    def divided_derivative(self, var: str, order: int) -> "LaurentPoly":
        """``derivative(var, order) / order!`` (the divided-power action)."""
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            e = d.get(var, 0)
            b = binomial(e, order)
            if b:
                d[var] = e - order
                key = _monomial(d)
                out[key] = out.get(key, 0) + c * b
        return LaurentPoly(out)

    def substitute(self, var: str, value: "LaurentPoly | ScalarLike") -> "LaurentPoly":
        """Replace ``var`` by ``value``; negative powers need an invertible value."""
        value = self._coerce(value)
        result = LaurentPoly()
        powers: Dict[int, LaurentPoly] = {}
        for e, rest in self.collect(var).items():
            if e not in powers:
                if e < 0 and value.is_zero():
                    raise ZeroDivisionError(f"{var} -> 0 with negative power")
                powers[e] = value ** e
            result = result + rest * powers[e]
        return result

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            d: Dict[str, int] = {}
            for v, e in mono:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            key = _monomial(d)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(out)

    def scale_var(self, var: str, factor: ScalarLike) -> "LaurentPoly":
        """Substitute var -> factor * var (a multiplicative shift)."""
        factor = as_scalar(factor)
        return LaurentPoly._raw(
            {m: c * factor ** dict(m).get(var, 0) for m, c in self._terms.items()}
        )

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)})"

    def __str__(self) -> str:
        return format_laurent(self)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: Dict[Monomial, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            key = _mul_monomials(ma, mb)
            s = out.get(key, 0) + ca * cb
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LaurentPoly._raw(out)


def residue(f: LaurentPoly, var: str) -> LaurentPoly:
    """Coefficient of ``var**-1`` as a Laurent polynomial in the other variables."""
    return f.collect(var).get(-1, LaurentPoly())


def format_laurent(f: LaurentPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono, c in sorted(f.items()):
        vs = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
        if not vs:
            parts.append(str(c))
        elif c == 1:
            parts.append(vs)
        elif c == -1:
            parts.append("-" + vs)
        else:
            parts.append(f"{c}*{vs}")
    return " + ".join(parts).replace("+ -", "- ")


def x(i: int) -> str:
    """Name of the coordinate attached to point ``i``."""
    return f"x{i}"


def falling_factorial_over_factorial(m: int, i: int) -> Fraction:
    """Brute-force m(m-1)...(m-i+1)/i!, kept separate from :func:`binomial`."""
    num = 1
    for k in range(i):
        num *= m - k
    return Fraction(num, factorial(i))


def from_terms(pairs: Iterable[tuple[Mapping[str, int], ScalarLike]]) -> LaurentPoly:
    out: Dict[Monomial, Fraction] = {}
    for exps, c in pairs:
        key = _monomial(exps)
        out[key] = out.get(key, 0) + as_scalar(c)
    return LaurentPoly(out)
