"""The divided-power bialgebra spanned by D^(i) = D^i / i!."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Iterable, Mapping, Tuple

from .laurent import LaurentPoly, as_scalar, binomial


class DPElement:
    """Finite sum of c_i D^(i)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int | Fraction] | None = None):
        clean: Dict[int, Fraction] = {}
        for i, c in (terms or {}).items():
            if i < 0:
                raise ValueError("divided-power index must be non-negative")
            c = as_scalar(c)
            if c:
                clean[i] = clean.get(i, Fraction(0)) + c
        self.terms = {i: c for i, c in clean.items() if c}

    @classmethod
    def D(cls, i: int, coef: int | Fraction = 1) -> "DPElement":
        return cls({i: coef})

    @classmethod
    def one(cls) -> "DPElement":
        return cls({0: 1})

    def __add__(self, other: "DPElement") -> "DPElement":
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out.get(i, 0) + c
        return DPElement(out)

    def __rmul__(self, c):
        return DPElement({i: v * c for i, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DPElement):
            return dp_mul(self, other)
        return DPElement({i: v * other for i, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, DPElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def counit(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*D({i})" for i, c in sorted(self.terms.items()))


class TensorDP:
    """Element of H^{(x) k}: map from index tuples of length ``arity`` to scalars."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Tuple[int, ...], int | Fraction] | None = None):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for idx, c in (terms or {}).items():
            if len(idx) != arity:
                raise ValueError(f"index {idx} does not have arity {arity}")
            c = as_scalar(c)
            clean[idx] = clean.get(idx, Fraction(0)) + c
        self.arity = arity
        self.terms = {k: v for k, v in clean.items() if v}

    def __add__(self, other: "TensorDP") -> "TensorDP":
        _check_arity(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorDP(self.arity, out)

    def __mul__(self, other: "TensorDP") -> "TensorDP":
        """Component-wise product in H^{(x) k}."""
        _check_arity(self, other)
        out: Dict[Tuple[int, ...], Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                c = va * vb
                for a, b in zip(ka, kb):
                    c *= comb(a + b, a)
                key = tuple(a + b for a, b in zip(ka, kb))
                out[key] = out.get(key, 0) + c
        return TensorDP(self.arity, out)

    def swap(self, p: int = 0, q: int = 1) -> "TensorDP":
        out = {}
        for k, v in self.terms.items():
            k = list(k)
            k[p], k[q] = k[q], k[p]
            out[tuple(k)] = v
        return TensorDP(self.arity, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorDP) and self.arity == other.arity and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*D{idx}" for idx, c in sorted(self.terms.items()))
        return f"TensorDP[{self.arity}]({body or 0})"


def _check_arity(a: TensorDP, b: TensorDP) -> None:
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")


def dp_mul(a: DPElement, b: DPElement) -> DPElement:
    out: Dict[int, Fraction] = {}
    for i, ci in a.terms.items():
        for j, cj in b.terms.items():
            out[i + j] = out.get(i + j, 0) + ci * cj * comb(i + j, i)
    return DPElement(out)


def dp_coproduct(i: int) -> TensorDP:
    """Delta(D^(i)) = sum_j D^(j) (x) D^(i-j)."""
    if i < 0:
        raise ValueError("index must be non-negative")
    return TensorDP(2, {(j, i - j): 1 for j in range(i + 1)})


def _compositions(n: int, k: int) -> Iterable[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def iterated_coproduct(a: DPElement, k: int) -> TensorDP:
    """Delta^{k-1}(a), built by repeatedly splitting the last tensor leg."""
    if k < 1:
        raise ValueError("arity must be at least 1")
    current: Dict[Tuple[int, ...], Fraction] = {(i,): c for i, c in a.terms.items()}
    for _ in range(k - 1):
        nxt: Dict[Tuple[int, ...], Fraction] = {}
        for idx, c in current.items():
            for (p, q), v in dp_coproduct(idx[-1]).terms.items():
                key = idx[:-1] + (p, q)
                nxt[key] = nxt.get(key, 0) + c * v
        current = nxt
    return TensorDP(k, current)


def coproduct_left_first(a: DPElement, k: int) -> TensorDP:
    """Same as :func:`iterated_coproduct` but always splitting the first leg."""
    current: Dict[Tuple[int, ...], Fraction] = {(i,): c for i, c in a.terms.items()}
    for _ in range(k - 1):
        nxt: Dict[Tuple[int, ...], Fraction] = {}
        for idx, c in current.items():
            for (p, q), v in dp_coproduct(idx[0]).terms.items():
                key = (p, q) + idx[1:]
                nxt[key] = nxt.get(key, 0) + c * v
        current = nxt
    return TensorDP(k, current)


def dp_counit(a: DPElement) -> Fraction:
    return a.counit()


def antipode(a: DPElement) -> DPElement:
    """S(D^(i)) = (-1)^i D^(i)."""
    return DPElement({i: c * (-1) ** i for i, c in a.terms.items()})


def dp_act_laurent(a: DPElement, f: LaurentPoly, var: str) -> LaurentPoly:
    """D^(i) x^m = C(m, i) x^(m-i), extended linearly."""
    out = LaurentPoly()
    for i, c in a.terms.items():
        out = out + f.divided_derivative(var, i) * c
    return out


def hmod_vandermonde_check(k: int, m: int, n: int) -> bool:
    """Module axiom for the merge f: {1,2} -> {1} on t1^m (x) t2^n.

    Acting with D^(k) after merging must equal merging after acting with
    Delta(D^(k)) leg-wise; this is Vandermonde's identity for C(m+n, k).
    """
    t = "t"
    merged = LaurentPoly.var(t, m + n)
    lhs = dp_act_laurent(DPElement.D(k), merged, t)
    rhs = LaurentPoly()
    for (p, q), c in dp_coproduct(k).terms.items():
        left = LaurentPoly.var("t1", m).divided_derivative("t1", p)
        right = LaurentPoly.var("t2", n).divided_derivative("t2", q)
        piece = (left * right).rename({"t1": t, "t2": t})
        rhs = rhs + piece * c
    return lhs == rhs


def tensor_power_check(i: int, j: int) -> bool:
    """Delta(D^(i) D^(j)) == Delta(D^(i)) Delta(D^(j))."""
    prod_ij = dp_mul(DPElement.D(i), DPElement.D(j))
    lhs = TensorDP(2, {})
    for idx, c in prod_ij.terms.items():
        for key, v in dp_coproduct(idx).terms.items():
            lhs = lhs + TensorDP(2, {key: c * v})
    return lhs == dp_coproduct(i) * dp_coproduct(j)


def all_index_tuples(bound: int, arity: int) -> Iterable[Tuple[int, ...]]:
    return product(range(bound + 1), repeat=arity)


__all__ = [
    "DPElement",
    "TensorDP",
    "dp_mul",
    "dp_coproduct",
    "iterated_coproduct",
    "coproduct_left_first",
    "dp_counit",
    "antipode",
    "dp_act_laurent",
    "hmod_vandermonde_check",
    "tensor_power_check",
    "binomial",
]
