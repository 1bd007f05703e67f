"""Formal delta distributions, residues and their windowed shadows.

``DeltaTerm`` is a symbol: ``coef * d^n/dx_i^n delta(x_i, x_j)``.  It is only
ever expanded into a finite window inside the verification helpers below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from .laurent import LaurentPoly, binomial, residue
from .singular import SingularFn, xvar

__all__ = [
    "DeltaTerm",
    "residue",
    "delta_contract",
    "delta_window",
    "delta_annihilation_check",
    "delta_symmetry_check",
    "pairing_matrix",
]


@dataclass(frozen=True)
class DeltaTerm:
    i: int
    j: int
    derivative_order: int = 0
    coefficient: object = Fraction(1)

    def __post_init__(self):
        if self.derivative_order < 0:
            raise ValueError("derivative order must be non-negative")
        if self.i == self.j:
            raise ValueError("delta needs two distinct points")

    def times_difference(self) -> List["DeltaTerm"]:
        """Rewrite (x_i - x_j) * d^n_{x_i} delta(x_i, x_j) = -n d^{n-1}_{x_i} delta."""
        n = self.derivative_order
        if n == 0:
            return []
        return [DeltaTerm(self.i, self.j, n - 1, self.coefficient * -n)]

    def window(self, lo: int, hi: int) -> LaurentPoly:
        return delta_window(xvar(self.i), xvar(self.j), lo, hi, self.derivative_order) * _scalar(self.coefficient)


def _scalar(c):
    if isinstance(c, SingularFn):
        return c.to_laurent()
    return c


def reduce_by_difference(terms: Iterable[DeltaTerm], power: int) -> List[DeltaTerm]:
    """Multiply a sum of delta terms by (x_i - x_j)**power symbolically."""
    out = list(terms)
    for _ in range(power):
        nxt: List[DeltaTerm] = []
        for d in out:
            nxt.extend(d.times_difference())
        out = nxt
    return out


def delta_window(z: str, w: str, lo: int, hi: int, order: int = 0, wrt: str | None = None) -> LaurentPoly:
    """Sum over n in [lo, hi] of z^(-n-1) w^n, differentiated ``order`` times.

    ``wrt`` picks the variable to differentiate (defaults to ``z``).
    """
    wrt = z if wrt is None else wrt
    terms = {}
    for n in range(lo, hi + 1):
        ez, ew = -n - 1, n
        if wrt == z:
            c = _falling(ez, order)
            ez -= order
        else:
            c = _falling(ew, order)
            ew -= order
        if c:
            key = tuple(sorted(((z, ez), (w, ew))))
            key = tuple((v, e) for v, e in key if e)
            terms[key] = terms.get(key, 0) + c
    return LaurentPoly(terms)


def _falling(e: int, k: int) -> int:
    out = 1
    for r in range(k):
        out *= e - r
    return out


def delta_contract(f: LaurentPoly, d: DeltaTerm):
    """Res_{x_i} f(x_i) * d^n_{x_i} delta(x_i, x_j) = (-1)^n (d^n f)(x_j).

    ``f`` may depend on other variables too; only x_i is integrated out.
    """
    zi, zj = xvar(d.i), xvar(d.j)
    lo, _ = f.degree_in(zi)
    if lo < 0:
        raise ValueError(f"f must be polynomial in {zi}")
    n = d.derivative_order
    g = f.derivative(zi, n) * (-1) ** n
    out = g.substitute(zi, LaurentPoly.var(zj))
    c = d.coefficient
    if isinstance(c, (int, Fraction)):
        return out * c
    return c * out


def delta_annihilation_check(n: int, window: Tuple[int, int], power: int | None = None) -> bool | None:
    """Certify (z - w)^power * d^n_w delta(z, w) = 0 inside a finite window.

    ``power`` defaults to n + 1.  Returns None when the window is too small to
    certify any coefficient, False when a certified coefficient is nonzero.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    lo, hi = window
    p = n + 1 if power is None else power
    series = delta_window("z", "w", lo, hi, n, wrt="w")
    factor = LaurentPoly({
        tuple(x for x in (("w", p - k), ("z", k)) if x[1]): binomial(p, k) * (-1) ** (p - k)
        for k in range(p + 1)
    })
    product = series * factor
    # the z^a coefficient uses modes m in [-a-1, -a-1+p]
    certified_a = range(-hi - 1 + p, -lo)
    if len(certified_a) == 0:
        return None
    for mono, c in product.items():
        a = dict(mono).get("z", 0)
        if a in certified_a and c:
            return False
    return True


def delta_symmetry_check(lo: int, hi: int) -> bool:
    """delta(z, w) and delta(w, z) agree on every coefficient both windows contain."""
    a = delta_window("z", "w", lo, hi)
    b = delta_window("w", "z", lo, hi)
    # delta(z,w) carries z^(-n-1) w^n for n in [lo, hi]; delta(w,z) carries n in [-hi-1, -lo-1]
    shared = range(max(lo, -hi - 1), min(hi, -lo - 1) + 1)
    for n in shared:
        exps = {"z": -n - 1, "w": n}
        if a.coefficient(exps) != b.coefficient(exps):
            return False
    return len(shared) > 0


def pairing_matrix(lo: int, hi: int) -> List[List[int]]:
    """<z^a, z^b> = Res_z z^a z^b over a, b in [lo, hi]."""
    z = "z"
    return [
        [int(residue(LaurentPoly.var(z, a + b), z).constant_term()) for b in range(lo, hi + 1)]
        for a in range(lo, hi + 1)
    ]
