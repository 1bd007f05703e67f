"""Independent reference computations used to derive and cross-check golden values.

Nothing here imports the package's arithmetic: binomials come from the
falling factorial, series from sympy, and mode actions from naive word
rewriting on plain lists.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial

import sympy as sp


def gen_binomial(m: int, i: int) -> Fraction:
    num = 1
    for r in range(i):
        num *= m - r
    return Fraction(num, factorial(i))


# Heisenberg: b_{-n} multiplies, b_n (n > 0) acts as k*n*d/d(b_{-n})


def heis_apply(mode: int, state: dict, k=Fraction(1)) -> dict:
    """state: {tuple of positive parts (sorted descending): coef}."""
    out: Counter = Counter()
    for parts, c in state.items():
        if mode < 0:
            new = tuple(sorted(parts + (-mode,), reverse=True))
            out[new] += c
        elif mode > 0:
            mult = parts.count(mode)
            if mult:
                lst = list(parts)
                lst.remove(mode)
                out[tuple(lst)] += c * k * mode * mult
    return {p: v for p, v in out.items() if v}


# naive straightening of words for any Lie algebra given by a bracket callable


def naive_straighten(word, bracket, annihilates, key=lambda g: g):
    """Rewrite ``word |0>`` into sorted creation monomials.

    ``bracket(g, h)`` returns (dict of generators -> coef, central scalar).
    The leftmost out-of-order adjacent pair is swapped each time, which is a
    different schedule from the package's right-to-left insertion.
    """
    todo = [(tuple(word), Fraction(1))]
    out: Counter = Counter()
    while todo:
        w, c = todo.pop()
        if not c:
            continue
        if w and annihilates(w[-1]):
            continue
        for pos in range(len(w) - 1):
            if key(w[pos]) > key(w[pos + 1]):
                g, h = w[pos], w[pos + 1]
                todo.append((w[:pos] + (h, g) + w[pos + 2:], c))
                gens, central = bracket(g, h)
                for x, v in gens.items():
                    todo.append((w[:pos] + (x,) + w[pos + 2:], c * v))
                if central:
                    todo.append((w[:pos] + w[pos + 2:], c * central))
                break
        else:
            out[w] += c
    return {w: v for w, v in out.items() if v}


def virasoro_bracket(c):
    def br(g, h):
        m, n = g, h
        gens = {m + n: Fraction(m - n)} if m != n else {}
        central = Fraction(m ** 3 - m, 12) * c if m + n == 0 else Fraction(0)
        return gens, central
    return br


def sl2_bracket(k):
    # labels 0=e, 1=h, 2=f; generators (mode, label)
    table = {(1, 0): {0: 2}, (0, 1): {0: -2}, (1, 2): {2: -2}, (2, 1): {2: 2},
             (0, 2): {1: 1}, (2, 0): {1: -1}}
    form = {(0, 2): 1, (2, 0): 1, (1, 1): 2}

    def br(g, h):
        (m, a), (n, b) = g, h
        gens = {(m + n, x): Fraction(v) for x, v in table.get((a, b), {}).items()}
        central = Fraction(m * k * form.get((a, b), 0)) if m + n == 0 else Fraction(0)
        return gens, central
    return br


# series via sympy


x1, x2, t = sp.symbols("x1 x2 t")


def sympy_series_x1_large(expr, order: int):
    """Expand in u = 1/x1 around 0 (|x1| large), exact through x1^(-order)."""
    u = sp.symbols("u")
    e = sp.expand(expr.subs(x1, 1 / u))
    s = sp.series(e, u, 0, order + 1).removeO()
    return sp.expand(s.subs(u, 1 / x1))
