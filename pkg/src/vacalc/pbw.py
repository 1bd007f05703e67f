"""PBW state spaces for the Heisenberg, affine and Virasoro families.

Generators are plain tuples ``(mode, label_index)``; sorting them gives the
PBW order (more negative modes first, ties broken by label load order).  A
monomial is a sorted tuple of creation generators with an implicit vacuum on
the right.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .divided_powers import DPElement
from .laurent import as_scalar, binomial

HEISENBERG = "heisenberg"
AFFINE = "affine"
VIRASORO = "virasoro"
KINDS = (HEISENBERG, AFFINE, VIRASORO)

Gen = Tuple[int, int]
Monomial = Tuple[Gen, ...]
VACUUM: Monomial = ()


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Bracket:
    """[g, h] = sum of generators plus a central scalar."""

    generators: Dict[Gen, Fraction]
    central: Fraction


class AlgebraFamily:
    """Lie algebra data plus the vacuum module it generates.

    ``level`` is k for the current algebras and the central charge c for
    Virasoro.  Instances are immutable apart from private memo tables.
    """

    def __init__(self, kind: str, labels: Sequence[str] = ("b",),
                 brackets: Mapping[Tuple[int, int], Mapping[int, int | Fraction]] | None = None,
                 form: Sequence[Sequence[int | Fraction]] | None = None,
                 level: int | Fraction = 1, name: str | None = None):
        if kind not in KINDS:
            raise FamilyError(f"unknown family kind {kind!r}")
        self.kind = kind
        self.labels = tuple(labels)
        self.level = as_scalar(level)
        self.name = name or kind
        d = len(self.labels)
        if kind == VIRASORO:
            if self.labels != ("L",):
                raise FamilyError("the Virasoro family has the single label 'L'")
            self.brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
            self.form = ((Fraction(1),),)
        else:
            if kind == HEISENBERG and d != 1:
                raise FamilyError("the Heisenberg family is rank one")
            self.brackets = {}
            for (i, j), row in (brackets or {}).items():
                clean = {k: as_scalar(c) for k, c in row.items() if as_scalar(c)}
                if clean:
                    self.brackets[(i, j)] = clean
            if form is None:
                form = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
            self.form = tuple(tuple(as_scalar(v) for v in row) for row in form)
            if len(self.form) != d or any(len(r) != d for r in self.form):
                raise FamilyError("form matrix must be square of the basis size")
            if kind == HEISENBERG and self.brackets:
                raise FamilyError("the Heisenberg family is abelian")
            self._validate()
        self.weight = 2 if kind == VIRASORO else 1
        self._apply_cache: Dict[Tuple[Gen, Monomial], Dict[Monomial, Fraction]] = {}
        self._dp_cache: Dict[Tuple[int, Monomial, bool], Dict[Monomial, Fraction]] = {}

    # construction helpers

    @classmethod
    def heisenberg(cls, level: int | Fraction = 1) -> "AlgebraFamily":
        return cls(HEISENBERG, ("b",), {}, [[1]], level, "heisenberg")

    @classmethod
    def virasoro(cls, central_charge: int | Fraction = 1) -> "AlgebraFamily":
        return cls(VIRASORO, ("L",), level=central_charge, name="virasoro")

    @classmethod
    def sl2(cls, level: int | Fraction = 1) -> "AlgebraFamily":
        # basis order e, h, f; (e,f) = 1, (h,h) = 2
        e, h, f = 0, 1, 2
        br = {
            (h, e): {e: 2}, (e, h): {e: -2},
            (h, f): {f: -2}, (f, h): {f: 2},
            (e, f): {h: 1}, (f, e): {h: -1},
        }
        form = [[0, 0, 1], [0, 2, 0], [1, 0, 0]]
        return cls(AFFINE, ("e", "h", "f"), br, form, level, "sl2")

    def with_level(self, level: int | Fraction) -> "AlgebraFamily":
        if self.kind == VIRASORO:
            return AlgebraFamily(VIRASORO, self.labels, level=level, name=self.name)
        return AlgebraFamily(self.kind, self.labels, self.brackets,
                             [list(r) for r in self.form], level, self.name)

    def _validate(self) -> None:
        d = len(self.labels)
        for i in range(d):
            for j in range(d):
                a = self.lie_bracket(i, j)
                b = self.lie_bracket(j, i)
                if any(a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)):
                    raise FamilyError(f"structure constants not antisymmetric at {(i, j)}")
                if self.form[i][j] != self.form[j][i]:
                    raise FamilyError("invariant form is not symmetric")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    total: Dict[int, Fraction] = {}
                    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, c in self.lie_bracket(y, z).items():
                            for n, c2 in self.lie_bracket(x, m).items():
                                total[n] = total.get(n, 0) + c * c2
                    if any(total.values()):
                        raise FamilyError(f"Jacobi identity fails on {(i, j, k)}")
                    lhs = sum((c * self.form[m][k] for m, c in self.lie_bracket(i, j).items()), Fraction(0))
                    rhs = sum((c * self.form[i][m] for m, c in self.lie_bracket(j, k).items()), Fraction(0))
                    if lhs != rhs:
                        raise FamilyError(f"form is not invariant on {(i, j, k)}")

    # basic data

    def lie_bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.brackets.get((i, j), {})

    def label_index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < len(self.labels):
                raise FamilyError(f"label index {label} out of range")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise FamilyError(f"unknown label {label!r} for family {self.name}") from None

    def gen(self, label: str | int, mode: int) -> Gen:
        return (mode, self.label_index(label))

    def is_creation(self, g: Gen) -> bool:
        return g[0] <= -self.weight

    def base_mode(self) -> int:
        """Mode of the generator D^(0) acts on: J_{-1}, b_{-1}, L_{-2}."""
        return -self.weight

    @property
    def central_label(self) -> str:
        return "c" if self.kind == VIRASORO else "k"

    def commutator(self, g: Gen, h: Gen) -> Bracket:
        (m, a), (n, b) = g, h
        if self.kind == VIRASORO:
            gens = {(m + n, 0): Fraction(m - n)} if m != n else {}
            central = Fraction(m ** 3 - m, 12) * self.level if m + n == 0 else Fraction(0)
            return Bracket(gens, central)
        gens = {(m + n, k): c for k, c in self.lie_bracket(a, b).items()}
        central = m * self.level * self.form[a][b] if m + n == 0 else Fraction(0)
        return Bracket(gens, Fraction(central))

    def describe(self) -> str:
        return f"{self.name}({self.central_label}={self.level})"

    def gen_str(self, g: Gen) -> str:
        mode, a = g
        if self.kind == AFFINE:
            return f"J[{self.labels[a]}]({mode})"
        return f"{self.labels[a]}({mode})"

    def mono_str(self, m: Monomial) -> str:
        return "".join(self.gen_str(g) for g in m) + "|0>"

    def __repr__(self) -> str:
        return f"AlgebraFamily({self.describe()})"

    def signature(self) -> tuple:
        return (self.kind, self.labels, tuple(sorted((k, tuple(sorted(v.items())))
                                                     for k, v in self.brackets.items())),
                self.form, self.level)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraFamily) and self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())

    # straightening core

    def apply(self, g: Gen, mono: Monomial) -> Dict[Monomial, Fraction]:
        """g . (mono |0>) written in the PBW basis.  Memoized; do not mutate."""
        key = (g, mono)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        res: Dict[Monomial, Fraction] = {}
        if self.is_creation(g) and (not mono or g <= mono[0]):
            res[(g,) + mono] = Fraction(1)
        elif mono:
            h, rest = mono[0], mono[1:]
            # g h rest = h (g rest) + [g, h] rest
            for m1, c1 in self.apply(g, rest).items():
                for m2, c2 in self.apply(h, m1).items():
                    res[m2] = res.get(m2, 0) + c1 * c2
            br = self.commutator(g, h)
            for k, c in br.generators.items():
                for m2, c2 in self.apply(k, rest).items():
                    res[m2] = res.get(m2, 0) + c * c2
            if br.central:
                res[rest] = res.get(rest, 0) + br.central
            res = {m: c for m, c in res.items() if c}
        self._apply_cache[key] = res
        return res

    # H_a action: D^(j) on one generator

    def dp_gen(self, j: int, g: Gen) -> Tuple[Fraction, Gen]:
        n, a = g
        if self.kind == VIRASORO:
            # D = ad L_{-1}: D^(j) L_n = (-1)^j C(n+1, j) L_{n-j}
            c = (-1) ** j * binomial(n + 1, j)
        else:
            # D = -d/dt: D^(j) J_n = (-1)^j C(n, j) J_{n-j}
            c = (-1) ** j * binomial(n, j)
        return Fraction(c), (n - j, a)

    def dp_mono(self, i: int, mono: Monomial, commutative: bool = False) -> Dict[Monomial, Fraction]:
        """D^(i) on a monomial by the divided Leibniz rule, then straightened.

        ``commutative=True`` works in the associated graded (symmetric) algebra.
        """
        key = (i, mono, commutative)
        hit = self._dp_cache.get(key)
        if hit is not None:
            return hit
        res: Dict[Monomial, Fraction] = {}
        if i == 0:
            res = {mono: Fraction(1)}
        elif mono:
            for comp in _compositions(i, len(mono)):
                coef = Fraction(1)
                word = []
                for j, g in zip(comp, mono):
                    c, g2 = self.dp_gen(j, g)
                    coef *= c
                    if not coef:
                        break
                    word.append(g2)
                if not coef:
                    continue
                if commutative:
                    w = tuple(sorted(word))
                    res[w] = res.get(w, 0) + coef
                else:
                    for m, c in self.straighten_word(word).items():
                        res[m] = res.get(m, 0) + coef * c
            res = {m: c for m, c in res.items() if c}
        self._dp_cache[key] = res
        return res

    def straighten_word(self, word: Sequence[Gen]) -> Dict[Monomial, Fraction]:
        state: Dict[Monomial, Fraction] = {VACUUM: Fraction(1)}
        for g in reversed(word):
            nxt: Dict[Monomial, Fraction] = {}
            for m, c in state.items():
                for m2, c2 in self.apply(g, m).items():
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            state = {m: c for m, c in nxt.items() if c}
            if not state:
                break
        return state


def _compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def degree(mono: Monomial) -> int:
    return -sum(g[0] for g in mono)


def _is_zero(c) -> bool:
    return not c


class State:
    """Finite linear combination of PBW monomials.

    Coefficients are rationals, or SingularFn values for twisted products.
    """

    __slots__ = ("family", "terms")

    def __init__(self, family: AlgebraFamily, terms: Mapping[Monomial, object] | None = None):
        self.family = family
        clean = {}
        for m, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if not _is_zero(c):
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def vacuum(cls, family: AlgebraFamily) -> "State":
        return cls(family, {VACUUM: 1})

    @classmethod
    def monomial(cls, family: AlgebraFamily, mono: Monomial, coef=1) -> "State":
        return cls(family, {tuple(mono): coef})

    @classmethod
    def from_word(cls, family: AlgebraFamily, word: Sequence[Gen], coef=1) -> "State":
        return straighten(word, family) * coef

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), Fraction(0))

    def degrees(self) -> set[int]:
        return {degree(m) for m in self.terms}

    def max_degree(self) -> int:
        return max((degree(m) for m in self.terms), default=0)

    def _check(self, other: "State") -> None:
        if self.family != other.family:
            raise FamilyError("states from different families")

    def __add__(self, other: "State") -> "State":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return State(self.family, out)

    __radd__ = __add__

    def __neg__(self) -> "State":
        return State(self.family, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def __mul__(self, c) -> "State":
        if isinstance(c, State):
            return NotImplemented
        return State(self.family, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, State):
            return NotImplemented
        if self.family != other.family or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash((self.family, frozenset(self.terms)))

    def map_coefficients(self, fn) -> "State":
        return State(self.family, {m: fn(c) for m, c in self.terms.items()})

    def sorted_items(self) -> List[Tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self) -> str:
        return f"State({format_state(self)})"

    def __str__(self) -> str:
        return format_state(self)


def format_state(s: State) -> str:
    if not s.terms:
        return "0"
    parts = []
    for m, c in s.sorted_items():
        body = s.family.mono_str(m)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        elif isinstance(c, Fraction):
            parts.append(f"{c}*{body}")
        else:
            parts.append(f"[{c}]*{body}")
    return " + ".join(parts).replace("+ -", "- ")


# operations


def commutator(g: Gen, h: Gen, family: AlgebraFamily) -> Bracket:
    return family.commutator(g, h)


def straighten(word: Sequence[Gen], family: AlgebraFamily, rng: random.Random | None = None) -> State:
    """Rewrite ``word |0>`` into the PBW basis.

    With ``rng`` the rewriting picks a random applicable swap at every step
    instead of the memoized right-to-left schedule; both must agree.
    """
    word = tuple(word)
    if rng is None:
        return State(family, family.straighten_word(word))
    return State(family, _random_schedule(word, family, rng))


def _random_schedule(word: Tuple[Gen, ...], family: AlgebraFamily, rng: random.Random) -> Dict[Monomial, Fraction]:
    pending: Dict[Tuple[Gen, ...], Fraction] = {word: Fraction(1)}
    done: Dict[Monomial, Fraction] = {}
    create = family.is_creation
    while pending:
        w = rng.choice(sorted(pending))
        c = pending.pop(w)
        if not c:
            continue
        moves = []
        if w and not create(w[-1]):
            moves.append(("kill", len(w) - 1))
        for i in range(len(w) - 1):
            g, h = w[i], w[i + 1]
            if (not create(g) and create(h)) or (create(g) and create(h) and g > h):
                moves.append(("swap", i))
        if not moves:
            if all(create(g) for g in w):
                done[w] = done.get(w, 0) + c
            else:
                # only annihilators left next to each other: drop the last one
                moves.append(("kill", len(w) - 1))
        if not moves:
            continue
        kind, i = rng.choice(moves)
        if kind == "kill":
            continue
        g, h = w[i], w[i + 1]
        swapped = w[:i] + (h, g) + w[i + 2:]
        pending[swapped] = pending.get(swapped, 0) + c
        br = family.commutator(g, h)
        for k, v in br.generators.items():
            nw = w[:i] + (k,) + w[i + 2:]
            pending[nw] = pending.get(nw, 0) + c * v
        if br.central:
            nw = w[:i] + w[i + 2:]
            pending[nw] = pending.get(nw, 0) + c * br.central
    return {m: c for m, c in done.items() if c}


def mode_action(g: Gen, s: State) -> State:
    fam = s.family
    out: Dict[Monomial, object] = {}
    for m, c in s.terms.items():
        for m2, c2 in fam.apply(g, m).items():
            out[m2] = out[m2] + c * c2 if m2 in out else c * c2
    return State(fam, out)


def apply_word(word: Sequence[Gen], s: State) -> State:
    for g in reversed(word):
        s = mode_action(g, s)
    return s


def graded_basis(family: AlgebraFamily, deg: int) -> List[Monomial]:
    """All PBW monomials of the given degree, ordered by (length, monomial)."""
    if deg < 0:
        raise ValueError("degree must be non-negative")
    h = family.weight
    labels = range(len(family.labels))
    out: List[Monomial] = []

    def rec(remaining: int, smallest: Gen | None, acc: List[Gen]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for n in range(remaining, h - 1, -1):
            for a in labels:
                g = (-n, a)
                if smallest is not None and g < smallest:
                    continue
                acc.append(g)
                rec(remaining - n, g, acc)
                acc.pop()

    rec(deg, None, [])
    return sorted(out, key=lambda m: (len(m), m))


def basis_up_to(family: AlgebraFamily, max_deg: int) -> List[Monomial]:
    out: List[Monomial] = []
    for d in range(max_deg + 1):
        out.extend(graded_basis(family, d))
    return out


def sym_product(a: Monomial, b: Monomial) -> Monomial:
    """Product in the associated graded (commutative) algebra."""
    return tuple(sorted(a + b))


def pbw_product(a: Monomial, b: Monomial, family: AlgebraFamily) -> Dict[Monomial, Fraction]:
    """Product in U(g_-): concatenate the words and straighten."""
    return family.straighten_word(a + b)


def mono_coproduct(m: Monomial) -> Dict[Tuple[Monomial, Monomial], Fraction]:
    """Generators primitive: sum over sub-words and their complements."""
    out: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    n = len(m)
    for r in range(n + 1):
        for idx in combinations(range(n), r):
            chosen = set(idx)
            left = tuple(m[i] for i in idx)
            right = tuple(m[i] for i in range(n) if i not in chosen)
            out[(left, right)] = out.get((left, right), 0) + 1
    return out


def mono_iterated_coproduct(m: Monomial, k: int) -> Dict[Tuple[Monomial, ...], Fraction]:
    """Distribute the generators of m among k ordered legs."""
    out: Dict[Tuple[Monomial, ...], Fraction] = {}

    def rec(i: int, legs: List[List[Gen]]):
        if i == len(m):
            key = tuple(tuple(leg) for leg in legs)
            out[key] = out.get(key, 0) + 1
            return
        for leg in legs:
            leg.append(m[i])
            rec(i + 1, legs)
            leg.pop()

    rec(0, [[] for _ in range(k)])
    return out


def state_coproduct(s: State) -> "TensorState":
    out: Dict[Tuple[Monomial, ...], object] = {}
    for m, c in s.terms.items():
        for key, v in mono_coproduct(m).items():
            out[key] = out[key] + c * v if key in out else c * v
    return TensorState(s.family, (1, 2), out)


def dp_act_state(a: DPElement | int, s: State, commutative: bool = False) -> State:
    """Action of the divided-power algebra; an int i means D^(i)."""
    if isinstance(a, int):
        a = DPElement.D(a)
    fam = s.family
    out: Dict[Monomial, object] = {}
    for i, ci in a.terms.items():
        for m, c in s.terms.items():
            for m2, c2 in fam.dp_mono(i, m, commutative).items():
                v = c * c2 * ci
                out[m2] = out[m2] + v if m2 in out else v
    return State(fam, out)


def universal_extension_map(family: AlgebraFamily, i: int, labels: Sequence[str | int]) -> State:
    """Image of D^(i)(g_1 ... g_n) where g_l is the base generator of labels[l].

    This is the symmetrized sum over compositions i_1 + ... + i_n = i of
    D^(i_1) g_1 ... D^(i_n) g_n, straightened.
    """
    base = family.base_mode()
    word = [(base, family.label_index(a)) for a in labels]
    out = State(family, {})
    if not word:
        return State.vacuum(family) if i == 0 else out
    for comp in _compositions(i, len(word)):
        coef = Fraction(1)
        w = []
        for j, g in zip(comp, word):
            c, g2 = family.dp_gen(j, g)
            coef *= c
            w.append(g2)
        out = out + straighten(w, family) * coef
    return out


def universal_extension_basis(family: AlgebraFamily, deg: int) -> List[Tuple[Monomial, Tuple[Tuple[str, int], ...]]]:
    """Pair every PBW monomial with its preimage prod_l D^(i_l) a_l.

    Each creation generator a_{base - i} equals D^(i) applied to the base
    generator a_{base} (coefficient 1 in every family).
    """
    base = family.base_mode()
    out = []
    for m in graded_basis(family, deg):
        out.append((m, tuple((family.labels[a], base - n) for n, a in m)))
    return out


class TensorState:
    """Element of V^{(x) k} with each slot attached to a point label."""

    __slots__ = ("family", "points", "terms")

    def __init__(self, family: AlgebraFamily, points: Sequence[int], terms: Mapping[Tuple[Monomial, ...], object] | None = None):
        self.family = family
        self.points = tuple(points)
        clean = {}
        for k, c in (terms or {}).items():
            if len(k) != len(self.points):
                raise ValueError("tensor arity does not match the point labels")
            if isinstance(c, int):
                c = Fraction(c)
            if not _is_zero(c):
                clean[tuple(k)] = c
        self.terms = clean

    @classmethod
    def pure(cls, family: AlgebraFamily, points: Sequence[int], monos: Sequence[Monomial], coef=1) -> "TensorState":
        return cls(family, points, {tuple(monos): coef})

    @classmethod
    def from_states(cls, states: Sequence[State], points: Sequence[int]) -> "TensorState":
        fam = states[0].family
        terms: Dict[Tuple[Monomial, ...], object] = {(): Fraction(1)}
        for s in states:
            nxt = {}
            for k, c in terms.items():
                for m, v in s.terms.items():
                    key = k + (m,)
                    nxt[key] = nxt[key] + c * v if key in nxt else c * v
            terms = nxt
        return cls(fam, points, terms)

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorState") -> "TensorState":
        if self.points != other.points:
            raise ValueError("point labels differ")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorState(self.family, self.points, out)

    def __neg__(self):
        return TensorState(self.family, self.points, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return TensorState(self.family, self.points, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorState):
            return NotImplemented
        if self.points != other.points or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def slot(self, point: int) -> int:
        return self.points.index(point)

    def swap_slots(self, p: int = 0, q: int = 1) -> "TensorState":
        """Exchange two tensor factors, keeping the point labels in place."""
        out = {}
        for k, c in self.terms.items():
            k = list(k)
            k[p], k[q] = k[q], k[p]
            out[tuple(k)] = c
        return TensorState(self.family, self.points, out)

    def map_coefficients(self, fn) -> "TensorState":
        return TensorState(self.family, self.points, {k: fn(c) for k, c in self.terms.items()})

    def __repr__(self) -> str:
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda kv: kv[0]):
            body = " (x) ".join(self.family.mono_str(m) for m in k)
            parts.append(f"[{c}] {body}")
        return f"TensorState{self.points}(" + " + ".join(parts) + ")"


def partition_count(n: int, min_part: int = 1) -> int:
    """Number of partitions of n into parts >= min_part (independent oracle)."""
    table = [1] + [0] * n
    for part in range(min_part, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


__all__ = [
    "AlgebraFamily", "Bracket", "State", "TensorState", "FamilyError",
    "HEISENBERG", "AFFINE", "VIRASORO", "VACUUM",
    "commutator", "straighten", "mode_action", "apply_word", "graded_basis", "basis_up_to",
    "state_coproduct", "mono_coproduct", "mono_iterated_coproduct", "dp_act_state",
    "universal_extension_map", "universal_extension_basis", "sym_product", "pbw_product",
    "degree", "format_state", "partition_count",
]
