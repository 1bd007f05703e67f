"""Vertex operators, OPEs and finite checks of the vertex-algebra axioms.

Two routes produce ``Y(a, x) b``:

``fields``
    reconstruct Y(a, z) as a nested normal-ordered product of derivative
    fields and read off modes in the family's own level.
``twist``
    start from the level-0 algebra (commutative for Heisenberg) and twist by
    a bicharacter r:  Y^r(a, x1) b = sum Y^0(a', x1) b' r(a'' (x) b'') at x2 = 0.

Two-point data is handled as a *centered series*: the coefficient of
``u^m x2^j`` with ``u = x1 - x2``, which for the fields route is
``D^(j)(a_(-m-1) b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .bicharacter import Bicharacter, default_bicharacter
from .fields import apply_field_mode, state_field
from .laurent import LaurentPoly, binomial
from .pbw import (AlgebraFamily, HEISENBERG, Monomial, State, TensorState, basis_up_to,
                  degree, dp_act_state, graded_basis, mono_coproduct, pbw_product)
from .singular import SingularFn

Coeff = Tuple[int, int]


@dataclass
class OpeResult:
    """Principal part {p: coefficient of (x1-x2)^-p} and truncated regular part.

    ``regular[(i, j)]`` is the coefficient of x1^i x2^j, kept for i + j <= N.
    """

    principal: Dict[int, State]
    regular: Dict[Coeff, State]
    truncation: int
    defect: Dict[Coeff, State] = field(default_factory=dict)

    def __post_init__(self):
        self.principal = {p: s for p, s in self.principal.items() if s}
        self.regular = {k: s for k, s in self.regular.items() if s}
        self.defect = {k: s for k, s in self.defect.items() if s}

    def max_pole(self) -> int:
        return max(self.principal, default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpeResult):
            return NotImplemented
        return (self.principal == other.principal and self.regular == other.regular
                and self.truncation == other.truncation and self.defect == other.defect)


# centered series


class CenteredSeries:
    """Lazy coefficients C(m, j) of u^m x2^j, with C(m, j) = 0 for m < -pole_bound."""

    def __init__(self, family: AlgebraFamily, fn: Callable[[int, int], State], pole_bound: int):
        self.family = family
        self._fn = fn
        self.pole_bound = pole_bound
        self._memo: Dict[Coeff, State] = {}

    def __call__(self, m: int, j: int) -> State:
        if j < 0 or m < -self.pole_bound:
            return State(self.family, {})
        key = (m, j)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._fn(m, j)
            self._memo[key] = hit
        return hit

    def regular(self, i: int, j: int) -> State:
        """Coefficient of x1^i x2^j in the u^{>=0} part."""
        out = State(self.family, {})
        for m in range(i, i + j + 1):
            c = binomial(m, i) * (-1) ** (m - i)
            s = self(m, j - (m - i))
            if s:
                out = out + s * c
        return out

    def to_ope(self, N: int) -> OpeResult:
        principal = {p: self(-p, 0) for p in range(1, self.pole_bound + 1)}
        regular = {(i, j): self.regular(i, j) for i in range(N + 1) for j in range(N + 1 - i)}
        return OpeResult(principal, regular, N)

    def at_x2_zero(self, N: int) -> OpeResult:
        principal = {p: self(-p, 0) for p in range(1, self.pole_bound + 1)}
        regular = {(i, 0): self(i, 0) for i in range(N + 1)}
        return OpeResult(principal, regular, N)


def _mode_on_state(family: AlgebraFamily, a: State, n: int, b: State) -> State:
    out = State(family, {})
    for ma, ca in a.terms.items():
        v = apply_field_mode(family, state_field(family, ma), n, b)
        if v:
            out = out + v * ca
    return out


def fields_centered(family: AlgebraFamily, a: State, b: State) -> CenteredSeries:
    def fn(m: int, j: int) -> State:
        s = _mode_on_state(family, a, -m - 1, b)
        return dp_act_state(j, s) if j and s else s

    return CenteredSeries(family, fn, a.max_degree() + b.max_degree())


def _u_expansion(v: SingularFn) -> Tuple[Dict[Tuple[int, int], Fraction], int]:
    """Write v = sum c[e, f] u^(e - k) x2^f with u = x1 - x2; returns (c, k)."""
    k = 0
    for (i, j, c), p in v.den:
        if (i, j, c) != (1, 2, 0):
            raise ValueError("two-point OPEs need poles on x1 - x2 only")
        k = p
    num = v.num
    if num.variables() - {"x1", "x2"}:
        raise ValueError("unexpected variables in a two-point value")
    if num.degree_in("x1")[0] < 0 or num.degree_in("x2")[0] < 0:
        raise ValueError("numerator must be polynomial")
    u = "u"
    shifted = num.substitute("x1", LaurentPoly.var(u) + LaurentPoly.var("x2"))
    coeffs = {}
    for mono, c in shifted.items():
        d = dict(mono)
        coeffs[(d.get(u, 0), d.get("x2", 0))] = c
    return coeffs, k


def twisted_centered(base: AlgebraFamily, a: State, b: State, r: Bicharacter) -> CenteredSeries:
    """sum over coproduct legs of C^0_{a', b'} times r(a'' (x) b'')."""
    pieces = []
    bound = 0
    for ma, ca in a.terms.items():
        for (a1, a2), va in mono_coproduct(ma).items():
            for mb, cb in b.terms.items():
                for (b1, b2), vb in mono_coproduct(mb).items():
                    val = r.evaluate(a2, b2)
                    if not val:
                        continue
                    coeffs, k = _u_expansion(val)
                    inner = fields_centered(base, State.monomial(base, a1), State.monomial(base, b1))
                    pieces.append((inner, coeffs, k, ca * cb * va * vb))
                    bound = max(bound, inner.pole_bound + k)

    def fn(m: int, j: int) -> State:
        out = State(base, {})
        for inner, coeffs, k, scale in pieces:
            for (e, f), c in coeffs.items():
                s = inner(m - (e - k), j - f)
                if s:
                    out = out + s * (c * scale)
        return out

    return CenteredSeries(base, fn, bound)


# vertex algebra instances


class VertexAlgebraInstance:
    """A family at its level, a bicharacter, and the route used to build Y."""

    def __init__(self, family: AlgebraFamily, bicharacter: Bicharacter | None = None,
                 route: str = "fields",
                 translation: Callable[[State], State] | None = None):
        if route not in ("fields", "twist"):
            raise ValueError(f"unknown route {route!r}")
        self.family = family
        self.bicharacter = bicharacter if bicharacter is not None else default_bicharacter(family)
        if self.bicharacter.family.kind != family.kind or self.bicharacter.family.labels != family.labels:
            raise ValueError("bicharacter belongs to a different family")
        self.route = route
        self.base = family.with_level(0)
        self._translation = translation
        self._centered: Dict[Tuple[Monomial, Monomial], CenteredSeries] = {}

    @property
    def vacuum(self) -> State:
        return State.vacuum(self.family)

    def state(self, mono: Monomial, coef=1) -> State:
        return State.monomial(self.family, mono, coef)

    def translate(self, s: State) -> State:
        if self._translation is not None:
            return self._translation(s)
        return dp_act_state(1, s)

    def _rehome(self, s: State, fam: AlgebraFamily) -> State:
        return s if s.family is fam else State(fam, s.terms)

    def centered_mono(self, ma: Monomial, mb: Monomial) -> CenteredSeries:
        key = (ma, mb)
        hit = self._centered.get(key)
        if hit is None:
            if self.route == "fields":
                hit = fields_centered(self.family, self.state(ma), self.state(mb))
            else:
                hit = twisted_centered(self.base, State.monomial(self.base, ma),
                                       State.monomial(self.base, mb), self.bicharacter)
            self._centered[key] = hit
        return hit

    def centered(self, a: State, b: State) -> CenteredSeries:
        parts = [(self.centered_mono(ma, mb), ca * cb)
                 for ma, ca in a.terms.items() for mb, cb in b.terms.items()]
        fam = self.family

        def fn(m, j):
            out = State(fam, {})
            for series, c in parts:
                s = series(m, j)
                if s:
                    out = out + self._rehome(s, fam) * c
            return out

        return CenteredSeries(fam, fn, max((p.pole_bound for p, _ in parts), default=0))

    def mode(self, a: State, n: int, c: State) -> State:
        """a_(n) c."""
        if self.route == "fields":
            return _mode_on_state(self.family, a, n, c)
        return self.centered(a, c)(-n - 1, 0)


def vertex_algebra(family: AlgebraFamily, bicharacter: Bicharacter | None = None, route: str = "fields") -> VertexAlgebraInstance:
    return VertexAlgebraInstance(family, bicharacter, route)


# operations


def taylor_two_point(w: TensorState, N: int) -> Dict[Coeff, State]:
    """sum_{i+j<=N} x1^i x2^j f_*(D_1^(i) D_2^(j) w), merged by straightening."""
    if len(w.points) != 2:
        raise ValueError("taylor_two_point expects a two-point tensor")
    fam = w.family
    out: Dict[Coeff, State] = {}
    for i in range(N + 1):
        for j in range(N + 1 - i):
            acc: Dict[Monomial, object] = {}
            for (m1, m2), c in w.terms.items():
                for d1, c1 in fam.dp_mono(i, m1).items():
                    for d2, c2 in fam.dp_mono(j, m2).items():
                        for m, c3 in pbw_product(d1, d2, fam).items():
                            v = c * c1 * c2 * c3
                            acc[m] = acc[m] + v if m in acc else v
            s = State(fam, acc)
            if s:
                out[(i, j)] = s
    return out


def vertex_op(va: VertexAlgebraInstance, a: State, b: State, N: int = 6) -> OpeResult:
    """Y(a, x1) b: principal part and x1^i (i <= N) coefficients at x2 = 0."""
    return va.centered(a, b).at_x2_zero(N)


def ope(va: VertexAlgebraInstance, a: State, b: State, N: int = 4) -> OpeResult:
    """Two-point correlation Y(a, x1) Y(b, x2) |0> split into poles and regular part."""
    return va.centered(a, b).to_ope(N)


def twisted_ope(a: State, b: State, r: Bicharacter, N: int = 4) -> OpeResult:
    """Phi_r(a, b): the level-0 correlation twisted by r."""
    va = VertexAlgebraInstance(a.family, r, route="twist")
    return ope(va, a, b, N)


@dataclass
class ModeMatrixSlice:
    mode: int
    degree: int
    rows: List[Monomial]
    cols: List[Monomial]
    matrix: List[List[Fraction]]


def mode_matrix(va: VertexAlgebraInstance, a: State, n: int, d: int) -> ModeMatrixSlice:
    """Matrix of a_(n) from degree d to degree d + wt(a) - n - 1."""
    wts = a.degrees()
    if len(wts) > 1:
        raise ValueError("mode_matrix needs a homogeneous state")
    wt = wts.pop() if wts else 0
    target = d + wt - n - 1
    cols = graded_basis(va.family, d)
    rows = graded_basis(va.family, target) if target >= 0 else []
    index = {m: i for i, m in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        img = va.mode(a, n, va.state(c))
        for m, v in img.terms.items():
            if m not in index:
                raise RuntimeError("mode image left the expected graded piece")
            mat[index[m]][j] = v
    return ModeMatrixSlice(n, d, rows, cols, mat)


def direct_mode_matrix(family: AlgebraFamily, g, d: int) -> ModeMatrixSlice:
    """Matrix of a single generator acting by straightening (for comparisons)."""
    from .pbw import mode_action

    cols = graded_basis(family, d)
    target = d - g[0]
    rows = graded_basis(family, target) if target >= 0 else []
    index = {m: i for i, m in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        for m, v in mode_action(g, State.monomial(family, c)).terms.items():
            mat[index[m]][j] = v
    return ModeMatrixSlice(g[0], d, rows, cols, mat)


# axiom checks


@dataclass
class CheckReport:
    name: str
    passed: bool
    detail: Dict[str, object] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def _weight(s: State) -> int:
    return s.max_degree()


def check_locality(va: VertexAlgebraInstance, a: State, b: State, N_max: int = 6,
                   window: int = 4, box: int | None = None) -> CheckReport:
    """Least N with sum_k C(N,k)(-1)^k [a_(m+N-k), b_(n+k)] c = 0 on a mode box.

    c runs over all basis states of degree <= window and m, n over [-box, box].
    """
    wa, wb = _weight(a), _weight(b)
    B = window + max(wa, wb) if box is None else box
    basis = basis_up_to(va.family, window)
    memo: Dict[Tuple[int, int, Monomial], State] = {}

    def K(p: int, q: int, c: Monomial) -> State:
        key = (p, q, c)
        hit = memo.get(key)
        if hit is None:
            cs = va.state(c)
            hit = va.mode(a, p, va.mode(b, q, cs)) - va.mode(b, q, va.mode(a, p, cs))
            memo[key] = hit
        return hit

    residual = None
    for N in range(N_max + 1):
        residual = None
        for c in basis:
            for m in range(-B, B + 1):
                for n in range(-B, B + 1):
                    total = State(va.family, {})
                    for k in range(N + 1):
                        s = K(m + N - k, n + k, c)
                        if s:
                            total = total + s * (binomial(N, k) * (-1) ** k)
                    if total:
                        residual = {"m": m, "n": n, "state": c, "value": total}
                        break
                if residual:
                    break
            if residual:
                break
        if residual is None:
            return CheckReport("locality", True, {"N": N, "box": B, "window": window})
    return CheckReport("locality", False, {"N_max": N_max, "residual": residual})


def check_translation(va: VertexAlgebraInstance, a: State, N: int = 6, window: int = 4,
                      translation: Callable[[State], State] | None = None) -> CheckReport:
    """[T, a_(n)] = -n a_(n-1) on every basis state up to ``window``."""
    T = translation or va.translate
    wa = _weight(a)
    for c in basis_up_to(va.family, window):
        cs = va.state(c)
        Tc = T(cs)
        for n in range(-N - 1, degree(c) + wa + 1):
            lhs = T(va.mode(a, n, cs)) - va.mode(a, n, Tc)
            rhs = va.mode(a, n - 1, cs) * (-n)
            if lhs != rhs:
                return CheckReport("translation", False,
                                   {"state": c, "n": n, "lhs": lhs, "rhs": rhs})
    if T(va.vacuum):
        return CheckReport("translation", False, {"vacuum": T(va.vacuum)})
    return CheckReport("translation", True, {"truncation": N, "window": window})


def check_vacuum(va: VertexAlgebraInstance, a: State, N: int = 6, window: int = 4) -> CheckReport:
    """Y(|0>, z) = id and Y(a, z)|0> = a + O(z)."""
    vac = va.vacuum
    for c in basis_up_to(va.family, window):
        cs = va.state(c)
        for n in range(-N - 1, degree(c) + 1):
            got = va.mode(vac, n, cs)
            want = cs if n == -1 else State(va.family, {})
            if got != want:
                return CheckReport("vacuum", False, {"part": "identity", "state": c, "n": n, "value": got})
    res = vertex_op(va, a, vac, N)
    if res.principal:
        p = min(res.principal)
        return CheckReport("vacuum", False, {"part": "creation", "pole": p, "value": res.principal[p]})
    if res.regular.get((0, 0), State(va.family, {})) != a:
        return CheckReport("vacuum", False, {"part": "creation", "value": res.regular.get((0, 0))})
    return CheckReport("vacuum", True, {"truncation": N, "window": window})


def swap_principal(principal: Dict[int, State]) -> Dict[int, State]:
    """Re-center a principal part after exchanging the two points.

    t_q = sum_{p >= q} (-1)^p D^(p-q) s_p.
    """
    if not principal:
        return {}
    fam = next(iter(principal.values())).family
    top = max(principal)
    out = {}
    for q in range(1, top + 1):
        acc = State(fam, {})
        for p in range(q, top + 1):
            s = principal.get(p)
            if s:
                acc = acc + dp_act_state(p - q, s) * (-1) ** p
        if acc:
            out[q] = acc
    return out


def swapped_centered(va: VertexAlgebraInstance, a: State, b: State) -> CenteredSeries:
    """Centered coefficients of Y(b, x2) Y(a, x1)|0>, via Y(b, -u) a re-expanded."""
    inner = va.centered(b, a)
    top = inner.pole_bound
    fam = va.family

    def fn(m: int, j: int) -> State:
        out = State(fam, {})
        for n in range(-m - 1, top):
            s = inner(-n - 1, 0)
            if not s:
                continue
            l = m + n + 1
            out = out + dp_act_state(j + l, s) * ((-1) ** (n + 1) * binomial(j + l, j))
        return out

    return CenteredSeries(fam, fn, top)


def ope_commutator(va: VertexAlgebraInstance, a: State, b: State, N: int = 4) -> OpeResult:
    """Phi(a, b) - swap(Phi(b, a)).

    ``principal[p]`` is the coefficient of d^(p-1) delta(x1, x2) (centered at
    x2), ``regular`` the leftover regular part (zero for local pairs) and
    ``defect`` any mismatch between the two principal parts.
    """
    ab = va.centered(a, b)
    sw = swapped_centered(va, a, b)
    top = max(ab.pole_bound, sw.pole_bound)
    principal = {p: ab(-p, 0) for p in range(1, top + 1)}
    regular = {}
    for i in range(N + 1):
        for j in range(N + 1 - i):
            regular[(i, j)] = ab.regular(i, j) - sw.regular(i, j)
    defect = {}
    for p in range(1, top + 1):
        for j in range(N + 1):
            d = ab(-p, j) - sw(-p, j)
            if d:
                defect[(-p, j)] = d
    return OpeResult(principal, regular, N, defect)


def twist_agreement(va: VertexAlgebraInstance, pairs: Sequence[Tuple[Monomial, Monomial]], N: int = 6) -> CheckReport:
    """Compare the fields route with the twisting route on the given pairs."""
    fields = VertexAlgebraInstance(va.family, va.bicharacter, "fields")
    twist = VertexAlgebraInstance(va.family, va.bicharacter, "twist")
    for ma, mb in pairs:
        x = vertex_op(fields, fields.state(ma), fields.state(mb), N)
        y = vertex_op(twist, twist.state(ma), twist.state(mb), N)
        y = OpeResult({p: State(va.family, s.terms) for p, s in y.principal.items()},
                      {k: State(va.family, s.terms) for k, s in y.regular.items()}, N)
        if x != y:
            return CheckReport("twist", False, {"pair": (ma, mb), "fields": x, "twist": y})
    return CheckReport("twist", True, {"pairs": len(pairs), "truncation": N})


def twist_pairs(family: AlgebraFamily, window: int) -> List[Tuple[Monomial, Monomial]]:
    """Pairs on which twisting the level-0 algebra must reproduce the level-k one.

    Heisenberg: every pair of basis states.  Affine and Virasoro: pairs of
    single generators (the twist is exact there, see the notes in README).
    """
    basis = basis_up_to(family, window)
    if family.kind == HEISENBERG:
        return [(x, y) for x in basis if x for y in basis]
    singles = [m for m in basis if len(m) == 1]
    return [(x, y) for x in singles for y in singles]


__all__ = [
    "OpeResult", "CenteredSeries", "VertexAlgebraInstance", "vertex_algebra", "fields_centered",
    "twisted_centered", "taylor_two_point", "vertex_op", "ope", "twisted_ope", "ModeMatrixSlice",
    "mode_matrix", "direct_mode_matrix", "CheckReport", "check_locality", "check_translation",
    "check_vacuum", "swap_principal", "swapped_centered", "ope_commutator", "twist_agreement",
    "twist_pairs",
]
