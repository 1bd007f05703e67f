"""Walk through the OPEs of the free boson and the Virasoro field."""

from fractions import Fraction

from vacalc import AlgebraFamily, State, VertexAlgebraInstance, check_locality, ope, vertex_op


def show(title, res):
    print(title)
    for p, s in sorted(res.principal.items(), reverse=True):
        print(f"  (x1-x2)^-{p}: {s}")
    for (i, j), s in sorted(res.regular.items()):
        if i + j <= 1:
            print(f"  x1^{i} x2^{j}: {s}")


H = AlgebraFamily.heisenberg(1)
va = VertexAlgebraInstance(H)
b = State.monomial(H, ((-1, 0),))
show("b(x1) b(x2) |0>", ope(va, b, b, 2))
show("Y(b(-2)|0>, x) b(-1)|0>", vertex_op(va, State.monomial(H, ((-2, 0),)), b, 2))

for c in (0, Fraction(1, 2), 26):
    V = AlgebraFamily.virasoro(c)
    vv = VertexAlgebraInstance(V)
    L = State.monomial(V, ((-2, 0),))
    show(f"T(x1) T(x2) |0> at c = {c}", ope(vv, L, L, 1))
    rep = check_locality(vv, L, L, N_max=5, window=2)
    print(f"  locality order {rep.detail['N']}")
