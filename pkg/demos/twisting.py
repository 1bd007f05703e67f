"""Build the level-k Heisenberg algebra by twisting level 0 with a bicharacter."""

from vacalc import AlgebraFamily, State, VertexAlgebraInstance, default_bicharacter, ope
from vacalc.bicharacter import twisted_product

H = AlgebraFamily.heisenberg(3)
r = default_bicharacter(H)
b = State.monomial(H, ((-1, 0),))
print("r(b, b) =", r.evaluate(((-1, 0),), ((-1, 0),)))
print("b o_r b =", twisted_product(b, b, r))

fields = VertexAlgebraInstance(H, r, "fields")
twist = VertexAlgebraInstance(H, r, "twist")
a = State.monomial(H, ((-2, 0), (-1, 0)))
x, y = ope(fields, a, b, 2), ope(twist, a, b, 2)
print("fields route principal:", {p: str(s) for p, s in x.principal.items()})
print("twist route principal: ", {p: str(s) for p, s in y.principal.items()})
print("routes agree:", x == y)
