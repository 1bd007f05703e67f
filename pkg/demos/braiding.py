"""A non-symmetric bicharacter: the product is braided commutative but not commutative."""

from vacalc.quantum import (braided_comm_check, braided_R_from_bichar, plain_comm_check,
                            rmatrix_hexagon_check, toy_bicharacter, ybe_check)

r = toy_bicharacter()
R = braided_R_from_bichar(r, 3)
b = ((-1, 0),)
print("R(b (x) b) =")
for (x, y), v in R.column(b, b).items():
    print(f"  {r.family.mono_str(x)} (x) {r.family.mono_str(y)}  *  {v}")
for check in (ybe_check(R), rmatrix_hexagon_check(R), braided_comm_check(r, R, 3), plain_comm_check(r, 3)):
    print(f"{check.name:12s} {'holds' if check else 'fails'} ({check.checked} cases)")
