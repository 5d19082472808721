"""
A first look: dual numbers with x* = -x
=======================================

Build a two-dimensional involutive algebra by hand, check its axioms, and
compare ordinary with involutive Hochschild homology.
"""

from invhoch import QQ, InvolutiveAlgebra, Matrix, hochschild, validate_algebra
from invhoch.algebra_core import regular_bimodule
from invhoch.functors import abelianization, center, involutive_abelianization, involutive_center

# basis (1, x); mul[i][j] lists the coordinates of e_i e_j, so x.x = 0
mul = [
    [[1, 0], [0, 1]],
    [[0, 1], [0, 0]],
]
star = Matrix.from_rows(QQ, [[1, 0], [0, -1]])
A = InvolutiveAlgebra(QQ, mul, [1, 0], star, ("1", "x"), name="dual numbers, x* = -x")

# validation never raises; it lists every check with a witness on failure
print(validate_algebra(A).summary())

# degree 0 in two ways: functors on the regular bimodule and the complexes
M = regular_bimodule(A)
print("Z, Ab   :", center(M).dim, abelianization(M).dim)
print("iZ, iAb :", involutive_center(M).dim, involutive_abelianization(M).dim)

for variant in ("hh", "ihh", "cohh", "icohh"):
    res = hochschild(A, None, 4, variant, oracle=True)
    print(f"{variant:6s} degrees 0..3: {res.dims}   oracle {res.oracle_dims}   certified {res.certified}")

# the involution halves the degree-0 part but leaves the higher classes where
# the star acts by +1; over Q the involutive groups are always the
# coinvariants of the ordinary ones
