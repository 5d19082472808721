"""
Tensor products, hom spaces and an adjunction
=============================================

Involutive tensor products over A^ie, the coinvariants of the tensor over A,
and the adjunction between twisting by an involutive vector space and
involutive hom.  We end with two involutive vector spaces that no ordinary
invariant can tell apart.
"""

from invhoch import QQ, InvolutiveBimodule, IVectSpace, Matrix, fixture
from invhoch.exact_linalg import rank
from invhoch.algebra_core import regular_bimodule
from invhoch.functors import (
    adjunction_check,
    hom,
    ihom,
    tensor_over_algebra,
    tensor_over_algebra_coinvariants,
    tensor_over_enveloping,
    tensor_over_ienv,
)

M = regular_bimodule(fixture("M2_transpose", QQ).algebra)
print("M2 with transpose: (x)_A", tensor_over_algebra(M, M).dim,
      " (x)_A^e", tensor_over_enveloping(M, M).dim,
      " (x)_A^ie", tensor_over_ienv(M, M).dim,
      " coinvariants of (x)_A", tensor_over_algebra_coinvariants(M, M).dim)

# ihom(M (x)_Z/2 V, L) against involutive maps V -> ihom(M, L)
for name, V in [("dual_anti", IVectSpace.sign(QQ)), ("k_Z2", IVectSpace.swap(QQ))]:
    N = regular_bimodule(fixture(name, QQ).algebra)
    rep = adjunction_check(N, V, N)
    print(f"adjunction for {name}: {rep.lhs_dim} = {rep.rhs_dim}, all checks {'pass' if rep.ok else 'FAIL'}")

# k^2 with the trivial involution versus the swap, as bimodules over k
k = fixture("k", QQ).algebra
I = Matrix.identity(QQ, 2)
V = InvolutiveBimodule(k, [I], [I], I)
W = InvolutiveBimodule(k, [I], [I], Matrix.from_rows(QQ, [[0, 1], [1, 0]]))
print("hom dims  V,V W,W V,W :", hom(V, V).dim, hom(W, W).dim, hom(V, W).dim)
print("ihom dims V,V W,W V,W :", ihom(V, V).dim, ihom(W, W).dim, ihom(V, W).dim)
print("ranks of a basis of ihom(V, W):", [rank(f) for f in ihom(V, W).maps()])
# every involutive map V -> W lands in the fixed line of W, so V and W are
# not isomorphic as involutive bimodules although all plain dimensions agree
