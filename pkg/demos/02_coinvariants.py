"""
Involutive homology as coinvariants
===================================

Away from characteristic 2 the involutive groups are the Z/2-coinvariants of
the ordinary ones.  Here we watch the induced action on homology for the
group algebra of Z/3 with g* = g^-1, first over Q and then over F_3 where
the ordinary homology is much larger.
"""

from invhoch import GF, QQ, fixture
from invhoch.complexes import homology_split
from invhoch.hochschild import chain_complex, hochschild

for F in (QQ, GF(3)):
    A = fixture("k_Z3", F).algebra
    ic = chain_complex(A, None, 4)
    print(f"\n{A.name} over {F}")
    print(" n  dim HH_n  (+1 part, -1 part)  iHH_n")
    ihh = hochschild(A, None, 4, "ihh").dims
    for n in range(4):
        s = homology_split(ic, n)
        print(f" {n}  {s['dim']:8d}  ({s['invariants']}, {s['anti_invariants']})  {ihh[n]:17d}")

# over F_3 the group order is not invertible and HH_n stays 3-dimensional in
# every degree; the star still splits it and iHH_n keeps the +1 part
