"""Coderivations of the truncated tensor coalgebra and the comparison with cochains.

``T = TSigma A`` truncated at weight ``W`` is ``(+)_{w<=W} A^{(x)w}``; every
suspended generator has degree 1.  A coderivation is determined by its
corestriction ``f = (f_j : A^{(x)j} -> A)_j``.  For ``f_j`` of degree
``1 - j`` the coderivation is

``F(a_1..a_w) = sum_{i,j} (-1)^{(1-j) i} a_1..a_i (x) f_j(a_{i+1}..a_{i+j}) (x) ..a_w``.

The multiplication gives the bar coderivation ``m`` (``f_2 = mu``, degree
-1), and the differential on coderivations is ``[m, F] = mF + (-1)^n Fm``
for ``F`` coming from ``f_n``.

Conventions fixed by the comparison with :func:`invhoch.hochschild.cochain_complex`:

* the involution on ``A^{(x)w}`` is ``S_w = eps_w * reverse-star`` with the
  same sign ``eps_w = (-1)^{w(w+1)/2}`` as on the bar complex; then
  ``S m S = m``;
* the involution on coderivations is ``F -> -S F S``; the extra sign is the
  desuspension ``Sigma^{-1}`` and makes the identification of corestrictions
  with cochains an equivariant map;
* the corestriction of ``[m, F_f]`` is ``(-1)^{n-1}`` times the Hochschild
  coboundary of ``f``; this per-degree sign is recorded, not assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra_core import InvolutiveAlgebra
from .complexes import ChainComplex, InvolutiveChainComplex, homology_dims, invariants_complex
from .hochschild import cochain_complex, involution_sign, word_index, word_involution
from .exact_linalg import Matrix, block_diag, hstack

__all__ = [
    "WeightGradedMap",
    "Coderivation",
    "coderivation_from_corestriction",
    "coleibniz_defect",
    "bar_coderivation",
    "tensor_involution",
    "bracket",
    "coder_complex",
    "ComparisonReport",
    "compare_with_cochain",
]


def _offsets(n: int, W: int) -> list[int]:
    out, off = [], 0
    for w in range(W + 1):
        out.append(off)
        off += n ** w
    out.append(off)
    return out


@dataclass(frozen=True, eq=False)
class WeightGradedMap:
    """Components ``f_w : A^{(x)w} -> A`` (``n x n^w`` matrices); missing weights are zero."""

    algebra: InvolutiveAlgebra
    components: dict[int, Matrix] = dc_field(default_factory=dict)

    def __post_init__(self):
        n = self.algebra.dim
        for w, f in self.components.items():
            if f.shape != (n, n ** w):
                raise ValueError(f"component {w} has shape {f.shape}, expected {(n, n ** w)}")

    def component(self, w: int) -> Matrix:
        n = self.algebra.dim
        return self.components.get(w, Matrix.zeros(self.algebra.field, n, n ** w))

    @classmethod
    def homogeneous(cls, A: InvolutiveAlgebra, w: int, f: Matrix) -> "WeightGradedMap":
        return cls(A, {w: f})


def _identity_power(A, k: int) -> Matrix:
    return Matrix.identity(A.field, A.dim ** k)


@dataclass(frozen=True, eq=False)
class Coderivation:
    """Blocks ``(out_w, in_w) -> matrix`` of a coderivation on the weight-``<= W`` truncation."""

    algebra: InvolutiveAlgebra
    W: int
    blocks: dict[tuple[int, int], Matrix]
    corestriction: WeightGradedMap | None = None

    def block(self, out_w: int, in_w: int) -> Matrix:
        n = self.algebra.dim
        b = self.blocks.get((out_w, in_w))
        return b if b is not None else Matrix.zeros(self.algebra.field, n ** out_w, n ** in_w)

    @cached_property
    def matrix(self) -> Matrix:
        """The full endomorphism of ``(+)_{w<=W} A^{(x)w}``."""
        F, n, W = self.algebra.field, self.algebra.dim, self.W
        off = _offsets(n, W)
        entries = {}
        for (o, i), b in self.blocks.items():
            for (r, c), v in b.nonzero().items():
                entries[off[o] + r, off[i] + c] = v
        return Matrix.from_sparse(F, off[-1], off[-1], entries)


def coderivation_from_corestriction(f: WeightGradedMap, W: int) -> Coderivation:
    """The unique coderivation with corestriction ``f``, on weights ``<= W``."""
    A = f.algebra
    blocks: dict = {}
    for j, fj in f.components.items():
        if fj.is_zero():
            continue
        for w in range(max(j, 0), W + 1):
            out_w = w - j + 1
            if out_w > W:
                continue
            total = None
            for i in range(w - j + 1):
                term = _identity_power(A, i).kron(fj).kron(_identity_power(A, w - i - j))
                if ((1 - j) * i) % 2:
                    term = -term
                total = term if total is None else total + term
            key = (out_w, w)
            blocks[key] = total if key not in blocks else blocks[key] + total
    return Coderivation(A, W, blocks, f)


def multiplication_matrix(A: InvolutiveAlgebra) -> Matrix:
    """``mu : A (x) A -> A``."""
    n = A.dim
    return Matrix.from_sparse(A.field, n, n * n, {
        (k, i * n + j): c for i in range(n) for j in range(n) for k, c in A.products[i][j]
    })


def bar_coderivation(A: InvolutiveAlgebra, W: int) -> Coderivation:
    """The coderivation ``m`` induced by the multiplication."""
    return coderivation_from_corestriction(WeightGradedMap.homogeneous(A, 2, multiplication_matrix(A)), W)


def tensor_involution(A: InvolutiveAlgebra, W: int) -> Matrix:
    """``S = (+)_w eps_w * reverse-star`` on the truncation."""
    return block_diag([word_involution(A, w, involution_sign(w)) for w in range(W + 1)])


def coleibniz_defect(F: Coderivation, degree: int) -> tuple | None:
    """First basis word where ``Delta F = (F (x) 1 + 1 (x) F) Delta`` fails, or ``None``.

    ``degree`` is the degree of ``F`` (``1 - j`` for ``F`` from ``f_j``); it
    fixes the Koszul sign of ``1 (x) F``.  Only input weights whose image
    stays inside the truncation are compared.
    """
    A, W = F.algebra, F.W
    n, K = A.dim, A.field

    def acc(d: dict, key, c):
        v = K(d.get(key, 0) + c)
        if v:
            d[key] = v
        else:
            d.pop(key, None)

    def apply(w_in: int, word: tuple) -> dict:
        out = {}
        col = word_index(word, n)
        for out_w in range(W + 1):
            b = F.blocks.get((out_w, w_in))
            if b is None:
                continue
            for r in range(b.nrows):
                v = b[r, col]
                if v:
                    out[_unindex(r, n, out_w)] = v
        return out

    for w in range(W + 1):
        if w + degree > W:
            continue
        for word in itertools.product(range(n), repeat=w):
            lhs: dict = {}
            for u, c in apply(w, word).items():
                for k in range(len(u) + 1):
                    acc(lhs, (u[:k], u[k:]), c)
            rhs: dict = {}
            for k in range(w + 1):
                x, y = word[:k], word[k:]
                for u, c in apply(len(x), x).items():
                    acc(rhs, (u, y), c)
                sign = -1 if (degree * len(x)) % 2 else 1
                for u, c in apply(len(y), y).items():
                    acc(rhs, (x, u), sign * c)
            if lhs != rhs:
                return word
    return None


def _unindex(idx: int, n: int, length: int) -> tuple:
    out = []
    for _ in range(length):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def bracket(m: Coderivation, F: Coderivation, degree: int) -> Matrix:
    """``[m, F] = mF - (-1)^{|m| |F|} Fm`` as full matrices, with ``|m| = -1`` and ``|F| = degree``."""
    mF = m.matrix @ F.matrix
    Fm = F.matrix @ m.matrix
    return mF + Fm if degree % 2 else mF - Fm


def _coder_differential(A: InvolutiveAlgebra, k: int) -> Matrix:
    """Corestriction of ``[m, F_f]`` for ``f`` in degree ``k``, as a matrix on cochain coordinates."""
    F, n = A.field, A.dim
    mu = multiplication_matrix(A)
    m_k = bar_coderivation(A, k + 1).block(k, k + 1)
    cols = []
    for w in range(n ** k):
        for j in range(n):
            f = Matrix.from_sparse(F, n, n ** k, {(j, w): 1})
            Ff = coderivation_from_corestriction(WeightGradedMap.homogeneous(A, k, f), max(k + 1, 2))
            core = mu @ Ff.block(2, k + 1)
            tail = f @ m_k
            core = core - tail if k % 2 else core + tail
            # cochain layout: word * n + j
            cols.append([core[jj, ww] for ww in range(n ** (k + 1)) for jj in range(n)])
    return Matrix.from_columns(F, cols, n ** (k + 1) * n) if cols else Matrix.zeros(F, n ** (k + 1) * n, 0)


def _coder_involution(A: InvolutiveAlgebra, k: int) -> Matrix:
    """``f -> -(S_1 o f o S_k)`` on corestrictions, in cochain coordinates."""
    S1 = word_involution(A, 1, involution_sign(1))
    Sk = word_involution(A, k, involution_sign(k))
    # column-major vec: vec(X f Y) = (Y^T (x) X) vec(f)
    return (Sk.T.kron(S1)).scale(-1)


def coder_complex(A: InvolutiveAlgebra, W: int) -> InvolutiveChainComplex:
    """``Sigma^{-1} Coder(TSigma A)`` in degrees ``0..W`` with the involution ``-S F S``.

    Degree ``n`` consists of the coderivations with corestriction in
    ``Hom(A^{(x)n}, A)``.  Only ``d^0 .. d^{W-1}`` are built, i.e. exactly
    the degrees with ``n + 1 <= W`` where the bracket stays in the
    truncation.
    """
    F, n = A.field, A.dim
    dims = [n ** k * n for k in range(W + 1)]
    maps = [_coder_differential(A, k) for k in range(W)]
    invs = [_coder_involution(A, k) for k in range(W + 1)]
    ic = InvolutiveChainComplex(ChainComplex(F, dims, maps, "cochain"), invs)
    ic.check()
    return ic


@dataclass
class ComparisonReport:
    algebra: str
    W: int
    reliable_degrees: list[int]
    coder_dims: list[int]
    cochain_dims: list[int]
    signs: list[int | None]
    involutions_match: list[bool]
    coder_cohomology: list[int]
    cochain_cohomology: list[int]
    coder_invariant_cohomology: list[int]
    cochain_invariant_cohomology: list[int]
    first_failure: int | None = None
    residual: Matrix | None = None

    @property
    def ok(self) -> bool:
        return (
            self.first_failure is None
            and self.coder_dims == self.cochain_dims
            and all(s is not None for s in self.signs)
            and all(self.involutions_match)
            and self.coder_cohomology == self.cochain_cohomology
            and self.coder_invariant_cohomology == self.cochain_invariant_cohomology
        )

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "weight": self.W,
            "reliable_degrees": self.reliable_degrees,
            "coder_dims": self.coder_dims,
            "cochain_dims": self.cochain_dims,
            "signs": self.signs,
            "involutions_match": self.involutions_match,
            "coder_cohomology": self.coder_cohomology,
            "cochain_cohomology": self.cochain_cohomology,
            "coder_invariant_cohomology": self.coder_invariant_cohomology,
            "cochain_invariant_cohomology": self.cochain_invariant_cohomology,
            "first_failure": self.first_failure,
            "ok": self.ok,
        }


def compare_with_cochain(A: InvolutiveAlgebra, W: int, cap: int | None = None) -> ComparisonReport:
    """Identify weight-``n`` corestrictions with ``n``-cochains and compare the complexes.

    The identification is the identity on coordinates.  For each reliable
    degree the two differentials must agree up to one sign ``sigma_n``, and
    the involutions must agree exactly; then ``Phi_n = prod_{k<n} sigma_k``
    is an equivariant isomorphism of complexes.
    """
    coder = coder_complex(A, W)
    coch = cochain_complex(A, None, W, cap)
    signs: list[int | None] = []
    first, residual = None, None
    for k in range(W):
        dc, dh = coder.complex.maps[k], coch.complex.maps[k]
        if dc == dh and dc == -dh:
            # both vanish, or characteristic 2: record the generic (-1)^{n-1}
            s = -1 if k % 2 == 0 else 1
        else:
            s = 1 if dc == dh else (-1 if dc == -dh else None)
        signs.append(s)
        if s is None and first is None:
            first, residual = k, dc - dh
    inv = [a == b for a, b in zip(coder.involutions, coch.involutions)]
    if first is None and not all(inv):
        first = inv.index(False)
    return ComparisonReport(
        algebra=A.name,
        W=W,
        reliable_degrees=list(range(W)),
        coder_dims=list(coder.dims),
        cochain_dims=list(coch.dims),
        signs=signs,
        involutions_match=inv,
        coder_cohomology=homology_dims(coder.complex),
        cochain_cohomology=homology_dims(coch.complex),
        coder_invariant_cohomology=homology_dims(invariants_complex(coder)),
        cochain_invariant_cohomology=homology_dims(invariants_complex(coch)),
        first_failure=first,
        residual=residual,
    )
