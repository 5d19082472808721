"""Bar complex and Hochschild (co)chain complexes, ordinary and involutive.

Words in ``A^{(x)L}`` are ordered lexicographically: ``(i_1, ..., i_L)`` has
index ``sum_k i_k n^{L-k}``.  A chain ``a_1 ... a_n (x) m_j`` has index
``word * dim M + j``, and a cochain ``f`` stores ``f(e_w)`` in coordinates
``word * dim M + j`` as well.

Sign of the involution
----------------------
Word reversal ``rho`` together with the algebra involution satisfies
``rho o d = (-1)^n d o rho`` on ``Bar_n`` (and on ``C_n``).  The involution
used throughout is therefore ``t_n = eps_n * rho`` with
``eps_n = (-1)^{n(n+1)/2}``; ``eps_0 = 1`` is forced by compatibility with
the augmentation ``Bar_0 -> A``.  With this sign every involution below is
verified to be a chain map.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .algebra_core import InvolutiveAlgebra, InvolutiveBimodule, IVectSpace, regular_bimodule
from .complexes import (
    ChainComplex,
    InvolutiveChainComplex,
    coinvariants_complex,
    homology_dims,
    invariants_complex,
    involutive_from_sparse,
)
from .functors import ProjectivityCertificate, is_projective_ivect
from .exact_linalg import Field, Matrix, rank

__all__ = [
    "SizeCapError",
    "DEFAULT_MAX_ENTRIES",
    "max_entries",
    "involution_sign",
    "word_index",
    "word_involution",
    "bar_complex",
    "bar_augmentation",
    "augmented_bar_homology",
    "bar_projectivity_certificate",
    "chain_complex",
    "involutive_chain_complex",
    "cochain_complex",
    "involutive_cochain_complex",
    "HochschildResult",
    "VARIANTS",
    "hochschild",
]

DEFAULT_MAX_ENTRIES = 200_000
VARIANTS = ("hh", "ihh", "cohh", "icohh")


class SizeCapError(RuntimeError):
    """A requested complex is larger than the configured cap."""

    def __init__(self, what: str, required: int, allowed: int):
        super().__init__(
            f"{what}: needs {required} entries, cap is {allowed}; lower the degree or raise "
            f"INVHOCH_MAX_ENTRIES"
        )
        self.required = required
        self.allowed = allowed


def max_entries() -> int:
    return int(os.environ.get("INVHOCH_MAX_ENTRIES", DEFAULT_MAX_ENTRIES))


def _check_size(what: str, n: int, N: int, m: int, cap: int | None):
    cap = max_entries() if cap is None else cap
    required = n ** (N + 2) * m
    if required > cap:
        raise SizeCapError(what, required, cap)


def involution_sign(n: int) -> int:
    return -1 if (n * (n + 1) // 2) % 2 else 1


def word_index(w, n: int) -> int:
    idx = 0
    for x in w:
        idx = idx * n + x
    return idx


def _words(n: int, length: int) -> Iterator[tuple]:
    return itertools.product(range(n), repeat=length)


def _word_involution_entries(A: InvolutiveAlgebra, length: int, sign: int = 1) -> dict:
    F, n = A.field, A.dim
    S = A.star_columns
    entries: dict = {}
    for w in _words(n, length):
        col = word_index(w, n)
        for combo in itertools.product(*(S[x] for x in reversed(w))):
            coef = F(sign)
            for _, c in combo:
                coef *= c
            _add(entries, (word_index((r for r, _ in combo), n), col), coef)
    return entries


def word_involution(A: InvolutiveAlgebra, length: int, sign: int = 1) -> Matrix:
    """``sign * (a_1 ... a_L -> a_L^* ... a_1^*)`` on ``A^{(x)L}``."""
    n = A.dim
    return Matrix.from_sparse(A.field, n ** length, n ** length, _word_involution_entries(A, length, sign))


def _kron_sparse(a: dict, b: dict, rows_b: int, cols_b: int) -> dict:
    return {(i * rows_b + k, j * cols_b + l): x * y for (i, j), x in a.items() for (k, l), y in b.items()}


def _faces(A: InvolutiveAlgebra, w: tuple):
    """``(i, word, coef)`` for every basis term of ``merge_i(w)``, ``i = 0..len(w)-2``."""
    P = A.products
    for i in range(len(w) - 1):
        for k, c in P[w[i]][w[i + 1]]:
            yield i, w[:i] + (k,) + w[i + 2:], c


def _add(entries: dict, key, c):
    v = entries.get(key, 0) + c
    if v:
        entries[key] = v
    else:
        entries.pop(key, None)


def bar_complex(A: InvolutiveAlgebra, N: int, cap: int | None = None) -> InvolutiveChainComplex:
    """``Bar_n = A^{(x)(n+2)}`` for ``n = 0..N`` with ``d = sum_i (-1)^i merge_i``."""
    # counted as its top involution, a dense square of side n^(N+2)
    _check_size("bar complex", A.dim, N, A.dim ** (N + 2), cap)
    F, n = A.field, A.dim
    maps = []
    for deg in range(1, N + 1):
        entries: dict = {}
        for w in _words(n, deg + 2):
            col = word_index(w, n)
            for i, v, c in _faces(A, w):
                _add(entries, (word_index(v, n), col), c if i % 2 == 0 else -c)
        maps.append(entries)
    invs = [_word_involution_entries(A, deg + 2, involution_sign(deg)) for deg in range(N + 1)]
    return involutive_from_sparse(F, [n ** (deg + 2) for deg in range(N + 1)], maps, invs)


def bar_augmentation(A: InvolutiveAlgebra) -> Matrix:
    """Multiplication ``Bar_0 = A (x) A -> A``."""
    F, n = A.field, A.dim
    entries: dict = {}
    for w in _words(n, 2):
        for _, v, c in _faces(A, w):
            _add(entries, (v[0], word_index(w, n)), c)
    return Matrix.from_sparse(F, n, n * n, entries)


def augmented_bar_homology(A: InvolutiveAlgebra, N: int, cap: int | None = None) -> list[int]:
    """Homology of ``Bar(A) -> A`` in degrees ``0..N-1``; all zero for a resolution."""
    bar = bar_complex(A, N, cap).complex
    eps = bar_augmentation(A)
    if not (eps @ bar.differential(1)).is_zero():
        raise AssertionError("augmentation o d_1 != 0")
    out = []
    for deg in range(N):
        out_rank = rank(eps) if deg == 0 else rank(bar.differential(deg))
        out.append(bar.dims[deg] - out_rank - rank(bar.differential(deg + 1)))
    return out


def bar_projectivity_certificate(A: InvolutiveAlgebra, N: int) -> list[ProjectivityCertificate]:
    """Projectivity of the generating representations ``A^{(x)n}``, ``n = 0..N``.

    ``Bar_n`` is induced up from ``A^{(x)n}`` with the reversal involution, so
    a projective generator certifies that ``Bar_n`` is a projective
    involutive bimodule.
    """
    return [
        is_projective_ivect(IVectSpace(A.field, word_involution(A, deg, involution_sign(deg))))
        for deg in range(N + 1)
    ]


def _sparse_cols(X: Matrix) -> list[list[tuple[int, object]]]:
    cols: list[list] = [[] for _ in range(X.ncols)]
    for (r, c), v in sorted(X.nonzero().items()):
        cols[c].append((r, v))
    return cols


def _module_or_regular(A, M):
    return regular_bimodule(A) if M is None else M


def chain_complex(A: InvolutiveAlgebra, M: InvolutiveBimodule | None = None, N: int = 4,
                  cap: int | None = None) -> InvolutiveChainComplex:
    """``C_n = A^{(x)n} (x) M`` with

    ``d(a_1..a_n (x) m) = a_2..a_n (x) m a_1 + sum_{i=1}^{n-1} (-1)^i a_1..a_i a_{i+1}..a_n (x) m
    + (-1)^n a_1..a_{n-1} (x) a_n m``

    and involution ``eps_n a_n^*..a_1^* (x) m^*``.
    """
    M = _module_or_regular(A, M)
    F, n, m = A.field, A.dim, M.dim
    _check_size("chain complex", n, N, m, cap)
    Lc = [_sparse_cols(x) for x in M.left]
    Rc = [_sparse_cols(x) for x in M.right]
    maps = []
    for deg in range(1, N + 1):
        entries: dict = {}
        for w in _words(n, deg):
            base = word_index(w, n) * m
            head = word_index(w[1:], n) * m
            tail = word_index(w[:-1], n) * m
            merged = [(i, word_index(v, n) * m, c) for i, v, c in _faces(A, w)]
            last_sign = -1 if deg % 2 else 1
            for j in range(m):
                col = base + j
                for r, c in Rc[w[0]][j]:
                    _add(entries, (head + r, col), c)
                for i, row, c in merged:
                    # merge of a_{i+1} a_{i+2} carries (-1)^{i+1}
                    _add(entries, (row + j, col), -c if i % 2 == 0 else c)
                for r, c in Lc[w[-1]][j]:
                    _add(entries, (tail + r, col), c * last_sign)
        maps.append(entries)
    dims = [n ** deg * m for deg in range(N + 1)]
    tM = M.star.nonzero()
    invs = [_kron_sparse(_word_involution_entries(A, deg, involution_sign(deg)), tM, m, m) for deg in range(N + 1)]
    return involutive_from_sparse(F, dims, maps, invs, "chain")


def involutive_chain_complex(A, M=None, N: int = 4, cap: int | None = None) -> ChainComplex:
    """Degreewise coinvariants of :func:`chain_complex`."""
    return coinvariants_complex(chain_complex(A, M, N, cap))


def cochain_complex(A: InvolutiveAlgebra, M: InvolutiveBimodule | None = None, N: int = 4,
                    cap: int | None = None) -> InvolutiveChainComplex:
    """``C^n = Hom_k(A^{(x)n}, M)`` with the differential read off the bar complex.

    A cochain ``f`` corresponds to the bimodule map ``a_0 (x) w (x) a' -> a_0 f(w) a'``
    on ``Bar_n``.  Then ``(df)(w') = F(d(1 (x) w' (x) 1))``: expand the unit in the
    basis, apply the bar faces, and let every resulting term ``a_0 (x) w (x) a'``
    contribute ``L_{a_0} R_{a'}`` to the block ``(w', w)``.  No Hochschild
    formula is hand-coded.  The involution is ``f -> t_M o f o t_n``.
    """
    M = _module_or_regular(A, M)
    F, n, m = A.field, A.dim, M.dim
    _check_size("cochain complex", n, N, m, cap)
    unit = [(i, c) for i, c in enumerate(A.unit) if c]
    blocks = {}

    def block(a0, a1):
        key = (a0, a1)
        if key not in blocks:
            blocks[key] = (M.left[a0] @ M.right[a1]).nonzero()
        return blocks[key]

    maps = []
    for deg in range(N):
        entries: dict = {}
        for wp in _words(n, deg + 1):
            row0 = word_index(wp, n) * m
            acc: dict = {}
            for (u0, c0), (u1, c1) in itertools.product(unit, unit):
                full = (u0,) + wp + (u1,)
                for i, v, c in _faces(A, full):
                    coef = c * c0 * c1 * (1 if i % 2 == 0 else -1)
                    key = (v[0], word_index(v[1:-1], n), v[-1])
                    _add(acc, key, coef)
            for (a0, widx, a1), coef in acc.items():
                col0 = widx * m
                for (r, c), x in block(a0, a1).items():
                    _add(entries, (row0 + r, col0 + c), coef * x)
        maps.append(entries)
    dims = [n ** deg * m for deg in range(N + 1)]
    tM = M.star.nonzero()
    invs = []
    for deg in range(N + 1):
        tw = {(j, i): x for (i, j), x in _word_involution_entries(A, deg, involution_sign(deg)).items()}
        invs.append(_kron_sparse(tw, tM, m, m))
    return involutive_from_sparse(F, dims, maps, invs, "cochain")


def involutive_cochain_complex(A, M=None, N: int = 4, cap: int | None = None) -> ChainComplex:
    """Degreewise invariants of :func:`cochain_complex`."""
    return invariants_complex(cochain_complex(A, M, N, cap))


@dataclass
class HochschildResult:
    kind: str
    dims: list[int]
    complex: ChainComplex
    certificate: list[ProjectivityCertificate] | None = None
    oracle_dims: list[int] | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def certified(self) -> bool:
        """True unless an involutive variant lacks a projectivity certificate."""
        return self.certificate is None or all(self.certificate)

    @property
    def first_uncertified_degree(self) -> int | None:
        if self.certificate is None:
            return None
        return next((n for n, c in enumerate(self.certificate) if not c), None)

    @property
    def oracle_agrees(self) -> bool | None:
        return None if self.oracle_dims is None else self.oracle_dims == self.dims


def hochschild(A: InvolutiveAlgebra, M: InvolutiveBimodule | None = None, N: int = 4,
               variant: str = "hh", oracle: bool = False, cap: int | None = None) -> HochschildResult:
    """``HH_n``, ``iHH_n``, ``HH^n`` or ``iHH^n`` for ``n = 0..N-1``.

    With ``oracle=True`` the same dimensions are also computed as Tor/Ext
    over ``A^e`` (ordinary) or ``A^ie`` (involutive) from an independent free
    resolution.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if variant == "hh":
        c = chain_complex(A, M, N, cap).complex
    elif variant == "ihh":
        c = involutive_chain_complex(A, M, N, cap)
    elif variant == "cohh":
        c = cochain_complex(A, M, N, cap).complex
    else:
        c = involutive_cochain_complex(A, M, N, cap)
    res = HochschildResult(variant, homology_dims(c), c)
    if variant in ("ihh", "icohh"):
        res.certificate = bar_projectivity_certificate(A, N)
        if not res.certified:
            res.notes.append(
                f"uncertified: bar generators are not projective from degree {res.first_uncertified_degree}"
            )
    if oracle:
        from .resolution_oracle import oracle_dims

        res.oracle_dims = oracle_dims(A, M, N, variant)
    return res
