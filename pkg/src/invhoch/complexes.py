"""Bounded complexes of finite-dimensional vector spaces.

A :class:`ChainComplex` lives in degrees ``0..N``.  For ``kind="chain"`` the
maps are ``d_n : C_n -> C_{n-1}`` (``n = 1..N``); for ``kind="cochain"`` they
are ``d^n : C^n -> C^{n+1}`` (``n = 0..N-1``).  Only degrees ``0..N-1`` have
trustworthy (co)homology: the top degree is a truncation artifact and is never
reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import Field, Matrix, hstack, kernel_basis, kernel_with_free, quotient_data, rank, rref, solve

__all__ = [
    "ComplexError",
    "ChainComplex",
    "InvolutiveChainComplex",
    "homology_dims",
    "coinvariants_complex",
    "invariants_complex",
    "dualize",
    "induced_action",
    "homology_split",
    "euler_characteristic",
]


class ComplexError(ValueError):
    """A complex failed a structural check; ``degree`` locates the failure."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message if degree is None else f"{message} (degree {degree})")
        self.degree = degree


@dataclass(frozen=True, eq=False)
class ChainComplex:
    field: Field
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    kind: str = "chain"

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.kind not in ("chain", "cochain"):
            raise ValueError("kind must be 'chain' or 'cochain'")
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise ValueError("need exactly one map between consecutive degrees")
        for k, m in enumerate(self.maps):
            src, dst = self._ends(k)
            if m.shape != (self.dims[dst], self.dims[src]):
                raise ValueError(f"map {k} has shape {m.shape}, expected {(self.dims[dst], self.dims[src])}")

    def _ends(self, k: int) -> tuple[int, int]:
        # maps[k] is d_{k+1} (chain) or d^k (cochain)
        return (k + 1, k) if self.kind == "chain" else (k, k + 1)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def differential(self, n: int) -> Matrix:
        """``d_n : C_n -> C_{n-1}`` or ``d^n : C^n -> C^{n+1}``; zero outside the range."""
        k = n - 1 if self.kind == "chain" else n
        if 0 <= k < len(self.maps):
            return self.maps[k]
        tgt = n - 1 if self.kind == "chain" else n + 1
        rows = self.dims[tgt] if 0 <= tgt <= self.top else 0
        cols = self.dims[n] if 0 <= n <= self.top else 0
        return Matrix.zeros(self.field, rows, cols)

    def incoming(self, n: int) -> Matrix:
        """The differential landing in degree ``n``."""
        return self.differential(n + 1 if self.kind == "chain" else n - 1)

    def check(self) -> None:
        """Raise :class:`ComplexError` unless ``d o d = 0`` exactly."""
        for k in range(len(self.maps) - 1):
            first, second = (self.maps[k + 1], self.maps[k]) if self.kind == "chain" else (self.maps[k], self.maps[k + 1])
            if not (second @ first).is_zero():
                raise ComplexError("d o d != 0", k + 2 if self.kind == "chain" else k)  # source of the composite


@dataclass(frozen=True, eq=False)
class InvolutiveChainComplex:
    """A complex with an involution ``t_n`` in each degree commuting with ``d``."""

    complex: ChainComplex
    involutions: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "involutions", tuple(self.involutions))
        if len(self.involutions) != len(self.complex.dims):
            raise ValueError("need one involution per degree")

    @property
    def field(self):
        return self.complex.field

    @property
    def dims(self):
        return self.complex.dims

    def check(self) -> None:
        c = self.complex
        c.check()
        for n, t in enumerate(self.involutions):
            if t.shape != (c.dims[n], c.dims[n]):
                raise ComplexError("involution has wrong shape", n)
            if not (t @ t).is_identity():
                raise ComplexError("t o t != id", n)
        for k, d in enumerate(c.maps):
            src, dst = c._ends(k)
            if self.involutions[dst] @ d != d @ self.involutions[src]:
                raise ComplexError("involution is not a chain map", src)


def sparse_product(F: Field, a: dict, b: dict) -> dict:
    """Product of two ``{(i, j): value}`` matrices, zeros dropped."""
    rows_of_b: dict = {}
    for (k, j), v in b.items():
        rows_of_b.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), u in a.items():
        for j, v in rows_of_b.get(k, ()):
            out[i, j] = out.get((i, j), 0) + u * v
    return {key: v for key, v in out.items() if F(v)}


def _same(F: Field, a: dict, b: dict) -> bool:
    return all(F(a.get(key, 0)) == F(b.get(key, 0)) for key in a.keys() | b.keys())


def check_sparse(F: Field, dims: Sequence[int], maps: Sequence[dict], invs: Sequence[dict],
                 kind: str = "chain") -> None:
    """The checks of :meth:`InvolutiveChainComplex.check` on ``{(i, j): value}`` data.

    Dense products of the involutions are the bottleneck for words of length
    five or more, while these matrices have a handful of entries per column.
    """
    ends = (lambda k: (k + 1, k)) if kind == "chain" else (lambda k: (k, k + 1))
    for k in range(len(maps) - 1):
        first, second = (maps[k + 1], maps[k]) if kind == "chain" else (maps[k], maps[k + 1])
        if sparse_product(F, second, first):
            raise ComplexError("d o d != 0", k + 2 if kind == "chain" else k)
    for n, t in enumerate(invs):
        sq = sparse_product(F, t, t)
        if any(i != j for i, j in sq) or any(F(sq.get((i, i), 0)) != 1 for i in range(dims[n])):
            raise ComplexError("t o t != id", n)
    for k, d in enumerate(maps):
        src, dst = ends(k)
        if not _same(F, sparse_product(F, invs[dst], d), sparse_product(F, d, invs[src])):
            raise ComplexError("involution is not a chain map", src)


def involutive_from_sparse(F: Field, dims: Sequence[int], maps: Sequence[dict], invs: Sequence[dict],
                           kind: str = "chain") -> InvolutiveChainComplex:
    """Check sparse data with :func:`check_sparse`, then build the dense complex."""
    check_sparse(F, dims, maps, invs, kind)
    ends = (lambda k: (k + 1, k)) if kind == "chain" else (lambda k: (k, k + 1))
    dense = []
    for k, d in enumerate(maps):
        src, dst = ends(k)
        dense.append(Matrix.from_sparse(F, dims[dst], dims[src], d))
    return InvolutiveChainComplex(
        ChainComplex(F, dims, dense, kind),
        [Matrix.from_sparse(F, dims[n], dims[n], t) for n, t in enumerate(invs)],
    )


def homology_dims(c: ChainComplex, check: bool = True) -> list[int]:
    """(Co)homology dimensions in degrees ``0..N-1``."""
    if check:
        c.check()
    rk = {}
    for k, m in enumerate(c.maps):
        rk[c._ends(k)[0]] = rank(m)  # keyed by source degree
    out = []
    for n in range(c.top):
        incoming = n + 1 if c.kind == "chain" else n - 1
        out.append(c.dims[n] - rk.get(n, 0) - rk.get(incoming, 0))
    return out


def euler_characteristic(values: Sequence[int]) -> int:
    return sum((-1) ** n * v for n, v in enumerate(values))


def coinvariants_complex(ic: InvolutiveChainComplex) -> ChainComplex:
    """Degreewise ``coker(t_n - 1)`` with the induced differential."""
    c = ic.complex
    F = c.field
    data = []
    for n, t in enumerate(ic.involutions):
        data.append(quotient_data(t - Matrix.identity(F, c.dims[n])))
    maps = []
    for k, d in enumerate(c.maps):
        src, dst = c._ends(k)
        free_src, _ = data[src]
        _, q_dst = data[dst]
        maps.append(q_dst @ d.submatrix(None, free_src))
    out = ChainComplex(F, [len(f) for f, _ in data], maps, c.kind)
    out.check()
    return out


def invariants_complex(ic: InvolutiveChainComplex) -> ChainComplex:
    """Degreewise ``ker(t_n - 1)`` with the restricted differential."""
    c = ic.complex
    F = c.field
    data = [kernel_with_free(t - Matrix.identity(F, c.dims[n])) for n, t in enumerate(ic.involutions)]
    maps = []
    for k, d in enumerate(c.maps):
        src, dst = c._ends(k)
        K_src, _ = data[src]
        _, free_dst = data[dst]
        # the kernel basis is the identity on its free coordinates
        maps.append((d @ K_src).submatrix(free_dst, None))
    out = ChainComplex(F, [K.ncols for K, _ in data], maps, c.kind)
    out.check()
    return out


def dualize(c: ChainComplex) -> ChainComplex:
    """Linear dual: transpose every differential and flip chain/cochain."""
    return ChainComplex(c.field, c.dims, [m.T for m in c.maps], "cochain" if c.kind == "chain" else "chain")


def induced_action(ic: InvolutiveChainComplex, n: int) -> Matrix:
    """Matrix of the involution on ``H_n`` (or ``H^n``) in a chosen basis."""
    c = ic.complex
    if not 0 <= n < c.top:
        raise ValueError(f"degree {n} outside the reliable range 0..{c.top - 1}")
    F = c.field
    Z = kernel_basis(c.differential(n))
    B = c.incoming(n)
    if B.ncols == 0 or Z.ncols == 0:
        W, h = Z, Z.ncols
    else:
        _, piv = rref(hstack([B, Z]))
        b_cols = [j for j in piv if j < B.ncols]
        z_cols = [j - B.ncols for j in piv if j >= B.ncols]
        W = hstack([B.submatrix(None, b_cols), Z.submatrix(None, z_cols)])
        h = len(z_cols)
    if h == 0:
        return Matrix.zeros(F, 0, 0)
    reps = W.submatrix(None, range(W.ncols - h, W.ncols))
    X = solve(W, ic.involutions[n] @ reps)
    return X.submatrix(range(W.ncols - h, W.ncols), None)


def homology_split(ic: InvolutiveChainComplex, n: int) -> dict:
    """Dimensions attached to the induced involution ``T`` on ``H_n``.

    ``coinvariants`` is ``dim coker(T - 1)``, ``invariants`` is
    ``dim ker(T - 1)`` and ``anti_invariants`` is ``dim ker(T + 1)``.
    """
    T = induced_action(ic, n)
    h = T.nrows
    I = Matrix.identity(T.field, h)
    return {
        "dim": h,
        "coinvariants": h - rank(T - I),
        "invariants": h - rank(T - I),
        "anti_invariants": h - rank(T + I),
    }
