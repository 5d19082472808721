"""Free resolutions over a finite-dimensional algebra, and Tor/Ext from them.

This module is deliberately independent of the bar complex: it knows only
an algebra ``R`` (structure constants) and modules given by action
matrices.  It is the ground truth the Hochschild complexes are checked
against.

A free left module ``R^k`` has linear coordinates ``(i, s) -> i * dim R + s``
for ``b_s e_i``.  A map ``R^k -> R^k'`` of left modules is determined by
the images ``e_i -> sum_l x[i][l] e'_l`` with ``x[i][l]`` in ``R``; it acts
by right multiplication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra_core import InvolutiveAlgebra, InvolutiveBimodule, regular_bimodule
from .complexes import ChainComplex, homology_dims
from .enveloping import (
    FiniteDimAlgebra,
    ModulePresentation,
    bimodule_to_enveloping_module,
    bimodule_to_left_module,
    bimodule_to_right_module,
    enveloping,
    involutive_enveloping,
)
from .exact_linalg import Matrix, hstack, image_basis, kernel_basis, rank, rref, vstack

__all__ = [
    "FreeResolution",
    "ResolutionCapError",
    "DEFAULT_MAX_RANK",
    "free_resolution",
    "tor_dims",
    "ext_dims",
    "tor_complex",
    "ext_complex",
    "oracle_dims",
]

DEFAULT_MAX_RANK = 4096


class ResolutionCapError(RuntimeError):
    def __init__(self, stage: int, rank: int, cap: int):
        super().__init__(f"free resolution stage {stage} needs rank {rank} > cap {cap}")
        self.stage = stage


def _right_mult(R: FiniteDimAlgebra, x) -> Matrix:
    """Matrix of ``r -> r x`` on ``R``."""
    d = R.dim
    F = R.field
    entries: dict = {}
    P = R.products
    for t, c in enumerate(x):
        if c:
            for s in range(d):
                for k, v in P[s][t]:
                    entries[k, s] = entries.get((k, s), 0) + c * v
    return Matrix.from_sparse(F, d, d, entries)


@dataclass(frozen=True, eq=False)
class FreeResolution:
    """``... -> R^{k_1} -> R^{k_0} -> M -> 0``.

    ``generators`` holds the images of ``e_i in R^{k_0}`` in ``M``;
    ``maps[n]`` is the coefficient table ``x[i][l]`` of ``R^{k_{n+1}} -> R^{k_n}``.
    """

    algebra: FiniteDimAlgebra
    module: ModulePresentation
    ranks: tuple[int, ...]
    generators: tuple[tuple, ...]
    maps: tuple[tuple[tuple[tuple, ...], ...], ...]

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def augmentation_matrix(self) -> Matrix:
        return _augmentation(self.module, self.generators)

    def linear_map(self, n: int) -> Matrix:
        """Plain linear matrix of ``R^{k_{n+1}} -> R^{k_n}``."""
        return _linear(self.algebra, self.maps[n], self.ranks[n])

    def verify(self) -> None:
        """Exactness ``ker = im`` at every stage, checked by ranks."""
        d = self.algebra.dim
        prev = self.augmentation_matrix()
        if rank(prev) != self.module.dim:
            raise AssertionError("augmentation is not surjective")
        for n in range(self.length):
            D = self.linear_map(n)
            if not (prev @ D).is_zero():
                raise AssertionError(f"composite of consecutive maps is nonzero at stage {n}")
            if rank(D) != self.ranks[n] * d - rank(prev):
                raise AssertionError(f"not exact at stage {n}")
            prev = D


def _augmentation(M: ModulePresentation, generators) -> Matrix:
    cols = []
    for g in generators:
        gcol = Matrix.column(M.field, g)
        cols.extend(a @ gcol for a in M.act)
    if not cols:
        return Matrix.zeros(M.field, M.dim, 0)
    return hstack(cols)


def _linear(R: FiniteDimAlgebra, table, target_rank: int) -> Matrix:
    F, d = R.field, R.dim
    k = len(table)
    if k == 0 or target_rank == 0:
        return Matrix.zeros(F, target_rank * d, k * d)
    return hstack([vstack([_right_mult(R, table[i][l]) for l in range(target_rank)]) for i in range(k)])


def _pick_generators(R: FiniteDimAlgebra, K: Matrix, act, rng: random.Random) -> list[Matrix]:
    """Choose elements of ``col K`` generating it as a left submodule.

    ``act`` lists the matrices of the basis of ``R`` acting on the ambient
    space.  Each new generator is a random combination of the columns of
    ``K``, which generically generates a large submodule; if it adds
    nothing, the first column of ``K`` outside the current span is used
    instead, so the loop always terminates.
    """
    F = R.field
    target = K.ncols
    gens: list[Matrix] = []
    span = Matrix.zeros(F, K.nrows, 0)
    span_rank = 0
    while span_rank < target:
        z = K @ Matrix.column(F, [rng.randint(-3, 3) for _ in range(K.ncols)])
        new = hstack([span] + [a @ z for a in act])
        new_rank = rank(new)
        if new_rank == span_rank:
            _, piv = rref(hstack([span, K]))
            j = next(p - span.ncols for p in piv if p >= span.ncols)
            z = K.submatrix(None, [j])
            new = hstack([span] + [a @ z for a in act])
            new_rank = rank(new)
        gens.append(z)
        span = image_basis(new) if new.ncols > 2 * new.nrows else new
        span_rank = new_rank
    return gens


def free_resolution(R: FiniteDimAlgebra, M: ModulePresentation, N: int = 4,
                    max_rank: int = DEFAULT_MAX_RANK, seed: int | None = None,
                    verify: bool = True) -> FreeResolution:
    """Resolve the left module ``M`` through ``R^{k_N}``.

    At each stage (first ``M`` itself, then each kernel) generators are
    picked by :func:`_pick_generators`.  The resolution is not minimal;
    ``seed`` changes the random combinations, and Tor and Ext do not
    depend on it.
    """
    if M.side != "left":
        raise ValueError("free_resolution needs a left module")
    if M.algebra.dim != R.dim:
        raise ValueError("module is over a different algebra")
    rng = random.Random(0 if seed is None else seed)
    F, d = R.field, R.dim
    mgens = [tuple(g.col(0)) for g in _pick_generators(R, Matrix.identity(F, M.dim), M.act, rng)]
    ranks = [len(mgens)]
    prev = _augmentation(M, mgens)
    maps = []
    for n in range(N):
        K = kernel_basis(prev)
        k_prev = ranks[-1]
        I = Matrix.identity(F, k_prev)
        act = [I.kron(L) for L in R.left_matrices]
        gens = _pick_generators(R, K, act, rng) if K.ncols else []
        if len(gens) > max_rank:
            raise ResolutionCapError(n + 1, len(gens), max_rank)
        table = tuple(
            tuple(tuple(z[l * d + s, 0] for s in range(d)) for l in range(k_prev)) for z in gens
        )
        maps.append(table)
        ranks.append(len(gens))
        prev = _linear(R, table, k_prev)
    res = FreeResolution(R, M, tuple(ranks), tuple(mgens), tuple(maps))
    if verify:
        res.verify()
    return res


def tor_complex(Mright: ModulePresentation, res: FreeResolution) -> ChainComplex:
    """``Mright (x)_R F_*``; degree ``n`` is ``Mright^{k_n}`` with blocks ``m -> m x[i][l]``."""
    if Mright.side != "right":
        raise ValueError("Tor needs a right module on the left")
    F, m = Mright.field, Mright.dim
    maps = []
    for n, table in enumerate(res.maps):
        k_src, k_dst = res.ranks[n + 1], res.ranks[n]
        D = Matrix.zeros(F, k_dst * m, k_src * m)
        if k_src and k_dst:
            D = hstack([vstack([Mright.action(table[i][l]) for l in range(k_dst)]) for i in range(k_src)])
        maps.append(D)
    return ChainComplex(F, [k * m for k in res.ranks], maps, "chain")


def ext_complex(res: FreeResolution, Mleft: ModulePresentation) -> ChainComplex:
    """``Hom_R(F_*, Mleft)``; ``phi`` is stored as ``(phi(e_i))_i``."""
    if Mleft.side != "left":
        raise ValueError("Ext needs a left module")
    F, m = Mleft.field, Mleft.dim
    maps = []
    for n, table in enumerate(res.maps):
        k_src, k_dst = res.ranks[n], res.ranks[n + 1]
        D = Matrix.zeros(F, k_dst * m, k_src * m)
        if k_src and k_dst:
            D = vstack([hstack([Mleft.action(table[g][l]) for l in range(k_src)]) for g in range(k_dst)])
        maps.append(D)
    return ChainComplex(F, [k * m for k in res.ranks], maps, "cochain")


def tor_dims(Mright: ModulePresentation, res: FreeResolution) -> list[int]:
    return homology_dims(tor_complex(Mright, res))


def ext_dims(res: FreeResolution, Mleft: ModulePresentation) -> list[int]:
    return homology_dims(ext_complex(res, Mleft))


def oracle_dims(A: InvolutiveAlgebra, M: InvolutiveBimodule | None = None, N: int = 4,
                variant: str = "hh", seed: int | None = None) -> list[int]:
    """Tor/Ext over ``A^e`` (``hh``, ``cohh``) or ``A^ie`` (``ihh``, ``icohh``), degrees ``0..N-1``."""
    M = regular_bimodule(A) if M is None else M
    Areg = regular_bimodule(A)
    if variant in ("hh", "cohh"):
        R = enveloping(A)
        left = lambda X: bimodule_to_enveloping_module(X, "left", R)
        right = lambda X: bimodule_to_enveloping_module(X, "right", R)
    elif variant in ("ihh", "icohh"):
        R = involutive_enveloping(A)
        left = lambda X: bimodule_to_left_module(X, R)
        right = lambda X: bimodule_to_right_module(X, R)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if variant in ("hh", "ihh"):
        return tor_dims(right(Areg), free_resolution(R, left(M), N, seed=seed))
    return ext_dims(free_resolution(R, left(Areg), N, seed=seed), left(M))
