"""Standard involutive algebras used throughout the tests and demos."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra_core import InvolutiveAlgebra, InvolutiveBimodule, IVectSpace, regular_bimodule
from .exact_linalg import Field, Matrix

__all__ = [
    "Fixture",
    "ground_field",
    "group_algebra",
    "cyclic_group_algebra",
    "symmetric_group_algebra",
    "dual_numbers",
    "matrix_algebra",
    "truncated_tensor_algebra",
    "product_swap",
    "fixtures",
    "skipped_fixtures",
    "fixture",
]


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    algebra: InvolutiveAlgebra
    bimodule: InvolutiveBimodule | None = None
    note: str = ""

    @property
    def module(self) -> InvolutiveBimodule:
        return self.bimodule if self.bimodule is not None else regular_bimodule(self.algebra)


def _zeros3(n):
    return [[[0] * n for _ in range(n)] for _ in range(n)]


def ground_field(F: Field) -> InvolutiveAlgebra:
    return InvolutiveAlgebra(F, [[[1]]], [1], Matrix.identity(F, 1), ("1",), name="k")


def group_algebra(F: Field, elements, op, inverse, labels=None, name="") -> InvolutiveAlgebra:
    """``k[G]`` with the involution ``g -> g^{-1}``; the identity must come first."""
    elements = list(elements)
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    mul = _zeros3(n)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            mul[i][j][index[op(g, h)]] = 1
    star = Matrix.from_sparse(F, n, n, {(index[inverse(g)], i): 1 for i, g in enumerate(elements)})
    unit = [1] + [0] * (n - 1)
    labels = labels or [str(g) for g in elements]
    return InvolutiveAlgebra(F, mul, unit, star, tuple(labels), name=name)


def cyclic_group_algebra(F: Field, order: int) -> InvolutiveAlgebra:
    labels = ["e"] + [f"g^{i}" if i > 1 else "g" for i in range(1, order)]
    return group_algebra(F, range(order), lambda a, b: (a + b) % order,
                         lambda a: (-a) % order, labels, name=f"k[Z/{order}]")


def symmetric_group_algebra(F: Field, n: int = 3) -> InvolutiveAlgebra:
    perms = sorted(itertools.permutations(range(n)))  # identity is first
    compose = lambda p, q: tuple(p[q[i]] for i in range(n))
    inverse = lambda p: tuple(sorted(range(n), key=lambda i: p[i]))
    labels = ["".join(map(str, p)) for p in perms]
    return group_algebra(F, perms, compose, inverse, labels, name=f"k[S{n}]")


def dual_numbers(F: Field, sign: int = 1) -> InvolutiveAlgebra:
    """``k[x]/x^2`` with ``x^* = sign * x``."""
    mul = _zeros3(2)
    mul[0][0][0] = mul[0][1][1] = mul[1][0][1] = 1
    star = Matrix.from_rows(F, [[1, 0], [0, sign]])
    name = "dual" if sign == 1 else "dual_anti"
    return InvolutiveAlgebra(F, mul, [1, 0], star, ("1", "x"), name=name)


def matrix_algebra(F: Field, n: int = 2) -> InvolutiveAlgebra:
    """``M_n(k)`` with transpose; basis ``E_ab`` ordered lexicographically."""
    d = n * n
    mul = _zeros3(d)
    for a, b, c, e in itertools.product(range(n), repeat=4):
        if b == c:
            mul[a * n + b][c * n + e][a * n + e] = 1
    star = Matrix.from_sparse(F, d, d, {(b * n + a, a * n + b): 1 for a in range(n) for b in range(n)})
    unit = [1 if a == b else 0 for a in range(n) for b in range(n)]
    labels = [f"E{a + 1}{b + 1}" for a in range(n) for b in range(n)]
    return InvolutiveAlgebra(F, mul, unit, star, tuple(labels), name=f"M{n}_transpose")


def truncated_tensor_algebra(V: IVectSpace, max_weight: int = 2, name: str = "") -> InvolutiveAlgebra:
    """``T(V)`` modulo words longer than ``max_weight``, with the reversal involution."""
    F, d = V.field, V.dim
    words = [w for k in range(max_weight + 1) for w in itertools.product(range(d), repeat=k)]
    index = {w: i for i, w in enumerate(words)}
    n = len(words)
    mul = _zeros3(n)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            if len(u) + len(v) <= max_weight:
                mul[i][j][index[u + v]] = 1
    vstar = V.star.nonzero()
    vcols = [[(r, c) for (r, cc), c in vstar.items() if cc == col] for col in range(d)]
    entries = {}
    for i, w in enumerate(words):
        # (v_1...v_k)^* = v_k^* ... v_1^*
        for combo in itertools.product(*(vcols[x] for x in reversed(w))):
            coef = F.one
            for _, c in combo:
                coef *= c
            key = (index[tuple(r for r, _ in combo)], i)
            entries[key] = entries.get(key, 0) + coef
    star = Matrix.from_sparse(F, n, n, entries)
    labels = ["1" if not w else "".join(f"v{x}" for x in w) for w in words]
    return InvolutiveAlgebra(F, mul, [1] + [0] * (n - 1), star, tuple(labels),
                             name=name or f"T(V)/w>{max_weight}")


def product_swap(F: Field) -> InvolutiveAlgebra:
    """``k x k`` with the involution exchanging the two factors."""
    mul = _zeros3(2)
    mul[0][0][0] = mul[1][1][1] = 1
    star = Matrix.from_rows(F, [[0, 1], [1, 0]])
    return InvolutiveAlgebra(F, mul, [1, 1], star, ("p1", "p2"), name="kxk_swap")


_BUILDERS = {
    "k": ground_field,
    "k_Z2": lambda F: cyclic_group_algebra(F, 2),
    "k_Z3": lambda F: cyclic_group_algebra(F, 3),
    "k_S3": symmetric_group_algebra,
    "dual": lambda F: dual_numbers(F, 1),
    "dual_anti": lambda F: dual_numbers(F, -1),
    "M2_transpose": lambda F: matrix_algebra(F, 2),
    "tensor_trunc": lambda F: truncated_tensor_algebra(IVectSpace.trivial(F), 2, "tensor_trunc"),
    "tensor_trunc_anti": lambda F: truncated_tensor_algebra(IVectSpace.sign(F), 2, "tensor_trunc_anti"),
    "kxk_swap": product_swap,
}

_CHAR2_DUPLICATES = {
    "dual_anti": "x^* = -x coincides with x^* = x in characteristic 2 (duplicate of 'dual')",
    "tensor_trunc_anti": "v^* = -v coincides with v^* = v in characteristic 2 (duplicate of 'tensor_trunc')",
}


def skipped_fixtures(F: Field) -> dict[str, str]:
    """Fixtures unavailable over ``F`` together with the reason."""
    return dict(_CHAR2_DUPLICATES) if F.characteristic() == 2 else {}


def fixture(name: str, F: Field) -> Fixture:
    skipped = skipped_fixtures(F)
    if name in skipped:
        raise ValueError(f"fixture {name!r} unavailable over {F}: {skipped[name]}")
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(_BUILDERS)}") from None
    A = build(F)
    object.__setattr__(A, "name", name)
    return Fixture(name, A)


def fixtures(F: Field, max_dim: int | None = None) -> dict[str, Fixture]:
    """All fixtures available over ``F``, optionally capped by algebra dimension."""
    out = {}
    for name in _BUILDERS:
        if name in skipped_fixtures(F):
            continue
        fx = fixture(name, F)
        if max_dim is None or fx.algebra.dim <= max_dim:
            out[name] = fx
    return out
