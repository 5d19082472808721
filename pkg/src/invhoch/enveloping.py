"""Enveloping algebras ``A^e``, ``A^ie`` and the bimodule/module dictionary.

Basis orderings (fixed, lexicographic):

* ``A^e``: ``(i, j) <-> e_i (x) e_j`` at index ``i*n + j``;
* ``A^ie``: ``(i, j, eps) <-> (e_i (x) e_j) (x) tau^eps`` at index ``2*(i*n + j) + eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra_core import InvolutiveAlgebra, InvolutiveBimodule, ValidationReport, _first_mismatch, structure_matrices
from .exact_linalg import Field, Matrix

__all__ = [
    "FiniteDimAlgebra",
    "ModulePresentation",
    "ModuleAxiomError",
    "enveloping",
    "involutive_enveloping",
    "validate_fd_algebra",
    "validate_module",
    "bimodule_to_left_module",
    "bimodule_to_right_module",
    "bimodule_to_enveloping_module",
    "module_to_bimodule",
    "ienv_index",
]


class ModuleAxiomError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(report.summary())
        self.report = report


@dataclass(frozen=True, eq=False)
class FiniteDimAlgebra:
    """An associative unital algebra without involution."""

    field: Field
    mul: tuple
    unit: tuple
    basis_labels: tuple[str, ...] = ()
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.mul)

    @cached_property
    def products(self) -> tuple:
        n = self.dim
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.mul[i][j]) if c) for j in range(n))
            for i in range(n)
        )

    @cached_property
    def left_matrices(self) -> tuple[Matrix, ...]:
        return structure_matrices(self.field, self.mul, "left")

    def multiply(self, x: Sequence, y: Sequence) -> list:
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in self.products[i][j]:
                            out[k] += a * b * c
        return [F(v) for v in out]


def validate_fd_algebra(R: FiniteDimAlgebra) -> ValidationReport:
    F, n = R.field, R.dim
    rep = ValidationReport(f"algebra {R.name or '?'}")
    L = R.left_matrices
    witness = None
    for i in range(n):
        for j in range(n):
            lhs = Matrix.zeros(F, n, n)
            for r, c in R.products[i][j]:
                lhs = lhs + L[r].scale(c)
            bad = _first_mismatch(lhs, L[i] @ L[j])
            if bad is not None:
                witness = (i, j, bad[1], bad[0])
                break
        if witness:
            break
    rep.add("associativity", witness)
    witness = None
    for j in range(n):
        ej = [F.one if t == j else F.zero for t in range(n)]
        if R.multiply(R.unit, ej) != ej or R.multiply(ej, R.unit) != ej:
            witness = (j,)
            break
    rep.add("unit", witness)
    return rep


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    """A module over a :class:`FiniteDimAlgebra` given by action matrices.

    ``act[i]`` is the matrix of ``m -> e_i . m`` (left) or ``m -> m . e_i``
    (right).
    """

    algebra: FiniteDimAlgebra
    act: tuple[Matrix, ...]
    side: str = "left"
    name: str = ""

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        object.__setattr__(self, "act", tuple(self.act))
        if len(self.act) != self.algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")

    @property
    def dim(self) -> int:
        return self.act[0].nrows if self.act else 0

    @property
    def field(self) -> Field:
        return self.algebra.field

    def action(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for c, a in zip(x, self.act):
            if c:
                out = out + a.scale(c)
        return out


def validate_module(P: ModulePresentation) -> ValidationReport:
    R, F, m = P.algebra, P.field, P.dim
    rep = ValidationReport(f"{P.side} module {P.name or '?'}")
    witness = None
    for i in range(R.dim):
        for j in range(R.dim):
            lhs = P.action(R.mul[i][j])
            rhs = P.act[i] @ P.act[j] if P.side == "left" else P.act[j] @ P.act[i]
            bad = _first_mismatch(lhs, rhs)
            if bad is not None:
                witness = (i, j) + bad
                break
        if witness:
            break
    rep.add("action is multiplicative", witness)
    rep.add("unit acts as identity", _first_mismatch(P.action(R.unit), Matrix.identity(F, m)))
    return rep


def enveloping(A: InvolutiveAlgebra) -> FiniteDimAlgebra:
    """``A^e = A (x) A^op``: ``(a (x) b)(c (x) d) = ac (x) db``."""
    F, n = A.field, A.dim
    N = n * n
    mul = [[[F.zero] * N for _ in range(N)] for _ in range(N)]
    P = A.products
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    row = mul[i * n + j][k * n + l]
                    for p, c1 in P[i][k]:
                        for q, c2 in P[l][j]:
                            row[p * n + q] += c1 * c2
    unit = [a * b for a in A.unit for b in A.unit]
    labels = tuple(f"{a}|{b}" for a in A.basis_labels for b in A.basis_labels)
    return FiniteDimAlgebra(F, _canon(F, mul), tuple(F(x) for x in unit), labels, f"{A.name}^e")


def ienv_index(n: int, i: int, j: int, eps: int) -> int:
    return 2 * (i * n + j) + eps


def _tau_terms(A: InvolutiveAlgebra, k: int, l: int):
    """``tau(e_k (x) e_l) = e_l^* (x) e_k^*`` as a list of ``((p, q), c)``."""
    S = A.star_columns
    return [((p, q), c1 * c2) for p, c1 in S[l] for q, c2 in S[k]]


def involutive_enveloping(A: InvolutiveAlgebra) -> FiniteDimAlgebra:
    """``A^ie = A^e (x) k[Z/2]`` with ``(x tau^e)(y tau^d) = (x tau^e(y)) tau^(e+d)``."""
    F, n = A.field, A.dim
    Ae = enveloping(A)
    Pe = Ae.products
    N = 2 * n * n
    mul = [[[F.zero] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            x = i * n + j
            for k in range(n):
                for l in range(n):
                    y = k * n + l
                    for eps in (0, 1):
                        ys = [(y, F.one)] if eps == 0 else [(p * n + q, c) for (p, q), c in _tau_terms(A, k, l)]
                        for delta in (0, 1):
                            row = mul[2 * x + eps][2 * y + delta]
                            e = (eps + delta) % 2
                            for y2, c in ys:
                                for z, c2 in Pe[x][y2]:
                                    row[2 * z + e] += c * c2
    unit = [F.zero] * N
    for idx, c in enumerate(Ae.unit):
        unit[2 * idx] = c
    labels = tuple(f"{lab}{'|t' if e else ''}" for lab in Ae.basis_labels for e in (0, 1))
    return FiniteDimAlgebra(F, _canon(F, mul), tuple(unit), labels, f"{A.name}^ie")


def _canon(F, mul):
    return tuple(tuple(tuple(F(x) for x in row) for row in plane) for plane in mul)


def bimodule_to_left_module(M: InvolutiveBimodule, R: FiniteDimAlgebra | None = None) -> ModulePresentation:
    """``(a (x) b) tau^eps`` acts by ``m -> a . t^eps(m) . b``."""
    A = M.algebra
    R = R or involutive_enveloping(A)
    n = A.dim
    acts = []
    for i in range(n):
        for j in range(n):
            base = M.left[i] @ M.right[j]
            acts += [base, base @ M.star]
    return ModulePresentation(R, acts, "left", name=M.name)


def bimodule_to_right_module(M: InvolutiveBimodule, R: FiniteDimAlgebra | None = None) -> ModulePresentation:
    """``m . ((a (x) b) tau^eps) = t^eps(b . m . a)``."""
    A = M.algebra
    R = R or involutive_enveloping(A)
    n = A.dim
    acts = []
    for i in range(n):
        for j in range(n):
            base = M.left[j] @ M.right[i]
            acts += [base, M.star @ base]
    return ModulePresentation(R, acts, "right", name=M.name)


def bimodule_to_enveloping_module(M: InvolutiveBimodule, side: str = "left",
                                  R: FiniteDimAlgebra | None = None) -> ModulePresentation:
    """The underlying bimodule as an ``A^e``-module (involution forgotten).

    Left: ``(a (x) b) . m = a m b``.  Right: ``m . (a (x) b) = b m a``.
    """
    A = M.algebra
    R = R or enveloping(A)
    n = A.dim
    if side == "left":
        acts = [M.left[i] @ M.right[j] for i in range(n) for j in range(n)]
    else:
        acts = [M.left[j] @ M.right[i] for i in range(n) for j in range(n)]
    return ModulePresentation(R, acts, side, name=M.name)


def module_to_bimodule(P: ModulePresentation, A: InvolutiveAlgebra, name: str = "") -> InvolutiveBimodule:
    """Inverse of :func:`bimodule_to_left_module`.

    Raises :class:`ModuleAxiomError` when ``P`` is not a left ``A^ie``-module.
    """
    if P.side != "left":
        raise ValueError("expected a left A^ie-module")
    n = A.dim
    if P.algebra.dim != 2 * n * n:
        raise ValueError("module is not over the involutive enveloping algebra of A")
    rep = validate_module(P)
    if not rep.ok:
        raise ModuleAxiomError(rep)
    F, u = A.field, A.unit

    def elem(terms):
        x = [F.zero] * P.algebra.dim
        for idx, c in terms:
            x[idx] += c
        return P.action(x)

    L = [elem((ienv_index(n, i, j, 0), u[j]) for j in range(n)) for i in range(n)]
    R = [elem((ienv_index(n, i, j, 0), u[i]) for i in range(n)) for j in range(n)]
    t = elem((ienv_index(n, i, j, 1), u[i] * u[j]) for i in range(n) for j in range(n))
    return InvolutiveBimodule(A, L, R, t, name=name or P.name)
