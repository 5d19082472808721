"""Involutive algebras, involutive bimodules and their axiom checks.

Conventions
-----------
* Structure constants: ``e_i * e_j = sum_k mul[i][j][k] e_k``.
* The unit is the coordinate vector ``unit``.
* The involution is a matrix ``star`` acting on coordinate columns, so
  ``e_i^*`` is column ``i`` of ``star``.
* A bimodule stores, for every basis element ``e_i`` of the algebra, the
  matrices ``left[i]`` (``m -> e_i . m``) and ``right[i]`` (``m -> m . e_i``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Sequence

from .exact_linalg import Field, Matrix, _from_raw, block_diag, hstack, vstack

__all__ = [
    "Check",
    "ValidationReport",
    "IVectSpace",
    "InvolutiveAlgebra",
    "InvolutiveBimodule",
    "validate_algebra",
    "validate_bimodule",
    "validate_ivect",
    "regular_bimodule",
    "structure_matrices",
]


@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class ValidationReport:
    subject: str
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, witness=None, detail: str = ""):
        self.checks.append(Check(name, witness is None, witness, detail))

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f"  witness={c.witness}" if c.witness is not None else ""
            lines.append(f"  [{mark}] {c.name}{extra}{'  ' + c.detail if c.detail else ''}")
        return "\n".join(lines)


def _first_mismatch(a: Matrix, b: Matrix):
    """Index of the first differing entry, or None."""
    if a == b:
        return None
    diff = (a - b).nonzero()
    return min(diff)


@dataclass(frozen=True, eq=False)
class IVectSpace:
    """A finite-dimensional vector space with an involution ``star``."""

    field: Field
    star: Matrix
    basis_labels: tuple[str, ...] | None = None

    @property
    def dim(self) -> int:
        return self.star.nrows

    @classmethod
    def trivial(cls, field: Field, dim: int = 1) -> "IVectSpace":
        return cls(field, Matrix.identity(field, dim))

    @classmethod
    def swap(cls, field: Field) -> "IVectSpace":
        return cls(field, Matrix.from_rows(field, [[0, 1], [1, 0]]))

    @classmethod
    def sign(cls, field: Field, dim: int = 1) -> "IVectSpace":
        return cls(field, Matrix.identity(field, dim).scale(-1))


def validate_ivect(V: IVectSpace) -> ValidationReport:
    rep = ValidationReport("involutive vector space")
    sq = V.star @ V.star
    rep.add("star is an involution", _first_mismatch(sq, Matrix.identity(V.field, V.dim)))
    return rep


@dataclass(frozen=True, eq=False)
class InvolutiveAlgebra:
    """A finite-dimensional associative unital algebra with an involution.

    ``mul``, ``unit`` and ``star`` are stored in canonical scalars of
    ``field``.  Construction checks only shapes; use :func:`validate_algebra`
    for the axioms.
    """

    field: Field
    mul: tuple
    unit: tuple
    star: Matrix
    basis_labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        F = self.field
        n = len(self.mul)
        mul = tuple(tuple(tuple(F(x) for x in row) for row in plane) for plane in self.mul)
        if any(len(plane) != n or any(len(row) != n for row in plane) for plane in mul):
            raise ValueError("structure constants must form an n x n x n array")
        if len(self.unit) != n:
            raise ValueError("unit vector has wrong length")
        if self.star.shape != (n, n) or self.star.field != F:
            raise ValueError("involution must be an n x n matrix over the same field")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "unit", tuple(F(x) for x in self.unit))
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i}" for i in range(n)))
        elif len(self.basis_labels) != n:
            raise ValueError("wrong number of basis labels")

    @property
    def dim(self) -> int:
        return len(self.mul)

    @cached_property
    def products(self) -> tuple:
        """Sparse table: ``products[i][j]`` lists ``(k, c)`` with ``c != 0``."""
        n = self.dim
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.mul[i][j]) if c) for j in range(n))
            for i in range(n)
        )

    @cached_property
    def star_columns(self) -> tuple:
        """Sparse images of the basis: ``star_columns[i]`` lists ``(j, c)``."""
        s = self.star.nonzero()
        cols = [[] for _ in range(self.dim)]
        for (j, i), c in sorted(s.items()):
            cols[i].append((j, c))
        return tuple(tuple(c) for c in cols)

    @cached_property
    def unit_terms(self) -> tuple:
        return tuple((i, c) for i, c in enumerate(self.unit) if c)

    @cached_property
    def left_matrices(self) -> tuple[Matrix, ...]:
        return structure_matrices(self.field, self.mul, "left")

    @cached_property
    def right_matrices(self) -> tuple[Matrix, ...]:
        return structure_matrices(self.field, self.mul, "right")

    def multiply(self, x: Sequence, y: Sequence) -> list:
        """Product of two coordinate vectors."""
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.products[i][j]:
                    out[k] += a * b * c
        return [F(v) for v in out]

    def apply_star(self, x: Sequence) -> list:
        return (self.star @ Matrix.column(self.field, list(x))).col(0)

    def ivect(self) -> IVectSpace:
        return IVectSpace(self.field, self.star, self.basis_labels)


def structure_matrices(F: Field, mul, side: str) -> tuple[Matrix, ...]:
    """Regular representation matrices from structure constants.

    ``side="left"`` gives ``x -> e_i x``; ``side="right"`` gives ``x -> x e_i``.
    """
    n = len(mul)
    out = []
    for i in range(n):
        entries = {}
        for j in range(n):
            row = mul[i][j] if side == "left" else mul[j][i]
            for k, c in enumerate(row):
                if c:
                    entries[k, j] = c
        out.append(Matrix.from_sparse(F, n, n, entries))
    return tuple(out)


@lru_cache(maxsize=None)
def _positions(shape: tuple, strides: tuple) -> tuple:
    return tuple(sum(i * d for i, d in zip(idx, strides)) for idx in itertools.product(*map(range, shape)))


def _first_differing(shape, lhs, lstrides, rhs, rstrides):
    """First index tuple (lexicographic over ``shape``) where the flat lists
    ``lhs`` and ``rhs``, addressed through per-axis strides, disagree."""
    a = [lhs[q] for q in _positions(shape, lstrides)]
    b = [rhs[q] for q in _positions(shape, rstrides)]
    if a == b:
        return None
    pos = next(p for p, (x, y) in enumerate(zip(a, b)) if x != y)
    idx = []
    for d in reversed(shape):
        pos, r = divmod(pos, d)
        idx.append(r)
    return tuple(reversed(idx))


def validate_algebra(A: InvolutiveAlgebra) -> ValidationReport:
    """Check every involutive-algebra axiom; never raises on axiom failure.

    Witness formats: associativity ``(i, j, k, l)`` names the coefficient of
    ``e_l`` in ``(e_i e_j) e_k - e_i (e_j e_k)``; unit ``(side, j, k)``;
    involution ``(row, col)`` of ``s^2 - 1``; anti-homomorphism ``(i, j, k)``
    names the coefficient of ``e_k``.
    """
    F, n = A.field, A.dim
    rep = ValidationReport(f"algebra {A.name or '?'}")
    n2 = n * n
    flat = [F._flint_scalar(x) for plane in A.mul for row in plane for x in row]
    # C[(i,j), r] = c_ij^r and C2[r, (k,l)] = c_rk^l hold the same numbers
    C = _from_raw(F, n2, n, flat)
    C2 = _from_raw(F, n, n2, flat)
    G = _from_raw(F, n, n2, [flat[(i * n + s) * n + l] for s in range(n) for i in range(n) for l in range(n)])
    left = (C @ C2).raw()   # [(i,j),(k,l)]: (e_i e_j) e_k
    right = (C @ G).raw()   # [(j,k),(i,l)]: e_i (e_j e_k)
    rep.add("associativity", _first_differing(
        (n, n, n, n), left, (n * n2, n2, n, 1), right, (n, n * n2, n2, 1)))

    u = Matrix.column(F, list(A.unit))
    ident = Matrix.identity(F, n).raw()
    witness = None
    # u C2 is [(j,k)]: coefficient of e_k in u e_j; u G is [(j,k)] for e_j u
    for side, got in (("left", (u.T @ C2).raw()), ("right", (u.T @ G).raw())):
        bad = _first_differing((n, n), got, (n, 1), ident, (n, 1))
        if bad is not None and (witness is None or bad < witness[1:]):
            witness = (side,) + bad
    rep.add("unit", witness)

    I = Matrix.identity(F, n)
    s = A.star
    rep.add("star is an involution", _first_mismatch(s @ s, I))

    Ct = C.T
    lhs = (s @ Ct).raw()            # [k,(i,j)]: (e_i e_j)^*
    rhs = (Ct @ s.kron(s)).raw()    # [k,(j,i)]: e_j^* e_i^*
    rep.add("anti-homomorphism (ab)* = b* a*", _first_differing(
        (n, n, n), lhs, (n, 1, n2), rhs, (1, n, n2)))

    bad = _first_differing((n,), (s @ u).raw(), (1,), u.raw(), (1,))
    rep.add("star fixes the unit", bad)
    return rep


@dataclass(frozen=True, eq=False)
class InvolutiveBimodule:
    """An involutive bimodule over an :class:`InvolutiveAlgebra`."""

    algebra: InvolutiveAlgebra
    left: tuple[Matrix, ...]
    right: tuple[Matrix, ...]
    star: Matrix
    name: str = ""

    def __post_init__(self):
        n, m = self.algebra.dim, self.star.nrows
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        if len(self.left) != n or len(self.right) != n:
            raise ValueError("need one action matrix per algebra basis element")
        for a in self.left + self.right + (self.star,):
            if a.shape != (m, m) or a.field != self.algebra.field:
                raise ValueError("action matrices must be m x m over the algebra's field")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.star.nrows

    def left_action(self, x: Sequence) -> Matrix:
        """Action matrix of the algebra element with coordinates ``x``."""
        return _combine(self.field, self.dim, self.left, x)

    def right_action(self, x: Sequence) -> Matrix:
        return _combine(self.field, self.dim, self.right, x)

    def ivect(self) -> IVectSpace:
        return IVectSpace(self.field, self.star)


def _combine(F: Field, m: int, mats, x) -> Matrix:
    out = Matrix.zeros(F, m, m)
    for c, a in zip(x, mats):
        if c:
            out = out + a.scale(c)
    return out


def validate_bimodule(M: InvolutiveBimodule) -> ValidationReport:
    """Check the involutive bimodule axioms.

    Besides ``(a m)^* = m^* a^*`` (as ``t L_a = R_{a^*} t``) this also checks
    the derived identity ``b (a m^*)^* = (a (b m)^*)^*`` as a redundant guard.
    Witnesses are the basis indices followed by the ``(row, col)`` entry.
    """
    A, F, m = M.algebra, M.field, M.dim
    n = A.dim
    rep = ValidationReport(f"bimodule {M.name or '?'}")
    I = Matrix.identity(F, m)
    L, R, t = M.left, M.right, M.star
    m2, nm = m * m, n * m
    if n == 0 or m == 0:
        for name in ("left action is multiplicative", "left unit acts as identity",
                     "right action is multiplicative", "right unit acts as identity",
                     "left and right actions commute", "star is an involution",
                     "(a m)* = m* a*", "b (a m*)* = (a (b m)*)*"):
            rep.add(name, None)
        return rep
    C = _from_raw(F, n * n, n, [F._flint_scalar(x) for plane in A.mul for row in plane for x in row])
    VL, HL, VR, HR = vstack(L), hstack(L), vstack(R), hstack(R)
    shape = (n, n, m, m)
    at_ij = (m * nm, m, nm, 1)   # [(i,a),(j,b)] addressed by (i, j, a, b)
    at_ji = (m, m * nm, nm, 1)   # [(j,a),(i,b)]

    def pair_check(name, combined, prod, swap):
        # combined[(i,j),(a,b)] against prod at [(i,a),(j,b)], or [(j,a),(i,b)] when swapped
        rep.add(name, _first_differing(shape, combined.raw(), (n * m2, m2, m, 1),
                                       prod.raw(), at_ji if swap else at_ij))

    def flat_rows(mats):
        return _from_raw(F, n, m2, [x for a in mats for x in a.raw()])

    pair_check("left action is multiplicative", C @ flat_rows(L), VL @ HL, False)
    rep.add("left unit acts as identity", _first_mismatch(M.left_action(A.unit), I))
    pair_check("right action is multiplicative", C @ flat_rows(R), VR @ HR, True)
    rep.add("right unit acts as identity", _first_mismatch(M.right_action(A.unit), I))
    rep.add("left and right actions commute", _first_differing(
        shape, (VL @ HR).raw(), at_ij, (VR @ HL).raw(), at_ji))
    rep.add("star is an involution", _first_mismatch(t @ t, I))
    scols = [A.star.col(i) for i in range(n)]
    witness = None
    for a in range(n):
        bad = _first_mismatch(t @ L[a], M.right_action(scols[a]) @ t)
        if bad is not None:
            witness = (a,) + bad
            break
    rep.add("(a m)* = m* a*", witness)
    # b (a m*)* = (a (b m)*)* reads L_b P_a = P_a L_b with P_a = t L_a t
    T = block_diag([t] * n)
    HP, VP = t @ HL @ T, T @ VL @ t
    # indexed by (a, b, x, y): L_b P_a at [(b,x),(a,y)], P_a L_b at [(a,x),(b,y)]
    rep.add("b (a m*)* = (a (b m)*)*", _first_differing(
        shape, (VL @ HP).raw(), at_ji, (VP @ HL).raw(), at_ij))
    return rep


def regular_bimodule(A: InvolutiveAlgebra) -> InvolutiveBimodule:
    return InvolutiveBimodule(A, A.left_matrices, A.right_matrices, A.star, name=f"{A.name} (regular)")
