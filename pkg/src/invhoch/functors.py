"""Center, abelianization, tensor and hom functors for involutive bimodules.

Every construction returns explicit bases so that equalities downstream are
witnessed by matrices, not only by dimension counts.

Tensor coordinates: ``m_p (x) n_q`` sits at index ``p * dim N + q``.
Hom coordinates: a map ``F: M -> N`` is stored row-major, entry ``F[i, j]``
at index ``i * dim M + j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra_core import InvolutiveBimodule, IVectSpace, ValidationReport, validate_bimodule
from .exact_linalg import Field, Matrix, hstack, image_basis, kernel_basis, quotient_data, rank, solve, vstack

__all__ = [
    "SubquotientDescription",
    "HomSpace",
    "ProjectivityCertificate",
    "center",
    "abelianization",
    "involutive_center",
    "involutive_abelianization",
    "tensor_over_algebra",
    "tensor_over_algebra_coinvariants",
    "tensor_over_enveloping",
    "tensor_over_ienv",
    "tensor_z2",
    "tensor_z2_data",
    "hom",
    "ihom",
    "is_projective_ivect",
    "adjunction_check",
    "AdjunctionReport",
    "fixed_subspace",
    "intersection_dim",
    "sum_dim",
]


@dataclass(frozen=True, eq=False)
class SubquotientDescription:
    """A subspace or quotient of a coordinate space ``k^ambient``.

    For a subspace, ``basis`` columns span it.  For a quotient, ``basis``
    columns are representatives (standard vectors) of a basis of the
    quotient, ``relations`` spans the killed subspace and ``projection``
    maps ambient coordinates to quotient coordinates.  ``star`` is the
    induced involution when there is one.
    """

    ambient: int
    basis: Matrix
    kind: str
    relations: Matrix | None = None
    projection: Matrix | None = None
    star: Matrix | None = None

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def field(self) -> Field:
        return self.basis.field

    def ivect(self) -> IVectSpace:
        if self.star is None:
            raise ValueError("this subquotient carries no involution")
        return IVectSpace(self.field, self.star)


def _subspace(K: Matrix, t: Matrix | None = None) -> SubquotientDescription:
    star = None
    if t is not None:
        star = solve(K, t @ K) if K.ncols else Matrix.zeros(K.field, 0, 0)
        if star is None:
            raise ValueError("subspace is not stable under the involution")
    return SubquotientDescription(K.nrows, K, "subspace", star=star)


def _quotient(U: Matrix, t: Matrix | None = None) -> SubquotientDescription:
    """``k^c / im(U)``; ``t`` must preserve ``im(U)`` if given."""
    F, c = U.field, U.nrows
    free, q = quotient_data(U)
    reps = Matrix.from_sparse(F, c, len(free), {(j, a): 1 for a, j in enumerate(free)})
    star = None
    if t is not None:
        if U.ncols and rank(hstack([U, t @ U])) != rank(U):
            raise ValueError("killed subspace is not stable under the involution")
        star = q @ t @ reps
    return SubquotientDescription(c, reps, "quotient", image_basis(U), q, star)


def _commutator_rows(M: InvolutiveBimodule) -> Matrix:
    """Stacked ``L_a - R_a``; its kernel is the center."""
    F, m = M.field, M.dim
    if M.algebra.dim == 0:
        return Matrix.zeros(F, 0, m)
    return vstack([l - r for l, r in zip(M.left, M.right)])


def _commutator_span(M: InvolutiveBimodule) -> Matrix:
    """Columns spanning ``[A, M] = span{a m - m a}``."""
    return hstack([l - r for l, r in zip(M.left, M.right)]) if M.algebra.dim else Matrix.zeros(M.field, M.dim, 0)


def center(M: InvolutiveBimodule) -> SubquotientDescription:
    """``Z(M) = {m : a m = m a for all a}``, with the restricted involution."""
    return _subspace(kernel_basis(_commutator_rows(M)), M.star)


def abelianization(M: InvolutiveBimodule) -> SubquotientDescription:
    """``M / [A, M]``."""
    return _quotient(_commutator_span(M), M.star)


def fixed_subspace(t: Matrix) -> Matrix:
    return kernel_basis(t - Matrix.identity(t.field, t.nrows))


def involutive_center(M: InvolutiveBimodule) -> SubquotientDescription:
    """``iZ(M)``: central and star-fixed elements, solved as one linear system."""
    t = M.star
    rows = vstack([_commutator_rows(M), t - Matrix.identity(M.field, M.dim)])
    return _subspace(kernel_basis(rows), t)


def involutive_abelianization(M: InvolutiveBimodule) -> SubquotientDescription:
    """``iAb(M) = M / ([A, M] + im(t - 1))``."""
    t = M.star
    U = hstack([_commutator_span(M), t - Matrix.identity(M.field, M.dim)])
    return _quotient(U, t)


def intersection_dim(U: Matrix, V: Matrix) -> int:
    """``dim(col U  cap  col V)`` via ``dim U + dim V - dim(U + V)``."""
    return rank(U) + rank(V) - sum_dim(U, V)


def sum_dim(U: Matrix, V: Matrix) -> int:
    return rank(hstack([U, V]))


def _same_algebra(M: InvolutiveBimodule, N: InvolutiveBimodule):
    if M.algebra is not N.algebra and (M.algebra.mul != N.algebra.mul or M.field != N.field):
        raise ValueError("bimodules over different algebras")


def _kron_id(X: Matrix, n: int) -> Matrix:
    return X.kron(Matrix.identity(X.field, n))


def _id_kron(m: int, Y: Matrix) -> Matrix:
    return Matrix.identity(Y.field, m).kron(Y)


def _balanced_relations(M, N, cyclic: bool) -> Matrix:
    """Columns spanning ``(m a) (x) n - m (x) (a n)``, plus ``(a m) (x) n - m (x) (n a)`` if cyclic."""
    m, n = M.dim, N.dim
    cols = []
    for a in range(M.algebra.dim):
        cols.append(_kron_id(M.right[a], n) - _id_kron(m, N.left[a]))
        if cyclic:
            cols.append(_kron_id(M.left[a], n) - _id_kron(m, N.right[a]))
    return hstack(cols) if cols else Matrix.zeros(M.field, m * n, 0)


def tensor_over_algebra(M: InvolutiveBimodule, N: InvolutiveBimodule) -> SubquotientDescription:
    """``M (x)_A N`` as a vector space.

    Only the inner actions are balanced, so ``m (x) n -> m^* (x) n^*`` does
    not descend in general: no involution is attached.
    """
    _same_algebra(M, N)
    return _quotient(_balanced_relations(M, N, cyclic=False))


def tensor_over_algebra_coinvariants(M: InvolutiveBimodule, N: InvolutiveBimodule) -> SubquotientDescription:
    """Coinvariants of ``m (x) n -> m^* (x) n^*`` on ``M (x)_A N``.

    The action is given on representatives, so the coinvariants are the
    coequalizer of ``x -> [x]`` and ``x -> [tau x]`` out of ``M (x)_k N``:
    the quotient of ``M (x)_k N`` by the balancing relations together with
    ``x - tau x``.  It exists whether or not ``tau`` descends to ``M (x)_A N``.
    """
    _same_algebra(M, N)
    tau = M.star.kron(N.star)
    U = hstack([_balanced_relations(M, N, cyclic=False), tau - Matrix.identity(M.field, M.dim * N.dim)])
    return _quotient(U)


def tensor_over_enveloping(M: InvolutiveBimodule, N: InvolutiveBimodule) -> SubquotientDescription:
    """``M (x)_{A^e} N``: both actions balanced, with ``m (x) n -> m^* (x) n^*``."""
    _same_algebra(M, N)
    return _quotient(_balanced_relations(M, N, cyclic=True), M.star.kron(N.star))


def tensor_over_ienv(M: InvolutiveBimodule, N: InvolutiveBimodule) -> SubquotientDescription:
    """``M (x)_{A^ie} N``: the ``A^e`` relations plus ``m^* (x) n - m (x) n^*``.

    Computed in one quotient of ``M (x)_k N``, independently of the
    coinvariants of :func:`tensor_over_enveloping`.
    """
    _same_algebra(M, N)
    swap = _kron_id(M.star, N.dim) - _id_kron(M.dim, N.star)
    U = hstack([_balanced_relations(M, N, cyclic=True), swap])
    return _quotient(U, M.star.kron(N.star))


def tensor_z2_data(M: InvolutiveBimodule, V: IVectSpace) -> SubquotientDescription:
    """``M (x)_k V`` modulo the sub-bimodule generated by ``m^* (x) v - m (x) v^*``.

    The plain span of those elements is not closed under the actions, so the
    generated sub-bimodule is used.  The involution is ``m (x) v -> m^* (x) v``.
    """
    if M.field != V.field:
        raise ValueError("field mismatch")
    m, d = M.dim, V.dim
    raw = _kron_id(M.star, d) - _id_kron(m, V.star)
    gens = []
    for a, b in itertools.product(range(M.algebra.dim), repeat=2):
        gens.append(_kron_id(M.left[a] @ M.right[b], d) @ raw)
    U = hstack(gens) if gens else raw
    return _quotient(U, _kron_id(M.star, d))


def tensor_z2(M: InvolutiveBimodule, V: IVectSpace) -> InvolutiveBimodule:
    """``M (x)_{Z/2} V`` as an involutive bimodule with actions induced from ``M``."""
    Q = tensor_z2_data(M, V)
    d = V.dim
    q, reps = Q.projection, Q.basis
    left = [q @ _kron_id(x, d) @ reps for x in M.left]
    right = [q @ _kron_id(x, d) @ reps for x in M.right]
    return InvolutiveBimodule(M.algebra, left, right, Q.star, name=f"{M.name} (x)_Z/2 V")


@dataclass(frozen=True, eq=False)
class HomSpace:
    """A space of linear maps ``k^src -> k^dst`` given by a basis of vectorized maps."""

    src: int
    dst: int
    basis: Matrix
    star: Matrix

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def maps(self) -> list[Matrix]:
        F = self.basis.field
        return [Matrix(F, self.dst, self.src, self.basis.col(c)) for c in range(self.dim)]

    def ivect(self) -> IVectSpace:
        return IVectSpace(self.basis.field, self.star)


def _conjugation(X: Matrix, Y: Matrix) -> Matrix:
    """Matrix of ``F -> X F Y`` on row-major vectorized ``F``."""
    return X.kron(Y.T)


def _hom_constraints(M: InvolutiveBimodule, N: InvolutiveBimodule, involutive: bool) -> Matrix:
    F, m, n = M.field, M.dim, N.dim
    Im, In = Matrix.identity(F, m), Matrix.identity(F, n)
    rows = []
    for a in range(M.algebra.dim):
        rows.append(_conjugation(In, M.left[a]) - _conjugation(N.left[a], Im))
        rows.append(_conjugation(In, M.right[a]) - _conjugation(N.right[a], Im))
    if involutive:
        rows.append(_conjugation(In, M.star) - _conjugation(N.star, Im))
    return vstack(rows) if rows else Matrix.zeros(F, 0, m * n)


def _hom_space(M, N, involutive: bool) -> HomSpace:
    _same_algebra(M, N)
    K = kernel_basis(_hom_constraints(M, N, involutive))
    # f -> t' f t preserves bimodule maps
    conj = _conjugation(N.star, M.star)
    star = solve(K, conj @ K) if K.ncols else Matrix.zeros(M.field, 0, 0)
    return HomSpace(M.dim, N.dim, K, star)


def hom(M: InvolutiveBimodule, N: InvolutiveBimodule) -> HomSpace:
    """Bimodule maps ``M -> N`` with the involution ``f -> t_N f t_M``."""
    return _hom_space(M, N, involutive=False)


def ihom(M: InvolutiveBimodule, N: InvolutiveBimodule) -> HomSpace:
    """Involutive bimodule maps: the fixed points of :func:`hom`.

    On this subspace ``f -> t_N f t_M`` is the identity, so both readings
    ``f(m)^*`` and ``f(m^*)`` of the involution agree.
    """
    return _hom_space(M, N, involutive=True)


@dataclass(frozen=True)
class ProjectivityCertificate:
    """Outcome of :func:`is_projective_ivect` together with the rank computation."""

    projective: bool
    characteristic: int
    dim: int
    rank_t_minus_1: int | None
    reason: str

    def __bool__(self):
        return self.projective


def is_projective_ivect(V: IVectSpace) -> ProjectivityCertificate:
    """Projectivity of ``V`` as a ``k[Z/2]``-module.

    Away from characteristic 2 every representation is projective (Maschke).
    In characteristic 2, ``V`` is projective iff it is free, iff
    ``rank(t - 1) = dim V / 2``; there ``t - 1 = t + 1``.
    """
    p, d = V.field.characteristic(), V.dim
    if p != 2:
        return ProjectivityCertificate(True, p, d, None, "characteristic is not 2 (Maschke)")
    if d % 2:
        return ProjectivityCertificate(False, p, d, None, "odd dimension in characteristic 2")
    r = rank(V.star - Matrix.identity(V.field, d))
    ok = 2 * r == d
    why = f"rank(t - 1) = {r} {'=' if ok else '!='} dim/2 = {d // 2}"
    return ProjectivityCertificate(ok, p, d, r, why)


@dataclass
class AdjunctionReport:
    lhs_dim: int
    rhs_dim: int
    checks: ValidationReport = dc_field(default_factory=lambda: ValidationReport("adjunction"))

    @property
    def ok(self) -> bool:
        return self.lhs_dim == self.rhs_dim and self.checks.ok


def _adjoint_constraints(M: InvolutiveBimodule, V: IVectSpace, L: InvolutiveBimodule) -> Matrix:
    """Linear conditions on ``g: V -> Hom_k(M, L)``, stored as blocks ``g(v_0), g(v_1), ...``.

    ``g(v)`` must be an involutive bimodule map and ``g(v^*) = g(v) o t_M``.
    """
    F, d = M.field, V.dim
    per = _hom_constraints(M, L, involutive=True)
    size = M.dim * L.dim
    rows = [Matrix.identity(F, d).kron(per)]
    # block v of the condition: sum_w V*[w, v] g(w) - g(v) t_M = 0
    precompose = _conjugation(Matrix.identity(F, L.dim), M.star)
    rows.append(V.star.T.kron(Matrix.identity(F, size)) - Matrix.identity(F, d).kron(precompose))
    return vstack(rows)


def adjunction_check(M: InvolutiveBimodule, V: IVectSpace, L: InvolutiveBimodule) -> AdjunctionReport:
    """Compare ``ihom(M (x)_{Z/2} V, L)`` with involutive maps ``V -> ihom(M, L)``.

    Besides the dimension count this verifies on a basis that
    ``Phi(f)(v)(m) = f([m (x) v])`` lands in the right-hand side and is
    injective, that the unit ``v -> (m -> [m (x) v])`` is ``Phi(id)``, and
    that ``f`` is recovered from ``Phi(f)``.
    """
    Q = tensor_z2_data(M, V)
    QM = tensor_z2(M, V)
    F, d, m, l = M.field, V.dim, M.dim, L.dim
    lhs = ihom(QM, L)
    G = kernel_basis(_adjoint_constraints(M, V, L))
    rep = AdjunctionReport(lhs.dim, G.ncols)
    rep.checks.add("source is an involutive bimodule", None if validate_bimodule(QM).ok else ("tensor_z2",))

    def phi(f: Matrix, target_dim: int) -> list:
        ft = f @ Q.projection  # f on M (x) V
        out = []
        for v in range(d):
            for i in range(target_dim):
                out.extend(ft[i, p * d + v] for p in range(m))
        return out

    constraints = _adjoint_constraints(M, V, L)
    images = [phi(f, l) for f in lhs.maps()]
    in_rhs = all((constraints @ Matrix.column(F, g)).is_zero() for g in images)
    rep.checks.add("Phi(f) satisfies the adjoint conditions", None if in_rhs else ("Phi",))
    inj = rank(Matrix.from_columns(F, images, d * m * l)) == lhs.dim if images else True
    rep.checks.add("Phi is injective", None if inj else ("Phi",))

    # f is recovered from Phi(f): f o q is read off Phi(f), and q has a right inverse
    recovered = True
    for f, g in zip(lhs.maps(), images):
        ft = Matrix.from_sparse(F, l, m * d, {
            (i, p * d + v): g[(v * l + i) * m + p] for v in range(d) for i in range(l) for p in range(m)
        })
        if ft @ Q.basis != f:
            recovered = False
            break
    rep.checks.add("f is recovered from Phi(f)", None if recovered else ("Psi",))

    eta = phi(Matrix.identity(F, Q.dim), Q.dim)
    unit_ok = (_adjoint_constraints(M, V, QM) @ Matrix.column(F, eta)).is_zero() if eta else True
    rep.checks.add("unit v -> [- (x) v] is involutive", None if unit_ok else ("eta",))
    return rep
