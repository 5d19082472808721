"""Exact dense linear algebra over the rationals and prime fields.

Matrices are thin wrappers around python-flint's ``fmpq_mat`` (for Q) and
``nmod_mat`` (for F_p).  Scalars travel through the public API in canonical
form: :class:`fractions.Fraction` over Q, an ``int`` in ``range(p)`` over F_p.

Conventions used everywhere in the package:

* vectors are columns; a linear map ``V -> W`` is a ``dim W x dim V`` matrix;
* subspaces are described by matrices whose columns form a basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

__all__ = [
    "Field",
    "QQ",
    "GF",
    "FieldMismatchError",
    "Matrix",
    "rref",
    "rank",
    "kernel_basis",
    "kernel_with_free",
    "quotient_data",
    "image_basis",
    "solve",
    "hstack",
    "vstack",
    "block_diag",
]


class FieldMismatchError(ValueError):
    """Raised when matrices over different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: ``Field(0)`` is Q, ``Field(p)`` is F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rational(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def kind(self) -> str:
        return "rational" if self.p == 0 else "prime"

    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # -- scalars ---------------------------------------------------------

    def __call__(self, x) -> Fraction | int:
        """Coerce ``x`` (int, Fraction, flint scalar or string) to canonical form."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p == 0:
            if isinstance(x, flint.fmpq):
                return Fraction(int(x.p), int(x.q))
            if isinstance(x, flint.fmpz):
                return Fraction(int(x))
            return Fraction(x)
        if isinstance(x, flint.nmod):
            return int(x)
        if isinstance(x, (Fraction, flint.fmpq)):
            num, den = (x.numerator, x.denominator) if isinstance(x, Fraction) else (int(x.p), int(x.q))
            if den % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def parse(self, s: str) -> Fraction | int:
        s = s.strip()
        if self.p == 0:
            return Fraction(s)
        if "/" in s:
            return self(Fraction(s))
        return int(s) % self.p

    def format(self, x) -> str:
        x = self(x)
        if self.p == 0:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def _flint_scalar(self, x):
        if self.p == 0:
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            return x
        if isinstance(x, Fraction):
            return self(x)
        return x


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class Matrix:
    """An exact matrix over a :class:`Field`.

    Instances are treated as immutable values; every operation returns a new
    matrix.
    """

    __slots__ = ("field", "_m")

    def __init__(self, field: Field, rows: int, cols: int, entries: Iterable | None = None):
        self.field = field
        if entries is None:
            self._m = self._new(rows, cols)
            return
        flat = [field._flint_scalar(x) for x in entries]
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        if rows == 0 or cols == 0:
            self._m = self._new(rows, cols)
        elif field.p == 0:
            self._m = flint.fmpq_mat(rows, cols, flat)
        else:
            self._m = flint.nmod_mat(rows, cols, [int(x) % field.p for x in flat], field.p)

    def _new(self, rows, cols):
        if self.field.p == 0:
            return flint.fmpq_mat(rows, cols)
        return flint.nmod_mat(rows, cols, self.field.p)

    @classmethod
    def _wrap(cls, field: Field, m) -> "Matrix":
        out = cls.__new__(cls)
        out.field = field
        out._m = m
        return out

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls.from_sparse(field, n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, (field(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls.from_rows(field, [[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def from_sparse(cls, field: Field, rows: int, cols: int, entries: dict) -> "Matrix":
        """Build from a ``{(i, j): value}`` mapping; zero values are ignored."""
        out = cls(field, rows, cols)
        m = out._m
        if field.p == 0:
            for (i, j), v in entries.items():
                if v:
                    m[i, j] = field._flint_scalar(v) if isinstance(v, Fraction) else v
        else:
            for (i, j), v in entries.items():
                v = field(v)
                if v:
                    m[i, j] = v
        return out

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "Matrix":
        return cls(field, len(values), 1, (field(v) for v in values))

    # -- basic protocol --------------------------------------------------

    @property
    def nrows(self) -> int:
        return self._m.nrows()

    @property
    def ncols(self) -> int:
        return self._m.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return self._m.nrows(), self._m.ncols()

    def __getitem__(self, ij):
        i, j = ij
        return self.field(self._m[i, j])

    def entries(self) -> list:
        """Row-major list of canonical scalars."""
        if self.nrows == 0 or self.ncols == 0:
            return []
        return [self.field(x) for x in self._m.entries()]

    def tolist(self) -> list[list]:
        e = self.entries()
        c = self.ncols
        return [e[i * c:(i + 1) * c] for i in range(self.nrows)]

    def col(self, j: int) -> list:
        return [self[i, j] for i in range(self.nrows)]

    def nonzero(self) -> dict:
        """Sparse ``{(i, j): value}`` view of the nonzero entries."""
        if self.nrows == 0 or self.ncols == 0:
            return {}
        c = self.ncols
        f = self.field
        return {divmod(k, c): f(x) for k, x in enumerate(self._m.entries()) if x != 0}

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if self.nrows == 0 or self.ncols == 0:
            return True
        return self._m == other._m

    __hash__ = None

    def is_zero(self) -> bool:
        if self.nrows == 0 or self.ncols == 0:
            return True
        return self._m == self._new(self.nrows, self.ncols)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.field, self.nrows)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if 0 in (self.nrows, self.ncols, other.ncols):
            return Matrix(self.field, self.nrows, other.ncols)
        return Matrix._wrap(self.field, self._m * other._m)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        if 0 in self.shape:
            return self
        return Matrix._wrap(self.field, self._m + other._m)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        if 0 in self.shape:
            return self
        return Matrix._wrap(self.field, self._m - other._m)

    def __neg__(self) -> "Matrix":
        if 0 in self.shape:
            return self
        return Matrix._wrap(self.field, -self._m)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if 0 in self.shape:
            return self
        return Matrix._wrap(self.field, self._m * self.field._flint_scalar(c))

    @property
    def T(self) -> "Matrix":
        if 0 in self.shape:
            return Matrix(self.field, self.ncols, self.nrows)
        return Matrix._wrap(self.field, self._m.transpose())

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        out = Matrix(self.field, len(rows), len(cols))
        m, src = out._m, self._m
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                x = src[i, j]
                if x != 0:
                    m[a, b] = x
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        r1, c1 = self.shape
        r2, c2 = other.shape
        out = Matrix(self.field, r1 * r2, c1 * c2)
        if not (r1 and c1 and r2 and c2):
            return out
        m = out._m
        right = [(k, l, x) for (k, l), x in other._raw_nonzero()]
        for (i, j), a in self._raw_nonzero():
            for k, l, b in right:
                m[i * r2 + k, j * c2 + l] = a * b
        return out

    def raw(self) -> list:
        """Row-major backend scalars; cheap, and comparable with ``==`` within one field."""
        if self.nrows == 0 or self.ncols == 0:
            return []
        return self._m.entries()

    def _raw_nonzero(self):
        if self.nrows == 0 or self.ncols == 0:
            return []
        c = self.ncols
        return [(divmod(k, c), x) for k, x in enumerate(self._m.entries()) if x != 0]

    def __pow__(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.nrows)
        for _ in range(k):
            out = out @ self
        return out


# -- elimination -----------------------------------------------------------

def _pivots(R, r: int, cols: int) -> list[int]:
    piv, j = [], 0
    for i in range(r):
        while R[i, j] == 0:
            j += 1
        piv.append(j)
        j += 1
    return piv


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and the pivot column indices."""
    if 0 in m.shape:
        return m, []
    R, r = m._m.rref()
    return Matrix._wrap(m.field, R), _pivots(R, int(r), m.ncols)


def rank(m: Matrix) -> int:
    if 0 in m.shape:
        return 0
    return int(m._m.rank())


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{x : m x = 0}``.

    The basis is the standard one read off the reduced echelon form: each
    vector has a single 1 in one free coordinate and zeros in the others.
    """
    return kernel_with_free(m)[0]


def kernel_with_free(m: Matrix) -> tuple[Matrix, list[int]]:
    """:func:`kernel_basis` plus the free coordinates it is the identity on."""
    n = m.ncols
    if m.nrows == 0:
        return Matrix.identity(m.field, n), list(range(n))
    R, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    K = Matrix(m.field, n, len(free))
    k, src = K._m, R._m
    for b, f in enumerate(free):
        k[f, b] = 1
        for i, p in enumerate(piv):
            x = src[i, f]
            if x != 0:
                k[p, b] = -x
    return K, free


def image_basis(m: Matrix) -> Matrix:
    """An independent subset of the columns of ``m`` spanning its image."""
    _, piv = rref(m)
    return m.submatrix(None, piv)


def solve(m: Matrix, b: Matrix | Sequence) -> Matrix | None:
    """Some ``x`` with ``m x = b`` or ``None`` if the system is inconsistent.

    ``b`` may be a column vector, a sequence of scalars, or a matrix with
    several right-hand sides (then every column must be solvable).
    """
    if not isinstance(b, Matrix):
        b = Matrix.column(m.field, list(b))
    m._check(b)
    if b.nrows != m.nrows:
        raise ValueError(f"right-hand side has {b.nrows} rows, matrix has {m.nrows}")
    n, k = m.ncols, b.ncols
    if m.nrows == 0:
        return Matrix(m.field, n, k)
    R, piv = rref(hstack([m, b]))
    if piv and piv[-1] >= n:
        return None
    x = Matrix(m.field, n, k)
    dst, src = x._m, R._m
    for i, p in enumerate(piv):
        for j in range(k):
            v = src[i, n + j]
            if v != 0:
                dst[p, j] = v
    return x


def quotient_data(U: Matrix) -> tuple[list[int], Matrix]:
    """Complement coordinates and projection for ``C / im(U)``.

    Returns ``(free, q)``: the standard basis vectors indexed by ``free`` map
    to a basis of the quotient, and ``q`` is the projection matrix onto those
    coordinates.
    """
    F, c = U.field, U.nrows
    R, piv = rref(U.T)
    pivset = set(piv)
    free = [j for j in range(c) if j not in pivset]
    pos = {j: a for a, j in enumerate(free)}
    entries = {(pos[j], j): 1 for j in free}
    src = R._m
    for i, p in enumerate(piv):
        for j in free:
            x = src[i, j]
            if x != 0:
                entries[pos[j], p] = entries.get((pos[j], p), 0) - F(x)
    return free, Matrix.from_sparse(F, len(free), c, entries)


def _raw_rows(a: Matrix) -> list[list]:
    if a.nrows == 0 or a.ncols == 0:
        return [[] for _ in range(a.nrows)]
    e, c = a._m.entries(), a.ncols
    return [e[i * c:(i + 1) * c] for i in range(a.nrows)]


def _from_raw(field: Field, rows: int, cols: int, flat: list) -> Matrix:
    if rows == 0 or cols == 0:
        return Matrix(field, rows, cols)
    if field.p == 0:
        return Matrix._wrap(field, flint.fmpq_mat(rows, cols, flat))
    return Matrix._wrap(field, flint.nmod_mat(rows, cols, flat, field.p))


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("nothing to stack")
    f, r = mats[0].field, mats[0].nrows
    for a in mats:
        mats[0]._check(a)
        if a.nrows != r:
            raise ValueError("row counts differ")
    parts = [_raw_rows(a) for a in mats]
    flat = [x for i in range(r) for p in parts for x in p[i]]
    return _from_raw(f, r, sum(a.ncols for a in mats), flat)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("nothing to stack")
    f, c = mats[0].field, mats[0].ncols
    for a in mats:
        mats[0]._check(a)
        if a.ncols != c:
            raise ValueError("column counts differ")
    flat = [x for a in mats for row in _raw_rows(a) for x in row]
    return _from_raw(f, sum(a.nrows for a in mats), c, flat)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    f = mats[0].field
    entries, ro, co = {}, 0, 0
    for a in mats:
        for (i, j), v in a.nonzero().items():
            entries[ro + i, co + j] = v
        ro += a.nrows
        co += a.ncols
    return Matrix.from_sparse(f, ro, co, entries)
