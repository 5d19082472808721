"""JSON file formats for algebras and bimodules.

Algebra file keys: ``name``, ``field`` (``{"type": "rational"}`` or
``{"type": "prime", "p": p}``), ``dim``, ``basis``, ``unit``, ``mul``
(nested ``c[i][j][k]``) and ``involution`` (list of rows).  Bimodule files
have ``algebra`` (a path relative to the file, or an inline algebra
object), ``dim``, ``left``, ``right`` and ``involution``; optionally
``name``.  All scalars are strings: ``"a"`` or ``"a/b"`` over Q and the
residue ``0..p-1`` over F_p.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra_core import InvolutiveAlgebra, InvolutiveBimodule
from .exact_linalg import Field, Matrix

__all__ = [
    "FormatError",
    "field_to_dict",
    "field_from_dict",
    "algebra_to_dict",
    "algebra_from_dict",
    "bimodule_to_dict",
    "bimodule_from_dict",
    "load",
    "load_algebra",
    "load_bimodule",
    "dump",
]


class FormatError(ValueError):
    """A file does not follow the format; ``location`` is a JSON path like ``mul[0][1]``."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def field_to_dict(F: Field) -> dict:
    return {"type": "rational"} if F.p == 0 else {"type": "prime", "p": F.p}


def field_from_dict(d) -> Field:
    if not isinstance(d, dict) or "type" not in d:
        raise FormatError("expected an object with a 'type' key", "field")
    if d["type"] == "rational":
        return Field(0)
    if d["type"] == "prime":
        try:
            return Field(int(d["p"]))
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"bad prime: {e}", "field.p") from None
    raise FormatError(f"unknown field type {d['type']!r}", "field.type")


def _scalar(F: Field, s, loc: str):
    if not isinstance(s, (str, int)) or isinstance(s, bool):
        raise FormatError(f"scalar must be a string, got {type(s).__name__}", loc)
    try:
        return F.parse(str(s))
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad scalar {s!r}: {e}", loc) from None


def _vector(F, v, n, loc):
    if not isinstance(v, list) or len(v) != n:
        raise FormatError(f"expected a list of {n} scalars", loc)
    return [_scalar(F, x, f"{loc}[{i}]") for i, x in enumerate(v)]


def _matrix(F, rows, n, loc) -> Matrix:
    if not isinstance(rows, list) or len(rows) != n:
        raise FormatError(f"expected {n} rows", loc)
    return Matrix.from_rows(F, [_vector(F, r, n, f"{loc}[{i}]") for i, r in enumerate(rows)], n)


def _fmt_matrix(F, M: Matrix) -> list[list[str]]:
    return [[F.format(x) for x in row] for row in M.tolist()]


def _require(d: dict, key: str, where: str = ""):
    if key not in d:
        raise FormatError(f"missing key {key!r}", where)
    return d[key]


def _dim(d: dict) -> int:
    n = _require(d, "dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("dim must be a nonnegative integer", "dim")
    return n


def algebra_to_dict(A: InvolutiveAlgebra) -> dict:
    F = A.field
    return {
        "name": A.name,
        "field": field_to_dict(F),
        "dim": A.dim,
        "basis": list(A.basis_labels),
        "unit": [F.format(x) for x in A.unit],
        "mul": [[[F.format(x) for x in row] for row in plane] for plane in A.mul],
        "involution": _fmt_matrix(F, A.star),
    }


def algebra_from_dict(d: dict) -> InvolutiveAlgebra:
    if not isinstance(d, dict):
        raise FormatError("algebra must be a JSON object")
    F = field_from_dict(_require(d, "field"))
    n = _dim(d)
    basis = d.get("basis", [f"e{i}" for i in range(n)])
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise FormatError(f"expected {n} basis labels", "basis")
    unit = _vector(F, _require(d, "unit"), n, "unit")
    mul = _require(d, "mul")
    if not isinstance(mul, list) or len(mul) != n:
        raise FormatError(f"expected {n} planes", "mul")
    planes = []
    for i, plane in enumerate(mul):
        if not isinstance(plane, list) or len(plane) != n:
            raise FormatError(f"expected {n} rows", f"mul[{i}]")
        planes.append([_vector(F, row, n, f"mul[{i}][{j}]") for j, row in enumerate(plane)])
    star = _matrix(F, _require(d, "involution"), n, "involution")
    return InvolutiveAlgebra(F, planes, unit, star, tuple(basis), name=str(d.get("name", "")))


def bimodule_to_dict(M: InvolutiveBimodule, algebra_ref: str | None = None) -> dict:
    F = M.field
    return {
        "name": M.name,
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_dict(M.algebra),
        "dim": M.dim,
        "left": [_fmt_matrix(F, x) for x in M.left],
        "right": [_fmt_matrix(F, x) for x in M.right],
        "involution": _fmt_matrix(F, M.star),
    }


def bimodule_from_dict(d: dict, base: Path | None = None) -> InvolutiveBimodule:
    if not isinstance(d, dict):
        raise FormatError("bimodule must be a JSON object")
    ref = _require(d, "algebra")
    if isinstance(ref, str):
        path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
        A = load_algebra(path)
    else:
        A = algebra_from_dict(ref)
    F, n = A.field, A.dim
    m = _dim(d)
    acts = {}
    for side in ("left", "right"):
        mats = _require(d, side)
        if not isinstance(mats, list) or len(mats) != n:
            raise FormatError(f"expected {n} matrices", side)
        acts[side] = [_matrix(F, x, m, f"{side}[{i}]") for i, x in enumerate(mats)]
    star = _matrix(F, _require(d, "involution"), m, "involution")
    return InvolutiveBimodule(A, acts["left"], acts["right"], star, name=str(d.get("name", "")))


def _read(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg} at line {e.lineno}") from None


def load(path) -> InvolutiveAlgebra | InvolutiveBimodule:
    """Load either kind of file; bimodule files are recognised by their ``left`` key."""
    d = _read(path)
    if isinstance(d, dict) and "left" in d:
        return bimodule_from_dict(d, Path(path).parent)
    return algebra_from_dict(d)


def load_algebra(path) -> InvolutiveAlgebra:
    return algebra_from_dict(_read(path))


def load_bimodule(path) -> InvolutiveBimodule:
    return bimodule_from_dict(_read(path), Path(path).parent)


def dump(obj, path, algebra_ref: str | None = None) -> None:
    d = algebra_to_dict(obj) if isinstance(obj, InvolutiveAlgebra) else bimodule_to_dict(obj, algebra_ref)
    Path(path).write_text(json.dumps(d, indent=1) + "\n")
