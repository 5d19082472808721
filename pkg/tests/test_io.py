import json

import pytest
from hypothesis import given, settings, strategies as st

from invhoch import GF, QQ
from invhoch.algebra_core import regular_bimodule
from invhoch.exact_linalg import Matrix
from invhoch.fixtures import fixture, fixtures
from invhoch.io import (
    FormatError,
    algebra_from_dict,
    algebra_to_dict,
    bimodule_from_dict,
    bimodule_to_dict,
    dump,
    load,
    load_algebra,
    load_bimodule,
)


def corpus():
    return [pytest.param(F, n, id=f"{F}-{n}") for F in (QQ, GF(2), GF(3)) for n in fixtures(F)]


@pytest.mark.parametrize("F, name", corpus())
def test_round_trip(F, name):
    A = fixture(name, F).algebra
    d = algebra_to_dict(A)
    B = algebra_from_dict(json.loads(json.dumps(d)))
    assert (B.mul, B.unit, B.star, B.name, B.basis_labels) == (A.mul, A.unit, A.star, A.name, A.basis_labels)
    assert algebra_to_dict(B) == d
    M = regular_bimodule(A)
    N = bimodule_from_dict(json.loads(json.dumps(bimodule_to_dict(M))))
    assert N.star == M.star
    assert all(x == y for x, y in zip(N.left + N.right, M.left + M.right))


def test_scalar_canonical_forms():
    d = algebra_to_dict(fixture("dual_anti", QQ).algebra)
    assert d["involution"] == [["1", "0"], ["0", "-1"]]
    d3 = algebra_to_dict(fixture("dual_anti", GF(3)).algebra)
    assert d3["involution"] == [["1", "0"], ["0", "2"]]
    assert d3["field"] == {"type": "prime", "p": 3}


def test_files(tmp_path):
    A = fixture("k_Z3", QQ).algebra
    dump(A, tmp_path / "a.json")
    dump(regular_bimodule(A), tmp_path / "m.json", algebra_ref="a.json")
    assert load_algebra(tmp_path / "a.json").mul == A.mul
    M = load_bimodule(tmp_path / "m.json")
    assert M.algebra.mul == A.mul and M.dim == 3
    assert isinstance(load(tmp_path / "m.json"), type(M))


BASE = {"name": "q", "field": {"type": "rational"}, "dim": 1, "unit": ["1"],
        "mul": [[["1"]]], "involution": [["1"]]}


@pytest.mark.parametrize("patch, location", [
    ({"field": {"type": "real"}}, "field.type"),
    ({"field": {"type": "prime", "p": 4}}, "field.p"),
    ({"dim": -1}, "dim"),
    ({"unit": ["x"]}, "unit[0]"),
    ({"unit": ["1", "0"]}, "unit"),
    ({"mul": [[["1", "2"]]]}, "mul[0][0]"),
    ({"mul": [[[1.5]]]}, "mul[0][0][0]"),
    ({"involution": [["1/0"]]}, "involution[0][0]"),
])
def test_located_errors(patch, location):
    d = dict(BASE, **patch)
    with pytest.raises((FormatError, ValueError)) as e:
        algebra_from_dict(d)
    if isinstance(e.value, FormatError) and e.value.location:
        assert e.value.location == location


def test_missing_key_and_bad_json(tmp_path):
    d = dict(BASE)
    del d["mul"]
    with pytest.raises(FormatError, match="mul"):
        algebra_from_dict(d)
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(FormatError, match="invalid JSON"):
        load(p)


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50), st.integers(1, 30))
def test_rational_scalars(num, den):
    from fractions import Fraction

    A = algebra_from_dict(dict(BASE, involution=[["1"]], unit=["1"], mul=[[["1"]]]))
    x = Fraction(num, den)
    assert QQ.parse(QQ.format(x)) == x
    assert GF(7).parse(GF(7).format(GF(7)(num))) == GF(7)(num)
    assert A.dim == 1
