import pytest

from invhoch import GF, QQ
from invhoch.algebra_core import InvolutiveBimodule, regular_bimodule, validate_bimodule
from invhoch.enveloping import (
    FiniteDimAlgebra,
    ModulePresentation,
    bimodule_to_enveloping_module,
    bimodule_to_left_module,
    bimodule_to_right_module,
    enveloping,
    involutive_enveloping,
)
from invhoch.exact_linalg import Matrix
from invhoch.fixtures import fixture, fixtures
from invhoch.functors import involutive_center, tensor_over_enveloping, tensor_over_ienv
from invhoch.resolution_oracle import (
    ResolutionCapError,
    ext_dims,
    free_resolution,
    oracle_dims,
    tor_dims,
)
from cache import hh


def group_algebra_z2(F):
    """k[Z/2] as a plain algebra plus its trivial left and right modules."""
    R = FiniteDimAlgebra(F, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], (1, 0), ("e", "g"))
    one = Matrix.identity(F, 1)
    return R, ModulePresentation(R, [one, one], "left"), ModulePresentation(R, [one, one], "right")


def test_field_resolution():
    k = FiniteDimAlgebra(QQ, [[[1]]], (1,))
    M = ModulePresentation(k, [Matrix.identity(QQ, 1)])
    res = free_resolution(k, M, 3)
    assert res.ranks == (1, 0, 0, 0)


def test_semisimple_group_algebra():
    # R -> k has the sign representation as kernel, so the cover never stops,
    # but every higher Tor vanishes
    R, triv, triv_r = group_algebra_z2(QQ)
    res = free_resolution(R, triv, 3)
    assert res.ranks == (1, 1, 1, 1)
    assert tor_dims(triv_r, res) == [1, 0, 0]


def test_periodic_resolution_char2():
    R, triv, triv_r = group_algebra_z2(GF(2))
    res = free_resolution(R, triv, 4)
    assert res.ranks == (1, 1, 1, 1, 1)
    assert tor_dims(triv_r, res) == [1, 1, 1, 1]
    assert ext_dims(res, triv) == [1, 1, 1, 1]


def test_side_checks():
    R, triv, triv_r = group_algebra_z2(QQ)
    res = free_resolution(R, triv, 2)
    with pytest.raises(ValueError):
        tor_dims(triv, res)
    with pytest.raises(ValueError):
        ext_dims(res, triv_r)
    with pytest.raises(ValueError):
        free_resolution(R, triv_r, 2)


def test_rank_cap():
    R, triv, _ = group_algebra_z2(GF(2))
    with pytest.raises(ResolutionCapError) as e:
        free_resolution(R, triv, 3, max_rank=0)
    assert e.value.stage == 1


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)], ids=str)
@pytest.mark.parametrize("name", ["k_Z2", "dual", "tensor_trunc", "kxk_swap"])
def test_resolutions_are_exact(F, name):
    A = fixture(name, F).algebra
    for R, P in [(enveloping(A), bimodule_to_enveloping_module(regular_bimodule(A))),
                 (involutive_enveloping(A), bimodule_to_left_module(regular_bimodule(A)))]:
        res = free_resolution(R, P, 4, verify=False)
        res.verify()
        for n in range(res.length):
            prev = res.augmentation_matrix() if n == 0 else res.linear_map(n - 1)
            assert (prev @ res.linear_map(n)).is_zero()


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)], ids=str)
@pytest.mark.parametrize("name", ["dual", "tensor_trunc", "k_Z3", "kxk_swap"])
@pytest.mark.parametrize("variant", ["hh", "ihh", "cohh", "icohh"])
def test_seed_independence(F, name, variant):
    A = fixture(name, F).algebra
    assert oracle_dims(A, None, 4, variant, seed=0) == oracle_dims(A, None, 4, variant, seed=11)


def dual_bimodule(A):
    """``Hom_k(A, k)`` with ``(a f b)(x) = f(b x a)`` and ``f^*(x) = f(x^*)``."""
    return InvolutiveBimodule(A, [r.T for r in A.right_matrices], [l.T for l in A.left_matrices], A.star.T)


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)], ids=str)
@pytest.mark.parametrize("name", ["k_Z2", "dual", "dual_anti", "tensor_trunc", "kxk_swap"])
@pytest.mark.parametrize("ring", ["e", "ie"])
def test_tor_balance(F, name, ring):
    """``Tor(A, M)``: resolve ``M`` and tensor with ``A``, or resolve ``A`` and tensor with ``M``."""
    if name not in fixtures(F):
        pytest.skip("unavailable")
    A = fixture(name, F).algebra
    Areg, M = regular_bimodule(A), dual_bimodule(A)
    assert validate_bimodule(M).ok
    if ring == "e":
        R = enveloping(A)
        left = lambda X: bimodule_to_enveloping_module(X, "left", R)
        right = lambda X: bimodule_to_enveloping_module(X, "right", R)
    else:
        R = involutive_enveloping(A)
        left = lambda X: bimodule_to_left_module(X, R)
        right = lambda X: bimodule_to_right_module(X, R)
    one = tor_dims(right(Areg), free_resolution(R, left(M), 4))
    other = tor_dims(right(M), free_resolution(R, left(Areg), 4))
    assert one == other
    zero = (tensor_over_enveloping if ring == "e" else tensor_over_ienv)(Areg, M).dim
    assert one[0] == zero


@pytest.mark.parametrize("F", [QQ, GF(3)], ids=str)
@pytest.mark.parametrize("name", ["k", "k_Z2", "k_Z3", "dual", "dual_anti", "tensor_trunc",
                                  "tensor_trunc_anti", "kxk_swap"])
def test_ext_zero_is_involutive_center(F, name):
    A = fixture(name, F).algebra
    assert oracle_dims(A, None, 1, "icohh")[0] == involutive_center(regular_bimodule(A)).dim


def test_oracle_matches_complex_semisimple():
    assert oracle_dims(fixture("k_Z2", QQ).algebra, None, 4, "ihh") == [2, 0, 0, 0]
    assert hh("QQ", "k_Z2", 4, "ihh").dims == [2, 0, 0, 0]


def test_unknown_variant():
    with pytest.raises(ValueError):
        oracle_dims(fixture("k", QQ).algebra, None, 2, "nope")
