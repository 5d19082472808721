"""Exact ordinary and involutive Hochschild (co)homology of finite-dimensional
involutive algebras over Q and F_p."""

from .algebra_core import (
    InvolutiveAlgebra,
    InvolutiveBimodule,
    IVectSpace,
    ValidationReport,
    regular_bimodule,
    validate_algebra,
    validate_bimodule,
)
from .coderivation import coder_complex, compare_with_cochain
from .complexes import ChainComplex, InvolutiveChainComplex, homology_dims
from .enveloping import enveloping, involutive_enveloping
from .exact_linalg import GF, QQ, Field, Matrix
from .fixtures import fixture, fixtures
from .hochschild import SizeCapError, hochschild
from .resolution_oracle import ResolutionCapError, free_resolution, oracle_dims

__version__ = "0.1.0"

__all__ = [
    "Field", "QQ", "GF", "Matrix",
    "InvolutiveAlgebra", "InvolutiveBimodule", "IVectSpace", "ValidationReport",
    "validate_algebra", "validate_bimodule", "regular_bimodule",
    "fixture", "fixtures",
    "enveloping", "involutive_enveloping",
    "ChainComplex", "InvolutiveChainComplex", "homology_dims",
    "hochschild", "SizeCapError",
    "free_resolution", "oracle_dims", "ResolutionCapError",
    "coder_complex", "compare_with_cochain",
]
