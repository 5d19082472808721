"""Process-wide memo of expensive computations shared by several test files."""

from functools import lru_cache

from invhoch import GF, QQ, fixture, hochschild
from invhoch.resolution_oracle import oracle_dims


def field_of(tag: str):
    return QQ if tag == "QQ" else GF(int(tag[3:-1]))


@lru_cache(maxsize=None)
def hh(tag: str, name: str, N: int, variant: str):
    return hochschild(fixture(name, field_of(tag)).algebra, None, N, variant)


@lru_cache(maxsize=None)
def oracle(tag: str, name: str, N: int, variant: str):
    return oracle_dims(fixture(name, field_of(tag)).algebra, None, N, variant)


@lru_cache(maxsize=None)
def involutive_complex(tag: str, name: str, N: int, kind: str):
    """The chain (``kind="chain"``) or cochain complex with its involution."""
    from invhoch.hochschild import chain_complex, cochain_complex

    build = chain_complex if kind == "chain" else cochain_complex
    return build(fixture(name, field_of(tag)).algebra, None, N)
