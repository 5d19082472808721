"""One printed PASS/FAIL line per acceptance criterion, echoed again in the terminal summary."""

from contextlib import contextmanager
from time import perf_counter

LINES: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str, seconds: float) -> str:
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title} [{seconds:.2f} s]  {detail}"
    LINES[n] = line
    print(line)
    return line


@contextmanager
def criterion(n: int, title: str):
    """Yield a dict; put a ``detail`` string in it. Any exception records FAIL and propagates."""
    info: dict = {"detail": ""}
    t0 = perf_counter()
    try:
        yield info
    except BaseException as e:
        msg = str(e).strip().splitlines()
        record(n, title, False, f"{type(e).__name__}: {msg[0] if msg else ''} {info['detail']}".strip(),
               perf_counter() - t0)
        raise
    record(n, title, True, info["detail"], perf_counter() - t0)
