"""Order-preserving parallel map used by the CLI and the sweeps."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1, chunksize: int = 16) -> list[R]:
    """``[fn(x) for x in items]``, spread over ``workers`` processes when > 1.

    Results come back in input order regardless of completion order.
    ``fn`` must be a picklable top-level callable when ``workers > 1``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    items = list(items)
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunksize))
