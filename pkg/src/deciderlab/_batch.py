"""Order-preserving parallel map over index ranges."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    return os.cpu_count() or 1


def pmap(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """``[fn(x) for x in items]``, possibly across processes.

    ``fn`` must be picklable (module level).  Output order always matches
    ``items``, so results do not depend on ``workers``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunk))
