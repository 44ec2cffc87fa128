"""
Thread pool that maps work over indices and returns results in index order.

Quadrature cells are independent; numpy releases the GIL inside its
kernels, so threads overlap the heavy array work. Results come back in
submission order, and the caller reduces them with compensated sums, so
the value does not depend on the thread count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

TItem = TypeVar('TItem')
TResult = TypeVar('TResult')


class ParallelExecutor:
    """
    An ordered map over a thread pool.

    With one thread the builtin map is used and no pool is created.
    """

    def __init__(self, threads: int = 1) -> None:
        if threads < 1:
            raise ValueError(f"Thread count must be at least 1, got {threads}")
        self._threads = threads
        self._pool: Optional[ThreadPoolExecutor] = None

    @property
    def threads(self) -> int:
        """Number of worker threads."""
        return self._threads

    def map(self, func: Callable[[TItem], TResult], items: Iterable[TItem]) -> List[TResult]:
        """func over items, results in the order of items."""
        items = list(items)
        if self._threads == 1 or len(items) < 2:
            return [func(item) for item in items]
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self._threads, thread_name_prefix='eisenlab')
            logger.debug(f"Started a pool of {self._threads} threads")
        return list(self._pool.map(func, items))

    def __call__(self, func: Callable[[TItem], TResult], items: Iterable[TItem]) -> List[TResult]:
        return self.map(func, items)

    def shutdown(self) -> None:
        """Stop the worker threads."""
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __enter__(self) -> "ParallelExecutor":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()

    def __repr__(self) -> str:
        return f"ParallelExecutor(threads={self._threads})"
