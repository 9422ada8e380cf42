"""Worker pool for independent numerical tasks (sweep chunks, fan directions)."""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from shared.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: Optional[int] = None) -> int:
    """Thread count: explicit value, then NUMSPEC_THREADS, then the CPU count."""
    if threads is None:
        threads = settings.threads
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, int(threads))


class TaskPool:
    """Runs tasks on a thread pool and returns results in submission order.

    numpy and LAPACK release the GIL, so threads parallelise the dense
    kernels. Results never depend on the thread count: each task owns its
    inputs and the reduction is by index.
    """

    def __init__(self, threads: Optional[int] = None, name: str = "tasks"):
        self.threads = resolve_threads(threads)
        self.name = name

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        if self.threads <= 1 or len(items) <= 1:
            return [fn(item) for item in items]

        workers = min(self.threads, len(items))
        logger.debug(f"{self.name}: {len(items)} tasks on {workers} threads")
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix=self.name) as pool:
            futures = [pool.submit(fn, item) for item in items]
            # first failure in index order wins
            return [future.result() for future in futures]
