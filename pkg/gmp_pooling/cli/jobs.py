"""Per-image fan-out on an aiojobs scheduler.

Each item is processed by a job that hands the numpy work to a thread
executor; the scheduler's limit bounds how many run at once. Results come
back in input order whatever order the jobs finish in.
"""
import asyncio
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

import aiojobs

from ..errors import ConfigError

logger = logging.getLogger(__name__)

JOBS_ENV = "GMP_POOL_JOBS"

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: Optional[int]) -> int:
    """Worker count: GMP_POOL_JOBS when set, else ``jobs``, else 1."""
    value = os.environ.get(JOBS_ENV)
    if value is not None:
        try:
            jobs = int(value)
        except ValueError:
            raise ConfigError(JOBS_ENV, f"expected an integer, got {value!r}") from None
        field = JOBS_ENV
    else:
        field = "--jobs"
    if jobs is None:
        return 1
    if jobs < 1:
        raise ConfigError(field, f"must be >= 1, got {jobs}")
    return jobs


async def _run_all(fn: Callable[[T], R], items: Sequence[T], jobs: int) -> List[R]:
    loop = asyncio.get_running_loop()
    results: List = [None] * len(items)
    failures: List = [None] * len(items)

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        scheduler = aiojobs.Scheduler(limit=jobs, pending_limit=max(len(items), 1))

        async def run_item(index: int, item: T):
            try:
                results[index] = await loop.run_in_executor(executor, fn, item)
            except Exception as e:  # re-raised below in input order
                failures[index] = e

        try:
            spawned = [await scheduler.spawn(run_item(i, item)) for i, item in enumerate(items)]
            await asyncio.gather(*(job.wait() for job in spawned))
        finally:
            await scheduler.close()

    for failure in failures:
        if failure is not None:
            raise failure
    return results


def run_jobs(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> List[R]:
    """Apply ``fn`` to every item with at most ``jobs`` running concurrently."""
    logger.debug("jobs: %d items on %d workers", len(items), jobs)
    if not items:
        return []
    return asyncio.run(_run_all(fn, items, jobs))
