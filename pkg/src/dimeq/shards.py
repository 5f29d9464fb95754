# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""Order-preserving fan-out for sweeps, searches and catalog runs."""
from __future__ import annotations

import asyncio
import logging
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


async def _agather(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """
    Runs ``fn`` over ``items`` in worker threads, at most ``workers`` at a time.

    Args:
        fn: A pure function of one shard.
        items: The shards.
        workers: Concurrency bound.

    Returns:
        List[R]: Results in the order of ``items``.
    """
    semaphore = asyncio.Semaphore(workers)

    async def run_one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    tasks = [run_one(item) for item in items]
    return list(await asyncio.gather(*tasks))


def gather_ordered(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """Maps ``fn`` over ``items``; the result never depends on ``workers``."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug("fanning %d shards out over %d workers", len(items), workers)
    return asyncio.run(_agather(fn, items, workers))
