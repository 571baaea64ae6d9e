"""
Ordered fan-out of per-parent work to a process pool.

With one worker everything runs in-process. Results come back in input
order either way, and callers sort their output, so files are identical for
any worker count. Items are pulled from the input in bounded batches, so a
streamed level is never materialized by the pool.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

DEFAULT_CHUNKSIZE = 32
BATCHES_PER_WORKER = 4


def batched(items: Iterable[T], size: int) -> Iterator[list]:
    it = iter(items)
    while True:
        batch = list(islice(it, size))
        if not batch:
            return
        yield batch


def ordered_map(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int,
    initializer: Callable[..., None],
    initargs: Sequence = (),
    chunksize: int = DEFAULT_CHUNKSIZE,
    batch_size: Optional[int] = None,
) -> Iterator[R]:
    if workers <= 1:
        initializer(*initargs)
        for item in items:
            yield func(item)
        return

    if batch_size is None:
        batch_size = workers * chunksize * BATCHES_PER_WORKER
    logger.debug(f"Starting process pool with {workers} workers, batches of {batch_size}")
    with ProcessPoolExecutor(max_workers=workers, initializer=initializer, initargs=tuple(initargs)) as pool:
        for batch in batched(items, batch_size):
            yield from pool.map(func, batch, chunksize=max(1, min(chunksize, len(batch) // workers)))
