"""Order-preserving fan-out of independent evaluations over worker processes"""
# Standard Library Imports
import logging

from concurrent.futures import ProcessPoolExecutor

# Quipu
from mpmath import mp
from quipu.globals import get_setting

logger = logging.getLogger("quipu.search")


def _init_worker(dps):
    mp.dps = dps


def map_ordered(func, items, workers=None):
    """``[func(item) for item in items]``, spread over ``workers`` processes
    when more than one is configured. Results keep the input order.
    """
    items = list(items)
    workers = int(workers or get_setting("SEARCH_WORKERS"))
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]

    chunksize = max(1, len(items) // (4 * workers))
    logger.debug(f"Evaluating {len(items)} items on {workers} workers")
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_worker, initargs=(mp.dps,)
    ) as executor:
        return list(executor.map(func, items, chunksize=chunksize))
