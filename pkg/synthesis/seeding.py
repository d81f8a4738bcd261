"""
Name: seeding.py
Description: Per-sequence generation with a bounded thread pool.
Author: Connor Kasarda
Date: 2025-05-24

Notes:
    Each sequence draws from its own generator, derived from (seed, sequence index), so the output does not depend
    on TRENDLAB_THREADS or on the order in which workers finish.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable
from common.errors import ConfigError

THREADS_VARIABLE = 'TRENDLAB_THREADS'

def thread_count() -> int:
    """
    Reads the worker cap from TRENDLAB_THREADS (default 1).

    Raises:
        ConfigError: If the variable is set to anything but a positive integer.
    """

    text = os.environ.get(THREADS_VARIABLE, '').strip()
    if not text:
        return 1
    try:
        count = int(text)
    except ValueError:
        raise ConfigError(f'{THREADS_VARIABLE} must be a positive integer, got {text!r}') from None
    if count < 1:
        raise ConfigError(f'{THREADS_VARIABLE} must be a positive integer, got {count}')
    return count

def parallel_map(function: Callable[[int], object], count: int) -> list:
    """
    Calls function(0), ..., function(count - 1) and returns the results in index order.

    Args:
        function (Callable[[int], object]): Work for one index.
        count (int): Number of indices.

    Returns:
        list: function(k) at position k.
    """

    workers = min(thread_count(), count)
    if workers <= 1:
        return [function(index) for index in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, range(count)))
