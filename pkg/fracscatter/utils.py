#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import functools
import logging
import os
import queue
import sys
import threading
import time

from fracscatter.error import ConfigError

LOGGER = logging.getLogger(__name__)

THREADS_ENV = 'FRACSCATTER_THREADS'


class Stopwatch:
    def __init__(self):
        self._start_time = None

    def __enter__(self):
        self._start_time = time.monotonic()
        return self

    def __exit__(self, *_):
        pass

    @property
    def start_time(self):
        if self._start_time is None:
            raise RuntimeError("Stopwatch not yet started")
        return self._start_time

    @property
    def running_time(self):
        return time.monotonic() - self.start_time


def _ret_via_queue(func, result_queue):
    try:
        result_queue.put({'return': func()})
    except Exception:
        LOGGER.debug(
            'Error while running thread %s',
            threading.current_thread().name,
            exc_info=True,
        )
        result_queue.put({'exception': sys.exc_info()})


def func_vector(target, args_sequence):
    return [functools.partial(target, *args) for args in args_sequence]


class VectorThread:
    """Run each target in its own thread; results come back in target order."""

    def __init__(self, targets):
        self.targets = targets
        self.queues = [queue.Queue() for _ in targets]
        self.thread_handles = []
        self.results = []

    def start_all(self):
        for target, q in zip(self.targets, self.queues):
            t = threading.Thread(target=_ret_via_queue, args=(target, q))
            self.thread_handles.append(t)
            t.start()

    def join_all(self, raise_exceptions=True):
        if not self.results:
            for t in self.thread_handles:
                t.join()
            self._gather_results()
            self._handle_exceptions(raise_exceptions)

        return [result.get('return', None) for result in self.results]

    def _gather_results(self):
        for q in self.queues:
            self.results.append(q.get(block=False))

    def _handle_exceptions(self, raise_exceptions):
        exceptions = [result['exception'] for result in self.results if 'exception' in result]

        if exceptions:
            LOGGER.debug(f"{len(exceptions)} out of {len(self.targets)} threads raised exceptions:")
            for exc in exceptions:
                LOGGER.debug(f"{exc}")
            if raise_exceptions:
                exc_info = exceptions[0]
                raise exc_info[1].with_traceback(exc_info[2])


def worker_count(requested=None):
    """Worker count: explicit request, else FRACSCATTER_THREADS, else cpu count."""
    if requested is None:
        raw = os.environ.get(THREADS_ENV)
        if raw is None:
            return os.cpu_count() or 1
        try:
            requested = int(raw)
        except ValueError as e:
            raise ConfigError(f'{THREADS_ENV} must be a positive integer, got {raw!r}') from e
    if requested < 1:
        raise ConfigError(f'worker count must be a positive integer, got {requested}')
    return requested


def chunks(items, count):
    """Split items into at most `count` contiguous, order-preserving slices."""
    items = list(items)
    count = max(1, min(count, len(items)))
    size, extra = divmod(len(items), count)
    start = 0
    for i in range(count):
        stop = start + size + (1 if i < extra else 0)
        yield items[start:stop]
        start = stop


def parallel_map(func, items, workers=None):
    """[func(item) for item in items], evaluated by a thread per chunk.

    The output order follows the input order whatever the worker count.
    """
    items = list(items)
    if not items:
        return []
    workers = worker_count(workers)
    if workers == 1 or len(items) == 1:
        return [func(item) for item in items]
    slices = list(chunks(items, workers))
    LOGGER.debug(f'evaluating {len(items)} items on {len(slices)} threads')
    vt = VectorThread(func_vector(_map_slice, [(func, s) for s in slices]))
    vt.start_all()
    return [result for part in vt.join_all() for result in part]


def _map_slice(func, items):
    return [func(item) for item in items]
