"""Seed derivation and an order-preserving parallel map.

Every random draw comes from a stream keyed by (root seed, check name,
index, ...), so results do not depend on how work is split across threads.
"""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

WORKERS_ENV = "RHO_INTERP_WORKERS"
_override = None


def _word(k) -> int:
    if isinstance(k, str):
        return zlib.crc32(k.encode("utf-8"))
    return int(k)


def stream(root_seed: int, *key) -> np.random.Generator:
    ss = np.random.SeedSequence(int(root_seed), spawn_key=tuple(_word(k) for k in key))
    return np.random.default_rng(ss)


def derive_seed(root_seed: int, *key) -> int:
    """A 63-bit child seed for sub-runs keyed like ``stream``."""
    return int(stream(root_seed, "seed", *key).integers(2**63))


def workers() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


@contextmanager
def using_workers(n: int):
    """Temporarily fix the worker count, ignoring the environment."""
    global _override
    prev, _override = _override, max(1, int(n))
    try:
        yield
    finally:
        _override = prev


def parallel_map(fn, items):
    """map(fn, items) in input order, over a thread pool of ``workers()``."""
    items = list(items)
    n = workers()
    if n == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
