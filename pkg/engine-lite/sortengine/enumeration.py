"""Exhaustive scans of S_n under s_T.

S_n is split into n shards by first element. Each shard walks its
permutations in lexicographic order, resolves every orbit through a local
memo table and feeds the results to a collector. Shards run in parallel with
joblib and are merged in shard order, so every aggregate (including the first
counterexample found) is independent of the worker count.
"""

from __future__ import annotations

import copy
import logging
import math
import time
from typing import Iterator

import psutil
from joblib import Parallel, delayed

from sortengine import config
from sortengine.errors import CeilingExceeded, DomainError
from sortengine.machine import PatternSet, apply
from sortengine.perms import Permutation, symmetric_group

logger = logging.getLogger(__name__)

# rough cost of one memo entry: key tuple, value tuple and dict slot
_BYTES_PER_STATE = 120


class OrbitTable:
    """Memoized orbit resolution over the functional graph of s_T.

    For every state seen it stores (tail length, cycle length, entry point),
    where the entry point is the first periodic permutation on the orbit.
    """

    def __init__(self, patterns: PatternSet):
        self.patterns = patterns
        self._known: dict[tuple, tuple[int, int, tuple]] = {}

    def __len__(self):
        return len(self._known)

    def resolve(self, start: Permutation) -> tuple[int, int, tuple]:
        known = self._known
        if start in known:
            return known[start]
        path: list[tuple] = []
        index: dict[tuple, int] = {}
        state: tuple = start
        while state not in known and state not in index:
            index[state] = len(path)
            path.append(state)
            state = apply(state, self.patterns)
        if state in index:
            head = index[state]
            cycle = path[head:]
            for member in cycle:
                known[member] = (0, len(cycle), member)
            tail_part = path[:head]
            base_tail, cycle_length, entry = 0, len(cycle), state
        else:
            tail_part = path
            base_tail, cycle_length, entry = known[state]
        for steps, member in enumerate(reversed(tail_part), start=1):
            known[member] = (base_tail + steps, cycle_length, entry)
        return known[start]


class Collector:
    """Receives one record per permutation of a shard.

    Subclasses accumulate whatever they need in `visit` and combine shard
    results in `merge`. A collector passed to `scan` acts as an empty
    template and is deep-copied for every shard.
    """

    def visit(self, perm: Permutation, tail: int, cycle: int, entry: tuple) -> None:
        raise NotImplementedError

    def merge(self, other: 'Collector') -> None:
        raise NotImplementedError


def check_ceiling(n: int, ceiling: int | None = None) -> None:
    limit = config.ceiling() if ceiling is None else ceiling
    if n > limit:
        raise CeilingExceeded(n, limit)


def _warn_on_memory(n: int, jobs: int) -> None:
    per_shard = math.factorial(max(n - 1, 0)) * _BYTES_PER_STATE
    available = psutil.virtual_memory().available
    if per_shard * jobs > available * 0.8:
        logger.warning(
            'scanning S_%d needs about %.1f GB across %d workers, %.1f GB available',
            n, per_shard * jobs / 1e9, jobs, available / 1e9)


def _scan_shard(n: int, patterns: PatternSet, first: int, template: Collector) -> Collector:
    collector = copy.deepcopy(template)
    table = OrbitTable(patterns)
    for perm in symmetric_group(n, first=first):
        tail, cycle, entry = table.resolve(perm)
        collector.visit(perm, tail, cycle, entry)
    logger.debug('shard n=%d first=%d resolved %d states', n, first, len(table))
    return collector


def iter_shards(
    n: int,
    patterns: PatternSet,
    template: Collector,
    jobs: int | None = None,
    ceiling: int | None = None,
) -> Iterator[Collector]:
    """Yields one collector per shard, in shard order, as they complete."""
    if n < 1:
        raise DomainError(f'n must be at least 1, got {n}')
    check_ceiling(n, ceiling)
    jobs = config.threads() if jobs is None else max(1, jobs)
    _warn_on_memory(n, jobs)
    if jobs == 1 or n == 1:
        for first in range(1, n + 1):
            yield _scan_shard(n, patterns, first, template)
        return
    yield from Parallel(n_jobs=min(jobs, n), return_as='generator')(
        delayed(_scan_shard)(n, patterns, first, template) for first in range(1, n + 1))


def scan(
    n: int,
    patterns: PatternSet,
    template: Collector,
    jobs: int | None = None,
    ceiling: int | None = None,
) -> Collector:
    ''' runs every shard and merges them into a fresh copy of template '''
    started = time.monotonic()
    jobs = config.threads() if jobs is None else max(1, jobs)
    result = copy.deepcopy(template)
    for shard in iter_shards(n, patterns, template, jobs=jobs, ceiling=ceiling):
        result.merge(shard)
    logger.info(
        'scanned S_%d under %s (%d patterns, %d workers) in %.2fs',
        n, patterns, len(patterns), jobs, time.monotonic() - started)
    return result
