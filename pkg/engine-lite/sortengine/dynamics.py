"""Orbits of s_T: periodicity, ord, iterated images and t-sortable sets."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from sortengine.enumeration import Collector, check_ceiling, scan
from sortengine.errors import DomainError, SortEngineError
from sortengine.machine import DEFAULT, PatternSet, apply
from sortengine.perms import Permutation, symmetric_group
from sortengine.structure import is_half_decreasing

logger = logging.getLogger(__name__)

PERIODIC = 'periodic'
FIXED = 'fixed'
READINGS = (PERIODIC, FIXED)


@dataclass(frozen=True)
class OrbitSummary:
    start: Permutation
    tail_length: int
    cycle_length: int
    entry_point: Permutation

    @property
    def is_periodic(self) -> bool:
        return self.tail_length == 0

    def render(self) -> list[str]:
        return [
            f'start {self.start}',
            f'tail {self.tail_length}',
            f'cycle {self.cycle_length}',
            f'entry {self.entry_point}',
        ]


def iterate(perm: Sequence[int], patterns: PatternSet, times: int) -> Permutation:
    ''' s_T applied `times` times '''
    if times < 0:
        raise DomainError(f'cannot iterate a negative number of times: {times}')
    state = Permutation.trusted(perm)
    for _ in range(times):
        state = apply(state, patterns)
    return state


def orbit(perm: Sequence[int], patterns: PatternSet) -> OrbitSummary:
    """Iterate and record every visited state until one repeats."""
    start = Permutation.trusted(perm)
    seen: dict[tuple, int] = {}
    path: list[Permutation] = []
    state = start
    while state not in seen:
        seen[state] = len(path)
        path.append(state)
        state = apply(state, patterns)
    head = seen[state]
    return OrbitSummary(
        start=start,
        tail_length=head,
        cycle_length=len(path) - head,
        entry_point=path[head])


def orbit_two_pointer(perm: Sequence[int], patterns: PatternSet) -> OrbitSummary:
    """Constant-memory tortoise and hare variant of `orbit`."""
    start = Permutation.trusted(perm)

    def step(p):
        return apply(p, patterns)

    tortoise, hare = step(start), step(step(start))
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(step(hare))
    tail = 0
    tortoise = start
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(hare)
        tail += 1
    entry = tortoise
    cycle = 1
    hare = step(tortoise)
    while tortoise != hare:
        hare = step(hare)
        cycle += 1
    return OrbitSummary(start=start, tail_length=tail, cycle_length=cycle, entry_point=entry)


def ord_of(perm: Sequence[int], patterns: PatternSet) -> int:
    return orbit(perm, patterns).tail_length


def is_periodic(perm: Sequence[int], patterns: PatternSet) -> bool:
    return orbit(perm, patterns).tail_length == 0


def is_sorted_by(tail: int, cycle: int, t: int, reading: str = PERIODIC) -> bool:
    """Whether s^t lands on a periodic point (periodic reading) or on a fixed
    point (fixed reading), given the orbit's tail and cycle lengths."""
    if reading == PERIODIC:
        return tail <= t
    if reading == FIXED:
        return tail <= t and cycle == 1
    raise DomainError(f'unknown sorted reading {reading!r}, expected one of {READINGS}')


# ── Collectors ────────────────────────────────────────────────────


@dataclass
class OrdHistogram(Collector):
    counts: dict[int, int] = field(default_factory=dict)
    witness: Permutation | None = None

    def visit(self, perm, tail, cycle, entry):
        if self.witness is None or tail > self.maximum:
            self.witness = perm
        self.counts[tail] = self.counts.get(tail, 0) + 1

    @property
    def maximum(self) -> int:
        return max(self.counts) if self.counts else 0

    def merge(self, other: 'OrdHistogram'):
        if other.witness is not None and (self.witness is None or other.maximum > self.maximum):
            self.witness = other.witness
        for tail, count in other.counts.items():
            self.counts[tail] = self.counts.get(tail, 0) + count

    def histogram(self) -> np.ndarray:
        ''' entry k is the number of permutations with ord k '''
        if not self.counts:
            return np.zeros(0, dtype=np.int64)
        ords = np.fromiter(self.counts.keys(), dtype=np.int64)
        weights = np.fromiter(self.counts.values(), dtype=np.int64)
        return np.bincount(ords, weights=weights).astype(np.int64)


@dataclass
class Members(Collector):
    """Keeps permutations whose orbit satisfies a tail/cycle condition.

    `t` None keeps periodic points; otherwise keeps the t-sortable ones under
    `reading`. `ord_equals` keeps permutations of exactly that ord instead.
    """

    t: int | None = None
    reading: str = PERIODIC
    ord_equals: int | None = None
    keep: bool = True
    count: int = 0
    members: list = field(default_factory=list)

    def accepts(self, tail: int, cycle: int) -> bool:
        if self.ord_equals is not None:
            return tail == self.ord_equals
        return is_sorted_by(tail, cycle, self.t or 0, self.reading)

    def visit(self, perm, tail, cycle, entry):
        if self.accepts(tail, cycle):
            self.count += 1
            if self.keep:
                self.members.append(perm)

    def merge(self, other: 'Members'):
        self.count += other.count
        self.members.extend(other.members)


# ── Whole-S_n operations ──────────────────────────────────────────


def ord_scan(n: int, patterns: PatternSet, jobs: int | None = None,
             ceiling: int | None = None) -> OrdHistogram:
    return scan(n, patterns, OrdHistogram(), jobs=jobs, ceiling=ceiling)


def ord_of_Sn(n: int, patterns: PatternSet, jobs: int | None = None,
              ceiling: int | None = None) -> int:
    ''' max ord over S_n '''
    return ord_scan(n, patterns, jobs=jobs, ceiling=ceiling).maximum


def ord_distribution(n: int, patterns: PatternSet, jobs: int | None = None,
                     ceiling: int | None = None) -> dict[int, int]:
    histogram = ord_scan(n, patterns, jobs=jobs, ceiling=ceiling).histogram()
    return {k: int(c) for k, c in enumerate(histogram) if c}


def sortable_set(t: int, n: int, patterns: PatternSet, reading: str = PERIODIC,
                 jobs: int | None = None, ceiling: int | None = None) -> frozenset:
    if t < 0:
        raise DomainError(f't must be non-negative, got {t}')
    collector = scan(n, patterns, Members(t=t, reading=reading), jobs=jobs, ceiling=ceiling)
    return frozenset(collector.members)


def sortable_count(t: int, n: int, patterns: PatternSet, reading: str = PERIODIC,
                   jobs: int | None = None, ceiling: int | None = None) -> int:
    if t < 0:
        raise DomainError(f't must be non-negative, got {t}')
    collector = scan(
        n, patterns, Members(t=t, reading=reading, keep=False), jobs=jobs, ceiling=ceiling)
    return collector.count


def periodic_points(n: int, patterns: PatternSet, jobs: int | None = None,
                    ceiling: int | None = None, fast_path: bool = True) -> frozenset:
    """All permutations of S_n lying on a cycle of s_T.

    Under s_{123,132} the half-decreasing permutations are taken as the
    candidates and every candidate is confirmed periodic by the generic
    detector.
    """
    if fast_path and patterns == DEFAULT:
        if n < 1:
            raise DomainError(f'n must be at least 1, got {n}')
        check_ceiling(n, ceiling)
        candidates = [p for p in symmetric_group(n) if is_half_decreasing(p)]
        for p in candidates:
            if not is_periodic(p, patterns):
                raise SortEngineError(f'half-decreasing {p} is not periodic')
        logger.debug('fast path found %d periodic points in S_%d', len(candidates), n)
        return frozenset(candidates)
    return frozenset(scan(n, patterns, Members(), jobs=jobs, ceiling=ceiling).members)
