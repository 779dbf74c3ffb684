"""Verification targets.

Every checker walks an n range exhaustively and returns report records. A
passing record only ever means "no counterexample up to n"; a failing record
carries the lexicographically first counterexample found.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable

from sortengine.dynamics import PERIODIC, Members, OrdHistogram, iterate
from sortengine.enumeration import Collector, check_ceiling, scan
from sortengine.families import (
    delta,
    first_half_decreasing,
    gamma,
    max_ord,
    meets_necessary_conditions,
)
from sortengine.machine import CLASSICAL, DEFAULT, PatternSet, apply
from sortengine.perms import Permutation, format_permutation, symmetric_group
from sortengine.structure import (
    decompose,
    half_decreasing_prefix,
    is_half_decreasing,
    small_bound,
)
from sortlab.reports import FAIL, INFO, PASS, SKIPPED, Record

logger = logging.getLogger(__name__)

BIJECTION_PAIRS = ('123,213', '132,312', '231,321')
TWO_POINT_PAIRS = ('213,231', '132,213', '231,312')


@dataclass
class CheckContext:
    n_min: int
    n_max: int
    jobs: int | None = None
    ceiling: int | None = None
    reading: str = PERIODIC
    ts: tuple[int, ...] = (1, 2)

    @property
    def ns(self) -> range:
        return range(self.n_min, self.n_max + 1)


def _verdict(ok: bool, counterexample: str = '') -> dict:
    if ok:
        return {'verdict': PASS}
    return {'verdict': FAIL, 'counterexample': counterexample or 'unspecified'}


# ── Collectors ────────────────────────────────────────────────────


@dataclass
class Violations(Collector):
    """Counts permutations failing `holds` and remembers the first one."""

    holds: Callable
    checked: int = 0
    failed: int = 0
    first: Permutation | None = None

    def visit(self, perm, tail, cycle, entry):
        self.checked += 1
        if not self.holds(perm, tail, cycle, entry):
            self.failed += 1
            if self.first is None:
                self.first = perm

    def merge(self, other: 'Violations'):
        self.checked += other.checked
        self.failed += other.failed
        if self.first is None:
            self.first = other.first

    def record(self, n: int, patterns: str, quantity: str) -> Record:
        counterexample = format_permutation(self.first) if self.first is not None else ''
        return Record(n, patterns, quantity, self.failed, **_verdict(self.failed == 0, counterexample))


@dataclass
class NecessaryConditions(Collector):
    ''' minimally-sorted members breaking the conditions, and non-members meeting them '''

    target: int
    members: int = 0
    violation: Permutation | None = None
    witness: Permutation | None = None

    def visit(self, perm, tail, cycle, entry):
        meets = meets_necessary_conditions(perm)
        if tail == self.target:
            self.members += 1
            if not meets and self.violation is None:
                self.violation = perm
        elif meets and self.witness is None:
            self.witness = perm

    def merge(self, other: 'NecessaryConditions'):
        self.members += other.members
        self.violation = self.violation or other.violation
        self.witness = self.witness or other.witness


# ── Properties, module level so worker processes can import them ──


def periodic_iff_half_decreasing(perm, tail, cycle, entry) -> bool:
    return (tail == 0) == is_half_decreasing(perm)


def sorted_by_n_minus_one(perm, tail, cycle, entry) -> bool:
    n = len(perm)
    return tail <= max(n - 1, 0) and tuple(entry) == tuple(range(1, n + 1))


def everything_periodic(perm, tail, cycle, entry) -> bool:
    return tail == 0


def half_decreasing_grows(perm, tail=None, cycle=None, entry=None) -> bool:
    ''' s^{i+m}(perm) has its first i half-decreasing slots in place, i <= m '''
    m = small_bound(len(perm))
    state = iterate(perm, DEFAULT, m)
    for i in range(1, m + 1):
        state = apply(state, DEFAULT)
        if half_decreasing_prefix(state) < i:
            return False
    return True


def small_values_in_region(perm, tail=None, cycle=None, entry=None) -> bool:
    ''' after m passes every small value sits inside the valley-region '''
    m = small_bound(len(perm))
    image = iterate(perm, DEFAULT, m)
    decomposition = decompose(image)
    return all(
        decomposition.in_region(pos)
        for pos, value in enumerate(image, start=1) if value <= m)


def bottom_element_last(perm, tail=None, cycle=None, entry=None, *, patterns: PatternSet) -> bool:
    return apply(perm, patterns)[-1] == perm[0]


def region_values_stay(perm, tail=None, cycle=None, entry=None) -> bool:
    """Literal reading: every value of the region of perm lies in the region
    of s(perm)."""
    before = decompose(perm)
    if not before.has_region:
        return True
    image = apply(perm, DEFAULT)
    after = decompose(image)
    return before.region_values() <= after.region_values()


def region_shifts_left(perm, tail=None, cycle=None, entry=None) -> bool:
    """For a region starting at B >= 2: the region values of perm fill
    positions B-1..n-1 of s(perm), perm_1 comes last, and the region of
    s(perm) starts no later than B."""
    before = decompose(perm)
    if not before.has_region or before.boundary < 2:
        return True
    b = before.boundary
    image = apply(perm, DEFAULT)
    if set(image[b - 2:-1]) != set(perm[b - 1:]) or image[-1] != perm[0]:
        return False
    after = decompose(image)
    return after.has_region and after.boundary <= b


def _exhaustive(ctx: CheckContext, n: int, patterns: PatternSet, holds: Callable) -> Violations:
    return scan(n, patterns, Violations(holds), jobs=ctx.jobs, ceiling=ctx.ceiling)


# ── Targets ───────────────────────────────────────────────────────


def theorem_1_2(ctx: CheckContext) -> list[Record]:
    ''' max ord over S_n is 2 floor((n-1)/2), attained by gamma_n '''
    records = []
    for n in ctx.ns:
        expected = max_ord(n)
        histogram = scan(n, DEFAULT, OrdHistogram(), jobs=ctx.jobs, ceiling=ctx.ceiling)
        found = histogram.maximum
        counterexample = ''
        if found > expected:
            counterexample = format_permutation(histogram.witness)
        elif found < expected:
            counterexample = format_permutation(gamma(n) if n >= 5 else Permutation.identity(n))
        records.append(Record(n, str(DEFAULT), 'ord(S_n)', found,
                              **_verdict(found == expected, counterexample)))
        if n >= 5:
            attained = first_half_decreasing(gamma(n))
            records.append(Record(n, str(DEFAULT), 'ord(gamma_n)', attained,
                                  **_verdict(attained == expected, format_permutation(gamma(n)))))
    return records


def theorem_1_1(ctx: CheckContext) -> list[Record]:
    return [
        _exhaustive(ctx, n, DEFAULT, periodic_iff_half_decreasing).record(
            n, str(DEFAULT), 'periodic<>half-decreasing mismatches')
        for n in ctx.ns]


def west_bound(ctx: CheckContext) -> list[Record]:
    return [
        _exhaustive(ctx, n, CLASSICAL, sorted_by_n_minus_one).record(
            n, str(CLASSICAL), 'not sorted after n-1 passes')
        for n in ctx.ns]


def _count_record(n: int, patterns: PatternSet, quantity: str, found: int, expected: int) -> Record:
    return Record(n, str(patterns), quantity, found,
                  **_verdict(found == expected, f'expected {expected}'))


def catalan(ctx: CheckContext) -> list[Record]:
    records = []
    for n in ctx.ns:
        found = scan(n, CLASSICAL, Members(t=1, keep=False), jobs=ctx.jobs, ceiling=ctx.ceiling).count
        records.append(_count_record(n, CLASSICAL, '|Sort_1|', found, math.comb(2 * n, n) // (n + 1)))
    return records


def zeilberger(ctx: CheckContext) -> list[Record]:
    records = []
    for n in ctx.ns:
        found = scan(n, CLASSICAL, Members(t=2, keep=False), jobs=ctx.jobs, ceiling=ctx.ceiling).count
        expected = 2 * math.comb(3 * n, n) // ((n + 1) * (2 * n + 1))
        records.append(_count_record(n, CLASSICAL, '|Sort_2|', found, expected))
    return records


def lemma_3_8(ctx: CheckContext) -> list[Record]:
    return [
        _exhaustive(ctx, n, DEFAULT, half_decreasing_grows).record(
            n, str(DEFAULT), 'half-decreasing prefix short')
        for n in ctx.ns]


def corollary_3_7(ctx: CheckContext) -> list[Record]:
    return [
        _exhaustive(ctx, n, DEFAULT, small_values_in_region).record(
            n, str(DEFAULT), 'small values outside region')
        for n in ctx.ns]


def region_invariance(ctx: CheckContext) -> list[Record]:
    records = []
    for n in ctx.ns:
        literal = _exhaustive(ctx, n, DEFAULT, region_values_stay)
        records.append(literal.record(n, str(DEFAULT), 'region values leaving region'))
        shifted = _exhaustive(ctx, n, DEFAULT, region_shifts_left)
        records.append(shifted.record(n, str(DEFAULT), 'region shift violations'))
    return records


def proposition_3_1(ctx: CheckContext) -> list[Record]:
    records = []
    for pair in itertools.combinations(symmetric_group(3), 2):
        patterns = PatternSet(pair)
        holds = partial(bottom_element_last, patterns=patterns)
        for n in ctx.ns:
            records.append(_exhaustive(ctx, n, patterns, holds).record(
                n, str(patterns), 'last element differs from first'))
    return records


def family_windows(n: int) -> list[tuple[str, bool, str]]:
    """(quantity, holds, verdict kind) for the gamma_n prefix and suffix windows.

    The prefix of s^k(gamma_n) matches a window of delta_n; the suffix slots
    n-1, n-3, ... carry 1..k. The suffix claim at k = m is reported only.
    """
    m = small_bound(n)
    shift = 0 if n % 2 else 1
    g, d = gamma(n), delta(n)
    windows = []
    state = g
    for k in range(1, m + 1):
        state = apply(state, DEFAULT)
        length = n - 2 * k - 2 - shift
        if length >= 1:
            expected = tuple(d.window(k, n - k - 3 - shift))
            windows.append((f'prefix k={k}', tuple(state[:length]) == expected, PASS))
        windows.append((f'suffix k={k}', half_decreasing_prefix(state) >= k,
                        PASS if k < m else INFO))
    return windows


def lemma_3_9(ctx: CheckContext) -> list[Record]:
    records = []
    for n in ctx.ns:
        if n < 5:
            records.append(Record(n, str(DEFAULT), 'windows', 'n < 5', verdict=SKIPPED))
            continue
        for quantity, holds, kind in family_windows(n):
            if kind == INFO:
                records.append(Record(n, str(DEFAULT), quantity, holds))
            else:
                records.append(Record(n, str(DEFAULT), quantity, holds,
                                      **_verdict(holds, format_permutation(gamma(n)))))
    return records


def lemma_3_10(ctx: CheckContext) -> list[Record]:
    records = []
    for n in ctx.ns:
        if n < 5:
            records.append(Record(n, str(DEFAULT), 'first half-decreasing', 'n < 5', verdict=SKIPPED))
            continue
        found = first_half_decreasing(gamma(n))
        records.append(Record(n, str(DEFAULT), 'first half-decreasing', found,
                              **_verdict(found == max_ord(n), format_permutation(gamma(n)))))
    return records


def conj_4_1(ctx: CheckContext) -> list[Record]:
    records = []
    for text in BIJECTION_PAIRS:
        patterns = PatternSet.parse(text)
        for n in ctx.ns:
            records.append(_exhaustive(ctx, n, patterns, everything_periodic).record(
                n, text, 'non-periodic'))
    return records


def conj_4_2(ctx: CheckContext) -> list[Record]:
    records = []
    for text in TWO_POINT_PAIRS:
        patterns = PatternSet.parse(text)
        for n in ctx.ns:
            found = sorted(scan(n, patterns, Members(), jobs=ctx.jobs, ceiling=ctx.ceiling).members)
            allowed = {Permutation.identity(n), Permutation.reverse_identity(n)}
            extra = [p for p in found if p not in allowed]
            value = ';'.join(format_permutation(p) for p in found)
            counterexample = format_permutation(extra[0]) if extra else ''
            records.append(Record(n, text, 'periodic points', value,
                                  **_verdict(not extra, counterexample)))
    return records


def conj_4_3(ctx: CheckContext) -> list[Record]:
    records = []
    for n in ctx.ns:
        if n < 5:
            records.append(Record(n, str(DEFAULT), 'necessary conditions', 'n < 5', verdict=SKIPPED))
            continue
        result = scan(n, DEFAULT, NecessaryConditions(max_ord(n)), jobs=ctx.jobs, ceiling=ctx.ceiling)
        violation = format_permutation(result.violation) if result.violation else ''
        records.append(Record(n, str(DEFAULT), '|M_n|', result.members))
        records.append(Record(n, str(DEFAULT), 'necessary conditions',
                              'hold' if not violation else 'broken',
                              **_verdict(not violation, violation)))
        witness = format_permutation(result.witness) if result.witness else 'none'
        records.append(Record(n, str(DEFAULT), 'non-sufficiency witness', witness))
    return records


def _minimally_sorted_count(ctx: CheckContext, n: int) -> int:
    histogram = scan(n, DEFAULT, OrdHistogram(), jobs=ctx.jobs, ceiling=ctx.ceiling)
    return histogram.counts.get(max_ord(n), 0)


def conj_4_4(ctx: CheckContext) -> list[Record]:
    records = []
    counts: dict[int, int] = {}

    def count(n: int) -> int:
        if n not in counts:
            counts[n] = _minimally_sorted_count(ctx, n)
        return counts[n]

    for n in ctx.ns:
        if n % 2 or n < 2:
            continue
        k = n // 2
        ratio = Fraction(count(n), count(n - 1))
        records.append(Record(n, str(DEFAULT), '|M_n|/|M_n-1|', ratio,
                              **_verdict(ratio == k + 1, f'|M_{n}|={count(n)} |M_{n - 1}|={count(n - 1)}')))
    return records


def _sortable_counts(ctx: CheckContext, n: int) -> dict[int, int]:
    if ctx.reading == PERIODIC:
        histogram = scan(n, DEFAULT, OrdHistogram(), jobs=ctx.jobs, ceiling=ctx.ceiling)
        return {t: sum(c for tail, c in histogram.counts.items() if tail <= t) for t in ctx.ts}
    return {
        t: scan(n, DEFAULT, Members(t=t, reading=ctx.reading, keep=False),
                jobs=ctx.jobs, ceiling=ctx.ceiling).count
        for t in ctx.ts}


def _sort_ratio_record(n: int, t: int, quantity: str, found: int, base: int, length: int) -> Record:
    # factor/2 taken at the given length; compared as 2*found == factor*base so base 0 stays defined
    factor = length + 3 if length % 2 else length + 4
    ratio = Fraction(found, base) if base else f'{found}/0'
    return Record(n, str(DEFAULT), quantity, ratio,
                  **_verdict(2 * found == factor * base,
                             f'|Sort_{t},{n}|={found} |Sort_{t},{n - 2}|={base}'))


def conj_4_5(ctx: CheckContext) -> list[Record]:
    """Two readings of the Sort_t recurrence.

    Literal: the factor is taken at the longer length n. Shifted: the factor
    is taken at the shorter length n-2, which must itself be at least 2t+1.
    """
    records = []
    cache: dict[int, dict[int, int]] = {}

    def counts(n: int) -> dict[int, int]:
        if n not in cache:
            cache[n] = _sortable_counts(ctx, n)
        return cache[n]

    for n in ctx.ns:
        for t in ctx.ts:
            if n < 2 * t + 1 or n < 3:
                continue
            found, base = counts(n)[t], counts(n - 2)[t]
            records.append(_sort_ratio_record(
                n, t, f'|Sort_t={t}|/|Sort_n-2|', found, base, n))
            if n - 2 >= 2 * t + 1:
                records.append(_sort_ratio_record(
                    n, t, f'|Sort_t={t}|/|Sort_n-2| shifted', found, base, n - 2))
    return records


@dataclass(frozen=True)
class Target:
    check: Callable[[CheckContext], list[Record]]
    patterns: str
    summary: str = ''


TARGETS: dict[str, Target] = {
    'theorem-1-2': Target(theorem_1_2, str(DEFAULT), 'max ord over S_n equals 2 floor((n-1)/2)'),
    'theorem-1-1': Target(theorem_1_1, str(DEFAULT), 'periodic exactly when half-decreasing'),
    'west-bound': Target(west_bound, str(CLASSICAL), 'n-1 classical passes sort everything'),
    'catalan': Target(catalan, str(CLASSICAL), '1-stack-sortable counts are Catalan'),
    'zeilberger': Target(zeilberger, str(CLASSICAL), '2-stack-sortable counts'),
    'lemma-3-8': Target(lemma_3_8, str(DEFAULT), 'half-decreasing slots fill one per pass after m'),
    'lemma-3-9': Target(lemma_3_9, str(DEFAULT), 'gamma_n prefix and suffix windows'),
    'lemma-3-10': Target(lemma_3_10, str(DEFAULT), 'gamma_n needs exactly 2m passes'),
    'corollary-3-7': Target(corollary_3_7, str(DEFAULT), 'small values in region after m passes'),
    'proposition-3-1': Target(proposition_3_1, 'pairs of S_3', 'first element comes out last'),
    'region-invariance': Target(region_invariance, str(DEFAULT), 'region values under one pass'),
    'conj-4-1': Target(conj_4_1, ';'.join(BIJECTION_PAIRS), 'bijective pairs'),
    'conj-4-2': Target(conj_4_2, ';'.join(TWO_POINT_PAIRS), 'two periodic points'),
    'conj-4-3': Target(conj_4_3, str(DEFAULT), 'shape of minimally-sorted permutations'),
    'conj-4-4': Target(conj_4_4, str(DEFAULT), '|M_2k| = (k+1)|M_2k-1|'),
    'conj-4-5': Target(conj_4_5, str(DEFAULT), 'Sort_t ratio recurrences'),
}


def run(target: str, ctx: CheckContext) -> list[Record]:
    if target not in TARGETS:
        raise KeyError(target)
    check_ceiling(ctx.n_max, ctx.ceiling)
    logger.info('verifying %s for n=%d..%d', target, ctx.n_min, ctx.n_max)
    return TARGETS[target].check(ctx)
