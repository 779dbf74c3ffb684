"""Valleys, valley-blocks, the valley-boundary and half-decreasing permutations.

Conventions:
  - position 1 only counts as a valley in the permutation of length one;
  - a region may end with a valley-block that has no element after it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from sortengine.errors import DomainError
from sortengine.perms import ltr_flags, reduce


def small_bound(n: int) -> int:
    ''' floor((n-1)/2), the largest small value and the number of sorting rounds '''
    return max(n - 1, 0) // 2


def is_small(perm: Sequence[int], i: int) -> bool:
    if not 1 <= i <= len(perm):
        raise DomainError(f'position {i} outside 1..{len(perm)}')
    return perm[i - 1] <= small_bound(len(perm))


def small_values(n: int) -> range:
    return range(1, small_bound(n) + 1)


def _is_valley(flags: list[bool], i: int) -> bool:
    n = len(flags)
    if i == 1 and n > 1:
        return False
    if not flags[i - 1]:
        return False
    if i + 1 <= n and flags[i]:
        return False
    if i + 2 <= n and not flags[i + 1]:
        return False
    return True


def is_valley(perm: Sequence[int], i: int) -> bool:
    if not 1 <= i <= len(perm):
        raise DomainError(f'position {i} outside 1..{len(perm)}')
    return _is_valley(ltr_flags(perm), i)


def valley_positions(perm: Sequence[int]) -> tuple[int, ...]:
    flags = ltr_flags(perm)
    return tuple(i for i in range(1, len(perm) + 1) if _is_valley(flags, i))


def is_valley_block(perm: Sequence[int], i: int, p: int) -> bool:
    """True iff perm_[i:p] ends at a valley and, inside the reduction of the
    prefix perm_[1:p], reads p-i+1, ..., 2, 1."""
    if not 1 <= i <= p <= len(perm) or not is_valley(perm, p):
        return False
    prefix = reduce(perm[:p])
    return tuple(prefix[i - 1:p]) == tuple(range(p - i + 1, 0, -1))


def _block_ending_from(perm: Sequence[int], valleys: tuple[int, ...], start: int) -> int | None:
    ''' end of the valley-block that starts at `start`, if there is one '''
    for p in valleys:
        if p >= start and is_valley_block(perm, start, p):
            return p
    return None


def _region_from(perm: Sequence[int], valleys: tuple[int, ...], start: int) -> bool:
    n = len(perm)
    pos = start
    while True:
        end = _block_ending_from(perm, valleys, pos)
        if end is None:
            return False
        if end >= n - 1:
            # bare trailing block, or block plus a single element
            return True
        pos = end + 2


@dataclass(frozen=True)
class ValleyDecomposition:
    perm: tuple[int, ...]
    valleys: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...]
    boundary: int
    has_region: bool

    @property
    def region(self) -> tuple[int, int]:
        return (self.boundary, len(self.perm))

    def in_region(self, i: int) -> bool:
        return self.has_region and i >= self.boundary

    def block_values(self) -> list[int]:
        ''' block contents concatenated left to right '''
        return [self.perm[k - 1] for i, j in self.blocks for k in range(i, j + 1)]

    def region_values(self) -> set[int]:
        if not self.has_region:
            return set()
        return set(self.perm[self.boundary - 1:])

    def region_block_values(self) -> set[int]:
        return {
            self.perm[k - 1]
            for i, j in self.blocks if self.in_region(i)
            for k in range(i, j + 1)}

    def annotate(self) -> str:
        ''' e.g. "11 12 | [7 5] 8 [4 3] 6 [2] 9 [1] 10" '''
        starts = {i for i, _ in self.blocks}
        ends = {j for _, j in self.blocks}
        tokens = []
        for pos, value in enumerate(self.perm, start=1):
            if self.has_region and pos == self.boundary:
                tokens.append('|')
            text = str(value)
            if pos in starts:
                text = '[' + text
            if pos in ends:
                text = text + ']'
            tokens.append(text)
        return ' '.join(tokens)

    def __str__(self) -> str:
        return self.annotate()


def decompose(perm: Sequence[int]) -> ValleyDecomposition:
    n = len(perm)
    if n == 0:
        raise DomainError('cannot decompose the empty permutation')
    flags = ltr_flags(perm)
    valleys = tuple(i for i in range(1, n + 1) if _is_valley(flags, i))
    blocks = []
    for p in valleys:
        i = p
        while i > 1 and is_valley_block(perm, i - 1, p):
            i -= 1
        blocks.append((i, p))
    boundary, has_region = n, False
    for start in range(1, n + 1):
        if _region_from(perm, valleys, start):
            boundary, has_region = start, True
            break
    return ValleyDecomposition(
        perm=tuple(perm),
        valleys=valleys,
        blocks=tuple(blocks),
        boundary=boundary,
        has_region=has_region)


def valley_boundary(perm: Sequence[int]) -> int:
    return decompose(perm).boundary


def is_half_decreasing(perm: Sequence[int]) -> bool:
    ''' perm_{n-1} = 1, perm_{n-3} = 2, ..., down to floor((n-1)/2) '''
    n = len(perm)
    return all(perm[n - 2 * k] == k for k in range(1, small_bound(n) + 1))


def half_decreasing_prefix(perm: Sequence[int]) -> int:
    ''' largest k with perm_{n-1}, perm_{n-3}, ..., perm_{n-2k+1} = 1, 2, ..., k '''
    n = len(perm)
    k = 0
    while k < small_bound(n) and perm[n - 2 * (k + 1)] == k + 1:
        k += 1
    return k
