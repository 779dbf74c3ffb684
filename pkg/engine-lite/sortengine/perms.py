"""Permutation values and the elementary operations every other module uses.

Positions are 1-based throughout. A permutation is any sequence of distinct
positive integers; it is *standard* when its values are exactly 1..n.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Sequence

import numpy as np

from sortengine.errors import DomainError, PermutationError

_COMPACT = re.compile(r'^[1-9]+$')


class Permutation(tuple):
    """An immutable sequence of distinct positive integers.

    Subclasses tuple so that permutations hash and compare like plain tuples
    and can be used directly as keys in orbit tables.
    """

    __slots__ = ()

    def __new__(cls, elements: Iterable[int] = ()):
        values = tuple(int(v) for v in elements)
        for v in values:
            if v < 1:
                raise PermutationError(f'elements must be positive, got {v}')
        if len(set(values)) != len(values):
            raise PermutationError(f'elements must be distinct: {values}')
        return tuple.__new__(cls, values)

    @classmethod
    def trusted(cls, values: Iterable[int]) -> 'Permutation':
        ''' wraps values already known to be valid, skipping validation '''
        return tuple.__new__(cls, values)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls.trusted(range(1, n + 1))

    @classmethod
    def reverse_identity(cls, n: int) -> 'Permutation':
        return cls.trusted(range(n, 0, -1))

    @classmethod
    def parse(cls, text: str) -> 'Permutation':
        return parse_permutation(text)

    @property
    def n(self) -> int:
        return len(self)

    def at(self, i: int) -> int:
        ''' 1-based access, no wrapping '''
        if not 1 <= i <= len(self):
            raise DomainError(f'position {i} outside 1..{len(self)}')
        return self[i - 1]

    def wrapped(self, i: int) -> int:
        ''' 1-based access with the index reduced modulo n into 1..n '''
        if not self:
            raise DomainError('the empty permutation has no positions')
        return self[(i - 1) % len(self)]

    def window(self, i: int, j: int) -> 'Permutation':
        ''' the inclusive 1-based slice pi_[i:j]; empty when j < i '''
        if j < i:
            return Permutation.trusted(())
        return Permutation.trusted(self[max(i, 1) - 1:j])

    def is_standard(self) -> bool:
        return is_standard(self)

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f'Permutation({format_permutation(self)})'


def parse_permutation(text: str) -> Permutation:
    """Parse comma separated decimals ("5,2,4,3,1") or a compact digit string
    ("52431", only meaningful for n <= 9)."""
    cleaned = text.strip()
    if not cleaned:
        return Permutation.trusted(())
    if ',' in cleaned or ' ' in cleaned:
        tokens = [t for t in re.split(r'[,\s]+', cleaned) if t]
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise PermutationError(f'not a permutation: {text!r}') from None
        return Permutation(values)
    if _COMPACT.match(cleaned):
        return Permutation(int(c) for c in cleaned)
    raise PermutationError(f'not a permutation: {text!r}')


def format_permutation(perm: Sequence[int]) -> str:
    text = ','.join(str(v) for v in perm)
    # a lone value above 9 would read back as a digit string
    if len(perm) == 1 and perm[0] > 9:
        text += ','
    return text


def format_compact(perm: Sequence[int]) -> str:
    ''' digit string form, only for values below 10 '''
    if any(v > 9 for v in perm):
        raise PermutationError('compact form needs every value below 10')
    return ''.join(str(v) for v in perm)


def is_standard(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(1, len(perm) + 1))


def reduce(perm: Sequence[int]) -> Permutation:
    ''' replaces every element by its rank '''
    if not perm:
        raise DomainError('cannot reduce the empty permutation')
    ranks = {v: r for r, v in enumerate(sorted(perm), start=1)}
    return Permutation.trusted(ranks[v] for v in perm)


def contains(perm: Sequence[int], pattern: Sequence[int]) -> bool:
    """True iff some subsequence of perm is order-isomorphic to pattern.

    Extends a partial occurrence one position at a time and abandons a branch
    as soon as the chosen values disagree with the pattern's relative order.
    """
    k, n = len(pattern), len(perm)
    if k == 0:
        return True
    if k > n:
        return False
    chosen: list[int] = []

    def extend(start: int, depth: int) -> bool:
        if depth == k:
            return True
        target = pattern[depth]
        for pos in range(start, n - (k - depth) + 1):
            value = perm[pos]
            if all((value > chosen[u]) == (target > pattern[u]) for u in range(depth)):
                chosen.append(value)
                if extend(pos + 1, depth + 1):
                    return True
                chosen.pop()
        return False

    return extend(0, 0)


def avoids(perm: Sequence[int], pattern: Sequence[int]) -> bool:
    return not contains(perm, pattern)


def index_of(perm: Sequence[int], value: int) -> int:
    try:
        return list(perm).index(value) + 1
    except ValueError:
        raise DomainError(f'{value} does not occur in {format_permutation(perm)}') from None


def reverse(perm: Sequence[int]) -> Permutation:
    return Permutation.trusted(reversed(tuple(perm)))


def concat(left: Sequence[int], right: Sequence[int]) -> Permutation:
    return Permutation(tuple(left) + tuple(right))


def ltr_minima(perm: Sequence[int]) -> tuple[int, ...]:
    ''' positions i with perm_i = min(perm_[1:i]), ascending '''
    positions = []
    low = None
    for i, v in enumerate(perm, start=1):
        if low is None or v < low:
            low = v
            positions.append(i)
    return tuple(positions)


def ltr_flags(perm: Sequence[int]) -> list[bool]:
    flags = []
    low = None
    for v in perm:
        flag = low is None or v < low
        if flag:
            low = v
        flags.append(flag)
    return flags


def is_ltr_min(perm: Sequence[int], i: int) -> bool:
    if not 1 <= i <= len(perm):
        raise DomainError(f'position {i} outside 1..{len(perm)}')
    return perm[i - 1] == min(perm[:i])


def descent_count(perm: Sequence[int]) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)


def symmetric_group(n: int, first: int | None = None) -> Iterator[Permutation]:
    """All of S_n in lexicographic order, optionally only those starting with
    `first`."""
    if n < 0:
        raise DomainError(f'n must be non-negative, got {n}')
    if first is None:
        for values in itertools.permutations(range(1, n + 1)):
            yield Permutation.trusted(values)
        return
    rest = [v for v in range(1, n + 1) if v != first]
    for values in itertools.permutations(rest):
        yield Permutation.trusted((first,) + values)


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    ''' a uniform element of S_n '''
    return Permutation.trusted(int(v) for v in rng.permutation(n) + 1)
