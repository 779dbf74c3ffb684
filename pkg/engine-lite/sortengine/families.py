"""The extremal family gamma_n, its reversed slice delta_n and the
minimally-sorted permutations under s_{123,132}."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from sortengine.dynamics import Members
from sortengine.enumeration import iter_shards
from sortengine.errors import DomainError
from sortengine.machine import DEFAULT, apply
from sortengine.perms import Permutation, reverse
from sortengine.structure import is_half_decreasing, small_bound

GAMMA = 'gamma'
DELTA = 'delta'
KINDS = (GAMMA, DELTA)


@dataclass(frozen=True)
class FamilyElement:
    n: int
    value: Permutation
    kind: str


def max_ord(n: int) -> int:
    ''' 2 * floor((n-1)/2) '''
    return 2 * small_bound(n)


def gamma(n: int) -> Permutation:
    if n < 5:
        raise DomainError(f'gamma is defined for n >= 5, got {n}')
    if n % 2 == 0:
        return Permutation.trusted(gamma(n - 1) + (n,))
    values = (
        [(n + 1) // 2]
        + list(range(2, (n - 1) // 2 + 1))
        + list(range((n + 3) // 2, n - 1))
        + [1, n - 1, n])
    return Permutation.trusted(values)


def delta(n: int) -> Permutation:
    if n < 5:
        raise DomainError(f'delta is defined for odd n >= 5 and even n >= 6, got {n}')
    cut = n - 3 if n % 2 else n - 4
    return reverse(gamma(n).window(2, cut))


def family(kind: str, n: int) -> FamilyElement:
    if kind == GAMMA:
        return FamilyElement(n, gamma(n), kind)
    if kind == DELTA:
        return FamilyElement(n, delta(n), kind)
    raise DomainError(f'unknown family {kind!r}, expected one of {KINDS}')


def first_half_decreasing(perm: Sequence[int], limit: int | None = None) -> int:
    """Least k with s^k_{123,132}(perm) half-decreasing."""
    limit = len(perm) * len(perm) if limit is None else limit
    state = Permutation.trusted(perm)
    for k in range(limit + 1):
        if is_half_decreasing(state):
            return k
        state = apply(state, DEFAULT)
    raise DomainError(f'{perm} is not half-decreasing within {limit} passes')


def meets_necessary_conditions(perm: Sequence[int]) -> bool:
    """The conjectured shape of a minimally-sorted permutation: a large first
    entry, 1 placed just before a run of large entries at the end."""
    n = len(perm)
    large = (n + 1) // 2
    if n < 4 or perm[0] < large:
        return False
    if n % 2:
        return perm[n - 3] == 1 and all(v >= large for v in perm[n - 2:])
    return perm[n - 4] == 1 and all(v >= large for v in perm[n - 3:])


def iter_minimally_sorted(n: int, jobs: int | None = None,
                          ceiling: int | None = None) -> Iterator[Permutation]:
    """Streams the minimally-sorted set shard by shard, in lexicographic order."""
    template = Members(ord_equals=max_ord(n))
    for shard in iter_shards(n, DEFAULT, template, jobs=jobs, ceiling=ceiling):
        yield from shard.members


def minimally_sorted_set(n: int, jobs: int | None = None,
                         ceiling: int | None = None) -> frozenset:
    return frozenset(iter_minimally_sorted(n, jobs=jobs, ceiling=ceiling))
