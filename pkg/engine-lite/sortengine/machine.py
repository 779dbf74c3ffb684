"""The right-greedy pattern-avoiding stack machine s_T.

The machine reads its input left to right. Before the next element x is
pushed, the current top is popped to the output for as long as the stack with
x on top, read top to bottom, would contain a pattern of T. When the input is
exhausted the stack is emptied.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from sortengine.errors import PatternSetError, PermutationError
from sortengine.perms import (
    Permutation,
    contains,
    format_compact,
    parse_permutation,
)

logger = logging.getLogger(__name__)

PUSH = 'push'
POP = 'pop'


def _occurs_from_top(stack: list[int], x: int, pattern: tuple[int, ...]) -> bool:
    """True iff (x, then stack elements read from the top down) contains an
    occurrence of pattern whose first letter is x.

    `stack` is stored bottom first, so reading top to bottom walks indices
    downward.
    """
    k = len(pattern)
    if len(stack) < k - 1:
        return False
    chosen = [x]

    def extend(upper: int, depth: int) -> bool:
        if depth == k:
            return True
        target = pattern[depth]
        for idx in range(upper - 1, k - depth - 2, -1):
            value = stack[idx]
            if all((value > chosen[u]) == (target > pattern[u]) for u in range(depth)):
                chosen.append(value)
                if extend(idx, depth + 1):
                    return True
                chosen.pop()
        return False

    return extend(len(stack), 1)


@dataclass(frozen=True)
class PatternSet:
    """The set T of forbidden top-to-bottom stack patterns.

    Patterns are kept sorted so that equal sets compare, hash and print alike.
    """

    patterns: tuple[Permutation, ...]

    def __post_init__(self):
        normalized = tuple(sorted({Permutation(p) for p in self.patterns}))
        if not normalized:
            raise PatternSetError('a pattern set needs at least one pattern')
        for p in normalized:
            if len(p) < 2:
                raise PatternSetError(
                    f'pattern {format_compact(p)} has length {len(p)}; '
                    'length-1 patterns forbid every push')
            if sorted(p) != list(range(1, len(p) + 1)):
                raise PatternSetError(f'pattern {p} is not standard')
        object.__setattr__(self, 'patterns', normalized)

    @classmethod
    def of(cls, *patterns: Sequence[int] | str) -> 'PatternSet':
        return cls(tuple(
            parse_permutation(p) if isinstance(p, str) else Permutation(p)
            for p in patterns))

    @classmethod
    def parse(cls, text: str) -> 'PatternSet':
        ''' "123,132" or "21" '''
        tokens = [t.strip() for t in text.split(',') if t.strip()]
        if not tokens:
            raise PatternSetError(f'no patterns in {text!r}')
        try:
            return cls(tuple(parse_permutation(t) for t in tokens))
        except PermutationError as e:
            raise PatternSetError(f'bad pattern set {text!r}: {e}') from None

    def blocks(self, stack: list[int], x: int) -> bool:
        ''' would pushing x onto stack create a forbidden occurrence '''
        return any(_occurs_from_top(stack, x, p) for p in self.patterns)

    def violated_by(self, top_to_bottom: Sequence[int]) -> bool:
        ''' full re-check of a whole stack, used as the reference test '''
        return any(contains(top_to_bottom, p) for p in self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self):
        return len(self.patterns)

    def __str__(self) -> str:
        return ','.join(format_compact(p) for p in self.patterns)


CLASSICAL = PatternSet.of('21')
DEFAULT = PatternSet.of('123', '132')


@dataclass(frozen=True)
class TraceEvent:
    step: int
    action: str
    element: int
    stack: tuple[int, ...]  # after the action, top first

    def to_line(self) -> str:
        stack = ','.join(str(v) for v in self.stack) or '-'
        return f'{self.step} {self.action} {self.element} {stack}'

    @classmethod
    def from_line(cls, line: str) -> 'TraceEvent':
        step, action, element, stack = line.split()
        return cls(
            step=int(step),
            action=action,
            element=int(element),
            stack=() if stack == '-' else tuple(int(v) for v in stack.split(',')))


@dataclass(frozen=True)
class MachineTrace:
    events: tuple[TraceEvent, ...]

    def states(self) -> list[tuple[int, ...]]:
        ''' every stack state, starting from the empty stack '''
        return [()] + [e.stack for e in self.events]

    def to_lines(self) -> list[str]:
        return [e.to_line() for e in self.events]

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> 'MachineTrace':
        return cls(tuple(TraceEvent.from_line(l) for l in lines if l.strip()))

    def __len__(self):
        return len(self.events)


def apply(perm: Sequence[int], patterns: PatternSet) -> Permutation:
    stack: list[int] = []
    output: list[int] = []
    for x in perm:
        while stack and patterns.blocks(stack, x):
            output.append(stack.pop())
        stack.append(x)
    output.extend(reversed(stack))
    return Permutation.trusted(output)


def apply_traced(perm: Sequence[int], patterns: PatternSet) -> tuple[Permutation, MachineTrace]:
    stack: list[int] = []
    output: list[int] = []
    events: list[TraceEvent] = []

    def record(action: str, element: int):
        events.append(TraceEvent(len(events) + 1, action, element, tuple(reversed(stack))))

    for x in perm:
        while stack and patterns.blocks(stack, x):
            output.append(stack.pop())
            record(POP, output[-1])
        stack.append(x)
        record(PUSH, x)
    while stack:
        output.append(stack.pop())
        record(POP, output[-1])
    return Permutation.trusted(output), MachineTrace(tuple(events))


def apply_reference(perm: Sequence[int], patterns: PatternSet) -> Permutation:
    """The same pass with the whole stack re-checked before every push."""
    stack: list[int] = []
    output: list[int] = []
    for x in perm:
        while stack and patterns.violated_by([x] + stack[::-1]):
            output.append(stack.pop())
        stack.append(x)
    output.extend(reversed(stack))
    return Permutation.trusted(output)


def classical_sort_pass(perm: Sequence[int]) -> Permutation:
    ''' West's stack-sorting map, the increasing-stack case s_21 '''
    return apply(perm, CLASSICAL)
