from typing import TypeAlias
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import (
    ForbiddenPatternOne,
    InvalidInput,
    InvalidPermutation,
    NodeBudgetExceeded,
)

logger = logging.getLogger(__name__)

Permutation: TypeAlias = tuple[int, ...]
LevelCounts: TypeAlias = list[int]

DEFAULT_NODE_BUDGET = 10**7


def validate(entries: Iterable[int]) -> Permutation:
    pi = tuple(entries)
    if not pi:
        raise InvalidPermutation("A permutation needs at least one entry")
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise InvalidPermutation(f"{list(pi)} is not a permutation of 1..{len(pi)}")
    return pi


def parse_permutation(text: str) -> Permutation:
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise InvalidPermutation(f"Unterminated permutation {text!r}")
        parts = [part.strip() for part in text[1:-1].split(",")]
        if not all(part.isdigit() for part in parts):
            raise InvalidPermutation(f"Invalid permutation {text!r}")
        return validate(int(part) for part in parts)
    if not text.isdigit():
        raise InvalidPermutation(f"Invalid permutation {text!r}")
    return validate(int(digit) for digit in text)


def format_permutation(pi: Permutation) -> str:
    if len(pi) > 9:
        return "[" + ",".join(map(str, pi)) + "]"
    return "".join(map(str, pi))


def parent(pi: Permutation) -> Permutation:
    return tuple(value for value in pi if value != len(pi))


def is_increasing(pi: Permutation) -> bool:
    return all(a < b for a, b in zip(pi, pi[1:]))


def is_decreasing(pi: Permutation) -> bool:
    return all(a > b for a, b in zip(pi, pi[1:]))


def _split_top_level(text: str) -> list[str]:
    items, current, depth = [], [], 0
    for char in text:
        if char == "[":
            depth += 1
        elif char == "]":
            depth -= 1
        if char == "," and depth == 0:
            items.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    items.append("".join(current).strip())
    return items


@dataclass(frozen=True)
class PatternSet:
    patterns: tuple[Permutation, ...]

    def __post_init__(self):
        if not self.patterns:
            raise InvalidInput("A pattern set needs at least one pattern")
        if (1,) in self.patterns:
            raise ForbiddenPatternOne()

    @classmethod
    def of(cls, patterns: Iterable[Permutation | str]) -> "PatternSet":
        perms = {
            parse_permutation(pattern) if isinstance(pattern, str) else validate(pattern)
            for pattern in patterns
        }
        return cls(tuple(sorted(perms, key=lambda pi: (len(pi), pi))))

    @classmethod
    def parse(cls, text: str) -> "PatternSet":
        tokens = _split_top_level(text)
        if not all(tokens):
            raise InvalidPermutation(f"Invalid pattern list {text!r}")
        return cls.of(tokens)

    @property
    def t(self) -> int:
        return max(len(pattern) for pattern in self.patterns)

    @cached_property
    def _maxima(self) -> tuple[tuple[Permutation, int], ...]:
        return tuple((pattern, pattern.index(len(pattern))) for pattern in self.patterns)

    def __str__(self) -> str:
        return "{" + ",".join(format_permutation(pattern) for pattern in self.patterns) + "}"


@lru_cache(maxsize=None)
def _bounds(tau: Permutation) -> tuple[tuple[int | None, int | None], ...]:
    # For every pattern index, the earlier indices holding the closest smaller and
    # closest larger value. Enforcing those two is enough for order-isomorphism.
    bounds = []
    for j, value in enumerate(tau):
        below = [l for l in range(j) if tau[l] < value]
        above = [l for l in range(j) if tau[l] > value]
        lower = max(below, key=lambda l: tau[l]) if below else None
        upper = min(above, key=lambda l: tau[l]) if above else None
        bounds.append((lower, upper))
    return tuple(bounds)


def _match(
    sigma: Permutation, tau: Permutation, pinned: int | None = None, at: int = 0
) -> bool:
    k, n = len(tau), len(sigma)
    if k > n:
        return False
    bounds = _bounds(tau)
    chosen: list[int] = []

    def extend(j: int, start: int) -> bool:
        if j == k:
            return True
        stop = n - (k - j) + 1
        if pinned is not None:
            if j == pinned:
                if at < start or at >= stop:
                    return False
                start, stop = at, at + 1
            elif j < pinned:
                stop = min(stop, at - (pinned - j) + 1)
        lower, upper = bounds[j]
        low = chosen[lower] if lower is not None else 0
        high = chosen[upper] if upper is not None else n + 1
        for i in range(start, stop):
            value = sigma[i]
            if low < value < high:
                chosen.append(value)
                if extend(j + 1, i + 1):
                    return True
                chosen.pop()
        return False

    return extend(0, 0)


def occurrences(sigma: Permutation, tau: Permutation) -> Iterator[tuple[int, ...]]:
    """Positions of every occurrence of tau in sigma, in lexicographic order."""
    k, n = len(tau), len(sigma)
    bounds = _bounds(tau)
    chosen: list[int] = []
    positions: list[int] = []

    def extend(j: int, start: int) -> Iterator[tuple[int, ...]]:
        if j == k:
            yield tuple(positions)
            return
        lower, upper = bounds[j]
        low = chosen[lower] if lower is not None else 0
        high = chosen[upper] if upper is not None else n + 1
        for i in range(start, n - (k - j) + 1):
            if low < sigma[i] < high:
                chosen.append(sigma[i])
                positions.append(i)
                yield from extend(j + 1, i + 1)
                chosen.pop()
                positions.pop()

    if k <= n:
        yield from extend(0, 0)


def contains(sigma: Permutation, tau: Permutation) -> bool:
    return _match(sigma, tau)


def avoids_all(sigma: Permutation, B: PatternSet) -> bool:
    return not any(_match(sigma, tau) for tau in B.patterns)


def _insert(pi: Permutation, slot: int) -> Permutation:
    return pi[:slot] + (len(pi) + 1,) + pi[slot:]


def active_slots(pi: Permutation, B: PatternSet) -> list[int]:
    """Slots where inserting len(pi) + 1 keeps the permutation inside T(B)."""
    top = len(pi) + 1
    # Occurrences not using the new maximum already live in pi.
    return [
        slot
        for slot in range(top)
        if not any(
            _match(_insert(pi, slot), tau, pinned=argmax, at=slot)
            for tau, argmax in B._maxima
            if len(tau) <= top
        )
    ]


def _children(pi: Permutation, B: PatternSet) -> list[Permutation]:
    return [_insert(pi, slot) for slot in active_slots(pi, B)]


def children(pi: Permutation, B: PatternSet) -> list[Permutation]:
    if not avoids_all(pi, B):
        raise InvalidPermutation(
            f"{format_permutation(pi)} contains a pattern of {B} and is not in the tree"
        )
    return _children(pi, B)


@dataclass
class NodeBudget:
    """Tree nodes one computation may still generate, shared by all its steps."""

    limit: int = DEFAULT_NODE_BUDGET
    visited: int = 0

    def spend(self, nodes: int) -> None:
        self.visited += nodes
        if self.visited > self.limit:
            raise NodeBudgetExceeded(self.limit)


def _level_counts(
    root: Permutation, B: PatternSet, depth: int, node_budget: int
) -> LevelCounts:
    counts = [1]
    level = [root]
    budget = NodeBudget(node_budget, 1)
    for n in range(2, depth + 1):
        last = n == depth
        next_level = []
        count = 0
        for pi in level:
            kids = _children(pi, B)
            count += len(kids)
            budget.spend(len(kids))
            if not last:
                next_level.extend(kids)
        counts.append(count)
        level = next_level
    return counts


def count_avoiders(
    B: PatternSet, n_max: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> LevelCounts:
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    counts = _level_counts((1,), B, n_max, node_budget)
    logger.debug("Oracle counts for %s up to n=%d: %s", B, n_max, counts)
    return counts


def subtree_profile(
    pi: Permutation,
    B: PatternSet,
    depth: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> LevelCounts:
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    if not avoids_all(pi, B):
        raise InvalidPermutation(
            f"{format_permutation(pi)} contains a pattern of {B} and is not in the tree"
        )
    return _level_counts(pi, B, depth, node_budget)
