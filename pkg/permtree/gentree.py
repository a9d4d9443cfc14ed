from typing import TypeAlias
import logging
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from .errors import NotClosed
from .perm import (
    DEFAULT_NODE_BUDGET,
    NodeBudget,
    PatternSet,
    Permutation,
    _insert,
    active_slots,
    format_permutation,
    is_decreasing,
    is_increasing,
    occurrences,
    parent,
)

logger = logging.getLogger(__name__)

# (first slot, last slot, ranks of the new entries placed between them)
Gap: TypeAlias = tuple[int, int, tuple[int, ...]]
Completion: TypeAlias = tuple[Gap, ...]
LabelSignature: TypeAlias = tuple[int, tuple[Completion, ...]]


def _standardize(values: list[int]) -> tuple[int, ...]:
    order = sorted(values)
    return tuple(order.index(value) + 1 for value in values)


@lru_cache(maxsize=None)
def _splits(tau: Permutation) -> tuple[tuple[Permutation, tuple[tuple[int, ...], ...]], ...]:
    """For j = 2 .. |tau| - 1: the pattern of the |tau| - j smallest entries of tau,
    and the ranks of the j largest entries falling in each of its gaps."""
    k = len(tau)
    result = []
    for j in range(2, k):
        cut = k - j
        kept = [q for q in range(k) if tau[q] <= cut]
        words: list[list[int]] = [[] for _ in range(cut + 1)]
        for q, value in enumerate(tau):
            if value > cut:
                words[sum(1 for p in kept if p < q)].append(value - cut)
        result.append((tuple(tau[q] for q in kept), tuple(map(tuple, words))))
    return tuple(result)


def _completions(pi: Permutation, B: PatternSet, active: list[int]) -> set[Completion]:
    n = len(pi)
    found: set[Completion] = set()
    for tau in B.patterns:
        for low, words in _splits(tau):
            for positions in occurrences(pi, low):
                completion = []
                for g, word in enumerate(words):
                    if not word:
                        continue
                    first = positions[g - 1] + 1 if g > 0 else 0
                    last = positions[g] if g < len(positions) else n
                    lo = bisect_left(active, first)
                    hi = bisect_right(active, last) - 1
                    if lo > hi:
                        break
                    completion.append((lo, hi, word))
                else:
                    found.add(tuple(completion))
    return found


def _flatten(completion: Completion) -> list[tuple[int, int, int]]:
    return [(lo, hi, rank) for lo, hi, word in completion for rank in word]


def _implies(c: Completion, d: Completion) -> bool:
    """Every filling of the slots that completes c also completes d."""
    items_c, items_d = _flatten(c), _flatten(d)
    if len(items_d) > len(items_c):
        return False
    ranks_d = tuple(rank for *_, rank in items_d)
    for chosen in combinations(items_c, len(items_d)):
        if all(
            lo_d <= lo_c and hi_c <= hi_d
            for (lo_c, hi_c, _), (lo_d, hi_d, _) in zip(chosen, items_d)
        ) and _standardize([rank for *_, rank in chosen]) == ranks_d:
            return True
    return False


def _reduce(completions: set[Completion]) -> tuple[Completion, ...]:
    # weakest first: fewer entries, then wider slot ranges
    ordered = sorted(
        completions,
        key=lambda c: (len(_flatten(c)), -sum(hi - lo for lo, hi, _ in c), c),
    )
    kept: list[Completion] = []
    for c in ordered:
        if not any(_implies(c, d) for d in kept):
            kept.append(c)
    return tuple(sorted(kept))


def signature_of(pi: Permutation, B: PatternSet) -> LabelSignature:
    """Number of open slots of pi and the partial occurrences its descendants must not complete.

    Every descendant of pi places larger entries into the open slots. It leaves
    T(B) exactly when those entries complete a partial occurrence recorded
    here, or form a pattern of B on their own, so equal signatures mean
    isomorphic subtrees.
    """
    active = active_slots(pi, B)
    return len(active), _reduce(_completions(pi, B, active))


@dataclass(frozen=True)
class LabelClass:
    signature: LabelSignature
    representative: Permutation

    @property
    def rep_length(self) -> int:
        return len(self.representative)

    @property
    def sort_key(self) -> tuple[int, Permutation]:
        return (self.rep_length, self.representative)

    def __str__(self) -> str:
        return format_permutation(self.representative)


def format_children(children: tuple[tuple[object, int], ...]) -> str:
    return ", ".join(
        f"{child}^{multiplicity}" if multiplicity != 1 else str(child)
        for child, multiplicity in children
    )


@dataclass(frozen=True)
class SuccessionRule:
    parent: LabelClass
    children: tuple[tuple[LabelClass, int], ...]

    @property
    def fan_out(self) -> int:
        return sum(multiplicity for _, multiplicity in self.children)

    def __str__(self) -> str:
        return f"{self.parent} ~> {format_children(self.children)}"


@dataclass(frozen=True)
class RuleSet:
    B: PatternSet
    root: LabelClass
    classes: tuple[LabelClass, ...]
    rules: dict[LabelClass, SuccessionRule]
    frontier: frozenset[LabelClass]
    depth_explored: int
    node_budget: int = DEFAULT_NODE_BUDGET

    @property
    def is_closed(self) -> bool:
        return not self.frontier

    @cached_property
    def by_signature(self) -> dict[LabelSignature, LabelClass]:
        return {cls.signature: cls for cls in self.classes}


def explore(
    B: PatternSet, D: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> RuleSet:
    """Expand T(B) breadth-first for D levels, collapsing nodes into label classes.

    The node budget covers every child generated during the whole exploration.
    """
    if D < 2:
        raise ValueError(f"Exploration depth must be at least 2, got {D}")
    budget = NodeBudget(node_budget, 1)
    root = LabelClass(signature_of((1,), B), (1,))
    classes = {root.signature: root}
    rules: dict[LabelClass, SuccessionRule] = {}
    level = [root]
    depth = 1
    while level and depth < D:
        observed = []
        discovered: dict[LabelSignature, Permutation] = {}
        for cls in level:
            pi = cls.representative
            kids = [_insert(pi, slot) for slot in active_slots(pi, B)]
            budget.spend(len(kids))
            signatures = [signature_of(child, B) for child in kids]
            for signature, child in zip(signatures, kids):
                if signature in classes:
                    continue
                if signature not in discovered or child < discovered[signature]:
                    discovered[signature] = child
            observed.append((cls, signatures))
        level = sorted(
            (LabelClass(signature, rep) for signature, rep in discovered.items()),
            key=lambda cls: cls.sort_key,
        )
        classes.update((cls.signature, cls) for cls in level)
        for cls, signatures in observed:
            counts = Counter(classes[signature] for signature in signatures)
            rules[cls] = SuccessionRule(
                cls,
                tuple(sorted(counts.items(), key=lambda item: item[0].sort_key)),
            )
        depth += 1
        logger.debug("Depth %d: %d new classes", depth, len(level))
    ordered = tuple(sorted(classes.values(), key=lambda cls: cls.sort_key))
    logger.info(
        "Explored %s to depth %d: %d classes, %d on the frontier, %d nodes generated",
        B,
        depth,
        len(ordered),
        len(level),
        budget.visited,
    )
    return RuleSet(B, root, ordered, rules, frozenset(level), depth, node_budget)


def finite_label_test(B: PatternSet) -> bool:
    """Some pattern grows from an increasing and some from a decreasing permutation."""
    parents = [parent(tau) for tau in B.patterns]
    return any(map(is_increasing, parents)) and any(map(is_decreasing, parents))


@dataclass(frozen=True)
class TransitionMatrix:
    class_order: tuple[LabelClass, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.class_order)

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]


def transition_matrix(rs: RuleSet) -> TransitionMatrix:
    if not rs.is_closed:
        raise NotClosed(
            f"{len(rs.frontier)} classes of {rs.B} are unexpanded at depth {rs.depth_explored}"
        )
    index = {cls: i for i, cls in enumerate(rs.classes)}
    entries = [[0] * len(index) for _ in index]
    for cls, rule in rs.rules.items():
        for child, multiplicity in rule.children:
            entries[index[cls]][index[child]] = multiplicity
    return TransitionMatrix(rs.classes, tuple(map(tuple, entries)))
