import random
from itertools import permutations

import pytest

from .errors import ForbiddenPatternOne, InvalidPermutation, NodeBudgetExceeded
from .perm import (
    NodeBudget,
    PatternSet,
    active_slots,
    avoids_all,
    children,
    contains,
    count_avoiders,
    format_permutation,
    occurrences,
    parent,
    parse_permutation,
    subtree_profile,
)


def p(text: str):
    return parse_permutation(text)


def B(text: str) -> PatternSet:
    return PatternSet.parse(text)


def brute_contains(sigma, tau) -> bool:
    from itertools import combinations

    order = sorted(range(len(tau)), key=lambda i: tau[i])
    for positions in combinations(range(len(sigma)), len(tau)):
        values = [sigma[i] for i in positions]
        if sorted(range(len(values)), key=lambda i: values[i]) == order:
            return True
    return False


@pytest.mark.parametrize(
    "sigma, tau, expected",
    [
        ("4213", "21", True),
        ("2143", "2143", True),
        ("2143", "123", False),
        ("54321", "12", False),
        ("31524", "132", True),
        ("1", "12", False),
    ],
)
def test_contains(sigma: str, tau: str, expected: bool):
    assert contains(p(sigma), p(tau)) == expected


def test_contains_agrees_with_brute_force():
    rng = random.Random(7)
    patterns = [tau for k in (2, 3, 4) for tau in permutations(range(1, k + 1))]
    for _ in range(200):
        n = rng.randint(1, 8)
        sigma = tuple(rng.sample(range(1, n + 1), n))
        tau = rng.choice(patterns)
        assert contains(sigma, tau) == brute_contains(sigma, tau), (
            f"contains({sigma}, {tau}) disagrees with exhaustive search"
        )


def test_contains_is_monotone():
    sigma = p("3517246")
    for tau in permutations(range(1, 5)):
        if contains(sigma, tau):
            for rho in permutations(range(1, 4)):
                if contains(tau, rho):
                    assert contains(sigma, rho)


@pytest.mark.parametrize(
    "sigma, patterns, expected",
    [
        ("2143", "123", True),
        ("1234", "123", False),
        ("21", "123,43215", True),
        ("43215", "123,43215", False),
    ],
)
def test_avoids_all(sigma: str, patterns: str, expected: bool):
    assert avoids_all(p(sigma), B(patterns)) == expected


@pytest.mark.parametrize(
    "pi, patterns, expected",
    [
        ("21", "123", ["321", "231", "213"]),
        ("1", "123", ["21", "12"]),
        ("12", "123", ["312", "132"]),
        ("1", "12,21", []),
    ],
)
def test_children(pi: str, patterns: str, expected: list[str]):
    actual = [format_permutation(child) for child in children(p(pi), B(patterns))]
    assert actual == expected


def test_children_rejects_permutation_outside_tree():
    with pytest.raises(InvalidPermutation):
        children(p("123"), B("123"))


def test_children_invert_parent():
    patterns = B("132,4321")
    for pi in [p("1"), p("21"), p("312"), p("3412")]:
        for child in children(pi, patterns):
            assert parent(child) == pi


@pytest.mark.parametrize(
    "patterns, n_max, expected",
    [
        ("123", 4, [1, 2, 5, 14]),
        ("123", 6, [1, 2, 5, 14, 42, 132]),
        ("123,132", 5, [1, 2, 4, 8, 16]),
        ("12,21", 3, [1, 0, 0]),
        ("123,43215", 6, [1, 2, 5, 14, 41, 122]),
    ],
)
def test_count_avoiders(patterns: str, n_max: int, expected: list[int]):
    assert count_avoiders(B(patterns), n_max) == expected


def test_count_avoiders_respects_node_budget():
    with pytest.raises(NodeBudgetExceeded):
        count_avoiders(B("123"), 8, node_budget=100)


def test_tree_partition_property():
    rng = random.Random(11)
    s4 = list(permutations(range(1, 5)))
    for _ in range(5):
        patterns = PatternSet.of(rng.sample(s4, rng.randint(1, 6)))
        counts = count_avoiders(patterns, 7)
        for n in range(1, 8):
            expected = sum(
                1 for sigma in permutations(range(1, n + 1)) if avoids_all(sigma, patterns)
            )
            assert counts[n - 1] == expected, (
                f"|S_{n}({patterns})|: expected {expected}, got {counts[n - 1]}"
            )


@pytest.mark.parametrize(
    "pi, patterns, depth, expected",
    [
        ("312", "123", 2, [1, 3]),
        ("12", "123", 3, [1, 2, 5]),
        ("1", "123", 1, [1]),
        ("21", "123,43215", 5, [1, 3, 9, 27, 81]),
    ],
)
def test_subtree_profile(pi: str, patterns: str, depth: int, expected: list[int]):
    assert subtree_profile(p(pi), B(patterns), depth) == expected


def test_root_profile_is_oracle_prefix():
    patterns = B("123,2143")
    assert subtree_profile(p("1"), patterns, patterns.t) == count_avoiders(
        patterns, patterns.t
    )


@pytest.mark.parametrize(
    "text, expected",
    [
        ("123,43215", ((1, 2, 3), (4, 3, 2, 1, 5))),
        ("[3,1,2],[2,1,4,3]", ((3, 1, 2), (2, 1, 4, 3))),
        ("132, 123", ((1, 2, 3), (1, 3, 2))),
        ("[10,9,8,7,6,5,4,3,2,1]", ((10, 9, 8, 7, 6, 5, 4, 3, 2, 1),)),
    ],
)
def test_parse_pattern_set(text: str, expected):
    assert B(text).patterns == expected


@pytest.mark.parametrize("text", ["", "12,,21", "122", "0", "13", "[1,2", "abc"])
def test_parse_pattern_set_rejects_invalid(text: str):
    with pytest.raises(InvalidPermutation):
        B(text)


def test_parse_pattern_set_rejects_one():
    with pytest.raises(ForbiddenPatternOne):
        B("1,123")


def test_pattern_set_length_and_text():
    patterns = B("123,43215")
    assert patterns.t == 5
    assert str(patterns) == "{123,43215}"


def test_format_long_permutation():
    assert format_permutation(tuple(range(10, 0, -1))) == "[10,9,8,7,6,5,4,3,2,1]"


@pytest.mark.parametrize(
    "sigma, tau, expected",
    [
        ("4312", "21", [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        ("4312", "12", [(2, 3)]),
        ("123", "21", []),
        ("12", "123", []),
        ("2413", "1", [(0,), (1,), (2,), (3,)]),
    ],
)
def test_occurrences(sigma: str, tau: str, expected):
    assert list(occurrences(p(sigma), p(tau))) == expected


@pytest.mark.parametrize(
    "pi, patterns, expected",
    [
        ("12", "123", [0, 1]),
        ("312", "123", [0, 1, 2]),
        ("12", "123,132", [0]),
        ("1", "12,21", []),
    ],
)
def test_active_slots(pi: str, patterns: str, expected: list[int]):
    assert active_slots(p(pi), B(patterns)) == expected


def test_node_budget_is_shared_between_steps():
    budget = NodeBudget(10)
    budget.spend(6)
    budget.spend(4)
    with pytest.raises(NodeBudgetExceeded):
        budget.spend(1)
    assert budget.visited == 11
