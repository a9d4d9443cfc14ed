import pytest

from ..gentree import explore
from ..induction import induce_general_rules
from ..perm import PatternSet, count_avoiders
from .pipeline import compress
from .series import series_dp


@pytest.mark.parametrize(
    "patterns, expected",
    [
        ("123,132", [0, 1, 2, 4, 8, 16, 32, 64, 128]),
        ("123", [0, 1, 2, 5, 14, 42, 132, 429, 1430]),
        ("123,1432,2143", [0, 1, 2, 5, 12, 29, 70, 169, 408]),
        ("12,21", [0, 1, 0, 0, 0, 0, 0, 0, 0]),
    ],
)
def test_series_dp(patterns, expected):
    rules = compress(PatternSet.parse(patterns))
    assert series_dp(rules, 8).as_ints() == expected


def test_series_dp_of_closed_rules():
    B = PatternSet.parse("123,43215")
    rules = induce_general_rules(explore(B, 12))
    assert series_dp(rules, 12).as_ints()[1:] == count_avoiders(B, 12)


def test_series_dp_order_must_be_positive():
    rules = compress(PatternSet.parse("123,132"))
    with pytest.raises(ValueError):
        series_dp(rules, 0)
