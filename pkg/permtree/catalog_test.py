import pytest

from . import catalog
from .errors import InvalidInput
from .perm import PatternSet, count_avoiders


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_catalog_entries_parse(name: str):
    B = catalog.get(name)
    assert str(B) == "{" + catalog.CATALOG[name] + "}"


def test_growing_sets_have_eleven_patterns_of_length_four():
    for index in catalog.GROWING_ALPHA:
        B = catalog.get(f"growing-{index}")
        assert len(B.patterns) == 11, f"growing-{index}"
        assert B.t == 4


def test_unknown_name():
    with pytest.raises(InvalidInput):
        catalog.get("fibonacci")


@pytest.mark.parametrize(
    "k, expected",
    [
        (4, "123,312,2143"),
        (5, "123,312,21543"),
        (7, "123,312,2176543"),
    ],
)
def test_almost_path_family(k: int, expected: str):
    assert catalog.almost_path_family(k) == PatternSet.parse(expected)


def test_almost_path_family_needs_four():
    with pytest.raises(InvalidInput):
        catalog.almost_path_family(3)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("catalan", [1, 2, 5, 14, 42, 132]),
        ("binary", [1, 2, 4, 8, 16, 32]),
        ("pell", [1, 2, 5, 12, 29, 70]),
        ("finite-43215", [1, 2, 5, 14, 41, 122]),
    ],
)
def test_catalog_counts(name: str, expected: list[int]):
    assert count_avoiders(catalog.get(name), 6) == expected
