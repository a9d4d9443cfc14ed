"""Named pattern sets with known generating trees."""

from .errors import InvalidInput
from .perm import PatternSet

_GROWING = {
    1: "1324,1423,2143,2413,3124,3142,3412,4132,4213,4231,4312",
    2: "1324,1423,2143,2413,3124,3142,4123,4132,4213,4231,4312",
    3: "1324,1423,2143,2413,3124,3142,3412,4123,4132,4213,4231",
    4: "1324,1423,2143,3124,3142,3412,4123,4132,4213,4231,4312",
    5: "1324,1423,2143,2413,3124,3142,3412,4123,4132,4231,4312",
    6: "1243,1324,1342,1423,1432,2143,2413,3142,3412,4132,4231",
    7: "1324,1423,2143,2413,3124,3142,3412,4123,4132,4213,4312",
    8: "1324,1423,2413,3124,3142,3412,4123,4132,4213,4231,4312",
    9: "1243,1324,1342,1423,1432,2143,2413,2431,3142,3412,4132",
    10: "1234,1243,1324,1342,1423,2134,2314,2341,3124,3412,4123",
}

# number of parallel families in the label graph of each growing-N set
GROWING_ALPHA = {1: 3, 2: 3, 3: 3, 4: 3, 5: 3, 6: 4, 7: 4, 8: 2, 9: 2, 10: 3}

CATALOG: dict[str, str] = {
    "catalan": "123",
    "finite-43215": "123,43215",
    "binary": "123,132",
    "pell": "123,1432,2143",
    "almost-312": "123,312",
    "almost-2143": "123,2143",
    "almost-21543": "123,312,21543",
    "backward-a": "1243,1324,1342,1423,1432,2143,2413,2431,3142,4132",
    "backward-b": "1234,1243,1324,1342,1423,2134,2314,2341,3124,4123",
    **{f"growing-{i}": patterns for i, patterns in _GROWING.items()},
}


def get(name: str) -> PatternSet:
    if name not in CATALOG:
        raise InvalidInput(
            f"Unknown pattern set {name!r}, expected one of {', '.join(CATALOG)}"
        )
    return PatternSet.parse(CATALOG[name])


def almost_path_family(k: int) -> PatternSet:
    """{123, 312, 21k(k-1)...3}"""
    if k < 4:
        raise InvalidInput(f"almost_path_family needs k >= 4, got {k}")
    tail = tuple(range(k, 2, -1))
    return PatternSet.of([(1, 2, 3), (3, 1, 2), (2, 1) + tail])
