import pytest

from .. import catalog
from ..errors import PoleAtEvaluationPoint
from ..perm import PatternSet, count_avoiders
from ..symbolic.ratfunc import series_expand
from .almost_path import solve_almost_path
from .alpha_growing import chain_series, solve_alpha_growing
from .families import AlphaGrowing, classify_graph
from .pipeline import compress


def test_kernel_depending_on_t_has_no_rational_root():
    family = classify_graph(compress(PatternSet.parse("123")))
    with pytest.raises(PoleAtEvaluationPoint):
        chain_series(family.graph, (family.family,))


@pytest.mark.parametrize("patterns", ["123,132", "123,312", "123,2143"])
def test_chain_series_agrees_with_almost_path(patterns):
    family = classify_graph(compress(PatternSet.parse(patterns)))
    as_growing = AlphaGrowing(family.graph, family.families, {}, {})
    assert solve_alpha_growing(as_growing) == solve_almost_path(family)


@pytest.mark.slow
@pytest.mark.parametrize("index", sorted(catalog.GROWING_ALPHA))
def test_alpha_growing_agrees_with_oracle(index):
    B = catalog.get(f"growing-{index}")
    family = classify_graph(compress(B))
    assert isinstance(family, AlphaGrowing), f"{B} is {family.kind}"
    gf = solve_alpha_growing(family)
    expected = count_avoiders(B, 10)
    actual = series_expand(gf, 10)[1:]
    assert actual == expected, f"{B}:\nExpected: {expected}\nGot: {actual}"
