import dataclasses
from collections import Counter

import pytest

from .gentree import LabelClass, explore, signature_of
from .induction import (
    FamilyTemplate,
    FixedChild,
    GeneralRule,
    MemberChild,
    MemberRef,
    Rk,
    format_multiplicity,
    induce_general_rules,
    k,
    multiplicity_gf,
    multiplicity_series,
    templates_of,
    verify_general_rules,
)
from .perm import PatternSet, count_avoiders
from .symbolic.ratfunc import series_expand, x


def compress(patterns: str, depth: int | None = None):
    B = PatternSet.parse(patterns)
    return induce_general_rules(explore(B, depth or 2 * B.t + 4))


def rule_texts(rules) -> list[str]:
    return [rule.format(rules.families) for rule in rules.general_rules.values()]


def family_by_template(rules, text: str):
    matches = [f for f in rules.families.values() if str(f.template) == text]
    assert matches, f"No family {text} among {[str(f) for f in rules.families.values()]}"
    return matches[0]


def level_counts(rules, n_max: int) -> list[int]:
    weights: Counter = Counter({rules.root: 1})
    counts = [1]
    for _ in range(n_max - 1):
        following: Counter = Counter()
        for node, weight in weights.items():
            for child, multiplicity in rules.children_of(node):
                following[child] += weight * multiplicity
        weights = following
        counts.append(sum(weights.values()))
    return counts


@pytest.mark.parametrize(
    "template, n, expected",
    [
        (FamilyTemplate("descending", (), ()), 4, (4, 3, 2, 1)),
        (FamilyTemplate("ascending", (), ()), 3, (1, 2, 3)),
        (FamilyTemplate("descending", (), (1, 3, 2)), 6, (6, 5, 4, 1, 3, 2)),
        (FamilyTemplate("descending", (), (1, 3, 2)), 3, (1, 3, 2)),
        (FamilyTemplate("descending", (), (1, 2)), 2, (1, 2)),
        (FamilyTemplate("ascending", (0, -1), ()), 5, (5, 4, 1, 2, 3)),
    ],
)
def test_template_instance(template, n, expected):
    assert template.instance(n) == expected


def test_template_instance_below_minimum_length():
    assert FamilyTemplate("descending", (), (1, 3, 2)).instance(2) is None


@pytest.mark.parametrize(
    "template, offset, expected",
    [
        (FamilyTemplate("descending", (), ()), 0, "k(k-1)...1"),
        (FamilyTemplate("descending", (), ()), 1, "(k+1)k...1"),
        (FamilyTemplate("descending", (), (1, 3, 2)), 0, "k(k-1)...4132"),
        (FamilyTemplate("descending", (), (1, 2)), 0, "k(k-1)...312"),
        (FamilyTemplate("ascending", (), ()), 0, "12...k"),
    ],
)
def test_template_display(template, offset, expected):
    assert template.display(offset) == expected


def test_templates_of_decodes_to_the_permutation():
    pi = (4, 3, 1, 2)
    templates = templates_of(pi)
    assert FamilyTemplate("descending", (), (1, 2)) in templates
    assert FamilyTemplate("ascending", (0, -1), ()) in templates
    for template in templates:
        assert template.instance(len(pi)) == pi, f"{template} does not rebuild {pi}"


def test_templates_of_needs_a_run_of_two():
    assert templates_of((2, 4, 1, 3)) == []


@pytest.mark.parametrize(
    "p, expected",
    [(Rk.one, ""), (Rk(3), "^3"), (k, "^k"), (k - 3, "^(k - 3)")],
)
def test_format_multiplicity(p, expected):
    assert format_multiplicity(p) == expected


def test_closed_rule_set_passes_through():
    rules = compress("123,43215", 6)
    assert rules.families == {}
    assert rules.general_rules == {}
    assert len(rules.fixed_rules) == 3


def test_binary_example_general_rule():
    rules = compress("123,132")
    assert rule_texts(rules) == ["k(k-1)...1 ~> 12^k, (k+1)k...1  (k>=1)"]
    family = family_by_template(rules, "k(k-1)...1")
    assert family.k_min == 1
    # 312 grows like the root, so 12 has a single child class
    fixed = {str(cls): str(rule) for cls, rule in rules.fixed_rules.items()}
    assert fixed["12"] == "12 ~> 1"


def test_pell_example_general_rule():
    rules = compress("123,1432,2143")
    family = family_by_template(rules, "k(k-1)...1")
    assert family.k_min == 1
    rule = rules.general_rules[family.name]
    twelve = [c for c in rule.children if isinstance(c, FixedChild) and str(c.target) == "12"]
    assert twelve and twelve[0].multiplicity == k
    assert MemberChild(family.name, 1, Rk.one) in rule.children
    fixed = {str(cls): str(rule) for cls, rule in rules.fixed_rules.items()}
    assert fixed["12"] == "12 ~> 21, 132"
    assert fixed["132"] == "132 ~> 1"


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_descending_runs_over_4132_collapse(n):
    B = PatternSet.parse("123,1432,2143")
    pi = FamilyTemplate("descending", (), (1, 3, 2)).instance(n)
    assert signature_of(pi, B) == signature_of(tuple(range(n - 3, 0, -1)), B)


def test_member_nodes_and_lengths():
    rules = compress("123,132")
    family = family_by_template(rules, "k(k-1)...1")
    assert rules.member_node(family.name, 5) == MemberRef(family.name, 5)
    assert rules.member_node(family.name, 2) == MemberRef(family.name, 2)
    assert isinstance(rules.node_of(rules.root), MemberRef)
    assert rules.length_of(MemberRef(family.name, 7)) == 7


@pytest.mark.parametrize(
    "patterns", ["123", "123,132", "123,312", "123,2143", "123,1432,2143"]
)
def test_compression_is_lossless(patterns):
    rules = compress(patterns)
    B = rules.ruleset.B
    assert level_counts(rules, 13) == count_avoiders(B, 13)


@pytest.mark.parametrize("patterns", ["123", "123,132", "123,312", "123,1432,2143"])
def test_general_rules_verify(patterns):
    rules = compress(patterns)
    result = verify_general_rules(rules)
    assert result, result.counterexample
    assert result.instances == rules.ruleset.B.t - 1


@pytest.mark.slow
def test_general_rules_verify_with_longer_patterns():
    rules = compress("123,312,21543")
    result = verify_general_rules(rules)
    assert result, result.counterexample
    assert result.instances == 4


@pytest.mark.parametrize("patterns", ["123,132", "123,312"])
def test_general_rules_hold_past_the_certificate(patterns):
    rules = compress(patterns)
    t = rules.ruleset.B.t
    assert verify_general_rules(rules, extra=t + 3)


def test_corrupted_multiplicity_is_rejected():
    rules = compress("123,132")
    name = family_by_template(rules, "k(k-1)...1").name
    rule = rules.general_rules[name]
    corrupted = GeneralRule(
        name,
        rule.k_min,
        tuple(
            FixedChild(c.target, c.multiplicity + 1) if isinstance(c, FixedChild) else c
            for c in rule.children
        ),
    )
    broken = dataclasses.replace(
        rules, general_rules={**rules.general_rules, name: corrupted}
    )
    result = verify_general_rules(broken)
    assert not result
    assert result.family == name
    assert result.k == rule.k_min


def test_multiplicity_series_examples():
    assert multiplicity_series(k + 2, 0) == (2 - x) / (1 - x) ** 2
    assert x * multiplicity_series(k - 1, 3) == x * (2 - x) / (1 - x) ** 2
    assert multiplicity_series(Rk.zero, 0) == 0


def test_multiplicity_series_with_exceptional_values():
    # 5, then j + 2 for j >= 1
    f = multiplicity_series(k + 2, 0, exceptional=(5,))
    assert series_expand(f, 4) == [5, 3, 4, 5, 6]


@pytest.mark.parametrize(
    "p, start",
    [(k + 2, 0), (k - 1, 3), (k**2 - k + 1, 2), (Rk(3), 1), (k * (k - 1) * (k - 2), 0)],
)
def test_multiplicity_gf_matches_polynomial(p, start):
    w = LabelClass((1,), (1,))
    gf = multiplicity_gf(GeneralRule("a", start, (FixedChild(w, p),)), w)
    actual = series_expand(gf.closed_form, 25)
    expected = [p(start + j) for j in range(26)]
    assert actual == expected, f"Coefficients of {p}:\nExpected: {expected}\nGot: {actual}"


def test_multiplicity_gf_requires_fixed_child():
    w = LabelClass((1,), (1,))
    with pytest.raises(ValueError):
        multiplicity_gf(GeneralRule("a", 1, ()), w)
