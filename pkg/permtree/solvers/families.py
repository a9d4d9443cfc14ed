from typing import TypeAlias
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

from ..gentree import LabelClass, TransitionMatrix, transition_matrix
from ..induction import (
    CompressedRules,
    Family,
    FixedChild,
    GeneralRule,
    MemberChild,
    MemberRef,
    Node,
    RangeChild,
    Rk,
    constant_value,
)
from ..json import JSONObject
from ..perm import format_permutation

logger = logging.getLogger(__name__)


def _rebase_point(rules: CompressedRules) -> int:
    m = max((1, *(family.k_min for family in rules.families.values())))
    for rule in rules.general_rules.values():
        for child in rule.children:
            match child:
                case FixedChild(target, _):
                    ref = rules.membership.get(target)
                    m = max(m, ref.index + 1 if ref is not None else target.rep_length)
                case RangeChild(_, first):
                    m = max(m, first)
                case MemberChild(family, -1, _):
                    m = max(m, rules.families[family].k_min + 1)
    return m


def _split_ranges(rule: GeneralRule, m: int, families: dict[str, Family]) -> GeneralRule:
    children: list = []
    for child in rule.children:
        if isinstance(child, RangeChild) and child.first < m:
            members = families[child.family].members
            children.extend(
                FixedChild(members[j], Rk.one) for j in range(child.first, m)
            )
            children.append(RangeChild(child.family, m))
        else:
            children.append(child)
    return GeneralRule(rule.family, max(rule.k_min, m), tuple(children))


@dataclass(frozen=True)
class LabelGraph:
    """The label graph split at base length m.

    Family members of length >= m form the chains v_0, v_1, ... (v_j of length
    m + j); every other class is a node of W.
    """

    rules: CompressedRules
    m: int
    general_rules: dict[str, GeneralRule] = field(compare=False)
    W: tuple[LabelClass, ...]
    extended: tuple[LabelClass, ...]

    @property
    def families(self) -> dict[str, Family]:
        return self.rules.families

    @cached_property
    def _in_w(self) -> frozenset[LabelClass]:
        return frozenset(self.W)

    def node(self, node: Node) -> Node:
        if isinstance(node, MemberRef):
            if node.index < self.m:
                return self.families[node.family].members[node.index]
            return node
        ref = self.rules.membership.get(node)
        if ref is not None and ref.index >= self.m:
            return ref
        return node

    def in_w(self, node: Node) -> bool:
        return isinstance(node, LabelClass) and node in self._in_w

    def length(self, node: Node) -> int:
        return self.rules.length_of(node)

    def label(self, node: Node) -> str:
        return self.rules.label_of(node)

    def children(self, node: Node) -> list[tuple[Node, int]]:
        node = self.node(node)
        if isinstance(node, MemberRef):
            found = self.general_rules[node.family].specialize(node.index, self.rules)
        else:
            ref = self.rules.membership.get(node)
            if ref is not None and ref.index >= self.families[ref.family].k_min:
                rule = self.rules.general_rules[ref.family]
                found = rule.specialize(ref.index, self.rules)
            else:
                found = list(self.rules.fixed_rules[node].children)
        return [(self.node(child), multiplicity) for child, multiplicity in found]

    def to_json(self) -> JSONObject:
        return {
            "m": self.m,
            "W": [self.label(w) for w in self.W],
            "extended_W": [self.label(w) for w in self.extended],
            "families": [
                {
                    "name": family.name,
                    "template": str(family.template),
                    "k_min": family.k_min,
                    "v0": format_permutation(family.instance(self.m)),
                }
                for family in self.families.values()
            ],
        }


def rebase(rules: CompressedRules) -> LabelGraph:
    m = _rebase_point(rules)
    general_rules = {
        name: _split_ranges(rule, m, rules.families)
        for name, rule in rules.general_rules.items()
    }
    W = tuple(
        cls
        for cls in rules.ruleset.classes
        if (ref := rules.membership.get(cls)) is None or ref.index < m
    )
    extended = tuple(w for w in W if rules.length_of(w) > m)
    logger.debug("Base length m=%d, W=%s", m, ", ".join(map(str, W)))
    return LabelGraph(rules, m, general_rules, W, extended)


@dataclass(frozen=True)
class Finite:
    matrix: TransitionMatrix
    kind: Literal["finite"] = "finite"

    def to_json(self) -> JSONObject:
        return {
            "kind": self.kind,
            "class_order": [str(cls) for cls in self.matrix.class_order],
            "matrix": [list(row) for row in self.matrix.entries],
        }


@dataclass(frozen=True)
class AlmostPathDirected:
    graph: LabelGraph
    families: tuple[str, ...]
    kind: Literal["almost-path-directed"] = "almost-path-directed"

    def to_json(self) -> JSONObject:
        return {"kind": self.kind, **self.graph.to_json()}


@dataclass(frozen=True)
class BackwardPathDirected:
    graph: LabelGraph
    family: str
    a_loops: int
    kind: Literal["backward-path-directed"] = "backward-path-directed"

    def to_json(self) -> JSONObject:
        return {"kind": self.kind, "a_loops": self.a_loops, **self.graph.to_json()}


@dataclass(frozen=True)
class AlphaGrowing:
    graph: LabelGraph
    order: tuple[str, ...]
    loops: dict[str, int] = field(compare=False)
    routing: dict[str, str] = field(compare=False)
    kind: Literal["alpha-growing"] = "alpha-growing"

    @property
    def alpha(self) -> int:
        return len(self.order)

    @property
    def alpha_prime(self) -> str | None:
        """The family the last path draws its range of children from."""
        return self.routing.get(self.order[-1])

    def to_json(self) -> JSONObject:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "order": list(self.order),
            "alpha_prime": self.alpha_prime,
            "loops": dict(self.loops),
            "routing": dict(self.routing),
            **self.graph.to_json(),
        }


@dataclass(frozen=True)
class Unclassified:
    reason: str
    graph: LabelGraph | None = None
    kind: Literal["unclassified"] = "unclassified"

    def to_json(self) -> JSONObject:
        data: JSONObject = {"kind": self.kind, "reason": self.reason}
        if self.graph is not None:
            data.update(self.graph.to_json())
        return data


GraphFamily: TypeAlias = Finite | AlmostPathDirected | BackwardPathDirected | AlphaGrowing | Unclassified


def _members(rule: GeneralRule) -> list[MemberChild]:
    return [c for c in rule.children if isinstance(c, MemberChild)]


def _ranges(rule: GeneralRule) -> list[RangeChild]:
    return [c for c in rule.children if isinstance(c, RangeChild)]


def _references(rule: GeneralRule) -> set[str]:
    names = {c.family for c in rule.children if isinstance(c, (MemberChild, RangeChild))}
    return names - {rule.family}


def _almost_path(graph: LabelGraph) -> AlmostPathDirected | None:
    for name, rule in graph.general_rules.items():
        if _ranges(rule):
            return None
        members = [(c.family, c.offset, c.multiplicity) for c in _members(rule)]
        if members != [(name, 1, Rk.one)]:
            return None
    return AlmostPathDirected(graph, tuple(graph.general_rules))


def _backward_path(graph: LabelGraph) -> BackwardPathDirected | None:
    if len(graph.general_rules) != 1:
        return None
    (name, rule), = graph.general_rules.items()
    if [c.family for c in _ranges(rule)] != [name]:
        return None
    members = _members(rule)
    if any(c.family != name for c in members):
        return None
    forward = [c for c in members if c.offset == 1]
    loops = [c for c in members if c.offset == 0]
    if [c.multiplicity for c in forward] != [Rk.one] or len(loops) > 1:
        return None
    if any(c.offset < 0 for c in members):
        return None
    a_loops = constant_value(loops[0].multiplicity) if loops else 0
    if a_loops is None:
        return None
    return BackwardPathDirected(graph, name, a_loops)


def _topological_order(rules: dict[str, GeneralRule]) -> list[str] | None:
    pending = {name: _references(rule) for name, rule in rules.items()}
    order: list[str] = []
    while pending:
        ready = sorted(name for name, refs in pending.items() if not refs - set(order))
        if not ready:
            return None
        order.append(ready[0])
        del pending[ready[0]]
    return order


def _alpha_growing(graph: LabelGraph) -> AlphaGrowing | None:
    order = _topological_order(graph.general_rules)
    if order is None:
        return None
    loops: dict[str, int] = {}
    routing: dict[str, str] = {}
    for position, name in enumerate(order):
        rule = graph.general_rules[name]
        members = _members(rule)
        ranges = _ranges(rule)
        constants = [constant_value(c.multiplicity) for c in members]
        if any(c is None for c in constants) or any(c.offset < 0 for c in members):
            return None
        loops[name] = sum(
            value
            for c, value in zip(members, constants)
            if c.family == name and c.offset == 0
        )
        forward = [(c.family, value) for c, value in zip(members, constants) if c.offset == 1]
        if len(order) == 1:
            if ranges or forward != [(name, 1)] or loops[name] < 1:
                return None
        elif position == 0:
            if [c.family for c in ranges] != [name] or forward or _references(rule):
                return None
        else:
            if len(ranges) != 1 or ranges[0].family == name:
                return None
            source = ranges[0].family
            routing[name] = source
            last = position == len(order) - 1
            for c in members:
                if c.offset == 0 and c.family not in (name, source):
                    return None
                if c.offset == 1 and not (last or c.family == source):
                    return None
    return AlphaGrowing(graph, tuple(order), loops, routing)


def _extended_feeds_deep_chain(graph: LabelGraph) -> bool:
    return any(
        isinstance(child, MemberRef) and child.index >= graph.m + 2
        for w in graph.extended
        for child, _ in graph.children(w)
    )


def classify_graph(rules: CompressedRules) -> GraphFamily:
    """Finite, then almost path-directed, then backward path-directed, then alpha-growing."""
    if not rules.families:
        family: GraphFamily = Finite(transition_matrix(rules.ruleset))
    else:
        graph = rebase(rules)
        if _extended_feeds_deep_chain(graph):
            family = Unclassified("a node of W longer than m feeds the chains", graph)
        else:
            family = (
                _almost_path(graph)
                or _backward_path(graph)
                or _alpha_growing(graph)
                or Unclassified("the rules match no known family of label graphs", graph)
            )
    logger.info("Classified %s as %s", rules.ruleset.B, family.kind)
    return family
