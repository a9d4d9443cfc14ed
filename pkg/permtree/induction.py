from typing import TypeAlias
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

from sympy import QQ, interpolate
from sympy.polys.rings import PolyElement, ring

from .errors import NoFamilyFound
from .gentree import LabelClass, RuleSet, SuccessionRule, signature_of
from .perm import NodeBudget, Permutation, _children, avoids_all, format_permutation
from .symbolic.ratfunc import Qx, RationalFunction, x

logger = logging.getLogger(__name__)

Rk, k = ring("k", QQ)

Multiplicity: TypeAlias = PolyElement
Kind: TypeAlias = Literal["ascending", "descending"]


def evaluate(p: Multiplicity, at: int) -> int | None:
    """p(at) when it is a valid multiplicity (non-negative integer), else None."""
    value = QQ.convert(p(at))
    if QQ.denom(value) != 1 or value < 0:
        return None
    return int(QQ.numer(value))


def constant_value(p: Multiplicity) -> int | None:
    return evaluate(p, 0) if p.degree() <= 0 else None


def fit_multiplicity(points: list[tuple[int, int]]) -> Multiplicity:
    return Rk.from_expr(interpolate(points, Rk.symbols[0]))


def format_multiplicity(p: Multiplicity) -> str:
    if p == 1:
        return ""
    text = str(p)
    return f"^({text})" if " " in text else f"^{text}"


def _index_term(c: int) -> str:
    if c == 0:
        return "k"
    return f"(k+{c})" if c > 0 else f"(k-{-c})"


@dataclass(frozen=True)
class FamilyTemplate:
    """prefix · run · suffix, with fixed entries encoded relative to the run.

    Positive entries are literal values below the run; an entry -d stands for
    n - d, n being the length of the instance. The run takes the remaining
    values, so instance(n) has length n.
    """

    kind: Kind
    prefix: tuple[int, ...]
    suffix: tuple[int, ...]

    @property
    def fixed(self) -> tuple[int, ...]:
        return self.prefix + self.suffix

    @property
    def low(self) -> int:
        return 1 + sum(1 for e in self.fixed if e > 0)

    @property
    def top(self) -> int:
        return sum(1 for e in self.fixed if e <= 0)

    @property
    def min_length(self) -> int:
        return max(len(self.fixed), 1)

    def instance(self, n: int) -> Permutation | None:
        if n < self.min_length:
            return None
        run = range(self.low, n - self.top + 1)
        values = run if self.kind == "ascending" else reversed(run)

        def decode(e: int) -> int:
            return e if e > 0 else n + e

        return (
            tuple(map(decode, self.prefix))
            + tuple(values)
            + tuple(map(decode, self.suffix))
        )

    def display(self, offset: int = 0) -> str:
        """Instance of length k + offset, written with k symbolic."""

        def entry(e: int) -> str:
            return str(e) if e > 0 else _index_term(offset + e)

        high = _index_term(offset - self.top)
        if self.kind == "descending":
            run = f"{high}{_index_term(offset - self.top - 1)}...{self.low}"
        else:
            run = f"{self.low}{self.low + 1}...{high}"
        return (
            "".join(map(entry, self.prefix)) + run + "".join(map(entry, self.suffix))
        )

    def __str__(self) -> str:
        return self.display()


def templates_of(pi: Permutation) -> list[FamilyTemplate]:
    """Templates whose run is a maximal segment of consecutive values in pi."""
    n = len(pi)
    result = []
    for step, kind in ((-1, "descending"), (1, "ascending")):
        i = 0
        while i < n:
            j = i
            while j + 1 < n and pi[j + 1] - pi[j] == step:
                j += 1
            if j > i:
                low = min(pi[i], pi[j])

                def encode(v: int) -> int:
                    return v if v < low else v - n

                result.append(
                    FamilyTemplate(
                        kind,
                        tuple(map(encode, pi[:i])),
                        tuple(map(encode, pi[j + 1 :])),
                    )
                )
            i = j + 1
    return result


@dataclass(frozen=True)
class MemberRef:
    """The member of length `index` of a family."""

    family: str
    index: int

    def __str__(self) -> str:
        return f"{self.family}[{self.index}]"


Node: TypeAlias = LabelClass | MemberRef


@dataclass(frozen=True)
class Family:
    name: str
    template: FamilyTemplate
    k_min: int
    members: dict[int, LabelClass] = field(compare=False, hash=False)

    def instance(self, n: int) -> Permutation | None:
        return self.template.instance(n)

    @property
    def chain_start(self) -> int:
        return min(self.members)

    def __str__(self) -> str:
        return f"{self.name} = {self.template}  (k>={self.k_min})"


@dataclass(frozen=True)
class FixedChild:
    target: LabelClass
    multiplicity: Multiplicity


@dataclass(frozen=True)
class MemberChild:
    family: str
    offset: int
    multiplicity: Multiplicity


@dataclass(frozen=True)
class RangeChild:
    """Members first, first + 1, ..., k - 1, each once."""

    family: str
    first: int


Child: TypeAlias = FixedChild | MemberChild | RangeChild


@dataclass(frozen=True)
class GeneralRule:
    family: str
    k_min: int
    children: tuple[Child, ...]

    def specialize(self, at: int, rules: "CompressedRules") -> list[tuple[Node, int]]:
        result: list[tuple[Node, int]] = []
        for child in self.children:
            match child:
                case FixedChild(target, multiplicity):
                    count = evaluate(multiplicity, at)
                    if count:
                        result.append((rules.node_of(target), count))
                case MemberChild(family, offset, multiplicity):
                    count = evaluate(multiplicity, at)
                    if count:
                        result.append((rules.member_node(family, at + offset), count))
                case RangeChild(family, first):
                    result.extend(
                        (rules.member_node(family, j), 1) for j in range(first, at)
                    )
        return result

    def format(self, families: dict[str, Family]) -> str:
        def child_text(child: Child) -> str:
            match child:
                case FixedChild(target, multiplicity):
                    return f"{target}{format_multiplicity(multiplicity)}"
                case MemberChild(family, offset, multiplicity):
                    template = families[family].template
                    return f"{template.display(offset)}{format_multiplicity(multiplicity)}"
                case RangeChild(family, first):
                    return f"{family}[{first}..k-1]"

        parent = families[self.family].template.display()
        ordered = sorted(self.children, key=lambda child: not isinstance(child, FixedChild))
        children = ", ".join(map(child_text, ordered))
        return f"{parent} ~> {children}  (k>={self.k_min})"


@dataclass(frozen=True)
class CompressedRules:
    ruleset: RuleSet
    families: dict[str, Family]
    general_rules: dict[str, GeneralRule]
    fixed_rules: dict[LabelClass, SuccessionRule]
    certificate: int = 0

    @property
    def root(self) -> LabelClass:
        return self.ruleset.root

    @cached_property
    def membership(self) -> dict[LabelClass, MemberRef]:
        return {
            cls: MemberRef(family.name, index)
            for family in self.families.values()
            for index, cls in family.members.items()
        }

    def member_node(self, family: str, index: int) -> Node:
        owner = self.families[family]
        if index >= owner.k_min:
            return MemberRef(family, index)
        if index not in owner.members:
            raise KeyError(f"{family} has no member of length {index}")
        return owner.members[index]

    def node_of(self, cls: LabelClass) -> Node:
        ref = self.membership.get(cls)
        if ref is not None and ref.index >= self.families[ref.family].k_min:
            return ref
        return cls

    def length_of(self, node: Node) -> int:
        """Length of the permutation standing for the node in F_node(x)."""
        if isinstance(node, MemberRef):
            return node.index
        ref = self.membership.get(node)
        return ref.index if ref is not None else node.rep_length

    def label_of(self, node: Node) -> str:
        if isinstance(node, MemberRef):
            ref = node
        elif node in self.membership:
            ref = self.membership[node]
        else:
            return str(node)
        return format_permutation(self.families[ref.family].instance(ref.index))

    def children_of(self, node: Node) -> list[tuple[Node, int]]:
        if isinstance(node, LabelClass):
            node = self.node_of(node)
        if isinstance(node, MemberRef):
            return self.general_rules[node.family].specialize(node.index, self)
        return [
            (self.node_of(child), multiplicity)
            for child, multiplicity in self.fixed_rules[node].children
        ]


@dataclass(frozen=True)
class _Candidate:
    template: FamilyTemplate
    members: dict[int, LabelClass]
    exact: int

    @property
    def sort_key(self):
        return (
            min(self.members),
            -self.exact,
            self.template.kind != "descending",
            str(self.template),
        )


def _chain(template: FamilyTemplate, rs: RuleSet, start: int) -> dict[int, LabelClass] | None:
    """Distinct classes of instance(n) for consecutive n through the exploration depth."""
    members: dict[int, LabelClass] = {}

    def visit(n: int) -> bool:
        pi = template.instance(n)
        if pi is None or not avoids_all(pi, rs.B):
            return False
        cls = rs.by_signature.get(signature_of(pi, rs.B))
        if cls is None or cls in members.values():
            return False
        members[n] = cls
        return True

    n = start
    while n <= rs.depth_explored and visit(n):
        n += 1
    if n <= rs.depth_explored:
        return None
    n = start - 1
    while n >= 1 and visit(n):
        n -= 1
    return dict(sorted(members.items()))


def _candidates(rs: RuleSet) -> list[_Candidate]:
    seen: set[FamilyTemplate] = set()
    candidates = []
    for cls in rs.classes:
        for template in templates_of(cls.representative):
            if template in seen:
                continue
            seen.add(template)
            members = _chain(template, rs, cls.rep_length)
            if members is None:
                continue
            exact = sum(
                member.representative == template.instance(n)
                for n, member in members.items()
            )
            candidates.append(_Candidate(template, members, exact))
    candidates.sort(key=lambda candidate: candidate.sort_key)
    logger.debug(
        "Family candidates: %s", ", ".join(str(c.template) for c in candidates)
    )
    return candidates


def _select(
    candidates: list[_Candidate],
    rejected: set[FamilyTemplate],
    preferred: set[FamilyTemplate],
) -> list[_Candidate]:
    taken: set[LabelClass] = set()
    chosen = []
    for candidate in sorted(candidates, key=lambda c: c.template not in preferred):
        if candidate.template in rejected:
            continue
        classes = set(candidate.members.values())
        if classes & taken:
            continue
        taken |= classes
        chosen.append(candidate)
    return chosen


def _family_names(count: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [
        letters[i] if i < len(letters) else f"f{i}" for i in range(count)
    ]


def _shape(
    rule: SuccessionRule,
    top: int,
    membership: dict[LabelClass, MemberRef],
) -> list[tuple]:
    """Split the children of the member of length `top` into rule terms."""
    by_family: dict[str, dict[int, tuple[LabelClass, int]]] = {}
    terms: list[tuple] = []
    for child, multiplicity in rule.children:
        ref = membership.get(child)
        if ref is None:
            terms.append(("fixed", child))
        else:
            by_family.setdefault(ref.family, {})[ref.index] = (child, multiplicity)
    for family, indices in sorted(by_family.items()):
        for offset in (1, 0):
            if indices.pop(top + offset, None) is not None:
                terms.append(("member", family, offset))
        first = top - 1
        while first in indices and indices[first][1] == 1:
            first -= 1
        first += 1
        if top - first >= 2:
            for j in range(first, top):
                del indices[j]
            terms.append(("range", family, first))
        elif top - 1 in indices:
            del indices[top - 1]
            terms.append(("member", family, -1))
        terms.extend(("fixed", child) for child, _ in indices.values())
    return terms


def _fit(
    name: str,
    candidate: _Candidate,
    chains: dict[str, dict[int, LabelClass]],
    membership: dict[LabelClass, MemberRef],
    rs: RuleSet,
) -> GeneralRule:
    t = rs.B.t
    members = candidate.members
    known = [n for n, cls in members.items() if cls in rs.rules]
    if not known:
        raise NoFamilyFound(f"No member of {candidate.template} has a rule")
    top = max(known)
    window = range(top - t + 2, top + 1)
    if any(n not in members or members[n] not in rs.rules for n in window):
        raise NoFamilyFound(f"Too few rules for {candidate.template} to fit")

    def observed(n: int) -> Counter:
        return Counter(dict(rs.rules[members[n]].children))

    def member_class(family: str, index: int) -> LabelClass | None:
        return chains[family].get(index)

    children: list[Child] = []
    for term in _shape(rs.rules[members[top]], top, membership):
        if term[0] == "range":
            children.append(RangeChild(term[1], term[2]))
            continue
        points = []
        for n in window:
            if term[0] == "fixed":
                target = term[1]
            else:
                target = member_class(term[1], n + term[2])
                if target is None:
                    raise NoFamilyFound(f"{term[1]} has no member of length {n + term[2]}")
            points.append((n, observed(n)[target]))
        multiplicity = fit_multiplicity(points)
        if term[0] == "fixed":
            children.append(FixedChild(term[1], multiplicity))
        else:
            children.append(MemberChild(term[1], term[2], multiplicity))

    def predicted(n: int) -> Counter | None:
        counts: Counter = Counter()
        for child in children:
            match child:
                case FixedChild(target, multiplicity):
                    count = evaluate(multiplicity, n)
                    if count is None:
                        return None
                    counts[target] += count
                case MemberChild(family, offset, multiplicity):
                    count = evaluate(multiplicity, n)
                    if count is None:
                        return None
                    if count:
                        target = member_class(family, n + offset)
                        if target is None:
                            return None
                        counts[target] += count
                case RangeChild(family, first):
                    for j in range(first, n):
                        target = member_class(family, j)
                        if target is None:
                            return None
                        counts[target] += 1
        return +counts

    k_min = top
    while k_min - 1 in members and members[k_min - 1] in rs.rules:
        if predicted(k_min - 1) != observed(k_min - 1):
            break
        k_min -= 1
    if any(predicted(n) != observed(n) for n in range(k_min, top + 1)):
        raise NoFamilyFound(f"Rules of {candidate.template} do not follow one pattern")
    if top - k_min + 1 < t:
        raise NoFamilyFound(
            f"Only {top - k_min + 1} rules of {candidate.template} agree, need {t}"
        )
    rule = GeneralRule(name, k_min, tuple(children))
    logger.debug("Fitted %s for k in [%d, %d]", candidate.template, k_min, top)
    return rule


def _fit_chosen(
    rs: RuleSet,
    candidates: list[_Candidate],
    rejected: set[FamilyTemplate],
    preferred: set[FamilyTemplate],
) -> tuple[dict[str, Family], dict[str, GeneralRule]]:
    while True:
        chosen = _select(candidates, rejected, preferred)
        if not chosen:
            raise NoFamilyFound(f"No family of {rs.B} covers the frontier")
        names = _family_names(len(chosen))
        chains = {name: candidate.members for name, candidate in zip(names, chosen)}
        membership = {
            cls: MemberRef(name, n)
            for name, members in chains.items()
            for n, cls in members.items()
        }
        general_rules: dict[str, GeneralRule] = {}
        for name, candidate in zip(names, chosen):
            try:
                general_rules[name] = _fit(name, candidate, chains, membership, rs)
            except NoFamilyFound as error:
                logger.debug("Rejecting %s: %s", candidate.template, error)
                rejected.add(candidate.template)
                break
        else:
            families = {
                name: Family(
                    name, candidate.template, general_rules[name].k_min, candidate.members
                )
                for name, candidate in zip(names, chosen)
            }
            return families, general_rules


def induce_general_rules(rs: RuleSet) -> CompressedRules:
    """Compress the explored rules into fixed rules plus general rules of families.

    Candidates are taken greedily by where their chain starts. When the chosen
    families leave frontier classes uncovered, the candidates running through
    those classes are moved to the front and the choice is made again.
    """
    if rs.is_closed:
        return CompressedRules(rs, {}, {}, dict(rs.rules))
    if rs.depth_explored < rs.B.t + 1:
        raise NoFamilyFound(
            f"Depth {rs.depth_explored} is too shallow for patterns of length {rs.B.t}"
        )
    candidates = _candidates(rs)
    rejected: set[FamilyTemplate] = set()
    preferred: set[FamilyTemplate] = set()
    while True:
        families, general_rules = _fit_chosen(rs, candidates, rejected, preferred)
        covered = {
            cls
            for family in families.values()
            for n, cls in family.members.items()
            if n >= family.k_min
        }
        uncovered = rs.frontier - covered
        if not uncovered:
            break
        promoted = {
            candidate.template
            for candidate in candidates
            if candidate.template not in rejected | preferred
            and uncovered & set(candidate.members.values())
        }
        if not promoted:
            raise NoFamilyFound(
                "Frontier classes outside every family: "
                + ", ".join(sorted(map(str, uncovered)))
            )
        logger.debug("Preferring %s", ", ".join(sorted(map(str, promoted))))
        preferred |= promoted
    fixed_rules = {cls: rule for cls, rule in rs.rules.items() if cls not in covered}
    logger.info(
        "Families of %s: %s",
        rs.B,
        "; ".join(str(family) for family in families.values()),
    )
    return CompressedRules(rs, families, general_rules, fixed_rules)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    instances: int
    family: str | None = None
    k: int | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @property
    def counterexample(self) -> str | None:
        if self.ok:
            return None
        return f"{self.family} at k={self.k}: {self.detail}"


def verify_general_rules(rules: CompressedRules, extra: int = 0) -> VerificationResult:
    """Compare every general rule with direct expansion of its instances."""
    B = rules.ruleset.B
    budget = NodeBudget(rules.ruleset.node_budget)
    count = max(B.t - 1, extra)

    def signature(family: str, n: int):
        pi = rules.families[family].instance(n)
        if pi is None or not avoids_all(pi, B):
            return None
        return signature_of(pi, B)

    for name, rule in rules.general_rules.items():
        for n in range(rule.k_min, rule.k_min + count):
            parent = rules.families[name].instance(n)
            if parent is None or not avoids_all(parent, B):
                return VerificationResult(False, count, name, n, "instance is not in the tree")
            kids = _children(parent, B)
            budget.spend(len(kids))
            actual = Counter(signature_of(child, B) for child in kids)
            expected: Counter = Counter()
            for child in rule.children:
                match child:
                    case FixedChild(target, multiplicity):
                        expected[target.signature] += evaluate(multiplicity, n) or 0
                    case MemberChild(family, offset, multiplicity):
                        expected[signature(family, n + offset)] += evaluate(multiplicity, n) or 0
                    case RangeChild(family, first):
                        for j in range(first, n):
                            expected[signature(family, j)] += 1
            expected = +expected
            if expected != actual:
                return VerificationResult(
                    False,
                    count,
                    name,
                    n,
                    f"children of {format_permutation(parent)} do not match the rule",
                )
    logger.info("General rules verified on %d instances each", count)
    return VerificationResult(True, count)


@dataclass(frozen=True)
class MultiplicityGF:
    exceptional: tuple[int, ...]
    tail_poly: Multiplicity
    start: int
    closed_form: RationalFunction


def _binomial_series(p: Multiplicity, start: int) -> RationalFunction:
    # sum_j p(start + j) x^j through the forward differences of p at start
    degree = max(p.degree(), 0)
    values = [QQ.convert(p(start + j)) for j in range(degree + 1)]
    total = Qx.zero
    for d in range(degree + 1):
        total += Qx(values[0]) * x**d / (1 - x) ** (d + 1)
        values = [b - a for a, b in zip(values, values[1:])]
    return total


def multiplicity_series(
    p: Multiplicity, start: int, exceptional: tuple[int, ...] = ()
) -> RationalFunction:
    head = sum((Qx(value) * x**j for j, value in enumerate(exceptional)), Qx.zero)
    shift = len(exceptional)
    return head + x**shift * _binomial_series(p, start + shift)


def multiplicity_gf(
    rule: GeneralRule, w: LabelClass, start: int | None = None
) -> MultiplicityGF:
    """sum_{j>=0} M(v_j, w) x^j for a fixed child w, v_j the member of length start + j."""
    for child in rule.children:
        if isinstance(child, FixedChild) and child.target == w:
            first = rule.k_min if start is None else start
            return MultiplicityGF(
                (), child.multiplicity, first, multiplicity_series(child.multiplicity, first)
            )
    raise ValueError(f"{w} is not a fixed child of the rule of {rule.family}")
