from typing import TypeAlias
import logging
from dataclasses import dataclass, replace
from typing import Callable

from ..config import CliConfig
from ..errors import (
    DepthExhausted,
    InvalidConfig,
    NoFamilyFound,
    NonRationalMultiplicity,
    PoleAtEvaluationPoint,
    SingularSystem,
    Unclassified as UnclassifiedError,
    VerificationMismatch,
)
from ..gentree import explore, finite_label_test
from ..induction import CompressedRules, induce_general_rules, verify_general_rules
from ..json import JSONObject
from ..perm import DEFAULT_NODE_BUDGET, PatternSet, count_avoiders
from ..symbolic import ratfunc
from ..symbolic.quadext import QuadExtElement, kernel_factor
from ..symbolic.ratfunc import PowerSeries, RationalFunction
from ..symbolic.reconstruct import (
    RESERVE,
    AlgebraicRelation,
    algebraic_fit_deg2,
    pade_reconstruct,
)
from .almost_path import solve_almost_path_system
from .alpha_growing import solve_alpha_growing_system
from .backward_path import solve_backward_path_system
from .equations import Solution
from .families import GraphFamily, Unclassified, classify_graph
from .finite import solve_finite_system
from .series import series_dp

logger = logging.getLogger(__name__)

GeneratingFunction: TypeAlias = RationalFunction | QuadExtElement | AlgebraicRelation

SOLVERS: dict[str, Callable[[GraphFamily], Solution]] = {
    "finite": lambda family: solve_finite_system(family.matrix),
    "almost-path-directed": solve_almost_path_system,
    "backward-path-directed": solve_backward_path_system,
    "alpha-growing": solve_alpha_growing_system,
}


def gf_series(gf: GeneratingFunction, N: int) -> list:
    if isinstance(gf, (QuadExtElement, AlgebraicRelation)):
        return gf.series_expand(N)
    return ratfunc.series_expand(gf, N)


def gf_to_json(gf: GeneratingFunction) -> JSONObject:
    if isinstance(gf, (QuadExtElement, AlgebraicRelation)):
        return gf.to_json()
    return ratfunc.to_json(gf)


def gf_text(gf: GeneratingFunction) -> str:
    if isinstance(gf, QuadExtElement):
        c = ratfunc.to_text(kernel_factor(gf.a_loops))
        return f"{gf}  where x*({c})*t0**2 - ({c})*t0 + 1 = 0, t0(0) = 1"
    if isinstance(gf, AlgebraicRelation):
        return str(gf)
    return ratfunc.to_text(gf)


def depth_schedule(t: int, depth: int | None = None) -> list[int]:
    if depth is not None:
        if depth < 2:
            raise InvalidConfig(f"Exploration depth must be at least 2, got {depth}")
        return [depth]
    return list(range(2 * t + 4, 2 * t + 21, 2))


def compress(
    B: PatternSet, depth: int | None = None, node_budget: int = DEFAULT_NODE_BUDGET
) -> CompressedRules:
    """Explore T(B) at increasing depth until the rules close or compress and verify."""
    reason = "no exploration depth was tried"
    schedule = depth_schedule(B.t, depth)
    for D in schedule:
        rs = explore(B, D, node_budget)
        if rs.is_closed:
            return induce_general_rules(rs)
        try:
            rules = induce_general_rules(rs)
        except NoFamilyFound as error:
            reason = str(error)
            logger.info("Depth %d: %s", D, reason)
            continue
        result = verify_general_rules(rules, extra=B.t + 3)
        if not result:
            reason = f"general rule fails at {result.counterexample}"
            logger.info("Depth %d: %s", D, reason)
            continue
        return replace(rules, certificate=result.instances)
    raise DepthExhausted(schedule[-1], reason)


@dataclass(frozen=True)
class SolveReport:
    patterns: PatternSet
    classification: GraphFamily
    gf: GeneratingFunction
    series: PowerSeries
    verified_against_oracle_to: int
    certificate: int
    depth: int
    conjectural: bool
    components: dict[str, GeneratingFunction]

    def to_json(self) -> JSONObject:
        return {
            "gf": gf_to_json(self.gf),
            "conjectural": self.conjectural,
            "patterns": str(self.patterns),
            "classification": self.classification.to_json(),
            "series": self.series.as_ints(),
            "verified_against_oracle_to": self.verified_against_oracle_to,
            "certificate": self.certificate,
            "depth": self.depth,
            "components": {
                label: gf_to_json(value) for label, value in self.components.items()
            },
        }

    def to_text(self) -> JSONObject:
        return {
            "patterns": str(self.patterns),
            "classification": self.classification.kind,
            "gf": gf_text(self.gf),
            "conjectural": self.conjectural,
            "series": " ".join(map(str, self.series.as_ints()[1:])),
            "verified_against_oracle_to": self.verified_against_oracle_to,
            "certificate": self.certificate,
            "depth": self.depth,
            "components": {label: gf_text(value) for label, value in self.components.items()},
        }


def reconstruct(series: PowerSeries) -> RationalFunction | AlgebraicRelation:
    """Rational, then quadratic algebraic fit of a series known to finite order."""
    values = list(series.coefficients)
    pade_degree = (len(values) - RESERVE - 1) // 2
    if pade_degree >= 0:
        f = pade_reconstruct(values, pade_degree)
        if f is not None:
            return f
    algebraic_degree = (len(values) - RESERVE) // 3 - 1
    if algebraic_degree >= 0:
        relation = algebraic_fit_deg2(values, algebraic_degree)
        if relation is not None:
            return AlgebraicRelation(relation, series.coefficients)
    raise UnclassifiedError(
        f"No rational or quadratic generating function fits {len(values)} terms"
    )


def solve(B: PatternSet, config: CliConfig) -> SolveReport:
    if finite_label_test(B):
        logger.info("%s passes the finite label test", B)
    rules = compress(B, config.depth, config.node_budget)
    family = classify_graph(rules)
    n_verify = config.verify_depth(B)
    N = max(config.series_order, n_verify)
    dp = series_dp(rules, N)

    solution: Solution | None = None
    if not isinstance(family, Unclassified):
        try:
            solution = SOLVERS[family.kind](family)
        except (SingularSystem, PoleAtEvaluationPoint, NonRationalMultiplicity) as error:
            logger.warning("The %s solver failed: %s", family.kind, error)
            family = Unclassified(str(error), getattr(family, "graph", None))

    if solution is None:
        logger.warning("Falling back to reconstruction from %d terms", N + 1)
        gf: GeneratingFunction = reconstruct(dp)
        components: dict[str, GeneratingFunction] = {}
    else:
        gf = solution.gf
        components = solution.components
        VerificationMismatch.compare("series from the rules", list(dp.coefficients), gf_series(gf, N))

    series = PowerSeries.of(gf_series(gf, N))
    oracle = count_avoiders(B, n_verify, config.node_budget)
    VerificationMismatch.compare("oracle count", oracle, series.as_ints()[1:], offset=1)
    logger.info("%s agrees with the oracle up to n=%d", B, n_verify)
    return SolveReport(
        patterns=B,
        classification=family,
        gf=gf,
        series=series,
        verified_against_oracle_to=n_verify,
        certificate=rules.certificate,
        depth=rules.ruleset.depth_explored,
        conjectural=solution is None,
        components=components,
    )
