"""Weighted if-then rules, observations, and the per-engine fusion pipeline.

A weighted rule ``antecedent -w-> consequent`` becomes the least-committed
conditional assignment {antecedent∧consequent: w, antecedent: 1−w}: it gives
the consequent exactly the support the weight justifies and parks the rest on
the antecedent alone.  ``run_scenario`` then fuses rules and observations
three ways:

* ``dsm``   — hybrid DSm fusion directly on the constrained lattice: all rule
  BBAs in one pass, then each observation in order.
* ``dst``   — every proposition is refined onto an exclusive atom frame
  (``dst_axes``) and everything is fused with Dempster's rule; total conflict
  is reported as an inconsistency, not raised.
* ``bayes`` — no fusion at all: if the scenario is a three-rule triangle
  (x→c, y→c', x→y with observation x∧y and c, c' exclusive), the chain-rule
  point estimates and their defects are reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Sequence

from .analysis import BayesEstimates, indifference_estimates
from .belief import (
    BBA,
    TotalConflictError,
    belief,
    dempster_combine,
    dsm_hybrid_combine,
    plausibility,
    vacuous,
)
from .lattice import (
    AtomFrame,
    Frame,
    Model,
    Proposition,
    atoms_to_proposition,
    conjoin,
    reduce_under_model,
    refine_to_atoms,
)

ENGINES = ("bayes", "dst", "dsm")


@dataclass(frozen=True)
class WeightedRule:
    """``antecedent -w-> consequent`` with w = 1 − ε."""

    antecedent: Proposition
    consequent: Proposition
    weight: float

    def __post_init__(self) -> None:
        if self.antecedent.frame != self.consequent.frame:
            raise ValueError("rule antecedent and consequent use different frames")
        if self.antecedent.is_empty:
            raise ValueError("rule antecedent must not be empty")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"rule weight {self.weight!r} outside [0, 1]")

    def __str__(self) -> str:
        return f"if {self.antecedent} then {self.consequent} (w={self.weight:g})"


def rule_to_conditional_bba(rule: WeightedRule, frame: Frame, model: Model) -> BBA:
    """The least-committed BBA encoding a weighted rule.

    m(antecedent∧consequent) = w and m(antecedent) = 1−w, both keys reduced
    under the model, so Bel(consequent | antecedent) = w and nothing else is
    committed.
    """
    if rule.antecedent.frame != frame:
        raise ValueError("rule does not live on the scenario frame")
    antecedent = reduce_under_model(rule.antecedent, model)
    if antecedent.is_empty:
        raise ValueError(f"antecedent of [{rule}] is impossible under the model")
    both = reduce_under_model(conjoin(rule.antecedent, rule.consequent), model)
    if both.is_empty and rule.weight > 0.0:
        raise ValueError(f"rule [{rule}] contradicts the model's constraints")
    masses: dict[Proposition, float] = {}
    if rule.weight > 0.0:
        masses[both] = rule.weight
    if rule.weight < 1.0:
        masses[antecedent] = masses.get(antecedent, 0.0) + (1.0 - rule.weight)
    return BBA(frame, model, masses)


def observation_to_bba(obs: Proposition, frame: Frame, model: Model) -> BBA:
    """Certain evidence: m(obs) = 1."""
    if obs.frame != frame:
        raise ValueError("observation does not live on the scenario frame")
    if reduce_under_model(obs, model).is_empty:
        raise ValueError(f"observation {obs} is impossible under the model")
    return BBA(frame, model, {obs: 1.0})


@dataclass(frozen=True)
class DstAxes:
    """Refinement declaration for the exclusive-frame engine.

    ``axes`` spans the atom space; ``literal_map`` pins each mapped singleton
    name to one (axis, value) coordinate.  Singletons the map omits cannot be
    refined, so scenarios using them cannot select the dst engine.
    """

    axes: AtomFrame
    literal_map: Mapping[str, tuple[int, int]]

    def __post_init__(self) -> None:
        checked = {}
        for name, coordinate in self.literal_map.items():
            axis, value = coordinate
            if not 0 <= axis < len(self.axes.axes):
                raise ValueError(f"literal {name!r} names axis {axis}, which does not exist")
            if not 0 <= value < len(self.axes.axes[axis]):
                raise ValueError(f"literal {name!r} names value {value} outside axis {axis}")
            checked[name] = (axis, value)
        object.__setattr__(self, "literal_map", checked)


@dataclass(frozen=True)
class Scenario:
    """One fusion problem: frame, constraints, rules, evidence, questions."""

    frame: Frame
    model: Model
    rules: tuple[WeightedRule, ...]
    observations: tuple[Proposition, ...]
    queries: tuple[Proposition, ...]
    engines: tuple[str, ...] = ("dsm",)
    dst_axes: DstAxes | None = None

    def __post_init__(self) -> None:
        if self.model.frame != self.frame:
            raise ValueError("model belongs to a different frame")
        if not self.queries:
            raise ValueError("scenario needs at least one query")
        if not self.engines:
            raise ValueError("scenario selects no engine")
        for engine in self.engines:
            if engine not in ENGINES:
                raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
        for prop in (*self.observations, *self.queries):
            if prop.frame != self.frame:
                raise ValueError(f"{prop} does not live on the scenario frame")
        for rule in self.rules:
            if rule.antecedent.frame != self.frame:
                raise ValueError(f"rule [{rule}] does not live on the scenario frame")
        if "dst" in self.engines:
            if self.dst_axes is None:
                raise ValueError("the dst engine needs a dst_axes declaration")
            unmapped = sorted(
                name
                for name in self.used_singletons()
                if name not in self.dst_axes.literal_map
            )
            if unmapped:
                raise ValueError(
                    f"dst_axes.map does not cover singleton(s): {', '.join(unmapped)}"
                )

    def used_singletons(self) -> frozenset[str]:
        used = set()
        for rule in self.rules:
            used |= rule.antecedent.singleton_indices()
            used |= rule.consequent.singleton_indices()
        for prop in (*self.observations, *self.queries):
            used |= prop.singleton_indices()
        return frozenset(self.frame.names[i] for i in used)


@dataclass(frozen=True)
class QueryResult:
    """One output row: [Bel, Pl] for evidential engines, a point estimate for
    the chain-rule engine, with a free-text note when neither applies."""

    query: Proposition
    bel: float | None = None
    pl: float | None = None
    estimate: float | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "query": self.query.to_names(),
            "bel": self.bel,
            "pl": self.pl,
            "estimate": self.estimate,
            "note": self.note,
        }


@dataclass(frozen=True)
class EngineResult:
    engine: str
    status: str  # "ok" | "inconsistent" | "not_applicable"
    fused: BBA | None
    conflict_mass: float | None
    stage_conflicts: tuple[float, ...]
    normalization_constant: float | None
    queries: tuple[QueryResult, ...]
    flags: tuple[str, ...] = ()
    estimates: BayesEstimates | None = None

    def to_json(self) -> dict:
        return {
            "engine": self.engine,
            "status": self.status,
            "fused": None if self.fused is None else self.fused.to_json(),
            "conflict_mass": self.conflict_mass,
            "stage_conflicts": list(self.stage_conflicts),
            "normalization_constant": self.normalization_constant,
            "queries": [q.to_json() for q in self.queries],
            "flags": list(self.flags),
            "estimates": None if self.estimates is None else self.estimates.to_json(),
        }


@dataclass(frozen=True)
class FusionReport:
    scenario: Scenario
    results: tuple[EngineResult, ...]

    def engine(self, name: str) -> EngineResult:
        for result in self.results:
            if result.engine == name:
                return result
        raise KeyError(f"no result for engine {name!r}")

    def to_json(self) -> dict:
        return {"results": [r.to_json() for r in self.results]}


def _intervals(fused: BBA, queries: Sequence[Proposition]) -> tuple[QueryResult, ...]:
    return tuple(
        QueryResult(query=q, bel=belief(fused, q), pl=plausibility(fused, q))
        for q in queries
    )


def _run_dsm(scenario: Scenario) -> EngineResult:
    sources = [
        rule_to_conditional_bba(rule, scenario.frame, scenario.model)
        for rule in scenario.rules
    ]
    if len(sources) >= 2:
        prior_report = dsm_hybrid_combine(sources)
        fused, stage_conflicts = prior_report.result, [prior_report.conflict_mass]
    elif sources:
        fused, stage_conflicts = sources[0], [0.0]
    else:
        fused, stage_conflicts = vacuous(scenario.frame, scenario.model), [0.0]
    for obs in scenario.observations:
        report = dsm_hybrid_combine(
            [fused, observation_to_bba(obs, scenario.frame, scenario.model)]
        )
        fused = report.result
        stage_conflicts.append(report.conflict_mass)
    conflict = max(stage_conflicts)
    flags = ()
    if conflict >= 1.0 - 1e-9:
        flags = ("all prior mass conflicts; the intervals below are uninformative",)
    return EngineResult(
        engine="dsm",
        status="ok",
        fused=fused,
        conflict_mass=conflict,
        stage_conflicts=tuple(stage_conflicts),
        normalization_constant=None,
        queries=_intervals(fused, scenario.queries),
        flags=flags,
    )


def _run_dst(scenario: Scenario) -> EngineResult:
    axes = scenario.dst_axes
    atom_frame = axes.axes.to_frame()
    atom_model = Model.shafer(atom_frame)

    def refined(prop: Proposition) -> Proposition:
        atoms = refine_to_atoms(prop, axes.axes, axes.literal_map)
        return atoms_to_proposition(atoms, atom_frame)

    def lift(bba: BBA) -> BBA:
        return BBA(
            atom_frame, atom_model, {refined(k): v for k, v in bba.items()}
        )

    sources = [
        lift(rule_to_conditional_bba(rule, scenario.frame, scenario.model))
        for rule in scenario.rules
    ]
    sources += [
        lift(observation_to_bba(obs, scenario.frame, scenario.model))
        for obs in scenario.observations
    ]
    queries = [refined(q) for q in scenario.queries]
    try:
        if len(sources) >= 2:
            report = dempster_combine(sources)
            fused, conflict, k = report.result, report.conflict_mass, report.normalization_constant
        elif sources:
            fused, conflict, k = sources[0], 0.0, 1.0
        else:
            fused, conflict, k = vacuous(atom_frame, atom_model), 0.0, 1.0
    except TotalConflictError:
        return EngineResult(
            engine="dst",
            status="inconsistent",
            fused=None,
            conflict_mass=1.0,
            stage_conflicts=(1.0,),
            normalization_constant=None,
            queries=tuple(
                QueryResult(query=q, note="inconsistent (total conflict)")
                for q in scenario.queries
            ),
            flags=("inconsistent (total conflict): the rules admit no common world",),
        )
    rows = tuple(
        QueryResult(query=original, bel=belief(fused, lifted), pl=plausibility(fused, lifted))
        for original, lifted in zip(scenario.queries, queries)
    )
    return EngineResult(
        engine="dst",
        status="ok",
        fused=fused,
        conflict_mass=conflict,
        stage_conflicts=(conflict,),
        normalization_constant=k,
        queries=rows,
    )


def _match_triangle(scenario: Scenario):
    """Find (rule_x, rule_y, chain) with x→c, y→c', x→y, obs = x∧y, c∧c' = ∅."""
    if len(scenario.rules) != 3 or len(scenario.observations) != 1:
        return None
    model = scenario.model
    obs = reduce_under_model(scenario.observations[0], model)
    for rx, ry, chain in permutations(scenario.rules):
        if reduce_under_model(chain.antecedent, model) != reduce_under_model(
            rx.antecedent, model
        ):
            continue
        if reduce_under_model(chain.consequent, model) != reduce_under_model(
            ry.antecedent, model
        ):
            continue
        if not reduce_under_model(conjoin(rx.consequent, ry.consequent), model).is_empty:
            continue
        if reduce_under_model(conjoin(rx.antecedent, ry.antecedent), model) != obs:
            continue
        return rx, ry, chain
    return None


def _run_bayes(scenario: Scenario) -> EngineResult:
    def not_applicable(reason: str) -> EngineResult:
        return EngineResult(
            engine="bayes",
            status="not_applicable",
            fused=None,
            conflict_mass=None,
            stage_conflicts=(),
            normalization_constant=None,
            queries=tuple(QueryResult(query=q, note=reason) for q in scenario.queries),
            flags=(reason,),
        )

    match = _match_triangle(scenario)
    if match is None:
        return not_applicable(
            "not applicable: scenario is not a three-rule triangle with one observation"
        )
    rx, ry, chain = match
    eps1, eps2, eps3 = 1.0 - rx.weight, 1.0 - ry.weight, 1.0 - chain.weight
    if eps3 == 1.0:
        return not_applicable(
            "not applicable: the chain rule has weight 0, so the estimates' denominator vanishes"
        )
    estimates = indifference_estimates(eps1, eps2, eps3)
    model = scenario.model
    by_target = {
        reduce_under_model(ry.consequent, model): float(estimates.p_fly),
        reduce_under_model(rx.consequent, model): float(estimates.p_not_fly),
    }
    rows = []
    for q in scenario.queries:
        value = by_target.get(reduce_under_model(q, model))
        if value is None:
            rows.append(QueryResult(query=q, note="no closed-form estimate for this query"))
        else:
            rows.append(
                QueryResult(query=q, estimate=value, note="non-additive point estimate")
            )
    return EngineResult(
        engine="bayes",
        status="ok",
        fused=None,
        conflict_mass=None,
        stage_conflicts=(),
        normalization_constant=None,
        queries=tuple(rows),
        flags=estimates.validity_flags,
        estimates=estimates,
    )


_RUNNERS = {"dsm": _run_dsm, "dst": _run_dst, "bayes": _run_bayes}


def run_scenario(scenario: Scenario) -> FusionReport:
    """Run every engine the scenario selects, in its declared order."""
    return FusionReport(
        scenario=scenario,
        results=tuple(_RUNNERS[name](scenario) for name in scenario.engines),
    )
