"""Basic belief assignments and combination rules over the proposition lattice.

Masses are keyed by model-reduced canonical propositions, so two keys that
are equal under the declared constraints always share one entry.  Three
combination rules are provided:

* ``conjunctive_combine`` -- the unnormalized conjunctive rule; conflicting
  mass stays on the empty proposition.
* ``dempster_combine`` -- conjunctive followed by normalization with
  K = 1 - conflict; raises :class:`TotalConflictError` when nothing is left.
* ``dsm_hybrid_combine`` -- no normalization; mass from conflicting source
  tuples is rerouted inside the lattice (to the join of the inputs, or for
  tuples of empty inputs to the union of the singletons they mention, with
  total ignorance as the last resort).

Per-key sums use ``math.fsum`` over a fixed tuple order, so results are
bit-reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import fsum
from typing import Iterator, Mapping, Sequence

from .lattice import (
    Frame,
    Model,
    Proposition,
    conjoin,
    disjoin,
    leq,
    reduce_under_model,
    total_ignorance,
)

TOTAL_CONFLICT_EPS = 1e-12
_MASS_SUM_TOL = 1e-9


class TotalConflictError(ArithmeticError):
    """All combined mass is conflicting: the sources describe an impossible world."""


@dataclass(frozen=True)
class BBA:
    """A normalized basic belief assignment.

    Keys are reduced under the model on construction and equal keys are
    merged; zero-mass entries are dropped.  Mass on the empty proposition is
    representable (the conjunctive rule emits it) but every other producer
    keeps ∅ at zero.
    """

    frame: Frame
    model: Model
    masses: Mapping[Proposition, float]

    def __post_init__(self) -> None:
        if self.model.frame != self.frame:
            raise ValueError("model belongs to a different frame")
        merged: dict[Proposition, list[float]] = {}
        for prop, mass in self.masses.items():
            if prop.frame != self.frame:
                raise ValueError("mass keyed by a proposition from another frame")
            if mass < 0.0:
                raise ValueError(f"negative mass {mass} on {prop}")
            key = reduce_under_model(prop, self.model)
            merged.setdefault(key, []).append(mass)
        final = {k: fsum(v) for k, v in sorted(merged.items(), key=lambda kv: kv[0].sort_key)}
        final = {k: m for k, m in final.items() if m > 0.0}
        total = fsum(final.values())
        if abs(total - 1.0) > _MASS_SUM_TOL:
            raise ValueError(f"masses sum to {total!r}, not 1")
        object.__setattr__(self, "masses", final)

    def items(self) -> list[tuple[Proposition, float]]:
        """Focal elements with their masses, in canonical order."""
        return list(self.masses.items())

    def focals(self) -> list[Proposition]:
        return list(self.masses)

    def mass(self, prop: Proposition) -> float:
        return self.masses.get(reduce_under_model(prop, self.model), 0.0)

    def mass_on_empty(self) -> float:
        return self.masses.get(Proposition.empty(self.frame), 0.0)

    def to_json(self) -> dict:
        return {
            "masses": [
                {"prop": prop.to_names(), "mass": mass} for prop, mass in self.items()
            ]
        }

    def __iter__(self) -> Iterator[Proposition]:
        return iter(self.masses)


@dataclass(frozen=True)
class CombinationReport:
    """A fused BBA plus conflict diagnostics.

    ``normalization_constant`` is K = 1 - conflict for Dempster's rule and
    None for the rules that do not normalize.
    """

    result: BBA
    conflict_mass: float
    normalization_constant: float | None

    def to_json(self) -> dict:
        return {
            **self.result.to_json(),
            "conflict_mass": self.conflict_mass,
            "normalization_constant": self.normalization_constant,
        }


def vacuous(frame: Frame, model: Model) -> BBA:
    """The all-ignorance assignment m(Θ₁∪...∪Θₙ) = 1."""
    return BBA(frame, model, {total_ignorance(frame): 1.0})


def belief(b: BBA, a: Proposition) -> float:
    """Bel(a): total mass on non-empty focal elements below ``a``."""
    if a.frame != b.frame:
        raise ValueError("query belongs to a different frame")
    return fsum(m for x, m in b.items() if not x.is_empty and leq(x, a, b.model))


def plausibility(b: BBA, a: Proposition) -> float:
    """Pl(a): total mass on focal elements compatible with ``a``."""
    if a.frame != b.frame:
        raise ValueError("query belongs to a different frame")
    return fsum(
        m
        for x, m in b.items()
        if not reduce_under_model(conjoin(x, a), b.model).is_empty
    )


def _common_context(bbas: Sequence[BBA]) -> tuple[Frame, Model]:
    if len(bbas) < 2:
        raise ValueError("combination needs at least two sources")
    frame, model = bbas[0].frame, bbas[0].model
    for b in bbas[1:]:
        if b.frame != frame or b.model != model:
            raise ValueError("sources disagree on frame or model")
    return frame, model


def _tuple_products(bbas: Sequence[BBA]):
    """Yield (focal tuple, mass product) over all source combinations."""
    for combo in product(*[b.items() for b in bbas]):
        pi = 1.0
        for _, mass in combo:
            pi *= mass
        yield tuple(prop for prop, _ in combo), pi


def _reduced_meet(props: Sequence[Proposition], model: Model) -> Proposition:
    meet = props[0]
    for p in props[1:]:
        meet = reduce_under_model(conjoin(meet, p), model)
    return reduce_under_model(meet, model)


def conjunctive_combine(bbas: Sequence[BBA]) -> CombinationReport:
    """Unnormalized conjunctive rule; conflicting mass is kept on ∅."""
    frame, model = _common_context(bbas)
    contributions: dict[Proposition, list[float]] = {}
    for props, pi in _tuple_products(bbas):
        meet = _reduced_meet(props, model)
        contributions.setdefault(meet, []).append(pi)
    masses = {k: fsum(v) for k, v in contributions.items()}
    result = BBA(frame, model, masses)
    return CombinationReport(result, result.mass_on_empty(), None)


def dempster_combine(bbas: Sequence[BBA]) -> CombinationReport:
    """Dempster's rule: conjunctive combination renormalized by K = 1 - conflict."""
    conjunctive = conjunctive_combine(bbas)
    k = 1.0 - conjunctive.conflict_mass
    if k <= TOTAL_CONFLICT_EPS:
        raise TotalConflictError(
            f"conflict mass {conjunctive.conflict_mass!r} leaves nothing to normalize"
        )
    masses = {
        prop: mass / k
        for prop, mass in conjunctive.result.items()
        if not prop.is_empty
    }
    return CombinationReport(
        BBA(bbas[0].frame, bbas[0].model, masses), conjunctive.conflict_mass, k
    )


def dsm_hybrid_combine(bbas: Sequence[BBA]) -> CombinationReport:
    """Hybrid DSm rule: conflicting mass is rerouted, never normalized away.

    Each source tuple routes its mass product to the first of:

    1. the reduced meet of the tuple, when non-empty;
    2. for tuples whose inputs are all empty under the model, the union of
       the singletons the inputs mention (total ignorance when that union is
       itself empty);
    3. otherwise the reduced join of the tuple, falling back to total
       ignorance if the join is empty.

    ``conflict_mass`` reports the total mass rerouted by branches 2 and 3.
    """
    frame, model = _common_context(bbas)
    ignorance = total_ignorance(frame)
    contributions: dict[Proposition, list[float]] = {}
    rerouted: list[float] = []
    for props, pi in _tuple_products(bbas):
        meet = _reduced_meet(props, model)
        if not meet.is_empty:
            contributions.setdefault(meet, []).append(pi)
            continue
        rerouted.append(pi)
        if all(p.is_empty for p in props):
            # Stored keys are reduced, so an empty input names no singletons:
            # the union-of-mentioned-singletons reroute degenerates to ignorance.
            target = ignorance
        else:
            join = props[0]
            for p in props[1:]:
                join = disjoin(join, p)
            target = reduce_under_model(join, model)
        if target.is_empty:
            target = ignorance
        contributions.setdefault(target, []).append(pi)
    masses = {k: fsum(v) for k, v in contributions.items()}
    result = BBA(frame, model, masses)
    return CombinationReport(result, fsum(rerouted), None)
