"""Belief-function fusion on hyper-power sets.

The package models weighted rule-based systems three ways: a fallacious
Bayesian point-estimate analysis, Dempster-Shafer fusion on a refined
exclusive frame, and hybrid DSm fusion directly on the hyper-power set with
integrity constraints.
"""

from .analysis import (
    CLASSICAL_PRINCIPLES,
    BayesEstimates,
    Formula,
    ModusTollensPosteriors,
    indifference_estimates,
    modus_tollens_posteriors,
    parse_formula,
    pearl_flying_bound,
    tautology_check,
)
from .belief import (
    BBA,
    CombinationReport,
    TotalConflictError,
    belief,
    conjunctive_combine,
    dempster_combine,
    dsm_hybrid_combine,
    plausibility,
    vacuous,
)
from .lattice import (
    AtomFrame,
    EnumerationLimitError,
    Frame,
    Model,
    Proposition,
    atoms_to_proposition,
    canonicalize,
    conjoin,
    disjoin,
    enumerate_hyper_power_set,
    is_empty_under,
    iter_hyper_power_set,
    leq,
    proposition_from_names,
    reduce_under_model,
    refine_to_atoms,
    total_ignorance,
    u_of,
)
from .rulebase import (
    ENGINES,
    DstAxes,
    EngineResult,
    FusionReport,
    QueryResult,
    Scenario,
    WeightedRule,
    observation_to_bba,
    rule_to_conditional_bba,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AtomFrame",
    "BBA",
    "BayesEstimates",
    "CLASSICAL_PRINCIPLES",
    "CombinationReport",
    "DstAxes",
    "ENGINES",
    "EngineResult",
    "EnumerationLimitError",
    "Formula",
    "Frame",
    "FusionReport",
    "Model",
    "ModusTollensPosteriors",
    "Proposition",
    "QueryResult",
    "Scenario",
    "TotalConflictError",
    "WeightedRule",
    "__version__",
    "atoms_to_proposition",
    "belief",
    "canonicalize",
    "conjoin",
    "conjunctive_combine",
    "dempster_combine",
    "disjoin",
    "dsm_hybrid_combine",
    "enumerate_hyper_power_set",
    "indifference_estimates",
    "is_empty_under",
    "iter_hyper_power_set",
    "leq",
    "modus_tollens_posteriors",
    "observation_to_bba",
    "parse_formula",
    "pearl_flying_bound",
    "plausibility",
    "proposition_from_names",
    "reduce_under_model",
    "refine_to_atoms",
    "rule_to_conditional_bba",
    "run_scenario",
    "total_ignorance",
    "u_of",
    "vacuous",
]
