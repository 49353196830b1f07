"""Exact probabilistic and evidential entailment over propositional
knowledge bases.

The engine views n named sentences as an n-dimensional binary random
variable.  Point probabilities induce tight entailment bounds for any
query via exact linear programming; evidential intervals do the same
through mass functions on subsets of the interpretation frame.  All
arithmetic is rational, so every answer is exact.
"""

from .errors import (
    AtomCapExceeded,
    CapExceeded,
    EngineError,
    EmptyFocalElement,
    FormulaSyntaxError,
    Incoherent,
    Infeasible,
    InfeasibleIntervals,
    InvalidDistribution,
    KBFileError,
    MassSumNotOne,
    SpaceMismatch,
    TotalConflict,
    Unbounded,
)
from .evidential import (
    EvidentialInterval,
    IntervalSystem,
    MassFunction,
    collapse_check,
    combine,
    evidential_entail,
    interval_system,
    mass_function,
    plausibility,
    support,
)
from .formula import Formula, atoms, evaluate, parse, to_text
from .problog import (
    JointDistribution,
    bayes_posterior,
    conditional,
    entail_bounds,
    extend_joint,
    joint_distribution,
    marginal,
    valuation,
)
from .semantics import (
    InterpretationSpace,
    SentenceSet,
    interpretation_space,
    is_realizable,
    sentence_set,
    support_set,
)

__version__ = "0.1.0"

__all__ = [
    "AtomCapExceeded",
    "CapExceeded",
    "EngineError",
    "EmptyFocalElement",
    "EvidentialInterval",
    "Formula",
    "FormulaSyntaxError",
    "Incoherent",
    "Infeasible",
    "InfeasibleIntervals",
    "InterpretationSpace",
    "IntervalSystem",
    "InvalidDistribution",
    "JointDistribution",
    "KBFileError",
    "MassFunction",
    "MassSumNotOne",
    "SentenceSet",
    "SpaceMismatch",
    "TotalConflict",
    "Unbounded",
    "atoms",
    "bayes_posterior",
    "collapse_check",
    "combine",
    "conditional",
    "entail_bounds",
    "evaluate",
    "evidential_entail",
    "extend_joint",
    "interpretation_space",
    "interval_system",
    "is_realizable",
    "joint_distribution",
    "marginal",
    "mass_function",
    "parse",
    "plausibility",
    "sentence_set",
    "support",
    "support_set",
    "to_text",
    "valuation",
]
