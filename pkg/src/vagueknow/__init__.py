"""Vague knowledge as non-transitive indistinguishability over finite state spaces."""

from .errors import (
    BodyOutOfBounds,
    CapExceeded,
    InvalidStateSpace,
    InvariantBreach,
    LengthMismatch,
    NotACore,
    NotTransitive,
    ParseError,
    SelfDistinction,
    UnknownLabel,
    VagueKnowError,
)
from .generators import SplitMix64, ThresholdSpec, random_relation, threshold_relation
from .harness import census, enumerate_relations, verify_proposition
from .relation import (
    IndistinguishabilityRelation,
    Knowledge,
    KnowledgeClassification,
    ObservationLog,
    Relation,
    StateSpace,
    apply_observations,
    distinguishable_pair_count,
    from_indistinguishable_pairs,
    indistinguishable,
    is_transitive,
    neighborhood,
    new_complete,
    new_identity,
    observe_difference,
    transitivity_violations,
)
from .rough import (
    Core,
    Expression,
    InformationSet,
    Prop1Status,
    Prop2Status,
    check_proposition1,
    check_proposition2,
    classify_expression,
    cores,
    is_core,
    make_information_set,
    upper_boundary,
)
from .textformat import format_relation, parse_relation
from .tolerance import (
    Structure,
    ToleranceClass,
    equivalence_classes,
    structure_kind,
    tolerance_classes,
    vagueness_report,
)

__version__ = "0.1.0"
