"""revlab: belief revision over limited total preorders, with a postulate verifier."""

from .errors import (
    DomainError,
    InvariantError,
    NonWeakOrderError,
    ParseError,
    PreconditionError,
    RevlabError,
    ScopeMismatchError,
    TableMissError,
    TooLargeError,
    UnknownAtomError,
)
from .orders import (
    RankedOrder,
    enumerate_orders,
    leq,
    min_set,
    restrict,
    strictly_less,
    trichotomy_check,
)
from .prop import (
    Signature,
    entails,
    enumerate_formula_classes,
    expansion,
    formula_of_worlds,
    models,
    parse,
    parse_models,
)
from .states import (
    EpistemicState,
    StateUniverse,
    check_clf,
    check_fa,
    check_faithful_limited,
    dump_state,
    enumerate_states,
    parse_state,
    sample_states,
)
from .operators import (
    ExtensionalOperator,
    RevisionOperator,
    UpdatePolicy,
    agm_revise_beliefs,
    all_policies,
    canonical_assignment,
    cl_revise_beliefs,
    dl_revise_beliefs,
    dump_operator,
    il_revise_beliefs,
    parse_operator,
    tabulate,
)

__version__ = "0.1.0"
