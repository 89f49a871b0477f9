"""Model checking, encoding and bounded decision procedures for a modal
logic of social choice functions, cross-validated by brute-force
game-theoretic oracles on finite instances."""

from .core import (
    GameForm,
    InvalidDomain,
    LinearOrder,
    Profile,
    RepAtom,
    ScfModel,
    ScfTable,
    all_linear_orders,
    all_profiles,
    num_states,
    profile_from_index,
    profile_index,
    scf_as_game_form,
    state_atoms,
)
from .logic import (
    FALSE,
    TRUE,
    And,
    Box,
    Diamond,
    Evaluator,
    Formula,
    FormulaDomainMismatch,
    Iff,
    Implies,
    KripkeScf,
    Not,
    Or,
    Out,
    Pref,
    PrefBox,
    Rep,
    Top,
    conj,
    disj,
    eval_kripke,
    evaluate,
    kripke_view,
    valid_in_model,
)
from .encodings import (
    BR,
    CITSOV,
    DOM,
    MON,
    NODICT,
    STRPROOF,
    PropertyId,
    ballot_agent,
    ballot_profile,
    best_response,
    better,
    better_holds,
    citsov,
    dom,
    mon,
    nodict,
    property_formula,
    rho,
    strproof,
    trueprofile,
    trueprofile_holds,
)
from .game import (
    AuditReport,
    ImplementationReport,
    MonotonicityReport,
    NonDirectMechanism,
    SolutionConcept,
    dom_equilibria,
    equivalence_audit,
    has_citsov,
    implements,
    is_dictatorial,
    is_monotonic,
    is_strategy_proof,
    nash_equilibria,
    solution_set,
    truthfully_implements,
)
from .decision import (
    BudgetExceeded,
    EnumerationBudget,
    Verdict,
    check_scf_property,
    enumerate_models,
    model_class_size,
    representative_model,
    sample_models,
    satisfiable,
    valid,
    valid_state_formula,
)
from .axioms import (
    SCHEMAS,
    AxiomInstance,
    default_pool,
    instantiate,
    instantiate_all,
    pref_necessitation_holds,
    soundness_check,
)
from .files import (
    FileFormatError,
    load_model,
    load_scf,
    model_from_dict,
    model_to_dict,
    save_model,
    save_scf,
    scf_from_dict,
    scf_to_dict,
)
from .parser import Context, ParseError, SourceSpan, format_formula, parse

__version__ = "0.1.0"
