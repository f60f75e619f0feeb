"""Semiring semantics for first-order model checking and reverse
provenance analysis with dual-indeterminate polynomials."""

from .analysis import (
    ModelWitness,
    TrackingAssumptions,
    check_validity,
    clearance,
    count_proof_trees,
    maximize_confidence,
    overall_confidence,
    provenance,
    score_monomials,
    update_model,
    witnesses,
)
from .errors import CapExceeded, InputError, SemanticError, SemprovError
from .formulas import (
    Vocabulary,
    Literal,
    all_literals,
    fact,
    format_formula,
    free_vars,
    is_nnf,
    neg_fact,
    nnf,
    parse_formula,
)
from .interpretations import (
    KInterpretation,
    Structure,
    canonical_count,
    canonical_truth,
    compatible_models,
    defined_model,
    evaluate,
    is_model_compatible,
    is_model_defining,
    specialize,
    truth_lift,
)
from .polynomials import DualPolynomial, Monomial, Token, parse_poly, parse_token
from .prooftrees import ProofTree, enumerate_trees, format_tree, oracle_polynomial, tree_monomial
from .semirings import (
    ACCESS,
    BOOL,
    DUALPOLY,
    FUZZY,
    NAT,
    POSBOOL,
    SEMIRINGS,
    TROPICAL,
    VITERBI,
    Homomorphism,
    Semiring,
    by_name,
    dagger,
    dagger_hom,
    dual_eval_hom,
    tropical_to_viterbi,
    viterbi_to_tropical,
)

__version__ = "0.1.0"
