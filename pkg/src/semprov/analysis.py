"""Reverse provenance analysis.

Starting from a tracked interpretation (facts annotated with tokens, or
fixed to hold/fail untracked), the provenance polynomial of a sentence
answers questions about the whole family of structures that agree with the
tracking: satisfiability and validity within the family, extraction of a
witnessing structure per monomial, proof-tree counting, confidence
maximization over candidate structures, clearance levels, and updating a
structure's provenance after inserting or deleting facts.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import semirings
from .errors import CapExceeded, SemanticError
from .formulas import Literal, Not, free_vars
from .interpretations import (
    KInterpretation, Structure, compatible_models, evaluate, is_model_compatible,
    specialize,
)
from .polynomials import DualPolynomial, Monomial


class TrackingAssumptions:
    """A tracked dual-polynomial interpretation plus its token bookkeeping.

    Every fact pair must carry values from {0, 1, token}: a positive fact
    may be annotated with a positive token, its negation with the
    complementary negative token, and each base name ties to exactly one
    fact.  ``pairs`` holds the base names whose two tokens are both in use;
    reverse analysis that extracts models additionally requires the
    interpretation to be model-compatible (every pair is token/complement,
    (0, 1) or (1, 0)).
    """

    def __init__(self, interpretation: KInterpretation):
        if interpretation.semiring is not semirings.DUALPOLY:
            raise SemanticError("tracking assumptions live in dualpoly")
        zero = semirings.DUALPOLY.zero
        one = semirings.DUALPOLY.one
        token_table = {}
        pairs = set()
        for literal in interpretation.literals():
            if not literal.positive:
                continue
            pos_value = interpretation.value(literal)
            neg_value = interpretation.value(literal.negate())
            pos_token = self._token_of(literal, pos_value, zero, one, negated=False)
            neg_token = self._token_of(literal, neg_value, zero, one, negated=True)
            base = None
            if pos_token and neg_token:
                if neg_token != pos_token.complement():
                    raise SemanticError(
                        f"{literal} and its negation carry unrelated tokens "
                        f"{pos_token} and {neg_token}"
                    )
                pairs.add(pos_token.name)
            if pos_token:
                base = pos_token.name
            elif neg_token:
                base = neg_token.name
            if base is not None:
                if base in token_table:
                    raise SemanticError(
                        f"token base {base} annotates both {token_table[base]} "
                        f"and {literal}"
                    )
                token_table[base] = literal
        self.interpretation = interpretation
        self.token_table = token_table
        self.pairs = frozenset(pairs)
        self.model_compatible = is_model_compatible(interpretation)

    @staticmethod
    def _token_of(literal, value, zero, one, negated):
        if value == zero or value == one:
            return None
        token = value.as_single_token()
        if token is None or token.negated != negated:
            raise SemanticError(
                f"literal {literal if not negated else literal.negate()} "
                f"carries {value}, not a token, 0 or 1"
            )
        return token

    def require_model_compatible(self):
        if not self.model_compatible:
            raise SemanticError(
                "this analysis needs a model-compatible tracking: every fact "
                "pair must be a token pair, (0, 1) or (1, 0)"
            )

    def fact_for(self, base: str) -> Literal:
        try:
            return self.token_table[base]
        except KeyError:
            raise SemanticError(f"token base {base} tracks no fact") from None


@dataclass(frozen=True)
class ModelWitness:
    """A structure extracted from one provenance monomial.

    ``free_facts`` are the tracked facts the monomial leaves unconstrained;
    the model makes every literal named by the monomial true.
    """

    monomial: Monomial
    coefficient: int
    model: Structure
    free_facts: frozenset


def _require_sentence(formula):
    unbound = free_vars(formula)
    if unbound:
        raise SemanticError(
            f"expected a sentence; free variables: {', '.join(sorted(unbound))}"
        )


def provenance(assumptions: TrackingAssumptions, sentence) -> DualPolynomial:
    """The provenance polynomial; nonzero exactly when some structure
    agreeing with the tracking satisfies the sentence."""
    _require_sentence(sentence)
    return evaluate(assumptions.interpretation, sentence)


def check_validity(assumptions: TrackingAssumptions, sentence) -> bool:
    """True when the sentence holds in every structure agreeing with the
    tracking, i.e. the provenance of its negation is zero."""
    _require_sentence(sentence)
    return not provenance(assumptions, Not(sentence))


def count_proof_trees(assumptions: TrackingAssumptions, sentence) -> int:
    """Number of proof trees over the tracked premises: the coefficient sum
    of the provenance polynomial."""
    return provenance(assumptions, sentence).coefficient_sum()


def _witness_parts(assumptions: TrackingAssumptions, monomial: Monomial):
    pi = assumptions.interpretation
    one = semirings.DUALPOLY.one
    base_facts = []
    for literal in pi.literals():
        if literal.positive and pi.value(literal) == one:
            base_facts.append(literal)
    forced_true, forced_false = [], []
    for token, _ in monomial.powers:
        tracked = assumptions.fact_for(token.name)
        (forced_false if token.negated else forced_true).append(tracked)
    free = sorted(
        (
            assumptions.fact_for(base)
            for base in assumptions.pairs - monomial.base_names()
        ),
        key=lambda l: l.sort_key,
    )
    return base_facts + forced_true, forced_false, free


def _model_from(assumptions: TrackingAssumptions, present):
    pi = assumptions.interpretation
    extensions = {}
    for literal in present:
        extensions.setdefault(literal.relation, set()).add(literal.args)
    return Structure(pi.universe, pi.vocabulary, extensions)


def witnesses(
    assumptions: TrackingAssumptions,
    sentence,
    completion: str = "canonical",
    cap: int = 64,
):
    """Models from the tracked family satisfying the sentence, one group per
    provenance monomial.

    ``canonical`` completes each monomial minimally (unconstrained tracked
    facts stay false); ``enumerate`` emits all 2^u completions of the u free
    facts, raising CapExceeded rather than truncating when a monomial has
    more completions than ``cap``.
    """
    if completion not in ("canonical", "enumerate"):
        raise SemanticError(f"unknown completion mode {completion!r}")
    assumptions.require_model_compatible()
    poly = provenance(assumptions, sentence)
    out = []
    for monomial, coeff in poly.monomials():
        present, _, free = _witness_parts(assumptions, monomial)
        if completion == "canonical":
            completions = [()]
        else:
            total = 1 << len(free)
            if total > cap:
                raise CapExceeded(
                    f"monomial {monomial} has {len(free)} free facts", total
                )
            completions = [
                tuple(f for i, f in enumerate(free) if mask >> i & 1)
                for mask in range(total)
            ]
        for extra in completions:
            out.append(
                ModelWitness(
                    monomial=monomial,
                    coefficient=coeff,
                    model=_model_from(assumptions, present + list(extra)),
                    free_facts=frozenset(free),
                )
            )
    return out


def _monomial_value(semiring, monomial, values, what):
    def images():
        for token, exp in monomial.powers:
            if token not in values:
                raise SemanticError(f"no {what} for token {token}")
            for _ in range(exp):
                yield values[token]

    return semiring.product(images())


def score_monomials(poly: DualPolynomial, scores) -> list:
    """Viterbi value of each monomial (product of token scores; the
    coefficient is irrelevant under idempotent addition)."""
    return [
        (monomial, _monomial_value(semirings.VITERBI, monomial, scores, "confidence score"))
        for monomial, _ in poly.monomials()
    ]


def maximize_confidence(assumptions: TrackingAssumptions, sentence, scores):
    """The provenance monomial of highest confidence, its value, and the
    canonical witness model it describes.

    Scores may pair a token and its complement with nonzero values; each
    monomial is scored on its own, so no homomorphism condition applies.
    Ties break toward the canonically smallest monomial.
    """
    assumptions.require_model_compatible()
    poly = provenance(assumptions, sentence)
    if not poly:
        raise SemanticError(
            "zero provenance: no structure agreeing with the tracking "
            "satisfies the sentence"
        )
    best_monomial, best_value = None, None
    for monomial, value in score_monomials(poly, scores):
        if best_value is None or value > best_value:
            best_monomial, best_value = monomial, value
    present, _, free = _witness_parts(assumptions, best_monomial)
    witness = ModelWitness(
        monomial=best_monomial,
        coefficient=poly.coefficient(best_monomial),
        model=_model_from(assumptions, present),
        free_facts=frozenset(free),
    )
    return best_monomial, best_value, witness


def overall_confidence(assumptions: TrackingAssumptions, sentence, scores):
    """Whole-polynomial Viterbi value through the unique homomorphism.

    Requires annihilating scores on every token pair the tracking uses;
    without that no homomorphism exists and the per-monomial view
    (``maximize_confidence``) is the meaningful one.
    """
    poly = provenance(assumptions, sentence)
    return poly.eval_hom(semirings.VITERBI, scores, pairs=assumptions.pairs)


def clearance(assumptions: TrackingAssumptions, sentence, levels):
    """Overall clearance level of the sentence plus the level of each
    monomial's proof."""
    poly = provenance(assumptions, sentence)
    overall = poly.eval_hom(semirings.ACCESS, levels, pairs=assumptions.pairs)
    per_monomial = [
        (monomial, _monomial_value(semirings.ACCESS, monomial, levels, "clearance level"))
        for monomial, _ in poly.monomials()
    ]
    return overall, per_monomial


def update_model(
    assumptions: TrackingAssumptions,
    old: Structure,
    insert=(),
    delete=(),
    sentence=None,
):
    """Apply fact insertions/deletions to a structure and recompute the
    sentence's provenance by specializing the tracking to the new structure.

    Zeroing the deleted facts' tokens in the old specialized polynomial
    would be wrong (it erases proofs the new structure still has); the
    update must route through the tracking.
    """
    _require_sentence(sentence)
    assumptions.require_model_compatible()
    pi = assumptions.interpretation
    insert, delete = list(insert), list(delete)
    both = {l for l in insert} & {l for l in delete}
    if both:
        raise SemanticError(f"fact {sorted(both, key=str)[0]} both inserted and deleted")
    if not compatible_models(pi, old):
        raise SemanticError("the old structure does not agree with the tracking")
    one, zero = semirings.DUALPOLY.one, semirings.DUALPOLY.zero
    for literal in insert:
        if not literal.positive:
            raise SemanticError("insert positive facts; delete to remove them")
        if pi.value(literal) == zero and pi.value(literal.negate()) == one:
            raise SemanticError(
                f"cannot insert {literal}: the tracking fixes it as absent"
            )
    for literal in delete:
        if not literal.positive:
            raise SemanticError("delete positive facts")
        if pi.value(literal) == one:
            raise SemanticError(
                f"cannot delete {literal}: the tracking fixes it as present"
            )
    new = old.updated(insert, delete)
    return new, evaluate(specialize(pi, new), sentence)
