import random
from fractions import Fraction

import pytest

from semprov import (
    DUALPOLY, CapExceeded, DualPolynomial, KInterpretation, Monomial,
    SemanticError, Structure, Token, TrackingAssumptions, check_validity,
    clearance, count_proof_trees, evaluate, fact, maximize_confidence,
    neg_fact, overall_confidence, parse_formula, parse_poly, provenance,
    score_monomials, specialize, update_model, witnesses,
)
from semprov.formulas import Not

from helpers import (
    all_structures, brute_check, full_compatible_tracking, random_nnf_sentence,
)

FULL_POLY = parse_poly("(~p+~r+t)*(p+~q+s+~t)*(1+q+r+~s)")


# -- provenance and validity ---------------------------------------------------

def test_open_tracking_provenance_is_the_factored_expansion(
    open_tracking, no_dominant
):
    poly = provenance(open_tracking, no_dominant)
    assert poly == FULL_POLY
    assert all(c == 1 for _, c in poly.monomials())


def test_negated_sentence_provenance(open_tracking, has_dominant):
    assert provenance(open_tracking, has_dominant) == parse_poly(
        "p*r*~t + ~p*q*~s*t"
    )


def test_tautology_is_valid_under_full_tracking(two_node_tracking, tautology):
    assert provenance(two_node_tracking, Not(tautology)) == DualPolynomial.zero()
    assert check_validity(two_node_tracking, tautology)
    assert provenance(two_node_tracking, tautology) == parse_poly(
        "(~p+~r)*(~q+~s) + (q+r)*(p+s)"
    )


def test_satisfiable_but_not_valid(open_tracking, no_dominant):
    assert provenance(open_tracking, no_dominant)  # satisfiable
    assert not check_validity(open_tracking, no_dominant)


def test_trivially_valid_sentence(open_tracking, digraph_vocab):
    always = parse_formula("a = a", digraph_vocab)
    assert check_validity(open_tracking, always)


def test_provenance_requires_sentence(open_tracking, digraph_vocab):
    with pytest.raises(SemanticError):
        provenance(open_tracking, parse_formula("E(x,x)", digraph_vocab))


# -- tracking assumption bookkeeping ----------------------------------------------

def test_tracking_assumptions_token_table(open_tracking, graph_tracking):
    assert open_tracking.token_table["p"] == fact("E", "a", "b")
    assert open_tracking.token_table["t"] == fact("E", "b", "a")
    assert open_tracking.pairs == {"p", "q", "r", "s", "t"}
    assert open_tracking.model_compatible
    # the fixed graph tracks tokens one-sided: same table, no pairs
    assert graph_tracking.token_table["r"] == fact("E", "a", "c")
    assert graph_tracking.pairs == frozenset()
    assert not graph_tracking.model_compatible


def test_tracking_assumptions_reject_token_reuse(digraph_vocab):
    base = full_compatible_tracking(("a", "b", "c"), digraph_vocab)
    # steal E(a,b)'s token pair for E(a,a) as well
    stolen = base.value(fact("E", "a", "b")).as_single_token()
    clashing = base.with_values({
        fact("E", "a", "a"): DualPolynomial.from_token(stolen),
        neg_fact("E", "a", "a"): DualPolynomial.from_token(stolen.complement()),
    })
    with pytest.raises(SemanticError):
        TrackingAssumptions(clashing)


def test_tracking_assumptions_reject_mismatched_complements(digraph_vocab):
    base = full_compatible_tracking(("a", "b", "c"), digraph_vocab)
    broken = base.with_values(
        {neg_fact("E", "a", "b"): DualPolynomial.from_token(Token("zz", True))}
    )
    with pytest.raises(SemanticError):
        TrackingAssumptions(broken)


# -- witnesses ----------------------------------------------------------------------

def test_canonical_witness_with_no_positive_information(
    open_tracking, no_dominant, no_edge_graph
):
    found = witnesses(open_tracking, no_dominant)
    empty = Monomial.of(Token("p", True), Token("q", True))
    by_monomial = {w.monomial: w for w in found}
    assert by_monomial[empty].model == no_edge_graph
    assert brute_check(no_edge_graph, no_dominant)


def test_canonical_witness_for_dominant_vertex(open_tracking, has_dominant):
    found = witnesses(open_tracking, has_dominant)
    best = Monomial.of(Token("p"), Token("r"), Token("t", True))
    by_monomial = {w.monomial: w for w in found}
    witness = by_monomial[best]
    assert witness.model.facts() == [fact("E", "a", "b"), fact("E", "a", "c")]
    assert witness.free_facts == {fact("E", "b", "c"), fact("E", "c", "b")}


def test_enumerated_completions(open_tracking, no_dominant):
    # the monomial p*q*t leaves exactly the edges a->c and c->b free
    found = witnesses(open_tracking, no_dominant, completion="enumerate", cap=64)
    target = Monomial.of(Token("p"), Token("q"), Token("t"))
    models = [w.model for w in found if w.monomial == target]
    assert len(models) == 4
    free = {fact("E", "a", "c"), fact("E", "c", "b")}
    seen = set()
    for model in models:
        chosen = frozenset(f for f in free if model.satisfies(f))
        seen.add(chosen)
        assert brute_check(model, no_dominant)
    assert len(seen) == 4


def test_witness_groups_carry_coefficients(open_tracking, digraph_vocab):
    # a repeated disjunct doubles the proof count but still yields one model
    doubled = parse_formula("E(a,b) | E(a,b)", digraph_vocab)
    assert provenance(open_tracking, doubled) == parse_poly("2*p")
    found = witnesses(open_tracking, doubled)
    assert len(found) == 1
    assert found[0].coefficient == 2
    assert found[0].model.facts() == [fact("E", "a", "b")]
    assert count_proof_trees(open_tracking, doubled) == 2


def test_every_witness_satisfies_the_sentence(
    open_tracking, no_dominant, has_dominant
):
    from semprov import compatible_models

    for sentence in (no_dominant, has_dominant):
        for w in witnesses(open_tracking, sentence, completion="enumerate", cap=64):
            assert brute_check(w.model, sentence)
            assert compatible_models(open_tracking.interpretation, w.model)


def test_witness_completeness_on_two_elements():
    rng = random.Random(60)
    tracking = TrackingAssumptions(full_compatible_tracking(("a", "b")))
    structures = all_structures(("a", "b"))
    sentences = [random_nnf_sentence(rng, ("a", "b")) for _ in range(12)]
    for sentence in sentences:
        expected = {s for s in structures if brute_check(s, sentence)}
        got = {
            w.model
            for w in witnesses(tracking, sentence, completion="enumerate", cap=64)
        }
        assert got == expected


def test_specialized_monomials_appear_with_same_coefficient(
    open_tracking, no_dominant
):
    rng = random.Random(61)
    full = provenance(open_tracking, no_dominant)
    for s in rng.sample(all_structures(("a", "b", "c")), 20):
        from semprov import compatible_models

        if not compatible_models(open_tracking.interpretation, s):
            continue
        down = evaluate(specialize(open_tracking.interpretation, s), no_dominant)
        for monomial, coeff in down.monomials():
            assert full.coefficient(monomial) == coeff


def test_witness_cap_is_reported(open_tracking, no_dominant):
    with pytest.raises(CapExceeded) as err:
        witnesses(open_tracking, no_dominant, completion="enumerate", cap=4)
    assert err.value.count == 8


def test_witnesses_need_model_compatibility(graph_tracking, no_dominant):
    with pytest.raises(SemanticError):
        witnesses(graph_tracking, no_dominant)


# -- proof-tree counting --------------------------------------------------------------

def test_count_proof_trees(open_tracking, no_dominant, has_dominant,
                           no_edge_graph, digraph_vocab):
    assert count_proof_trees(open_tracking, has_dominant) == 2
    killed = TrackingAssumptions(
        specialize(open_tracking.interpretation, no_edge_graph)
    )
    assert count_proof_trees(killed, no_dominant) == 8
    falsehood = parse_formula("E(a,b) & ~E(a,b)", digraph_vocab)
    assert count_proof_trees(open_tracking, falsehood) == 0


def test_count_agrees_with_unit_relabelling(open_tracking, has_dominant,
                                            no_edge_graph, no_dominant):
    # sending every token to 1 in the naturals gives the same count for
    # these cases (each proof uses a consistent premise set)
    from semprov import NAT

    def unit_count(assumptions, sentence):
        mapping = {}
        for literal in assumptions.interpretation.literals():
            value = assumptions.interpretation.value(literal)
            mapping[literal] = 0 if value == DUALPOLY.zero else 1
        pi = KInterpretation(
            NAT, assumptions.interpretation.vocabulary,
            assumptions.interpretation.universe, mapping,
        )
        return evaluate(pi, sentence)

    assert unit_count(open_tracking, has_dominant) == 2
    killed = TrackingAssumptions(
        specialize(open_tracking.interpretation, no_edge_graph)
    )
    assert unit_count(killed, no_dominant) == 8
    assert unit_count(killed, no_dominant) == count_proof_trees(killed, no_dominant)


# -- confidence ------------------------------------------------------------------------

def _uniform_third(tracking):
    return {
        Token(base, neg): Fraction(1, 3)
        for base in tracking.pairs for neg in (False, True)
    }


def test_maximize_confidence(open_tracking, has_dominant):
    scores = _uniform_third(open_tracking)
    monomial, value, witness = maximize_confidence(
        open_tracking, has_dominant, scores
    )
    assert monomial == Monomial.of(Token("p"), Token("r"), Token("t", True))
    assert abs(value - Fraction(1, 27)) <= Fraction(1, 10 ** 12)
    assert witness.model.facts() == [fact("E", "a", "b"), fact("E", "a", "c")]
    scored = dict(score_monomials(provenance(open_tracking, has_dominant), scores))
    alt = Monomial.of(Token("p", True), Token("q"), Token("s", True), Token("t"))
    assert scored[alt] == Fraction(1, 81)


def test_maximize_single_monomial(open_tracking, digraph_vocab):
    lone = parse_formula("E(a,b) & ~E(b,a)", digraph_vocab)
    scores = {token: Fraction(1, 100) for token in _uniform_third(open_tracking)}
    monomial, value, _ = maximize_confidence(open_tracking, lone, scores)
    assert monomial == Monomial.of(Token("p"), Token("t", True))
    assert value == Fraction(1, 10000)


def test_maximize_tie_breaks_canonically(digraph_vocab):
    tracking = TrackingAssumptions(full_compatible_tracking(("a", "b")))
    either = parse_formula(
        "E(a,b) | E(b,a)", tracking.interpretation.vocabulary
    )
    scores = {
        Token(base, neg): Fraction(1, 2)
        for base in tracking.pairs for neg in (False, True)
    }
    poly = provenance(tracking, either)
    assert len(poly) == 2  # two equally scored monomials
    monomial, value, _ = maximize_confidence(tracking, either, scores)
    assert value == Fraction(1, 2)
    assert monomial == min(m for m, _ in poly.monomials())


def test_maximize_rejects_zero_provenance(open_tracking, digraph_vocab):
    falsehood = parse_formula("E(a,b) & ~E(a,b)", digraph_vocab)
    with pytest.raises(SemanticError):
        maximize_confidence(open_tracking, falsehood, {})


def test_overall_confidence_through_homomorphism(graph_tracking, no_dominant):
    scores = {}
    for base, plus, minus in (
        ("p", 0.9, 0.0), ("q", 0.9, 0.0), ("t", 0.2, 0.0),
        ("r", 0.0, 0.6), ("s", 0.0, 0.6),
    ):
        scores[Token(base)] = plus
        scores[Token(base, True)] = minus
    value = overall_confidence(graph_tracking, no_dominant, scores)
    assert abs(value - 0.54) <= 1e-12


def test_overall_confidence_rejects_inconsistent_scores(
    open_tracking, has_dominant
):
    with pytest.raises(SemanticError):
        overall_confidence(open_tracking, has_dominant, _uniform_third(open_tracking))


# -- clearance ----------------------------------------------------------------------

def _clearance_levels(tracking):
    levels = {}
    for base in tracking.token_table:
        levels[Token(base)] = "0"
        levels[Token(base, True)] = "P"
    levels.update({
        Token("p"): "P", Token("q"): "P", Token("t"): "P",
        Token("r", True): "T", Token("s", True): "T",
    })
    return levels


def test_clearance_analysis(graph_tracking, no_dominant):
    overall, per_monomial = clearance(
        graph_tracking, no_dominant, _clearance_levels(graph_tracking)
    )
    assert overall == "P"
    by_monomial = {str(m): level for m, level in per_monomial}
    assert by_monomial["p*~r"] == "T"
    assert by_monomial["p*t"] == "P"


def test_clearance_all_public(graph_tracking, no_dominant):
    levels = {
        Token(base, neg): "P"
        for base in graph_tracking.token_table for neg in (False, True)
    }
    overall, per_monomial = clearance(graph_tracking, no_dominant, levels)
    assert overall == "P"
    assert all(level == "P" for _, level in per_monomial)


# -- model update -----------------------------------------------------------------------

def test_update_by_deletion(open_tracking, three_edge_graph, one_edge_graph,
                            no_dominant):
    new, poly = update_model(
        open_tracking, three_edge_graph,
        delete=[fact("E", "a", "b"), fact("E", "b", "c")],
        sentence=no_dominant,
    )
    assert new == one_edge_graph
    assert poly == parse_poly("(~p+~r+t)*~q*(1+~s)")


def test_update_by_insertion(open_tracking, three_edge_graph, all_edge_graph,
                             no_dominant):
    new, poly = update_model(
        open_tracking, three_edge_graph,
        insert=[fact("E", "a", "c"), fact("E", "c", "b")],
        sentence=no_dominant,
    )
    assert new == all_edge_graph
    assert poly == parse_poly("t*(p+s)*(1+q+r)")


def test_empty_update_keeps_the_polynomial(open_tracking, three_edge_graph,
                                           no_dominant, graph_tracking):
    new, poly = update_model(open_tracking, three_edge_graph, sentence=no_dominant)
    assert new == three_edge_graph
    assert poly == provenance(graph_tracking, no_dominant)


def test_token_zeroing_is_not_an_update(graph_tracking, one_edge_graph,
                                        no_dominant):
    # zeroing the deleted edges' tokens erases every monomial, yet the
    # edited structure still satisfies the sentence
    old_poly = provenance(graph_tracking, no_dominant)
    zeroed = old_poly.substitute_zero({Token("p"), Token("q")})
    assert zeroed == DualPolynomial.zero()
    assert brute_check(one_edge_graph, no_dominant)


def test_update_rejects_pinned_facts(open_tracking, three_edge_graph, no_dominant):
    with pytest.raises(SemanticError):
        update_model(
            open_tracking, three_edge_graph,
            insert=[fact("E", "c", "a")], sentence=no_dominant,
        )


def test_update_rejects_deleting_mandatory_facts(digraph_vocab, no_dominant):
    from semprov.formats import load_tracking

    text = """
universe a b c
rel E/2
track E(a,b) = 1
track E(b,c) = q
track E(a,c) = r
track E(c,b) = s
track E(b,a) = t
default + = 0
default - = 1
"""
    tracking = load_tracking(text)
    structure = Structure(
        ("a", "b", "c"), tracking.interpretation.vocabulary,
        {"E": {("a", "b"), ("b", "a")}},
    )
    with pytest.raises(SemanticError):
        update_model(
            tracking, structure, delete=[fact("E", "a", "b")], sentence=no_dominant
        )


def test_update_rejects_conflicting_edit(open_tracking, three_edge_graph,
                                         no_dominant):
    with pytest.raises(SemanticError):
        update_model(
            open_tracking, three_edge_graph,
            insert=[fact("E", "a", "c")], delete=[fact("E", "a", "c")],
            sentence=no_dominant,
        )


def test_update_rejects_incompatible_start(open_tracking, no_dominant,
                                           digraph_vocab):
    stray = Structure(("a", "b", "c"), digraph_vocab, {"E": {("c", "a")}})
    with pytest.raises(SemanticError):
        update_model(open_tracking, stray, sentence=no_dominant)
