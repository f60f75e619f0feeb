"""Interpretations of ground literals in a semiring, and the evaluation of
first-order formulas they induce.

An interpretation maps every literal over a finite universe to a semiring
element.  Evaluation extends it compositionally: conjunction and universal
quantification multiply, disjunction and existential quantification add,
equality atoms evaluate to the units, and negation is pushed to the literals
by rewriting the negated subtree to negation normal form.
"""

from __future__ import annotations

from . import semirings
from .errors import SemanticError
from .formulas import (
    And, Const, Eq, Exists, Forall, Literal, Neq, Not, Or, RelAtom, Var,
    Vocabulary, all_literals, free_vars, nnf,
)


class Structure:
    """A finite relational structure: universe plus relation extensions."""

    __slots__ = ("universe", "vocabulary", "extensions", "_hash")

    def __init__(self, universe, vocabulary: Vocabulary, extensions=()):
        self.universe = tuple(universe)
        if not self.universe:
            raise SemanticError("the universe must be non-empty")
        self.vocabulary = vocabulary
        ext = {name: frozenset() for name in vocabulary.relation_names()}
        for name, tuples in dict(extensions).items():
            arity = vocabulary.arity(name)
            rows = set()
            for row in tuples:
                row = tuple(row)
                if len(row) != arity:
                    raise SemanticError(
                        f"tuple {row} has wrong arity for relation {name}"
                    )
                if any(v not in self.universe for v in row):
                    raise SemanticError(
                        f"tuple {row} uses values outside the universe"
                    )
                rows.add(row)
            ext[name] = frozenset(rows)
        self.extensions = ext
        self._hash = hash(
            (self.universe, tuple(sorted((k, v) for k, v in ext.items())))
        )

    def satisfies(self, literal: Literal) -> bool:
        holds = literal.args in self.extensions[literal.relation]
        return holds if literal.positive else not holds

    def facts(self):
        """All true positive facts, in canonical literal order."""
        out = [
            Literal(True, rel, args)
            for rel, rows in self.extensions.items()
            for args in rows
        ]
        out.sort(key=lambda l: l.sort_key)
        return out

    def updated(self, insert=(), delete=()) -> "Structure":
        ext = {name: set(rows) for name, rows in self.extensions.items()}
        for lit in insert:
            ext[lit.relation].add(lit.args)
        for lit in delete:
            ext[lit.relation].discard(lit.args)
        return Structure(self.universe, self.vocabulary, ext)

    def __eq__(self, other):
        return (
            isinstance(other, Structure)
            and self.universe == other.universe
            and self.vocabulary == other.vocabulary
            and self.extensions == other.extensions
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        facts = " ".join(str(f) for f in self.facts())
        return f"<Structure universe={','.join(self.universe)} facts=[{facts}]>"


class KInterpretation:
    """A total map from ground literals to elements of one semiring."""

    __slots__ = ("semiring", "vocabulary", "universe", "literal_map")

    def __init__(self, semiring, vocabulary: Vocabulary, universe, literal_map):
        self.semiring = semiring
        self.vocabulary = vocabulary
        self.universe = tuple(universe)
        expected = all_literals(vocabulary, self.universe)
        literal_map = dict(literal_map)
        missing = [l for l in expected if l not in literal_map]
        if missing:
            raise SemanticError(f"interpretation misses literal {missing[0]}")
        unknown = set(literal_map) - set(expected)
        if unknown:
            raise SemanticError(
                f"interpretation maps unknown literal {sorted(unknown, key=str)[0]}"
            )
        for literal, value in literal_map.items():
            if not semiring.contains(value):
                raise SemanticError(
                    f"value for {literal} is outside semiring {semiring.name}"
                )
        self.literal_map = literal_map

    def value(self, literal: Literal):
        try:
            return self.literal_map[literal]
        except KeyError:
            raise SemanticError(f"unknown literal {literal}") from None

    def literals(self):
        return all_literals(self.vocabulary, self.universe)

    def with_values(self, overrides) -> "KInterpretation":
        updated = dict(self.literal_map)
        updated.update(overrides)
        return KInterpretation(self.semiring, self.vocabulary, self.universe, updated)

    def __repr__(self):
        return (
            f"<KInterpretation {self.semiring.name} over "
            f"{{{','.join(self.universe)}}}>"
        )


def truth_lift(structure: Structure, semiring) -> KInterpretation:
    """Literal -> one if it holds in the structure, else zero."""
    mapping = {
        literal: (semiring.one if structure.satisfies(literal) else semiring.zero)
        for literal in all_literals(structure.vocabulary, structure.universe)
    }
    return KInterpretation(semiring, structure.vocabulary, structure.universe, mapping)


def canonical_truth(structure: Structure) -> KInterpretation:
    """Boolean interpretation agreeing with the structure."""
    return truth_lift(structure, semirings.BOOL)


def canonical_count(structure: Structure) -> KInterpretation:
    """Natural-number interpretation: evaluation counts proof trees."""
    return truth_lift(structure, semirings.NAT)


class _Evaluator:
    """Single-use recursive evaluator with per-(node, valuation) memoization.

    Quantifiers revisit identical subproblems for every universe element;
    memoization keyed on the bindings a subformula actually reads keeps the
    recursion polynomial without changing any result (all operations pure).
    """

    def __init__(self, interpretation: KInterpretation):
        self.pi = interpretation
        self.k = interpretation.semiring
        self.memo = {}
        self.free_cache = {}
        self.nnf_cache = {}

    def free(self, node):
        got = self.free_cache.get(id(node))
        if got is None:
            got = free_vars(node)
            self.free_cache[id(node)] = got
        return got

    def ground(self, term, nu):
        if isinstance(term, Var):
            try:
                value = nu[term.name]
            except KeyError:
                raise SemanticError(f"unbound variable {term.name}") from None
        elif isinstance(term, Const):
            value = term.name
        else:
            raise SemanticError(f"not a term: {term!r}")
        if value not in self.pi.universe:
            raise SemanticError(f"value {value!r} is outside the universe")
        return value

    def eval(self, node, nu):
        key = (
            id(node),
            tuple(sorted((v, nu[v]) for v in self.free(node) if v in nu)),
        )
        got = self.memo.get(key)
        if got is None:
            got = self._eval(node, nu)
            self.memo[key] = got
        return got

    def _eval(self, node, nu):
        if isinstance(node, RelAtom):
            args = tuple(self.ground(a, nu) for a in node.args)
            return self.pi.value(Literal(True, node.relation, args))
        if isinstance(node, Not) and isinstance(node.body, RelAtom):
            atom = node.body
            args = tuple(self.ground(a, nu) for a in atom.args)
            return self.pi.value(Literal(False, atom.relation, args))
        if isinstance(node, Not):
            rewritten = self.nnf_cache.get(id(node))
            if rewritten is None:
                rewritten = nnf(node)
                self.nnf_cache[id(node)] = rewritten
            return self.eval(rewritten, nu)
        if isinstance(node, (Eq, Neq)):
            left = self.ground(node.left, nu)
            right = self.ground(node.right, nu)
            holds = (left == right) if isinstance(node, Eq) else (left != right)
            return self.k.one if holds else self.k.zero
        if isinstance(node, And):
            return self.k.mul(self.eval(node.left, nu), self.eval(node.right, nu))
        if isinstance(node, Or):
            return self.k.add(self.eval(node.left, nu), self.eval(node.right, nu))
        if isinstance(node, Exists):
            return self.k.sum(
                self.eval(node.body, {**nu, node.var: a}) for a in self.pi.universe
            )
        if isinstance(node, Forall):
            return self.k.product(
                self.eval(node.body, {**nu, node.var: a}) for a in self.pi.universe
            )
        raise SemanticError(f"not a formula node: {node!r}")


def evaluate(interpretation: KInterpretation, formula, valuation=None):
    """Value of the formula under the interpretation and valuation.

    The valuation must bind every free variable to a universe element;
    sentences need none.
    """
    nu = dict(valuation or {})
    for variable, value in nu.items():
        if value not in interpretation.universe:
            raise SemanticError(
                f"valuation binds {variable} to {value!r}, "
                "which is outside the universe"
            )
    unbound = free_vars(formula) - set(nu)
    if unbound:
        raise SemanticError(
            f"free variables without bindings: {', '.join(sorted(unbound))}"
        )
    return _Evaluator(interpretation).eval(formula, nu)


# -- classification and specialization ---------------------------------------

def is_model_defining(interpretation: KInterpretation) -> bool:
    """True when for each fact exactly one of the fact/negation pair maps
    to zero."""
    zero = interpretation.semiring.zero
    for literal in interpretation.literals():
        if not literal.positive:
            continue
        a = interpretation.value(literal)
        b = interpretation.value(literal.negate())
        if (a == zero) == (b == zero):
            return False
    return True


def defined_model(interpretation: KInterpretation) -> Structure:
    """The unique structure a model-defining interpretation describes."""
    if not is_model_defining(interpretation):
        raise SemanticError("interpretation is not model-defining")
    zero = interpretation.semiring.zero
    extensions = {}
    for literal in interpretation.literals():
        if literal.positive and interpretation.value(literal) != zero:
            extensions.setdefault(literal.relation, set()).add(literal.args)
    return Structure(interpretation.universe, interpretation.vocabulary, extensions)


def is_model_compatible(interpretation: KInterpretation) -> bool:
    """True when every fact pair is a fresh complementary token pair,
    (0, 1), or (1, 0).  Requires the dual-polynomial semiring."""
    if interpretation.semiring is not semirings.DUALPOLY:
        raise SemanticError("model compatibility is defined over dualpoly")
    zero, one = semirings.DUALPOLY.zero, semirings.DUALPOLY.one
    seen_bases = set()
    for literal in interpretation.literals():
        if not literal.positive:
            continue
        pos = interpretation.value(literal)
        neg = interpretation.value(literal.negate())
        if (pos, neg) in ((zero, one), (one, zero)):
            continue
        token = pos.as_single_token()
        comp = neg.as_single_token()
        if (
            token is None
            or comp is None
            or token.negated
            or comp != token.complement()
            or token.name in seen_bases
        ):
            return False
        seen_bases.add(token.name)
    return True


def compatible_models(interpretation: KInterpretation, structure: Structure) -> bool:
    """True when the structure makes every literal with value 1 true."""
    if not is_model_compatible(interpretation):
        raise SemanticError("interpretation is not model-compatible")
    if set(structure.universe) != set(interpretation.universe):
        raise SemanticError("structure and interpretation have different universes")
    if structure.vocabulary != interpretation.vocabulary:
        raise SemanticError("structure and interpretation have different vocabularies")
    one = interpretation.semiring.one
    return all(
        structure.satisfies(literal)
        for literal in interpretation.literals()
        if interpretation.value(literal) == one
    )


def specialize(interpretation: KInterpretation, structure: Structure) -> KInterpretation:
    """Zero out every literal the structure falsifies.

    The result is model-defining and defines exactly ``structure``.
    """
    if not compatible_models(interpretation, structure):
        raise SemanticError("structure is not compatible with the interpretation")
    zero = interpretation.semiring.zero
    mapping = {
        literal: (interpretation.value(literal) if structure.satisfies(literal) else zero)
        for literal in interpretation.literals()
    }
    return KInterpretation(
        interpretation.semiring, interpretation.vocabulary,
        interpretation.universe, mapping,
    )
