"""Shared test instruments: an independent model checker, random generators
for formulas / structures / interpretations, and exhaustive enumerations.

Everything here avoids the package's semiring evaluation path so it can
serve as an oracle for it.
"""

import itertools

from semprov import (
    DUALPOLY, DualPolynomial, KInterpretation, Structure, Token, Vocabulary,
)
from semprov.formulas import (
    And, Const, Eq, Exists, Forall, Literal, Neq, Not, Or, RelAtom, Var,
)
from semprov import semirings


def brute_check(structure, formula, bindings=None):
    """Plain recursive truth evaluation, independent of the semiring
    machinery."""
    def term_of(t, nu):
        return nu[t.name] if isinstance(t, Var) else t.name

    def rec(f, nu):
        if isinstance(f, RelAtom):
            args = tuple(term_of(a, nu) for a in f.args)
            return args in structure.extensions[f.relation]
        if isinstance(f, Eq):
            return term_of(f.left, nu) == term_of(f.right, nu)
        if isinstance(f, Neq):
            return term_of(f.left, nu) != term_of(f.right, nu)
        if isinstance(f, Not):
            return not rec(f.body, nu)
        if isinstance(f, And):
            return rec(f.left, nu) and rec(f.right, nu)
        if isinstance(f, Or):
            return rec(f.left, nu) or rec(f.right, nu)
        if isinstance(f, Exists):
            return any(rec(f.body, {**nu, f.var: a}) for a in structure.universe)
        if isinstance(f, Forall):
            return all(rec(f.body, {**nu, f.var: a}) for a in structure.universe)
        raise TypeError(f)

    return rec(formula, dict(bindings or {}))


def binary_vocab(universe):
    return Vocabulary({"E": 2}, constants=universe)


def all_structures(universe):
    """Every structure over one binary relation E on the given universe."""
    vocab = binary_vocab(universe)
    atoms = list(itertools.product(universe, repeat=2))
    out = []
    for bits in itertools.product([0, 1], repeat=len(atoms)):
        ext = {"E": {atoms[i] for i in range(len(atoms)) if bits[i]}}
        out.append(Structure(universe, vocab, ext))
    return out


def full_defining_tracking(structure):
    """Model-defining tracking of a structure: each true literal gets a
    fresh token, the opposite literal 0."""
    mapping = {}
    index = 0
    for rel, arity in structure.vocabulary.relations:
        for args in itertools.product(structure.universe, repeat=arity):
            f = Literal(True, rel, args)
            token = Token(f"t{index}")
            index += 1
            if structure.satisfies(f):
                mapping[f] = DualPolynomial.from_token(token)
                mapping[f.negate()] = DualPolynomial.zero()
            else:
                mapping[f] = DualPolynomial.zero()
                mapping[f.negate()] = DualPolynomial.from_token(token.complement())
    return KInterpretation(
        DUALPOLY, structure.vocabulary, structure.universe, mapping
    )


def full_compatible_tracking(universe, vocab=None):
    """Model-compatible tracking with a fresh token pair on every fact."""
    vocab = vocab or binary_vocab(universe)
    mapping = {}
    index = 0
    for rel, arity in vocab.relations:
        for args in itertools.product(universe, repeat=arity):
            f = Literal(True, rel, args)
            token = Token(f"t{index}")
            index += 1
            mapping[f] = DualPolynomial.from_token(token)
            mapping[f.negate()] = DualPolynomial.from_token(token.complement())
    return KInterpretation(DUALPOLY, vocab, tuple(universe), mapping)


# -- random formulas -----------------------------------------------------------

def random_nnf_sentence(rng, universe, max_quant=3, vocab=None):
    """A closed formula in NNF over one binary relation, quantifier nesting
    bounded by max_quant."""
    vocab = vocab or binary_vocab(universe)
    fresh = iter(f"v{i}" for i in range(100))

    def term(scope):
        if scope and rng.random() < 0.8:
            return Var(rng.choice(scope))
        return Const(rng.choice(universe))

    def leaf(scope):
        kind = rng.random()
        atom = RelAtom("E", (term(scope), term(scope)))
        if kind < 0.4:
            return atom
        if kind < 0.7:
            return Not(atom)
        cls = Eq if rng.random() < 0.5 else Neq
        return cls(term(scope), term(scope))

    def build(scope, quant, size):
        if size <= 1:
            if quant > 0 and rng.random() < 0.3:
                v = next(fresh)
                cls = Exists if rng.random() < 0.5 else Forall
                return cls(v, leaf(scope + [v]))
            return leaf(scope)
        roll = rng.random()
        if quant > 0 and roll < 0.45:
            v = next(fresh)
            cls = Exists if rng.random() < 0.5 else Forall
            return cls(v, build(scope + [v], quant - 1, size - 1))
        cls = And if roll < 0.75 else Or
        left_size = rng.randint(1, size - 1)
        return cls(
            build(scope, quant, left_size), build(scope, quant, size - left_size)
        )

    return build([], max_quant, rng.randint(2, 6))


def random_formula_with_negation(rng, universe, max_quant=2, vocab=None):
    """Like random_nnf_sentence but with negations wrapped at random
    positions, so NNF has work to do."""
    base = random_nnf_sentence(rng, universe, max_quant=max_quant, vocab=vocab)

    def sprinkle(f):
        if rng.random() < 0.35:
            f = Not(f)
        if isinstance(f, (And, Or)):
            return type(f)(sprinkle(f.left), sprinkle(f.right))
        if isinstance(f, (Exists, Forall)):
            return type(f)(f.var, sprinkle(f.body))
        return f

    return sprinkle(base)


# -- random semiring values ------------------------------------------------------

def sample_value(rng, k):
    if k is semirings.BOOL:
        return rng.random() < 0.5
    if k is semirings.NAT:
        return rng.randint(0, 9)
    if k is semirings.TROPICAL:
        return semirings.TROPICAL.zero if rng.random() < 0.15 else float(rng.randint(0, 8))
    if k in (semirings.VITERBI, semirings.FUZZY):
        return rng.randint(0, 16) / 16
    if k is semirings.ACCESS:
        return rng.choice(semirings.ACCESS.LEVELS)
    if k is semirings.POSBOOL:
        names = ["x", "y", "z"]
        clauses = set()
        for _ in range(rng.randint(0, 3)):
            clauses.add(frozenset(rng.sample(names, rng.randint(1, 3))))
        value = semirings.POSBOOL.zero
        for clause in clauses:
            value = semirings.POSBOOL.add(value, frozenset({clause}))
        if rng.random() < 0.1:
            value = semirings.POSBOOL.one
        return value
    if k is semirings.DUALPOLY:
        return random_dual_poly(rng)
    raise ValueError(k)


def sample_nonzero(rng, k):
    while True:
        v = sample_value(rng, k)
        if v != k.zero:
            return v


def random_dual_poly(rng, bases="pqrs", max_terms=3, max_degree=3):
    poly = DualPolynomial.zero()
    for _ in range(rng.randint(0, max_terms)):
        factors = DualPolynomial.one()
        for _ in range(rng.randint(0, max_degree)):
            token = Token(rng.choice(bases), negated=rng.random() < 0.5)
            factors = factors * DualPolynomial.from_token(token)
        poly = poly + factors
    return poly


def random_defining_interpretation(rng, k, structure):
    """Model-defining interpretation over k whose model is the structure."""
    mapping = {}
    for literal in full_defining_tracking(structure).literals():
        if structure.satisfies(literal):
            mapping[literal] = sample_nonzero(rng, k)
        else:
            mapping[literal] = k.zero
    return KInterpretation(k, structure.vocabulary, structure.universe, mapping)
