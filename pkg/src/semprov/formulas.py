"""First-order formulas over a finite relational vocabulary.

Concrete syntax (whitespace-insensitive, names ``[a-zA-Z_][a-zA-Z0-9_]*``)::

    formula := quant | impl
    quant   := ("A"|"E") var "." formula
    impl    := or ( "->" formula )?        # sugar: f -> g  ==  ~f | g
    or      := and ( "|" and )*
    and     := neg ( "&" neg )*
    neg     := "~" neg | atom
    atom    := name "(" term ("," term)* ")"
             | term "=" term | term "!=" term
             | "(" formula ")"

``~`` binds tighter than ``&``, which binds tighter than ``|``; a
quantifier's body extends as far right as possible.  Implication is
expanded by the parser (before any normal form), since the semiring
semantics is sensitive to formula shape.  A name in term position denotes
a constant iff the vocabulary declares it; otherwise it is a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import InputError, SemanticError


@dataclass(frozen=True)
class Vocabulary:
    """Relation symbols with arities, plus the declared ground-value names."""

    relations: tuple
    constants: frozenset

    def __init__(self, relations, constants=()):
        rels = dict(relations)
        for name, arity in rels.items():
            if arity < 1:
                raise SemanticError(f"relation {name} must have arity >= 1")
        object.__setattr__(self, "relations", tuple(sorted(rels.items())))
        object.__setattr__(self, "constants", frozenset(constants))

    def arity(self, name: str) -> int:
        for rel, arity in self.relations:
            if rel == name:
                return arity
        raise SemanticError(f"unknown relation {name}")

    def has_relation(self, name: str) -> bool:
        return any(rel == name for rel, _ in self.relations)

    def relation_names(self):
        return [rel for rel, _ in self.relations]


# -- terms and formula nodes ------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class RelAtom:
    relation: str
    args: tuple

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Eq:
    left: object
    right: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Neq:
    left: object
    right: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Not:
    body: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: object
    right: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: object
    right: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: object

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Literal:
    """A ground relational atom or its negation.

    Double negation is identified away: negating a literal just flips
    ``positive``.
    """

    positive: bool
    relation: str
    args: tuple

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.relation, self.args)

    @property
    def sort_key(self):
        return (self.relation, self.args, not self.positive)

    def __str__(self):
        atom = f"{self.relation}({','.join(self.args)})"
        return atom if self.positive else "~" + atom


def fact(relation: str, *args: str) -> Literal:
    return Literal(True, relation, tuple(args))


def neg_fact(relation: str, *args: str) -> Literal:
    return Literal(False, relation, tuple(args))


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[a-zA-Z_][a-zA-Z0-9_]*)|(?P<op>->|!=|[~&|(),.=]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            at = len(src) - len(stripped)
            raise InputError(f"unexpected character {stripped[0]!r}", position=at)
        kind = "name" if m.group("name") else "op"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _FormulaParser:
    def __init__(self, src: str, vocabulary: Vocabulary):
        self.src = src
        self.vocab = vocabulary
        self.tokens = _tokenize(src)
        self.index = 0

    def peek(self, offset=0):
        i = self.index + offset
        return self.tokens[i] if i < len(self.tokens) else (None, None, len(self.src))

    def advance(self):
        token = self.peek()
        self.index += 1
        return token

    def expect(self, value):
        kind, text, pos = self.advance()
        if text != value:
            raise InputError(f"expected {value!r}, found {text!r}", position=pos)

    def fail(self, message):
        _, _, pos = self.peek()
        raise InputError(message, position=pos)

    def at_quantifier(self) -> bool:
        kind, text, _ = self.peek()
        if kind != "name" or text not in ("A", "E"):
            return False
        kind2, _, _ = self.peek(1)
        _, text3, _ = self.peek(2)
        return kind2 == "name" and text3 == "."

    def parse(self):
        formula = self.formula()
        kind, text, pos = self.peek()
        if kind is not None:
            raise InputError(f"trailing input {text!r}", position=pos)
        return formula

    def formula(self):
        if self.at_quantifier():
            return self.quantifier()
        return self.implication()

    def quantifier(self):
        _, keyword, _ = self.advance()
        _, var, pos = self.advance()
        if var in self.vocab.constants:
            raise InputError(f"cannot quantify over constant {var!r}", position=pos)
        self.expect(".")
        body = self.formula()
        return Exists(var, body) if keyword == "E" else Forall(var, body)

    def implication(self):
        left = self.disjunction()
        _, text, _ = self.peek()
        if text == "->":
            self.advance()
            right = self.formula()
            return Or(Not(left), right)
        return left

    def disjunction(self):
        node = self.conjunction()
        while self.peek()[1] == "|":
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self):
        node = self.negation()
        while self.peek()[1] == "&":
            self.advance()
            node = And(node, self.negation())
        return node

    def negation(self):
        if self.peek()[1] == "~":
            self.advance()
            return Not(self.negation())
        return self.atom()

    def atom(self):
        kind, text, pos = self.peek()
        if text == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if kind != "name":
            self.fail("expected an atom")
        if self.peek(1)[1] == "(":
            return self.relation_atom()
        left = self.term()
        _, op, oppos = self.advance()
        if op not in ("=", "!="):
            raise InputError("expected '=' or '!=' after term", position=oppos)
        right = self.term()
        return Eq(left, right) if op == "=" else Neq(left, right)

    def relation_atom(self):
        _, name, pos = self.advance()
        if not self.vocab.has_relation(name):
            raise InputError(f"unknown relation {name!r}", position=pos)
        self.expect("(")
        args = [self.term()]
        while self.peek()[1] == ",":
            self.advance()
            args.append(self.term())
        self.expect(")")
        arity = self.vocab.arity(name)
        if len(args) != arity:
            raise InputError(
                f"relation {name} expects {arity} arguments, got {len(args)}",
                position=pos,
            )
        return RelAtom(name, tuple(args))

    def term(self):
        kind, text, pos = self.advance()
        if kind != "name":
            raise InputError(f"expected a term, found {text!r}", position=pos)
        if text in self.vocab.constants:
            return Const(text)
        return Var(text)


def parse_formula(src: str, vocabulary: Vocabulary):
    """Parse concrete syntax into an AST, resolving names against the
    vocabulary (declared names become constants, the rest variables)."""
    return _FormulaParser(src, vocabulary).parse()


# -- printing ----------------------------------------------------------------

_LEVEL = {RelAtom: 4, Eq: 4, Neq: 4, Not: 3, And: 2, Or: 1, Exists: 0, Forall: 0}


def format_formula(formula) -> str:
    """Concrete syntax for an AST; ``parse_formula`` inverts it."""

    def emit(node, floor):
        text = _emit(node)
        if _LEVEL[type(node)] < floor:
            return f"({text})"
        return text

    def _emit(node):
        if isinstance(node, RelAtom):
            return f"{node.relation}({', '.join(str(a) for a in node.args)})"
        if isinstance(node, Eq):
            return f"{node.left} = {node.right}"
        if isinstance(node, Neq):
            return f"{node.left} != {node.right}"
        if isinstance(node, Not):
            return "~" + emit(node.body, 3)
        if isinstance(node, And):
            return f"{emit(node.left, 2)} & {emit(node.right, 3)}"
        if isinstance(node, Or):
            return f"{emit(node.left, 1)} | {emit(node.right, 2)}"
        if isinstance(node, Exists):
            return f"E {node.var}. {emit(node.body, 0)}"
        if isinstance(node, Forall):
            return f"A {node.var}. {emit(node.body, 0)}"
        raise TypeError(f"not a formula node: {node!r}")

    return emit(formula, 0)


# -- normal form and variable analysis ----------------------------------------

def nnf(formula):
    """Negation normal form: negation only directly above relational atoms,
    equalities flipped, double negation removed.  No other rewriting."""
    if isinstance(formula, (RelAtom, Eq, Neq)):
        return formula
    if isinstance(formula, Not):
        return _nnf_negated(formula.body)
    if isinstance(formula, And):
        return And(nnf(formula.left), nnf(formula.right))
    if isinstance(formula, Or):
        return Or(nnf(formula.left), nnf(formula.right))
    if isinstance(formula, Exists):
        return Exists(formula.var, nnf(formula.body))
    if isinstance(formula, Forall):
        return Forall(formula.var, nnf(formula.body))
    raise TypeError(f"not a formula node: {formula!r}")


def _nnf_negated(formula):
    if isinstance(formula, RelAtom):
        return Not(formula)
    if isinstance(formula, Eq):
        return Neq(formula.left, formula.right)
    if isinstance(formula, Neq):
        return Eq(formula.left, formula.right)
    if isinstance(formula, Not):
        return nnf(formula.body)
    if isinstance(formula, And):
        return Or(_nnf_negated(formula.left), _nnf_negated(formula.right))
    if isinstance(formula, Or):
        return And(_nnf_negated(formula.left), _nnf_negated(formula.right))
    if isinstance(formula, Exists):
        return Forall(formula.var, _nnf_negated(formula.body))
    if isinstance(formula, Forall):
        return Exists(formula.var, _nnf_negated(formula.body))
    raise TypeError(f"not a formula node: {formula!r}")


def is_nnf(formula) -> bool:
    """True when negation appears only directly above relational atoms."""
    if isinstance(formula, (RelAtom, Eq, Neq)):
        return True
    if isinstance(formula, Not):
        return isinstance(formula.body, RelAtom)
    if isinstance(formula, (And, Or)):
        return is_nnf(formula.left) and is_nnf(formula.right)
    if isinstance(formula, (Exists, Forall)):
        return is_nnf(formula.body)
    return False


def free_vars(formula) -> frozenset:
    if isinstance(formula, RelAtom):
        return frozenset(a.name for a in formula.args if isinstance(a, Var))
    if isinstance(formula, (Eq, Neq)):
        return frozenset(
            t.name for t in (formula.left, formula.right) if isinstance(t, Var)
        )
    if isinstance(formula, Not):
        return free_vars(formula.body)
    if isinstance(formula, (And, Or)):
        return free_vars(formula.left) | free_vars(formula.right)
    if isinstance(formula, (Exists, Forall)):
        return free_vars(formula.body) - {formula.var}
    raise TypeError(f"not a formula node: {formula!r}")


def all_literals(vocabulary: Vocabulary, universe) -> list:
    """Both polarities of every ground atom, ordered by relation name, then
    argument tuples in universe order, positive before negative."""
    universe = tuple(universe)
    if not universe:
        raise SemanticError("the universe must be non-empty")
    literals = []
    for relation, arity in vocabulary.relations:
        for args in product(universe, repeat=arity):
            literals.append(Literal(True, relation, args))
            literals.append(Literal(False, relation, args))
    return literals
