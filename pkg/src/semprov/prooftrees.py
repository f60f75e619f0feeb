"""Brute-force enumeration of model-checking proof trees.

A proof tree witnesses a sentence over literals the interpretation marks
available (token-annotated or constant 1): disjunctions and existentials
pick one branch, conjunctions and universals keep all branches, and leaves
are available literals or true ground (in)equalities.  Trees whose leaves
would combine a token with its complement are contradictory (they hold in
no structure) and are not enumerated.

This module is a verification instrument: summing the enumerated trees'
monomials must reproduce algebraic evaluation exactly.  It is deliberately
independent of the evaluator's shortcuts and is single-threaded by
contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import semirings
from .errors import CapExceeded, SemanticError
from .formulas import And, Eq, Exists, Forall, Literal, Neq, Not, Or, RelAtom, free_vars, nnf
from .interpretations import KInterpretation, _Evaluator, is_model_compatible, is_model_defining
from .polynomials import DualPolynomial, Monomial


@dataclass(frozen=True)
class ProofTree:
    """One derivation node.

    kind is one of ``literal``, ``eq``, ``or``, ``and``, ``exists``,
    ``forall``.  Choice nodes (or/exists) carry their choice in ``label``
    and have exactly one child; ``and`` has two children; ``forall`` one
    child per universe element in canonical order; leaves have none.
    """

    kind: str
    label: object = None
    children: tuple = ()

    def leaves(self):
        if not self.children:
            yield self
        else:
            for child in self.children:
                yield from child.leaves()


def _check_tracking_shape(pi: KInterpretation):
    if pi.semiring is not semirings.DUALPOLY:
        raise SemanticError("proof-tree enumeration works over dualpoly")
    one = semirings.DUALPOLY.one
    zero = semirings.DUALPOLY.zero
    for literal in pi.literals():
        value = pi.value(literal)
        if value in (zero, one):
            continue
        token = value.as_single_token()
        if token is None or token.negated == literal.positive:
            raise SemanticError(
                f"literal {literal} carries {value}, not a token, 0 or 1"
            )
    if not (is_model_compatible(pi) or is_model_defining(pi)):
        raise SemanticError(
            "interpretation is neither model-compatible nor model-defining"
        )


class _TreeEnumerator:
    def __init__(self, pi: KInterpretation, cap: int):
        self.pi = pi
        self.cap = cap
        self.grounder = _Evaluator(pi)
        self.memo = {}

    def _guard(self, count):
        if count > self.cap:
            raise CapExceeded("proof-tree enumeration exceeded the cap", count)

    def trees(self, node, nu):
        key = (
            id(node),
            tuple(sorted((v, nu[v]) for v in self.grounder.free(node) if v in nu)),
        )
        got = self.memo.get(key)
        if got is None:
            got = self._trees(node, nu)
            self.memo[key] = got
        return got

    def _literal(self, literal):
        value = self.pi.value(literal)
        if value == semirings.DUALPOLY.zero:
            return []
        leaf = ProofTree("literal", literal)
        token = value.as_single_token()
        monomial = Monomial.unit() if token is None else Monomial.of(token)
        return [(leaf, monomial)]

    def _trees(self, node, nu):
        ground = self.grounder.ground
        if isinstance(node, RelAtom):
            args = tuple(ground(a, nu) for a in node.args)
            return self._literal(Literal(True, node.relation, args))
        if isinstance(node, Not):
            atom = node.body
            if not isinstance(atom, RelAtom):
                raise SemanticError(
                    f"formula is not in negation normal form: {node!r}"
                )
            args = tuple(ground(a, nu) for a in atom.args)
            return self._literal(Literal(False, atom.relation, args))
        if isinstance(node, (Eq, Neq)):
            left, right = ground(node.left, nu), ground(node.right, nu)
            holds = (left == right) if isinstance(node, Eq) else (left != right)
            if not holds:
                return []
            op = "=" if isinstance(node, Eq) else "!="
            return [(ProofTree("eq", (left, op, right)), Monomial.unit())]
        if isinstance(node, Or):
            out = []
            for side, branch in (("left", node.left), ("right", node.right)):
                for tree, monomial in self.trees(branch, nu):
                    out.append((ProofTree("or", side, (tree,)), monomial))
                    self._guard(len(out))
            return out
        if isinstance(node, And):
            left = self.trees(node.left, nu)
            right = self.trees(node.right, nu)
            out = []
            for ltree, lmon in left:
                for rtree, rmon in right:
                    combined = lmon.multiply(rmon)
                    if combined is None:
                        continue
                    out.append((ProofTree("and", None, (ltree, rtree)), combined))
                    self._guard(len(out))
            return out
        if isinstance(node, Exists):
            out = []
            for a in self.pi.universe:
                for tree, monomial in self.trees(node.body, {**nu, node.var: a}):
                    out.append((ProofTree("exists", a, (tree,)), monomial))
                    self._guard(len(out))
            return out
        if isinstance(node, Forall):
            partial = [((), Monomial.unit())]
            for a in self.pi.universe:
                branch = self.trees(node.body, {**nu, node.var: a})
                combined = []
                for children, monomial in partial:
                    for tree, tmon in branch:
                        product = monomial.multiply(tmon)
                        if product is None:
                            continue
                        combined.append((children + (tree,), product))
                        self._guard(len(combined))
                partial = combined
            return [
                (ProofTree("forall", None, children), monomial)
                for children, monomial in partial
            ]
        raise SemanticError(f"formula is not in negation normal form: {node!r}")


def _enumerate(pi: KInterpretation, sentence, cap: int):
    _check_tracking_shape(pi)
    if free_vars(sentence):
        raise SemanticError("proof trees are defined for sentences only")
    return _TreeEnumerator(pi, cap).trees(nnf(sentence), {})


def enumerate_trees(pi: KInterpretation, sentence, cap: int = 100000):
    """All distinct proof trees of the sentence, in deterministic order."""
    return [tree for tree, _ in _enumerate(pi, sentence, cap)]


def tree_monomial(tree: ProofTree, pi: KInterpretation) -> Monomial:
    """Product of the token annotations over the tree's literal leaves;
    leaves annotated 1 contribute nothing."""
    counts = {}
    for leaf in tree.leaves():
        if leaf.kind != "literal":
            continue
        value = pi.value(leaf.label)
        token = value.as_single_token()
        if token is None:
            if value != semirings.DUALPOLY.one:
                raise SemanticError(f"leaf {leaf.label} is not available under pi")
            continue
        counts[token] = counts.get(token, 0) + 1
    return Monomial(counts)


def oracle_polynomial(pi: KInterpretation, sentence, cap: int = 100000) -> DualPolynomial:
    """Sum of the enumerated trees' monomials; must equal algebraic
    evaluation of the sentence under pi."""
    terms = {}
    for _, monomial in _enumerate(pi, sentence, cap):
        terms[monomial] = terms.get(monomial, 0) + 1
    return DualPolynomial(terms)


def format_tree(tree: ProofTree, pi: KInterpretation, indent: str = "  ") -> str:
    """Indented rendering, one node per line; literal leaves show their
    annotation as ``[token]`` or ``[1]``."""
    lines = []

    def walk(node, depth):
        pad = indent * depth
        if node.kind == "literal":
            value = pi.value(node.label)
            token = value.as_single_token()
            mark = "1" if token is None else str(token)
            lines.append(f"{pad}{node.label} [{mark}]")
        elif node.kind == "eq":
            left, op, right = node.label
            lines.append(f"{pad}{left} {op} {right}")
        elif node.kind in ("or", "exists"):
            lines.append(f"{pad}{node.kind}:{node.label}")
            walk(node.children[0], depth + 1)
        else:
            lines.append(f"{pad}{node.kind}")
            for child in node.children:
                walk(child, depth + 1)

    walk(tree, 0)
    return "\n".join(lines)
