"""Line-oriented text formats for structures, trackings and score files.

All formats share the same shape: one directive per line, ``#`` comments
and blank lines ignored.

Structure file::

    universe a b c
    rel E/2
    fact E(a,b)

Tracking file (universe/rel headers plus annotations)::

    universe a b c
    rel E/2
    track E(a,b) = p
    track ~E(a,b) = 0
    default + = 0
    default - = 1

Annotating a fact with a token auto-binds the complementary token to the
negated fact (and vice versa) unless an explicit line overrides it.  The
two default lines are mandatory and may only use 0 or 1.

Score file (confidence or clearance)::

    score p = 0.9
    score ~r = 0.6
    default + = 0
    default - = 1

Score lines may name tokens (resolved through a tracking) or literals
directly (``score E(a,b) = 0.9``); clearance files use the levels
``P C S T 0`` and confidence files numbers in [0, 1], fractions allowed.
"""

from __future__ import annotations

import re

from . import semirings
from .analysis import TrackingAssumptions
from .errors import InputError, SemanticError
from .formulas import Literal, Vocabulary, all_literals
from .interpretations import KInterpretation, Structure
from .polynomials import DualPolynomial, Token, parse_token

_NAME = r"[a-zA-Z_][a-zA-Z0-9_]*"
_LITERAL_RE = re.compile(
    rf"^(?P<neg>~)?(?P<rel>{_NAME})\((?P<args>[^)]*)\)$"
)


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_literal(text: str, vocabulary: Vocabulary, universe) -> Literal:
    """Parse ``E(a,b)`` or ``~E(a,b)`` against a vocabulary and universe."""
    m = _LITERAL_RE.match(text.strip())
    if m is None:
        raise InputError(f"bad literal {text!r}")
    relation = m.group("rel")
    if not vocabulary.has_relation(relation):
        raise InputError(f"unknown relation {relation!r}")
    args = tuple(a.strip() for a in m.group("args").split(","))
    if vocabulary.arity(relation) != len(args):
        raise InputError(
            f"relation {relation} expects {vocabulary.arity(relation)} "
            f"arguments, got {len(args)}"
        )
    for value in args:
        if value not in universe:
            raise InputError(f"value {value!r} is not in the universe")
    return Literal(m.group("neg") is None, relation, args)


class _Reader:
    """Shared handling of universe/rel header lines."""

    def __init__(self, text: str, what: str):
        self.what = what
        self.universe = None
        self.relations = {}
        self.body = []
        for number, line in _lines(text):
            directive, _, rest = line.partition(" ")
            rest = rest.strip()
            if directive == "universe":
                if self.universe is not None:
                    raise InputError("duplicate universe line", line=number)
                values = rest.split()
                if not values:
                    raise InputError("universe line needs at least one value", line=number)
                if len(set(values)) != len(values):
                    raise InputError("universe values must be distinct", line=number)
                self.universe = tuple(values)
            elif directive == "rel":
                m = re.match(rf"^(?P<name>{_NAME})/(?P<arity>\d+)$", rest)
                if m is None:
                    raise InputError(f"bad relation declaration {rest!r}", line=number)
                name, arity = m.group("name"), int(m.group("arity"))
                if name in self.relations:
                    raise InputError(f"duplicate relation {name}", line=number)
                if arity < 1:
                    raise InputError("relation arity must be >= 1", line=number)
                self.relations[name] = arity
            else:
                self.body.append((number, directive, rest))
        if self.universe is None:
            raise InputError(f"{what} file needs a universe line")
        if not self.relations:
            raise InputError(f"{what} file declares no relations")
        self.vocabulary = Vocabulary(self.relations, constants=self.universe)

    def literal(self, text: str, number: int) -> Literal:
        try:
            return parse_literal(text, self.vocabulary, self.universe)
        except InputError as err:
            raise InputError(str(err), line=number) from None


def load_structure(text: str) -> Structure:
    """Parse a structure file."""
    reader = _Reader(text, "structure")
    extensions = {}
    for number, directive, rest in reader.body:
        if directive != "fact":
            raise InputError(
                f"unexpected directive {directive!r} in a structure file", line=number
            )
        literal = reader.literal(rest, number)
        if not literal.positive:
            raise InputError("fact lines list positive facts only", line=number)
        extensions.setdefault(literal.relation, set()).add(literal.args)
    return Structure(reader.universe, reader.vocabulary, extensions)


def _split_assignment(rest: str, number: int):
    if "=" not in rest:
        raise InputError("expected '<lhs> = <rhs>'", line=number)
    lhs, rhs = rest.split("=", 1)
    lhs, rhs = lhs.strip(), rhs.strip()
    if not lhs or not rhs:
        raise InputError("expected '<lhs> = <rhs>'", line=number)
    return lhs, rhs


def _parse_defaults(entries):
    """Validate and collect the two mandatory polarity defaults."""
    defaults = {}
    for number, rest in entries:
        lhs, rhs = _split_assignment(rest, number)
        if lhs not in ("+", "-"):
            raise InputError("default lines use '+' or '-'", line=number)
        if lhs in defaults:
            raise InputError(f"duplicate default for {lhs!r}", line=number)
        defaults[lhs] = (number, rhs)
    for sign in ("+", "-"):
        if sign not in defaults:
            raise InputError(f"missing 'default {sign} = ...' line")
    return defaults


def load_tracking(text: str) -> TrackingAssumptions:
    """Parse a tracking file into tracking assumptions."""
    reader = _Reader(text, "tracking")
    explicit = {}
    default_entries = []
    for number, directive, rest in reader.body:
        if directive == "default":
            default_entries.append((number, rest))
            continue
        if directive != "track":
            raise InputError(
                f"unexpected directive {directive!r} in a tracking file", line=number
            )
        lhs, rhs = _split_assignment(rest, number)
        literal = reader.literal(lhs, number)
        if literal in explicit:
            raise InputError(f"duplicate annotation for {literal}", line=number)
        if rhs == "0":
            value = DualPolynomial.zero()
        elif rhs == "1":
            value = DualPolynomial.one()
        else:
            try:
                token = parse_token(rhs)
            except InputError as err:
                raise InputError(str(err), line=number) from None
            if token.negated != (not literal.positive):
                raise InputError(
                    f"token {token} has the wrong polarity for {literal}",
                    line=number,
                )
            value = DualPolynomial.from_token(token)
        explicit[literal] = value

    defaults = _parse_defaults(default_entries)
    default_values = {}
    for sign in ("+", "-"):
        number, rhs = defaults[sign]
        if rhs == "0":
            default_values[sign] = DualPolynomial.zero()
        elif rhs == "1":
            default_values[sign] = DualPolynomial.one()
        else:
            raise InputError(
                "tracking defaults must be 0 or 1 (tokens need explicit lines)",
                line=number,
            )

    mapping = dict(explicit)
    # a token annotation implies the complementary token on the complementary
    # literal unless an explicit line says otherwise
    for literal, value in explicit.items():
        other = literal.negate()
        if other in mapping:
            continue
        token = value.as_single_token()
        if token is not None:
            mapping[other] = DualPolynomial.from_token(token.complement())
    for literal in all_literals(reader.vocabulary, reader.universe):
        if literal not in mapping:
            mapping[literal] = default_values["+" if literal.positive else "-"]

    interpretation = KInterpretation(
        semirings.DUALPOLY, reader.vocabulary, reader.universe, mapping
    )
    return TrackingAssumptions(interpretation)


class ScoreFile:
    """Raw score lines: token- or literal-keyed values plus the two
    polarity defaults, with values still unparsed (the target semiring
    decides how to read them)."""

    def __init__(self, token_entries, literal_entries, defaults):
        self.token_entries = token_entries
        self.literal_entries = literal_entries
        self.defaults = defaults


def load_scores(text: str, vocabulary=None, universe=None) -> ScoreFile:
    """Parse a score file; literal-keyed lines need a vocabulary/universe
    to resolve against (token-keyed lines never do)."""
    token_entries = {}
    literal_entries = {}
    default_entries = []
    for number, line in _lines(text):
        directive, _, rest = line.partition(" ")
        rest = rest.strip()
        if directive == "default":
            default_entries.append((number, rest))
            continue
        if directive != "score":
            raise InputError(
                f"unexpected directive {directive!r} in a score file", line=number
            )
        lhs, rhs = _split_assignment(rest, number)
        if "(" in lhs:
            if vocabulary is None or universe is None:
                raise InputError(
                    "literal-keyed score lines need a structure or tracking "
                    "to resolve against",
                    line=number,
                )
            try:
                key = parse_literal(lhs, vocabulary, universe)
            except InputError as err:
                raise InputError(str(err), line=number) from None
            if key in literal_entries:
                raise InputError(f"duplicate score for {key}", line=number)
            literal_entries[key] = (number, rhs)
        else:
            try:
                key = parse_token(lhs)
            except InputError as err:
                raise InputError(str(err), line=number) from None
            if key in token_entries:
                raise InputError(f"duplicate score for {key}", line=number)
            token_entries[key] = (number, rhs)
    defaults = _parse_defaults(default_entries)
    return ScoreFile(token_entries, literal_entries, defaults)


def _parse_value(semiring, raw, number):
    try:
        return semiring.parse(raw)
    except InputError as err:
        raise InputError(str(err), line=number) from None


def token_scores(scores: ScoreFile, assumptions: TrackingAssumptions, semiring):
    """Resolve a score file to a total token assignment for a tracking.

    Every token the tracking uses (both polarities of every tracked base)
    gets a value: explicit token lines first, literal-keyed lines through
    the token table, then the polarity defaults.
    """
    assignment = {}
    for token, (number, raw) in scores.token_entries.items():
        assignment[token] = _parse_value(semiring, raw, number)
    for literal, (number, raw) in scores.literal_entries.items():
        base = None
        for name, tracked in assumptions.token_table.items():
            if tracked == literal or tracked == literal.negate():
                base = name
                break
        if base is None:
            raise InputError(
                f"score for {literal} matches no tracked fact", line=number
            )
        token = Token(base, negated=not literal.positive)
        assignment.setdefault(token, _parse_value(semiring, raw, number))
    plus = _parse_value(semiring, scores.defaults["+"][1], scores.defaults["+"][0])
    minus = _parse_value(semiring, scores.defaults["-"][1], scores.defaults["-"][0])
    for base in assumptions.token_table:
        assignment.setdefault(Token(base), plus)
        assignment.setdefault(Token(base, negated=True), minus)
    return assignment


def literal_interpretation(
    scores: ScoreFile, semiring, vocabulary: Vocabulary, universe
) -> KInterpretation:
    """Build a full interpretation from literal-keyed score lines plus the
    polarity defaults (used by ``eval`` when an annotation file is given)."""
    if scores.token_entries:
        token = next(iter(scores.token_entries))
        raise SemanticError(
            f"score file keys {token} by token; evaluating a structure "
            "annotation needs literal-keyed lines like 'score E(a,b) = ...'"
        )
    plus = _parse_value(semiring, scores.defaults["+"][1], scores.defaults["+"][0])
    minus = _parse_value(semiring, scores.defaults["-"][1], scores.defaults["-"][0])
    mapping = {}
    for literal, (number, raw) in scores.literal_entries.items():
        mapping[literal] = _parse_value(semiring, raw, number)
    for literal in all_literals(vocabulary, universe):
        mapping.setdefault(literal, plus if literal.positive else minus)
    return KInterpretation(semiring, vocabulary, universe, mapping)


def sniff_tracking(text: str) -> bool:
    """True when the text looks like a tracking file rather than a
    structure file."""
    return any(
        directive in ("track", "default")
        for _, directive, _ in (
            (n, line.partition(" ")[0], line) for n, line in _lines(text)
        )
    )
