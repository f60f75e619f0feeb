"""Commutative semirings and homomorphisms between them.

Every semiring here exposes the same small surface: ``zero``, ``one``,
``add``, ``mul``, a domain check, and text parsing/rendering for the CLI.
All values are plain immutable Python objects, so every operation is a pure
function and concurrent use is safe.

Selectable by name: ``bool``, ``nat``, ``trop``, ``viterbi``, ``fuzzy``,
``access``, ``posbool``, ``dualpoly``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError, SemanticError
from .polynomials import DualPolynomial, parse_poly


class Semiring:
    """Base class; subclasses fix the element domain and the two operations.

    ``is_positive`` means +-positive with no zero divisors.  ``is_plus_positive``
    alone means a+b = 0 forces a = b = 0.
    """

    name = "abstract"
    zero = None
    one = None
    is_idempotent = False
    is_positive = True
    is_plus_positive = True

    def contains(self, value) -> bool:
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def require(self, value):
        if not self.contains(value):
            raise SemanticError(f"{value!r} is not an element of semiring {self.name}")
        return value

    def add(self, a, b):
        self.require(a)
        self.require(b)
        return self._add(a, b)

    def mul(self, a, b):
        self.require(a)
        self.require(b)
        return self._mul(a, b)

    def sum(self, values):
        # seeded from the first operand so exact value types survive
        total = None
        for v in values:
            total = self.require(v) if total is None else self.add(total, v)
        return self.zero if total is None else total

    def product(self, values):
        total = None
        for v in values:
            total = self.require(v) if total is None else self.mul(total, v)
        return self.one if total is None else total

    def nat_scale(self, n: int, a):
        """n-fold sum a + ... + a, computed by binary doubling."""
        if n < 0:
            raise SemanticError("nat_scale needs a non-negative count")
        result = self.zero
        addend = a
        while n:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result

    def parse(self, text: str):
        raise NotImplementedError

    def render(self, value) -> str:
        return str(value)

    def __repr__(self):
        return f"<semiring {self.name}>"


def dagger(semiring: Semiring, value) -> bool:
    """True iff the value is nonzero; a Boolean homomorphism when the
    semiring is positive."""
    return value != semiring.zero


class BooleanSemiring(Semiring):
    """({false, true}, or, and)."""

    name = "bool"
    zero = False
    one = True
    is_idempotent = True

    def contains(self, value):
        return isinstance(value, bool)

    def _add(self, a, b):
        return a or b

    def _mul(self, a, b):
        return a and b

    def parse(self, text):
        t = text.strip().lower()
        if t in ("true", "1", "t"):
            return True
        if t in ("false", "0", "f"):
            return False
        raise InputError(f"bad boolean value {text!r}")

    def render(self, value):
        return "true" if value else "false"


class NaturalSemiring(Semiring):
    """(N, +, *); counts proof trees.  Values are unbounded ints."""

    name = "nat"
    zero = 0
    one = 1

    def contains(self, value):
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def parse(self, text):
        try:
            n = int(text.strip())
        except ValueError:
            raise InputError(f"bad natural number {text!r}") from None
        if n < 0:
            raise InputError(f"natural numbers are non-negative, got {n}")
        return n


def _parse_number(text):
    """Float or exact Fraction (for inputs like 1/3)."""
    t = text.strip()
    if "/" in t:
        try:
            return Fraction(t)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad fraction {text!r}") from None
    try:
        return float(t)
    except ValueError:
        raise InputError(f"bad number {text!r}") from None


class TropicalSemiring(Semiring):
    """(R>=0 with +inf, min, +); min-cost readings."""

    name = "trop"
    zero = math.inf
    one = 0.0
    is_idempotent = True

    def contains(self, value):
        return isinstance(value, (int, float, Fraction)) and not isinstance(
            value, bool
        ) and value >= 0

    def _add(self, a, b):
        return min(a, b)

    def _mul(self, a, b):
        return a + b

    def parse(self, text):
        if text.strip().lower() in ("inf", "+inf", "infinity"):
            return math.inf
        value = _parse_number(text)
        if value < 0:
            raise InputError(f"tropical values are non-negative, got {text!r}")
        return value

    def render(self, value):
        return "inf" if value == math.inf else str(value)


class UnitIntervalSemiring(Semiring):
    """Shared domain logic for semirings over [0, 1].

    Accepts floats and exact Fractions; 0 and 1 are exactly representable
    either way, so comparisons against the units stay exact.
    """

    def contains(self, value):
        return isinstance(value, (int, float, Fraction)) and not isinstance(
            value, bool
        ) and 0 <= value <= 1

    def parse(self, text):
        value = _parse_number(text)
        if not 0 <= value <= 1:
            raise InputError(f"value {text!r} outside [0, 1]")
        return value


class ViterbiSemiring(UnitIntervalSemiring):
    """([0,1], max, *); elements read as confidence scores."""

    name = "viterbi"
    zero = 0.0
    one = 1.0
    is_idempotent = True

    def _add(self, a, b):
        return max(a, b)

    def _mul(self, a, b):
        return a * b


class FuzzySemiring(UnitIntervalSemiring):
    """([0,1], max, min); a distributive lattice."""

    name = "fuzzy"
    zero = 0.0
    one = 1.0
    is_idempotent = True

    def _add(self, a, b):
        return max(a, b)

    def _mul(self, a, b):
        return min(a, b)


class AccessSemiring(Semiring):
    """Clearance levels P < C < S < T < 0.

    Addition keeps the more public level, multiplication the more secret
    one; the additive unit is the unreachable level 0 and the
    multiplicative unit is P.
    """

    name = "access"
    LEVELS = ("P", "C", "S", "T", "0")
    RANK = {level: i for i, level in enumerate(LEVELS)}
    zero = "0"
    one = "P"
    is_idempotent = True

    def contains(self, value):
        return value in self.RANK

    def _add(self, a, b):
        return a if self.RANK[a] <= self.RANK[b] else b

    def _mul(self, a, b):
        return a if self.RANK[a] >= self.RANK[b] else b

    def parse(self, text):
        t = text.strip().upper()
        if t not in self.RANK:
            raise InputError(f"bad access level {text!r}; use one of P C S T 0")
        return t


def _antichain(sets):
    """Keep only the subset-minimal variable sets."""
    out = []
    for s in sorted(sets, key=len):
        if not any(kept <= s for kept in out):
            out.append(s)
    return frozenset(out)


class PosBoolSemiring(Semiring):
    """Positive Boolean expressions in irredundant DNF.

    A value is a frozenset of frozensets of variable names: the antichain of
    minimal conjuncts.  The empty set is false; {{}} (the empty conjunct)
    is true.
    """

    name = "posbool"
    zero = frozenset()
    one = frozenset({frozenset()})
    is_idempotent = True

    def contains(self, value):
        if not isinstance(value, frozenset):
            return False
        if not all(isinstance(s, frozenset) for s in value):
            return False
        sets = list(value)
        for i, s in enumerate(sets):
            for j, t in enumerate(sets):
                if i != j and s <= t:
                    return False
        return True

    def _add(self, a, b):
        return _antichain(a | b)

    def _mul(self, a, b):
        return _antichain({s | t for s in a for t in b})

    @classmethod
    def variable(cls, name: str):
        return frozenset({frozenset({name})})

    def parse(self, text):
        t = text.strip()
        if t == "0":
            return self.zero
        if t == "1":
            return self.one
        sets = set()
        for clause in t.split("+"):
            names = frozenset(v.strip() for v in clause.split("*"))
            if any(not n for n in names):
                raise InputError(f"bad positive-DNF value {text!r}")
            sets.add(names)
        return _antichain(sets)

    def render(self, value):
        if value == self.zero:
            return "0"
        if value == self.one:
            return "1"
        clauses = sorted(tuple(sorted(s)) for s in value)
        clauses.sort(key=lambda c: (len(c), c))
        return " + ".join("*".join(c) for c in clauses)


class DualPolynomialSemiring(Semiring):
    """Polynomials over complementary token pairs, modulo p * ~p = 0.

    +-positive but not positive: the quotient introduces zero divisors.
    """

    name = "dualpoly"
    zero = DualPolynomial.zero()
    one = DualPolynomial.one()
    is_positive = False
    is_plus_positive = True

    def contains(self, value):
        return isinstance(value, DualPolynomial)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def parse(self, text):
        return parse_poly(text)


BOOL = BooleanSemiring()
NAT = NaturalSemiring()
TROPICAL = TropicalSemiring()
VITERBI = ViterbiSemiring()
FUZZY = FuzzySemiring()
ACCESS = AccessSemiring()
POSBOOL = PosBoolSemiring()
DUALPOLY = DualPolynomialSemiring()

SEMIRINGS = {
    k.name: k
    for k in (BOOL, NAT, TROPICAL, VITERBI, FUZZY, ACCESS, POSBOOL, DUALPOLY)
}


def by_name(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise InputError(
            f"unknown semiring {name!r}; choose from {' '.join(sorted(SEMIRINGS))}"
        ) from None


class Homomorphism:
    """A structure-preserving map between two semirings.

    The laws (units preserved, add/mul commute with the map) are not
    enforced at construction; ``check_on`` verifies them on sampled pairs,
    exactly by default or within a relative tolerance for float-valued
    targets.
    """

    def __init__(self, source: Semiring, target: Semiring, fn):
        self.source = source
        self.target = target
        self.fn = fn

    def __call__(self, value):
        return self.fn(self.source.require(value))

    def check_on(self, samples, rel_tol=0.0) -> bool:
        def same(x, y):
            if rel_tol and isinstance(x, (int, float, Fraction)):
                if x == y:
                    return True
                return math.isclose(x, y, rel_tol=rel_tol)
            return x == y

        if not same(self(self.source.zero), self.target.zero):
            return False
        if not same(self(self.source.one), self.target.one):
            return False
        samples = list(samples)
        for a in samples:
            for b in samples:
                if not same(self(self.source.add(a, b)), self.target.add(self(a), self(b))):
                    return False
                if not same(self(self.source.mul(a, b)), self.target.mul(self(a), self(b))):
                    return False
        return True


def dagger_hom(semiring: Semiring) -> Homomorphism:
    """The nonzero test as a map into the Boolean semiring; a homomorphism
    exactly when the source is positive."""
    return Homomorphism(semiring, BOOL, lambda a: dagger(semiring, a))


def tropical_to_viterbi() -> Homomorphism:
    """The isomorphism x -> e^(-x) from min-plus costs to confidence scores."""
    return Homomorphism(TROPICAL, VITERBI, lambda x: math.exp(-x))


def viterbi_to_tropical() -> Homomorphism:
    """Inverse isomorphism y -> -ln y; 0 maps to +inf."""
    return Homomorphism(
        VITERBI, TROPICAL, lambda y: math.inf if y == 0 else -math.log(y)
    )


def dual_eval_hom(target: Semiring, assignment, pairs=()) -> Homomorphism:
    """The unique homomorphism out of the dual-polynomial semiring extending
    a token assignment (tokens in ``pairs`` must have annihilating images)."""
    return Homomorphism(
        DUALPOLY, target, lambda p: p.eval_hom(target, assignment, pairs)
    )
