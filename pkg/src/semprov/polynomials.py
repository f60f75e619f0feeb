"""Polynomials over paired positive/negative provenance tokens.

Every token ``p`` has a complement ``~p``.  Polynomials live in the quotient
of N[X u ~X] by the congruence p * ~p = 0, so no surviving monomial mixes a
token with its complement.  The quotient is applied eagerly: multiplication
drops annihilated monomials as they arise.

Coefficients are plain Python ints (arbitrary precision); proof-tree counts
grow exponentially with formula size, so this matters.
"""

from __future__ import annotations

from .errors import InputError, SemanticError


class Token:
    """A named indeterminate with a polarity; ``~p`` is the complement of ``p``."""

    __slots__ = ("name", "negated", "_key")

    def __init__(self, name: str, negated: bool = False):
        self.name = name
        self.negated = bool(negated)
        # positive polarity sorts before negative
        self._key = (name, self.negated)

    def complement(self) -> "Token":
        return Token(self.name, not self.negated)

    @property
    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Token) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        return f"Token({str(self)!r})"

    def __str__(self):
        return "~" + self.name if self.negated else self.name


class Monomial:
    """A product of tokens with positive exponents, never containing a
    complementary pair (such products belong to the zero class and cannot be
    represented as a ``Monomial``).

    The canonical order is graded lexicographic: lower total degree first,
    ties broken by the token sequence with each token repeated by its
    exponent, positive polarity before negative for the same base name.
    """

    __slots__ = ("_powers", "_degree", "_key", "_hash")

    def __init__(self, powers=()):
        counts = {}
        for token, exp in dict(powers).items():
            if exp < 0:
                raise ValueError(f"negative exponent for {token}")
            if exp == 0:
                continue
            counts[token] = counts.get(token, 0) + exp
        bases = set()
        for token in counts:
            if token.name in bases:
                raise ValueError(
                    f"monomial mixes {token.name} with ~{token.name}; "
                    "such products are zero"
                )
            bases.add(token.name)
        items = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key))
        self._powers = items
        self._degree = sum(e for _, e in items)
        flat = []
        for token, exp in items:
            flat.extend([token.sort_key] * exp)
        self._key = (self._degree, tuple(flat))
        self._hash = hash(self._powers)

    @classmethod
    def unit(cls) -> "Monomial":
        return cls()

    @classmethod
    def of(cls, *tokens: Token) -> "Monomial":
        counts = {}
        for t in tokens:
            counts[t] = counts.get(t, 0) + 1
        return cls(counts)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def powers(self):
        """Tuple of (token, exponent) pairs in canonical token order."""
        return self._powers

    def tokens(self):
        return [t for t, _ in self._powers]

    def base_names(self):
        return {t.name for t, _ in self._powers}

    def contains(self, token: Token) -> bool:
        return any(t == token for t, _ in self._powers)

    def multiply(self, other: "Monomial"):
        """Product monomial, or None when a complementary pair annihilates it."""
        counts = dict(self._powers)
        bases = {t.name: t.negated for t in counts}
        for token, exp in other._powers:
            seen = bases.get(token.name)
            if seen is not None and seen != token.negated:
                return None
            bases[token.name] = token.negated
            counts[token] = counts.get(token, 0) + exp
        return Monomial(counts)

    @property
    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        return f"Monomial({str(self)!r})"

    def __str__(self):
        if not self._powers:
            return "1"
        parts = []
        for token, exp in self._powers:
            parts.append(str(token) if exp == 1 else f"{token}^{exp}")
        return "*".join(parts)


class DualPolynomial:
    """Finite map from monomials to positive integer coefficients.

    The empty map is 0; {unit monomial: 1} is 1.  Instances are immutable
    and usable as dict keys.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=()):
        cleaned = {}
        for monomial, coeff in dict(terms).items():
            if coeff < 0:
                raise ValueError("coefficients must be non-negative")
            if coeff == 0:
                continue
            cleaned[monomial] = cleaned.get(monomial, 0) + coeff
        self._terms = cleaned
        self._hash = hash(frozenset(cleaned.items()))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "DualPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "DualPolynomial":
        return cls({Monomial.unit(): 1})

    @classmethod
    def from_token(cls, token: Token) -> "DualPolynomial":
        return cls({Monomial.of(token): 1})

    @classmethod
    def constant(cls, n: int) -> "DualPolynomial":
        return cls({Monomial.unit(): n}) if n else cls()

    # -- ring structure -----------------------------------------------

    def __add__(self, other: "DualPolynomial") -> "DualPolynomial":
        if not isinstance(other, DualPolynomial):
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return DualPolynomial(terms)

    def __mul__(self, other: "DualPolynomial") -> "DualPolynomial":
        if not isinstance(other, DualPolynomial):
            return NotImplemented
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                prod = m1.multiply(m2)
                if prod is None:
                    continue
                terms[prod] = terms.get(prod, 0) + c1 * c2
        return DualPolynomial(terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, DualPolynomial) and self._terms == other._terms

    def __hash__(self):
        return self._hash

    # -- queries -------------------------------------------------------

    def monomials(self):
        """Term list in canonical (graded lexicographic) order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(monomial, 0)

    def coefficient_sum(self) -> int:
        return sum(self._terms.values())

    def tokens(self):
        out = set()
        for m in self._terms:
            out.update(m.tokens())
        return out

    def paired_bases(self):
        """Base names occurring with both polarities somewhere in the polynomial."""
        pos, neg = set(), set()
        for t in self.tokens():
            (neg if t.negated else pos).add(t.name)
        return pos & neg

    def as_single_token(self):
        """The token t when the polynomial is exactly t, else None."""
        if len(self._terms) != 1:
            return None
        (monomial, coeff), = self._terms.items()
        if coeff != 1 or monomial.degree != 1:
            return None
        return monomial.tokens()[0]

    # -- homomorphic images ---------------------------------------------

    def substitute_zero(self, kill) -> "DualPolynomial":
        """Drop every monomial containing any of the killed tokens.

        Equivalent to the homomorphism sending killed tokens to 0 and every
        other token to itself.
        """
        killed = set(kill)
        if not killed:
            return self
        return DualPolynomial(
            {m: c for m, c in self._terms.items()
             if not any(m.contains(t) for t in killed)}
        )

    def eval_hom(self, semiring, assignment, pairs=()):
        """Evaluate under the homomorphism extending ``assignment``.

        ``assignment`` maps tokens to elements of ``semiring``; it must cover
        every token of the polynomial.  For each base name in ``pairs`` (the
        token pairs actually in use, typically declared by a tracking), the
        images of the two complementary tokens must multiply to zero --
        otherwise no homomorphism extending the assignment exists and a
        SemanticError names the offending base.
        """
        for base in sorted(set(pairs)):
            p, n = Token(base), Token(base, negated=True)
            if p not in assignment or n not in assignment:
                raise SemanticError(
                    f"assignment misses one side of the token pair {base}/~{base}"
                )
            if semiring.mul(assignment[p], assignment[n]) != semiring.zero:
                raise SemanticError(
                    f"assignment violates {base}*~{base} = 0; "
                    "no homomorphism extends it"
                )
        def images(monomial):
            for token, exp in monomial.powers:
                if token not in assignment:
                    raise SemanticError(f"no value assigned to token {token}")
                for _ in range(exp):
                    yield assignment[token]

        total = semiring.zero
        for monomial, coeff in self.monomials():
            value = semiring.product(images(monomial))
            total = semiring.add(total, semiring.nat_scale(coeff, value))
        return total

    # -- rendering -------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for monomial, coeff in self.monomials():
            if monomial.degree == 0:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(str(monomial))
            else:
                parts.append(f"{coeff}*{monomial}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DualPolynomial({str(self)!r})"


def parse_token(text: str) -> Token:
    text = text.strip()
    negated = text.startswith("~")
    name = text[1:] if negated else text
    if not name or not (name[0].isalpha() or name[0] == "_") or not all(
        ch.isalnum() or ch == "_" for ch in name
    ):
        raise InputError(f"bad token name {text!r}")
    return Token(name, negated)


class _PolyParser:
    """Recursive-descent parser for polynomial expressions.

    Grammar::

        expr   := term ('+' term)*
        term   := factor ('*' factor)*
        factor := NAT | token ('^' NAT)? | '(' expr ')'
        token  := '~'? NAME
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> DualPolynomial:
        poly = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise InputError("trailing input in polynomial", position=self.pos)
        return poly

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> DualPolynomial:
        total = self.term()
        while self.peek() == "+":
            self.pos += 1
            total = total + self.term()
        return total

    def term(self) -> DualPolynomial:
        prod = self.factor()
        while self.peek() == "*":
            self.pos += 1
            prod = prod * self.factor()
        return prod

    def factor(self) -> DualPolynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise InputError("expected ')'", position=self.pos)
            self.pos += 1
            return inner
        if ch.isdigit():
            return DualPolynomial.constant(self.number())
        if ch == "~" or ch.isalpha() or ch == "_":
            token = self.token()
            exp = 1
            if self.peek() == "^":
                self.pos += 1
                exp = self.number()
                if exp < 1:
                    raise InputError("exponent must be >= 1", position=self.pos)
            return DualPolynomial({Monomial({token: exp}): 1})
        raise InputError("expected a token, number or '('", position=self.pos)

    def number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise InputError("expected a number", position=self.pos)
        return int(self.text[start:self.pos])

    def token(self) -> Token:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "~":
            self.pos += 1
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return parse_token(self.text[start:self.pos])


def parse_poly(text: str) -> DualPolynomial:
    """Parse a polynomial expression such as ``(~p+~r+t)*(p+~q+s+~t)``."""
    return _PolyParser(text).parse()
