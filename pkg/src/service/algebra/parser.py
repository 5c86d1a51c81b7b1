"""Parser for the expression grammar.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" unary)?
    atom   := INTEGER | NAME | FUNC "(" expr ")" | "(" expr ")"

Exponents must evaluate to rational constants; a fractional exponent takes a
real root.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from src.domain.exceptions import ExpressionSyntaxError

from .scalar import Scalar, cbrt, cosh, exp, sinh, sqrt
from .symbols import registry

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^()]))")

FUNCTIONS: dict[str, Callable[[Scalar], Scalar]] = {
    "exp": exp,
    "sqrt": sqrt,
    "cbrt": cbrt,
    "sinh": sinh,
    "cosh": cosh,
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            start = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = match.lastgroup
        assert kind is not None
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, namespace: Mapping[str, Scalar]):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.namespace = namespace

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.index += 1
            return True
        return False

    def _expect(self, op: str) -> None:
        if not self._accept(op):
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"expected {op!r}, found {found!r}", self.current.position, self.text)

    def parse(self) -> Scalar:
        value = self._expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {self.current.text!r}", self.current.position, self.text)
        return value

    def _expr(self) -> Scalar:
        value = self._term()
        while True:
            if self._accept("+"):
                value = value + self._term()
            elif self._accept("-"):
                value = value - self._term()
            else:
                return value

    def _term(self) -> Scalar:
        value = self._unary()
        while True:
            if self._accept("*"):
                value = value * self._unary()
            elif self._accept("/"):
                value = value / self._unary()
            else:
                return value

    def _unary(self) -> Scalar:
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Scalar:
        base = self._atom()
        if not self._accept("^"):
            return base
        position = self.current.position
        exponent = self._unary()
        if not exponent.is_constant:
            raise ExpressionSyntaxError("exponent must be a rational constant", position, self.text)
        return base ** exponent.as_fraction()

    def _atom(self) -> Scalar:
        token = self._advance()
        if token.kind == "number":
            return Scalar.of(int(token.text))
        if token.kind == "name":
            if token.text in FUNCTIONS:
                self._expect("(")
                argument = self._expr()
                self._expect(")")
                return FUNCTIONS[token.text](argument)
            if token.text in self.namespace:
                return self.namespace[token.text]
            return Scalar.of(registry.lookup(token.text))
        if token.kind == "op" and token.text == "(":
            value = self._expr()
            self._expect(")")
            return value
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"unexpected {found!r}", token.position, self.text)


def parse(text: str, namespace: Optional[Mapping[str, Scalar]] = None) -> Scalar:
    """Scalar denoted by text; names resolve through namespace, then the symbol registry."""
    return _Parser(text, namespace or {}).parse()


def to_text(a: Scalar) -> str:
    return str(a)


def parse_rational(text: str) -> Fraction:
    """Exact rational literal such as "3", "-1/3" or "5/7"."""
    return Fraction(text.strip())
