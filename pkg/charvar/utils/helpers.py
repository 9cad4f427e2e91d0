"""
Text helpers for the character variety engine: parsers for polynomials,
words, scalars and matrices, plus the canonical formatters used by the
command line and the fixture files.
"""
import re
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from models.polynomial import Lam, Param, Polynomial, T, TraceSym
from models.words import Letter, Word, cyclic_reduce
from utils.errors import ParseError

logger = logging.getLogger(__name__)

_POLY_TOKEN = re.compile(r"""
    \s*(?:
      (?P<trace>tr\()
    | (?P<tvar>t-?[1-5])(?![0-9])
    | (?P<lam>L[1-3])(?![0-9])
    | (?P<param>[stac])(?![A-Za-z0-9])
    | (?P<number>\d+(?:\.\d+)?)
    | (?P<op>[-+*/^()])
    )""", re.VERBOSE)

_WORD_TOKEN = re.compile(r"\s*(?:(?P<letter>[xX]\d+)|(?P<op>[()^])|(?P<int>-?\d+))")


def _tokenize(pattern: re.Pattern, text: str, what: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = pattern.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"Cannot parse {what} near position {pos}: {text[pos:pos + 12]!r}")
        kind = match.lastgroup
        if kind == "trace":
            end = _closing_paren(text, match.end())
            tokens.append((kind, text[match.start(kind):end]))
            pos = end
            continue
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


def _closing_paren(text: str, pos: int) -> int:
    """Index just past the parenthesis closing the one opened before pos"""
    depth = 1
    for k in range(pos, len(text)):
        if text[k] == "(":
            depth += 1
        elif text[k] == ")":
            depth -= 1
            if depth == 0:
                return k + 1
    raise ParseError(f"Unbalanced tr( in {text!r}")


class _PolynomialParser:
    """Recursive descent over + - * / ^ and parentheses"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(_POLY_TOKEN, text, "polynomial")
        self.pos = 0

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Tuple[str, str]:
        token = self.peek()
        if token is None:
            raise ParseError(f"Unexpected end of polynomial: {self.text!r}")
        self.pos += 1
        return token

    def expect_op(self, op: str) -> None:
        kind, value = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"Expected {op!r} in {self.text!r}, found {value!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("Empty polynomial text")
        result = self.expr()
        if self.peek() is not None:
            raise ParseError(f"Trailing input in polynomial: {self.peek()[1]!r}")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            if op == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("Division is only allowed by a nonzero constant")
                result = result / rhs.constant_term()
        return result

    def unary(self) -> Polynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "number" or "." in value:
                raise ParseError(f"Exponent must be a nonnegative integer, found {value!r}")
            return base ** int(value)
        return base

    def atom(self) -> Polynomial:
        kind, value = self.take()
        if kind == "number":
            return Polynomial.constant(Fraction(value))
        if kind == "tvar":
            return Polynomial.var(T(int(value[1:])))
        if kind == "lam":
            return Polynomial.var(Lam(int(value[1:])))
        if kind == "param":
            return Polynomial.var(Param(value))
        if kind == "trace":
            word = cyclic_reduce(parse_word(value[3:-1]))
            if word.is_identity():
                return Polynomial.constant(3)
            return Polynomial.var(TraceSym(word.letters))
        if value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"Unexpected token {value!r} in {self.text!r}")


def parse_polynomial(text: str) -> Polynomial:
    """Parse `t1^2 - 2*t-1`, `3/2*L1*s`, `tr(x1X2)` ...; note `t-1` is the variable t(-1)"""
    return _PolynomialParser(text).parse()


def parse_word(text: str, rank: int = 2) -> Word:
    """Parse `x1^3 X2^2`, `(x1x2)^3`; `1` or an empty string is the identity"""
    stripped = text.strip()
    if stripped in ("", "1", "e"):
        return Word.identity(rank)
    tokens = _tokenize(_WORD_TOKEN, stripped, "word")
    pos = 0

    def sequence(depth: int) -> List[Letter]:
        nonlocal pos
        letters: List[Letter] = []
        while pos < len(tokens):
            kind, value = tokens[pos]
            if kind == "op" and value == ")":
                if depth == 0:
                    raise ParseError(f"Unbalanced ')' in word {text!r}")
                return letters
            pos += 1
            if kind == "letter":
                gen = int(value[1:])
                if not 1 <= gen <= rank:
                    raise ParseError(f"Generator {value} outside rank {rank}")
                piece = [(gen, 1 if value[0] == "x" else -1)]
            elif kind == "op" and value == "(":
                piece = sequence(depth + 1)
                if pos >= len(tokens) or tokens[pos] != ("op", ")"):
                    raise ParseError(f"Missing ')' in word {text!r}")
                pos += 1
            else:
                raise ParseError(f"Unexpected {value!r} in word {text!r}")
            if pos < len(tokens) and tokens[pos] == ("op", "^"):
                if pos + 1 >= len(tokens) or tokens[pos + 1][0] != "int":
                    raise ParseError(f"Missing exponent in word {text!r}")
                n = int(tokens[pos + 1][1])
                pos += 2
                piece = list((Word(tuple(piece), rank) ** n).letters)
            letters.extend(piece)
        if depth:
            raise ParseError(f"Missing ')' in word {text!r}")
        return letters

    return Word(tuple(sequence(0)), rank)


Scalar = Union[Fraction, complex]


def parse_scalar(text: str) -> Scalar:
    """Rational (`3`, `-7/2`, `1.25`) or complex literal `re+imi`"""
    token = text.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(token.replace("i", "j"))
    except ValueError:
        raise ParseError(f"Not a rational or complex scalar: {text!r}") from None


def format_scalar(value: Any) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    z = complex(value)
    sign = "-" if z.imag < 0 or (z.imag == 0 and str(z.imag).startswith("-")) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_matrix_entries(text: str) -> List[Scalar]:
    """Nine whitespace separated scalars, row-major; brackets and semicolons are ignored"""
    cleaned = text.replace("[", " ").replace("]", " ").replace(";", " ").replace(",", " ")
    entries = [parse_scalar(tok) for tok in cleaned.split()]
    if len(entries) != 9:
        raise ParseError(f"A 3x3 matrix needs 9 entries, got {len(entries)}")
    return entries


def parse_pair_line(line: str) -> Tuple[List[Scalar], List[Scalar]]:
    blocks = re.findall(r"\[([^\]]*)\]", line)
    if len(blocks) != 2:
        raise ParseError(f"Expected two bracketed matrices, found {len(blocks)}")
    return parse_matrix_entries(blocks[0]), parse_matrix_entries(blocks[1])


def format_matrix_entries(entries: Sequence[Any]) -> str:
    rows = [" ".join(format_scalar(x) for x in entries[3 * i:3 * i + 3]) for i in range(3)]
    return "[" + "; ".join(rows) + "]"


def parse_boundary_pair(text: str) -> Tuple[Fraction, Fraction]:
    """`x,y` from the fiber command line"""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != 2:
        raise ParseError(f"Boundary pair must be 'x,y', got {text!r}")
    values = [parse_scalar(p) for p in parts]
    if not all(isinstance(v, Fraction) for v in values):
        raise ParseError(f"Boundary values must be real rationals: {text!r}")
    return values[0], values[1]


def parse_generator_index(text: str) -> int:
    """`3`, `-4` -> generator index in +-1..+-5"""
    try:
        index = int(text)
    except ValueError:
        raise ParseError(f"Not a generator index: {text!r}") from None
    if index == 0 or abs(index) > 5:
        raise ParseError(f"Generator index out of range: {index}")
    return index


def format_record(fields: Mapping[str, Any]) -> str:
    """One structured output line with stable field order"""
    return "\t".join(f"{key}={_format_field(value)}" for key, value in fields.items())


def _format_field(value: Any) -> str:
    if isinstance(value, (Fraction, complex)):
        return format_scalar(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
