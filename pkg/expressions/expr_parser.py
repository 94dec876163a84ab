from dataclasses import dataclass
import re

from settings import *
from errors import ExprSyntaxError, UnknownIdentifier
from expressions.expr import FUNCTIONS, Add, Call, Const, Div, Mul, Neg, Pow, Sub, Var, is_constant, simplify

logger = logging.getLogger(__name__)

TOKEN = re.compile(r'''
    (?P<space>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
''', re.VERBOSE)


@dataclass(frozen=True)
class Token:
    """
    Lexical token.

    :var kind: 'number', 'name', 'op' or 'end'
    :var text: Source text of the token
    :var offset: Byte offset of the token in the source
    """

    kind: str
    text: str
    offset: int


def tokenize(text):
    """
    Split expression text into tokens.

    :param text: Expression source
    :return: Tokens followed by an 'end' token
    :rtype: list
    """
    tokens = []
    position = 0
    while position < len(text):
        found = TOKEN.match(text, position)
        if not found:
            raise ExprSyntaxError(f'unexpected character {text[position]!r}', byte_offset(text, position))
        if found.lastgroup != 'space':
            tokens.append(Token(found.lastgroup, found.group(), byte_offset(text, position)))
        position = found.end()
    tokens.append(Token('end', '', byte_offset(text, len(text))))
    return tokens


def byte_offset(text, index):
    return len(text[:index].encode('utf-8'))


class ExprParser:
    """
    Recursive-descent parser for function expressions of t.

    Precedence from loosest to tightest: + and -, then * and /, then unary minus, then ^ (right-associative, constant exponent only), then atoms: numbers, t, parenthesized expressions and the calls exp, ln, sin, cos, abs.

    :var tokens: Token list ending with an 'end' token
    :var index: Index of the current token
    """

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def token(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.token
        self.index += 1
        return token

    def accept(self, symbol):
        if self.token.kind == 'op' and self.token.text == symbol:
            return self.advance()
        return None

    def expect(self, symbol):
        if not self.accept(symbol):
            found = self.token.text or 'end of input'
            raise ExprSyntaxError(f'expected {symbol!r}, found {found!r}', self.token.offset)

    def parse(self):
        if self.token.kind == 'end':
            raise ExprSyntaxError('empty expression', 0)
        expr = self.sum()
        if self.token.kind != 'end':
            raise ExprSyntaxError(f'unexpected {self.token.text!r}', self.token.offset)
        return expr

    def sum(self):
        expr = self.product()
        while True:
            if self.accept('+'):
                expr = Add(expr, self.product())
            elif self.accept('-'):
                expr = Sub(expr, self.product())
            else:
                return expr

    def product(self):
        expr = self.unary()
        while True:
            if self.accept('*'):
                expr = Mul(expr, self.unary())
            elif self.accept('/'):
                expr = Div(expr, self.unary())
            else:
                return expr

    def unary(self):
        if self.accept('-'):
            return Neg(self.unary())
        if self.accept('+'):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.accept('^'):
            return base

        offset = self.token.offset
        # Exponent binds like unary so that t^-1 reads as t^(-1); recursion keeps ^ right-associative
        exponent = simplify(self.unary())
        if not (is_constant(exponent) and isinstance(exponent, Const)):
            raise ExprSyntaxError('exponent of ^ must be a constant', offset)
        return Pow(base, exponent.value)

    def atom(self):
        token = self.token
        if token.kind == 'number':
            self.advance()
            return Const(float(token.text))

        if token.kind == 'name':
            self.advance()
            if token.text == 't':
                return Var()
            if token.text in FUNCTIONS:
                self.expect('(')
                argument = self.sum()
                self.expect(')')
                return Call(token.text, argument)
            raise UnknownIdentifier(f'unknown identifier {token.text!r}', token.offset)

        if self.accept('('):
            expr = self.sum()
            self.expect(')')
            return expr

        found = token.text or 'end of input'
        raise ExprSyntaxError(f'unexpected {found!r}', token.offset)


def parse(text):
    """
    Parse expression text.

    :param text: Source such as 'exp(t^2)' or '1/(t-1)'
    :return: Expression tree
    :rtype: Expr
    """
    expr = ExprParser(text).parse()
    logger.debug('parsed %r as %s', text, expr)
    return expr
