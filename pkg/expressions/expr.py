from dataclasses import dataclass
from functools import singledispatch

from settings import *
from errors import DomainError, NotDifferentiable

FUNCTIONS = ('exp', 'ln', 'sin', 'cos', 'abs')
"""Names of the one-argument functions the grammar knows."""


def format_constant(value):
    return format(float(value), '.17g')


class Expr:
    """
    Node of the expression tree of a scalar function of the variable t.

    Trees are immutable and compare structurally. Evaluation works on floats and on numpy arrays alike, so one tree serves both pointwise checks and vectorized integrals.

    :var precedence: Binding strength used to decide where the printer needs parentheses
    """

    precedence = 5

    def evaluate(self, t):
        """
        Evaluate the expression.

        :param t: Value of the variable, a float or a numpy array
        :return: Value(s) of the expression, float64
        :rtype: numpy.ndarray
        """
        ...

    def to_text(self) -> str:
        ...

    def __str__(self):
        return self.to_text()


def bracket(operand, needs):
    text = operand.to_text()
    return f'({text})' if needs else text


@dataclass(frozen=True)
class Const(Expr):
    value: float

    @property
    def precedence(self):
        # A negative literal prints with a leading minus, so it binds like negation
        return 3 if self.value < 0 else 5

    def evaluate(self, t):
        return np.full(np.shape(t), float(self.value))

    def to_text(self):
        return format_constant(self.value)


@dataclass(frozen=True)
class Var(Expr):
    def evaluate(self, t):
        return np.array(t, dtype=np.float64)

    def to_text(self):
        return 't'


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    precedence = 3

    def evaluate(self, t):
        return -self.operand.evaluate(t)

    def to_text(self):
        return '-' + bracket(self.operand, self.operand.precedence < self.precedence)


@dataclass(frozen=True)
class BinaryOp(Expr):
    """
    Binary arithmetic node.

    The right operand is bracketed at equal precedence, so printing never reassociates the tree.

    :var left: Left operand
    :var right: Right operand
    """

    left: Expr
    right: Expr

    symbol = ''

    def to_text(self):
        left = bracket(self.left, self.left.precedence < self.precedence)
        right = bracket(self.right, self.right.precedence <= self.precedence)
        return f'{left} {self.symbol} {right}'


@dataclass(frozen=True)
class Add(BinaryOp):
    symbol = '+'
    precedence = 1

    def evaluate(self, t):
        return self.left.evaluate(t) + self.right.evaluate(t)


@dataclass(frozen=True)
class Sub(BinaryOp):
    symbol = '-'
    precedence = 1

    def evaluate(self, t):
        return self.left.evaluate(t) - self.right.evaluate(t)


@dataclass(frozen=True)
class Mul(BinaryOp):
    symbol = '*'
    precedence = 2

    def evaluate(self, t):
        return self.left.evaluate(t) * self.right.evaluate(t)


@dataclass(frozen=True)
class Div(BinaryOp):
    symbol = '/'
    precedence = 2

    def evaluate(self, t):
        numerator = self.left.evaluate(t)
        denominator = self.right.evaluate(t)
        if np.any(denominator == 0):
            raise DomainError(f'division by zero in {self.to_text()}')
        return numerator / denominator


@dataclass(frozen=True)
class Pow(Expr):
    """
    Power with a constant real exponent.

    :var base: Expression raised to the power
    :var exponent: Constant exponent
    """

    base: Expr
    exponent: float

    precedence = 4

    def evaluate(self, t):
        base = self.base.evaluate(t)
        exponent = float(self.exponent)
        if exponent < 0 and np.any(base == 0):
            raise DomainError(f'zero raised to a negative power in {self.to_text()}')
        if not exponent.is_integer() and np.any(base < 0):
            raise DomainError(f'non-integer power of a negative base in {self.to_text()}')
        return np.power(base, exponent)

    def to_text(self):
        base = bracket(self.base, self.base.precedence <= self.precedence)
        exponent = format_constant(self.exponent)
        if self.exponent < 0:
            exponent = f'({exponent})'
        return f'{base}^{exponent}'


@dataclass(frozen=True)
class Call(Expr):
    """
    One of the functions exp, ln, sin, cos, abs applied to an expression.

    :var name: Function name
    :var argument: Argument expression
    """

    name: str
    argument: Expr

    def evaluate(self, t):
        x = self.argument.evaluate(t)
        if self.name == 'exp':
            return np.exp(x)
        if self.name == 'ln':
            if np.any(x <= 0):
                raise DomainError(f'logarithm of a nonpositive number in {self.to_text()}')
            return np.log(x)
        if self.name == 'sin':
            return np.sin(x)
        if self.name == 'cos':
            return np.cos(x)
        return np.abs(x)

    def to_text(self):
        return f'{self.name}({self.argument.to_text()})'


ZERO = Const(0.0)
ONE = Const(1.0)


def evaluate(expr, t):
    """
    Evaluate an expression, returning a float for scalar input.

    :param expr: Expression tree
    :param t: Float or numpy array
    :return: Value(s) of the expression
    """
    with np.errstate(over='ignore'):
        values = expr.evaluate(np.asarray(t, dtype=np.float64))
    if np.ndim(t) == 0:
        return float(values)
    return values


def is_constant(expr):
    """True when the expression does not mention t."""
    if isinstance(expr, Var):
        return False
    if isinstance(expr, Const):
        return True
    if isinstance(expr, Neg):
        return is_constant(expr.operand)
    if isinstance(expr, BinaryOp):
        return is_constant(expr.left) and is_constant(expr.right)
    if isinstance(expr, Pow):
        return is_constant(expr.base)
    return is_constant(expr.argument)


# Substitution
@singledispatch
def substitute(expr, replacement):
    """
    Replace every occurrence of t by another expression.

    :param expr: Outer expression
    :param replacement: Expression put in place of t
    :return: The composed expression
    :rtype: Expr
    """
    raise NotImplementedError(f'cannot substitute into a {type(expr).__name__}')


@substitute.register(Const)
def _(expr, replacement):
    return expr


@substitute.register(Var)
def _(expr, replacement):
    return replacement


@substitute.register(Neg)
def _(expr, replacement):
    return Neg(substitute(expr.operand, replacement))


@substitute.register(BinaryOp)
def _(expr, replacement):
    return type(expr)(substitute(expr.left, replacement), substitute(expr.right, replacement))


@substitute.register(Pow)
def _(expr, replacement):
    return Pow(substitute(expr.base, replacement), expr.exponent)


@substitute.register(Call)
def _(expr, replacement):
    return Call(expr.name, substitute(expr.argument, replacement))


# Simplification: constant folding and the neutral elements of +, *, ^
@singledispatch
def simplify(expr):
    """
    Minimal canonical simplification.

    Folds constants (where they are defined) and removes +0, -0, *1, /1, ^1, ^0 and products with 0. Nothing is reordered or expanded.

    :param expr: Expression tree
    :return: Simplified tree
    :rtype: Expr
    """
    return expr


def fold(expr):
    """Replace a constant subtree by its value, or leave it when it is undefined."""
    try:
        return Const(evaluate(expr, 0.0))
    except DomainError:
        return expr


@simplify.register(Neg)
def _(expr):
    operand = simplify(expr.operand)
    if isinstance(operand, Const):
        return Const(-operand.value)
    if isinstance(operand, Neg):
        return operand.operand
    return Neg(operand)


@simplify.register(Add)
def _(expr):
    left, right = simplify(expr.left), simplify(expr.right)
    if isinstance(left, Const) and isinstance(right, Const):
        return Const(left.value + right.value)
    if left == ZERO:
        return right
    if right == ZERO:
        return left
    return Add(left, right)


@simplify.register(Sub)
def _(expr):
    left, right = simplify(expr.left), simplify(expr.right)
    if isinstance(left, Const) and isinstance(right, Const):
        return Const(left.value - right.value)
    if right == ZERO:
        return left
    if left == ZERO:
        return simplify(Neg(right))
    return Sub(left, right)


@simplify.register(Mul)
def _(expr):
    left, right = simplify(expr.left), simplify(expr.right)
    if isinstance(left, Const) and isinstance(right, Const):
        return Const(left.value * right.value)
    if left == ZERO or right == ZERO:
        return ZERO
    if left == ONE:
        return right
    if right == ONE:
        return left
    return Mul(left, right)


@simplify.register(Div)
def _(expr):
    left, right = simplify(expr.left), simplify(expr.right)
    if isinstance(left, Const) and isinstance(right, Const):
        return fold(Div(left, right))
    if right == ONE:
        return left
    return Div(left, right)


@simplify.register(Pow)
def _(expr):
    base = simplify(expr.base)
    if expr.exponent == 0:
        return ONE
    if expr.exponent == 1:
        return base
    if isinstance(base, Const):
        return fold(Pow(base, expr.exponent))
    return Pow(base, expr.exponent)


@simplify.register(Call)
def _(expr):
    argument = simplify(expr.argument)
    if isinstance(argument, Const):
        return fold(Call(expr.name, argument))
    return Call(expr.name, argument)


# Differentiation
@singledispatch
def differentiate(expr):
    """
    Symbolic derivative with respect to t, before simplification.

    :param expr: Expression tree without abs nodes
    :return: Derivative tree
    :rtype: Expr
    """
    raise NotImplementedError(f'cannot differentiate a {type(expr).__name__}')


@differentiate.register(Const)
def _(expr):
    return ZERO


@differentiate.register(Var)
def _(expr):
    return ONE


@differentiate.register(Neg)
def _(expr):
    return Neg(differentiate(expr.operand))


@differentiate.register(Add)
def _(expr):
    return Add(differentiate(expr.left), differentiate(expr.right))


@differentiate.register(Sub)
def _(expr):
    return Sub(differentiate(expr.left), differentiate(expr.right))


@differentiate.register(Mul)
def _(expr):
    # (uv)' = u'v + uv'
    u, v = expr.left, expr.right
    return Add(Mul(differentiate(u), v), Mul(u, differentiate(v)))


@differentiate.register(Div)
def _(expr):
    # (u/v)' = (u'v - uv') / v^2
    u, v = expr.left, expr.right
    return Div(Sub(Mul(differentiate(u), v), Mul(u, differentiate(v))), Pow(v, 2.0))


@differentiate.register(Pow)
def _(expr):
    # (u^c)' = c u^(c-1) u'
    if expr.exponent == 0:
        return ZERO
    u = expr.base
    return Mul(Mul(Const(expr.exponent), Pow(u, expr.exponent - 1.0)), differentiate(u))


@differentiate.register(Call)
def _(expr):
    u = expr.argument
    du = differentiate(u)
    if expr.name == 'exp':
        return Mul(expr, du)
    if expr.name == 'ln':
        return Div(du, u)
    if expr.name == 'sin':
        return Mul(Call('cos', u), du)
    if expr.name == 'cos':
        return Neg(Mul(Call('sin', u), du))
    raise NotDifferentiable(f'abs is not differentiable everywhere: {expr.to_text()}')


def diff(expr):
    """
    Exact symbolic derivative, simplified.

    :param expr: Expression tree without abs nodes
    :return: Derivative of the expression with respect to t
    :rtype: Expr
    """
    return simplify(differentiate(expr))
