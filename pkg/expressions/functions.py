from settings import *
from errors import DomainError, NotDifferentiable
from expressions.expr import Expr, Var, diff, evaluate, substitute
from expressions.expr_parser import parse


class Fn:
    """
    Base class for the scalar functions the operators act on.

    A function is evaluated pointwise on scale points. Subclasses implement values(); only expression-backed functions can be differentiated symbolically or composed as an outer function.

    :var text: Human-readable description used in report contexts
    """

    text = ''

    is_symbolic = False

    def values(self, points) -> np.ndarray:
        """
        Evaluate the function on an array of points (to be implemented by subclasses).

        :param points: Numpy array of scale points
        :return: Function values, same shape as points
        :rtype: numpy.ndarray
        """
        ...

    def __call__(self, t):
        return float(self.values(np.asarray(float(t))))

    def derivative(self):
        raise NotDifferentiable(f'{self.text} has no symbolic derivative')

    def compose(self, inner):
        """
        Composition self(inner(t)), evaluated pointwise.

        :param inner: Inner function
        :return: The composed function
        :rtype: Fn
        """
        return CombinedFn(self.values, (inner,), text=f'({self.text})∘({inner.text})')

    def __repr__(self):
        return f'{type(self).__name__}({self.text!r})'


class ExprFn(Fn):
    """
    Function given by an expression of t.

    :var expr: Expression tree
    """

    is_symbolic = True

    def __init__(self, expr, text=None):
        """
        :param expr: Expression tree
        :param text: Source text, defaults to the printed tree
        """
        self.expr = expr
        self.text = text if text is not None else expr.to_text()

    @classmethod
    def parse(cls, text):
        return cls(parse(text), text=text)

    def values(self, points):
        return evaluate(self.expr, points)

    def __call__(self, t):
        return evaluate(self.expr, float(t))

    def derivative(self):
        """
        Exact derivative f'.

        :return: Expression-backed derivative
        :rtype: ExprFn
        """
        return ExprFn(diff(self.expr))

    def compose(self, inner):
        """
        Composition self(inner(t)).

        Stays symbolic when the inner function is expression-backed.

        :param inner: Inner function
        :return: The composed function
        :rtype: Fn
        """
        if isinstance(inner, ExprFn):
            return ExprFn(substitute(self.expr, inner.expr), text=f'({self.text})∘({inner.text})')
        return super().compose(inner)


class TabulatedFn(Fn):
    """
    Function given by its values on the points of a discrete time scale.

    :var points: Sorted points carrying a value
    :var table: Values at those points
    """

    def __init__(self, points, table, text='tabulated'):
        order = np.argsort(points)
        self.points = np.asarray(points, dtype=np.float64)[order]
        self.table = np.asarray(table, dtype=np.float64)[order]
        self.text = text

    @classmethod
    def from_scale(cls, scale, fn, text=None):
        """
        Tabulate a function on every point of a discrete scale.

        :param scale: Discrete time scale
        :param fn: Callable evaluated on the point array
        :param text: Description, defaults to the scale text
        :return: Function total on the scale points
        :rtype: TabulatedFn
        """
        if not scale.is_discrete:
            raise DomainError(f'cannot tabulate a function on the continuous scale {scale.text}')
        return cls(scale.points, fn(scale.points), text=text or f'tabulated on {scale.text}')

    def values(self, points):
        points = np.asarray(points, dtype=np.float64)
        flat = np.atleast_1d(points)
        last = len(self.points) - 1
        index = np.searchsorted(self.points, flat)
        left, right = np.clip(index - 1, 0, last), np.clip(index, 0, last)
        nearest = np.where(np.abs(self.points[left] - flat) <= np.abs(self.points[right] - flat), left, right)

        distance = np.abs(self.points[nearest] - flat)
        if np.any(distance > MEMBERSHIP_TOLERANCE):
            missing = flat[distance > MEMBERSHIP_TOLERANCE][0]
            raise DomainError(f'{self.text} has no value at {missing!r}')
        return self.table[nearest].reshape(points.shape)


class CombinedFn(Fn):
    """
    Pointwise combination of other functions, such as |f g| |h|.

    :var combine: Callable mapping the operand value arrays to the result array
    :var operands: Functions whose values are combined
    """

    def __init__(self, combine, operands, text):
        self.combine = combine
        self.operands = tuple(operands)
        self.text = text

    def values(self, points):
        points = np.asarray(points, dtype=np.float64)
        with np.errstate(over='ignore'):
            return np.asarray(self.combine(*(operand.values(points) for operand in self.operands)), dtype=np.float64)


IDENTITY = ExprFn(Var(), text='t')


def as_fn(value):
    """
    Coerce text, an expression tree or a function into a Fn.

    :param value: Expression text, Expr or Fn
    :return: The function
    :rtype: Fn
    """
    if isinstance(value, Fn):
        return value
    if isinstance(value, Expr):
        return ExprFn(value)
    return ExprFn.parse(value)
