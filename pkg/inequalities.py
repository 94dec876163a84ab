from dataclasses import dataclass, field, replace

from settings import *
from calculus import check_alpha, frac_integral
from errors import (
    EmptyRange,
    FunctionVanishes,
    InvalidExponent,
    NegativeWeight,
    ShapeIndeterminate,
    ZeroWeightMass,
)
from expressions.functions import IDENTITY, CombinedFn
from numerics.kernels import second_differences

logger = logging.getLogger(__name__)

CONVEX = 'convex'
CONCAVE = 'concave'
AUTO = 'auto'
SHAPES = (CONVEX, CONCAVE, AUTO)


@dataclass(frozen=True)
class HHContext:
    """
    Weighted mean node of the Hermite-Hadamard inequality.

    :var x_w_alpha: Integral of t w(t) divided by the integral of w(t)
    :var weight_mass: Integral of w(t), positive
    """

    x_w_alpha: float
    weight_mass: float

    def to_dict(self):
        return {'x_w_alpha': self.x_w_alpha, 'weight_mass': self.weight_mass}


@dataclass(frozen=True)
class InequalityReport:
    """
    Both sides of one inequality instance.

    Slack is oriented so that a nonnegative value certifies the inequality, including the reversed ones.

    :var kind: holder, cauchy_schwarz, reversed_holder, minkowski, jensen_convex, jensen_concave or hermite_hadamard
    :var lhs: Left side (Hermite-Hadamard: the lower bound)
    :var rhs: Right side (Hermite-Hadamard: the upper bound)
    :var slack: Certifying margin
    :var satisfied: slack >= -tolerance
    :var tolerance: Rounding tolerance plus the propagated quadrature error
    :var context: Scale text, order, exponents, function texts and bounds
    :var integrals: Every alpha-integral the report used, by name
    :var lower: Hermite-Hadamard lower bound f(x_w_alpha)
    :var mid: Hermite-Hadamard weighted mean of f
    :var upper: Hermite-Hadamard chord bound
    :var hh: Weighted mean node of Hermite-Hadamard
    """

    kind: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tolerance: float
    context: dict = field(default_factory=dict)
    integrals: dict = field(default_factory=dict)
    lower: float = None
    mid: float = None
    upper: float = None
    hh: HHContext = None

    def to_dict(self):
        result = {
            'kind': self.kind,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'slack': self.slack,
            'satisfied': self.satisfied,
            'tolerance': self.tolerance,
            'context': dict(self.context),
            'integrals': dict(self.integrals),
        }
        if self.hh is not None:
            result.update(lower=self.lower, mid=self.mid, upper=self.upper, hh=self.hh.to_dict())
        return result


class IntegralLedger:
    """
    Evaluates the alpha-integrals of one report and keeps them by name.

    :var values: Integral values by name, in evaluation order
    :var error: Sum of the quadrature error estimates
    """

    def __init__(self, scale, a, b, alpha):
        self.scale = scale
        self.a = a
        self.b = b
        self.alpha = alpha
        self.values = {}
        self.error = 0.0

    def __call__(self, name, fn):
        result = frac_integral(fn, self.scale, self.a, self.b, self.alpha)
        self.values[name] = result.value
        self.error += result.abs_error_estimate
        return result.value


def slack_tolerance(error, *values):
    return SLACK_TOLERANCE * (1.0 + sum(abs(v) for v in values)) + error


def prepare(scale, a, b, alpha, allow_empty=True):
    """
    Validate the common arguments of every inequality.

    :return: Located bounds and the checked order
    :rtype: tuple
    """
    alpha = check_alpha(alpha)
    a, b = scale.locate(a), scale.locate(b)
    if a > b or (a == b and not allow_empty):
        raise EmptyRange(f'inequalities need a < b, got {a!r}..{b!r}')
    return a, b, alpha


def power_product(first, second, p, q):
    """
    first^(1/p) second^(1/q) for nonnegative integrals.

    p = q = 2 gives sqrt(first * second), the Cauchy-Schwarz form, so both reports round alike. Products that overflow or underflow are recomputed through logarithms.
    """
    if first == 0 or second == 0:
        return 0.0
    try:
        if p == q == 2.0:
            value = math.sqrt(first * second)
        else:
            value = first ** (1.0 / p) * second ** (1.0 / q)
    except OverflowError:
        value = math.inf
    if 0 < value < math.inf:
        return value
    return math.exp(math.log(first) / p + math.log(second) / q)


def conjugate(p):
    return p / (p - 1.0)


def base_context(scale, a, b, alpha, **functions):
    context = {'scale': scale.text, 'alpha': alpha, 'a': a, 'b': b}
    context.update({name: fn.text for name, fn in functions.items()})
    return context


def report(kind, lhs, rhs, slack, ledger, context, error=None, **extra):
    tolerance = slack_tolerance(ledger.error if error is None else error, lhs, rhs, *(v for v in extra.values() if isinstance(v, float)))
    satisfied = bool(slack >= -tolerance)
    if not satisfied:
        logger.warning('%s violated: lhs=%r rhs=%r slack=%r', kind, lhs, rhs, slack)
    return InequalityReport(kind, lhs, rhs, slack, satisfied, tolerance, context, dict(ledger.values), **extra)


def holder(f, g, h, scale, a, b, alpha, p):
    """
    Hoelder inequality for the alpha-integral.

    integral |f g| |h| <= (integral |f|^p |h|)^(1/p) (integral |g|^q |h|)^(1/q), with 1/p + 1/q = 1.

    The context also records the Young bound of the proof, the integral of A/p + B/q for the normalized densities A = |f|^p / F and B = |g|^q / G, which equals 1 when both normalizers are positive.

    :param f: First factor
    :param g: Second factor
    :param h: Weight
    :param scale: Time scale
    :param a: Lower bound
    :param b: Upper bound
    :param alpha: Order in (0, 1]
    :param p: Exponent greater than 1
    :return: Both sides and the slack
    :rtype: InequalityReport
    """
    p = float(p)
    if not p > 1:
        raise InvalidExponent(f'Hoelder needs p > 1, got {p!r}')
    q = conjugate(p)
    a, b, alpha = prepare(scale, a, b, alpha)
    ledger = IntegralLedger(scale, a, b, alpha)

    lhs = ledger('|f g| |h|', CombinedFn(lambda f, g, h: np.abs(f * g) * np.abs(h), (f, g, h), '|f g| |h|'))
    first = ledger('|f|^p |h|', CombinedFn(lambda f, h: np.abs(f) ** p * np.abs(h), (f, h), '|f|^p |h|'))
    second = ledger('|g|^q |h|', CombinedFn(lambda g, h: np.abs(g) ** q * np.abs(h), (g, h), '|g|^q |h|'))
    rhs = power_product(first, second, p, q)

    context = base_context(scale, a, b, alpha, f=f, g=g, h=h)
    context.update(p=p, q=q)
    if first > 0 and second > 0:
        young = CombinedFn(
            lambda f, g, h: (np.abs(f) ** p / (p * first) + np.abs(g) ** q / (q * second)) * np.abs(h),
            (f, g, h),
            'young bound',
        )
        context['young_bound'] = frac_integral(young, scale, a, b, alpha).value
        context['normalized_lhs'] = lhs / rhs
    return report('holder', lhs, rhs, rhs - lhs, ledger, context)


def cauchy_schwarz(f, g, h, scale, a, b, alpha):
    """
    Cauchy-Schwarz inequality, Hoelder with p = q = 2.

    The right side is written sqrt(integral f^2 |h| * integral g^2 |h|).
    """
    a, b, alpha = prepare(scale, a, b, alpha)
    ledger = IntegralLedger(scale, a, b, alpha)
    lhs = ledger('|f g| |h|', CombinedFn(lambda f, g, h: np.abs(f * g) * np.abs(h), (f, g, h), '|f g| |h|'))
    first = ledger('f^2 |h|', CombinedFn(lambda f, h: f * f * np.abs(h), (f, h), 'f^2 |h|'))
    second = ledger('g^2 |h|', CombinedFn(lambda g, h: g * g * np.abs(h), (g, h), 'g^2 |h|'))
    rhs = power_product(first, second, 2.0, 2.0)

    context = base_context(scale, a, b, alpha, f=f, g=g, h=h)
    context.update(p=2.0, q=2.0)
    return report('cauchy_schwarz', lhs, rhs, rhs - lhs, ledger, context)


def require_nonvanishing(fn, scale, a, b):
    samples = scale.sample_points(a, b)
    magnitudes = np.abs(fn.values(samples))
    if np.any(magnitudes < VANISHING_TOLERANCE):
        where = samples[magnitudes < VANISHING_TOLERANCE][0]
        raise FunctionVanishes(f'{fn.text} vanishes at {where!r}; the reversed inequality needs it bounded away from 0')


def reversed_holder(f, g, h, scale, a, b, alpha, p):
    """
    Reversed Hoelder inequality for p < 0, so that 0 < q < 1.

    integral |f g| |h| >= (integral |f|^p |h|)^(1/p) (integral |g|^q |h|)^(1/q). f must stay away from 0 on the grid sample since the argument goes through |f|^(-q).

    :param f: First factor, bounded away from 0
    :param g: Second factor
    :param h: Weight
    :param scale: Time scale
    :param a: Lower bound
    :param b: Upper bound, greater than a
    :param alpha: Order in (0, 1]
    :param p: Negative exponent
    :return: Both sides, slack = lhs - rhs
    :rtype: InequalityReport
    """
    p = float(p)
    if not p < 0:
        raise InvalidExponent(f'reversed Hoelder needs p < 0, got {p!r}')
    q = conjugate(p)
    a, b, alpha = prepare(scale, a, b, alpha, allow_empty=False)
    require_nonvanishing(f, scale, a, b)
    ledger = IntegralLedger(scale, a, b, alpha)

    lhs = ledger('|f g| |h|', CombinedFn(lambda f, g, h: np.abs(f * g) * np.abs(h), (f, g, h), '|f g| |h|'))
    first = ledger('|f|^p |h|', CombinedFn(lambda f, h: np.abs(f) ** p * np.abs(h), (f, h), '|f|^p |h|'))
    second = ledger('|g|^q |h|', CombinedFn(lambda g, h: np.abs(g) ** q * np.abs(h), (g, h), '|g|^q |h|'))
    if first == 0:
        raise FunctionVanishes(f'{h.text} vanishes on the range, the weighted |f|^p integral is 0')
    rhs = power_product(first, second, p, q)

    context = base_context(scale, a, b, alpha, f=f, g=g, h=h)
    context.update(p=p, q=q)
    return report('reversed_holder', lhs, rhs, lhs - rhs, ledger, context)


def reversed_holder_swapped(f, g, h, scale, a, b, alpha, q):
    """
    Reversed Hoelder inequality for q < 0, obtained by exchanging the roles of f and g.

    g must stay away from 0 here.
    """
    q = float(q)
    if not q < 0:
        raise InvalidExponent(f'the swapped reversed Hoelder needs q < 0, got {q!r}')
    result = reversed_holder(g, f, h, scale, a, b, alpha, q)
    context = dict(result.context, f=f.text, g=g.text, p=conjugate(q), q=q, branch='q<0')
    return replace(result, context=context)


def minkowski(f, g, h, scale, a, b, alpha, p):
    """
    Minkowski inequality for the alpha-integral.

    (integral |f + g|^p |h|)^(1/p) <= (integral |f|^p |h|)^(1/p) + (integral |g|^p |h|)^(1/p).

    :param f: First summand
    :param g: Second summand
    :param h: Weight
    :param scale: Time scale
    :param a: Lower bound
    :param b: Upper bound
    :param alpha: Order in (0, 1]
    :param p: Exponent greater than 1
    :return: Both sides and the slack
    :rtype: InequalityReport
    """
    p = float(p)
    if not p > 1:
        raise InvalidExponent(f'Minkowski needs p > 1, got {p!r}')
    a, b, alpha = prepare(scale, a, b, alpha)
    ledger = IntegralLedger(scale, a, b, alpha)

    total = ledger('|f + g|^p |h|', CombinedFn(lambda f, g, h: np.abs(f + g) ** p * np.abs(h), (f, g, h), '|f + g|^p |h|'))
    first = ledger('|f|^p |h|', CombinedFn(lambda f, h: np.abs(f) ** p * np.abs(h), (f, h), '|f|^p |h|'))
    second = ledger('|g|^p |h|', CombinedFn(lambda g, h: np.abs(g) ** p * np.abs(h), (g, h), '|g|^p |h|'))
    lhs = total ** (1.0 / p)
    rhs = first ** (1.0 / p) + second ** (1.0 / p)

    context = base_context(scale, a, b, alpha, f=f, g=g, h=h)
    context['p'] = p
    return report('minkowski', lhs, rhs, rhs - lhs, ledger, context)


def resolve_shape(fn, lo, hi, shape):
    """
    Convexity of fn on [lo, hi], certified by sampled second differences.

    Second differences within CONVEXITY_TOLERANCE of the sampled magnitude count as zero, so affine functions are convex.

    :param fn: Function evaluable on [lo, hi]
    :param lo: Left end
    :param hi: Right end
    :param shape: 'convex', 'concave' or 'auto'
    :return: 'convex' or 'concave'
    :rtype: str
    """
    if shape in (CONVEX, CONCAVE):
        return shape
    if shape != AUTO:
        raise ShapeIndeterminate(f'unknown shape {shape!r}, expected one of {", ".join(SHAPES)}')

    nodes = np.linspace(lo, hi, CONVEXITY_SAMPLES)
    values = np.ascontiguousarray(fn.values(nodes), dtype=np.float64)
    differences = second_differences(values)
    tolerance = CONVEXITY_TOLERANCE * max(1.0, float(np.max(np.abs(values))))
    if np.all(differences >= -tolerance):
        decided = CONVEX
    elif np.all(differences <= tolerance):
        decided = CONCAVE
    else:
        raise ShapeIndeterminate(f'{fn.text} is neither convex nor concave on [{lo!r}, {hi!r}]')
    logger.debug('%s is %s on [%r, %r]', fn.text, decided, lo, hi)
    return decided


def weight_mass(ledger, name, weight):
    mass = ledger(name, weight)
    if not mass > MIN_WEIGHT_MASS:
        raise ZeroWeightMass(f'weight mass {mass!r} is not above {MIN_WEIGHT_MASS}')
    return mass


def jensen(f_outer, g, h, scale, a, b, alpha, shape=AUTO):
    """
    Jensen inequality for the alpha-integral with weight |h|.

    Convex f: f(integral g |h| / M) <= integral f(g) |h| / M, with M = integral |h| > 0. Concave f reverses the inequality.

    :param f_outer: Outer function, defined on the range of g
    :param g: Inner function
    :param h: Weight
    :param scale: Time scale
    :param a: Lower bound
    :param b: Upper bound
    :param alpha: Order in (0, 1]
    :param shape: 'convex', 'concave' or 'auto'
    :return: lhs = f(mean), rhs = weighted mean of f(g)
    :rtype: InequalityReport
    """
    a, b, alpha = prepare(scale, a, b, alpha)
    ledger = IntegralLedger(scale, a, b, alpha)
    mass = weight_mass(ledger, '|h|', CombinedFn(np.abs, (h,), '|h|'))

    inner_values = g.values(scale.sample_points(a, b))
    shape = resolve_shape(f_outer, float(np.min(inner_values)), float(np.max(inner_values)), shape)

    mean = ledger('g |h|', CombinedFn(lambda g, h: g * np.abs(h), (g, h), 'g |h|')) / mass
    mid = ledger('f(g) |h|', CombinedFn(lambda v, h: v * np.abs(h), (f_outer.compose(g), h), 'f(g) |h|')) / mass
    lhs = f_outer(mean)
    slack = mid - lhs if shape == CONVEX else lhs - mid

    context = base_context(scale, a, b, alpha, f=f_outer, g=g, h=h)
    context.update(shape=shape, mean=mean, weight_mass=mass)
    error = ledger.error / mass * (1.0 + abs(lhs) + abs(mid))
    return report(f'jensen_{shape}', lhs, mid, slack, ledger, context, error=error)


def hermite_hadamard(f, w, scale, a, b, alpha, shape=AUTO):
    """
    Hermite-Hadamard inequality for the alpha-integral with weight w.

    For convex f: f(x) <= integral f w / integral w <= ((b - x) f(a) + (x - a) f(b)) / (b - a), where x = integral t w / integral w. Concave f reverses both inequalities.

    :param f: Function continuous on [a, b]
    :param w: Nonnegative weight
    :param scale: Time scale
    :param a: Lower bound
    :param b: Upper bound, greater than a
    :param alpha: Order in (0, 1]
    :param shape: 'convex', 'concave' or 'auto'
    :return: lower, mid and upper with the smaller of the two margins as slack
    :rtype: InequalityReport
    """
    a, b, alpha = prepare(scale, a, b, alpha, allow_empty=False)
    samples = scale.sample_points(a, b)
    weights = w.values(samples)
    if np.any(weights < 0):
        raise NegativeWeight(f'{w.text} is negative at {samples[weights < 0][0]!r}')

    ledger = IntegralLedger(scale, a, b, alpha)
    mass = weight_mass(ledger, 'w', w)
    shape = resolve_shape(f, a, b, shape)

    node = ledger('t w', CombinedFn(lambda t, w: t * w, (IDENTITY, w), 't w')) / mass
    lower = f(node)
    mid = ledger('f w', CombinedFn(lambda f, w: f * w, (f, w), 'f w')) / mass
    upper = ((b - node) * f(a) + (node - a) * f(b)) / (b - a)
    if shape == CONVEX:
        slack = min(mid - lower, upper - mid)
    else:
        slack = min(lower - mid, mid - upper)

    context = base_context(scale, a, b, alpha, f=f, w=w)
    context['shape'] = shape
    error = ledger.error / mass * (1.0 + abs(lower) + abs(mid) + abs(upper))
    return report(
        'hermite_hadamard', lower, upper, slack, ledger, context, error=error,
        lower=lower, mid=mid, upper=upper, hh=HHContext(node, mass),
    )
