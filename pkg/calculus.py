from dataclasses import dataclass

from settings import *
from errors import (
    InvalidAlpha,
    NegativePointWithFractionalAlpha,
    NonpositivePointWithFractionalAlpha,
    NotDifferentiable,
    PointNotInScale,
    ZeroLimitUndetermined,
)
from expressions.functions import TabulatedFn
from numerics.kernels import weighted_delta_sum
from numerics.quadrature import graded_breakpoints, integrate
from scales.time_scale import PointClass

logger = logging.getLogger(__name__)

SCATTERED_QUOTIENT = 'scattered-quotient'
SYMBOLIC_DENSE = 'symbolic-dense'
FINITE_DIFFERENCE_DENSE = 'finite-difference-dense'
LIMIT_AT_ZERO = 'limit-at-zero'

MACHINE_EPSILON = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class FracDerivResult:
    """
    Value of the alpha-fractional derivative T_alpha(f)(t) and how it was obtained.

    :var value: T_alpha(f)(t)
    :var alpha: Order in (0, 1]
    :var point_class: Classification of t
    :var method: 'scattered-quotient', 'symbolic-dense', 'finite-difference-dense' or 'limit-at-zero'
    :var one_sided: True when a finite difference had to use a one-sided stencil at a segment end
    """

    value: float
    alpha: float
    point_class: PointClass
    method: str
    one_sided: bool = False

    def to_dict(self):
        return {
            'value': self.value,
            'alpha': self.alpha,
            'point_class': self.point_class.to_dict(),
            'method': self.method,
            'one_sided': self.one_sided,
        }


@dataclass(frozen=True)
class FracIntegralResult:
    """
    Cauchy alpha-fractional integral of f from a to b.

    :var value: discrete_part + continuous_part
    :var discrete_part: Sum over the right-scattered points of f(t) t^(alpha-1) mu(t)
    :var continuous_part: Quadrature of f(t) t^(alpha-1) over the continuous pieces
    :var abs_error_estimate: Error estimate of the quadrature, 0 without continuous pieces
    """

    value: float
    discrete_part: float
    continuous_part: float
    abs_error_estimate: float

    def negated(self):
        return FracIntegralResult(-self.value, -self.discrete_part, -self.continuous_part, self.abs_error_estimate)

    def to_dict(self):
        return {
            'value': self.value,
            'discrete_part': self.discrete_part,
            'continuous_part': self.continuous_part,
            'abs_error_estimate': self.abs_error_estimate,
        }


ZERO_INTEGRAL = FracIntegralResult(0.0, 0.0, 0.0, 0.0)


def check_alpha(alpha):
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlpha(f'alpha must lie in (0, 1], got {alpha!r}')
    return alpha


def finite_difference(f, t, lo, hi):
    """
    Derivative of f at t inside the continuous segment [lo, hi].

    Central difference with step FINITE_DIFFERENCE_STEP when both sides have room, otherwise the second-order one-sided stencil toward the longer side.

    :param f: Function evaluable on [lo, hi]
    :param t: Point of [lo, hi]
    :param lo: Segment start
    :param hi: Segment end
    :return: Derivative estimate and whether the stencil was one-sided
    :rtype: tuple
    """
    left, right = t - lo, hi - t
    if min(left, right) >= FINITE_DIFFERENCE_STEP:
        h = FINITE_DIFFERENCE_STEP
        return (f(t + h) - f(t - h)) / (2.0 * h), False
    if right >= left:
        h = min(FINITE_DIFFERENCE_STEP, 0.5 * right)
        return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h), True
    h = min(FINITE_DIFFERENCE_STEP, 0.5 * left)
    return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h), True


def delta_quotient(f, scale, t):
    """
    Delta derivative of f at t together with the method used.

    :param f: Function on the scale
    :param scale: Time scale
    :param t: Point of T^kappa
    :return: (value, method, one_sided)
    :rtype: tuple
    """
    t = scale.require_kappa(t)
    sigma = scale.sigma(t)
    if sigma > t:
        return (f(sigma) - f(t)) / (sigma - t), SCATTERED_QUOTIENT, False

    if isinstance(f, TabulatedFn):
        raise NotDifferentiable(f'{f.text} is tabulated and t={t!r} is right-dense')
    if f.is_symbolic:
        try:
            return f.derivative()(t), SYMBOLIC_DENSE, False
        except NotDifferentiable:
            logger.debug('%s has no symbolic derivative, using finite differences', f.text)

    lo, hi = scale.enclosing_interval(t)
    value, one_sided = finite_difference(f, t, lo, hi)
    return value, FINITE_DIFFERENCE_DENSE, one_sided


def delta_derivative(f, scale, t):
    """
    Hilger delta derivative f^Delta(t).

    At a right-scattered point this is the exact quotient (f(sigma(t)) - f(t)) / mu(t); at a right-dense point it is the ordinary derivative, symbolic when f is an expression.

    :param f: Function on the scale
    :param scale: Time scale
    :param t: Point of T^kappa
    :return: f^Delta(t)
    :rtype: float
    """
    value, _, _ = delta_quotient(f, scale, t)
    return value


def frac_derivative(f, scale, t, alpha):
    """
    Alpha-fractional derivative T_alpha(f)(t).

    The epsilon-delta definition forces T_alpha(f)(t) = t^(1 - alpha) f^Delta(t) for t > 0. At t = 0 the derivative is the limit from the right, extrapolated from the three smallest positive points of the scale.

    :param f: Function on the scale
    :param scale: Time scale
    :param t: Point of T^kappa, positive when alpha < 1 (or 0 for the limit)
    :param alpha: Order in (0, 1]
    :return: Value with classification and method
    :rtype: FracDerivResult
    """
    alpha = check_alpha(alpha)
    t = scale.require_kappa(t)
    if alpha < 1.0 and t < 0:
        raise NegativePointWithFractionalAlpha(f't^(1-alpha) is undefined at t={t!r} for alpha={alpha!r}')
    if alpha < 1.0 and t == 0:
        return limit_at_zero(f, scale, alpha)

    delta, method, one_sided = delta_quotient(f, scale, t)
    value = t ** (1.0 - alpha) * delta
    return FracDerivResult(value, alpha, scale.classify(t), method, one_sided)


def zero_limit_points(scale):
    """
    Three smallest positive scale points, where the derivative at 0 is sampled.

    :param scale: Time scale containing 0
    :return: Increasing list of three positive points
    :rtype: list
    """
    interval = scale.enclosing_interval(0.0)
    if interval is not None and interval[1] > 0:
        step = min(ZERO_LIMIT_STEP, interval[1])
        return [0.25 * step, 0.5 * step, step]

    points = []
    point = 0.0
    while len(points) < 3:
        following = scale.sigma(point)
        if following == point:
            interval = scale.enclosing_interval(point)
            if interval is None or point >= interval[1]:
                raise ZeroLimitUndetermined(f'{scale.text} has fewer than three positive points')
            following = min(point + ZERO_LIMIT_STEP, interval[1])
        points.append(following)
        point = following
    return points


def limit_at_zero(f, scale, alpha):
    """
    T_alpha(f)(0) as the limit of T_alpha(f)(t) for t -> 0+.

    Linear extrapolations to 0 through the point pairs (1, 2) and (2, 3) have to agree to ZERO_LIMIT_TOLERANCE, otherwise the sequence is not treated as convergent.

    :param f: Function on the scale
    :param scale: Time scale containing 0
    :param alpha: Order in (0, 1)
    :return: Extrapolated value
    :rtype: FracDerivResult
    """
    points = zero_limit_points(scale)
    try:
        values = [frac_derivative(f, scale, t, alpha).value for t in points]
    except PointNotInScale as error:
        raise ZeroLimitUndetermined(f'cannot sample the limit at 0: {error}') from error

    (t1, t2, t3), (v1, v2, v3) = points, values
    first = v1 - t1 * (v2 - v1) / (t2 - t1)
    second = v2 - t2 * (v3 - v2) / (t3 - t2)
    if abs(first - second) > ZERO_LIMIT_TOLERANCE * (1.0 + abs(first)):
        raise ZeroLimitUndetermined(
            f'extrapolations {first!r} and {second!r} toward 0 disagree; the limit is not resolved by the scale'
        )
    logger.debug('limit at 0 from points %s: %r', points, first)
    return FracDerivResult(first, alpha, scale.classify(0.0), LIMIT_AT_ZERO)


def frac_derivative_order_zero(f, t):
    """
    T_0(f)(t), the identity operator.

    :param f: Function
    :param t: Point where f is defined
    :return: f(t)
    :rtype: float
    """
    return f(t)


def frac_integral(f, scale, a, b, alpha):
    """
    Cauchy alpha-fractional integral of f from a to b.

    The integral is the delta integral of f(t) t^(alpha - 1): an exact weighted sum over the right-scattered points of [a, b) plus adaptive quadrature over the continuous pieces. Pieces that start within GRADED_ZONE of 0 get a geometric mesh toward their left end when alpha < 1. Reversed bounds flip the sign.

    :param f: Function on the scale
    :param scale: Time scale
    :param a: Lower bound, a scale point
    :param b: Upper bound, a scale point
    :param alpha: Order in (0, 1]
    :return: Value with its discrete and continuous parts
    :rtype: FracIntegralResult
    """
    alpha = check_alpha(alpha)
    a, b = scale.locate(a), scale.locate(b)
    if a == b:
        return ZERO_INTEGRAL
    if a > b:
        return frac_integral(f, scale, b, a, alpha).negated()
    if alpha < 1.0 and a <= 0:
        raise NonpositivePointWithFractionalAlpha(
            f't^(alpha-1) is undefined on [{a!r}, {b!r}] for alpha={alpha!r}'
        )

    exponent = alpha - 1.0
    decomposition = scale.iterate_scattered(a, b)
    values = np.ascontiguousarray(f.values(decomposition.points), dtype=np.float64)
    discrete = float(weighted_delta_sum(values, decomposition.points, decomposition.graininess, exponent))

    def integrand(nodes):
        return f.values(nodes) * np.power(nodes, exponent)

    total_length = sum(hi - lo for lo, hi in decomposition.pieces)
    continuous, error = 0.0, 0.0
    for lo, hi in decomposition.pieces:
        breakpoints = graded_breakpoints(lo, hi) if alpha < 1.0 and lo <= GRADED_ZONE else ()
        share = INTEGRAL_TOLERANCE * (hi - lo) / total_length
        result = integrate(integrand, lo, hi, share, breakpoints=breakpoints)
        continuous += result.value
        error += result.error

    return FracIntegralResult(discrete + continuous, discrete, continuous, error)


def verify_sigma_formula(f, scale, t, alpha):
    """
    Residual of f(sigma(t)) = f(t) + mu(t) t^(alpha - 1) T_alpha(f)(t).

    :param f: Function on the scale
    :param scale: Time scale
    :param t: Point of T^kappa, positive when alpha < 1
    :param alpha: Order in (0, 1]
    :return: f(sigma(t)) - f(t) - mu(t) t^(alpha-1) T_alpha(f)(t)
    :rtype: float
    """
    derivative = frac_derivative(f, scale, t, alpha)
    t = scale.locate(t)
    if alpha < 1.0 and t == 0:
        raise NonpositivePointWithFractionalAlpha('t^(alpha-1) is undefined at 0')
    sigma = scale.sigma(t)
    return f(sigma) - f(t) - (sigma - t) * t ** (alpha - 1.0) * derivative.value


def neighbourhood_points(scale, t, radius):
    """
    Scale points of the open neighbourhood (t - radius, t + radius) used as test points.

    :param scale: Time scale
    :param t: Centre, a scale point
    :param radius: Neighbourhood radius
    :return: t, the points t +- radius/2 when they belong to the scale, and the nearest scale point on each side when it lies strictly inside
    :rtype: list
    """
    points = [t]
    for side, neighbour in ((-1.0, scale.rho(t)), (1.0, scale.sigma(t))):
        inner = t + side * 0.5 * radius
        if scale.contains(inner):
            points.append(scale.locate(inner))
        if neighbour != t and abs(neighbour - t) < radius:
            points.append(neighbour)
    return points


def holds_near(scale, t, samples, predicate):
    """
    Numerical stand-in for "there is a neighbourhood of t on which the predicate holds".

    Radii start at mu(t) (or NEIGHBORHOOD_RADIUS at right-dense points) and halve down to RADIUS_FLOOR * max(1, |t|). The check passes once the predicate holds on every test point of `samples` consecutive radii.

    :param scale: Time scale
    :param t: Scale point
    :param samples: Consecutive radii required
    :param predicate: Callable taking a test point s
    :return: True when the predicate held on a shrinking run of neighbourhoods
    :rtype: bool
    """
    mu = scale.mu(t)
    radius = mu if mu > 0 else NEIGHBORHOOD_RADIUS
    floor = RADIUS_FLOOR * max(1.0, abs(t))
    streak = 0
    for _ in range(MAX_HALVINGS + samples):
        if radius < floor:
            break
        if all(predicate(s) for s in neighbourhood_points(scale, t, radius)):
            streak += 1
            if streak >= samples:
                return True
        else:
            streak = 0
        radius *= 0.5
    return False


def rounding_allowance(*magnitudes):
    return ROUNDING_ULPS * MACHINE_EPSILON * sum(abs(m) for m in magnitudes)


def verify_epsilon_delta(f, scale, t, alpha, candidate, epsilon, samples):
    """
    Check a candidate value against the epsilon-delta definition of T_alpha(f)(t).

    Tests |[f(sigma(t)) - f(s)] t^(1-alpha) - candidate [sigma(t) - s]| <= epsilon |sigma(t) - s| on the test points of a shrinking neighbourhood of t.

    :param f: Function on the scale
    :param scale: Time scale
    :param t: Right-scattered or dense point of T^kappa
    :param alpha: Order in (0, 1]
    :param candidate: Proposed value of T_alpha(f)(t)
    :param epsilon: Tolerance of the definition
    :param samples: Consecutive radii on which the inequality must hold
    :return: True when the candidate satisfies the definition
    :rtype: bool
    """
    alpha = check_alpha(alpha)
    t = scale.require_kappa(t)
    if alpha < 1.0 and t <= 0:
        raise NonpositivePointWithFractionalAlpha(f't^(1-alpha) is undefined at t={t!r}')
    sigma = scale.sigma(t)
    weight = t ** (1.0 - alpha)
    f_sigma = f(sigma)

    def inequality(s):
        f_s = f(s)
        difference = (f_sigma - f_s) * weight
        linear = candidate * (sigma - s)
        allowance = rounding_allowance(f_sigma * weight, f_s * weight, linear)
        return abs(difference - linear) <= epsilon * abs(sigma - s) + allowance

    return holds_near(scale, t, max(1, int(samples)), inequality)
