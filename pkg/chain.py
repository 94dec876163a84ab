from dataclasses import dataclass, field

from settings import *
from calculus import frac_derivative, holds_near, rounding_allowance
from errors import ImageNotRepresentable, NonpositivePointWithFractionalAlpha, NotDifferentiable, NotMonotone, ScaleSyntaxError
from expressions.expr import Const
from numerics.quadrature import integrate
from scales.segments import ContinuousInterval, FiniteSet, UniformLattice
from scales.time_scale import TimeScale

logger = logging.getLogger(__name__)

CHAIN_RULE_I = 'chain_rule_I'
CHAIN_RULE_II = 'chain_rule_II'


@dataclass(frozen=True)
class ChainReport:
    """
    Both sides of a chain rule at one point.

    :var kind: 'chain_rule_I' or 'chain_rule_II'
    :var lhs: T_alpha of the composition, computed directly
    :var rhs: Value given by the chain-rule formula
    :var abs_gap: |lhs - rhs|
    :var hypothesis_ok: Outcome of the Chain Rule II hypothesis check, always True for Chain Rule I
    :var quadrature_error: Error estimate of the inner integral over h (Chain Rule I only)
    :var naive_rhs: Classical chain rule f'(g(t)) T_alpha(g)(t), None when f has no symbolic derivative
    :var context: Scale, order, point and function texts
    """

    kind: str
    lhs: float
    rhs: float
    abs_gap: float
    hypothesis_ok: bool
    quadrature_error: float
    naive_rhs: float = None
    context: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'kind': self.kind,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'abs_gap': self.abs_gap,
            'hypothesis_ok': self.hypothesis_ok,
            'quadrature_error': self.quadrature_error,
            'naive_rhs': self.naive_rhs,
            'context': dict(self.context),
        }


def symbolic_derivative(fn, role):
    if not fn.is_symbolic:
        raise NotDifferentiable(f'{role} {fn.text} must be an expression to be differentiated')
    return fn.derivative()


def chain_rule_I(f, g, scale, t, alpha):
    """
    Evaluate both sides of the first chain rule.

    T_alpha(f o g)(t) = [integral over h in [0, 1] of f'(g(t) + h mu(t) t^(alpha-1) T_alpha(g)(t))] T_alpha(g)(t).

    At right-dense points the integrand is constant in h and the right side reduces to f'(g(t)) T_alpha(g)(t).

    :param f: Outer function, expression-backed
    :param g: Inner function
    :param scale: Time scale
    :param t: Point of T^kappa
    :param alpha: Order in (0, 1]
    :return: Both sides with the inner quadrature error
    :rtype: ChainReport
    """
    f_prime = symbolic_derivative(f, 'outer function')
    inner = frac_derivative(g, scale, t, alpha).value
    t = scale.locate(t)
    mu = scale.mu(t)
    g_t = g(t)

    quadrature_error = 0.0
    if mu == 0 or isinstance(f_prime.expr, Const):
        average = f_prime(g_t)
    else:
        if alpha < 1.0 and t == 0:
            raise NonpositivePointWithFractionalAlpha('t^(alpha-1) is undefined at 0')
        jump = mu * t ** (alpha - 1.0) * inner
        result = integrate(
            lambda h: f_prime.values(g_t + h * jump),
            0.0,
            1.0,
            CHAIN_QUADRATURE_TOLERANCE,
            max_depth=CHAIN_QUADRATURE_MAX_DEPTH,
        )
        average, quadrature_error = result.value, result.error

    lhs = frac_derivative(f.compose(g), scale, t, alpha).value
    rhs = average * inner
    return ChainReport(
        kind=CHAIN_RULE_I,
        lhs=lhs,
        rhs=rhs,
        abs_gap=abs(lhs - rhs),
        hypothesis_ok=True,
        quadrature_error=quadrature_error,
        naive_rhs=f_prime(g_t) * inner,
        context={'scale': scale.text, 'alpha': alpha, 't': t, 'f': f.text, 'g': g.text},
    )


def map_segment(nu, segment):
    """
    Image of one segment under a strictly increasing function.

    Uniform lattices that stay evenly spaced keep their kind; every other discrete segment is enumerated as a finite set.

    :param nu: Strictly increasing function
    :param segment: Segment of the source scale
    :return: Segment of the image scale
    :rtype: BaseSegment
    """
    if segment.is_continuous:
        return ContinuousInterval(nu(segment.lo), nu(segment.hi))

    image = np.asarray(nu.values(segment.points), dtype=np.float64)
    if isinstance(segment, UniformLattice) and segment.count > 1:
        lattice = UniformLattice(float(image[0]), float(image[1] - image[0]), segment.count)
        if np.max(np.abs(lattice.points - image)) <= MEMBERSHIP_TOLERANCE:
            return lattice
    if not isinstance(segment, FiniteSet):
        logger.debug('image of %s under %s enumerated as a finite set', segment.to_text(), nu.text)
    return FiniteSet(tuple(image))


def image_scale(nu, scale):
    """
    Image time scale nu(T) of a strictly increasing function.

    Monotonicity is checked on the grid sample of the scale: every isolated point, every segment end and MONOTONE_SAMPLES interior points per interval.

    :param nu: Strictly increasing function on the scale
    :param scale: Source time scale
    :return: Time scale holding exactly the images of the source points
    :rtype: TimeScale
    """
    samples = scale.sample_points()
    values = np.asarray(nu.values(samples), dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ImageNotRepresentable(f'{nu.text} is not finite on {scale.text}')
    if np.any(np.diff(values) <= 0):
        raise NotMonotone(f'{nu.text} is not strictly increasing on {scale.text}')

    try:
        return TimeScale(map_segment(nu, segment) for segment in scale.segments)
    except ScaleSyntaxError as error:
        raise ImageNotRepresentable(f'image of {scale.text} under {nu.text}: {error}') from error


def hypothesis_holds(nu, scale, image, t, derivative, epsilon, samples):
    sigma = scale.sigma(t)
    sigma_image = image.sigma(nu(t))

    def condition(s):
        nu_s = nu(s)
        linear = derivative * (sigma - s)
        allowance = rounding_allowance(sigma_image, nu_s, linear)
        return abs(sigma_image - nu_s - linear) <= epsilon * abs(sigma - s) + allowance

    return holds_near(scale, t, max(1, int(samples)), condition)


def check_cr2_hypothesis(nu, scale, t, alpha, epsilon, samples=HYPOTHESIS_SAMPLES):
    """
    Test the hypothesis of the second chain rule near t.

    |sigma~(nu(t)) - nu(s) - T_alpha(nu)(t) (sigma(t) - s)| <= epsilon |sigma(t) - s| on the test points of a shrinking neighbourhood of t, where sigma~ is the forward jump of the image scale.

    :param nu: Strictly increasing expression-backed function
    :param scale: Time scale
    :param t: Point of T^kappa
    :param alpha: Order in (0, 1]
    :param epsilon: Tolerance of the condition
    :param samples: Consecutive radii on which the condition must hold
    :return: True when the hypothesis holds numerically
    :rtype: bool
    """
    t = scale.require_kappa(t)
    image = image_scale(nu, scale)
    derivative = frac_derivative(nu, scale, t, alpha).value
    return hypothesis_holds(nu, scale, image, t, derivative, epsilon, samples)


def chain_rule_II(w, nu, scale, t, alpha, epsilon, samples=HYPOTHESIS_SAMPLES):
    """
    Evaluate both sides of the second chain rule.

    T_alpha(w o nu)(t) = T~_alpha(w)(nu(t)) T_alpha(nu)(t), where T~_alpha is the fractional derivative on the image scale nu(T), weighted by nu(t)^(1-alpha). The identity is only claimed when hypothesis_ok is True.

    :param w: Outer function, defined on the image scale
    :param nu: Strictly increasing expression-backed function
    :param scale: Time scale
    :param t: Point of T^kappa
    :param alpha: Order in (0, 1]
    :param epsilon: Tolerance of the hypothesis check
    :param samples: Consecutive radii for the hypothesis check
    :return: Both sides with the hypothesis outcome
    :rtype: ChainReport
    """
    symbolic_derivative(nu, 'inner function')
    t = scale.require_kappa(t)
    image = image_scale(nu, scale)
    inner = frac_derivative(nu, scale, t, alpha).value
    hypothesis_ok = hypothesis_holds(nu, scale, image, t, inner, epsilon, samples)
    if not hypothesis_ok:
        logger.info('chain rule II hypothesis fails at t=%r for alpha=%r; no identity is claimed', t, alpha)

    nu_t = nu(t)
    outer = frac_derivative(w, image, nu_t, alpha).value
    lhs = frac_derivative(w.compose(nu), scale, t, alpha).value
    rhs = outer * inner

    naive_rhs = None
    if w.is_symbolic:
        try:
            naive_rhs = w.derivative()(nu_t) * inner
        except NotDifferentiable:
            pass

    return ChainReport(
        kind=CHAIN_RULE_II,
        lhs=lhs,
        rhs=rhs,
        abs_gap=abs(lhs - rhs),
        hypothesis_ok=hypothesis_ok,
        quadrature_error=0.0,
        naive_rhs=naive_rhs,
        context={
            'scale': scale.text,
            'image_scale': image.text,
            'alpha': alpha,
            't': t,
            'w': w.text,
            'nu': nu.text,
            'epsilon': epsilon,
        },
    )
