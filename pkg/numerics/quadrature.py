from dataclasses import dataclass
import heapq
import itertools

from settings import *
from errors import QuadratureFailure
from numerics.kernels import KRONROD_NODES, gauss_kronrod_panel

logger = logging.getLogger(__name__)

MACHINE_EPSILON = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class QuadratureResult:
    """
    Outcome of an adaptive integration.

    :var value: Integral estimate
    :var error: Sum of the panel error estimates
    :var panels: Number of panels in the final mesh
    """

    value: float
    error: float
    panels: int


def graded_breakpoints(lo, hi):
    """
    Geometric mesh toward a left end close to 0.

    The weight t^(alpha - 1) varies by a bounded factor over each panel [lo 2^k, lo 2^(k+1)].

    :param lo: Positive left end, at most GRADED_ZONE
    :param hi: Right end
    :return: Interior breakpoints lo 2^k strictly inside (lo, hi)
    :rtype: list
    """
    breakpoints = []
    point = 2.0 * lo
    while point < hi:
        breakpoints.append(point)
        point *= 2.0
    logger.debug('graded mesh on [%r, %r] with %d breakpoints', lo, hi, len(breakpoints))
    return breakpoints


def integrate(integrand, lo, hi, tolerance, max_subdivisions=MAX_SUBDIVISIONS, max_depth=None, breakpoints=()):
    """
    Adaptive Gauss-Kronrod integration with global error control.

    The panel with the largest error estimate |K15 - G7| is bisected until the summed estimate falls below the tolerance. A panel whose estimate is already below ROUNDOFF_ULPS of its magnitude cannot improve and is set aside, as is a panel at the depth limit.

    :param integrand: Vectorized callable mapping a node array to integrand values
    :param lo: Left end
    :param hi: Right end, not smaller than lo
    :param tolerance: Absolute error target
    :param max_subdivisions: Bisections allowed before giving up
    :param max_depth: Bisection depth limit per panel, or None
    :param breakpoints: Interior points the initial mesh must contain
    :return: Integral with its error estimate
    :rtype: QuadratureResult
    """
    if hi == lo:
        return QuadratureResult(0.0, 0.0, 0)

    mesh = sorted({lo, hi, *(x for x in breakpoints if lo < x < hi)})
    counter = itertools.count()
    queue = []
    settled = []
    depth_limited = False

    def evaluate_panel(a, b):
        half_length = 0.5 * (b - a)
        nodes = 0.5 * (a + b) + half_length * KRONROD_NODES
        values = np.asarray(integrand(nodes), dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise QuadratureFailure(f'integrand is not finite on [{a!r}, {b!r}]')
        kronrod, gauss, magnitude = gauss_kronrod_panel(values, half_length)
        return kronrod, abs(kronrod - gauss), magnitude

    def place(a, b, depth):
        nonlocal depth_limited
        value, error, magnitude = evaluate_panel(a, b)
        if error <= ROUNDOFF_ULPS * MACHINE_EPSILON * magnitude:
            settled.append((value, error))
        elif max_depth is not None and depth >= max_depth:
            depth_limited = True
            settled.append((value, error))
        else:
            heapq.heappush(queue, (-error, next(counter), a, b, depth, value))
        return error

    total_error = sum(place(a, b, 0) for a, b in zip(mesh, mesh[1:]))

    subdivisions = 0
    while queue and total_error > tolerance:
        if subdivisions >= max_subdivisions:
            raise QuadratureFailure(
                f'error estimate {total_error:.3g} above {tolerance:.3g} after {subdivisions} subdivisions'
            )
        negative_error, _, a, b, depth, _ = heapq.heappop(queue)
        middle = 0.5 * (a + b)
        total_error += negative_error
        total_error += place(a, middle, depth + 1) + place(middle, b, depth + 1)
        subdivisions += 1

    if total_error > tolerance and depth_limited:
        raise QuadratureFailure(f'error estimate {total_error:.3g} above {tolerance:.3g} at the depth limit')

    errors = [-entry[0] for entry in queue] + [error for _, error in settled]
    value = math.fsum([entry[5] for entry in queue] + [value for value, _ in settled])
    error = math.fsum(errors)
    logger.debug('integrated [%r, %r] with %d subdivisions, error %.3g', lo, hi, subdivisions, error)
    return QuadratureResult(value=value, error=error, panels=len(errors))
