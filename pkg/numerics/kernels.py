from settings import *

# Gauss-Kronrod 7/15 abscissae on [-1, 1], increasing, and the matching weights
KRONROD_NODES = np.array([
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245, 0.405845151377397166906606412076961,
    0.586087235467691130294144845693013, 0.741531185599394439863864773280788,
    0.864864423359769072789712788640926, 0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
"""Kronrod abscissae; every odd index is also a Gauss 7-point node."""

KRONROD_WEIGHTS = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])

GAUSS_WEIGHTS = np.array([
    0.0, 0.129484966168869693270611432679082,
    0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975,
    0.0, 0.417959183673469387755102040816327,
    0.0, 0.381830050505118944950369775488975,
    0.0, 0.279705391489276667901467771423780,
    0.0, 0.129484966168869693270611432679082,
    0.0,
])
"""Gauss 7-point weights laid out on the Kronrod abscissae, zero where the node is Kronrod-only."""


@njit
def gauss_kronrod_panel(values, half_length):
    """
    Apply the 7/15 Gauss-Kronrod pair to one panel.

    :param values: Integrand at the 15 mapped Kronrod abscissae
    :param half_length: Half the panel length
    :return: Kronrod estimate, Gauss estimate and the Kronrod rule applied to |values|
    :rtype: tuple
    """
    kronrod = 0.0
    gauss = 0.0
    magnitude = 0.0
    for i in range(15):
        kronrod += KRONROD_WEIGHTS[i] * values[i]
        gauss += GAUSS_WEIGHTS[i] * values[i]
        magnitude += KRONROD_WEIGHTS[i] * abs(values[i])
    return kronrod * half_length, gauss * half_length, magnitude * half_length


@njit
def weighted_delta_sum(values, points, graininess, exponent):
    """
    Discrete part of the alpha-fractional integral.

    Accumulates f(t) * t^(alpha - 1) * mu(t) in point order, left to right.

    :param values: f at the right-scattered points
    :param points: The right-scattered points
    :param graininess: Clipped graininess of every point
    :param exponent: alpha - 1
    :return: The weighted sum
    :rtype: float
    """
    total = 0.0
    for i in range(len(points)):
        total += values[i] * points[i] ** exponent * graininess[i]
    return total


@njit
def second_differences(values):
    """
    Second differences v[i-1] - 2 v[i] + v[i+1] of evenly spaced samples.

    :param values: Samples on an even grid
    :return: Array two elements shorter than values
    :rtype: numpy.ndarray
    """
    result = np.empty(len(values) - 2)
    for i in range(1, len(values) - 1):
        result[i - 1] = values[i - 1] - 2.0 * values[i] + values[i + 1]
    return result
