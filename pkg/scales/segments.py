from dataclasses import dataclass

from settings import *
from errors import ScaleSyntaxError


def format_number(value):
    """
    Render a number for the scale mini-language.

    Uses 17 significant digits so that parsing the text gives back the same double.

    :param value: Number to render
    :return: Shortest decimal literal that round-trips
    :rtype: str
    """
    return format(float(value), '.17g')


class BaseSegment:
    """
    Base class for the building blocks of a time scale.

    A segment is either a finite collection of isolated points or a closed real interval. Subclasses provide the points (or the interval bounds) and a mini-language rendering; the TimeScale assembles segments into one ordered closed set.

    :var is_continuous: True for real intervals, False for point collections
    """

    is_continuous = False

    @property
    def points(self) -> np.ndarray:
        """
        Points of a discrete segment, strictly increasing (to be implemented by subclasses).

        :return: Sorted array of the represented points, empty for continuous segments
        :rtype: numpy.ndarray
        """
        ...

    @property
    def lo(self):
        return float(self.points[0])

    @property
    def hi(self):
        return float(self.points[-1])

    def to_text(self) -> str:
        ...


@dataclass(frozen=True)
class FiniteSet(BaseSegment):
    """
    Explicit finite set of reals, written `set:{v1,v2,...}`.

    :var values: Strictly increasing point values
    """

    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ScaleSyntaxError('a finite set needs at least one point')
        if not all(math.isfinite(v) for v in values):
            raise ScaleSyntaxError('set points must be finite')
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ScaleSyntaxError('set points must be strictly increasing')
        object.__setattr__(self, 'values', values)

    @property
    def points(self):
        return np.array(self.values, dtype=np.float64)

    def to_text(self):
        return 'set:{' + ','.join(format_number(v) for v in self.values) + '}'


@dataclass(frozen=True)
class UniformLattice(BaseSegment):
    """
    Evenly spaced points start, start + step, ..., start + (count - 1) * step.

    Written `Z:a..b` when the step is 1 and the start is an integer, `h:<step>:a..b` otherwise.

    :var start: First point
    :var step: Positive spacing between consecutive points
    :var count: Number of points
    """

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.step)):
            raise ScaleSyntaxError('lattice parameters must be finite')
        if self.step <= 0:
            raise ScaleSyntaxError(f'lattice step must be positive, got {self.step}')
        if self.count < 1:
            raise ScaleSyntaxError('lattice must hold at least one point')

    @property
    def points(self):
        return self.start + self.step * np.arange(self.count, dtype=np.float64)

    def to_text(self):
        last = format_number(self.points[-1])
        if self.step == 1.0 and float(self.start).is_integer():
            return f'Z:{int(self.start)}..{int(self.start) + self.count - 1}'
        return f'h:{format_number(self.step)}:{format_number(self.start)}..{last}'


@dataclass(frozen=True)
class GeometricLattice(BaseSegment):
    """
    Powers of a ratio, base^k for k from first_exponent to last_exponent.

    Written `q:<ratio>:k0..k1`. These are the scales of quantum (q-) calculus.

    :var base: Ratio q > 1
    :var first_exponent: Smallest exponent k0
    :var last_exponent: Largest exponent k1
    """

    base: float
    first_exponent: int
    last_exponent: int

    def __post_init__(self):
        if not (math.isfinite(self.base) and self.base > 1):
            raise ScaleSyntaxError(f'geometric ratio must be greater than 1, got {self.base}')
        if self.last_exponent < self.first_exponent:
            raise ScaleSyntaxError('geometric lattice exponents must be increasing')

    @property
    def points(self):
        exponents = np.arange(self.first_exponent, self.last_exponent + 1, dtype=np.float64)
        return np.power(self.base, exponents)

    def to_text(self):
        return f'q:{format_number(self.base)}:{self.first_exponent}..{self.last_exponent}'


@dataclass(frozen=True)
class ContinuousInterval(BaseSegment):
    """
    Closed real interval [lo, hi] with lo < hi, written `R:a..b`.

    Every interior point is dense on both sides; the bounds inherit their outer classification from the neighbouring segments.
    """

    lower: float
    upper: float

    is_continuous = True

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ScaleSyntaxError('interval bounds must be finite')
        if not self.lower < self.upper:
            raise ScaleSyntaxError(f'interval needs lo < hi, got {self.lower}..{self.upper}')

    @property
    def points(self):
        return np.empty(0, dtype=np.float64)

    @property
    def lo(self):
        return float(self.lower)

    @property
    def hi(self):
        return float(self.upper)

    def to_text(self):
        return f'R:{format_number(self.lower)}..{format_number(self.upper)}'
