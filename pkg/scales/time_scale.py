from dataclasses import dataclass

from settings import *
from errors import EmptyRange, PointNotInKappa, PointNotInScale, ScaleSyntaxError
from scales.segments import FiniteSet

logger = logging.getLogger(__name__)


def merge_discrete(segments):
    """
    Fold neighbouring discrete segments whose hulls meet into one finite set.

    Points closer than MEMBERSHIP_TOLERANCE are kept once. Continuous segments are passed through unchanged, so an interval that meets another segment is still rejected by TimeScale.

    :param segments: Iterable of segments ordered by their left end
    :return: Segments with pairwise disjoint hulls between discrete neighbours
    :rtype: tuple
    """
    merged = []
    for segment in segments:
        previous = merged[-1] if merged else None
        if previous is None or previous.is_continuous or segment.is_continuous or previous.hi < segment.lo:
            merged.append(segment)
            continue

        points = np.sort(np.concatenate([previous.points, segment.points]))
        keep = np.concatenate([[True], np.diff(points) > MEMBERSHIP_TOLERANCE])
        merged[-1] = FiniteSet(tuple(points[keep]))
        logger.debug('merged %s and %s into %d points', previous.to_text(), segment.to_text(), int(np.sum(keep)))
    return tuple(merged)


@dataclass(frozen=True)
class PointClass:
    """
    Classification of a scale point by its jumps.

    :var right: 'scattered' when sigma(t) > t, 'dense' when sigma(t) = t
    :var left: 'scattered' when rho(t) < t, 'dense' when rho(t) = t
    :var is_max: True for the maximum of the scale
    :var is_min: True for the minimum of the scale
    """

    right: str
    left: str
    is_max: bool
    is_min: bool

    @property
    def right_scattered(self):
        return self.right == 'scattered'

    @property
    def left_scattered(self):
        return self.left == 'scattered'

    def to_dict(self):
        return {'right': self.right, 'left': self.left, 'is_max': self.is_max, 'is_min': self.is_min}


@dataclass(frozen=True, eq=False)
class ScatteredDecomposition:
    """
    Split of a range [a, b) of a time scale into its discrete and continuous parts.

    The delta integral over [a, b) is the sum over the right-scattered points weighted by their graininess plus the ordinary integral over the continuous pieces. The graininess of every point is clipped to b - t, so graininess sum plus piece lengths is exactly b - a.

    :var points: Right-scattered points of [a, b), increasing
    :var graininess: min(mu(t), b - t) for every point
    :var pieces: Continuous sub-intervals (lo, hi) of [a, b] with positive length
    """

    points: np.ndarray
    graininess: np.ndarray
    pieces: tuple

    @property
    def pairs(self):
        return [(float(t), float(m)) for t, m in zip(self.points, self.graininess)]

    @property
    def total_length(self):
        return float(np.sum(self.graininess)) + sum(hi - lo for lo, hi in self.pieces)


class TimeScale:
    """
    Bounded time scale assembled from ordered, pairwise disjoint segments.

    A time scale is a nonempty closed subset of the reals. This class represents the ones built from finite sets, uniform lattices, geometric lattices and closed intervals, which keeps the forward jump sigma, the backward jump rho and the graininess mu exactly computable. Instances are immutable.

    :var segments: Segments in increasing order, with non-overlapping hulls
    :var points: All isolated (non-interval) points of the scale, increasing
    :var intervals: Bounds (lo, hi) of the continuous segments, increasing
    :var min: Smallest scale point
    :var max: Largest scale point
    """

    def __init__(self, segments):
        """
        Build a time scale from its segments.

        :param segments: Iterable of segments, already ordered by position
        """
        segments = merge_discrete(segments)
        if not segments:
            raise ScaleSyntaxError('a time scale needs at least one segment')

        # Neighbouring hulls must not touch, otherwise points would be shared
        for previous, following in zip(segments, segments[1:]):
            if not previous.hi < following.lo:
                raise ScaleSyntaxError(
                    f'segments {previous.to_text()} and {following.to_text()} overlap or are out of order'
                )

        self.segments = segments
        discrete = [segment.points for segment in segments if not segment.is_continuous]
        self.points = np.concatenate(discrete) if discrete else np.empty(0, dtype=np.float64)
        self.intervals = tuple((s.lo, s.hi) for s in segments if s.is_continuous)
        self.min = segments[0].lo
        self.max = segments[-1].hi

        # Every element that can be the forward jump of a scattered point
        interval_starts = np.array([lo for lo, _ in self.intervals], dtype=np.float64)
        self._right_targets = np.sort(np.concatenate([self.points, interval_starts]))
        interval_ends = np.array([hi for _, hi in self.intervals], dtype=np.float64)
        self._left_targets = np.sort(np.concatenate([self.points, interval_ends]))

    def __eq__(self, other):
        return isinstance(other, TimeScale) and self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        return f'TimeScale({self.text!r})'

    @property
    def text(self):
        """Canonical mini-language rendering; parsing it gives back an equal scale."""
        if len(self.segments) == 1:
            return self.segments[0].to_text()
        return 'union(' + ';'.join(segment.to_text() for segment in self.segments) + ')'

    @property
    def is_discrete(self):
        return not self.intervals

    def locate(self, t):
        """
        Snap a number onto the scale.

        A number counts as a scale point when it lies within MEMBERSHIP_TOLERANCE of an isolated point or of a continuous segment, so decimal text such as 0.1 still finds the lattice point it names.

        :param t: Number to locate
        :return: The represented scale point
        :rtype: float
        """
        t = float(t)
        if not math.isfinite(t):
            raise PointNotInScale(f'{t} is not a finite number')

        index = int(np.searchsorted(self.points, t))
        for neighbour in (index - 1, index):
            if 0 <= neighbour < len(self.points) and abs(self.points[neighbour] - t) <= MEMBERSHIP_TOLERANCE:
                return float(self.points[neighbour])

        for lo, hi in self.intervals:
            if lo - MEMBERSHIP_TOLERANCE <= t <= hi + MEMBERSHIP_TOLERANCE:
                return min(max(t, lo), hi)

        raise PointNotInScale(f'{t!r} is not a point of {self.text}')

    def contains(self, t):
        try:
            self.locate(t)
        except PointNotInScale:
            return False
        return True

    def sigma(self, t):
        """
        Forward jump operator.

        :param t: Scale point
        :return: inf{s in T : s > t}, or t itself at the maximum
        :rtype: float
        """
        t = self.locate(t)
        for lo, hi in self.intervals:
            if lo <= t < hi:
                return t

        index = int(np.searchsorted(self._right_targets, t, side='right'))
        if index < len(self._right_targets):
            return float(self._right_targets[index])
        return t

    def rho(self, t):
        """
        Backward jump operator.

        :param t: Scale point
        :return: sup{s in T : s < t}, or t itself at the minimum
        :rtype: float
        """
        t = self.locate(t)
        for lo, hi in self.intervals:
            if lo < t <= hi:
                return t

        index = int(np.searchsorted(self._left_targets, t, side='left'))
        if index > 0:
            return float(self._left_targets[index - 1])
        return t

    def mu(self, t):
        """
        Graininess sigma(t) - t.

        :param t: Scale point
        :return: Nonnegative distance to the forward jump
        :rtype: float
        """
        t = self.locate(t)
        return self.sigma(t) - t

    def classify(self, t):
        t = self.locate(t)
        return PointClass(
            right='scattered' if self.sigma(t) > t else 'dense',
            left='scattered' if self.rho(t) < t else 'dense',
            is_max=t == self.max,
            is_min=t == self.min,
        )

    def require_kappa(self, t):
        """
        Check that a point belongs to T^kappa, the scale without a left-scattered maximum.

        :param t: Scale point
        :return: The located point
        :rtype: float
        """
        t = self.locate(t)
        if t == self.max and self.rho(t) < t:
            raise PointNotInKappa(f'{t!r} is the left-scattered maximum of {self.text}')
        return t

    def enclosing_interval(self, t):
        """
        Continuous segment holding a point.

        :param t: Scale point
        :return: (lo, hi) of the interval containing t, or None for isolated points
        :rtype: tuple or None
        """
        t = self.locate(t)
        for lo, hi in self.intervals:
            if lo <= t <= hi:
                return lo, hi
        return None

    def iterate_scattered(self, a, b):
        """
        Decompose [a, b) into right-scattered points and continuous pieces.

        Discrete points and the right ends of intervals that lie in [a, b) are right-scattered: the hulls of the segments do not touch, so their forward jump is strictly larger. The continuous pieces are the intersections of the intervals with [a, b].

        :param a: Lower scale point
        :param b: Upper scale point, not smaller than a
        :return: Scattered points with their clipped graininess, and the continuous pieces
        :rtype: ScatteredDecomposition
        """
        a = self.locate(a)
        b = self.locate(b)
        if a > b:
            raise EmptyRange(f'range {a!r}..{b!r} is empty')

        ends = np.array([hi for _, hi in self.intervals], dtype=np.float64)
        candidates = np.sort(np.concatenate([self.points, ends]))
        points = candidates[(candidates >= a) & (candidates < b)]

        # Forward jump of every scattered point is the next isolated point or interval start
        jumps = self._right_targets[np.searchsorted(self._right_targets, points, side='right')]
        graininess = np.minimum(jumps - points, b - points)

        pieces = []
        for lo, hi in self.intervals:
            x, y = max(lo, a), min(hi, b)
            if y > x:
                pieces.append((x, y))

        logger.debug('range %r..%r: %d scattered points, %d continuous pieces', a, b, len(points), len(pieces))
        return ScatteredDecomposition(points=points, graininess=graininess, pieces=tuple(pieces))

    def sample_points(self, a=None, b=None, interior=MONOTONE_SAMPLES):
        """
        Grid sample of the scale over [a, b].

        Holds every isolated point of [a, b], both ends of every continuous piece and `interior` evenly spaced interior samples per piece. Used wherever a hypothesis has to be checked on the scale rather than proved.

        :param a: Lower bound, defaults to the scale minimum
        :param b: Upper bound, defaults to the scale maximum
        :param interior: Interior samples per continuous piece
        :return: Sorted sample of scale points
        :rtype: numpy.ndarray
        """
        a = self.min if a is None else self.locate(a)
        b = self.max if b is None else self.locate(b)
        samples = [self.points[(self.points >= a) & (self.points <= b)]]
        for lo, hi in self.intervals:
            x, y = max(lo, a), min(hi, b)
            if y > x:
                samples.append(np.linspace(x, y, interior + 2))
            elif y == x:
                samples.append(np.array([x]))
        return np.unique(np.concatenate(samples))
