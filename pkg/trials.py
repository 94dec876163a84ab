from dataclasses import dataclass

from settings import *
from expressions.functions import ExprFn
from inequalities import cauchy_schwarz, hermite_hadamard, holder, jensen, minkowski, reversed_holder
from scales.scale_parser import parse_scale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trial:
    """
    One randomized instance of the inequality suite.

    :var index: Position of the trial in its run
    :var scale: Scale mini-language text
    :var alpha: Order in (0, 1]
    :var p: Hoelder and Minkowski exponent in (1, 5]; the reversed inequality uses 1 - p
    :var f: First function
    :var g: Second function
    :var h: Weight of the Hoelder family and of Jensen
    :var w: Hermite-Hadamard weight
    :var convex_outer: Convex outer function for Jensen and Hermite-Hadamard
    :var concave_outer: Concave outer function for Jensen
    """

    index: int
    scale: str
    alpha: float
    p: float
    f: str
    g: str
    h: str
    w: str
    convex_outer: str
    concave_outer: str

    def to_dict(self):
        return {
            'index': self.index,
            'scale': self.scale,
            'alpha': self.alpha,
            'p': self.p,
            'f': self.f,
            'g': self.g,
            'h': self.h,
            'w': self.w,
            'convex_outer': self.convex_outer,
            'concave_outer': self.concave_outer,
        }


def pick(rng, pool):
    return pool[int(rng.integers(len(pool)))]


def draw_exponent(rng, largest):
    """
    Draw p from (1, 5] so that |g|^q stays finite.

    :param rng: Random generator
    :param largest: Largest |g| on the grid sample
    :return: The exponent
    :rtype: float
    """
    log_largest = math.log(max(1.0, largest))
    while True:
        p = 1.0 + 4.0 * (1.0 - rng.random())
        if p / (p - 1.0) * log_largest <= MAX_POWER_EXPONENT:
            return p


def draw_trials(count, seed):
    """
    Draw the randomized inequality instances of one run.

    The same seed always gives the same trials.

    :param count: Number of trials
    :param seed: Seed of the generator
    :return: The trials, in index order
    :rtype: list
    """
    rng = np.random.default_rng(seed)
    trials = []
    for index in range(count):
        scale_text = pick(rng, TRIAL_SCALES)
        alpha = 1.0 - rng.random()
        f, g, h, w = (pick(rng, TRIAL_POOL) for _ in range(4))
        samples = parse_scale(scale_text).sample_points()
        largest = float(np.max(np.abs(ExprFn.parse(g).values(samples))))
        p = draw_exponent(rng, largest)
        trial = Trial(index, scale_text, alpha, p, f, g, h, w, pick(rng, CONVEX_OUTER_POOL), pick(rng, CONCAVE_OUTER_POOL))
        logger.debug('trial %d: %s', index, trial)
        trials.append(trial)
    return trials


def run_trial(trial):
    """
    Evaluate the seven inequality reports of one trial over the whole scale.

    :param trial: The instance
    :return: Hoelder, Cauchy-Schwarz, reversed Hoelder, Minkowski, convex Jensen, concave Jensen and Hermite-Hadamard reports
    :rtype: list
    """
    scale = parse_scale(trial.scale)
    f, g, h, w = (ExprFn.parse(text) for text in (trial.f, trial.g, trial.h, trial.w))
    convex, concave = ExprFn.parse(trial.convex_outer), ExprFn.parse(trial.concave_outer)
    a, b, alpha = scale.min, scale.max, trial.alpha
    return [
        holder(f, g, h, scale, a, b, alpha, trial.p),
        cauchy_schwarz(f, g, h, scale, a, b, alpha),
        reversed_holder(f, g, h, scale, a, b, alpha, 1.0 - trial.p),
        minkowski(f, g, h, scale, a, b, alpha, trial.p),
        jensen(convex, g, h, scale, a, b, alpha),
        jensen(concave, g, h, scale, a, b, alpha),
        hermite_hadamard(convex, w, scale, a, b, alpha),
    ]
