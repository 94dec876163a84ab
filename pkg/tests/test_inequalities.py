"""Tests for the alpha-integral inequalities and the randomized trials."""

import math

import numpy as np
import pytest

from errors import EmptyRange, FunctionVanishes, InvalidExponent, NegativeWeight, ShapeIndeterminate, ZeroWeightMass
from expressions.functions import ExprFn
from inequalities import (
    cauchy_schwarz,
    hermite_hadamard,
    holder,
    jensen,
    minkowski,
    resolve_shape,
    reversed_holder,
    reversed_holder_swapped,
)
from scales.scale_parser import parse_scale
from trials import draw_trials, run_trial

SCALES = ('Z:1..6', 'h:0.5:1..4', 'q:2:0..3', 'R:1..2', 'union(R:1..2;set:{3,4})', 'set:{1,1.5,3.7}')
DISCRETE_SCALES = ('Z:1..6', 'h:0.5:1..4', 'q:2:0..3', 'set:{1,1.5,3.7}')
FACTORS = (0.5, 2.0, 10.0)


def fn(text):
    return ExprFn.parse(text)


def whole(text):
    scale = parse_scale(text)
    return scale, scale.min, scale.max


def equality(report):
    return abs(report.slack) <= 1e-10 * (1 + abs(report.lhs))


def scaled(c, text):
    return fn(f'{c}*({text})')


def weighted_sum(integrand, points, alpha):
    """Sum of integrand(t) t^(alpha-1) over consecutive integer points, where mu = 1."""
    return sum(integrand(t) * t ** (alpha - 1.0) for t in points)


def plain_loop_integral(integrand, scale, a, b, alpha):
    """Independent summation of integrand(t) t^(alpha-1) mu(t) over [a, b) on a discrete scale."""
    total = 0.0
    for t in scale.points:
        t = float(t)
        if a <= t < b:
            total += integrand(t) * t ** (alpha - 1.0) * (min(scale.sigma(t), b) - t)
    return total


class TestHolder:
    """Hoelder and Cauchy-Schwarz."""

    @pytest.mark.parametrize('text', SCALES)
    def test_satisfied(self, text):
        scale, a, b = whole(text)
        report = holder(fn('t'), fn('exp(t/4)'), fn('2*t+1'), scale, a, b, 0.5, 3.0)
        assert report.satisfied and report.slack >= 0
        assert report.context['q'] == pytest.approx(1.5, rel=1e-15)
        assert report.context['young_bound'] == pytest.approx(1.0, abs=1e-9)
        assert report.context['normalized_lhs'] <= 1.0 + 1e-12

    def test_integrals_are_recorded(self):
        scale, a, b = whole('Z:1..5')
        report = holder(fn('t'), fn('t^2'), fn('1'), scale, a, b, 1.0, 2.0)
        assert report.integrals == {'|f g| |h|': 100.0, '|f|^p |h|': 30.0, '|g|^q |h|': 354.0}
        assert report.rhs == pytest.approx(np.sqrt(30.0 * 354.0), rel=1e-14)

    @pytest.mark.parametrize('p', [1.0, 0.5, -2.0])
    def test_exponent_must_exceed_one(self, p):
        scale, a, b = whole('Z:1..5')
        with pytest.raises(InvalidExponent):
            holder(fn('t'), fn('t'), fn('1'), scale, a, b, 0.5, p)

    def test_degenerate_range(self):
        scale = parse_scale('Z:1..5')
        report = holder(fn('t'), fn('t^2'), fn('1'), scale, 3, 3, 0.5, 2.0)
        assert (report.lhs, report.rhs, report.slack) == (0.0, 0.0, 0.0)
        assert report.satisfied
        assert 'young_bound' not in report.context

    def test_reciprocal_factors(self):
        scale, a, b = whole('Z:1..4')
        report = holder(fn('t'), fn('t^-1'), fn('1'), scale, a, b, 1.0, 2.0)
        assert report.lhs == 3.0
        assert report.rhs == pytest.approx(np.sqrt(14.0 * (1 + 1 / 4 + 1 / 9)), rel=1e-14)
        assert report.satisfied

    def test_reversed_bounds(self):
        scale = parse_scale('Z:1..5')
        with pytest.raises(EmptyRange):
            holder(fn('t'), fn('t'), fn('1'), scale, 4, 2, 0.5, 2.0)

    def test_cauchy_schwarz_equality_witness(self):
        for text in SCALES:
            scale, a, b = whole(text)
            report = cauchy_schwarz(fn('exp(t/4)'), fn('exp(t/4)'), fn('t'), scale, a, b, 0.7)
            assert report.satisfied
            assert equality(report)

    def test_worked_example(self):
        scale, a, b = whole('Z:1..5')
        report = holder(fn('t'), fn('1'), fn('1'), scale, a, b, 0.5, 2.0)
        points = range(1, 5)
        assert report.lhs == pytest.approx(sum(math.sqrt(t) for t in points), rel=1e-14)
        expected = math.sqrt(weighted_sum(lambda t: t * t, points, 0.5) * weighted_sum(lambda t: 1.0, points, 0.5))
        assert report.rhs == pytest.approx(expected, rel=1e-14)
        assert report.satisfied

    @pytest.mark.parametrize('c', FACTORS)
    @pytest.mark.parametrize('text', SCALES)
    def test_scaling_covariance(self, text, c):
        scale, a, b = whole(text)
        base = holder(fn('t'), fn('exp(t/4)'), fn('2*t+1'), scale, a, b, 0.5, 3.0)
        report = holder(scaled(c, 't'), fn('exp(t/4)'), fn('2*t+1'), scale, a, b, 0.5, 3.0)
        tolerance = report.tolerance + c * base.tolerance
        assert report.lhs == pytest.approx(c * base.lhs, rel=1e-12, abs=tolerance)
        assert report.rhs == pytest.approx(c * base.rhs, rel=1e-12, abs=tolerance)
        assert report.satisfied == base.satisfied

    @pytest.mark.parametrize('f, g, h', [('t', 't^2', '1'), ('exp(t)', 'exp(2*t)', 't'), ('t-2', 'exp(t/4)', '2*t+1')])
    @pytest.mark.parametrize('text', SCALES)
    def test_cauchy_schwarz_matches_holder(self, text, f, g, h):
        scale, a, b = whole(text)
        first = cauchy_schwarz(fn(f), fn(g), fn(h), scale, a, b, 0.4)
        second = holder(fn(f), fn(g), fn(h), scale, a, b, 0.4, 2.0)
        assert first.kind == 'cauchy_schwarz'
        assert first.slack == pytest.approx(second.slack, rel=1e-12, abs=1e-12)
        assert first.rhs == pytest.approx(second.rhs, rel=1e-12)


class TestReversedHolder:
    """Reversed Hoelder for a negative exponent."""

    @pytest.mark.parametrize('text', SCALES)
    def test_satisfied(self, text):
        scale, a, b = whole(text)
        report = reversed_holder(fn('t+1'), fn('t^2'), fn('1'), scale, a, b, 0.5, -1.0)
        assert report.satisfied and report.slack >= 0
        assert report.context['q'] == pytest.approx(0.5, rel=1e-15)

    def test_worked_example(self):
        scale, a, b = whole('Z:1..4')
        report = reversed_holder(fn('t'), fn('1'), fn('1'), scale, a, b, 0.5, -2.0)
        points = range(1, 4)
        assert report.context['q'] == pytest.approx(2 / 3, rel=1e-15)
        assert report.lhs == pytest.approx(weighted_sum(float, points, 0.5), rel=1e-14)
        expected = weighted_sum(lambda t: t ** -2.0, points, 0.5) ** -0.5 * weighted_sum(lambda t: 1.0, points, 0.5) ** 1.5
        assert report.rhs == pytest.approx(expected, rel=1e-13)
        assert report.satisfied and report.slack > 0

    def test_constant_equality(self):
        scale, a, b = whole('set:{1,2}')
        report = reversed_holder(fn('1'), fn('1'), fn('1'), scale, a, b, 1.0, -1.0)
        assert (report.lhs, report.rhs) == (1.0, 1.0)
        assert report.slack == 0.0

    def test_large_magnitudes(self):
        scale, a, b = whole('Z:1..6')
        report = reversed_holder(fn('exp(t)'), fn('exp(40*t)'), fn('1'), scale, a, b, 0.5, -0.05)
        assert np.isfinite(report.rhs)
        assert report.satisfied

    @pytest.mark.parametrize('p', [0.0, 0.5, 2.0])
    def test_exponent_must_be_negative(self, p):
        scale, a, b = whole('Z:1..5')
        with pytest.raises(InvalidExponent):
            reversed_holder(fn('t'), fn('t'), fn('1'), scale, a, b, 0.5, p)

    def test_vanishing_factor(self):
        scale, a, b = whole('Z:1..5')
        with pytest.raises(FunctionVanishes):
            reversed_holder(fn('t-2'), fn('t'), fn('1'), scale, a, b, 0.5, -1.0)

    def test_vanishing_weight(self):
        scale, a, b = whole('Z:1..5')
        with pytest.raises(FunctionVanishes):
            reversed_holder(fn('t'), fn('t'), fn('0'), scale, a, b, 0.5, -1.0)

    def test_needs_a_proper_range(self):
        scale = parse_scale('Z:1..5')
        with pytest.raises(EmptyRange):
            reversed_holder(fn('t'), fn('t'), fn('1'), scale, 3, 3, 0.5, -1.0)

    def test_swapped_branch(self):
        scale, a, b = whole('h:0.5:1..4')
        report = reversed_holder_swapped(fn('t^2'), fn('t+1'), fn('1'), scale, a, b, 0.5, -1.0)
        assert report.satisfied
        assert report.context['branch'] == 'q<0'
        assert report.context['f'] == 't^2' and report.context['g'] == 't+1'
        assert report.context['p'] == pytest.approx(0.5, rel=1e-15)


class TestMinkowski:
    """Triangle inequality of the weighted p-norm."""

    @pytest.mark.parametrize('text', SCALES)
    def test_satisfied(self, text):
        scale, a, b = whole(text)
        report = minkowski(fn('t-2'), fn('exp(t/4)'), fn('t'), scale, a, b, 0.3, 2.5)
        assert report.satisfied and report.slack >= 0

    def test_equality_witness(self):
        for text in SCALES:
            scale, a, b = whole(text)
            report = minkowski(fn('t^2'), fn('0'), fn('1'), scale, a, b, 0.5, 3.0)
            assert equality(report)

    def test_worked_example(self):
        scale, a, b = whole('Z:1..5')
        report = minkowski(fn('t'), fn('exp(t)'), fn('1'), scale, a, b, 0.5, 3.0)
        points = range(1, 5)
        expected_lhs = weighted_sum(lambda t: (t + math.exp(t)) ** 3, points, 0.5) ** (1 / 3)
        expected_rhs = (weighted_sum(lambda t: t ** 3.0, points, 0.5) ** (1 / 3)
                        + weighted_sum(lambda t: math.exp(t) ** 3, points, 0.5) ** (1 / 3))
        assert report.lhs == pytest.approx(expected_lhs, rel=1e-13)
        assert report.rhs == pytest.approx(expected_rhs, rel=1e-13)
        assert report.satisfied and report.slack > 0

    @pytest.mark.parametrize('c', FACTORS)
    @pytest.mark.parametrize('text', SCALES)
    def test_homogeneity(self, text, c):
        scale, a, b = whole(text)
        base = minkowski(fn('t-2'), fn('exp(t/4)'), fn('t'), scale, a, b, 0.3, 2.5)
        report = minkowski(scaled(c, 't-2'), scaled(c, 'exp(t/4)'), fn('t'), scale, a, b, 0.3, 2.5)
        tolerance = report.tolerance + c * base.tolerance
        assert report.lhs == pytest.approx(c * base.lhs, rel=1e-12, abs=tolerance)
        assert report.rhs == pytest.approx(c * base.rhs, rel=1e-12, abs=tolerance)
        assert report.satisfied == base.satisfied

    def test_exponent_must_exceed_one(self):
        scale, a, b = whole('Z:1..5')
        with pytest.raises(InvalidExponent):
            minkowski(fn('t'), fn('t'), fn('1'), scale, a, b, 0.5, 1.0)


class TestRecordedIntegrals:
    """Integrals kept in the reports against an independent summation."""

    @pytest.mark.parametrize('text', DISCRETE_SCALES)
    def test_discrete_oracle(self, text):
        scale, a, b = whole(text)
        f, g, h = fn('t'), fn('exp(t/4)'), fn('2*t+1')
        alpha = 0.37
        for evaluate, p in ((holder, 2.5), (reversed_holder, -1.5), (minkowski, 2.5)):
            report = evaluate(f, g, h, scale, a, b, alpha, p)
            q = report.context.get('q', p)
            integrands = {
                '|f g| |h|': lambda t: abs(f(t) * g(t)) * abs(h(t)),
                '|f|^p |h|': lambda t: abs(f(t)) ** p * abs(h(t)),
                '|g|^q |h|': lambda t: abs(g(t)) ** q * abs(h(t)),
                '|f + g|^p |h|': lambda t: abs(f(t) + g(t)) ** p * abs(h(t)),
                '|g|^p |h|': lambda t: abs(g(t)) ** p * abs(h(t)),
            }
            assert len(report.integrals) == 3
            for name, value in report.integrals.items():
                expected = plain_loop_integral(integrands[name], scale, a, b, alpha)
                np.testing.assert_array_max_ulp(value, expected, maxulp=4)


class TestJensen:
    """Weighted Jensen inequality in both directions."""

    def test_convex(self):
        scale, a, b = whole('Z:1..6')
        report = jensen(fn('t^2'), fn('t'), fn('1'), scale, a, b, 0.5)
        assert report.kind == 'jensen_convex'
        assert report.satisfied and report.slack > 0

    def test_concave(self):
        scale, a, b = whole('union(R:1..2;set:{3,4})')
        report = jensen(fn('ln(t)'), fn('exp(t/4)'), fn('t'), scale, a, b, 0.8)
        assert report.kind == 'jensen_concave'
        assert report.satisfied and report.slack > 0

    def test_worked_example_exponential(self):
        scale, a, b = whole('Z:1..4')
        report = jensen(fn('exp(t)'), fn('t'), fn('1'), scale, a, b, 1.0)
        assert report.kind == 'jensen_convex'
        assert report.context['mean'] == 2.0
        assert report.lhs == pytest.approx(math.exp(2), rel=1e-15)
        assert report.rhs == pytest.approx((math.e + math.exp(2) + math.exp(3)) / 3, rel=1e-14)
        assert report.satisfied

    def test_worked_example_logarithm(self):
        scale, a, b = whole('Z:1..4')
        report = jensen(fn('ln(t)'), fn('t'), fn('1'), scale, a, b, 1.0)
        assert report.kind == 'jensen_concave'
        assert report.lhs == pytest.approx(math.log(2), rel=1e-15)
        assert report.rhs == pytest.approx((math.log(1) + math.log(2) + math.log(3)) / 3, rel=1e-14)
        assert report.satisfied

    def test_affine_equality_witness(self):
        for text in SCALES:
            scale, a, b = whole(text)
            report = jensen(fn('2*t+1'), fn('t^2'), fn('t'), scale, a, b, 0.6)
            assert report.satisfied
            assert equality(report)

    def test_wrong_shape_is_reported(self):
        scale, a, b = whole('Z:1..6')
        report = jensen(fn('t^2'), fn('t'), fn('1'), scale, a, b, 0.5, shape='concave')
        assert not report.satisfied

    def test_indeterminate_shape(self):
        scale, a, b = whole('Z:1..6')
        with pytest.raises(ShapeIndeterminate):
            jensen(fn('sin(t)'), fn('t'), fn('1'), scale, a, b, 0.5)

    def test_zero_weight(self):
        scale, a, b = whole('Z:1..6')
        with pytest.raises(ZeroWeightMass):
            jensen(fn('t^2'), fn('t'), fn('0'), scale, a, b, 0.5)


class TestHermiteHadamard:
    """Weighted Hermite-Hadamard bounds."""

    def test_worked_example(self):
        scale, a, b = whole('Z:1..5')
        report = hermite_hadamard(fn('t^2'), fn('1'), scale, a, b, 0.5)
        assert report.satisfied
        assert report.lower <= report.mid <= report.upper
        assert (report.lhs, report.rhs) == (report.lower, report.upper)
        points = range(1, 5)
        mass = weighted_sum(lambda t: 1.0, points, 0.5)
        node = weighted_sum(float, points, 0.5) / mass
        assert report.hh.weight_mass == pytest.approx(mass, rel=1e-15)
        assert report.hh.x_w_alpha == pytest.approx(node, rel=1e-14)
        assert report.lower == pytest.approx(node ** 2, rel=1e-14)
        assert report.mid == pytest.approx(weighted_sum(lambda t: t * t, points, 0.5) / mass, rel=1e-14)
        assert report.upper == pytest.approx(((5 - node) + (node - 1) * 25) / 4, rel=1e-14)

    @pytest.mark.parametrize('a, b', [(1.0, 3.0), (0.0, 2.0), (-1.0, 0.5)])
    def test_classical_case(self, a, b):
        scale = parse_scale(f'R:{a:g}..{b:g}')
        report = hermite_hadamard(fn('exp(t)'), fn('1'), scale, a, b, 1.0)
        assert report.context['shape'] == 'convex'
        assert report.hh.weight_mass == pytest.approx(b - a, rel=1e-12)
        assert report.hh.x_w_alpha == pytest.approx((a + b) / 2, rel=1e-12, abs=1e-12)
        assert report.lower == pytest.approx(math.exp((a + b) / 2), rel=1e-12)
        assert report.mid == pytest.approx((math.exp(b) - math.exp(a)) / (b - a), rel=1e-10)
        assert report.upper == pytest.approx((math.exp(a) + math.exp(b)) / 2, rel=1e-12)
        assert report.satisfied and report.slack > 0

    @pytest.mark.parametrize('text', SCALES)
    def test_convex_weighted(self, text):
        scale, a, b = whole(text)
        report = hermite_hadamard(fn('exp(t/4)'), fn('t^2'), scale, a, b, 0.35)
        assert report.satisfied and report.slack >= 0

    def test_concave(self):
        scale, a, b = whole('h:0.5:1..4')
        report = hermite_hadamard(fn('t^0.5'), fn('2*t+1'), scale, a, b, 0.5)
        assert report.context['shape'] == 'concave'
        assert report.upper <= report.mid <= report.lower
        assert report.satisfied

    def test_affine_equality_witness(self):
        for text in SCALES:
            scale, a, b = whole(text)
            report = hermite_hadamard(fn('3*t-1'), fn('exp(t/4)'), scale, a, b, 0.5)
            assert report.satisfied
            assert equality(report)

    def test_forced_wrong_shape_is_violated(self):
        scale, a, b = whole('Z:1..5')
        report = hermite_hadamard(fn('ln(t)'), fn('1'), scale, a, b, 0.5, shape='convex')
        assert not report.satisfied

    def test_negative_weight(self):
        scale, a, b = whole('Z:1..5')
        with pytest.raises(NegativeWeight):
            hermite_hadamard(fn('t^2'), fn('t-3'), scale, a, b, 0.5)

    def test_report_dict(self):
        scale, a, b = whole('Z:1..5')
        result = hermite_hadamard(fn('t^2'), fn('1'), scale, a, b, 1.0).to_dict()
        assert set(result['hh']) == {'x_w_alpha', 'weight_mass'}
        assert result['hh']['weight_mass'] == 4.0
        assert result['hh']['x_w_alpha'] == 2.5
        assert 'hh' not in holder(fn('t'), fn('t'), fn('1'), scale, a, b, 1.0, 2.0).to_dict()


class TestResolveShape:
    """Convexity certificate from second differences."""

    def test_shapes(self):
        assert resolve_shape(fn('t^2'), 1, 5, 'auto') == 'convex'
        assert resolve_shape(fn('ln(t)'), 1, 5, 'auto') == 'concave'
        assert resolve_shape(fn('4*t'), 1, 5, 'auto') == 'convex'
        assert resolve_shape(fn('sin(t)'), 1, 5, 'concave') == 'concave'

    def test_unknown_shape(self):
        with pytest.raises(ShapeIndeterminate):
            resolve_shape(fn('t^2'), 1, 5, 'linear')


class TestTrials:
    """Randomized instances of the whole suite."""

    def test_reproducible(self):
        first = [trial.to_dict() for trial in draw_trials(20, 42)]
        second = [trial.to_dict() for trial in draw_trials(20, 42)]
        assert first == second
        assert first != [trial.to_dict() for trial in draw_trials(20, 43)]

    def test_every_report_is_satisfied(self):
        for trial in draw_trials(100, 42):
            reports = run_trial(trial)
            assert len(reports) == 7
            for report in reports:
                assert report.satisfied, (trial, report.kind, report.slack)

    def test_concave_hermite_hadamard(self):
        for trial in draw_trials(100, 42):
            scale, a, b = whole(trial.scale)
            report = hermite_hadamard(fn(trial.concave_outer), fn(trial.w), scale, a, b, trial.alpha)
            assert report.context['shape'] == 'concave'
            assert report.upper <= report.mid + report.tolerance, trial
            assert report.mid <= report.lower + report.tolerance, trial
            assert report.satisfied, (trial, report.slack)

    def test_exponents_stay_in_range(self):
        for trial in draw_trials(50, 1):
            assert 1.0 < trial.p <= 5.0
