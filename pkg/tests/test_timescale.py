"""Tests for time scale construction, the jump operators and the scattered decomposition."""

import numpy as np
import pytest

from errors import EmptyRange, PointNotInKappa, PointNotInScale, ScaleSyntaxError
from scales.scale_parser import parse_scale
from scales.segments import ContinuousInterval, FiniteSet, GeometricLattice, UniformLattice
from scales.time_scale import TimeScale


class TestJumpOperators:
    """sigma, rho and mu on every segment kind."""

    def test_sigma_on_integers(self):
        assert parse_scale('Z:0..10').sigma(3) == 4.0

    def test_sigma_on_interval_is_identity(self):
        assert parse_scale('R:0..1').sigma(0.5) == 0.5

    def test_sigma_on_finite_set(self):
        assert parse_scale('set:{1,1.5,3.7}').sigma(1.5) == 3.7

    def test_sigma_at_maximum(self):
        scale = parse_scale('Z:0..10')
        assert scale.sigma(10) == 10.0
        assert scale.mu(10) == 0.0

    def test_mu_on_uniform_lattice(self):
        scale = parse_scale('h:0.5:0..3')
        for t in scale.points[:-1]:
            assert scale.mu(t) == 0.5

    def test_mu_on_interval(self):
        assert parse_scale('R:0..1').mu(0.25) == 0.0

    def test_mu_on_geometric_lattice(self):
        assert parse_scale('q:2:0..3').mu(4) == 4.0

    def test_rho(self):
        assert parse_scale('Z:0..10').rho(3) == 2.0
        assert parse_scale('R:0..1').rho(0.5) == 0.5
        assert parse_scale('set:{1,1.5,3.7}').rho(3.7) == 1.5
        assert parse_scale('Z:0..10').rho(0) == 0.0

    def test_jump_across_segments(self):
        scale = parse_scale('union(R:0..1;set:{2,3})')
        assert scale.sigma(1) == 2.0
        assert scale.rho(2) == 1.0
        assert scale.sigma(0.5) == 0.5

    def test_point_not_in_scale(self):
        scale = parse_scale('Z:1..10')
        with pytest.raises(PointNotInScale):
            scale.sigma(99)
        with pytest.raises(PointNotInScale):
            scale.mu(2.5)
        with pytest.raises(PointNotInScale):
            scale.rho(float('nan'))

    def test_membership_tolerance(self):
        scale = parse_scale('h:0.1:0..1')
        assert scale.contains(0.3)
        assert scale.locate(0.3 + 5e-13) == scale.locate(0.3)
        assert not scale.contains(0.35)


class TestClassify:
    """Point classification agrees with sigma and rho."""

    def test_integer_interior(self):
        point = parse_scale('Z:0..10').classify(5)
        assert point.right == 'scattered' and point.left == 'scattered'
        assert not point.is_max and not point.is_min

    def test_dense_interior(self):
        point = parse_scale('R:0..1').classify(0.3)
        assert point.right == 'dense' and point.left == 'dense'

    def test_interval_end_before_isolated_point(self):
        point = parse_scale('union(R:0..1;set:{2})').classify(1)
        assert point.right == 'scattered'
        assert point.left == 'dense'

    def test_extremes(self):
        scale = parse_scale('Z:1..5')
        assert scale.classify(1).is_min
        assert scale.classify(5).is_max
        assert scale.classify(5).right == 'dense'

    def test_left_scattered_maximum_is_not_in_kappa(self):
        with pytest.raises(PointNotInKappa):
            parse_scale('Z:1..5').require_kappa(5)
        assert parse_scale('R:1..2').require_kappa(2) == 2.0


class TestStructuralInvariants:
    """sigma(t) >= t, rho(t) <= t and rho(sigma(t)) = t on random scale points."""

    @pytest.mark.parametrize('text', [
        'Z:-3..7',
        'h:0.25:1..4',
        'q:3:-2..4',
        'set:{-1,0.5,2,7.25}',
        'union(R:0..1;set:{2,3};h:0.5:4..6)',
        'union(set:{-2};R:-1..0;q:2:1..3)',
    ])
    def test_jump_inequalities(self, text):
        scale = parse_scale(text)
        for t in scale.sample_points(interior=8):
            sigma, rho = scale.sigma(t), scale.rho(t)
            assert sigma >= t and rho <= t
            assert scale.mu(t) == sigma - t >= 0
            if sigma > t and scale.rho(sigma) < sigma:
                assert scale.rho(sigma) == t


class TestIterateScattered:
    """Scattered decomposition of [a, b)."""

    def test_integers(self):
        decomposition = parse_scale('Z:-5..10').iterate_scattered(1, 4)
        assert decomposition.pairs == [(1.0, 1.0), (2.0, 1.0), (3.0, 1.0)]
        assert decomposition.pieces == ()

    def test_interval(self):
        decomposition = parse_scale('R:0..1').iterate_scattered(0, 1)
        assert decomposition.pairs == []
        assert decomposition.pieces == ((0.0, 1.0),)

    def test_mixed(self):
        decomposition = parse_scale('union(R:0..1;set:{2,3})').iterate_scattered(0, 3)
        assert decomposition.pairs == [(1.0, 1.0), (2.0, 1.0)]
        assert decomposition.pieces == ((0.0, 1.0),)

    def test_graininess_clipped_at_upper_bound(self):
        decomposition = parse_scale('union(set:{0};R:2..5)').iterate_scattered(0, 3)
        assert decomposition.pairs == [(0.0, 2.0)]
        assert decomposition.pieces == ((2.0, 3.0),)

    def test_empty_range(self):
        with pytest.raises(EmptyRange):
            parse_scale('Z:1..5').iterate_scattered(4, 2)

    def test_partition_property(self):
        rng = np.random.default_rng(42)
        scale = parse_scale('union(q:2:-3..0;R:1.5..2.5;h:0.5:3..6;set:{7.25,9})')
        samples = scale.sample_points(interior=16)
        for _ in range(200):
            a, b = np.sort(rng.choice(samples, size=2))
            decomposition = scale.iterate_scattered(a, b)
            np.testing.assert_allclose(decomposition.total_length, b - a, rtol=0, atol=1e-12)


class TestScaleParser:
    """Mini-language parsing and canonical rendering."""

    def test_segment_kinds(self):
        assert parse_scale('Z:1..3').segments == (UniformLattice(1.0, 1.0, 3),)
        assert parse_scale('h:0.5:1..2').segments == (UniformLattice(1.0, 0.5, 3),)
        assert parse_scale('q:2:0..3').segments == (GeometricLattice(2.0, 0, 3),)
        assert parse_scale('set:{1,1.5,3.7}').segments == (FiniteSet((1.0, 1.5, 3.7)),)
        assert parse_scale('R:0..1').segments == (ContinuousInterval(0.0, 1.0),)

    def test_whitespace_is_ignored(self):
        assert parse_scale(' union( R:0 .. 1 ; set:{ 2 , 3 } ) ') == parse_scale('union(R:0..1;set:{2,3})')

    def test_union_is_sorted(self):
        scale = parse_scale('union(set:{5,6};Z:1..3)')
        np.testing.assert_array_equal(scale.points, [1, 2, 3, 5, 6])

    @pytest.mark.parametrize('text', [
        'Z:1..10', 'h:0.1:0..1', 'q:1.5:-2..3', 'set:{-1,0.5,2}', 'R:0..1', 'union(R:0..1;set:{2,3})',
    ])
    def test_text_round_trip(self, text):
        scale = parse_scale(text)
        assert parse_scale(scale.text) == scale

    @pytest.mark.parametrize('text', [
        '', 'Z:3..1', 'h:0:0..1', 'q:1:0..3', 'set:{2,1}', 'R:1..1', 'union(Z:1..3;R:2..4)', 'Y:1..2', 'Z:1..3)',
    ])
    def test_malformed(self, text):
        with pytest.raises(ScaleSyntaxError):
            parse_scale(text)

    def test_direct_construction_rejects_touching_hulls(self):
        with pytest.raises(ScaleSyntaxError):
            TimeScale([ContinuousInterval(0.0, 1.0), FiniteSet((1.0, 2.0))])

    def test_interleaving_discrete_segments_merge(self):
        scale = parse_scale('union(Z:0..10;set:{2.5})')
        assert len(scale.segments) == 1
        assert 2.5 in scale.points
        assert scale.sigma(2) == 2.5
        assert scale.sigma(2.5) == 3.0
        assert scale.rho(2.5) == 2.0
        assert scale.iterate_scattered(0, 10).total_length == 10.0
        assert parse_scale(scale.text) == scale

    def test_shared_points_are_kept_once(self):
        scale = parse_scale('union(Z:0..3;set:{2,7})')
        np.testing.assert_array_equal(scale.points, [0, 1, 2, 3, 7])
        assert scale.segments == (FiniteSet((0.0, 1.0, 2.0, 3.0, 7.0)),)
        assert scale.mu(3) == 4.0

    def test_interval_inside_discrete_hull_is_rejected(self):
        with pytest.raises(ScaleSyntaxError):
            parse_scale('union(Z:0..10;R:2.2..2.8)')
