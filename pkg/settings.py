# Configuration settings for tsfrac
# This file contains all global constants and tolerances used throughout the library

import logging
import math

from numba import njit
import numpy as np

VERSION = '1.0.0'
"""Library version, written into every JSON document."""

# Time scale settings
MEMBERSHIP_TOLERANCE = 1e-12
"""Absolute distance within which a number counts as a represented scale point."""
MONOTONE_SAMPLES = 64
"""Interior samples taken per continuous piece when a grid sample of the scale is needed."""

# Derivative settings
FINITE_DIFFERENCE_STEP = 1e-6
"""Largest step of the finite-difference stencil used at dense points."""
ZERO_LIMIT_STEP = 1e-4
"""First sample distance from 0 when 0 is right-dense and the derivative at 0 is a limit."""
ZERO_LIMIT_TOLERANCE = 1e-6
"""Relative agreement required between the two extrapolations of the limit at 0."""
NEIGHBORHOOD_RADIUS = 1e-2
"""Starting neighbourhood radius at dense points for the epsilon-delta style checks."""
MAX_HALVINGS = 48
"""Number of radius halvings searched before an epsilon-delta style check gives up."""
RADIUS_FLOOR = 1e-8
"""Neighbourhood radii stop at RADIUS_FLOOR * max(1, |t|)."""
ROUNDING_ULPS = 64
"""Rounding allowance, in units of the last place, used when comparing both sides of a check."""

# Quadrature settings
INTEGRAL_TOLERANCE = 1e-10
"""Absolute tolerance of the continuous part of the alpha-fractional integral."""
MAX_SUBDIVISIONS = 2 ** 20
"""Maximum number of panel bisections before the integral is declared a failure."""
GRADED_ZONE = 1e-3
"""A continuous piece starting closer than this to 0 gets a geometric mesh toward its left end."""
ROUNDOFF_ULPS = 50
"""Panels whose error estimate is below this many ulp of their value are accepted."""
CHAIN_QUADRATURE_TOLERANCE = 1e-12
"""Absolute tolerance of the inner integral over h in Chain Rule I."""
CHAIN_QUADRATURE_MAX_DEPTH = 40
"""Maximum bisection depth of the inner integral over h in Chain Rule I."""

# Chain rule settings
HYPOTHESIS_SAMPLES = 8
"""Consecutive radii at which the Chain Rule II hypothesis has to hold."""

# Inequality settings
SLACK_TOLERANCE = 1e-12
"""Relative tolerance on the slack of an inequality report."""
MIN_WEIGHT_MASS = 1e-12
"""Smallest admissible weight mass for Jensen and Hermite-Hadamard."""
VANISHING_TOLERANCE = 1e-12
"""Magnitude under which a function counts as vanishing on the grid sample."""
CONVEXITY_SAMPLES = 128
"""Number of points at which second differences certify convexity or concavity."""
CONVEXITY_TOLERANCE = 1e-9
"""Relative tolerance on the sign of the sampled second differences."""

# Randomized verification settings
TRIAL_POOL = ('t', 't^2', 'exp(t/4)', '2*t+1')
"""Functions the randomized inequality trials draw f, g, h and w from."""
CONVEX_OUTER_POOL = ('t^2', 'exp(t/4)', 't')
"""Outer functions for the convex Jensen trials."""
CONCAVE_OUTER_POOL = ('ln(t)', 't^0.5')
"""Outer functions for the concave Jensen trials."""
TRIAL_SCALES = ('Z:1..6', 'h:0.5:1..4', 'q:2:0..3', 'R:1..2', 'union(R:1..2;set:{3,4})', 'set:{1,1.5,3.7}')
"""Scale families the randomized trials draw from. All points are >= 1."""
MAX_POWER_EXPONENT = 600.0
"""Trials redraw p while q * ln(max sample magnitude) exceeds this, so |g|^q stays finite."""

# Command-line settings
SEED_ENV_VAR = 'TSFRAC_SEED'
"""Environment variable read when --seed is not given."""
DEFAULT_SEED = 0
"""Seed used when neither --seed nor TSFRAC_SEED is set."""
JSON_SIGNIFICANT_DIGITS = 17
"""Significant digits written for every number in JSON output."""
LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'
"""Format of log records written to stderr."""

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EVALUATION = 3
EXIT_VIOLATION = 4
