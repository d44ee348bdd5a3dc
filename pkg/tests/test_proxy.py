import math

import numpy as np
import pytest

from blockperim import GridSpec, ScalarField, marching_squares_length

from conftest import scalar_from_function


def test_vertical_line_is_exact():
    # X(x, y) = x: the zero contour is a straight vertical chord of
    # length 2t, reproduced exactly by linear interpolation
    f = scalar_from_function(1.0, 64, lambda x, y: x + 0.0 * y)
    assert marching_squares_length(f, 0.0) == pytest.approx(2.0, rel=1e-12)
    # off-grid level: still a straight line
    assert marching_squares_length(f, 0.305) == pytest.approx(2.0, rel=1e-12)


def test_diagonal_line_is_exact():
    f = scalar_from_function(1.0, 97, lambda x, y: x + y)
    assert marching_squares_length(f, 0.0) == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-12)


def test_circle_within_a_tenth_of_a_percent():
    f = scalar_from_function(2.5, 1024, lambda x, y: np.hypot(x, y))
    assert marching_squares_length(f, 1.0) == pytest.approx(2.0 * math.pi, rel=1e-3)


def test_second_order_convergence_on_the_cone():
    errors = []
    for side in (128, 256, 512):
        f = scalar_from_function(2.5, side, lambda x, y: np.hypot(x, y))
        errors.append(abs(marching_squares_length(f, 1.0) - 2.0 * math.pi))
    # halving eps should cut the error about fourfold
    assert errors[0] / errors[1] == pytest.approx(4.0, abs=1.5)
    assert errors[1] / errors[2] == pytest.approx(4.0, abs=1.5)


def test_level_outside_range_gives_zero():
    f = scalar_from_function(1.0, 32, lambda x, y: x * y)
    assert marching_squares_length(f, 10.0) == 0.0
    assert marching_squares_length(f, -10.0) == 0.0


def test_exact_zero_corners_are_nudged():
    # the grid hits the level exactly on a full row; without the nudge
    # the interpolation would divide by zero
    spec = GridSpec(1.0, 5)
    vals = np.linspace(-1.0, 1.0, 5)[:, None] * np.ones((1, 5))
    f = ScalarField(spec, vals)
    got = marching_squares_length(f, 0.0)
    assert math.isfinite(got)
    assert got == pytest.approx(2.0, rel=1e-6)


def test_saddle_cells_produce_two_segments():
    # single 2x2 saddle: corners (+1, -1; -1, +1); total crossing length
    # depends on the disambiguation but must be finite, positive, and made
    # of exactly two corner-cutting segments of combined length sqrt(2)*eps
    spec = GridSpec(0.5, 2)
    vals = np.array([[1.0, -1.0], [-1.0, 1.0]])
    f = ScalarField(spec, vals)
    got = marching_squares_length(f, 0.0)
    eps = spec.epsilon
    assert got == pytest.approx(math.sqrt(2.0) * eps, rel=1e-9)


def test_both_saddle_polarities_consistent():
    spec = GridSpec(0.5, 2)
    plus = ScalarField(spec, np.array([[1.0, -1.0], [-1.0, 1.0]]))
    minus = ScalarField(spec, np.array([[-1.0, 1.0], [1.0, -1.0]]))
    assert marching_squares_length(plus, 0.0) == pytest.approx(
        marching_squares_length(minus, 0.0), rel=1e-12
    )


def test_matches_skimage_style_sum_on_smooth_field():
    # cross-check on a smooth nontrivial field against an independent
    # per-cell recomputation in pure python
    rng = np.random.default_rng(3)
    side = 48
    spec = GridSpec(1.0, side)
    x = spec.axis_coords()
    vals = np.sin(3.0 * x[:, None]) * np.cos(2.0 * x[None, :]) + 0.1 * x[:, None]
    f = ScalarField(spec, vals)
    level = 0.2

    def interp(lo, hi):
        return (level - lo) / (hi - lo)

    total = 0.0
    v = vals - level
    for i in range(side - 1):
        for j in range(side - 1):
            corners = [v[i, j], v[i + 1, j], v[i + 1, j + 1], v[i, j + 1]]
            signs = [c >= 0.0 for c in corners]
            if all(signs) or not any(signs):
                continue
            pts = []
            quad = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
            for k in range(4):
                a, b = corners[k], corners[(k + 1) % 4]
                if (a >= 0.0) != (b >= 0.0):
                    t = a / (a - b)
                    ax, ay = quad[k]
                    bx, by = quad[(k + 1) % 4]
                    pts.append((ax + t * (bx - ax), ay + t * (by - ay)))
            if len(pts) == 2:
                total += math.hypot(pts[0][0] - pts[1][0], pts[0][1] - pts[1][1])
            else:
                # saddle: pair crossings by the centre-average rule
                centre = sum(corners) / 4.0
                first_positive = corners[0] >= 0.0
                if (centre >= 0.0) == first_positive:
                    pairs = [(pts[0], pts[3]), (pts[1], pts[2])]
                else:
                    pairs = [(pts[0], pts[1]), (pts[2], pts[3])]
                for p, q in pairs:
                    total += math.hypot(p[0] - q[0], p[1] - q[1])
    oracle = total * spec.epsilon
    assert marching_squares_length(f, level) == pytest.approx(oracle, rel=1e-9)
