import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alpha_synthesis.models import KernelOperator, PlaneFunction, PlaneGrid
from alpha_synthesis.services.alpha_service import (
    alpha,
    alpha_direct,
    plane_boundary_ratio,
    theta,
    verify_hausdorff_young,
    verify_hoelder,
    verify_inversion,
    verify_operator_bound,
    verify_plancherel,
    verify_riemann_lebesgue,
    verify_sup_bound,
)
from alpha_synthesis.services.grid_service import make_line_grid
from alpha_synthesis.services.operator_service import heisenberg_action
from alpha_synthesis.utils.validators import InvalidArgumentError, UnsupportedGridError


def random_kernel(grid, rng):
    shape = (grid.n, grid.n)
    return KernelOperator(grid, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_plane(grid, rng):
    plane = PlaneGrid(grid)
    return PlaneFunction(plane, rng.standard_normal(plane.shape) + 1j * rng.standard_normal(plane.shape))


def test_alpha_matches_trace_oracle(grid16, rng):
    x = random_kernel(grid16, rng)
    values = alpha(x).values
    points = grid16.points
    scale = x.norm(1.0)
    for a, b in [(8, 8), (0, 5), (3, 15), (11, 2)]:
        expected = alpha_direct(x, points[a], points[b])
        assert abs(values[a, b] - expected) < 1e-10 * scale


def test_alpha_at_origin_is_trace(grid64, builtins):
    projector = builtins.construire("gauss-proj", grid64)
    assert alpha(projector).values[32, 32] == pytest.approx(1.0, abs=1e-12)
    hermite01 = builtins.construire("hermite01", grid64)
    assert abs(alpha(hermite01).values[32, 32]) < 1e-12


def test_alpha_of_gaussian_projector(grid64, builtins):
    projector = builtins.construire("gauss-proj", grid64)
    x, y = PlaneGrid(grid64).mesh()
    expected = np.exp(-math.pi * (x**2 + y**2) / 2) * np.exp(1j * math.pi * x * y)
    assert np.abs(alpha(projector).values - expected).max() < 1e-10


def test_alpha_direct_off_grid_closed_form(grid64, builtins):
    projector = builtins.construire("gauss-proj", grid64)
    for xs in (-0.7, -0.35, 0.0, 0.3, 0.55):
        for ys in (-0.45, 0.0, 0.2, 0.7, 0.9):
            expected = math.exp(-math.pi * (xs**2 + ys**2) / 2) * np.exp(1j * math.pi * xs * ys)
            assert abs(alpha_direct(projector, xs, ys) - expected) < 1e-10


@pytest.mark.parametrize("x1, y1", [(0.25, -0.375), (0.3, 0.125), (-1.1, 0.5)])
def test_heisenberg_action_multiplies_alpha_by_phase(grid64, builtins, x1, y1):
    x = builtins.construire("hermite01", grid64)
    xs, ys = PlaneGrid(grid64).mesh()
    moved = alpha(heisenberg_action(x1, y1, x)).values
    expected = np.exp(-2j * math.pi * (ys * y1 + xs * x1)) * alpha(x).values
    assert np.abs(moved - expected).max() < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_theta_inverts_alpha(seed):
    grid = make_line_grid(16)
    x = random_kernel(grid, np.random.default_rng(seed))
    assert (theta(alpha(x)) - x).norm(1.0) < 1e-10 * x.norm(1.0)


def test_alpha_requires_self_dual_grid():
    grid = make_line_grid(16, mode="explicit", h=0.1)
    with pytest.raises(UnsupportedGridError):
        alpha(KernelOperator.zero(grid))


def test_inversion_report(grid16, rng):
    report = verify_inversion(random_plane(grid16, rng))
    assert report.passed
    assert report.suite == "inversion"
    assert report.quantity("relative_error") < 1e-10


def test_plancherel_is_exact(grid32, rng):
    report = verify_plancherel(random_plane(grid32, rng))
    assert report.passed
    assert report.quantity("ratio") == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("p", [1.0, 1.25, 1.5, 2.0])
def test_hausdorff_young(grid16, rng, p):
    report = verify_hausdorff_young(random_plane(grid16, rng), p)
    assert report.passed
    assert report.quantity("ratio") <= 1.0 + 1e-9


def test_hausdorff_young_rejects_large_p(grid16, rng):
    with pytest.raises(InvalidArgumentError):
        verify_hausdorff_young(random_plane(grid16, rng), 3.0)


def test_sup_and_operator_bounds(grid16, rng):
    assert verify_sup_bound(random_kernel(grid16, rng)).passed
    assert verify_operator_bound(random_plane(grid16, rng)).passed


def test_riemann_lebesgue_for_gaussian_projector(grid64, builtins):
    report = verify_riemann_lebesgue(builtins.construire("gauss-proj", grid64))
    assert report.passed
    assert report.suite == "riemann-lebesgue"


def test_boundary_ratio_of_rough_plane(grid16, rng):
    assert plane_boundary_ratio(random_plane(grid16, rng)) > 1e-3
    zero = PlaneFunction(PlaneGrid(grid16), np.zeros((16, 16)))
    assert plane_boundary_ratio(zero) == 0.0


def test_hoelder(grid16, rng):
    a, b = random_kernel(grid16, rng), random_kernel(grid16, rng)
    report = verify_hoelder(a, b, (1.0, 4.0 / 3.0, 2.0, 4.0, math.inf))
    assert report.passed
    assert len(report.checks) == 5
