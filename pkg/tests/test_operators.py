import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alpha_synthesis.models import KernelOperator, SchattenExponent
from alpha_synthesis.services.builtin_service import hermite_mixture, random_coefficients
from alpha_synthesis.services.grid_service import finite_difference, hermite_basis, hermite_fn, make_line_grid
from alpha_synthesis.services.operator_service import (
    apply_H,
    apply_H_inv,
    apply_P,
    apply_Q,
    grid_oscillator_inverse_norm,
    heisenberg_action,
    modulate_op,
    op_compose,
    oscillator_inverse_norm,
    rank_one,
    schatten_norm,
    translate_op,
)
from alpha_synthesis.utils.validators import GridMismatchError, InvalidArgumentError

from .conftest import gaussian


def random_kernel(grid, rng):
    return KernelOperator(grid, rng.standard_normal((grid.n, grid.n)) + 1j * rng.standard_normal((grid.n, grid.n)))


def test_rank_one_projector_norms(grid64):
    phi0 = hermite_fn(grid64, 0)
    projector = rank_one(phi0, phi0)
    assert projector.trace() == pytest.approx(1.0, abs=1e-12)
    for p in (1.0, 2.0, math.inf):
        assert projector.norm(p) == pytest.approx(1.0, abs=1e-10)


def test_rank_one_rejects_mixed_grids(grid16, grid32):
    with pytest.raises(GridMismatchError):
        rank_one(hermite_fn(grid16, 0), hermite_fn(grid32, 0))


def test_identity_operator(grid16):
    identity = KernelOperator.identity(grid16)
    assert identity.trace() == pytest.approx(16.0)
    assert identity.norm(math.inf) == pytest.approx(1.0)
    assert np.allclose(identity.matrix(), np.eye(16))


def test_kernel_shape_and_immutability(grid16):
    with pytest.raises(InvalidArgumentError):
        KernelOperator(grid16, np.zeros((16, 15)))
    x = KernelOperator.zero(grid16)
    with pytest.raises(ValueError):
        x.kernel[0, 0] = 1.0
    assert x.norm(1.0) == 0.0


def test_schatten_exponent_validation(grid16):
    x = KernelOperator.identity(grid16)
    assert schatten_norm(x, SchattenExponent(2.0)) == pytest.approx(4.0)
    assert SchattenExponent(1.0).conjugate == math.inf
    with pytest.raises(InvalidArgumentError):
        schatten_norm(x, 0.5)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_schatten_norms_decrease_with_p(seed):
    x = random_kernel(make_line_grid(8), np.random.default_rng(seed))
    norms = [x.norm(p) for p in (1.0, 1.5, 2.0, 4.0, math.inf)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(norms, norms[1:]))
    assert abs(x.trace()) <= norms[0] * (1 + 1e-12)


def test_compose_with_identity(grid16, rng):
    x = random_kernel(grid16, rng)
    product = op_compose(KernelOperator.identity(grid16), x)
    assert np.allclose(product.kernel, x.kernel)


def test_translate_on_grid_is_cyclic_shift(grid32, rng):
    values = rng.standard_normal(32)
    shifted = translate_op(grid32, grid32.h).matrix() @ values
    assert np.allclose(shifted, np.roll(values, 1), atol=1e-12)


@pytest.mark.parametrize("shift", [0.3, -1.1, 0.0])
def test_translate_and_modulate_are_unitary(grid32, shift):
    for op in (translate_op(grid32, shift), modulate_op(grid32, shift)):
        matrix = op.matrix()
        assert np.allclose(matrix @ matrix.conj().T, np.eye(32), atol=1e-12)


def test_heisenberg_roll_matches_matrix_route(grid32, rng):
    x = random_kernel(grid32, rng)
    x1, y1 = 0.4, 3 * grid32.h
    v = grid32.points
    modulated = np.exp(-2j * math.pi * x1 * (v[:, None] - v[None, :])) * x.kernel
    shift = translate_op(grid32, -y1).matrix()
    expected = shift @ modulated @ shift.conj().T
    assert np.allclose(heisenberg_action(x1, y1, x).kernel, expected, atol=1e-10)


def test_translate_moves_gaussian(grid64):
    t = grid64.points
    for shift in (grid64.h, 0.3, -0.85):
        moved = translate_op(grid64, shift).matrix() @ gaussian(t)
        assert np.abs(moved - gaussian(t - shift)).max() < 1e-10


@pytest.mark.parametrize("steps_x, steps_y", [(1, 1), (3, -2), (-5, 7)])
def test_weyl_commutation_on_grid(grid32, steps_x, steps_y):
    x, y = steps_x * grid32.h, steps_y * grid32.h
    t = translate_op(grid32, x).matrix()
    m = modulate_op(grid32, y).matrix()
    assert np.allclose(t @ m, np.exp(2j * math.pi * x * y) * (m @ t), atol=1e-10)


def test_heisenberg_action_composes_without_phase(grid64, builtins):
    x = builtins.construire("gauss-proj", grid64)
    h = grid64.h
    twice = heisenberg_action(0.4, 2 * h, heisenberg_action(-0.15, -5 * h, x))
    once = heisenberg_action(0.25, -3 * h, x)
    assert (twice - once).norm(1.0) < 1e-10


def test_heisenberg_action_preserves_trace_norm(grid32, rng):
    x = random_kernel(grid32, rng)
    moved = heisenberg_action(0.25, 0.1, x)
    assert moved.norm(1.0) == pytest.approx(x.norm(1.0), rel=1e-10)


def test_P_and_Q_on_gaussian_projector(grid64):
    phi0 = hermite_fn(grid64, 0)
    x = rank_one(phi0, phi0)
    v = grid64.points[:, None]
    assert np.abs(apply_P(x).kernel - (-2 * math.pi * v) * x.kernel).max() < 1e-8
    assert np.allclose(apply_Q(x).kernel, 2j * math.pi * v * x.kernel)
    assert not apply_P(x).accuracy_warning


@pytest.mark.parametrize("k", range(4))
def test_hermite_functions_are_oscillator_eigenvectors(grid64, k):
    phi = hermite_fn(grid64, k)
    x = rank_one(phi, phi)
    eigenvalue = -2 * math.pi * (2 * k + 1)
    assert (apply_H(x) - x * eigenvalue).norm(1.0) < 1e-6 * abs(eigenvalue)


def test_apply_H_inverse_round_trip(grid64):
    x = hermite_mixture(grid64, random_coefficients(4, seed=3, trace_zero=False))
    back = apply_H_inv(apply_H(x), 4)
    assert (back - x).norm(1.0) < 1e-6 * x.norm(1.0)


def test_basis_eigenvalues(grid64):
    assert np.allclose(hermite_basis(grid64, 3).eigenvalues(), [-2 * math.pi, -6 * math.pi, -10 * math.pi])


def test_oscillator_inverse_norms(grid64):
    assert oscillator_inverse_norm(2.0) == pytest.approx(1 / math.sqrt(32), rel=1e-3)
    assert oscillator_inverse_norm(math.inf) == pytest.approx(1 / (2 * math.pi))
    assert grid_oscillator_inverse_norm(grid64, math.inf) == pytest.approx(1 / (2 * math.pi), rel=1e-6)
    with pytest.raises(InvalidArgumentError):
        oscillator_inverse_norm(2.0, m=0)


def test_apply_P_matches_central_differences():
    errors = []
    for n in (64, 256):
        grid = make_line_grid(n)
        x = rank_one(hermite_fn(grid, 0), hermite_fn(grid, 1))
        reference = finite_difference(x.kernel, grid.h, axis=0)
        errors.append(np.abs(apply_P(x).kernel - reference).max())
    assert errors[1] < 0.05
    assert 3.5 < errors[0] / errors[1] < 4.5
