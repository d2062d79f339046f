import numpy as np
import pytest

from alpha_synthesis.models import PlaneGrid
from alpha_synthesis.services.action_service import (
    act_direct,
    act_spectral,
    verify_alpha_derivatives,
    verify_multiplier,
    verify_oscillator_intertwine,
    verify_product_rule_P,
    verify_product_rule_Q,
)
from alpha_synthesis.services.alpha_service import alpha
from alpha_synthesis.services.differential_service import d_operator
from alpha_synthesis.services.verification_service import gaussian_weight
from alpha_synthesis.utils.validators import BudgetExceededError, GridMismatchError, InvalidArgumentError


@pytest.fixture
def gauss16(grid16, builtins):
    return gaussian_weight(PlaneGrid(grid16)), builtins.construire("gauss-proj", grid16)


def test_direct_and_spectral_routes_agree(gauss16):
    q, x = gauss16
    direct = act_direct(q, x)
    spectral = act_spectral(q, x)
    assert (direct - spectral).norm(1.0) < 1e-8 * spectral.norm(1.0)


def test_direct_route_budget(grid32, builtins):
    q = gaussian_weight(PlaneGrid(grid32))
    x = builtins.construire("gauss-proj", grid32)
    with pytest.raises(BudgetExceededError):
        act_direct(q, x, cap=16)


def test_direct_route_is_reproducible(gauss16, monkeypatch):
    q, x = gauss16
    monkeypatch.setenv("NCFK_THREADS", "1")
    single = act_direct(q, x)
    monkeypatch.setenv("NCFK_THREADS", "3")
    threaded = act_direct(q, x)
    again = act_direct(q, x)
    assert np.array_equal(threaded.kernel, again.kernel)
    assert np.allclose(single.kernel, threaded.kernel, rtol=0, atol=1e-12)


def test_action_rejects_mismatched_grids(grid16, grid32, builtins):
    q = gaussian_weight(PlaneGrid(grid16))
    with pytest.raises(GridMismatchError):
        act_spectral(q, builtins.construire("gauss-proj", grid32))


@pytest.mark.parametrize("route", ["spectral", "direct"])
def test_multiplier_identity(gauss16, route):
    q, x = gauss16
    assert verify_multiplier(q, x, route).passed


def test_product_rules(grid32, builtins):
    q = gaussian_weight(PlaneGrid(grid32))
    x = builtins.construire("gauss-proj", grid32)
    assert verify_product_rule_P(q, x).passed
    assert verify_product_rule_Q(q, x).passed


@pytest.mark.parametrize("name", ["gauss-proj", "hermite01"])
def test_alpha_derivative_identities(grid64, builtins, name):
    report = verify_alpha_derivatives(builtins.construire(name, grid64), 1e-5)
    assert report.passed


def test_alpha_derivative_identities_after_weighting(grid64, builtins):
    q = gaussian_weight(PlaneGrid(grid64))
    weighted = act_spectral(q, builtins.construire("gauss-proj", grid64))
    report = verify_alpha_derivatives(weighted, 1e-5)
    assert report.passed
    assert report.quantity("alpha_sup_norm") > 0.1


def test_oscillator_intertwines_with_D(grid64, builtins):
    q = gaussian_weight(PlaneGrid(grid64))
    report = verify_oscillator_intertwine(q, builtins.construire("gauss-proj", grid64))
    assert report.passed


def test_d_operator_forms_agree(grid64, builtins):
    u = alpha(builtins.construire("hermite01", grid64))
    factored = d_operator(u)
    expanded = d_operator(u, form="expanded")
    assert (factored - expanded).sup_norm() < 1e-8 * factored.sup_norm()
    with pytest.raises(InvalidArgumentError):
        d_operator(u, form="polar")

