import pytest

from alpha_synthesis.services.grid_service import tau_hash
from alpha_synthesis.services.verification_service import SUITES, run_suite

# Plus petite grille sur laquelle chaque suite a tous ses modes résolus.
SUITE_GRIDS = {
    "plancherel": 64,
    "riemann-lebesgue": 128,
    "hausdorff-young": 16,
    "hoelder": 16,
    "inversion": 64,
    "multiplier": 32,
    "derivatives": 64,
    "product-rules": 32,
    "oscillator": 64,
    "hermite": 64,
    "versal": 64,
}


def test_every_suite_is_covered():
    assert set(SUITE_GRIDS) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITE_GRIDS))
def test_suite_passes(name):
    report = run_suite(name, SUITE_GRIDS[name], seed=0)
    assert report.passed, report.failures()
    assert report.checks
    assert report.tau_hash == tau_hash()
    assert report.grid["n"] == SUITE_GRIDS[name]


def test_hausdorff_young_records_worst_ratios():
    report = run_suite("hausdorff-young", 16, seed=4)
    assert report.quantity("max_ratio_p2") == pytest.approx(1.0, abs=1e-8)
    assert report.quantity("max_ratio_p1") <= 1.0 + 1e-9


def test_versal_report_quantities():
    report = run_suite("versal", 64, seed=0)
    assert report.quantity("V_grid") >= 1.0
    assert report.quantity("V_hankel") >= 1.0
    assert report.quantity("versal_ratio_delta_1") > 0
