"""Acceptance gate: one test per criterion, all tolerances as stated.

The criteria run once for the whole module; each test prints its
criterion's PASS/FAIL line and asserts it. A tampered control run on
the cheap criteria proves the harness does not pass vacuously.
"""

import pytest

from hypack.errors import DomainError
from hypack.verify import format_report, run_criteria


@pytest.fixture(scope="module")
def results():
    res = run_criteria()
    text, _ = format_report(res)
    print("\n" + text)
    return {r.cid: r for r in res}


def _check(results, cid):
    r = results[cid]
    print(f"{cid} {'PASS' if r.passed else 'FAIL'} {r.detail}")
    assert r.passed, f"{cid} FAIL {r.detail}"


def test_a1_closed_form_density(results):
    _check(results, "A1")


def test_a2_stripe_oscillation(results):
    _check(results, "A2")


def test_a3_ball_area_growth(results):
    _check(results, "A3")


def test_a4_euclid_annulus(results):
    _check(results, "A4")


def test_a5_halfspace_center_dependence(results):
    _check(results, "A5")


def test_a6_boroczky_audit(results):
    _check(results, "A6")


def test_a7_brick_family_densities(results):
    _check(results, "A7")


def test_a8_average_convergence(results):
    _check(results, "A8")


def test_a9_mass_transport(results):
    _check(results, "A9")


def test_a10_metric_axioms(results):
    _check(results, "A10")


def test_a11_equivariance(results):
    _check(results, "A11")


def test_negative_control_fails():
    tampered = run_criteria(["A2", "A3", "A4", "A6"], negative_control=True)
    assert all(not r.passed for r in tampered)
    _, doc = format_report(tampered)
    assert doc["all_passed"] is False


def test_unknown_criterion_rejected():
    with pytest.raises(DomainError):
        run_criteria(["A12"])
