"""Acceptance gate: the thirteen quantitative criteria, one test each.

The suite runs once (module-scoped) with seed 0; each test prints its
criterion's pass/fail line and asserts the verdict. Tolerances are pinned
inside the criterion implementations:

 1. vf insertion monotonicity, 1e4 instances, zero violations.
 2. vf oracle agreement (independent pattern oracle + 1e5 random lines per
    list, 500 lists), 100% agreement.
 3. planar formula: exhaustive == max-min exactly, 100 instances.
 4. variation-join two-sided inequality, 200 convexly-joining instances.
 5. gap-extension isometry, 200 instances, exact rational equality.
 6. convex-graph pullback: variation 1 on the graph, exactly 2 pulled back.
 7. plateau bump norm exactly 3; pyramid search lower bound >= 2 and no
    proposal objective above 4 across 1e6 proposals.
 8. alternating reciprocals: var over first N >= 2 ln N - 2 for
    N in {10,100,1000}; value 35/12 exactly at N=4.
 9. first-order interpolation: sup error <= eps_meas and grid Lipschitz of
    the defect <= sqrt(2) * eps_meas * 1.01 at n=16.
10. second-derivative pipeline: Lipschitz-norm error <= (4+sqrt(13)) *
    eps_meas * 1.01 at degree 12; exact reproduction of cubics.
11. point matching: exact interpolation and the (4n+1)/(4n+2) bookkeeping,
    50 instances.
12. Cantor diagnostic: variation exactly 1 for levels <= 6 while the modulus
    at budget (2/3)^k stays >= 1/2.
13. per-triangle gradient bound |grad| <= (2/r) sup|F| for every piece
    constructed during the suite, zero violations.
"""

import pytest

from planevar.suite import run_suite


@pytest.fixture(scope="module")
def suite_results():
    results = run_suite(seed=0)
    return {r.cid: r for r in results}


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    print(f"[criterion {result.cid:2d}] {status} {result.name}: {result.detail}")
    assert result.passed, f"criterion {result.cid} ({result.name}): {result.detail}"


def test_criterion_01_vf_insertion_monotonicity(suite_results):
    _report(suite_results[1])


def test_criterion_02_vf_oracle_agreement(suite_results):
    _report(suite_results[2])


def test_criterion_03_planar_formula(suite_results):
    _report(suite_results[3])


def test_criterion_04_variation_join(suite_results):
    _report(suite_results[4])


def test_criterion_05_iota_isometry(suite_results):
    _report(suite_results[5])


def test_criterion_06_graph_pullback_factor_two(suite_results):
    _report(suite_results[6])


def test_criterion_07_bump_norms(suite_results):
    _report(suite_results[7])


def test_criterion_08_reciprocal_divergence(suite_results):
    _report(suite_results[8])


def test_criterion_09_c1_grid_interpolation(suite_results):
    _report(suite_results[9])


def test_criterion_10_c2_pipeline(suite_results):
    _report(suite_results[10])


def test_criterion_11_point_matching(suite_results):
    _report(suite_results[11])


def test_criterion_12_cantor_modulus_diagnostic(suite_results):
    _report(suite_results[12])


def test_criterion_13_triangle_gradient_bound(suite_results):
    _report(suite_results[13])
