"""Smoke tests for the Python bindings.

These exercise each exposed operation once with small workloads; the heavy
numerical validation lives in the C++ test suites.
"""

import math

import pytest

import hempss


R = 0.8
LAMBDA = math.tanh(R) ** 2


def working_point():
    return hempss.make_params(R, 0.0, 0.1, 0.1, math.pi, 0.0, 0.0, 0.0, 2)


def test_validate_working_point():
    report = hempss.validate(working_point(), 1e-9)
    assert report.ok
    assert report.branch == "delta_pi_theta_zero"
    assert report.linear_residual < 1e-12
    assert report.constraint_residual < 1e-12


def test_branch_completion_and_detection():
    p = hempss.params_from_branch(
        hempss.Branch.DELTA_ZERO_THETA_PI, 0.7, 0.3, 0.2, 1.1, 0.4, 2
    )
    assert p.chi_mod == pytest.approx(0.2)
    assert hempss.detect_branch(p) == "delta_zero_theta_pi"
    assert hempss.validate(p).ok


def test_validate_rejects_noncanonical():
    bad = hempss.make_params(R, 0.0, 0.1, 0.1, 0.3, 0.3, 0.0, 0.0, 2)
    assert not hempss.validate(bad).ok


def test_make_params_checks_arguments():
    with pytest.raises(ValueError):
        hempss.make_params(-1.0, 0.0, 0.1, 0.1, 0.0, 0.0, 0.0, 0.0, 2)


def test_coefficient_tables_agree_on_branch():
    p = hempss.params_from_branch(
        hempss.Branch.DELTA_ZERO_THETA_PI, R, 0.0, 0.1, 0.0, 0.0, 2
    )
    g = hempss.generic_coefficients(p)
    s = hempss.specialized_coefficients(p)
    assert g.C0 > 0.0
    assert abs(g.D1) > 0.0
    for name in ("A0", "B0", "C0", "D1", "D2", "D2p", "D3", "D3p", "D4", "D5"):
        assert abs(getattr(g, name) - getattr(s, name)) < 1e-12


def test_cubic_phase_is_real_and_finite():
    p = hempss.params_from_branch(
        hempss.Branch.DELTA_PI_THETA_ZERO, R, 0.0, 0.1, math.pi / 2.0, 0.0, 2
    )
    cp = hempss.cubic_phase(p)
    assert cp.Xi > 0.0
    assert abs(cp.Delta) > 0.0


def test_pnd_matches_two_mode_squeezed_vacuum():
    p = hempss.make_params(R, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2)
    grid = hempss.pnd(p, 0.0, 0.0, n_max=20)
    assert grid.n_max == 20
    assert abs(grid.at(0, 0) - (1.0 - LAMBDA)) < 1e-6
    assert abs(grid.at(1, 1) - (1.0 - LAMBDA) * LAMBDA) < 1e-6
    assert grid.at(0, 1) < 1e-8
    assert abs(grid.total_mass - 1.0) < 1e-4
    assert len(grid.values) == 21

    m = hempss.moments(grid)
    assert abs(m.mean_n1 - math.sinh(R) ** 2) < 1e-4
    assert abs(m.g2_cross - (1.0 + 1.0 / math.tanh(R) ** 2)) < 1e-3


def test_oracle_routes_agree_with_quadrature():
    p = working_point()
    summary = hempss.oracle_pnd(p, 1.0, 1.0, cutoff=32, residual_threshold=1e-3)
    assert summary.route == "joint"
    assert summary.residual1 < 1e-3
    grid = hempss.pnd(p, 1.0, 1.0)
    upto = min(8, summary.grid.n_max, grid.n_max)
    diff = max(
        abs(grid.at(n1, n2) - summary.grid.at(n1, n2))
        for n1 in range(upto + 1)
        for n2 in range(upto + 1)
    )
    assert diff < 1e-6

    built = hempss.oracle_pnd(p, 0.2, 0.2, cutoff=24, route="construction",
                              residual_threshold=1e-3)
    assert built.route == "construction"
    assert built.fidelity > 1.0 - 1e-6


def test_sweeps_run_and_stay_symmetric():
    tmpl = hempss.make_params(
        R, 0.0, 0.0, 0.0, math.pi / 2.0, math.pi / 2.0, 0.0, 0.0, 2
    )
    rows = hempss.sweep_gamma(tmpl, 1.0, 1.0, [0.0, 0.1])
    assert len(rows) == 2
    assert all(row.ok for row in rows)
    assert abs(rows[1].moments.mean_n1 - rows[1].moments.mean_n2) < 1e-6
    assert rows[1].moments.mean_n1 >= rows[0].moments.mean_n1 - 1e-9


def test_pump_designs_and_enumeration():
    w1, w2 = 1.0, math.sqrt(2.0)
    design = hempss.pump_design_four_photon(w1, w2, [0.41, 0.43, 0.47, 0.53, 0.59, 0.61])
    assert len(design.pumps) == 12
    assert len(design.constraints) == 6
    assert design.constraints[0].sum == pytest.approx(w1 + w2)

    terms = []
    for order in (3, 4, 5):
        terms.extend(hempss.enumerate_terms(order, w1, w2, design.pumps))
    assert len(terms) == 11
    labels = {t.kappa_label for t in terms}
    assert "k^{11}_{00}" in labels
    assert "k^{30}_{00}" in labels

    reduced_design = hempss.pump_design_hempss(w1, w2, [0.41, 0.43, 0.47, 0.53])
    reduced = []
    for order in (3, 4, 5):
        reduced.extend(
            hempss.enumerate_terms(order, w1, w2, reduced_design.pumps, include_kerr=False)
        )
    assert sorted((t.j, t.s, t.l, t.m) for t in reduced) == [
        (0, 2, 1, 0),
        (0, 3, 0, 0),
        (2, 0, 0, 1),
        (3, 0, 0, 0),
    ]

    mismatch = hempss.check_phase_matching(terms[0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0],
                                           design.pumps)
    assert mismatch >= 0.0

    with pytest.raises(IndexError):
        hempss.enumerate_terms(7, w1, w2, design.pumps)
    with pytest.raises(ValueError):
        hempss.pump_design_four_photon(1.0, 2.9)


def test_coupling_match_covers_all_requirements():
    p = working_point()
    coeffs = hempss.generic_coefficients(p)
    w1, w2 = 1.0, math.sqrt(2.0)
    design = hempss.pump_design_four_photon(w1, w2, [0.41, 0.43, 0.47, 0.53, 0.59, 0.61])
    terms = []
    for order in (3, 4, 5):
        terms.extend(hempss.enumerate_terms(order, w1, w2, design.pumps))
    assignment = hempss.match_couplings(coeffs, terms)
    assert len(assignment.requirements) == 11
    assert assignment.kerr_ratio == pytest.approx(0.25)
    assert not assignment.kerr_relation_within_tol

    counts = [len(hempss.splitting_conditions(n)) for n in (2, 3, 4, 5)]
    assert counts == [1, 2, 2, 3]
