import math

import numpy as np
import pytest

from riesz_eig.analysis import (
    condition_number,
    condition_slope,
    convergence_table,
    inverse_inequality_ratio,
    projection_error,
    reliable_eigenvalues,
    spectrum_report,
    weyl_ratios,
)
from riesz_eig.eig import EigenSolution, solve
from riesz_eig.specfun import FractionalOrder, a_norm_sq_gjf


def make_solution(two_alpha, n_max, lambdas):
    lambdas = np.asarray(lambdas, dtype=float)
    return EigenSolution(
        order=FractionalOrder(two_alpha),
        n_max=n_max,
        lambdas=lambdas,
        vectors=np.zeros((len(lambdas), n_max + 1)),
        parities=tuple("even" for _ in lambdas),
    )


def test_weyl_ratio_classical_first():
    sol = solve(FractionalOrder(2.0), 64)
    rho = weyl_ratios(sol)
    assert math.isclose(rho[0], 1.0, rel_tol=1e-9)


def test_weyl_ratio_classical_reliable_range():
    n_max = 128
    sol = solve(FractionalOrder(2.0), n_max)
    rho = weyl_ratios(sol)
    reliable = int(2 * n_max / math.pi)
    assert np.max(np.abs(rho[:reliable] - 1.0)) <= 1e-2


@pytest.mark.parametrize("two_alpha", [1.2, 1.6, 2.0])
def test_weyl_bracket_reliable(two_alpha):
    n_max = 128
    sol = solve(FractionalOrder(two_alpha), n_max)
    rho = weyl_ratios(sol)[: int(2 * n_max / math.pi)]
    assert np.all(rho >= 0.5 - 0.02)
    assert np.all(rho <= 1.0 + 0.05)


def test_condition_number_basic():
    assert condition_number(solve(FractionalOrder(1.6), 0)) == 1.0
    chis = [condition_number(solve(FractionalOrder(1.6), n)) for n in (16, 32, 64)]
    assert all(c >= 1.0 for c in chis)
    assert chis[0] <= chis[1] <= chis[2]


def test_condition_prefactor_stable():
    # chi_N tracks N^{4 alpha} with a prefactor constant to well within 10x
    ratios = [
        condition_number(solve(FractionalOrder(2.0), n)) / n**4 for n in (64, 128, 256)
    ]
    assert max(ratios) / min(ratios) <= 10.0


def test_condition_slope_classical():
    slope = condition_slope(FractionalOrder(2.0), [32, 64, 128, 256])
    assert abs(slope - 4.0) <= 0.3


def test_condition_slope_needs_three_points():
    with pytest.raises(ValueError):
        condition_slope(FractionalOrder(1.6), [32, 64])


def test_condition_slope_thread_pool_matches_serial():
    order = FractionalOrder(1.2)
    serial = condition_slope(order, [16, 32, 64])
    threaded = condition_slope(order, [16, 32, 64], max_workers=3)
    assert serial == threaded


def test_convergence_table():
    order = FractionalOrder(1.6)
    table = convergence_table(order, [8, 16, 32], 64)
    errs = [row[2] for row in table.rows]
    assert all(e >= 0.0 for e in errs)
    assert errs[0] > errs[1] > errs[2] > 0.0
    assert [row[0] for row in table.rows] == [8, 16, 32]


def test_convergence_table_plateau_floor():
    # beyond the plateau the reported error collapses to an exact 0
    order = FractionalOrder(1.6)
    table = convergence_table(order, [96], 200)
    assert table.rows[0][2] == 0.0


def test_convergence_table_single_row_and_validation():
    order = FractionalOrder(1.6)
    table = convergence_table(order, [16], 32)
    assert len(table.rows) == 1
    with pytest.raises(ValueError):
        convergence_table(order, [8, 16], 16)


def test_reliable_eigenvalues_prefix_semantics():
    coarse = make_solution(1.6, 3, [1.0, 2.0, 3.5, 4.0])
    fine = make_solution(1.6, 7, [1.0, 2.0, 3.0, 4.0, 5.0])
    assert reliable_eigenvalues(coarse, fine, 0.01) == 2


def test_reliable_eigenvalues_identical():
    coarse = make_solution(1.6, 3, [1.0, 2.0, 3.0, 4.0])
    fine = make_solution(1.6, 7, [1.0, 2.0, 3.0, 4.0, 5.0])
    assert reliable_eigenvalues(coarse, fine, 1e-300) == 4


def test_reliable_eigenvalues_zero_tolerance():
    order = FractionalOrder(1.6)
    assert reliable_eigenvalues(solve(order, 16), solve(order, 32), 0.0) == 0


def test_reliable_eigenvalues_validation():
    order = FractionalOrder(1.6)
    sol = solve(order, 16)
    with pytest.raises(ValueError):
        reliable_eigenvalues(sol, solve(FractionalOrder(1.2), 32), 1e-4)
    with pytest.raises(ValueError):
        reliable_eigenvalues(sol, solve(order, 8), 1e-4)


def test_projection_error_exact_on_discrete_space():
    order = FractionalOrder(1.6)
    assert projection_error(order, [1.0, 2.0, 3.0], 5) == (0.0, 0.0)


def test_projection_error_single_excluded_mode():
    order = FractionalOrder(1.6)
    n_max = 6
    coeffs = [0.0] * (n_max + 1) + [1.0]
    a_err, l2_err = projection_error(order, coeffs, n_max)
    assert math.isclose(a_err**2, a_norm_sq_gjf(order, n_max + 1), rel_tol=1e-13)
    damp = math.exp(math.lgamma(n_max + 2.0) - math.lgamma(n_max + 1.0 + 1.6 + 1.0))
    assert math.isclose(l2_err**2, a_norm_sq_gjf(order, n_max + 1) * damp, rel_tol=1e-13)
    assert l2_err < a_err  # the weighted-L2 tail is the weaker norm


def test_projection_error_decay_rate():
    # u_i = (1+i)^-p gives an energy tail decaying like N^(alpha - p)
    order = FractionalOrder(1.6)
    p = 3.0
    coeffs = [(1.0 + i) ** -p for i in range(4097)]
    ns = [8, 16, 32, 64]
    errs = [projection_error(order, coeffs, n)[0] for n in ns]
    slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert abs(slope - (order.alpha - p)) <= 0.25


def test_inverse_inequality_ratio_bounded():
    order = FractionalOrder(1.2)
    ratios = [inverse_inequality_ratio(order, n) for n in (32, 64, 128)]
    assert all(r > 0 for r in ratios)
    assert max(ratios) / min(ratios) <= 4.0
    assert 0.0 < inverse_inequality_ratio(order, 1) < math.inf


def test_spectrum_report_fields():
    sol = solve(FractionalOrder(1.6), 64)
    report = spectrum_report(sol)
    assert report.condition_number >= 1.0
    assert report.lambdas[0] > report.poincare_bound
    assert report.lambdas[0] <= report.minmax_upper
    assert report.reliable_count == int(2 * 64 / math.pi)
    assert len(report.weyl_ratios) == 65


@pytest.mark.parametrize("two_alpha", [0.2, 1.0, 2.0, 3.6])
def test_bounds_small_sweep(two_alpha):
    order = FractionalOrder(two_alpha)
    lower = math.gamma(two_alpha + 1.0)
    for n in (8, 32):
        report = spectrum_report(solve(order, n))
        assert report.lambdas[0] > lower
        assert report.lambdas[0] <= report.minmax_upper


def test_first_eigenvalue_monotone_in_order():
    values = [solve(FractionalOrder(t), 32).lambdas[0] for t in np.arange(0.6, 2.001, 0.1)]
    assert all(b > a for a, b in zip(values, values[1:]))
