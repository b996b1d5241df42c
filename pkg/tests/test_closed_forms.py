import math
from fractions import Fraction

import numpy as np
import pytest

from haar_coherence import closed_forms as cf


def test_laguerre_low_orders():
    assert cf.laguerre(0, 3.7) == 1.0
    assert cf.laguerre(1, 2.0) == pytest.approx(-1.0)
    assert cf.laguerre(2, 1.0) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        cf.laguerre(-1, 0.0)


def test_laguerre_three_term_recurrence():
    for x in (0.0, 0.5, 3.0, 17.5):
        for k in range(1, 12):
            lhs = (k + 1) * cf.laguerre(k + 1, x)
            rhs = (2 * k + 1 - x) * cf.laguerre(k, x) - k * cf.laguerre(k - 1, x)
            assert lhs == pytest.approx(rhs, abs=1e-9 * max(1.0, abs(rhs)))


def test_gen_binomial_values():
    assert cf.gen_binomial(0.5, 0) == 1.0
    assert cf.gen_binomial(0.5, 1) == pytest.approx(0.5)
    assert cf.gen_binomial(0.5, 2) == pytest.approx(-0.125)
    for m in range(10):
        step = cf.gen_binomial(0.5, m) * (0.5 - m) / (m + 1)
        assert cf.gen_binomial(0.5, m + 1) == pytest.approx(step, rel=1e-14)


def test_laguerre_moment_known_values():
    root_pi = math.sqrt(math.pi)
    assert cf.laguerre_moment(0, 0, 0.5) == pytest.approx(root_pi / 2, abs=1e-14)
    assert cf.laguerre_moment(0, 1, 0.5) == pytest.approx(-root_pi / 4, abs=1e-14)
    assert cf.laguerre_moment(1, 1, 0.5) == pytest.approx(7 * root_pi / 8, abs=1e-14)
    assert cf.laguerre_moment(3, 5, 0.5) == cf.laguerre_moment(5, 3, 0.5)


def test_laguerre_moment_orthogonality_at_q_zero():
    for k in range(7):
        for l in range(7):
            expected = 1.0 if k == l else 0.0
            assert abs(cf.laguerre_moment(k, l, 0.0) - expected) < 1e-10


def test_moment_table_matches_elementwise_route():
    table = cf.moment_table(6, 0.5)
    assert table.method == "series"
    for k in range(6):
        for l in range(6):
            assert table.values[k, l] == cf.laguerre_moment(k, l, 0.5)


def test_avg_coherence_pure():
    assert cf.avg_coherence_pure(1) == 0.0
    assert cf.avg_coherence_pure(2) == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert cf.avg_coherence_pure(3) == pytest.approx(0.5, abs=1e-15)
    values = [cf.avg_coherence_pure(n) for n in range(2, 200)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert cf.avg_coherence_pure(10**9) == pytest.approx(1.0, abs=1e-8)


def test_avg_coherence_mixed_exact_small_dimensions():
    assert cf.avg_coherence_mixed(1) == 0.0
    assert abs(cf.avg_coherence_mixed(2) - (1.0 / 3.0 - math.pi / 16)) < 1e-12
    assert abs(cf.avg_coherence_mixed(3) - (0.5 - 103 * math.pi / 1024)) < 1e-12


def test_avg_coherence_mixed_large_dimension_plateau():
    value = cf.avg_coherence_mixed(64)
    assert 0.25 <= value <= 0.30


def test_avg_coherence_mixed_below_half_of_max():
    for n in range(2, 33):
        assert cf.avg_coherence_mixed(n) < (1.0 - 1.0 / n) / 2


def test_levy_bound_values():
    assert cf.levy_bound(3, 1e-9, 1.0) == pytest.approx(2.0, abs=1e-9)
    # direct arithmetic: 2 exp(-4 / (9 pi^3 ln 2))
    expected = 2.0 * math.exp(-4.0 / (9 * math.pi**3 * math.log(2)))
    assert expected == pytest.approx(1.95907, abs=1e-5)
    assert cf.levy_bound(3, 1.0, 1.0) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        cf.levy_bound(0, 1.0, 1.0)
    with pytest.raises(ValueError):
        cf.levy_bound(3, -1.0, 1.0)


def test_tail_bound_pure_values():
    assert cf.tail_bound_pure(5, 1e-12) == pytest.approx(2.0)
    expected_10 = 2.0 * math.exp(-10.0 / (72 * math.pi**3 * math.log(2)))
    assert cf.tail_bound_pure(10, 0.1) == pytest.approx(expected_10, rel=1e-14)
    assert expected_10 == pytest.approx(1.9871, abs=1e-4)
    expected_50 = 2.0 * math.exp(-11250.0 / (72 * math.pi**3 * math.log(2)))
    assert cf.tail_bound_pure(50, 0.3) == pytest.approx(expected_50, rel=1e-14)
    assert expected_50 == pytest.approx(0.00139, abs=2e-5)


def test_tail_bound_pure_is_levy_bound_specialized():
    # k = 2N - 1 and eta = 4/N collapse to the pure-state bound
    for n in (2, 7, 40):
        for eps in (0.05, 0.3):
            assert cf.levy_bound(2 * n - 1, eps, 4.0 / n) == pytest.approx(
                cf.tail_bound_pure(n, eps), rel=1e-12)


def test_tail_bound_mixed_values():
    assert cf.tail_bound_mixed(7, 1e-12) == pytest.approx(2.0)
    expected = 2.0 * math.exp(-4000.0 / (72 * math.pi**3 * math.log(2)))
    assert cf.tail_bound_mixed(10**5, 0.2) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.15080, abs=1e-4)
    for n in (2, 5, 100):
        assert cf.tail_bound_mixed(n, 0.2) >= cf.tail_bound_pure(n, 0.2)
    # the bipartite-sphere reading of the generic bound with eta = 4
    for n in (2, 5):
        assert cf.levy_bound(2 * n**2 - 1, 0.1, cf.lipschitz_constant_mixed()) == pytest.approx(
            cf.tail_bound_mixed(n**2, 0.1), rel=1e-12)


def test_tail_bounds_monotone():
    for eps in (0.05, 0.1, 0.3):
        values = [cf.tail_bound_pure(n, eps) for n in range(2, 40)]
        assert all(a > b for a, b in zip(values, values[1:]))
    for n in (5, 17):
        values = [cf.tail_bound_pure(n, eps) for eps in np.linspace(0.01, 1.0, 25)]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_coherent_subspace_dim():
    assert cf.coherent_subspace_dim(1000, 1e-4) == 0
    assert cf.coherent_subspace_dim(40000, 2e-5) == 2
    with pytest.raises(ValueError, match="epsilon"):
        cf.coherent_subspace_dim(100, 0.5)
    with pytest.raises(ValueError, match="epsilon"):
        cf.coherent_subspace_dim(100, 0.01)  # exactly 1/N is outside the open interval
    with pytest.raises(ValueError, match="epsilon"):
        cf.coherent_subspace_dim(100, -0.001)


def test_lipschitz_constants():
    assert cf.lipschitz_constant_pure(2) == 2.0
    assert cf.lipschitz_constant_pure(4) == 1.0
    assert cf.lipschitz_constant_pure(10**6) == pytest.approx(0.0, abs=1e-5)
    assert cf.lipschitz_constant_mixed() == 4.0


def test_avg_cr_pure():
    assert cf.avg_cr_pure(1) == 0.0
    assert cf.avg_cr_pure(2) == pytest.approx(0.5, abs=1e-15)
    assert cf.avg_cr_pure(4) == pytest.approx(13.0 / 12.0, abs=1e-14)


def test_avg_cr_mixed():
    assert cf.avg_cr_mixed(1) == 0.0
    assert cf.avg_cr_mixed(2) == pytest.approx(0.25, abs=1e-15)
    assert cf.avg_cr_mixed(10**9) == pytest.approx(0.5, abs=1e-8)


def test_beta_function():
    assert cf.beta_function(1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert cf.beta_function(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)
    for n in (3, 5, 12):
        expected = 2.0 / ((n + 1) * n * (n - 1))
        assert cf.beta_function(3.0, n - 1.0) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        cf.beta_function(-1.0, 2.0)


def test_pure_average_gap_identity():
    # exact rational oracle: (1 - 1/N) - (N-1)/(N+1) == (N-1)/(N(N+1))
    for n in range(2, 65):
        exact = Fraction(n - 1, n) - Fraction(n - 1, n + 1)
        assert exact == Fraction(n - 1, n * (n + 1))
        assert abs(cf.pure_average_gap(n) - float(exact)) <= 1e-15 * float(exact)
    # gap < average, so the average sits closer to the maximum
    n_grid = np.arange(2, 10**6 + 1, dtype=float)
    gap = (n_grid - 1) / (n_grid * (n_grid + 1))
    average = (n_grid - 1) / (n_grid + 1)
    assert np.all(gap < average)


def test_comparison_orderings():
    for n in range(2, 65):
        assert cf.avg_cr_pure(n) > cf.avg_coherence_pure(n)
        assert cf.avg_cr_mixed(n) > cf.avg_coherence_mixed(n)


def test_validated_table_is_cached():
    a = cf.validated_half_moment_table(16)
    b = cf.validated_half_moment_table(16)
    assert a is b
    assert not a.values.flags.writeable
