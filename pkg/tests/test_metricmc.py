"""Monte Carlo variance and measure checks, dimension formula."""
from fractions import Fraction
from math import sqrt

import pytest

from pairlab.energy import energy
from pairlab.errors import ValidationError
from pairlab.metricmc import (dimension_bound, lemma3_exp_term, measure_check,
                              variance_bound_check, variance_estimate)
from pairlab.seqgen import Lacunary, Monomial, PowersOfTwo, generate


def test_single_sample_variance_zero():
    est = variance_estimate(Monomial(2), 50, 1, 1, 0)
    assert est.samples == 1
    assert est.variance == 0.0 and est.stderr == 0.0


def test_estimate_independent_of_threads():
    a = variance_estimate(Monomial(2), 200, 1, 50, 3, threads=1)
    b = variance_estimate(Monomial(2), 200, 1, 50, 3, threads=4)
    assert a == b


def test_linear_family_not_poissonian():
    # a(x) = x keeps an order-one variance; pinned from the first run
    est = variance_estimate(Monomial(1), 500, 1, 200, 0)
    assert est.variance == pytest.approx(6.70065992, rel=1e-9)
    assert est.variance > 1.0


def test_mean_matches_exact_target():
    est = variance_estimate(Monomial(2), 2000, 1, 400, 1)
    assert est.target_mean == pytest.approx(2 * 1999 / 2000)
    assert abs(est.mean - est.target_mean) <= 3 * est.stderr


def test_variance_decays_for_squares():
    lo = variance_estimate(Monomial(2), 1000, 1, 400, 1)
    hi = variance_estimate(Monomial(2), 4000, 1, 400, 1)
    assert hi.variance < lo.variance
    # >= 3 sigma separation with chi-square spread per estimate
    sd = lambda est: est.variance * sqrt(2.0 / (est.samples - 1))
    gap = lo.variance - hi.variance
    assert gap > 3 * sqrt(sd(lo) ** 2 + sd(hi) ** 2)


def test_variance_bound_check_reports():
    est = variance_estimate(PowersOfTwo(), 64, 1, 100, 0)
    rep = variance_bound_check(est, energy(generate(PowersOfTwo(), 64)), 1.0)
    assert rep.rhs > 0
    assert rep.details["E"] == energy(generate(PowersOfTwo(), 64)).e
    assert rep.ratio < float("inf")


def test_variance_bound_kappa_zero():
    spec = Lacunary(Fraction(2))
    est = variance_estimate(spec, 64, 1, 100, 0)
    e = energy(generate(spec, 64))
    rep = variance_bound_check(est, e, 0.0)
    assert rep.rhs == pytest.approx(e.e / 64 ** 3)


def test_lemma3_exp_term_validation():
    with pytest.raises(ValidationError):
        lemma3_exp_term(19, 1.0)
    assert lemma3_exp_term(20, 0.0) == 1.0


def test_variance_estimate_validation():
    with pytest.raises(ValidationError):
        variance_estimate(Monomial(2), 100, 1, 0, 0)     # samples < 1
    with pytest.raises(ValidationError):
        variance_estimate(Monomial(2), 4, 3, 10, 0)      # 2s > N


def test_dimension_bound_examples():
    assert dimension_bound(2, 1).bound == pytest.approx(0.8)
    assert dimension_bound(3, 1).bound == pytest.approx(5 / 6)
    assert dimension_bound(1, 4.0).bound == 0.0


def test_dimension_bound_validation():
    with pytest.raises(ValidationError):
        dimension_bound(0, 1)
    with pytest.raises(ValidationError):
        dimension_bound(2, 0)
    with pytest.raises(ValidationError):
        dimension_bound(2, 5.5)


def test_dimension_bound_monotone():
    for d in range(1, 6):
        bounds = [dimension_bound(d, e / 4).bound for e in range(1, 9)]
        assert bounds == sorted(bounds, reverse=True)
    for eps in (0.5, 1.0, 2.0):
        by_d = [dimension_bound(d, eps).bound for d in range(1, 8)]
        assert by_d == sorted(by_d)


def test_measure_check_two_point_analytic():
    # B = {0,1}: a single difference, |B-B| = 3, true measure 2*eps/3
    rep = measure_check([0, 1], Fraction(1, 10), 200_000, 3)
    assert rep.details["size_bb"] == 3
    truth = 2 * 0.1 / 3
    assert abs(rep.lhs - truth) <= 4 * rep.details["stderr"]
    assert rep.lhs == pytest.approx(0.06753, abs=1e-9)   # pinned first run
    assert rep.passed


def test_measure_check_vanishing_eps():
    rep = measure_check(list(range(1, 6)), Fraction(1, 10 ** 6), 20_000, 0)
    assert rep.lhs <= 1e-3


def test_measure_check_b50():
    rep = measure_check(list(range(1, 51)), Fraction(1, 10), 100_000, 0)
    assert rep.lhs <= 2 * 0.1 + 3 * rep.details["stderr"]
    assert rep.passed


def test_measure_check_shift_invariant():
    a = measure_check([0, 1], Fraction(1, 8), 50_000, 1)
    b = measure_check([10, 11], Fraction(1, 8), 50_000, 1)
    assert a.lhs == b.lhs


def test_measure_check_validation():
    with pytest.raises(ValidationError):
        measure_check([1, 2], 1, 100, 0)                 # eps must be < 1
    with pytest.raises(ValidationError):
        measure_check([1], Fraction(1, 2), 100, 0)       # need two values
    with pytest.raises(ValidationError):
        measure_check([1, 1, 2], Fraction(1, 2), 100, 0)
