import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyptest.composite import (FamilyParams, SpecialFamily, asymptotic_norm, block_sizes,
                               canonical_realization, composite_error, composite_sum_error,
                               conjectured_exponent, exponent_series, extract_params,
                               pair_log_errors, random_params, reduced_eigen, reduced_matrix,
                               remainder_ratio, series_at, validate_assumptions, verify_theorem)
from hyptest.discrimination import binary_optimal_error, chernoff_divergence
from hyptest.errors import DomainError, InfeasibleParams, InvariantViolation, PrecisionLossWarning
from hyptest.linalg import tensor_power, trace_norm

from conftest import REF1, REF2

seeds = st.integers(0, 2 ** 32 - 1)

# brute-force values from explicit tensor powers of the canonical realizations
REF1_ORACLE = [0.6434316734157279, 0.33664773004782766, 0.15946977104653692,
               0.07471321978564949]
REF2_ORACLE = [0.664424288598688, 0.25463020585304075, 0.10353751025984925,
               0.04401649390314244]


def block_norm(params, n):
    return float(np.abs(reduced_eigen(params, n).eigenvalues).sum())


def test_params_validation():
    with pytest.raises(InvariantViolation):
        FamilyParams(0.4, 0.5, 0.5, 0.3, 0, 1)
    with pytest.raises(InvariantViolation):
        FamilyParams(1, 0.5, 0.5, 0.3, 0, 1)
    with pytest.raises(InvariantViolation):
        FamilyParams(0.5, 0.5, 0.5, 0.3, 0.4, 1)
    with pytest.raises(InvariantViolation):
        FamilyParams(0.5, 0.5, 0.8, 0.7, 0.4, 1)
    with pytest.raises(InvariantViolation):
        FamilyParams(0.5, 0.5, 0.5, 0.3, 0, 3)
    with pytest.raises(InvariantViolation):
        FamilyParams(0.5, 0.5, 0.5, 0.3, 0, 0.5)
    with pytest.raises(InvariantViolation):
        FamilyParams.from_dict({"p": 0.5, "q": 0.5})


def test_params_clamping():
    th = FamilyParams(0.5 + 1e-12, 1 / 3, 0.5, 0.3, -1e-13, 1.0)
    assert th.r == 0 and th.R == 1 and isinstance(th.R, int)
    assert th.kind == "A"
    assert FamilyParams.from_dict(REF1.as_dict()) == REF1


def test_extract_params_examples():
    th = extract_params(SpecialFamily(np.diag([1, 1, 0]), np.diag([0, 1, 1]),
                                      np.ones(3) / math.sqrt(3)))
    assert np.allclose([th.p, th.q, th.t, th.s, th.r], [1 / 2, 1 / 2, 2 / 3, 2 / 3, 1 / 3])
    assert th.R == 1
    th = extract_params(SpecialFamily(np.diag([1, 1, 0, 0]), np.diag([0, 1, 1, 0]),
                                      [math.sqrt(0.5), 0, math.sqrt(0.3), math.sqrt(0.2)]))
    assert np.allclose([th.p, th.q, th.t, th.s, th.r], [1 / 2, 1 / 2, 0.5, 0.3, 0])
    assert th.R == 1 and th.kind == "A"


def test_extract_params_t_zero_forces_r_zero():
    th = extract_params(SpecialFamily(np.diag([1, 1, 0, 0]), np.diag([0, 1, 1, 0]),
                                      [0, 0, 0.6, 0.8]))
    assert th.t == 0 and th.r == 0 and th.s == pytest.approx(0.36)


def test_extract_params_errors():
    with pytest.raises(InvariantViolation):
        extract_params(SpecialFamily(np.diag([1, 1, 0]), np.diag([0, 1, 1]), [1, 1, 0]))
    h = np.full((2, 2), 0.5)
    with pytest.raises(InvariantViolation):
        extract_params(SpecialFamily(np.diag([1, 0]), h, [1, 0]))
    with pytest.raises(InvariantViolation):
        extract_params(SpecialFamily(np.diag([1, 0.5, 0]), np.diag([0, 1, 1]), [1, 0, 0]))


def test_validate_assumptions():
    good = SpecialFamily(np.diag([1, 1, 0]), np.diag([0, 1, 1]), np.ones(3) / math.sqrt(3))
    assert validate_assumptions(good) == []
    same = SpecialFamily(np.diag([1, 1, 0]), np.diag([1, 1, 0]), np.ones(3) / math.sqrt(3))
    assert "(3)" in validate_assumptions(same)
    inside = SpecialFamily(np.diag([1, 1, 0]), np.diag([0, 1, 1]), [1, 0, 0])
    assert "(4)" in validate_assumptions(inside)
    plus = np.full((3, 3), 0)
    plus[:2, :2] = 1
    tilted = SpecialFamily(np.diag([1, 0, 0]), plus / 2, np.ones(3) / math.sqrt(3) * 2)
    assert {"(1)", "(2)", "(5)"} <= set(validate_assumptions(tilted))


def test_canonical_realization_examples():
    fam = canonical_realization(REF1)
    assert fam.dim == 4 and block_sizes(REF1) == (1, 1, 1, 1)
    fam = canonical_realization(REF2)
    assert fam.dim == 6 and block_sizes(REF2) == (1, 1, 3, 1)
    th = FamilyParams(1 / 2, 1 / 2, 0.5, 0.3, 0, 0)
    fam = canonical_realization(th)
    assert np.count_nonzero(fam.psi) == 3
    assert np.allclose(fam.p_proj @ fam.q_proj, 0)
    with pytest.raises(InfeasibleParams):
        canonical_realization(FamilyParams(0.5, 0.5, 0.5, 0.5, 0.2, 0))
    with pytest.raises(InfeasibleParams):
        canonical_realization(FamilyParams(0.5, 0.5, 0.5, 0.3, 0.1, 2))


@settings(max_examples=60, deadline=None)
@given(seeds, st.booleans())
def test_canonical_round_trip(seed, zero_r):
    th = random_params(np.random.default_rng(seed), zero_r=zero_r)
    back = extract_params(canonical_realization(th))
    assert back.R == th.R
    assert np.allclose([back.p, back.q, back.t, back.s, back.r],
                       [th.p, th.q, th.t, th.s, th.r], atol=1e-10)


def test_reduced_matrix_examples():
    th = FamilyParams(1 / 2, 1 / 2, 0.5, 0.3, 0, 1)
    a1 = reduced_matrix(th, 1)
    assert a1.shape == (3, 3)
    assert np.allclose(a1[0], [0.0, math.sqrt(0.15), math.sqrt(0.1)])
    b1 = reduced_matrix(REF2, 1)
    assert b1.shape == (4, 4)
    assert b1[3, 3] == pytest.approx(1 - 0.9 - 0.15 + 0.1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.booleans(), st.integers(1, 40))
def test_reduced_matrix_trace_and_signs(seed, zero_r, n):
    th = random_params(np.random.default_rng(seed), zero_r=zero_r)
    m = reduced_matrix(th, n)
    assert np.allclose(m, m.T)
    assert np.all(m[~np.eye(len(m), dtype=bool)] >= 0)
    p, q = th.p ** n, th.q ** n
    expected = 1 + q - p if th.kind == "A" else 1 - 2 * p + 2 * q
    assert np.trace(m) == pytest.approx(expected, rel=1e-10)
    eig = reduced_eigen(th, n)
    assert eig.eigenvalues.sum() == pytest.approx(expected, rel=1e-10)
    assert np.allclose(eig.eigenvalues, np.linalg.eigvalsh(m), atol=1e-12)


def test_reduced_matrix_survives_underflow():
    m = reduced_matrix(REF1, 2000)
    assert np.all(np.isfinite(m))
    # (2/3)**2000 underflows but its square root is still representable
    assert (2 / 3) ** 2000 == 0 and m[0, 3] == pytest.approx((2 / 3) ** 1000, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([1, 5, 25]))
def test_kind_a_single_negative_eigenvalue(seed, n):
    th = random_params(np.random.default_rng(seed), zero_r=True)
    eig = reduced_eigen(th, n)
    assert np.sum(eig.eigenvalues < 0) == 1
    assert list(np.sign(eig.eigenvalues)) == [-1, 1, 1]
    lam1 = eig.eigenvalues[0]
    assert eig.trace_norm == pytest.approx(eig.eigenvalues.sum() - 2 * lam1, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([1, 5, 25, 60]))
def test_p_equals_q_has_zero_eigenvalue(seed, n):
    th = random_params(np.random.default_rng(seed), p_equal_q=True)
    eig = reduced_eigen(th, n)
    assert eig.coeffs[0] == 0
    assert np.abs(eig.eigenvalues).min() <= 1e-12 * eig.trace_norm


def test_t_zero_negative_eigenvalue_is_exact():
    th = FamilyParams(1 / 3, 1 / 2, 0, 0.4, 0, 1)
    for n in (1, 4, 30):
        eig = reduced_eigen(th, n)
        assert eig.eigenvalues[0] == pytest.approx(-(1 / 3) ** n, rel=1e-14)


def test_reduced_eigen_routes_agree():
    for th in (REF1, REF2):
        for n in (1, 10, 100, 400):
            eig = reduced_eigen(th, n)
            assert not eig.precision_loss
            scale = np.abs(eig.eigenvalues).max()
            assert np.allclose(eig.eigenvalues, eig.poly_eigenvalues, rtol=1e-9, atol=1e-15 * scale)


def test_composite_matches_frozen_oracle():
    for th, ref in ((REF1, REF1_ORACLE), (REF2, REF2_ORACLE)):
        for n, value in enumerate(ref, start=1):
            assert composite_sum_error(th, n) == pytest.approx(value, abs=1e-10)


def test_composite_n1_is_binary_error():
    for th in (REF1, REF2, FamilyParams(1 / 2, 1 / 3, 0.2, 0.5, 0, 1)):
        fam = canonical_realization(th)
        value, _ = binary_optimal_error(fam.rho, fam.sigma1 + fam.sigma2)
        assert composite_sum_error(th, 1) == pytest.approx(value, abs=1e-10)


def test_composite_n3_ref1_bruteforce():
    fam = canonical_realization(REF1)
    ops = [tensor_power(x, 3) for x in (fam.rho, fam.sigma1, fam.sigma2)]
    brute = 0.5 * (3 - trace_norm(ops[0] - ops[1] - ops[2]))
    assert composite_sum_error(REF1, 3) == pytest.approx(brute, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds, st.booleans())
def test_composite_monotone_and_bounded(seed, zero_r):
    th = random_params(np.random.default_rng(seed), zero_r=zero_r)
    values = [composite_sum_error(th, n) for n in range(1, 11)]
    assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))
    assert all(v <= values[0] + 1e-15 for v in values)
    assert all(v > 0 for v in values)


def test_composite_forms_agree_at_moderate_n():
    for n in (5, 50, 150):
        res = composite_error(REF2, n)
        assert res.naive == pytest.approx(res.value, rel=1e-6)
        assert not res.precision_loss


def test_double_precision_breakdown_is_flagged():
    assert not composite_error(REF2, 20, precision=53).precision_loss
    with pytest.warns(PrecisionLossWarning):
        composite_sum_error(REF2, 80, precision=53)


def test_composite_large_n_stays_finite():
    res = composite_error(REF1, 1000)
    assert res.value > 0 and math.isfinite(res.log_value)
    assert res.log_value / 1000 == pytest.approx(math.log(0.5), abs=2e-3)


def test_pair_log_errors_match_binary_error():
    for th in (REF1, REF2):
        fam = canonical_realization(th)
        for n in (1, 2, 3):
            rho, s1, s2 = (tensor_power(x, n) for x in (fam.rho, fam.sigma1, fam.sigma2))
            l1, l2 = pair_log_errors(th, n)
            assert math.exp(l1) == pytest.approx(binary_optimal_error(rho, s1)[0], abs=1e-12)
            assert math.exp(l2) == pytest.approx(binary_optimal_error(rho, s2)[0], abs=1e-12)


def test_asymptotic_norm_examples():
    th = FamilyParams(1 / 2, 1 / 3, 0, 0.4, 0, 1)
    for n in (1, 3, 10):
        expected = 1 + 0.5 ** n + (1 / 3) ** n
        assert asymptotic_norm(th, n) == pytest.approx(expected, abs=1e-15)
        assert block_norm(th, n) == pytest.approx(expected, abs=1e-12)
    th = FamilyParams(1 / 2, 1 / 2, 0.4, 0.4, 0.2, 1)
    assert asymptotic_norm(th, 7) == pytest.approx(1 + 2 * 0.5 ** 7, abs=1e-15)
    assert REF2.branch == "B:pt>=q"
    n = 6
    p, q, pt = 0.5 ** n, 0.25 ** n, 0.45 ** n
    assert asymptotic_norm(REF2, n) == pytest.approx(1 + p + q + abs(p - q) - 2 * pt, abs=1e-15)
    assert REF1.branch == "B:pt<q"


def test_conjectured_exponent_examples():
    assert conjectured_exponent(REF1) == pytest.approx(math.log(1 / 2))
    assert conjectured_exponent(REF2) == pytest.approx(math.log(0.45))
    assert conjectured_exponent(FamilyParams(1 / 2, 1 / 2, 0, 0.3, 0, 0)) == -math.inf


@settings(max_examples=30, deadline=None)
@given(seeds, st.booleans())
def test_conjectured_matches_numerical_chernoff(seed, zero_r):
    th = random_params(np.random.default_rng(seed), zero_r=zero_r)
    fam = canonical_realization(th)
    c1 = chernoff_divergence(fam.rho, fam.sigma1).value
    c2 = chernoff_divergence(fam.rho, fam.sigma2).value
    assert conjectured_exponent(th) == pytest.approx(-min(c1, c2), abs=1e-8)


def test_exponent_series_reference_cases():
    s1 = exponent_series(REF1, 200)
    assert [e.n for e in s1.entries] == list(range(1, 201))
    assert abs(s1.estimate - math.log(0.5)) <= 1e-6
    s2 = exponent_series(REF2, 60)
    assert abs(s2.estimate - math.log(0.45)) <= 1e-4
    assert s2.conjectured == conjectured_exponent(REF2)


def test_exponent_series_keeps_flagged_rows():
    series = exponent_series(REF2, 80, step=10, n_min=20, precision=53)
    assert [e.n for e in series.entries] == [20, 30, 40, 50, 60, 70, 80]
    flags = [e.precision_loss for e in series.entries]
    assert flags[0] is False and flags[-1] is True
    # the estimate comes from the last pair of unflagged endpoints
    good = [e for e, f, g in zip(series.entries, flags, flags[1:] + [True]) if not (f or g)]
    assert series.estimate == good[-1].slope


def test_exponent_series_parallel_matches_serial():
    a = series_at(REF2, [5, 15, 25])
    b = series_at(REF2, [25, 5, 15], jobs=2)
    assert a.rows() == b.rows()


def test_exponent_series_rejects_bad_range():
    with pytest.raises(DomainError):
        exponent_series(REF1, 0)
    with pytest.raises(DomainError):
        exponent_series(REF1, 10, step=0)


def test_remainder_ratio_decreases():
    for th in (REF1, REF2):
        ratios = [remainder_ratio(th, n) for n in (10, 20, 40, 80)]
        assert all(b < a for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] <= 0.05


def test_verify_theorem_reports():
    rep = verify_theorem(REF1, [10, 20, 40, 80])
    assert rep.passed and rep.remainder_decreasing and rep.sandwich_ok
    assert rep.final_gap < 1e-9
    rep = verify_theorem(REF2, [10, 20, 40, 80])
    assert rep.branch == "B:pt>=q" and rep.passed
    rep = verify_theorem(REF1, [1, 2, 3, 4, 5], oracle=True)
    assert all(pr.oracle_gap <= 1e-9 for pr in rep.probes)
    with pytest.raises(InfeasibleParams):
        verify_theorem(FamilyParams(0.5, 0.5, 0.5, 0.5, 0.2, 0), [1, 2], oracle=True)


def test_random_params_respects_dimension():
    rng = np.random.default_rng(0)
    for _ in range(50):
        th = random_params(rng, max_dim=6)
        assert canonical_realization(th).dim <= 6
        assert 0 < th.t < 1 and 0 < th.s < 1
