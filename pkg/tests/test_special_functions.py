"""Tests for the Lambert-type special functions."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.exceptions import DomainError, InvalidBase, InvalidKappa, UnsupportedQ
from app.models import DeformationParams
from app.utils.special_functions import (
    deformed_exp_log,
    exp_kappa,
    exp_q,
    lambert_w,
    ln_kappa,
    ln_q,
    q_add,
    r_lambda,
    r_lambda_branch_point,
    wk,
    wk_branch_point,
    wq,
    wq_branch_point,
    wq_closed_form,
)
from tests.oracles import lambert_w_bisect

Q_CLOSED = [0.5, 4.0 / 3.0, 1.5, 2.0]
OMEGA = 0.5671432904097838


def _residual_q(w, z, q):
    return np.abs(w * exp_q(w, q) - z) / np.maximum(1.0, np.abs(z))


def _principal_samples(q, rng, n):
    bp = wq_branch_point(q)
    lo = bp.z_b if bp.finite else -0.99
    return rng.uniform(lo, 10.0, n)


@pytest.mark.parametrize("z, expected", [
    (0.0, 0.0),
    (math.e, 1.0),
    (-1.0 / math.e, -1.0),
    (1.0, OMEGA),
])
def test_lambert_w_examples(z, expected):
    assert lambert_w(z) == pytest.approx(expected, abs=1e-12)


def test_omega_constant_against_bisection():
    assert abs(lambert_w(1.0) - lambert_w_bisect(1.0)) < 1e-12
    assert lambert_w(1.0) == pytest.approx(0.5671432904, abs=1e-9)


def test_lambert_w_lower_branch_identity(rng):
    z = rng.uniform(-1.0 / math.e, -1e-6, 2000)
    w = lambert_w(z, "lower")
    assert np.all(w <= -1.0)
    assert np.max(np.abs(w * np.exp(w) - z)) < 1e-12


def test_lambert_w_domain_errors():
    with pytest.raises(DomainError):
        lambert_w(-1.0)
    with pytest.raises(DomainError):
        lambert_w(0.5, "lower")


def test_lambert_w_vectorized_shape():
    z = np.linspace(0, 5, 12).reshape(3, 4)
    assert lambert_w(z).shape == (3, 4)
    assert isinstance(lambert_w(1.0), float)


@pytest.mark.parametrize("z, base, expected", [
    (2.0, 2.0, 1.0),
    (1.0, 2.0, 0.641186),
    (-1.0 / (math.e * math.log(2.0)), 2.0, -1.0 / math.log(2.0)),
])
def test_r_lambda_examples(z, base, expected):
    assert r_lambda(z, base) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("base", [2.0, math.e, 10.0])
def test_r_lambda_identity(base, rng):
    bp = r_lambda_branch_point(base)
    z = rng.uniform(bp.z_b, 50.0, 10_000)
    r = r_lambda(z, base)
    assert np.max(np.abs(r * base ** r - z) / np.maximum(1.0, np.abs(z))) < 1e-12


def test_r2_branch_point():
    bp = r_lambda_branch_point(2.0)
    assert bp.z_b == pytest.approx(-1.0 / (math.e * math.log(2.0)))
    assert bp.w_b == pytest.approx(-1.0 / math.log(2.0))


def test_r_lambda_invalid_base():
    with pytest.raises(InvalidBase):
        r_lambda(1.0, 1.0)
    with pytest.raises(InvalidBase):
        r_lambda(1.0, -2.0)


def test_log2_recursion(rng):
    z = rng.uniform(1e-3, 100.0, 1000)
    r2 = r_lambda(z, 2.0)
    assert np.max(np.abs(np.log2(z) - (r2 + np.log2(r2)))) < 1e-9


def test_deformed_exp_examples():
    assert exp_q(0.5, 2.0) == pytest.approx(2.0)
    assert exp_q(2.0, 0.5) == pytest.approx(4.0)
    assert exp_kappa(0.0, 0.3) == 1.0
    assert deformed_exp_log(0.5, DeformationParams(q=2.0), "exp_q") == pytest.approx(2.0)


def test_deformed_inverses(rng):
    x = rng.uniform(0.05, 5.0, 200)
    for q in (0.5, 1.5, 2.0):
        assert np.allclose(exp_q(ln_q(x, q), q), x, rtol=1e-12)
    for kappa in (1.0 / 3.0, 0.5):
        assert np.allclose(exp_kappa(ln_kappa(x, kappa), kappa), x, rtol=1e-12)


def test_deformed_limits():
    x = np.linspace(-0.1, 0.1, 21)
    assert np.max(np.abs(exp_q(x, 1.0 + 1e-6) - np.exp(x))) < 1e-8
    assert np.max(np.abs(exp_kappa(x, 1e-6) - np.exp(x))) < 1e-8
    y = np.linspace(0.9, 1.1, 21)
    assert np.max(np.abs(ln_q(y, 1.0 - 1e-6) - np.log(y))) < 1e-8


def test_exp_q_cutoff_raises():
    with pytest.raises(DomainError):
        exp_q(2.0, 2.0)
    with pytest.raises(DomainError):
        ln_q(0.0, 0.5)


def test_q_add():
    assert q_add(1.0, 2.0, 0.5) == pytest.approx(4.0)
    assert q_add(1.0, 2.0, 1.0) == pytest.approx(3.0)


@pytest.mark.parametrize("z, q, expected", [
    (1.0, 2.0, 0.5),
    (1.0, 1.5, 4.0 - 2.0 * math.sqrt(3.0)),
    (0.0, 0.5, 0.0),
    (0.0, 4.0 / 3.0, 0.0),
    (-0.5, 1.5, -2.0),
])
def test_wq_examples(z, q, expected):
    assert wq(z, q) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("q, z_b, w_b", [
    (1.0, -1.0 / math.e, -1.0),
    (0.5, -8.0 / 27.0, -2.0 / 3.0),
    (1.5, -0.5, -2.0),
])
def test_wq_branch_points(q, z_b, w_b):
    bp = wq_branch_point(q)
    assert bp.finite
    assert bp.z_b == pytest.approx(z_b, abs=1e-12)
    assert bp.w_b == pytest.approx(w_b, abs=1e-12)


def test_wq_branch_point_q2_not_finite():
    assert wq_branch_point(2.0).finite is False
    assert wq_branch_point(3.0).finite is False


@pytest.mark.parametrize("q", Q_CLOSED)
def test_wq_defining_identity_principal(q, rng):
    z = _principal_samples(q, rng, 10_000)
    w = wq(z, q)
    assert np.max(_residual_q(w, z, q)) < 1e-9


@pytest.mark.parametrize("q", [0.5, 4.0 / 3.0, 1.5])
def test_wq_defining_identity_lower(q, rng):
    bp = wq_branch_point(q)
    z = rng.uniform(bp.z_b, -1e-3, 10_000)
    w = wq(z, q, "lower")
    assert np.all(w <= bp.w_b + 1e-12)
    assert np.max(_residual_q(w, z, q)) < 1e-9


@pytest.mark.parametrize("q", Q_CLOSED)
def test_wq_closed_form_agreement(q, rng):
    if q == 4.0 / 3.0:
        z = rng.uniform(0.0, 10.0, 1000)
    else:
        z = _principal_samples(q, rng, 1000)
    generic = wq(z, q)
    closed = wq_closed_form(z, q)
    assert np.max(np.abs(generic - closed) / np.maximum(1.0, np.abs(closed))) < 1e-9


def test_wq_closed_form_rejects_complex_radical():
    with pytest.raises(UnsupportedQ):
        wq_closed_form(-0.1, 4.0 / 3.0)
    with pytest.raises(UnsupportedQ):
        wq_closed_form(1.0, 0.7)


def test_wq_domain_errors():
    with pytest.raises(DomainError):
        wq(-0.4, 0.5)
    with pytest.raises(DomainError):
        wq(-1.0, 2.0)
    with pytest.raises(UnsupportedQ):
        wq(-0.1, 2.0, "lower")
    with pytest.raises(DomainError):
        wq(0.2, 1.5, "lower")


@pytest.mark.parametrize("q", [0.5, 1.5, 2.0])
def test_q_log_recursion(q, rng):
    x = rng.uniform(1e-3, 1.0, 1000)
    w = wq(x, q)
    lw = ln_q(w, q)
    rhs = w + lw + (1.0 - q) * w * lw
    assert np.max(np.abs(ln_q(x, q) - rhs)) < 1e-9


@pytest.mark.parametrize("q", Q_CLOSED + [1.0])
def test_wq_principal_monotone(q):
    bp = wq_branch_point(q)
    lo = bp.z_b if bp.finite else -0.99
    z = np.linspace(lo, 20.0, 2001)
    w = wq(z, q)
    assert np.all(np.diff(w) > 0)


def test_wq_q_to_one_limit():
    z = np.linspace(-0.3, 5.0, 101)
    assert np.max(np.abs(wq(z, 1.0 + 1e-6) - lambert_w(z))) < 1e-5
    assert np.max(np.abs(wq(z, 1.0 - 1e-6) - lambert_w(z))) < 1e-5


@settings(max_examples=300, deadline=None)
@given(st.floats(-0.29, 50.0), st.sampled_from([0.25, 0.5, 0.75, 1.25, 1.5, 1.75]))
def test_wq_identity_property(z, q):
    bp = wq_branch_point(q)
    if z < bp.z_b:
        z = bp.z_b
    w = wq(z, q)
    assert abs(w * exp_q(w, q) - z) <= 1e-9 * max(1.0, abs(z))


def test_wk_examples():
    assert wk(0.0, 1.0 / 3.0) == 0.0
    bp = wk_branch_point(1.0 / 3.0)
    assert bp.z_b == pytest.approx(-3.0 / 8.0, abs=1e-12)
    assert bp.w_b == pytest.approx(-3.0 / (2.0 * math.sqrt(2.0)), abs=1e-12)
    assert wk(bp.z_b, 1.0 / 3.0) == pytest.approx(bp.w_b, abs=1e-6)
    assert wk(1.0, 1e-6) == pytest.approx(lambert_w(1.0), abs=1e-5)


@pytest.mark.parametrize("kappa", [1.0 / 3.0, 0.5])
@pytest.mark.parametrize("branch", ["principal", "lower"])
def test_wk_defining_identity(kappa, branch, rng):
    bp = wk_branch_point(kappa)
    hi = 10.0 if branch == "principal" else -1e-3
    z = rng.uniform(bp.z_b, hi, 10_000)
    w = wk(z, kappa, branch)
    res = np.abs(w * exp_kappa(w, kappa) - z) / np.maximum(1.0, np.abs(z))
    assert np.max(res) < 1e-9


def test_wk_limit_and_monotone():
    z = np.linspace(-0.3, 5.0, 101)
    assert np.max(np.abs(wk(z, 1e-6) - lambert_w(z))) < 1e-5
    bp = wk_branch_point(0.5)
    grid = np.linspace(bp.z_b, 20.0, 1001)
    assert np.all(np.diff(wk(grid, 0.5)) > 0)


def test_wk_invalid_kappa():
    with pytest.raises(InvalidKappa):
        wk(0.0, 1.0)
    with pytest.raises(DomainError):
        wk(-0.5, 1.0 / 3.0)
