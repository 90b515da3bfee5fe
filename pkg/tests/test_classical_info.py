"""Tests for typical sequences, source coding, channels, Fano and GLLP."""
import math
from itertools import product

import numpy as np
import pytest

from app.exceptions import DomainError, EmptySequence
from app.models import BinaryChannel, Code, GLLPParams, ProbDist, SequenceStats, Source
from app.utils.classical_info import (
    binary_channel_analysis,
    binary_normalized_disentropy,
    bsc_disentropy_capacity,
    empirical_stats,
    exact_typical_fraction,
    fano_check,
    gllp_rates,
    bounded_minimize,
    sample_sequence_stats,
    source_coding_bounds,
    typicality,
)
from app.utils.disentropy_core import disentropy
from app.models import DeformationParams

W_HALF = 0.351733711249196
W_QUARTER = 0.203888354702240
TABLE_SOURCE = Source(probs=ProbDist.from_array([0.4, 0.2, 0.15, 0.15, 0.1]))


def test_empirical_stats_examples():
    h, d = empirical_stats(SequenceStats(counts=(2, 2)))
    assert h == pytest.approx(1.0)
    assert d == pytest.approx(0.383607, abs=1e-6)
    h, d = empirical_stats(SequenceStats(counts=(4, 0)))
    assert h == pytest.approx(0.0, abs=1e-15)
    assert d == pytest.approx(0.641186, abs=1e-6)
    h, _ = empirical_stats(SequenceStats(counts=(1, 1, 1, 1)))
    assert h == pytest.approx(2.0)


def test_empirical_stats_empty():
    with pytest.raises(EmptySequence):
        empirical_stats(SequenceStats(counts=(0, 0)))


def test_typical_fraction_extremes():
    uniform = Source(probs=ProbDist.uniform(4))
    report = typicality(SequenceStats(counts=(1, 1, 1, 1)), uniform, 0.01)
    assert report.typical_fraction == pytest.approx(1.0)
    assert report.is_typical
    near_delta = Source(probs=ProbDist.from_array([0.99, 0.01]))
    report = typicality(SequenceStats(counts=(20, 0)), near_delta, 0.05)
    assert report.typical_fraction < 1e-3


def test_typicality_long_sequence_bounds_saturate():
    src = Source(probs=ProbDist.from_array([0.5, 0.3, 0.2]))
    seq = sample_sequence_stats(src, 10_000, np.random.default_rng(11))
    report = typicality(seq, src, 0.05)
    h = 1.4854752972273344
    assert report.log2_card_bounds == pytest.approx((10_000 * (h - 0.05), 10_000 * (h + 0.05)))
    assert report.card_bounds == (math.inf, math.inf)
    assert report.is_typical


def test_typicality_short_sequence_bounds_are_finite():
    src = Source(probs=ProbDist.uniform(2))
    report = typicality(SequenceStats(counts=(5, 5)), src, 0.1)
    assert report.card_bounds == pytest.approx((2.0 ** 9, 2.0 ** 11))
    assert report.log2_card_bounds == pytest.approx((9.0, 11.0))


def test_typicality_alphabet_mismatch():
    with pytest.raises(DomainError):
        typicality(SequenceStats(counts=(1, 2, 3)), Source(probs=ProbDist.uniform(2)), 0.1)


def test_typical_fraction_against_enumeration():
    src = Source(probs=ProbDist.from_array([0.3, 0.7]))
    n, delta = 12, 0.025
    exact = exact_typical_fraction(src, n, delta)

    d_source = disentropy([0.3, 0.7], DeformationParams(), "shannon_r2")
    brute = 0
    for seq in product((0, 1), repeat=n):
        ones = sum(seq)
        freqs = [(n - ones) / n, ones / n]
        if abs(disentropy(freqs, DeformationParams(), "shannon_r2") - d_source) <= delta:
            brute += 1
    assert exact == pytest.approx(brute / 2 ** n, abs=1e-15)

    approx = typicality(SequenceStats(counts=(4, 8)), src, delta).typical_fraction
    assert approx == pytest.approx(0.2805, abs=2e-3)
    assert 0.25 <= exact / approx <= 4.0


def test_typicality_converges(rng):
    src = Source(probs=ProbDist.from_array([0.5, 0.3, 0.2]))
    d_source = disentropy(src.probs, DeformationParams(), "shannon_r2")
    h_source = -sum(p * math.log2(p) for p in src.probs.weights)
    medians_d, medians_h = [], []
    for n in (100, 1000, 10_000):
        gaps_d, gaps_h = [], []
        for _ in range(60):
            h_bar, d_bar = empirical_stats(sample_sequence_stats(src, n, rng))
            gaps_d.append(abs(d_bar - d_source))
            gaps_h.append(abs(h_bar - h_source))
        medians_d.append(np.median(gaps_d))
        medians_h.append(np.median(gaps_h))
    assert medians_d[0] > medians_d[1] > medians_d[2]
    assert medians_h[0] > medians_h[1] > medians_h[2]


def test_source_coding_table_codes():
    good = source_coding_bounds(TABLE_SOURCE, Code(lengths=(1, 3, 3, 3, 3)))
    assert good.mean_length == pytest.approx(2.2)
    assert good.shannon_lo == pytest.approx(2.1464, abs=1e-4)
    assert good.efficiency == pytest.approx(0.0525, abs=1e-4)
    assert good.d_norm == pytest.approx(0.07951, abs=5e-4)
    lo, hi = good.lambda_window
    assert lo <= good.efficiency <= hi

    bad = source_coding_bounds(TABLE_SOURCE, Code(lengths=(3, 3, 3, 3, 2)))
    assert bad.mean_length == pytest.approx(2.9)
    assert bad.disent_lo == pytest.approx(2.7614, abs=5e-4)
    assert bad.disent_lo <= bad.mean_length


def test_source_coding_uniform_binary():
    report = source_coding_bounds(Source(probs=ProbDist.uniform(2)), Code(lengths=(1, 1)))
    assert report.mean_length == pytest.approx(report.shannon_lo)
    assert report.efficiency == pytest.approx(0.0, abs=1e-15)
    assert report.d_norm == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("p_c, c_shannon, c_q", [
    (0.0, 1.0, W_HALF),
    (0.5, 0.0, 2 * W_HALF - W_QUARTER),
])
def test_channel_capacity_examples(p_c, c_shannon, c_q):
    report = binary_channel_analysis(BinaryChannel(p_c=p_c), 1.0)
    assert report.c_shannon == pytest.approx(c_shannon, abs=1e-12)
    assert report.c_q == pytest.approx(c_q, abs=1e-9)
    assert report.mutual_disent == pytest.approx(report.c_q, abs=1e-12)


@pytest.mark.parametrize("p_c", [0.0, 0.1, 0.3, 0.5])
@pytest.mark.parametrize("q", [0.75, 1.0, 1.25])
def test_capacity_minimum_at_half(p_c, q):
    report = binary_channel_analysis(BinaryChannel(p0=0.2, p_c=p_c), q)
    assert report.argmin_p0 == pytest.approx(0.5, abs=1e-6)
    assert report.c_q == pytest.approx(bsc_disentropy_capacity(p_c, q))


def test_bounded_minimize_quadratic():
    assert bounded_minimize(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 1e-10) == pytest.approx(0.3, abs=1e-6)


def test_fano_noiseless():
    check = fano_check(BinaryChannel(p_c=0.0), 2.0)
    assert check.lhs == pytest.approx(0.0, abs=1e-15)
    assert check.rhs == pytest.approx(0.5)
    assert check.holds


@pytest.mark.parametrize("p_c", [k / 100 for k in range(1, 100)])
@pytest.mark.parametrize("q", [0.75, 1.0, 1.25])
def test_fano_grid(p_c, q):
    check = fano_check(BinaryChannel(p_c=p_c), q)
    assert check.rhs - check.lhs >= -1e-12
    assert check.holds


def test_fano_half_matches_conditional():
    check = fano_check(BinaryChannel(p_c=0.5), 1.0)
    assert check.lhs == pytest.approx(W_HALF - W_QUARTER, abs=1e-12)
    assert check.holds


def test_gllp_limits():
    zero = gllp_rates(GLLPParams(q_mu=0.1, e_mu=0.0, q_1=0.08, e_1=0.0))
    assert zero.rate_entropy == pytest.approx(0.04)
    assert zero.rate_disentropy == pytest.approx(0.04)
    half = gllp_rates(GLLPParams(q_mu=0.1, e_mu=0.5, q_1=0.08, e_1=0.5))
    assert half.rate_entropy == pytest.approx(-0.05)
    assert half.rate_disentropy == pytest.approx(-0.05, abs=1e-12)


def test_gllp_reports_gap():
    rates = gllp_rates(GLLPParams(q_mu=0.1, e_mu=0.05, q_1=0.08, e_1=0.03))
    h = lambda x: -x * math.log2(x) - (1 - x) * math.log2(1 - x)
    assert rates.rate_entropy == pytest.approx(0.5 * (-0.1 * h(0.05) + 0.08 * (1 - h(0.03))))
    expected = 0.5 * (-0.1 * (1 - binary_normalized_disentropy(0.05)) + 0.08 * binary_normalized_disentropy(0.03))
    assert rates.rate_disentropy == pytest.approx(expected)
    assert rates.relative_gap is not None and rates.relative_gap >= 0
