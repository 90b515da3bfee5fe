"""Tests for quantum disentropy, entanglement measures and checkers."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.exceptions import DomainError, OutOfRange
from app.models import POVM, BipartiteState, DensityMatrix, Ensemble, ProbDist
from app.utils.quantum_info import (
    bipartite_disentropies,
    bit_flip_channel,
    channel_fano_check,
    concurrence,
    depolarizing_channel,
    disentanglement,
    discord_disentropy,
    holevo_disentropy_check,
    identity_channel,
    measured_conditional,
    monogamy_check,
    partial_trace,
    quantum_degree_of_randomness,
    quantum_disentropy,
    quantum_relative_disentropy,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    three_tangle,
)
from app.utils.special_functions import lambert_w
from tests.oracles import werner_concurrence

W_HALF = 0.351733711249196
W_ONE = 0.5671432904097838
BELL = np.array([1, 0, 0, 1]) / math.sqrt(2)
GHZ = np.array([1, 0, 0, 0, 0, 0, 0, 1]) / math.sqrt(2)
W_STATE = np.array([0, 1, 1, 0, 1, 0, 0, 0]) / math.sqrt(3)
PRODUCT3 = np.eye(8)[0]


def _bell_state():
    return BipartiteState(joint=DensityMatrix.from_ket(BELL), dim_a=2, dim_b=2)


def _werner(p):
    return DensityMatrix(entries=p * np.outer(BELL, BELL) + (1 - p) * np.eye(4) / 4)


def test_quantum_disentropy_examples(rng):
    assert quantum_disentropy(DensityMatrix.from_ket(random_pure_state(3, rng)), 2.0) == pytest.approx(0.5)
    assert quantum_disentropy(DensityMatrix.diagonal([0.5, 0.5]), 1.0) == pytest.approx(W_HALF, abs=1e-12)
    expected = 0.7 * lambert_w(0.7) + 0.3 * lambert_w(0.3)
    assert quantum_disentropy(DensityMatrix.diagonal([0.7, 0.3]), 1.0) == pytest.approx(expected, abs=1e-12)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(entries=[[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(ValueError):
        DensityMatrix(entries=np.diag([1.2, -0.2]))


def test_unitary_invariance(rng):
    for dim in (2, 3, 4):
        rho = random_density_matrix(dim, rng)
        u = random_unitary(dim, rng)
        rotated = DensityMatrix(entries=u @ rho.entries @ u.conj().T)
        for q in (0.5, 1.0, 2.0):
            assert quantum_disentropy(rotated, q) == pytest.approx(quantum_disentropy(rho, q), abs=1e-10)


def test_partial_trace_of_product(rng):
    a = random_density_matrix(2, rng).entries
    b = random_density_matrix(3, rng).entries
    joint = np.kron(a, b)
    assert np.allclose(partial_trace(joint, (2, 3), [0]), a)
    assert np.allclose(partial_trace(joint, (2, 3), [1]), b)
    c = random_density_matrix(2, rng).entries
    triple = np.kron(joint, c)
    assert np.allclose(partial_trace(triple, (2, 3, 2), [0, 2]), np.kron(a, c))


def test_bipartite_examples():
    product = BipartiteState(joint=DensityMatrix.from_ket(np.kron([1, 0], [0, 1])), dim_a=2, dim_b=2)
    report = bipartite_disentropies(product, 2.0)
    assert (report.d_a, report.d_b, report.d_ab) == pytest.approx((0.5, 0.5, 0.5))
    assert report.mutual == pytest.approx(0.5)

    bell = bipartite_disentropies(_bell_state(), 1.0)
    assert bell.d_ab == pytest.approx(W_ONE, abs=1e-12)
    assert bell.d_a == pytest.approx(W_HALF, abs=1e-12)
    assert bell.mutual == pytest.approx(0.136324, abs=1e-6)
    assert bell.cond_a_given_b == pytest.approx(0.215409, abs=1e-6)


def test_mutual_nonnegative_for_qubits(rng):
    for _ in range(1000):
        st_ = BipartiteState(joint=random_density_matrix(4, rng), dim_a=2, dim_b=2)
        assert bipartite_disentropies(st_, 1.0).mutual >= -1e-12


def test_relative_examples():
    pure = DensityMatrix.diagonal([1.0, 0.0])
    mixed = DensityMatrix.diagonal([0.5, 0.5])
    for variant in ("abs_diff", "signed_diff", "of_diff", "of_abs_diff"):
        assert quantum_relative_disentropy(mixed, mixed, 1.5, variant) == pytest.approx(0.0, abs=1e-14)
    assert quantum_relative_disentropy(pure, mixed, 2.0, "abs_diff") == pytest.approx(0.5 - 1.0 / 3.0)
    assert quantum_relative_disentropy(pure, mixed, 2.0, "signed_diff") == pytest.approx(0.5 - 1.0 / 3.0)


def test_concurrence_examples():
    assert concurrence(DensityMatrix.from_ket(BELL)) == pytest.approx(1.0, abs=1e-9)
    assert concurrence(DensityMatrix.from_ket(np.kron([1, 0], [0.6, 0.8]))) == pytest.approx(0.0, abs=1e-7)
    for p in (0.2, 0.5, 0.8, 1.0):
        assert concurrence(_werner(p)) == pytest.approx(werner_concurrence(p), abs=1e-7)
    with pytest.raises(DomainError):
        concurrence(DensityMatrix.diagonal([0.5, 0.5]))


def test_disentanglement_examples():
    assert disentanglement(0.0, 2.0) == pytest.approx(0.5)
    assert disentanglement(1.0, 2.0) == pytest.approx(1.0 / 6.0)
    assert disentanglement(1.0, 1.5, "schmidt_eq52") == pytest.approx(disentanglement(0.0, 1.5, "concurrence_eq56"))
    assert disentanglement(0.0, 1.5, "schmidt_eq52") == pytest.approx(disentanglement(0.0, 1.5, "tangle_eq60"))
    with pytest.raises(OutOfRange):
        disentanglement(1.2, 1.0)


def test_three_tangle_examples():
    assert three_tangle(GHZ) == pytest.approx(1.0)
    assert three_tangle(W_STATE) == pytest.approx(0.0, abs=1e-15)
    assert three_tangle(PRODUCT3) == pytest.approx(0.0, abs=1e-15)


def test_three_tangle_range(rng):
    for _ in range(200):
        assert 0.0 <= three_tangle(random_pure_state(8, rng)) <= 1.0


@pytest.mark.parametrize("psi", [GHZ, W_STATE, PRODUCT3])
def test_monogamy_examples(psi):
    assert monogamy_check(psi, 2.0).all_hold


@pytest.mark.parametrize("q", [1.0, 2.0])
def test_monogamy_random(q, rng):
    for _ in range(1000):
        assert monogamy_check(random_pure_state(8, rng), q).all_hold


def test_holevo_identical_states(rng):
    rho = random_density_matrix(2, rng)
    ens = Ensemble(probs=ProbDist.from_array([0.3, 0.7]), states=[rho, rho])
    povm = POVM(elements=[np.diag([1, 0]), np.diag([0, 1])])
    report = holevo_disentropy_check(ens, povm, 1.0)
    assert report.rhs_bound == pytest.approx(0.0, abs=1e-12)


def test_holevo_orthogonal_states():
    ens = Ensemble(probs=ProbDist.uniform(2), states=[DensityMatrix.diagonal([1, 0]), DensityMatrix.diagonal([0, 1])])
    povm = POVM(elements=[np.diag([1, 0]), np.diag([0, 1])])
    report = holevo_disentropy_check(ens, povm, 1.0)
    assert report.lhs_mutual == pytest.approx(W_HALF, abs=1e-12)
    assert report.rhs_bound == pytest.approx(W_ONE - W_HALF, abs=1e-12)
    assert report.satisfied is False


def test_channel_fano_identity():
    report = channel_fano_check(BELL, identity_channel(2), 1.5)
    assert report.fidelity == pytest.approx(1.0)
    assert report.d_exchange == pytest.approx(report.rhs, abs=1e-9)


@pytest.mark.parametrize("channel, q", [(depolarizing_channel(1.0), 2.0), (bit_flip_channel(0.1), 1.0)])
def test_channel_fano_reports(channel, q):
    report = channel_fano_check(BELL, channel, q)
    assert 0.0 <= report.fidelity <= 1.0
    assert np.isfinite(report.d_exchange) and np.isfinite(report.rhs)


def test_depolarizing_fully_mixes():
    ch = depolarizing_channel(1.0, 3)
    rho = np.diag([1.0, 0.0, 0.0]).astype(complex)
    out = sum(k @ rho @ k.conj().T for k in ch.kraus_ops)
    assert np.allclose(out, np.eye(3) / 3)


def test_discord_product_state(rng):
    a = random_density_matrix(2, rng).entries
    b = random_density_matrix(2, rng).entries
    st_ = BipartiteState(joint=DensityMatrix(entries=np.kron(a, b)), dim_a=2, dim_b=2)
    d_a = quantum_disentropy(DensityMatrix(entries=a), 1.0)
    for theta, phi in [(0.0, 0.0), (1.0, 2.0), (2.5, 4.0)]:
        assert measured_conditional(st_.joint.entries, 1.0, theta, phi) == pytest.approx(d_a, abs=1e-12)
    assert discord_disentropy(st_, 1.0, search=8).best_j == pytest.approx(0.0, abs=1e-12)


def test_discord_maximally_mixed():
    st_ = BipartiteState(joint=DensityMatrix(entries=np.eye(4) / 4), dim_a=2, dim_b=2)
    for theta, phi in [(0.0, 0.0), (1.3, 0.4)]:
        assert measured_conditional(st_.joint.entries, 1.0, theta, phi) == pytest.approx(W_HALF, abs=1e-12)


def test_discord_bell_stable_under_refinement():
    coarse = discord_disentropy(_bell_state(), 1.0, search=64)
    fine = discord_disentropy(_bell_state(), 1.0, search=128)
    assert abs(coarse.discord - fine.discord) < 1e-4
    assert coarse.best_j == pytest.approx(W_HALF - W_ONE, abs=1e-9)


def test_discord_refinement_never_decreases(rng):
    st_ = BipartiteState(joint=random_density_matrix(4, rng), dim_a=2, dim_b=2)
    report = discord_disentropy(st_, 1.0, search=16)
    grid_best = max(
        quantum_disentropy(DensityMatrix(entries=partial_trace(st_.joint.entries, (2, 2), [0])), 1.0)
        - measured_conditional(st_.joint.entries, 1.0, float(t), float(p))
        for t in np.linspace(0, np.pi, 17) for p in np.linspace(0, 2 * np.pi, 32, endpoint=False)
    )
    assert report.best_j >= grid_best - 1e-12


def test_quantum_degree_of_randomness():
    assert quantum_degree_of_randomness(DensityMatrix.from_ket([1, 0]), 2.0).r == pytest.approx(-1.0)
    assert quantum_degree_of_randomness(DensityMatrix(entries=np.eye(3) / 3), 2.0).r == pytest.approx(1.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.5, 1.0, 1.5]))
def test_disentropy_bounds_property(seed, q):
    rho = random_density_matrix(3, np.random.default_rng(seed))
    d = quantum_disentropy(rho, q)
    low = quantum_disentropy(DensityMatrix(entries=np.eye(3) / 3), q)
    assert low - 1e-12 <= d <= quantum_disentropy(DensityMatrix.diagonal([1, 0, 0]), q) + 1e-12
