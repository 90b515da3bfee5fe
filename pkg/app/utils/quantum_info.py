"""
Quantum disentropy of small density matrices.

Spectral disentropy, partial traces, bipartite mutual and conditional forms,
concurrence and three-tangle based disentanglement, monogamy, the
Holevo-type and channel Fano checkers, and disentropy discord.
"""
import logging
import math
from typing import Literal, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.stats import unitary_group

from app.config import get_settings
from app.exceptions import DomainError, OutOfRange
from app.models import (
    POVM,
    BipartiteReport,
    BipartiteState,
    ChannelFanoReport,
    DeformationParams,
    DensityMatrix,
    DiscordReport,
    Ensemble,
    HolevoReport,
    JointDist,
    KrausChannel,
    MonogamyReport,
    RandomnessReport,
)
from app.utils.disentropy_core import (
    RelativeVariant,
    degree_of_randomness,
    disentropy,
    mutual_disentropy,
    relative_disentropy,
)
from app.utils.special_functions import wq

logger = logging.getLogger(__name__)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
YY = np.kron(SIGMA_Y, SIGMA_Y)

CorrelationKind = Literal["concurrence_eq56", "tangle_eq60", "schmidt_eq52"]


def _spectrum(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, descending, round-off negatives clamped."""
    vals = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return np.clip(vals, 0.0, None)[::-1]


def _check_dim(dim: int) -> None:
    limit = get_settings().max_matrix_dim
    if dim > limit:
        raise DomainError(f"Matrix dimension {dim} exceeds the configured limit {limit}")


def spectrum_disentropy(m: np.ndarray, q: float) -> float:
    """sum lambda^q W_q(lambda) over the spectrum of a Hermitian matrix."""
    return disentropy(_spectrum(m), DeformationParams(q=q))


def quantum_disentropy(rho: DensityMatrix, q: float) -> float:
    """
    Quantum disentropy D_q(rho) = sum lambda_n^q W_q(lambda_n).

    Args:
        rho: Density matrix
        q: Tsallis index

    Returns:
        float: W_q(1) for a pure state, smaller for mixed states
    """
    _check_dim(rho.dim)
    return disentropy(rho.eigenvalues, DeformationParams(q=q))


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem not listed in keep."""
    dims = list(dims)
    n = len(dims)
    t = np.asarray(m).reshape(dims + dims)
    for ax in reversed(range(n)):
        if ax not in keep:
            t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    d = int(np.prod([dims[k] for k in sorted(keep)])) if keep else 1
    return t.reshape(d, d)


def bipartite_disentropies(st: BipartiteState, q: float) -> BipartiteReport:
    """
    Marginal, joint, mutual and conditional disentropies of a bipartite state.

    mutual = D(A) + D(B) - D(AB); conditional = D(AB) - D(B).
    """
    m = st.joint.entries
    dims = (st.dim_a, st.dim_b)
    d_a = spectrum_disentropy(partial_trace(m, dims, [0]), q)
    d_b = spectrum_disentropy(partial_trace(m, dims, [1]), q)
    d_ab = quantum_disentropy(st.joint, q)
    mutual = d_a + d_b - d_ab
    if mutual < -1e-12:
        logger.warning(f"Negative quantum mutual disentropy {mutual:.6g} at q={q}; spectrum {st.joint.eigenvalues.tolist()}")
    return BipartiteReport(d_a=d_a, d_b=d_b, d_ab=d_ab, mutual=mutual, cond_a_given_b=d_ab - d_b)


def quantum_relative_disentropy(
    rho: DensityMatrix,
    gamma: DensityMatrix,
    q: float,
    variant: RelativeVariant = "abs_diff",
) -> float:
    """Relative disentropy over the two spectra, each sorted descending."""
    if rho.dim != gamma.dim:
        raise DomainError(f"Dimensions differ: {rho.dim} vs {gamma.dim}")
    return relative_disentropy(rho.eigenvalues, gamma.eigenvalues, DeformationParams(q=q), variant)


def quantum_degree_of_randomness(rho: DensityMatrix, q: float) -> RandomnessReport:
    """Normalized quantum entropy minus normalized quantum disentropy."""
    return degree_of_randomness(rho.eigenvalues, q)


# Entanglement

def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence max(0, mu_1 - mu_2 - mu_3 - mu_4) of a two-qubit state."""
    if rho.dim != 4:
        raise DomainError(f"Concurrence needs a two-qubit state, got dimension {rho.dim}")
    return _concurrence(rho.entries)


def _concurrence(m: np.ndarray) -> float:
    root = _psd_sqrt(m)
    tilde = YY @ m.conj() @ YY
    mu = np.sqrt(np.clip(np.linalg.eigvalsh(root @ tilde @ root), 0.0, None))[::-1]
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def disentanglement(correlation: float, q: float, kind: CorrelationKind = "concurrence_eq56") -> float:
    """
    Disentanglement from a correlation measure.

    concurrence_eq56 and tangle_eq60 take C or tau_3 and use the eigenvalues
    1/2 +- sqrt(1 - x)/2; schmidt_eq52 takes the largest Schmidt weight
    lambda_0 of a pure state.

    Raises:
        OutOfRange: correlation outside [0, 1]
    """
    if not 0.0 <= correlation <= 1.0:
        raise OutOfRange(f"Correlation must lie in [0, 1], got {correlation}")
    if kind == "schmidt_eq52":
        lam = np.array([correlation, 1.0 - correlation])
    elif kind in ("concurrence_eq56", "tangle_eq60"):
        s = 0.5 * math.sqrt(1.0 - correlation)
        lam = np.array([0.5 + s, 0.5 - s])
    else:
        raise DomainError(f"Unknown correlation kind '{kind}'")
    return disentropy(lam, DeformationParams(q=q))


def three_tangle(psi: Sequence[complex]) -> float:
    """Three-tangle 4|d1 - 2 d2 + 4 d3| of a pure three-qubit state."""
    a = np.asarray(psi, dtype=complex).reshape(-1)
    if a.size != 8:
        raise DomainError(f"Three-tangle needs 8 amplitudes, got {a.size}")
    a = a / np.linalg.norm(a)
    c = a.reshape(2, 2, 2)
    d1 = (c[0, 0, 0] ** 2 * c[1, 1, 1] ** 2 + c[0, 0, 1] ** 2 * c[1, 1, 0] ** 2
          + c[0, 1, 0] ** 2 * c[1, 0, 1] ** 2 + c[1, 0, 0] ** 2 * c[0, 1, 1] ** 2)
    d2 = (c[0, 0, 0] * c[1, 1, 1] * c[0, 1, 1] * c[1, 0, 0]
          + c[0, 0, 0] * c[1, 1, 1] * c[1, 0, 1] * c[0, 1, 0]
          + c[0, 0, 0] * c[1, 1, 1] * c[1, 1, 0] * c[0, 0, 1]
          + c[0, 1, 1] * c[1, 0, 0] * c[1, 0, 1] * c[0, 1, 0]
          + c[0, 1, 1] * c[1, 0, 0] * c[1, 1, 0] * c[0, 0, 1]
          + c[1, 0, 1] * c[0, 1, 0] * c[1, 1, 0] * c[0, 0, 1])
    d3 = (c[0, 0, 0] * c[1, 1, 0] * c[1, 0, 1] * c[0, 1, 1]
          + c[1, 1, 1] * c[0, 0, 1] * c[0, 1, 0] * c[1, 0, 0])
    return float(min(1.0, 4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3)))


def monogamy_check(psi: Sequence[complex], q: float) -> MonogamyReport:
    """
    Monogamy of disentanglement for a pure three-qubit state.

    One-vs-two cuts use the spectrum of the single-qubit marginal; pairs use
    the concurrence of the two-qubit marginal.
    """
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.size != 8:
        raise DomainError(f"Monogamy check needs 8 amplitudes, got {v.size}")
    v = v / np.linalg.norm(v)
    rho = np.outer(v, v.conj())
    dims = (2, 2, 2)

    def cut(k: int) -> float:
        lam = _spectrum(partial_trace(rho, dims, [k]))
        return disentanglement(float(min(1.0, lam[0])), q, "schmidt_eq52")

    def pair(i: int, j: int) -> float:
        c = min(1.0, _concurrence(partial_trace(rho, dims, [i, j])))
        return disentanglement(c, q, "concurrence_eq56")

    d_a, d_b, d_c = cut(0), cut(1), cut(2)
    d_ab, d_ac, d_bc = pair(0, 1), pair(0, 2), pair(1, 2)
    slack = 1e-9
    checks = (d_a <= d_ab + d_ac + slack, d_b <= d_ab + d_bc + slack, d_c <= d_ac + d_bc + slack)
    if not all(checks):
        logger.warning(f"Monogamy violated at q={q} for state {v.tolist()}")
    return MonogamyReport(d_a_bc=d_a, d_b_ac=d_b, d_c_ab=d_c, d_ab=d_ab, d_ac=d_ac, d_bc=d_bc, checks=checks)


# Ensembles and channels

def holevo_disentropy_check(ens: Ensemble, povm: POVM, q: float) -> HolevoReport:
    """
    Mutual disentropy of the measured ensemble against sum p_i D(rho_i) - D(sum p_i rho_i).

    The outcome is reported, not enforced.
    """
    dim = ens.states[0].dim
    if povm.elements[0].shape[0] != dim:
        raise DomainError(f"POVM acts on dimension {povm.elements[0].shape[0]}, states on {dim}")
    probs = ens.probs.array
    joint = np.array([[p * float(np.real(np.trace(e @ s.entries))) for e in povm.elements]
                      for p, s in zip(probs, ens.states)])
    joint = np.clip(joint, 0.0, None)
    joint = joint / joint.sum()
    params = DeformationParams(q=q)
    lhs = mutual_disentropy(JointDist.from_array(joint), params)
    average = sum(p * s.entries for p, s in zip(probs, ens.states))
    rhs = math.fsum(p * quantum_disentropy(s, q) for p, s in zip(probs, ens.states)) - spectrum_disentropy(average, q)
    satisfied = lhs <= rhs + 1e-12
    logger.debug(f"Holevo-type check: lhs={lhs:.6g}, rhs={rhs:.6g}, satisfied={satisfied}")
    return HolevoReport(lhs_mutual=lhs, rhs_bound=rhs, satisfied=satisfied)


def apply_channel(ch: KrausChannel, rho: np.ndarray, dims: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Kraus sum on the whole state, or on the first factor when dims is given."""
    if dims is None:
        return sum(k @ rho @ k.conj().T for k in ch.kraus_ops)
    eye = np.eye(dims[1])
    out = np.zeros_like(rho, dtype=complex)
    for k in ch.kraus_ops:
        big = np.kron(k, eye)
        out += big @ rho @ big.conj().T
    return out


def channel_fano_check(psi_ab: Sequence[complex], ch: KrausChannel, q: float) -> ChannelFanoReport:
    """
    Quantum Fano bound D_q(rho_o) <= D_q({F, 1-F}) + (1-F)^q W_q(d^2 - 1).

    rho_o is the channel acting on A of the purification psi_ab and F its
    entanglement fidelity. The outcome is reported, not enforced.
    """
    v = np.asarray(psi_ab, dtype=complex).reshape(-1)
    d = ch.dim
    if v.size != d * d:
        raise DomainError(f"State of size {v.size} does not purify a {d}-dimensional system")
    v = v / np.linalg.norm(v)
    rho_o = apply_channel(ch, np.outer(v, v.conj()), (d, d))
    fidelity = float(np.clip(np.real(v.conj() @ rho_o @ v), 0.0, 1.0))
    d_exchange = spectrum_disentropy(rho_o, q)
    rhs = disentropy([fidelity, 1.0 - fidelity], DeformationParams(q=q))
    if fidelity < 1.0:
        rhs += (1.0 - fidelity) ** q * float(wq(float(d * d - 1), q))
    satisfied = d_exchange <= rhs + 1e-12
    logger.debug(f"Channel Fano check: D={d_exchange:.6g}, rhs={rhs:.6g}, F={fidelity:.6g}")
    return ChannelFanoReport(d_exchange=d_exchange, rhs=rhs, fidelity=fidelity, satisfied=satisfied)


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel(kraus_ops=[np.eye(d)])


def bit_flip_channel(p: float) -> KrausChannel:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Flip probability must lie in [0, 1], got {p}")
    return KrausChannel(kraus_ops=[math.sqrt(1.0 - p) * np.eye(2), math.sqrt(p) * SIGMA_X])


def depolarizing_channel(p: float, d: int = 2) -> KrausChannel:
    """rho -> (1 - p) rho + p I/d through the d^2 clock-and-shift operators."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Depolarizing probability must lie in [0, 1], got {p}")
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    ops = []
    for a in range(d):
        for b in range(d):
            weight = 1.0 - p + p / d ** 2 if a == b == 0 else p / d ** 2
            ops.append(math.sqrt(weight) * np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b))
    return KrausChannel(kraus_ops=ops)


# Discord

def projector_pair(theta: float, phi: float) -> Tuple[np.ndarray, np.ndarray]:
    """Rank-1 projectors onto the Bloch direction (theta, phi) and its antipode."""
    up = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
    down = np.array([-np.exp(-1j * phi) * math.sin(theta / 2), math.cos(theta / 2)])
    return np.outer(up, up.conj()), np.outer(down, down.conj())


def measured_conditional(m: np.ndarray, q: float, theta: float, phi: float) -> float:
    """sum_j p_j D_q(rho_A^j) after projecting B onto the (theta, phi) basis."""
    total = []
    for proj in projector_pair(theta, phi):
        big = np.kron(np.eye(2), proj)
        post = big @ m @ big
        p_j = float(np.real(np.trace(post)))
        if p_j < 1e-14:
            continue
        rho_a = partial_trace(post, (2, 2), [0]) / p_j
        total.append(p_j * spectrum_disentropy(rho_a, q))
    return math.fsum(total)


def discord_disentropy(st: BipartiteState, q: float, search: Optional[int] = None) -> DiscordReport:
    """
    Disentropy discord D(A:B) - max J over projective measurements on B.

    J = D(A) - sum_j p_j D(rho_A^j). The maximum is taken on a (theta, phi)
    grid and refined locally; refinement only replaces the grid optimum when
    it improves on it.
    """
    if (st.dim_a, st.dim_b) != (2, 2):
        raise DomainError("Discord is implemented for two-qubit states")
    n = search or get_settings().discord_grid
    m = st.joint.entries
    report = bipartite_disentropies(st, q)

    thetas = np.linspace(0.0, np.pi, n + 1)
    phis = np.linspace(0.0, 2.0 * np.pi, 2 * n, endpoint=False)
    best = (math.inf, 0.0, 0.0)
    for theta in thetas:
        for phi in phis:
            value = measured_conditional(m, q, float(theta), float(phi))
            if value < best[0]:
                best = (value, float(theta), float(phi))

    result = minimize(lambda x: measured_conditional(m, q, x[0], x[1]), x0=[best[1], best[2]], method="Nelder-Mead",
                      options={"xatol": 1e-10, "fatol": 1e-14})
    if result.fun < best[0]:
        best = (float(result.fun), float(result.x[0]), float(result.x[1]))

    best_j = report.d_a - best[0]
    return DiscordReport(mutual=report.mutual, best_j=best_j, discord=report.mutual - best_j, theta=best[1], phi=best[2])


# Random states

def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Ginibre-distributed density matrix of the given rank (full by default)."""
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    m = g @ g.conj().T
    return DensityMatrix(entries=m / np.trace(m).real)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary."""
    return unitary_group.rvs(dim, random_state=rng)
