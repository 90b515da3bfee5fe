"""
Operational classical information theory with disentropy.

Typical sequences, source-coding bounds, binary symmetric channel
capacities, the Fano inequality and the GLLP key rate.
"""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from app.config import get_settings
from app.exceptions import DomainError, EmptySequence
from app.models import (
    BinaryChannel,
    ChannelReport,
    Code,
    DeformationParams,
    GLLPParams,
    InequalityCheck,
    JointDist,
    KeyRates,
    SequenceStats,
    Source,
    SourceCodingReport,
    TypicalityReport,
)
from app.utils.disentropy_core import (
    disentropy,
    mutual_disentropy,
    normalized_disentropy,
    shannon_entropy,
)
from app.utils.special_functions import r_lambda, wq

logger = logging.getLogger(__name__)

R2 = DeformationParams(lambda_base=2.0)


def _r2_disentropy(p) -> float:
    return disentropy(p, R2, "shannon_r2")


def _r2_normalized(p, K: Optional[int] = None) -> float:
    return normalized_disentropy(p, R2, "shannon_r2", K)


def empirical_stats(seq: SequenceStats) -> Tuple[float, float]:
    """
    Entropy and disentropy of a sequence's relative frequencies.

    Returns:
        (h_bar, d_bar): -sum f log2 f and sum f R_2(f)

    Raises:
        EmptySequence: the sequence has no symbols
    """
    if seq.n == 0:
        raise EmptySequence("Sequence statistics need at least one symbol")
    freqs = np.asarray(seq.counts, dtype=float) / seq.n
    return shannon_entropy(freqs, 2.0), _r2_disentropy(freqs)


def sample_sequence_stats(src: Source, n: int, rng: np.random.Generator) -> SequenceStats:
    """Counts of n i.i.d. symbols drawn from the source."""
    counts = rng.multinomial(n, src.probs.array)
    return SequenceStats(counts=tuple(int(c) for c in counts))


def typical_fraction(src: Source, n: int) -> float:
    """Fraction of typical sequences 2^(-n log2|X| D_norm(X))."""
    k = src.cardinality
    return 2.0 ** (-n * math.log2(k) * _r2_normalized(src.probs.array, k))


def typicality(seq: SequenceStats, src: Source, delta: float) -> TypicalityReport:
    """
    Disentropy-based delta-typicality of a sequence.

    The sequence is typical when |D(X) - D_bar| <= delta. Cardinality bounds
    take the vanishing-epsilon form 2^(n(H -/+ delta)).
    """
    if len(seq.counts) != src.cardinality:
        raise DomainError(f"Sequence has {len(seq.counts)} symbols, source has {src.cardinality}")
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    _, d_bar = empirical_stats(seq)
    d_source = _r2_disentropy(src.probs.array)
    h = shannon_entropy(src.probs.array, 2.0)
    n = seq.n
    log2_bounds = (n * (h - delta), n * (h + delta))
    with np.errstate(over="ignore"):
        lo, hi = np.exp2(log2_bounds)
    return TypicalityReport(
        is_typical=abs(d_source - d_bar) <= delta,
        card_bounds=(float(lo), float(hi)),
        log2_card_bounds=log2_bounds,
        typical_fraction=typical_fraction(src, n),
        d_source=d_source,
        d_bar=d_bar,
    )


def exact_typical_fraction(src: Source, n: int, delta: float) -> float:
    """
    Exact |T_delta| / |X|^n by enumerating count vectors.

    Each count vector stands for n!/prod(n_i!) sequences. Feasible for
    |X| <= 4 and n <= 20.
    """
    k = src.cardinality
    if k > 4 or n > 20:
        raise DomainError(f"Exact enumeration limited to |X| <= 4 and n <= 20, got |X| = {k}, n = {n}")
    d_source = _r2_disentropy(src.probs.array)
    typical = 0
    for counts in _compositions(n, k):
        freqs = np.asarray(counts, dtype=float) / n
        if abs(_r2_disentropy(freqs) - d_source) <= delta:
            typical += _multinomial(n, counts)
    return typical / float(k ** n)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _multinomial(n: int, counts) -> int:
    out = math.factorial(n)
    for c in counts:
        out //= math.factorial(c)
    return out


def source_coding_bounds(src: Source, code: Code) -> SourceCodingReport:
    """
    Shannon window H <= <L> <= H + 1 and its disentropy counterparts.

    Returns the lower bound ceil(log2|X|)(1 - D_norm) for the worst code and
    the efficiency window [D_norm - 1/log2|X|, D_norm].
    """
    k = src.cardinality
    if len(code.lengths) != k:
        raise DomainError(f"Code has {len(code.lengths)} codewords, source has {k} symbols")
    h = shannon_entropy(src.probs.array, 2.0)
    d_norm = _r2_normalized(src.probs.array, k)
    log_k = math.log2(k)
    return SourceCodingReport(
        mean_length=code.mean_length(src.probs),
        shannon_lo=h,
        shannon_hi=h + 1.0,
        disent_lo=math.ceil(log_k) * (1.0 - d_norm),
        lambda_window=(d_norm - 1.0 / log_k, d_norm),
        efficiency=code.efficiency(src.probs),
        d_norm=d_norm,
    )


# Binary symmetric channel

def bsc_joint(p0: float, p_c: float) -> JointDist:
    """Joint input/output distribution of the binary symmetric channel."""
    p1 = 1.0 - p0
    return JointDist.from_array(np.array([
        [p0 * (1.0 - p_c), p0 * p_c],
        [p1 * p_c, p1 * (1.0 - p_c)],
    ]))


def shannon_mutual_information(j: JointDist) -> float:
    m = j.array
    return (shannon_entropy(m.sum(axis=1), 2.0) + shannon_entropy(m.sum(axis=0), 2.0)
            - shannon_entropy(m.reshape(-1), 2.0))


def bsc_capacity(p_c: float) -> float:
    """C = 1 + (1-p_c) log2(1-p_c) + p_c log2(p_c)."""
    return 1.0 - shannon_entropy([p_c, 1.0 - p_c], 2.0)


def bsc_disentropy_capacity(p_c: float, q: float) -> float:
    """Closed form of the minimal mutual disentropy, reached at p0 = 1/2."""
    a, b = 1.0 - p_c, p_c
    out = 4.0 / 2.0 ** q * float(wq(0.5, q))
    if a > 0:
        out -= a ** q / 2.0 ** (q - 1.0) * float(wq(a / 2.0, q))
    if b > 0:
        out -= b ** q / 2.0 ** (q - 1.0) * float(wq(b / 2.0, q))
    return out


def bounded_minimize(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Minimizer of a unimodal f on [lo, hi] to absolute tolerance tol (bounded Brent)."""
    result = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": tol, "maxiter": 500})
    return float(result.x)


def minimize_input_prior(ch: BinaryChannel, q: float, tol: Optional[float] = None, grid: Optional[int] = None) -> float:
    """
    Input prior p0 minimizing D_q(X:Y).

    Bounded Brent search, checked against a uniform grid scan; when the
    grid finds a lower value the search is repeated around that point.
    """
    settings = get_settings()
    tol = tol or settings.capacity_tolerance
    grid = grid or settings.capacity_grid
    params = DeformationParams(q=q)

    def objective(p0: float) -> float:
        return mutual_disentropy(bsc_joint(p0, ch.p_c), params)

    best = bounded_minimize(objective, 0.0, 1.0, tol)
    xs = np.linspace(0.0, 1.0, grid + 1)
    values = np.array([objective(float(x)) for x in xs])
    i = int(np.argmin(values))
    if values[i] < objective(best) - 1e-12:
        logger.warning(f"Mutual disentropy not unimodal for p_c={ch.p_c}, q={q}; refining near p0={xs[i]}")
        lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, grid)]
        best = bounded_minimize(objective, float(lo), float(hi), tol)
    return best


def binary_channel_analysis(ch: BinaryChannel, q: float) -> ChannelReport:
    """Shannon and disentropy capacities of a binary symmetric channel."""
    params = DeformationParams(q=q)
    joint = bsc_joint(ch.p0, ch.p_c)
    return ChannelReport(
        joint=joint,
        shannon_mutual=shannon_mutual_information(joint),
        mutual_disent=mutual_disentropy(joint, params),
        c_shannon=bsc_capacity(ch.p_c),
        c_q=bsc_disentropy_capacity(ch.p_c, q),
        argmin_p0=minimize_input_prior(ch, q),
    )


def fano_check(ch: BinaryChannel, q: float, cardinality: int = 2) -> InequalityCheck:
    """
    Disentropic Fano inequality for the binary symmetric channel at p0 = 1/2.

    lhs is D_q(X|Y); rhs is D_q(e) + p_e^q W_q(|X| - 1) with p_e = p_c.
    """
    if cardinality < 2:
        raise DomainError(f"Alphabet cardinality must be >= 2, got {cardinality}")
    p_c = ch.p_c
    params = DeformationParams(q=q)
    lhs = 2.0 * 0.5 ** q * float(wq(0.5, q))
    for x in (0.5 * (1.0 - p_c), 0.5 * p_c):
        if x > 0:
            lhs -= 2.0 * x ** q * float(wq(x, q))
    rhs = disentropy([p_c, 1.0 - p_c], params)
    if p_c > 0:
        rhs += p_c ** q * float(wq(float(cardinality - 1), q))
    return InequalityCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-12)


def binary_normalized_disentropy(x: float) -> float:
    """[x R_2(x) + (1-x) R_2(1-x) - R_2(1/2)] / [R_2(1) - R_2(1/2)]."""
    half = float(r_lambda(0.5, 2.0))
    one = float(r_lambda(1.0, 2.0))
    return (_r2_disentropy([x, 1.0 - x]) - half) / (one - half)


def gllp_rates(p: GLLPParams) -> KeyRates:
    """GLLP key rate in its entropy form and its disentropy rewrite."""
    h_mu = shannon_entropy([p.e_mu, 1.0 - p.e_mu], 2.0)
    h_1 = shannon_entropy([p.e_1, 1.0 - p.e_1], 2.0)
    rate_entropy = p.sigma * (-p.q_mu * h_mu + p.q_1 * (1.0 - h_1))
    rate_disentropy = p.sigma * (
        -p.q_mu * (1.0 - binary_normalized_disentropy(p.e_mu)) + p.q_1 * binary_normalized_disentropy(p.e_1)
    )
    gap = abs(rate_entropy - rate_disentropy) / abs(rate_entropy) if rate_entropy != 0 else None
    logger.debug(f"GLLP rates: entropy={rate_entropy:.6g}, disentropy={rate_disentropy:.6g}, gap={gap}")
    return KeyRates(rate_entropy=rate_entropy, rate_disentropy=rate_disentropy, relative_gap=gap)
