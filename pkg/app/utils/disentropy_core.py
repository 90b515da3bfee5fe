"""
Disentropy functionals of discrete probability distributions.

Implements the Tsallis-side D_q, the Shannon-side disentropy built on R_2,
the Kaniadakis D_kappa, their normalization, the joint, mutual, conditional
and relative forms, the entropy-disentropy decomposition and the degree of
randomness.
"""
import logging
import math
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np

from app.exceptions import DegenerateSupport, DomainError, OutOfRange
from app.models import (
    DeformationParams,
    Family,
    JointDist,
    NormalizationContext,
    ProbDist,
    RandomnessReport,
)
from app.utils.special_functions import ln_kappa, ln_q, r_lambda, wk, wq

logger = logging.getLogger(__name__)

DistLike = Union[ProbDist, Sequence[float], np.ndarray]
RelativeVariant = Literal["abs_diff", "signed_diff", "of_diff", "of_abs_diff"]

_NORM_TOL = 1e-12


def as_weights(p: DistLike) -> np.ndarray:
    """Weight vector of a ProbDist or of a raw array (assumed normalized)."""
    if isinstance(p, ProbDist):
        return p.array
    return np.asarray(p, dtype=float).reshape(-1)


def _params(params: Optional[DeformationParams], q: Optional[float] = None) -> DeformationParams:
    if params is None:
        return DeformationParams(q=1.0 if q is None else q)
    return params


def family_w(x: np.ndarray, params: DeformationParams, family: Family = "tsallis_q") -> np.ndarray:
    """The Lambert-type function selected by the family, principal branch."""
    if family == "tsallis_q":
        return np.atleast_1d(wq(x, params.q))
    if family == "shannon_r2":
        return np.atleast_1d(r_lambda(x, params.lambda_base))
    if family == "kaniadakis":
        return np.atleast_1d(wk(x, params.kappa))
    raise DomainError(f"Unknown disentropy family '{family}'")


def family_weight(p: np.ndarray, params: DeformationParams, family: Family = "tsallis_q") -> np.ndarray:
    """Prefactor p^q for the Tsallis family, p otherwise."""
    if family == "tsallis_q":
        return np.power(p, params.q)
    return p


def disentropy(p: DistLike, params: Optional[DeformationParams] = None, family: Family = "tsallis_q") -> float:
    """
    Disentropy of a discrete distribution.

    tsallis_q: sum p^q W_q(p); shannon_r2: sum p R_2(p); kaniadakis: sum p W_kappa(p).
    Zero-probability entries contribute 0.

    Args:
        p: Probability distribution
        params: Deformation indices (q, kappa, lambda_base)
        family: Which disentropy to evaluate

    Returns:
        float: The disentropy
    """
    params = _params(params)
    w = as_weights(p)
    support = w[w > 0]
    if support.size == 0:
        return 0.0
    terms = family_weight(support, params, family) * family_w(support, params, family)
    return math.fsum(terms)


def normalization_context(K: int, params: Optional[DeformationParams] = None, family: Family = "tsallis_q") -> NormalizationContext:
    """Uniform (minimum) and delta (maximum) disentropies over a K-point support."""
    params = _params(params)
    d_min = disentropy(np.full(K, 1.0 / K), params, family)
    d_max = disentropy(np.array([1.0]), params, family)
    return NormalizationContext(K=K, d_min=d_min, d_max=d_max, family=family, params=params)


def normalize_disentropy(d: float, ctx: NormalizationContext) -> float:
    """
    Map a disentropy onto [0, 1] as (d - d_min)/(d_max - d_min).

    Raises:
        DegenerateSupport: K = 1, where minimum and maximum coincide
        OutOfRange: d clearly outside [d_min, d_max] (context mismatch)
    """
    if ctx.K < 2 or ctx.d_max == ctx.d_min:
        raise DegenerateSupport(f"Normalization undefined for support size {ctx.K}")
    value = (d - ctx.d_min) / (ctx.d_max - ctx.d_min)
    if value < -1e-9 or value > 1.0 + 1e-9:
        raise OutOfRange(f"Disentropy {d} outside [{ctx.d_min}, {ctx.d_max}] of its context")
    if value < _NORM_TOL:
        return max(value, 0.0)
    return min(value, 1.0)


def normalized_disentropy(p: DistLike, params: Optional[DeformationParams] = None, family: Family = "tsallis_q", K: Optional[int] = None) -> float:
    """Disentropy of p normalized over a support of size K (default len(p))."""
    w = as_weights(p)
    ctx = normalization_context(K or w.size, params, family)
    return normalize_disentropy(disentropy(w, params, family), ctx)


# Joint forms

def joint_disentropy(j: JointDist, params: Optional[DeformationParams] = None, family: Family = "tsallis_q") -> float:
    """D_q(X, Y) over all joint outcomes."""
    return disentropy(j.array.reshape(-1), params, family)


def mutual_disentropy(j: JointDist, params: Optional[DeformationParams] = None, family: Family = "tsallis_q") -> float:
    """D_q(X:Y) = D_q(X) + D_q(Y) - D_q(X, Y)."""
    m = j.array
    return (disentropy(m.sum(axis=1), params, family) + disentropy(m.sum(axis=0), params, family)
            - joint_disentropy(j, params, family))


def conditional_disentropy(
    j: JointDist,
    params: Optional[DeformationParams] = None,
    direction: Literal["x_given_y", "y_given_x"] = "x_given_y",
    family: Family = "tsallis_q",
) -> float:
    """D_q(X|Y) = D_q(Y) - D_q(X, Y); may be negative."""
    m = j.array
    marginal = m.sum(axis=0) if direction == "x_given_y" else m.sum(axis=1)
    return disentropy(marginal, params, family) - joint_disentropy(j, params, family)


def relative_disentropy(
    p: DistLike,
    t: DistLike,
    params: Optional[DeformationParams] = None,
    variant: RelativeVariant = "abs_diff",
    family: Family = "tsallis_q",
) -> float:
    """
    Relative disentropy D_q(p||t) in one of four forms.

    abs_diff:     sum p^q |W(p) - W(t)|
    signed_diff:  sum p^q (W(p) - W(t))
    of_diff:      sum p^q W(p - t)
    of_abs_diff:  sum p^q W(|p - t|)

    Raises:
        DomainError: of_diff with p_k - t_k below the branch point
    """
    params = _params(params)
    pw = as_weights(p)
    tw = as_weights(t)
    if pw.shape != tw.shape:
        raise DomainError(f"Support sizes differ: {pw.size} vs {tw.size}")
    mask = pw > 0
    ps, ts = pw[mask], tw[mask]
    if ps.size == 0:
        return 0.0
    weight = family_weight(ps, params, family)
    if variant == "abs_diff":
        kernel = np.abs(family_w(ps, params, family) - family_w(ts, params, family))
    elif variant == "signed_diff":
        kernel = family_w(ps, params, family) - family_w(ts, params, family)
    elif variant == "of_diff":
        kernel = family_w(ps - ts, params, family)
    elif variant == "of_abs_diff":
        kernel = family_w(np.abs(ps - ts), params, family)
    else:
        raise DomainError(f"Unknown relative disentropy variant '{variant}'")
    return math.fsum(weight * kernel)


# Entropies

def shannon_entropy(p: DistLike, base: float = math.e) -> float:
    w = as_weights(p)
    s = w[w > 0]
    return -math.fsum(s * np.log(s)) / math.log(base)


def tsallis_entropy(p: DistLike, q: float) -> float:
    """S_q = -sum p^q ln_q(p) = (1 - sum p^q)/(q - 1)."""
    if q == 1.0:
        return shannon_entropy(p)
    w = as_weights(p)
    s = w[w > 0]
    return math.fsum(-np.power(s, q) * ln_q(s, q)) if s.size else 0.0


def kaniadakis_entropy(p: DistLike, kappa: float) -> float:
    """S_kappa = -sum p ln_kappa(p)."""
    w = as_weights(p)
    s = w[w > 0]
    return -math.fsum(s * ln_kappa(s, kappa)) if s.size else 0.0


def entropy_for(p: DistLike, params: DeformationParams, family: Family) -> float:
    """Entropy matching a disentropy family."""
    if family == "tsallis_q":
        return tsallis_entropy(p, params.q)
    if family == "kaniadakis":
        return kaniadakis_entropy(p, params.kappa)
    return shannon_entropy(p, base=params.lambda_base)


def max_entropy(K: int, params: DeformationParams, family: Family) -> float:
    """Entropy of the uniform K-distribution: ln_q(K), ln_kappa(K) or log_lambda(K)."""
    if family == "tsallis_q":
        return float(ln_q(float(K), params.q))
    if family == "kaniadakis":
        return float(ln_kappa(float(K), params.kappa))
    return math.log(K) / math.log(params.lambda_base)


def entropy_normalized(p: DistLike, params: DeformationParams, family: Family = "tsallis_q", K: Optional[int] = None) -> float:
    w = as_weights(p)
    K = K or w.size
    if K < 2:
        raise DegenerateSupport("Normalized entropy needs K >= 2")
    return entropy_for(w, params, family) / max_entropy(K, params, family)


def entropy_decomposition(p: DistLike, q: float) -> Tuple[float, float, float]:
    """
    Split the Tsallis entropy into disentropy and intrinsic entropy.

    S_q = -D_q + S_int - (1-q) sum p^q W_q(p) ln_q(W_q(p)).

    Returns:
        (s_q, d_q, s_int)

    Raises:
        DomainError: any p_i = 0 (ln_q(W_q(0)) diverges)
    """
    w = as_weights(p)
    if np.any(w <= 0):
        raise DomainError("entropy_decomposition requires strictly positive probabilities")
    pq = np.power(w, q)
    wv = np.atleast_1d(wq(w, q))
    lw = np.atleast_1d(ln_q(wv, q))
    s_q = math.fsum(-pq * np.atleast_1d(ln_q(w, q)))
    d_q = math.fsum(pq * wv)
    s_int = math.fsum(-pq * lw)
    return s_q, d_q, s_int


def decomposition_residual(p: DistLike, q: float) -> float:
    """|S_q - (-D_q + S_int - (1-q) sum p^q W_q ln_q W_q)|."""
    w = as_weights(p)
    s_q, d_q, s_int = entropy_decomposition(w, q)
    wv = np.atleast_1d(wq(w, q))
    cross = math.fsum(np.power(w, q) * wv * np.atleast_1d(ln_q(wv, q)))
    return abs(s_q - (-d_q + s_int - (1.0 - q) * cross))


def uncertainty_check(px: DistLike, py: DistLike, params: Optional[DeformationParams] = None, family: Family = "tsallis_q") -> Tuple[float, float, bool]:
    """D_q(X) + D_q(Y) <= 2 W_q(1)."""
    params = _params(params)
    total = disentropy(px, params, family) + disentropy(py, params, family)
    bound = 2.0 * float(family_w(np.array([1.0]), params, family)[0])
    return total, bound, total <= bound + 1e-12


def degree_of_randomness(
    p: DistLike,
    q: float = 1.0,
    ctx: Optional[NormalizationContext] = None,
    family: Family = "tsallis_q",
) -> RandomnessReport:
    """
    Normalized entropy minus normalized disentropy, in [-1, 1].

    Args:
        p: Distribution, zero-padded to the normalization support
        q: Tsallis index (ignored when ctx carries its own params)
        ctx: Normalization context; built from len(p) when omitted
        family: Family used when ctx is omitted

    Raises:
        DegenerateSupport: K = 1
    """
    w = as_weights(p)
    if ctx is None:
        ctx = normalization_context(w.size, DeformationParams(q=q), family)
    if ctx.K < 2:
        raise DegenerateSupport("Degree of randomness undefined for K = 1")
    if w.size > ctx.K:
        raise OutOfRange(f"Distribution support {w.size} exceeds normalization support {ctx.K}")
    s_norm = entropy_for(w, ctx.params, ctx.family) / max_entropy(ctx.K, ctx.params, ctx.family)
    s_norm = min(max(s_norm, 0.0), 1.0)
    d_norm = normalize_disentropy(disentropy(w, ctx.params, ctx.family), ctx)
    return RandomnessReport(s_norm=s_norm, d_norm=d_norm, r=s_norm - d_norm)


def uniform_disentropy(K: int, q: float) -> float:
    """Closed form K^(1-q) W_q(1/K) of the uniform distribution."""
    return K ** (1.0 - q) * float(wq(1.0 / K, q))
