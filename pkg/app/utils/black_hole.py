"""
Black-hole disentropy with Tsallis and Kaniadakis state counting.
"""
import logging
import math
from typing import Optional

from app.exceptions import DomainError
from app.models import BHIndex, BHParams
from app.utils.special_functions import exp_kappa, exp_q, lambert_w, wk, wq

logger = logging.getLogger(__name__)

# ln 2 / (pi sqrt 3), the Barbero-Immirzi value that makes q = 1 exact
GAMMA_BOUND = math.log(2.0) / (math.pi * math.sqrt(3.0))


def bh_index(p: BHParams) -> BHIndex:
    """
    Tsallis index consistent with a measured Barbero-Immirzi parameter.

    With u = GAMMA_BOUND / gamma_exp and w = W(-u e^{-u}) on the principal
    branch, a(1-q) = -(1 + w/u) and 1 + a(1-q) = -w/u. Both are kept as
    computed from w since 1 + a(1-q) underflows e^{-u} for small gamma_exp.
    Any gamma_exp >= GAMMA_BOUND gives q = 1.
    """
    if p.gamma_exp >= GAMMA_BOUND:
        logger.info(f"gamma_exp={p.gamma_exp} >= {GAMMA_BOUND:.6f}: q = 1")
        return BHIndex(q=1.0, deformation=0.0, log_scale=0.0)
    u = GAMMA_BOUND / p.gamma_exp
    w0 = float(lambert_w(-u * math.exp(-u)))
    x = -(1.0 + w0 / u)
    return BHIndex(q=1.0 - x / p.a, deformation=x, log_scale=math.log(-w0 / u))


def bh_q_from_gamma(p: BHParams) -> float:
    """q = 1 + (1/a) [1 + W(-u e^{-u}) / u]; see bh_index."""
    return bh_index(p).q


def bh_residual(p: BHParams, q: Optional[float] = None) -> float:
    """
    gamma ln(1 + a(1-q)) - GAMMA_BOUND a (1-q); zero for a consistent q.

    With q omitted the exact deformation of bh_index is used, otherwise
    a(1-q) is rebuilt from the given q.
    """
    if q is None:
        idx = bh_index(p)
        return p.gamma_exp * idx.log_scale - GAMMA_BOUND * idx.deformation
    x = p.a * (1.0 - q)
    return p.gamma_exp * math.log1p(x) - GAMMA_BOUND * x


def bh_disentropy(p: BHParams, q_or_kappa: Optional[float] = None) -> float:
    """
    Disentropy of a horizon of area a in Planck units.

    Tsallis:    [1 + (1-q)a] W_q(e_q(-a / (1 + (1-q)a)))
    Kaniadakis: W_kappa(e_kappa(-a))

    With q_or_kappa omitted the Tsallis index comes from bh_index and
    kappa defaults to 0. Both reduce to W(e^{-a}) at q = 1, kappa = 0.
    """
    if p.family == "kaniadakis":
        kappa = 0.0 if q_or_kappa is None else q_or_kappa
        if kappa == 0.0:
            return float(lambert_w(math.exp(-p.a)))
        return float(wk(exp_kappa(-p.a, kappa), kappa))

    if q_or_kappa is None:
        idx = bh_index(p)
        q, scale = idx.q, math.exp(idx.log_scale)
    else:
        q, scale = q_or_kappa, 1.0 + (1.0 - q_or_kappa) * p.a
    if q == 1.0:
        return float(lambert_w(math.exp(-p.a)))
    if scale <= 0:
        raise DomainError(f"State count e_q(a) undefined: 1 + (1-q)a = {scale} for q={q}, a={p.a}")
    return scale * float(wq(exp_q(-p.a / scale, q), q))
