"""
Figure sweeps: the curve data behind each reproduced figure.

Every sweep returns a list of CurveSeries whose metadata records the
parameters, the zero crossings or extrema of interest and the figure name.
"""
import logging
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.stats import poisson

from app.config import get_settings
from app.exceptions import DomainError
from app.models import BinaryChannel, CurveSeries, DeformationParams, QuadratureSpec
from app.utils.classical_info import (
    binary_normalized_disentropy,
    bsc_joint,
    fano_check,
    minimize_input_prior,
)
from app.utils.disentropy_core import (
    degree_of_randomness,
    mutual_disentropy,
    normalization_context,
    shannon_entropy,
)
from app.utils.wigner_lab import kerr_sweep, squeezing_sweep, vortex_sweep

logger = logging.getLogger(__name__)


def refine_roots(f: Callable[[float], float], xs: Sequence[float], ys: Sequence[float]) -> List[float]:
    """Sign changes of a sampled curve polished with brentq."""
    roots = []
    for i in range(len(xs) - 1):
        if ys[i] == 0.0:
            roots.append(float(xs[i]))
        elif ys[i] * ys[i + 1] < 0:
            roots.append(float(brentq(f, xs[i], xs[i + 1], xtol=1e-12)))
    return roots


def fig3(points: int = 1001) -> List[CurveSeries]:
    """Binary entropy, normalized R_2 disentropy and their sum versus p."""
    ps = np.linspace(0.0, 1.0, points)
    h = [shannon_entropy([p, 1.0 - p], 2.0) for p in ps]
    d = [binary_normalized_disentropy(float(p)) for p in ps]
    total = [a + b for a, b in zip(h, d)]
    deviation = float(np.max(np.abs(np.asarray(total) - 1.0)))
    logger.info(f"fig3: max |H + D_norm - 1| = {deviation:.4f}")
    x = ps.tolist()
    meta = {"figure": "fig3", "family": "shannon_r2", "K": 2}
    return [
        CurveSeries(name="fig3_entropy", x_label="p", y_label="H", x=x, y=h, metadata=meta),
        CurveSeries(name="fig3_disentropy", x_label="p", y_label="D_norm", x=x, y=d, metadata=meta),
        CurveSeries(name="fig3_sum", x_label="p", y_label="H+D_norm", x=x, y=total,
                    metadata={**meta, "max_deviation": deviation}),
    ]


def fig5(p_cs: Sequence[float] = (0.05, 0.1, 0.25), qs: Sequence[float] = (0.75, 1.0, 1.25),
         points: int = 201) -> List[CurveSeries]:
    """Mutual disentropy of the binary symmetric channel versus the input prior p0."""
    p0s = np.linspace(0.0, 1.0, points)
    curves = []
    for p_c in p_cs:
        for q in qs:
            params = DeformationParams(q=q)
            y = [mutual_disentropy(bsc_joint(float(p0), p_c), params) for p0 in p0s]
            argmin = minimize_input_prior(BinaryChannel(p_c=p_c), q)
            curves.append(CurveSeries(
                name=f"fig5_pc{p_c:g}_q{q:g}", x_label="p0", y_label=f"D_{q:g}(X:Y)",
                x=p0s.tolist(), y=y,
                metadata={"figure": "fig5", "p_c": p_c, "q": q, "argmin_p0": argmin,
                          "minimum": mutual_disentropy(bsc_joint(argmin, p_c), params)},
            ))
    return curves


def fig6(qs: Sequence[float] = (0.75, 1.0, 1.25), p_cs: Optional[Sequence[float]] = None) -> List[CurveSeries]:
    """Both sides of the disentropic Fano inequality versus the crossover probability."""
    p_cs = np.arange(1, 100) / 100.0 if p_cs is None else np.asarray(p_cs)
    curves = []
    for q in qs:
        checks = [fano_check(BinaryChannel(p_c=float(p)), q) for p in p_cs]
        slack = min(c.rhs - c.lhs for c in checks)
        meta = {"figure": "fig6", "q": q, "min_slack": slack, "always_holds": all(c.holds for c in checks)}
        curves.append(CurveSeries(name=f"fig6_lhs_q{q:g}", x_label="p_c", y_label="D_q(X|Y)",
                                  x=p_cs.tolist(), y=[c.lhs for c in checks], metadata=meta))
        curves.append(CurveSeries(name=f"fig6_rhs_q{q:g}", x_label="p_c", y_label="Fano bound",
                                  x=p_cs.tolist(), y=[c.rhs for c in checks], metadata=meta))
    return curves


def fig7(ts: Optional[Sequence[float]] = None, r: float = 0.5, phi: float = 0.0,
         nodes: Optional[int] = None) -> List[CurveSeries]:
    """Normalized D_2 of the vortex/vacuum mixture versus t."""
    settings = get_settings()
    ts = np.linspace(0.0, 2.0, 41) if ts is None else ts
    quad = QuadratureSpec(radius=settings.quadrature_radius_pad,
                          nodes=nodes or settings.quadrature_nodes_2mode)
    curve = vortex_sweep(ts, r=r, phi=phi, q=2.0, quad=quad)
    curve.name = "fig7"
    curve.metadata["figure"] = "fig7"
    return [curve]


def fig8(taus: Optional[Sequence[float]] = None, beta: complex = 2.0,
         sigma: Optional[float] = 8 * math.pi) -> List[CurveSeries]:
    """D_2 of the damped Kerr state versus tau."""
    taus = np.linspace(0.0, 2.0 * math.pi, 65) if taus is None else taus
    curve = kerr_sweep(taus, beta=beta, sigma=sigma, q=2.0)
    curve.name = "fig8"
    curve.metadata["figure"] = "fig8"
    return [curve]


def fig9(rs: Optional[Sequence[float]] = None, q: float = 1.5, alpha: float = 2.0,
         window: Optional[float] = None) -> List[CurveSeries]:
    """D_{q,alpha} of the two-mode squeezed vacuum inside the observation window versus r."""
    rs = np.round(np.arange(0, 16) * 0.1, 10) if rs is None else rs
    curve = squeezing_sweep(rs, q=q, alpha=alpha, window=window)
    curve.name = "fig9"
    curve.metadata["figure"] = "fig9"
    return [curve]


def _randomness_curves(name: str, x_label: str, xs: np.ndarray, reports, root_fn) -> List[CurveSeries]:
    r = [rep.r for rep in reports]
    roots = refine_roots(root_fn, xs.tolist(), r)
    meta = {"figure": name, "q": 1.0, "roots": roots}
    x = xs.tolist()
    return [
        CurveSeries(name=f"{name}_randomness", x_label=x_label, y_label="R", x=x, y=r, metadata=meta),
        CurveSeries(name=f"{name}_disentropy", x_label=x_label, y_label="D_norm",
                    x=x, y=[rep.d_norm for rep in reports], metadata=meta),
        CurveSeries(name=f"{name}_entropy", x_label=x_label, y_label="S_norm",
                    x=x, y=[rep.s_norm for rep in reports], metadata=meta),
    ]


def fig12(points: int = 1001) -> List[CurveSeries]:
    """Degree of randomness, disentropy and entropy of {p, 1-p} at q = 1."""
    ps = np.linspace(0.0, 1.0, points)

    def randomness(p: float) -> float:
        return degree_of_randomness([p, 1.0 - p], 1.0).r

    reports = [degree_of_randomness([float(p), 1.0 - float(p)], 1.0) for p in ps]
    return _randomness_curves("fig12", "p", ps, reports, randomness)


def poisson_weights(lam: float, support: int) -> np.ndarray:
    """Poisson(lam) on n = 0..support-1, renormalized."""
    w = poisson.pmf(np.arange(support), lam)
    return w / math.fsum(w)


def fig13(lambdas: Optional[Sequence[float]] = None, support: Optional[int] = None) -> List[CurveSeries]:
    """Degree of randomness of a Poisson distribution versus its mean at q = 1."""
    K = support or get_settings().poisson_support
    lambdas = np.linspace(0.05, 5.0, 100) if lambdas is None else np.asarray(lambdas, dtype=float)
    ctx = normalization_context(K, DeformationParams(q=1.0))
    logger.info(f"fig13: Poisson truncated to n < {K}, renormalized, normalized with K = {K}")

    def randomness(lam: float) -> float:
        return degree_of_randomness(poisson_weights(lam, K), 1.0, ctx).r

    reports = [degree_of_randomness(poisson_weights(float(lam), K), 1.0, ctx) for lam in lambdas]
    curves = _randomness_curves("fig13", "lambda", lambdas, reports, randomness)
    for c in curves:
        c.metadata["support"] = K
    return curves


FIGURES: Dict[str, Callable[..., List[CurveSeries]]] = {
    "fig3": fig3,
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
    "fig8": fig8,
    "fig9": fig9,
    "fig12": fig12,
    "fig13": fig13,
}


def figure_sweep(which: str, **overrides) -> List[CurveSeries]:
    """Run one figure sweep with optional parameter overrides."""
    if which not in FIGURES:
        raise DomainError(f"Unknown figure '{which}', expected one of {sorted(FIGURES)}")
    logger.info(f"Running {which} sweep with overrides {overrides}")
    return FIGURES[which](**overrides)
