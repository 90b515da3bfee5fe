"""
Disentropy of Wigner quasi-probability distributions.

Closed-form Wigner functions (two-mode squeezed vacuum, photon-added vortex
mixture, damped Kerr state, vacuum, coherent), tensor-product Gauss-Legendre
quadrature over phase space, and the disentropy functionals built on them.
Coordinates follow lambda = x1 + i y1 and beta = x2 + i y2.
"""
import logging
import math
from typing import Callable, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from app.config import get_settings
from app.exceptions import ComplexRisk, DomainError, TruncationError
from app.models import CurveSeries, QuadratureSpec, StateParams, WignerField
from app.utils.disentropy_core import RelativeVariant
from app.utils.special_functions import wq, wq_closed_form

logger = logging.getLogger(__name__)

StateKind = Literal["squeezed_vacuum_eq80", "vortex_mixture_eq74", "kerr_eq76", "vacuum", "coherent"]
AlphaForm = Literal["eq77", "eq78", "eq79"]

TWO_OVER_PI = 2.0 / np.pi
FOUR_OVER_PI2 = 4.0 / np.pi ** 2
_CLOSED_FORM_Q = (2.0, 1.5)


# Fields

def _two_mode_quadratures(x1, y1, x2, y2, r: float, phi: float) -> Tuple[np.ndarray, np.ndarray]:
    """|cosh r lambda - sinh r e^{i phi} beta*|^2 and |cosh r beta* - sinh r lambda e^{-i phi}|^2."""
    c, s = math.cosh(r), math.sinh(r)
    lam = x1 + 1j * y1
    beta_c = x2 - 1j * y2
    u = c * lam - s * np.exp(1j * phi) * beta_c
    v = c * beta_c - s * lam * np.exp(-1j * phi)
    return np.abs(u) ** 2, np.abs(v) ** 2


def squeezed_vacuum(p: StateParams) -> WignerField:
    """Two-mode squeezed vacuum."""
    def evaluate(x1, y1, x2, y2):
        u2, v2 = _two_mode_quadratures(x1, y1, x2, y2, p.r, p.phi)
        return FOUR_OVER_PI2 * np.exp(-2.0 * (u2 + v2))

    return WignerField(kind="squeezed_vacuum_eq80", modes=2, evaluator=evaluate, params=p, nonnegative=True)


def vortex_mixture(p: StateParams) -> WignerField:
    """Mixture e^{-t} (vortex state) + (1 - e^{-t}) (two-mode vacuum)."""
    weight = math.exp(-p.t)

    def evaluate(x1, y1, x2, y2):
        vac = FOUR_OVER_PI2 * np.exp(-2.0 * (x1 ** 2 + y1 ** 2 + x2 ** 2 + y2 ** 2))
        u2, v2 = _two_mode_quadratures(x1, y1, x2, y2, p.r, p.phi)
        vortex = FOUR_OVER_PI2 * (4.0 * u2 - 1.0) * np.exp(-2.0 * (u2 + v2))
        return (1.0 - weight) * vac + weight * vortex

    return WignerField(kind="vortex_mixture_eq74", modes=2, evaluator=evaluate, params=p, nonnegative=False)


def vacuum_state(modes: int = 1) -> WignerField:
    if modes == 1:
        def evaluate(x1, y1):
            return TWO_OVER_PI * np.exp(-2.0 * (x1 ** 2 + y1 ** 2))
    else:
        def evaluate(x1, y1, x2, y2):
            return FOUR_OVER_PI2 * np.exp(-2.0 * (x1 ** 2 + y1 ** 2 + x2 ** 2 + y2 ** 2))
    return WignerField(kind="vacuum", modes=modes, evaluator=evaluate, nonnegative=True)


def coherent_state(beta: complex) -> WignerField:
    b = complex(beta)

    def evaluate(x1, y1):
        return TWO_OVER_PI * np.exp(-2.0 * ((x1 - b.real) ** 2 + (y1 - b.imag) ** 2))

    return WignerField(kind="coherent", modes=1, evaluator=evaluate, params=StateParams(beta=b), nonnegative=True)


def kerr_amplitudes(p: StateParams, cutoff: Optional[int] = None, tail: Optional[float] = None) -> np.ndarray:
    """
    Fock amplitudes of the damped Kerr state.

    c_n = e^{-|b|^2/2} b^n / sqrt(n!) e^{-i tau n(n-1)/2} with b = beta e^{-tau/sigma},
    truncated at the first n whose remaining Poisson mass is below tail.

    Raises:
        TruncationError: tail not reached within the cutoff
    """
    settings = get_settings()
    cutoff = cutoff or settings.fock_cutoff
    tail = tail or settings.fock_tail
    damping = 1.0 if p.sigma is None else math.exp(-p.tau / p.sigma)
    b = complex(p.beta) * damping
    amps = np.zeros(cutoff, dtype=complex)
    amps[0] = math.exp(-abs(b) ** 2 / 2.0)
    for n in range(1, cutoff):
        amps[n] = amps[n - 1] * b / math.sqrt(n)
    mass = np.cumsum(np.abs(amps) ** 2)
    reached = np.nonzero(1.0 - mass < tail)[0]
    if reached.size == 0:
        raise TruncationError(
            f"Fock tail {1.0 - mass[-1]:.3g} above {tail} at cutoff {cutoff} for |beta e^(-tau/sigma)| = {abs(b):.4g}"
        )
    n_max = int(reached[0]) + 1
    n = np.arange(n_max)
    return amps[:n_max] * np.exp(-0.5j * p.tau * n * (n - 1))


def fock_wigner(rho: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Wigner function of a Fock-basis density matrix on lambda = x + i y, normalized to 1."""
    alpha = np.asarray(x) + 1j * np.asarray(y)
    cutoff = rho.shape[0]
    wmat = np.zeros((2, cutoff) + alpha.shape, dtype=complex)
    wmat[0, 0] = np.exp(-2.0 * np.abs(alpha) ** 2) / np.pi
    w = np.real(rho[0, 0]) * np.real(wmat[0, 0])
    for n in range(1, cutoff):
        wmat[0, n] = 2.0 * alpha * wmat[0, n - 1] / np.sqrt(n)
        w = w + 2.0 * np.real(rho[0, n] * wmat[0, n])
    for m in range(1, cutoff):
        wmat[1, m] = (2.0 * np.conj(alpha) * wmat[0, m] - np.sqrt(m) * wmat[0, m - 1]) / np.sqrt(m)
        w = w + np.real(rho[m, m] * wmat[1, m])
        for n in range(m + 1, cutoff):
            wmat[1, n] = (2.0 * alpha * wmat[1, n - 1] - np.sqrt(m) * wmat[0, n - 1]) / np.sqrt(n)
            w = w + 2.0 * np.real(rho[m, n] * wmat[1, n])
        wmat[0] = wmat[1]
    return 2.0 * w


def kerr_state(p: StateParams) -> WignerField:
    """Coherent state evolved in a damped Kerr medium."""
    c = kerr_amplitudes(p)
    rho = np.outer(c, c.conj())
    logger.debug(f"Kerr state tau={p.tau:.4g}: {c.size} Fock terms")

    def evaluate(x1, y1):
        return fock_wigner(rho, x1, y1)

    return WignerField(kind="kerr_eq76", modes=1, evaluator=evaluate, params=p, nonnegative=p.tau == 0.0)


def wigner_state(kind: StateKind, p: Optional[StateParams] = None) -> WignerField:
    """Build one of the supported Wigner fields."""
    p = p or StateParams()
    if kind == "squeezed_vacuum_eq80":
        return squeezed_vacuum(p)
    if kind == "vortex_mixture_eq74":
        return vortex_mixture(p)
    if kind == "kerr_eq76":
        return kerr_state(p)
    if kind == "vacuum":
        return vacuum_state(1)
    if kind == "coherent":
        return coherent_state(p.beta)
    raise DomainError(f"Unknown Wigner state '{kind}'")


# Quadrature

def default_quadrature(field: WignerField) -> QuadratureSpec:
    """R = pad + |beta| with the configured node count for the field's mode count."""
    settings = get_settings()
    radius = settings.quadrature_radius_pad + abs(field.params.beta)
    if field.kind == "kerr_eq76":
        nodes = settings.kerr_quadrature_nodes
    elif field.modes == 1:
        nodes = settings.quadrature_nodes_1mode
    else:
        nodes = settings.quadrature_nodes_2mode
    return QuadratureSpec(radius=radius, nodes=nodes, fock_cutoff=settings.fock_cutoff)


def iter_tiles(modes: int, quad: QuadratureSpec) -> Iterator[Tuple[Tuple[np.ndarray, ...], np.ndarray]]:
    """
    Tensor-product Gauss-Legendre grid on [-R, R]^(2 modes), in tiles.

    One-mode grids come as a single tile; two-mode grids are split along the
    first coordinate so memory stays at nodes^3 points.
    """
    x, w = leggauss(quad.nodes)
    x = x * quad.radius
    w = w * quad.radius
    if modes == 1:
        gx, gy = np.meshgrid(x, x, indexing="ij")
        yield (gx, gy), np.outer(w, w)
        return
    g1, g2, g3 = np.meshgrid(x, x, x, indexing="ij")
    inner = w[:, None, None] * w[None, :, None] * w[None, None, :]
    for xi, wi in zip(x, w):
        yield (np.full_like(g1, xi), g1, g2, g3), wi * inner


def integrate(field: WignerField, quad: Optional[QuadratureSpec] = None,
              integrand: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> float:
    """Integral of integrand(w) (default w itself) over phase space."""
    quad = quad or default_quadrature(field)
    parts: List[float] = []
    for coords, weights in iter_tiles(field.modes, quad):
        values = field(*coords)
        if integrand is not None:
            values = integrand(values)
        parts.append(float(np.sum(weights * values)))
    return math.fsum(parts)


def check_normalization(field: WignerField, quad: Optional[QuadratureSpec] = None, tol: float = 1e-6) -> bool:
    total = integrate(field, quad)
    ok = abs(total - 1.0) <= tol
    if not ok:
        logger.warning(f"{field.kind} integrates to {total:.10f}, outside 1 +- {tol}")
    return ok


def _field_wq(w: np.ndarray, q: float) -> np.ndarray:
    if q in _CLOSED_FORM_Q:
        return np.asarray(wq_closed_form(w, q))
    return np.asarray(wq(w, q))


def _check_real_power(values: np.ndarray, exponent: float, what: str) -> None:
    if exponent != round(exponent) and np.min(values) < 0:
        raise ComplexRisk(f"{what}: fractional power {exponent} of a negative quasi-probability ({np.min(values):.3g})")


def _disentropy_integrand(q: float) -> Callable[[np.ndarray], np.ndarray]:
    def integrand(w: np.ndarray) -> np.ndarray:
        _check_real_power(w, q, "w^q")
        return np.power(w, q) * _field_wq(w, q)
    return integrand


def wigner_disentropy(field: WignerField, q: Optional[float] = None, quad: Optional[QuadratureSpec] = None) -> float:
    """
    Integral of w^q W_q(w) over phase space.

    Raises:
        ComplexRisk: fractional q with negative w somewhere on the grid
        DomainError: w below the W_q branch point
    """
    q = get_settings().default_q if q is None else q
    if not field.nonnegative and q != round(q):
        raise ComplexRisk(f"q = {q} is fractional and the {field.kind} field can be negative")
    return integrate(field, quad, _disentropy_integrand(q))


def convergence_gap(field: WignerField, q: Optional[float] = None, quad: Optional[QuadratureSpec] = None) -> float:
    """Relative change of the disentropy when the node count doubles."""
    quad = quad or default_quadrature(field)
    coarse = wigner_disentropy(field, q, quad)
    fine = wigner_disentropy(field, q, quad.doubled())
    return abs(fine - coarse) / max(abs(fine), 1e-300)


def wigner_relative_disentropy(
    w1: WignerField,
    w2: WignerField,
    q: Optional[float] = None,
    variant: RelativeVariant = "abs_diff",
    quad: Optional[QuadratureSpec] = None,
) -> float:
    """Integral of w1^q times the selected relative kernel against w2."""
    if w1.modes != w2.modes:
        raise DomainError(f"Mode counts differ: {w1.modes} vs {w2.modes}")
    q = get_settings().default_q if q is None else q
    quad = quad or default_quadrature(w1)
    parts: List[float] = []
    for coords, weights in iter_tiles(w1.modes, quad):
        a, b = w1(*coords), w2(*coords)
        _check_real_power(a, q, "w1^q")
        if variant == "abs_diff":
            kernel = np.abs(_field_wq(a, q) - _field_wq(b, q))
        elif variant == "signed_diff":
            kernel = _field_wq(a, q) - _field_wq(b, q)
        elif variant == "of_diff":
            kernel = _field_wq(a - b, q)
        elif variant == "of_abs_diff":
            kernel = _field_wq(np.abs(a - b), q)
        else:
            raise DomainError(f"Unknown relative disentropy variant '{variant}'")
        parts.append(float(np.sum(weights * np.power(a, q) * kernel)))
    return math.fsum(parts)


def d_q_alpha(
    w1: WignerField,
    w2: Optional[WignerField] = None,
    q: float = 1.5,
    alpha: float = 2.0,
    quad: Optional[QuadratureSpec] = None,
    form: AlphaForm = "eq77",
) -> float:
    """
    Power-integral disentropies that avoid fractional powers of w inside W_q.

    eq77: W_q(int w1^alpha)
    eq78: W_q(1) - W_q(int [w2^s w1 w2^s]^alpha), s = (1 - alpha)/(2 alpha)
    eq79: W_q(1) - W_q(int w1^alpha w2^(1 - alpha))

    For scalar fields eq78 and eq79 coincide.
    """
    quad = quad or default_quadrature(w1)
    if form == "eq77":
        def integrand(w):
            _check_real_power(w, alpha, "w^alpha")
            return np.power(w, alpha)
        return float(wq(integrate(w1, quad, integrand), q))

    if w2 is None:
        raise DomainError(f"{form} needs a reference field")
    if form == "eq78" and not (0.5 <= alpha < 1.0 or alpha > 1.0):
        raise DomainError(f"eq78 requires alpha in [1/2, 1) or (1, inf), got {alpha}")
    if form == "eq79" and not (0.0 <= alpha < 1.0 or 1.0 < alpha < 2.0):
        raise DomainError(f"eq79 requires alpha in [0, 1) or (1, 2), got {alpha}")

    parts: List[float] = []
    for coords, weights in iter_tiles(w1.modes, quad):
        a, b = w1(*coords), w2(*coords)
        if form == "eq78":
            s = (1.0 - alpha) / (2.0 * alpha)
            _check_real_power(b, s, "w2^s")
            inner = np.power(b, s) * a * np.power(b, s)
            _check_real_power(inner, alpha, "sandwich^alpha")
            values = np.power(inner, alpha)
        else:
            _check_real_power(a, alpha, "w1^alpha")
            _check_real_power(b, 1.0 - alpha, "w2^(1-alpha)")
            with np.errstate(divide="ignore", invalid="ignore"):
                values = np.where(a == 0, 0.0, np.power(a, alpha) * np.power(b, 1.0 - alpha))
        parts.append(float(np.sum(weights * values)))
    return float(wq(1.0, q)) - float(wq(math.fsum(parts), q))


# Sweeps

def zero_crossings(x: Sequence[float], y: Sequence[float]) -> List[float]:
    """Linearly interpolated sign changes of y(x)."""
    xs, ys = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    out = []
    for i in range(len(xs) - 1):
        if ys[i] == 0.0:
            out.append(float(xs[i]))
        elif ys[i] * ys[i + 1] < 0:
            out.append(float(xs[i] - ys[i] * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i])))
    return out


def _normalized(values: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(values)))
    return values / scale if scale > 0 else values


def vortex_sweep(ts: Sequence[float], r: float = 0.5, phi: float = 0.0, q: Optional[float] = None,
                 quad: Optional[QuadratureSpec] = None, normalize: bool = True) -> CurveSeries:
    """
    Disentropy of the vortex/vacuum mixture versus the mixing time t.

    Both components are evaluated once per tile and mixed for every t.
    """
    q = get_settings().default_q if q is None else q
    if q != round(q):
        raise ComplexRisk(f"q = {q} is fractional and the mixture can be negative")
    quad = quad or default_quadrature(vortex_mixture(StateParams(r=r, phi=phi)))
    mixes = np.exp(-np.asarray(ts, dtype=float))
    pure_vortex = vortex_mixture(StateParams(r=r, phi=phi, t=0.0))
    parts: List[List[float]] = [[] for _ in mixes]
    for coords, weights in iter_tiles(2, quad):
        x1, y1, x2, y2 = coords
        vac = FOUR_OVER_PI2 * np.exp(-2.0 * (x1 ** 2 + y1 ** 2 + x2 ** 2 + y2 ** 2))
        vortex = pure_vortex(x1, y1, x2, y2)
        for k, e in enumerate(mixes):
            w = (1.0 - e) * vac + e * vortex
            parts[k].append(float(np.sum(weights * np.power(w, q) * _field_wq(w, q))))
    raw = np.array([math.fsum(p) for p in parts])
    y = _normalized(raw) if normalize else raw
    logger.info(f"Vortex sweep r={r}, phi={phi}: crossings at {zero_crossings(ts, raw)}")
    return CurveSeries(
        name="vortex_mixture", x_label="t", y_label=f"D_{q:g}" + (" (normalized)" if normalize else ""),
        x=[float(t) for t in ts], y=y.tolist(),
        metadata={"r": r, "phi": phi, "q": q, "radius": quad.radius, "nodes": quad.nodes,
                  "raw": raw.tolist(), "zero_crossings": zero_crossings(ts, raw)},
    )


def kerr_sweep(taus: Sequence[float], beta: complex = 2.0, sigma: Optional[float] = 8 * np.pi,
               q: Optional[float] = None, quad: Optional[QuadratureSpec] = None) -> CurveSeries:
    """Disentropy of the damped Kerr state versus tau."""
    q = get_settings().default_q if q is None else q
    values = []
    for tau in taus:
        field = kerr_state(StateParams(beta=complex(beta), tau=float(tau), sigma=sigma))
        values.append(wigner_disentropy(field, q, quad or default_quadrature(field)))
    return CurveSeries(
        name="kerr", x_label="tau", y_label=f"D_{q:g}",
        x=[float(t) for t in taus], y=values,
        metadata={"beta": str(complex(beta)), "sigma": sigma, "q": q,
                  "zero_crossings": zero_crossings(taus, values), "minimum": float(np.min(values))},
    )


def squeezing_sweep(rs: Sequence[float], q: float = 1.5, alpha: float = 2.0, window: Optional[float] = None,
                    nodes: Optional[int] = None, phi: float = 0.0) -> CurveSeries:
    """W_q of the integrated alpha-power of the squeezed vacuum inside a finite window, versus r."""
    settings = get_settings()
    quad = QuadratureSpec(radius=window or settings.squeezing_window, nodes=nodes or settings.quadrature_nodes_2mode)
    values = [d_q_alpha(squeezed_vacuum(StateParams(r=float(r), phi=phi)), None, q, alpha, quad, "eq77") for r in rs]
    return CurveSeries(
        name="squeezed_vacuum", x_label="r", y_label=f"D_{q:g},{alpha:g}",
        x=[float(r) for r in rs], y=values,
        metadata={"q": q, "alpha": alpha, "window": quad.radius, "nodes": quad.nodes,
                  "argmax": float(rs[int(np.argmax(values))])},
    )
