"""
Lambert-type special functions and the deformed exponentials they invert.

Covers the Lambert W function (principal and lower real branches), its
base-lambda variant R_lambda, the Lambert-Tsallis W_q and the
Lambert-Kaniadakis W_kappa. Every evaluator accepts a scalar or a numpy
array and returns the same kind.
"""
import logging
from typing import Callable, Tuple, Union

import numpy as np
from scipy import special

from app.config import get_settings
from app.exceptions import DomainError, InvalidBase, InvalidKappa, UnsupportedQ
from app.models import Branch, BranchPoint, DeformationParams

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

INV_E = float(np.exp(-1.0))
_BRANCH_SNAP = 1e-15
_HALLEY_GUARD = 1e-3
_EXPAND_LIMIT = 2000


def _as_array(z: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=float)
    return np.atleast_1d(arr).astype(float), arr.ndim == 0


def _restore(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values[0]) if scalar else values


def _check_branch(branch: str) -> None:
    if branch not in ("principal", "lower"):
        raise DomainError(f"Unknown branch '{branch}'")


# Lambert W and R_lambda

def lambert_w(z: ArrayLike, branch: Branch = "principal") -> ArrayLike:
    """
    Real branches of the Lambert W function, w * exp(w) = z.

    scipy's complex lambertw supplies the starting value; a single Halley
    step polishes it away from the branch point.

    Args:
        z: Argument(s)
        branch: "principal" (W_0, z >= -1/e) or "lower" (W_-1, -1/e <= z < 0)

    Returns:
        W(z) with the same shape as z

    Raises:
        DomainError: z below the branch point, or z >= 0 on the lower branch
    """
    _check_branch(branch)
    arr, scalar = _as_array(z)
    near_branch = np.abs(arr + INV_E) <= _BRANCH_SNAP
    if np.any((arr < -INV_E) & ~near_branch):
        bad = float(arr[(arr < -INV_E) & ~near_branch][0])
        raise DomainError(f"W argument {bad} below branch point -1/e", details={"z": bad})
    if branch == "lower" and np.any(arr >= 0):
        bad = float(arr[arr >= 0][0])
        raise DomainError(f"Lower branch of W undefined for z = {bad} >= 0", details={"z": bad})

    k = 0 if branch == "principal" else -1
    safe = np.where(near_branch, -INV_E, arr)
    with np.errstate(all="ignore"):
        w = special.lambertw(safe, k=k).real

        if get_settings().lambert_polish:
            polish = (~near_branch) & (np.abs(arr + INV_E) > _HALLEY_GUARD) & (np.abs(w) < 700) & (arr != 0)
            if np.any(polish):
                wp = w[polish]
                zp = arr[polish]
                ew = np.exp(wp)
                f = wp * ew - zp
                w1 = wp + 1.0
                step = f / (ew * w1 - (wp + 2.0) * f / (2.0 * w1))
                w[polish] = np.where(np.isfinite(step), wp - step, wp)

    w = np.where(near_branch, -1.0, w)
    return _restore(w, scalar)


def _log_base_e(lambda_base: float) -> float:
    if lambda_base <= 0 or lambda_base == 1:
        raise InvalidBase(f"Logarithm base must be positive and != 1, got {lambda_base}")
    return 1.0 / np.log(lambda_base)


def r_lambda(z: ArrayLike, lambda_base: float = 2.0, branch: Branch = "principal") -> ArrayLike:
    """
    Base-lambda Lambert function R with R * lambda**R = z.

    R_lambda(z) = log_lambda(e) * W(z / log_lambda(e)).
    """
    c = _log_base_e(lambda_base)
    arr, scalar = _as_array(z)
    try:
        w = np.atleast_1d(lambert_w(arr / c, branch))
    except DomainError as e:
        raise DomainError(f"R_{lambda_base} argument outside branch domain: {str(e)}") from e
    return _restore(c * w, scalar)


def r_lambda_branch_point(lambda_base: float = 2.0) -> BranchPoint:
    """Branch point of R_lambda: (-log_lambda(e)/e, -log_lambda(e))."""
    c = _log_base_e(lambda_base)
    return BranchPoint(z_b=-c * INV_E, w_b=-c, finite=True)


# Deformed exponentials and logarithms

def exp_q(x: ArrayLike, q: float) -> ArrayLike:
    """Tsallis q-exponential [1 + (1-q)x]^(1/(1-q)); requires 1 + (1-q)x >= 0."""
    arr, scalar = _as_array(x)
    if q == 1.0:
        return _restore(np.exp(arr), scalar)
    base = 1.0 + (1.0 - q) * arr
    if np.any(base < 0) or (q > 1 and np.any(base == 0)):
        bad = float(arr[(base < 0) | ((q > 1) & (base == 0))][0])
        raise DomainError(f"exp_q cutoff violated at x = {bad} for q = {q}", details={"x": bad, "q": q})
    with np.errstate(divide="ignore"):
        out = np.exp(np.log1p((1.0 - q) * arr) / (1.0 - q))
    return _restore(out, scalar)


def ln_q(x: ArrayLike, q: float) -> ArrayLike:
    """Tsallis q-logarithm (x^(1-q) - 1)/(1-q) for x > 0."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError(f"ln_q requires x > 0, got {float(arr[arr <= 0][0])}")
    if q == 1.0:
        return _restore(np.log(arr), scalar)
    return _restore(np.expm1((1.0 - q) * np.log(arr)) / (1.0 - q), scalar)


def exp_kappa(x: ArrayLike, kappa: float) -> ArrayLike:
    """Kaniadakis exponential (sqrt(1 + k^2 x^2) + k x)^(1/k) = exp(asinh(k x)/k)."""
    _check_kappa(kappa)
    arr, scalar = _as_array(x)
    if kappa == 0.0:
        return _restore(np.exp(arr), scalar)
    return _restore(np.exp(np.arcsinh(kappa * arr) / kappa), scalar)


def ln_kappa(x: ArrayLike, kappa: float) -> ArrayLike:
    """Kaniadakis logarithm (x^k - x^-k)/(2k) for x > 0."""
    _check_kappa(kappa)
    arr, scalar = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError(f"ln_kappa requires x > 0, got {float(arr[arr <= 0][0])}")
    if kappa == 0.0:
        return _restore(np.log(arr), scalar)
    return _restore(np.sinh(kappa * np.log(arr)) / kappa, scalar)


def deformed_exp_log(x: ArrayLike, params: DeformationParams, kind: str) -> ArrayLike:
    """Dispatch to exp_q, ln_q, exp_kappa or ln_kappa."""
    if kind == "exp_q":
        return exp_q(x, params.q)
    if kind == "ln_q":
        return ln_q(x, params.q)
    if kind == "exp_kappa":
        return exp_kappa(x, params.kappa)
    if kind == "ln_kappa":
        return ln_kappa(x, params.kappa)
    raise DomainError(f"Unknown deformed function '{kind}'")


def q_add(x: ArrayLike, y: ArrayLike, q: float) -> ArrayLike:
    """q-addition x + y + (1-q) x y."""
    return x + y + (1.0 - q) * x * y


# Generic bracketed solver

def _cut_exp_q(x: np.ndarray, q: float) -> np.ndarray:
    """exp_q with the Tsallis cutoff: 0 past the cutoff for q < 1, inf past the pole for q > 1."""
    base = 1.0 + (1.0 - q) * x
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = np.exp(np.log1p((1.0 - q) * x) / (1.0 - q))
    if q < 1:
        out = np.where(base <= 0, 0.0, out)
    else:
        out = np.where(base <= 0, np.inf, out)
    return out


def _bracketed_newton(
    f: Callable[[np.ndarray], np.ndarray],
    fprime: Callable[[np.ndarray], np.ndarray],
    z: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
) -> np.ndarray:
    """Newton's method safeguarded by bisection on f(x) = z within [lo, hi]."""
    settings = get_settings()
    tol = settings.wq_tolerance
    a = lo.copy()
    b = hi.copy()
    with np.errstate(all="ignore"):
        ga = f(a) - z
        x = 0.5 * (a + b)
        done = np.zeros(z.shape, dtype=bool)
        for _ in range(settings.wq_max_iterations):
            g = f(x) - z
            exact = g == 0
            same = np.sign(g) == np.sign(ga)
            a = np.where(same, x, a)
            ga = np.where(same, g, ga)
            b = np.where(same, b, x)
            newton = x - g / fprime(x)
            left = np.minimum(a, b)
            right = np.maximum(a, b)
            inside = np.isfinite(newton) & (newton > left) & (newton < right)
            x_new = np.where(inside, newton, 0.5 * (a + b))
            x_new = np.where(exact | done, x, x_new)
            step = np.abs(x_new - x)
            done = done | exact | (step <= tol * np.abs(x_new) + 1e-300)
            x = x_new
            if np.all(done):
                break
        else:
            logger.warning(f"Bracketed Newton hit the iteration cap on {int(np.sum(~done))} points")
    return x


def _expand_until(f: Callable[[np.ndarray], np.ndarray], start: np.ndarray, reached: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Double a negative starting point until reached(f(x)) holds everywhere."""
    x = start.copy()
    with np.errstate(all="ignore"):
        for _ in range(_EXPAND_LIMIT):
            ok = reached(f(x))
            if np.all(ok):
                return x
            x = np.where(ok, x, 2.0 * x)
    raise DomainError("No finite bracket found for the requested argument")


# Lambert-Tsallis W_q

def wq_branch_point(q: float) -> BranchPoint:
    """
    Branch point of W_q: (e_q(1/(q-2))/(q-2), 1/(q-2)) for q < 2.

    For q >= 2 there is no finite branch point; z_b then holds the infimum
    of the principal domain (-1 for q = 2, -inf beyond) and w_b = -inf.
    """
    if q == 1.0:
        return BranchPoint(z_b=-INV_E, w_b=-1.0, finite=True)
    if q >= 2.0:
        return BranchPoint(z_b=-1.0 if q == 2.0 else -np.inf, w_b=-np.inf, finite=False)
    x_b = 1.0 / (q - 2.0)
    z_b = x_b * float(np.exp(np.log1p((1.0 - q) * x_b) / (1.0 - q)))
    return BranchPoint(z_b=z_b, w_b=x_b, finite=True)


def wq(z: ArrayLike, q: float, branch: Branch = "principal") -> ArrayLike:
    """
    Lambert-Tsallis function: real solutions x of x * e_q(x) = z.

    Args:
        z: Argument(s)
        q: Tsallis index; q = 1 is the Lambert W function
        branch: "principal" (through the origin) or "lower" (w <= w_b)

    Returns:
        W_q(z) with the same shape as z

    Raises:
        DomainError: z below the branch point, or z >= 0 on the lower branch
        UnsupportedQ: lower branch requested where none exists (q >= 2)
    """
    _check_branch(branch)
    if q == 1.0:
        return lambert_w(z, branch)
    arr, scalar = _as_array(z)
    bp = wq_branch_point(q)

    if bp.finite:
        below = arr < bp.z_b - _BRANCH_SNAP * abs(bp.z_b)
        if np.any(below):
            bad = float(arr[below][0])
            raise DomainError(f"W_q argument {bad} below branch point {bp.z_b} (q={q})", details={"z": bad, "q": q})
        arr = np.maximum(arr, bp.z_b)
    elif q == 2.0 and np.any(arr <= -1.0):
        bad = float(arr[arr <= -1.0][0])
        raise DomainError(f"W_2 undefined for z = {bad} <= -1", details={"z": bad, "q": q})

    def f(x):
        return x * _cut_exp_q(x, q)

    def fprime(x):
        e = _cut_exp_q(x, q)
        return np.power(e, q) * (1.0 + (2.0 - q) * x)

    if branch == "lower":
        if not bp.finite:
            raise UnsupportedQ(f"W_q has no lower real branch for q = {q}")
        if np.any(arr >= 0):
            raise DomainError(f"Lower branch of W_q undefined for z >= 0 (q={q})")
        x_b = np.full(arr.shape, bp.w_b)
        if q < 1:
            lo = np.full(arr.shape, -1.0 / (1.0 - q))
        else:
            lo = _expand_until(f, x_b.copy(), lambda v: v >= arr)
        w = _bracketed_newton(f, fprime, arr, lo, x_b)
        w = np.where(arr == bp.z_b, bp.w_b, w)
        return _restore(w, scalar)

    w = np.zeros(arr.shape)
    pos = arr > 0
    neg = arr < 0
    if np.any(pos):
        zp = arr[pos]
        hi = zp.copy()
        if q > 1:
            hi = np.minimum(hi, 1.0 / (q - 1.0))
        w[pos] = _bracketed_newton(f, fprime, zp, np.zeros(zp.shape), hi)
    if np.any(neg):
        zn = arr[neg]
        if bp.finite:
            lo = np.full(zn.shape, bp.w_b)
        else:
            lo = _expand_until(f, np.minimum(zn, -1.0), lambda v: v <= zn)
        wn = _bracketed_newton(f, fprime, zn, lo, np.zeros(zn.shape))
        if bp.finite:
            wn = np.where(zn == bp.z_b, bp.w_b, wn)
        w[neg] = wn
    return _restore(w, scalar)


def wq_closed_form(z: ArrayLike, q: float) -> ArrayLike:
    """
    Principal W_q from the polynomial closed forms for q in {1/2, 4/3, 3/2, 2}.

    Raises:
        UnsupportedQ: q without a closed form, or q = 4/3 with z < 0 where
            the radical would go complex
        DomainError: z outside the principal domain
    """
    arr, scalar = _as_array(z)
    with np.errstate(invalid="ignore", divide="ignore"):
        if q == 2.0:
            if np.any(arr <= -1.0):
                raise DomainError("W_2 undefined for z <= -1")
            out = arr / (1.0 + arr)
        elif q == 1.5:
            if np.any(arr < -0.5):
                raise DomainError("W_3/2 undefined below z = -1/2")
            out = 2.0 * arr / ((arr + 1.0) + np.sqrt(2.0 * arr + 1.0))
        elif q == 0.5:
            if np.any(arr < -8.0 / 27.0):
                raise DomainError("W_1/2 undefined below z = -8/27")
            a = 1.0 / 27.0 + arr / 4.0
            disc = a * a - 1.0 / 729.0
            root = np.sqrt(np.maximum(disc, 0.0))
            cardano = np.cbrt(a + root) + np.cbrt(a - root)
            cosarg = np.clip(1.0 + 27.0 * arr / 4.0, -1.0, 1.0)
            trig = (2.0 / 3.0) * np.cos(np.arccos(cosarg) / 3.0)
            s = np.where(disc >= 0, cardano, trig)
            out = 2.0 * (s + 1.0 / 3.0 - 1.0)
        elif np.isclose(q, 4.0 / 3.0, rtol=0, atol=1e-15):
            if np.any(arr < 0):
                raise UnsupportedQ("Closed form of W_4/3 is real only for z >= 0")
            zz = np.where(arr > 0, arr, 1.0)
            a = 3.0 / (2.0 * zz)
            root = np.sqrt(9.0 / (4.0 * zz * zz) + 1.0 / zz ** 3)
            y = np.cbrt(a + root) + np.cbrt(a - root)
            out = np.where(arr > 0, 3.0 * (1.0 - y), 0.0)
        else:
            raise UnsupportedQ(f"No closed form for q = {q}")
    return _restore(np.asarray(out, dtype=float), scalar)


# Lambert-Kaniadakis W_kappa

def _check_kappa(kappa: float) -> None:
    if not np.isfinite(kappa) or kappa * kappa >= 1.0:
        raise InvalidKappa(f"Kaniadakis index requires kappa^2 < 1, got {kappa}")


def wk_branch_point(kappa: float) -> BranchPoint:
    """Branch point of W_kappa at w_b = -1/sqrt(1 - kappa^2)."""
    _check_kappa(kappa)
    k = abs(kappa)
    if k == 0.0:
        return BranchPoint(z_b=-INV_E, w_b=-1.0, finite=True)
    w_b = -1.0 / np.sqrt(1.0 - k * k)
    z_b = w_b * float(np.exp(np.arcsinh(k * w_b) / k))
    return BranchPoint(z_b=float(z_b), w_b=float(w_b), finite=True)


def wk(z: ArrayLike, kappa: float, branch: Branch = "principal") -> ArrayLike:
    """
    Lambert-Kaniadakis function: real solutions x of x * e_kappa(x) = z.

    The kappa-exponential is even in kappa, so |kappa| is used throughout.
    """
    _check_branch(branch)
    _check_kappa(kappa)
    k = abs(kappa)
    if k == 0.0:
        return lambert_w(z, branch)
    arr, scalar = _as_array(z)
    bp = wk_branch_point(k)
    below = arr < bp.z_b - _BRANCH_SNAP * abs(bp.z_b)
    if np.any(below):
        bad = float(arr[below][0])
        raise DomainError(f"W_kappa argument {bad} below branch point {bp.z_b}", details={"z": bad, "kappa": kappa})
    arr = np.maximum(arr, bp.z_b)

    def f(x):
        return x * np.exp(np.arcsinh(k * x) / k)

    def fprime(x):
        return np.exp(np.arcsinh(k * x) / k) * (1.0 + x / np.sqrt(1.0 + k * k * x * x))

    if branch == "lower":
        if np.any(arr >= 0):
            raise DomainError("Lower branch of W_kappa undefined for z >= 0")
        x_b = np.full(arr.shape, bp.w_b)
        lo = _expand_until(f, x_b.copy(), lambda v: v >= arr)
        w = _bracketed_newton(f, fprime, arr, lo, x_b)
        return _restore(np.where(arr == bp.z_b, bp.w_b, w), scalar)

    w = np.zeros(arr.shape)
    pos = arr > 0
    neg = arr < 0
    if np.any(pos):
        zp = arr[pos]
        w[pos] = _bracketed_newton(f, fprime, zp, np.zeros(zp.shape), zp.copy())
    if np.any(neg):
        zn = arr[neg]
        wn = _bracketed_newton(f, fprime, zn, np.full(zn.shape, bp.w_b), np.zeros(zn.shape))
        w[neg] = np.where(zn == bp.z_b, bp.w_b, wn)
    return _restore(w, scalar)
