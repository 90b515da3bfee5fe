"""
Randomness of integers through the distribution of their prime powers.

An integer N = p_1^n_1 ... p_k^n_k is mapped to the distribution
{log_N(p_i^n_i)}; its degree of randomness and its disentropic distances
to the prime powers and to other integers follow from disentropy_core.
"""
import logging
import math
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np

from app.config import get_settings
from app.exceptions import DomainError, OutOfRange
from app.models import (
    DeformationParams,
    DensityMatrix,
    Factorization,
    NumberDist,
    ProbDist,
    RandomnessReport,
)
from app.utils.disentropy_core import RelativeVariant, degree_of_randomness, normalization_context, relative_disentropy
from app.utils.special_functions import wq

logger = logging.getLogger(__name__)

MAX_N = 2 ** 64 - 1
# Deterministic Miller-Rabin witnesses for every n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite n; c runs 1, 2, ... so results are reproducible."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise DomainError(f"Pollard-Brent found no factor of {n}")


def _split(n: int, out: Dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _pollard_brent(n)
    _split(f, out)
    _split(n // f, out)


def factorize(n: int) -> Factorization:
    """
    Prime-power decomposition of a 64-bit integer.

    Trial division up to the configured limit, then Pollard-Brent on the
    cofactor; every factor is confirmed by deterministic Miller-Rabin.

    Raises:
        OutOfRange: n < 2 or n >= 2^64
    """
    if n < 2 or n > MAX_N:
        raise OutOfRange(f"factorize needs 2 <= n < 2^64, got {n}")
    limit = get_settings().trial_division_limit
    found: Dict[int, int] = {}
    rest = n
    d = 2
    while d <= limit and d * d <= rest:
        while rest % d == 0:
            found[d] = found.get(d, 0) + 1
            rest //= d
        d += 1 if d == 2 else 2
    if rest > 1:
        _split(rest, found)
    primes = tuple(sorted(found))
    return Factorization(n=n, primes=primes, exponents=tuple(found[p] for p in primes))


def number_dist(n: int) -> NumberDist:
    """{log_N(p_i^n_i)} with labels "p^n"."""
    fac = factorize(n)
    log_n = math.log(n)
    weights = np.array([e * math.log(p) for p, e in zip(fac.primes, fac.exponents)]) / log_n
    weights = weights / math.fsum(weights)
    labels = [f"{p}^{e}" for p, e in zip(fac.primes, fac.exponents)]
    return NumberDist(factorization=fac, dist=ProbDist.from_array(weights, labels))


def _support_size(distinct: int, support: Optional[int]) -> int:
    if support is None:
        support = get_settings().number_support_size
    return distinct if support is None else support


def integer_randomness(n: int, q: float = 1.0, support: Optional[int] = None) -> RandomnessReport:
    """
    Degree of randomness of the prime-power distribution of n.

    Normalization uses a fixed support of number_support_size slots; when
    that setting is empty it falls back to the distinct prime count. Prime
    powers give -1 directly.
    """
    nd = number_dist(n)
    if nd.factorization.is_prime_power:
        return RandomnessReport(s_norm=0.0, d_norm=1.0, r=-1.0)
    K = _support_size(nd.dist.K, support)
    logger.debug(f"Randomness of {n}: {nd.dist.K} primes normalized over K={K}")
    ctx = normalization_context(K, DeformationParams(q=q))
    return degree_of_randomness(nd.dist.array, q, ctx)


def distance_prime_powers(n: int, q: float = 1.0, method: Literal["eq108", "eq110"] = "eq108",
                          support: Optional[int] = None) -> float:
    """
    Distance from n to the set of prime powers; zero exactly on prime powers.

    eq108: (1 + R_q(n)) / 2
    eq110: min_j [ t_j^q |W_q(t_j) - W_q(1)| + sum_{k != j} t_k^q W_q(t_k) ]
    """
    if method == "eq108":
        return (1.0 + integer_randomness(n, q, support).r) / 2.0
    if method != "eq110":
        raise DomainError(f"Unknown prime-power distance '{method}'")
    t = number_dist(n).dist.array
    terms = np.power(t, q) * np.asarray(wq(t, q))
    w_one = float(wq(1.0, q))
    total = math.fsum(terms)
    candidates = [
        t[j] ** q * abs(float(wq(float(t[j]), q)) - w_one) + (total - terms[j])
        for j in range(t.size)
    ]
    return float(min(candidates))


def aligned_dists(n: int, m: int) -> Tuple[np.ndarray, np.ndarray, List[int]]:
    """Distributions of n and m on the union of their primes, zero where a prime is absent."""
    a, b = number_dist(n), number_dist(m)
    primes = sorted(set(a.factorization.primes) | set(b.factorization.primes))
    index = {p: i for i, p in enumerate(primes)}
    pa, pb = np.zeros(len(primes)), np.zeros(len(primes))
    for p, w in zip(a.factorization.primes, a.dist.weights):
        pa[index[p]] = w
    for p, w in zip(b.factorization.primes, b.dist.weights):
        pb[index[p]] = w
    return pa, pb, primes


def integer_distance(n: int, m: int, q: float = 1.0, variant: RelativeVariant = "abs_diff") -> float:
    """Relative disentropy D_q(P_n || P_m) on the union of prime factors."""
    pa, pb, _ = aligned_dists(n, m)
    return relative_disentropy(pa, pb, DeformationParams(q=q), variant)


def _prime_index(p: int, limit: int) -> int:
    """0-based position of p among the primes, or -1 if beyond limit primes."""
    count = 0
    candidate = 2
    while count < limit:
        if is_prime(candidate):
            if candidate == p:
                return count
            count += 1
        candidate += 1
    return -1


def number_to_state(n: int, basis: Literal["packed", "prime_index"] = "packed") -> DensityMatrix:
    """
    Diagonal density matrix whose spectrum is the prime-power distribution of n.

    packed: one slot per distinct prime.
    prime_index: prime p sits at diagonal slot pi(p), so 2, 3, 5 occupy the
    first three slots; the dimension is pi(largest prime).

    Raises:
        DomainError: prime_index dimension above max_matrix_dim
    """
    nd = number_dist(n)
    if basis == "packed":
        return DensityMatrix.diagonal(nd.dist.weights)
    limit = get_settings().max_matrix_dim
    slots = [_prime_index(p, limit) for p in nd.factorization.primes]
    if min(slots) < 0:
        raise DomainError(f"Prime index of {max(nd.factorization.primes)} exceeds max_matrix_dim={limit}")
    diag = np.zeros(max(slots) + 1)
    for s, w in zip(slots, nd.dist.weights):
        diag[s] = w
    return DensityMatrix.diagonal(diag)
