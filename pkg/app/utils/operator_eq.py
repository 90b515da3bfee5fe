"""
Lambert-Tsallis operator equation A e_q^A = B for Hermitian matrices.

All maps act on the spectrum in the matrix's own eigenbasis, so A and B
always commute.
"""
import logging
from typing import List, Tuple

import numpy as np

from app.config import get_settings
from app.exceptions import DomainError, EigenDomainError, NonIntegerR, NotInvolutory
from app.models import DensityMatrix, HermitianMatrix, SolvabilityReport
from app.utils.special_functions import wq

logger = logging.getLogger(__name__)

_R_TOL = 1e-12

CNOT = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def integer_r(q: float) -> bool:
    """True when q = 1 or 1/(1-q) is an integer."""
    if q == 1.0:
        return True
    r = 1.0 / (1.0 - q)
    return abs(r - round(r)) <= _R_TOL * max(1.0, abs(r))


def _check_r(q: float) -> None:
    if not integer_r(q):
        raise NonIntegerR(f"1/(1-q) = {1.0 / (1.0 - q)} is not an integer for q = {q}")


def _q_exp_values(values: np.ndarray, q: float) -> np.ndarray:
    """e_q on eigenvalues, collecting every cutoff violation."""
    if q == 1.0:
        return np.exp(values)
    base = 1.0 + (1.0 - q) * values
    bad = (base < 0) | ((q > 1.0) & (base <= 0))
    if np.any(bad):
        raise EigenDomainError(
            f"e_q undefined at eigenvalues {values[bad].tolist()} for q = {q}",
            eigenvalues=values[bad],
        )
    r = 1.0 / (1.0 - q)
    if integer_r(q):
        return np.power(base, int(round(r)))
    return np.power(base, r)


def _check_dim(dim: int) -> None:
    limit = get_settings().max_matrix_dim
    if dim > limit:
        raise DomainError(f"Matrix dimension {dim} exceeds the configured limit {limit}")


def matrix_q_exp(a: HermitianMatrix, q: float) -> HermitianMatrix:
    """
    Matrix q-exponential U e_q(D) U^dagger.

    Raises:
        NonIntegerR: 1/(1-q) is not an integer
        DomainError: B is not Hermitian
        EigenDomainError: some 1 + (1-q) a_n falls below the cutoff
    """
    _check_r(q)
    _check_dim(a.dim)
    return HermitianMatrix.from_spectrum(_q_exp_values(a.eigenvalues, q), a.eigenvectors)


def lambert_tsallis_apply(a: HermitianMatrix, q: float) -> HermitianMatrix:
    """The Lambert-Tsallis operator A e_q^A."""
    _check_r(q)
    _check_dim(a.dim)
    values = a.eigenvalues
    return HermitianMatrix.from_spectrum(values * _q_exp_values(values, q), a.eigenvectors)


def _spectral_wq(values: np.ndarray, q: float) -> Tuple[np.ndarray, List[float]]:
    try:
        return np.atleast_1d(wq(values, q)), []
    except DomainError:
        failing = []
        for v in values:
            try:
                wq(float(v), q)
            except DomainError:
                failing.append(float(v))
        return np.array([]), failing


def _is_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    """||M - M^dagger|| within tol, relative to the largest entry."""
    return bool(np.max(np.abs(m - m.conj().T)) <= tol * max(1.0, float(np.max(np.abs(m)))))


def solve_operator_equation(b: HermitianMatrix, q: float) -> Tuple[HermitianMatrix, SolvabilityReport]:
    """
    Solve A e_q^A = B as A = U diag(W_q(b_n)) U^dagger in B's eigenbasis.

    Args:
        b: Hermitian right-hand side
        q: Tsallis index with 1/(1-q) integer, or q = 1

    Returns:
        (A, report) with every condition satisfied

    Raises:
        NonIntegerR: 1/(1-q) is not an integer
        EigenDomainError: an eigenvalue of B lies outside the real W_q domain;
            the populated report is attached under details["report"]
    """
    _check_dim(b.dim)
    report = SolvabilityReport(q_integer_r_ok=integer_r(q), hermitian_ok=_is_hermitian(b.entries))
    if not report.q_integer_r_ok:
        raise NonIntegerR(f"1/(1-q) is not an integer for q = {q}", details={"report": report.model_dump()})
    if not report.hermitian_ok:
        raise DomainError("Right-hand side B is not Hermitian", details={"report": report.model_dump()})

    values = b.eigenvalues
    # integer spectra (gates, number operators) come back from eigh off by an ulp
    nearest = np.round(values)
    values = np.where(np.abs(values - nearest) < 1e-12, nearest, values)
    mapped, failing = _spectral_wq(values, q)
    if failing:
        report.eigen_domain_ok = False
        report.failing_eigenvalues = failing
        logger.info(f"Operator equation unsolvable for q={q}: eigenvalues {failing} outside the W_q domain")
        err = EigenDomainError(f"W_q undefined at eigenvalues {failing} for q = {q}", eigenvalues=failing)
        err.details["report"] = report.model_dump()
        raise err

    a = HermitianMatrix.from_spectrum(mapped, b.eigenvectors)
    commutator = a.entries @ b.entries - b.entries @ a.entries
    scale = max(1.0, float(np.max(np.abs(a.entries))) * float(np.max(np.abs(b.entries))))
    report.commute_ok = bool(np.max(np.abs(commutator)) <= 1e-10 * scale)
    report.hermitian_ok = _is_hermitian(a.entries)
    return a, report


def gate_family_uq(g: HermitianMatrix, q: float) -> np.ndarray:
    """
    Unitary exp(i G e_q^G) of a Hermitian involution G.

    Raises:
        NotInvolutory: G^2 differs from the identity
        EigenDomainError: e_q(+-1) undefined for this q
    """
    m = g.entries
    if np.max(np.abs(m @ m - np.eye(g.dim))) > 1e-10:
        raise NotInvolutory("Gate generator must square to the identity")
    values = np.round(g.eigenvalues)
    phases = np.exp(1j * values * _q_exp_values(values, q))
    v = g.eigenvectors
    return v @ np.diag(phases) @ v.conj().T


def disentropy_via_operator(b: DensityMatrix, q: float) -> float:
    """Tr(B^q A) with A the solution of A e_q^A = B."""
    a, _ = solve_operator_equation(HermitianMatrix(entries=b.entries), q)
    vals, vecs = np.linalg.eigh(0.5 * (b.entries + b.entries.conj().T))
    b_q = (vecs * np.power(np.clip(vals, 0.0, None), q)) @ vecs.conj().T
    return float(np.real(np.trace(b_q @ a.entries)))
