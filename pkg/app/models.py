"""
Pydantic models for the toolkit's domain types.
"""
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple
import numpy as np
from functools import cached_property
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Branch = Literal["principal", "lower"]
Family = Literal["tsallis_q", "shannon_r2", "kaniadakis"]

PROB_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
EIGEN_CLAMP = -1e-10


# Special functions

class DeformationParams(BaseModel):
    """Indices selecting a deformed function or functional."""
    q: float = Field(1.0, description="Tsallis index")
    kappa: float = Field(0.0, description="Kaniadakis index, kappa^2 < 1")
    lambda_base: float = Field(2.0, description="Logarithm base of R_lambda", gt=0)
    alpha: float = Field(2.0, description="Order parameter of D_{q,alpha}")

    @property
    def r(self) -> Optional[float]:
        """r = 1/(1-q); None at q = 1 where it is undefined."""
        if self.q == 1.0:
            return None
        return 1.0 / (1.0 - self.q)


class BranchPoint(BaseModel):
    """Point where the two real branches of a Lambert-type function meet."""
    z_b: float = Field(..., description="Argument of the branch point")
    w_b: float = Field(..., description="Function value at the branch point")
    finite: bool = Field(True, description="False when no finite branch point exists")


# Classical distributions

class ProbDist(BaseModel):
    """Normalized weight vector over a labeled alphabet."""
    weights: Tuple[float, ...] = Field(..., description="Probabilities p_i", min_length=1)
    labels: Optional[Tuple[str, ...]] = Field(None, description="Optional symbol names")

    @model_validator(mode="after")
    def check_normalized(self) -> "ProbDist":
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(float(np.sum(w)) - 1.0) > PROB_TOL * max(1, len(w)):
            raise ValueError(f"probabilities sum to {float(np.sum(w))!r}, expected 1")
        if self.labels is not None and len(self.labels) != len(self.weights):
            raise ValueError("labels and weights differ in length")
        return self

    @property
    def K(self) -> int:
        return len(self.weights)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @classmethod
    def from_array(cls, weights: Sequence[float], labels: Optional[Sequence[str]] = None) -> "ProbDist":
        return cls(weights=tuple(float(x) for x in weights),
                   labels=tuple(labels) if labels is not None else None)

    @classmethod
    def uniform(cls, K: int) -> "ProbDist":
        return cls.from_array(np.full(K, 1.0 / K))

    @classmethod
    def delta(cls, K: int, index: int = 0) -> "ProbDist":
        w = np.zeros(K)
        w[index] = 1.0
        return cls.from_array(w)


class JointDist(BaseModel):
    """Joint distribution p(x_k, y_j) as a K x J matrix."""
    matrix: Tuple[Tuple[float, ...], ...] = Field(..., description="Rows indexed by x, columns by y")

    @model_validator(mode="after")
    def check_normalized(self) -> "JointDist":
        m = self.array
        if m.ndim != 2 or m.size == 0:
            raise ValueError("joint distribution must be a non-empty matrix")
        if np.any(m < 0):
            raise ValueError("joint probabilities must be non-negative")
        if abs(float(np.sum(m)) - 1.0) > PROB_TOL * max(1, m.size):
            raise ValueError(f"joint probabilities sum to {float(np.sum(m))!r}, expected 1")
        return self

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)

    @classmethod
    def from_array(cls, matrix: np.ndarray) -> "JointDist":
        return cls(matrix=tuple(tuple(float(x) for x in row) for row in np.asarray(matrix)))

    def marginal_x(self) -> ProbDist:
        return ProbDist.from_array(self.array.sum(axis=1))

    def marginal_y(self) -> ProbDist:
        return ProbDist.from_array(self.array.sum(axis=0))

    def transpose(self) -> "JointDist":
        return JointDist.from_array(self.array.T)


class NormalizationContext(BaseModel):
    """Extremes used to map a disentropy onto [0, 1]."""
    K: int = Field(..., description="Support size", ge=1)
    d_min: float = Field(..., description="Disentropy of the uniform K-distribution")
    d_max: float = Field(..., description="Disentropy of a delta distribution")
    family: Family = "tsallis_q"
    params: DeformationParams = Field(default_factory=DeformationParams)


class RandomnessReport(BaseModel):
    """Normalized entropy, normalized disentropy and their difference."""
    s_norm: float = Field(..., description="Normalized entropy in [0, 1]")
    d_norm: float = Field(..., description="Normalized disentropy in [0, 1]")
    r: float = Field(..., description="Degree of randomness in [-1, 1]")


# Classical information

class Source(BaseModel):
    """Memoryless source over a finite alphabet."""
    probs: ProbDist
    alphabet: Optional[Tuple[str, ...]] = None

    @model_validator(mode="after")
    def check_cardinality(self) -> "Source":
        if self.probs.K < 2:
            raise ValueError("a source needs at least two symbols")
        return self

    @property
    def cardinality(self) -> int:
        return self.probs.K


class SequenceStats(BaseModel):
    """Symbol counts of an observed sequence."""
    counts: Tuple[int, ...] = Field(..., description="n_i per symbol")

    @field_validator("counts")
    @classmethod
    def check_counts(cls, v):
        if any(c < 0 for c in v):
            raise ValueError("counts must be non-negative")
        return v

    @property
    def n(self) -> int:
        return int(sum(self.counts))


class Code(BaseModel):
    """Symbol code given by its codeword lengths."""
    lengths: Tuple[int, ...] = Field(..., description="Codeword length per symbol")

    @field_validator("lengths")
    @classmethod
    def check_lengths(cls, v):
        if any(l < 1 for l in v):
            raise ValueError("codeword lengths must be positive integers")
        return v

    def mean_length(self, probs: ProbDist) -> float:
        return float(np.dot(probs.array, np.asarray(self.lengths, dtype=float)))

    def efficiency(self, probs: ProbDist) -> float:
        return 1.0 - self.mean_length(probs) / float(np.log2(probs.K))


class BinaryChannel(BaseModel):
    """Binary symmetric channel with input prior."""
    p0: float = Field(0.5, description="Probability of sending '0'", ge=0, le=1)
    p_c: float = Field(..., description="Crossover probability", ge=0, le=1)


class GLLPParams(BaseModel):
    """Gains and error rates entering the GLLP key rate."""
    sigma: float = Field(0.5, description="Protocol factor, 1/2 for BB84")
    q_mu: float = Field(..., ge=0, le=1)
    e_mu: float = Field(..., ge=0, le=1)
    q_1: float = Field(..., ge=0, le=1)
    e_1: float = Field(..., ge=0, le=1)


class TypicalityReport(BaseModel):
    """Outcome of a delta-typicality test for one sequence."""
    is_typical: bool
    card_bounds: Tuple[float, float] = Field(..., description="Lower and upper cardinality of the typical set, inf past float range")
    log2_card_bounds: Tuple[float, float] = Field(..., description="n(H -/+ delta), exact for any n")
    typical_fraction: float = Field(..., description="2^(-n log2|X| D_norm)")
    d_source: float
    d_bar: float


class SourceCodingReport(BaseModel):
    """Shannon and disentropy bounds on the mean codeword length."""
    mean_length: float
    shannon_lo: float
    shannon_hi: float
    disent_lo: float = Field(..., description="ceil(log2|X|) (1 - D_norm)")
    lambda_window: Tuple[float, float]
    efficiency: float
    d_norm: float


class ChannelReport(BaseModel):
    """Capacities of a binary symmetric channel."""
    joint: JointDist
    shannon_mutual: float
    mutual_disent: float
    c_shannon: float
    c_q: float
    argmin_p0: float


class InequalityCheck(BaseModel):
    """Left side, right side and whether lhs <= rhs holds."""
    lhs: float
    rhs: float
    holds: bool


class KeyRates(BaseModel):
    """Entropy and disentropy forms of the GLLP key rate."""
    rate_entropy: float
    rate_disentropy: float
    relative_gap: Optional[float] = Field(None, description="|difference| / |rate_entropy|")


# Quantum

class DensityMatrix(BaseModel):
    """Hermitian positive semidefinite unit-trace matrix."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray = Field(..., description="Complex dim x dim matrix")

    @field_validator("entries", mode="before")
    @classmethod
    def coerce(cls, v):
        m = np.array(v, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("density matrix must be square")
        return m

    @model_validator(mode="after")
    def check_state(self) -> "DensityMatrix":
        m = self.entries
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(m)))) * 10:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {np.trace(m).real!r}, expected 1")
        low = float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
        if low < EIGEN_CLAMP:
            raise ValueError(f"density matrix has negative eigenvalue {low!r}")
        return self

    @cached_property
    def spectral_decomposition(self) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues sorted descending (round-off negatives clamped to 0) and eigenvectors."""
        m = self.entries
        vals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
        vals = np.clip(vals, 0.0, None)
        order = np.argsort(vals)[::-1]
        return vals[order], vecs[:, order]

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectral_decomposition[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.spectral_decomposition[1]

    @classmethod
    def from_ket(cls, psi: Sequence[complex]) -> "DensityMatrix":
        v = np.asarray(psi, dtype=complex).reshape(-1)
        v = v / np.linalg.norm(v)
        return cls(entries=np.outer(v, v.conj()))

    @classmethod
    def diagonal(cls, weights: Sequence[float]) -> "DensityMatrix":
        return cls(entries=np.diag(np.asarray(weights, dtype=complex)))


class BipartiteState(BaseModel):
    """Density matrix on a dim_a x dim_b tensor product."""
    joint: DensityMatrix
    dim_a: int = Field(..., ge=1)
    dim_b: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_dims(self) -> "BipartiteState":
        if self.joint.dim != self.dim_a * self.dim_b:
            raise ValueError(f"joint dimension {self.joint.dim} != {self.dim_a}*{self.dim_b}")
        return self


class Ensemble(BaseModel):
    """Classical mixture of quantum states."""
    probs: ProbDist
    states: List[DensityMatrix]

    @model_validator(mode="after")
    def check_states(self) -> "Ensemble":
        if len(self.states) != self.probs.K:
            raise ValueError("one state per probability is required")
        if len({s.dim for s in self.states}) != 1:
            raise ValueError("ensemble states must share a dimension")
        return self


class KrausChannel(BaseModel):
    """Trace-preserving completely positive map in Kraus form."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kraus_ops: List[np.ndarray]

    @field_validator("kraus_ops", mode="before")
    @classmethod
    def coerce(cls, v):
        return [np.array(k, dtype=complex) for k in v]

    @model_validator(mode="after")
    def check_trace_preserving(self) -> "KrausChannel":
        total = sum(k.conj().T @ k for k in self.kraus_ops)
        if np.max(np.abs(total - np.eye(total.shape[0]))) > 1e-10:
            raise ValueError("Kraus operators do not sum to the identity")
        return self

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[1]


class POVM(BaseModel):
    """Positive operators summing to the identity."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    elements: List[np.ndarray]

    @field_validator("elements", mode="before")
    @classmethod
    def coerce(cls, v):
        return [np.array(e, dtype=complex) for e in v]

    @model_validator(mode="after")
    def check_povm(self) -> "POVM":
        total = sum(self.elements)
        if np.max(np.abs(total - np.eye(total.shape[0]))) > 1e-10:
            raise ValueError("POVM elements do not sum to the identity")
        for e in self.elements:
            if np.min(np.linalg.eigvalsh(0.5 * (e + e.conj().T))) < -1e-10:
                raise ValueError("POVM element is not positive semidefinite")
        return self


class BipartiteReport(BaseModel):
    """Marginal, joint, mutual and conditional quantum disentropies."""
    d_a: float
    d_b: float
    d_ab: float
    mutual: float
    cond_a_given_b: float


class MonogamyReport(BaseModel):
    """Disentanglement of each cut of a pure three-qubit state."""
    d_a_bc: float
    d_b_ac: float
    d_c_ab: float
    d_ab: float
    d_ac: float
    d_bc: float
    checks: Tuple[bool, bool, bool]

    @property
    def all_hold(self) -> bool:
        return all(self.checks)


class HolevoReport(BaseModel):
    """Classical mutual disentropy of a measured ensemble against the ensemble bound."""
    lhs_mutual: float
    rhs_bound: float
    satisfied: bool


class ChannelFanoReport(BaseModel):
    """Exchange disentropy of a channel against its fidelity bound."""
    d_exchange: float
    rhs: float
    fidelity: float
    satisfied: bool


class DiscordReport(BaseModel):
    """Disentropy discord with the optimal projective measurement on B."""
    mutual: float
    best_j: float
    discord: float
    theta: float = Field(..., description="Polar angle of the optimal projector")
    phi: float = Field(..., description="Azimuth of the optimal projector")


# Operator equation

class HermitianMatrix(BaseModel):
    """Hermitian matrix with its eigen-decomposition."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def coerce(cls, v):
        m = np.array(v, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("matrix must be square")
        return m

    @model_validator(mode="after")
    def check_hermitian(self) -> "HermitianMatrix":
        m = self.entries
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(m)))) * 10:
            raise ValueError("matrix is not Hermitian")
        return self

    @cached_property
    def spectral_decomposition(self) -> Tuple[np.ndarray, np.ndarray]:
        m = self.entries
        return np.linalg.eigh(0.5 * (m + m.conj().T))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectral_decomposition[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.spectral_decomposition[1]

    @classmethod
    def from_spectrum(cls, values: Sequence[float], vectors: np.ndarray) -> "HermitianMatrix":
        v = np.asarray(vectors, dtype=complex)
        m = v @ np.diag(np.asarray(values, dtype=complex)) @ v.conj().T
        return cls(entries=0.5 * (m + m.conj().T))


class SolvabilityReport(BaseModel):
    """Conditions under which A e_q^A = B has a Hermitian solution."""
    hermitian_ok: bool = True
    commute_ok: bool = True
    q_integer_r_ok: bool = True
    eigen_domain_ok: bool = True
    failing_eigenvalues: List[float] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hermitian_ok and self.commute_ok and self.q_integer_r_ok and self.eigen_domain_ok


# Phase space

class StateParams(BaseModel):
    """Parameters of the parametric Wigner functions."""
    beta: complex = Field(0j, description="Coherent amplitude")
    tau: float = Field(0.0, description="Unitless Kerr time")
    sigma: Optional[float] = Field(8 * np.pi, description="Kerr damping constant, None disables damping", gt=0)
    r: float = Field(0.0, description="Squeezing modulus", ge=0)
    phi: float = Field(0.0, description="Squeezing phase")
    t: float = Field(0.0, description="Mixing time", ge=0)


class QuadratureSpec(BaseModel):
    """Tensor-product Gauss-Legendre rule on [-radius, radius]^d."""
    radius: float = Field(..., gt=0)
    nodes: int = Field(..., ge=32)
    fock_cutoff: int = Field(60, ge=1)
    scheme: Literal["gauss_legendre"] = "gauss_legendre"

    def doubled(self) -> "QuadratureSpec":
        return self.model_copy(update={"nodes": 2 * self.nodes})


class WignerField(BaseModel):
    """Quasi-probability on 1-mode (2D) or 2-mode (4D) phase space."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str
    modes: Literal[1, 2]
    evaluator: Callable[..., np.ndarray] = Field(..., description="Vectorized (x1, y1[, x2, y2]) -> w")
    params: StateParams = Field(default_factory=StateParams)
    nonnegative: bool = Field(False, description="Known to be pointwise >= 0")

    def __call__(self, *coords: np.ndarray) -> np.ndarray:
        return self.evaluator(*coords)


# Applications

class BHParams(BaseModel):
    """Horizon area in Planck units and the Barbero-Immirzi parameter."""
    a: float = Field(..., description="Dimensionless area A/4l_p^2", gt=0)
    gamma_exp: float = Field(0.1, description="Measured Barbero-Immirzi parameter", gt=0)
    family: Literal["tsallis", "kaniadakis"] = "tsallis"


class BHIndex(BaseModel):
    """Tsallis index of a horizon with its deformation carried exactly."""
    q: float
    deformation: float = Field(..., description="a(1-q)")
    log_scale: float = Field(..., description="ln(1 + a(1-q))")


class GrayImage(BaseModel):
    """8-bit grayscale raster."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pixels: np.ndarray = Field(..., description="height x width uint8 array")

    @field_validator("pixels", mode="before")
    @classmethod
    def coerce(cls, v):
        a = np.asarray(v)
        if a.ndim != 2 or a.size == 0:
            raise ValueError("image must be a non-empty 2D array")
        if a.dtype != np.uint8:
            if np.any(a < 0) or np.any(a > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            a = a.astype(np.uint8)
        return a

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


class SegmentationResult(BaseModel):
    """Per-threshold objectives and the selected thresholds."""
    q: float
    weighting: Literal["value", "histogram"] = "value"
    thresholds: List[int] = Field(..., description="Candidate t values with both classes non-empty")
    sab: List[float] = Field(..., description="Pseudo-additive entropy S_q(A) + S_q(B) + (1-q) S_q(A) S_q(B)")
    dab: List[float] = Field(..., description="Pseudo-additive disentropy D_q(A) + D_q(B) - (1-q) D_q(A) D_q(B)")
    t_entropy: int = Field(..., description="argmax of sab")
    t_disentropy: int = Field(..., description="argmin of dab")


class Factorization(BaseModel):
    """Prime-power decomposition n = prod p_i^{n_i}."""
    n: int = Field(..., ge=2)
    primes: Tuple[int, ...]
    exponents: Tuple[int, ...]

    @model_validator(mode="after")
    def check_product(self) -> "Factorization":
        if len(self.primes) != len(self.exponents) or not self.primes:
            raise ValueError("primes and exponents must be non-empty and aligned")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be distinct and ascending")
        prod = 1
        for p, e in zip(self.primes, self.exponents):
            prod *= p ** e
        if prod != self.n:
            raise ValueError(f"factorization reconstructs {prod}, not {self.n}")
        return self

    @property
    def is_prime_power(self) -> bool:
        return len(self.primes) == 1


class NumberDist(BaseModel):
    """Distribution {log_N(p_i^{n_i})} associated with an integer."""
    factorization: Factorization
    dist: ProbDist


# Command line

class RunConfig(BaseModel):
    """Validated parameters of one command line invocation."""
    subcommand: str
    params: Dict[str, Any] = Field(default_factory=dict)
    output_format: Literal["json", "csv"] = "json"
    output_path: Optional[str] = None
    seed: int = 0


class CurveSeries(BaseModel):
    """One x/y curve with its provenance."""
    name: str
    x_label: str
    y_label: str
    x: List[float]
    y: List[float]
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_lengths(self) -> "CurveSeries":
        if len(self.x) != len(self.y):
            raise ValueError("x and y differ in length")
        return self
