"""The partial swap channel and its relatives.

``boxplus_closed_form`` is the production path (O(d^3)).  The unitary and
Kraus realisations build d^2 x d^2 objects and exist as independent
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DimensionMismatch, DomainError
from .states import BlochVector, DensityMatrix, as_matrix, hermitian_part, partial_trace_second


@dataclass(frozen=True)
class SwapParams:
    """Mixing parameter ``a`` in [0, 1] of the partial swap."""

    a: float

    def __post_init__(self):
        a = float(self.a)
        if not 0.0 <= a <= 1.0:
            raise DomainError(f"a must lie in [0, 1], got {a}")
        object.__setattr__(self, "a", a)

    @property
    def sqrt_a(self) -> float:
        return float(np.sqrt(self.a))

    @property
    def sqrt_1ma(self) -> float:
        return float(np.sqrt(1.0 - self.a))

    @property
    def cross(self) -> float:
        """sqrt(a (1 - a)), the weight of the commutator term."""
        return float(np.sqrt(self.a * (1.0 - self.a)))


def as_params(p) -> SwapParams:
    return p if isinstance(p, SwapParams) else SwapParams(p)


def _pair(rho, sigma) -> Tuple[np.ndarray, np.ndarray]:
    r, s = as_matrix(rho), as_matrix(sigma)
    if r.shape != s.shape:
        raise DimensionMismatch(f"states have different dimensions: {r.shape[0]} vs {s.shape[0]}")
    return r, s


def swap_operator(d, dtype=complex) -> np.ndarray:
    """S with S|i,j> = |j,i>, composite index (i, j) -> i*d + j."""
    if d < 2:
        raise DomainError(f"swap needs d >= 2, got {d}")
    s = np.zeros((d * d, d * d), dtype=dtype)
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    s[(j * d + i).ravel(), (i * d + j).ravel()] = 1
    return s


def partial_swap_unitary(d, p) -> np.ndarray:
    """U_a = sqrt(a) I + i sqrt(1-a) S."""
    p = as_params(p)
    return p.sqrt_a * np.eye(d * d, dtype=complex) + 1j * p.sqrt_1ma * swap_operator(d)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Kraus operators A_k (each d x d^2) of the partial swap channel."""

    operators: Tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def completeness(self) -> np.ndarray:
        """sum_k A_k^dagger A_k; the identity on C^d (x) C^d for a channel."""
        return sum(a.conj().T @ a for a in self.operators)

    def apply(self, rho12) -> DensityMatrix:
        m = as_matrix(rho12)
        d = self.dim
        if m.shape != (d * d, d * d):
            raise DimensionMismatch(f"expected a {d * d}x{d * d} input, got {m.shape}")
        return DensityMatrix(sum(a @ m @ a.conj().T for a in self.operators))


def kraus_operators(d, p) -> KrausSet:
    """A_k = sqrt(a) I (x) <k| + i sqrt(1-a) <k| (x) I, k = 0..d-1."""
    p = as_params(p)
    eye = np.eye(d)
    ops = []
    for k in range(d):
        bra = eye[k:k + 1, :]
        ops.append(p.sqrt_a * np.kron(eye, bra) + 1j * p.sqrt_1ma * np.kron(bra, eye))
    return KrausSet(tuple(o.astype(complex) for o in ops))


def boxplus_closed_form(rho, sigma, p) -> DensityMatrix:
    """a rho + (1-a) sigma - sqrt(a(1-a)) i [rho, sigma]."""
    r, s = _pair(rho, sigma)
    p = as_params(p)
    out = p.a * r + (1.0 - p.a) * s - 1j * p.cross * (r @ s - s @ r)
    return DensityMatrix(hermitian_part(out))


def boxplus_via_unitary(rho, sigma, p) -> DensityMatrix:
    """Tr_2[U_a (rho (x) sigma) U_a^dagger], built densely."""
    r, s = _pair(rho, sigma)
    d = r.shape[0]
    u = partial_swap_unitary(d, p)
    return partial_trace_second(u @ np.kron(r, s) @ u.conj().T, d)


def boxplus_via_kraus(rho, sigma, p) -> DensityMatrix:
    r, s = _pair(rho, sigma)
    return kraus_operators(r.shape[0], p).apply(np.kron(r, s))


boxplus = boxplus_closed_form


def boxplus_bloch(r1, r2, p) -> BlochVector:
    """Qubit rule: a r1 + (1-a) r2 + sqrt(a(1-a)) r1 x r2."""
    p = as_params(p)
    v1 = r1.as_array() if isinstance(r1, BlochVector) else np.asarray(r1, dtype=float)
    v2 = r2.as_array() if isinstance(r2, BlochVector) else np.asarray(r2, dtype=float)
    return BlochVector.from_array(p.a * v1 + (1.0 - p.a) * v2 + p.cross * np.cross(v1, v2))


def mixing_channel(rho, sigma, p) -> DensityMatrix:
    """The trivial comparator a rho + (1-a) sigma."""
    r, s = _pair(rho, sigma)
    p = as_params(p)
    return DensityMatrix(p.a * r + (1.0 - p.a) * s)


@dataclass(frozen=True, eq=False)
class FixedSigmaChannel:
    """rho -> rho boxplus_a sigma with the second input held fixed.

    With ``sigma = I/d`` this is the depolarising channel with parameter a.
    """

    sigma: DensityMatrix
    params: SwapParams

    @property
    def dim(self) -> int:
        return self.sigma.dim

    @property
    def a(self) -> float:
        return self.params.a

    def apply(self, rho) -> DensityMatrix:
        return boxplus_closed_form(rho, self.sigma, self.params)

    __call__ = apply


def fixed_sigma_channel(sigma, p) -> FixedSigmaChannel:
    sigma = sigma if isinstance(sigma, DensityMatrix) else DensityMatrix(sigma)
    return FixedSigmaChannel(sigma, as_params(p))
