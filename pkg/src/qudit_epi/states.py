"""Density matrices, spectra and Bloch vectors.

All objects here are immutable: arrays are copied on construction and marked
read-only.  Functions accept either the wrapper types or plain arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EigenFailure, NotHermitian, NotPSD, TraceNotOne

TOL_HERM = 1e-10
TOL_PSD = 1e-10
TOL_TR = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A d x d complex matrix meant to be a quantum state.

    Construction does not check the state invariants; use :func:`validate`
    for that.  Channel outputs are wrapped directly since their validity
    follows from construction (and is checked in the test-suite).
    """

    data: np.ndarray

    def __post_init__(self):
        data = _frozen(self.data, complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {data.shape}")
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted non-increasing, clamped to be non-negative."""

    values: np.ndarray

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=float).ravel())[::-1]
        object.__setattr__(self, "values", _frozen(values, float))

    @classmethod
    def from_probabilities(cls, probs, tol=TOL_TR) -> "Spectrum":
        """Build from a probability vector, checking sign and normalisation."""
        probs = np.asarray(probs, dtype=float).ravel()
        if probs.size == 0:
            raise DimensionMismatch("empty probability vector")
        worst = probs.min()
        if worst < -TOL_PSD:
            raise NotPSD(f"negative probability {worst:.3e}", worst)
        drift = probs.sum() - 1.0
        if abs(drift) > tol:
            raise TraceNotOne(f"probabilities sum to 1{drift:+.3e}", drift)
        return cls(np.clip(probs, 0.0, None))

    @property
    def dim(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __repr__(self):
        return f"Spectrum({np.array2string(self.values, precision=6)})"


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.norm > 1.0 + TOL_PSD:
            raise NotPSD(f"Bloch vector length {self.norm:.12g} exceeds 1",
                         1.0 - self.norm)

    @classmethod
    def from_array(cls, r) -> "BlochVector":
        x, y, z = np.asarray(r, dtype=float)
        return cls(x, y, z)

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def as_matrix(state) -> np.ndarray:
    """Return the underlying complex array of a state or array-like."""
    if isinstance(state, DensityMatrix):
        return state.data
    arr = np.asarray(state, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def hermitian_part(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + m.conj().T)


def eigenvalues_desc(m) -> np.ndarray:
    """Raw eigenvalues of the Hermitian part of ``m``, largest first."""
    try:
        vals = np.linalg.eigvalsh(hermitian_part(as_matrix(m)))
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigensolver failed: {exc}") from exc
    # LAPACK passes NaN through rather than failing
    if not np.all(np.isfinite(vals)):
        raise EigenFailure("eigensolver returned non-finite eigenvalues")
    return vals[::-1]


def validate(m, tol_herm=TOL_HERM, tol_psd=TOL_PSD, tol_tr=TOL_TR) -> DensityMatrix:
    """Check the three state invariants and return a :class:`DensityMatrix`.

    The Hermitian part ``(m + m^dagger)/2`` is what gets returned and what
    the PSD and trace checks see.

    Raises
    ------
    NotHermitian, NotPSD, TraceNotOne
        With the measured deviation attached as ``exc.deviation``.
    """
    m = as_matrix(m)
    asym = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if asym > tol_herm:
        raise NotHermitian(f"matrix is not Hermitian: max |m - m^dagger| = {asym:.3e}", asym)
    h = hermitian_part(m)
    lam_min = float(eigenvalues_desc(h)[-1])
    if lam_min < -tol_psd:
        raise NotPSD(f"matrix is not positive semidefinite: smallest eigenvalue {lam_min:.3e}",
                     lam_min)
    drift = float(np.trace(h).real) - 1.0
    if abs(drift) > tol_tr:
        raise TraceNotOne(f"trace differs from 1 by {drift:.3e}", drift)
    return DensityMatrix(h)


def spectrum(state, tol_psd=TOL_PSD, tol_tr=TOL_TR) -> Spectrum:
    """Sorted eigenvalues of a state, negatives clamped to zero.

    No silent renormalisation: a trace drift beyond ``tol_tr`` raises.
    """
    vals = eigenvalues_desc(state)
    if vals[-1] < -tol_psd:
        raise NotPSD(f"smallest eigenvalue {vals[-1]:.3e}", float(vals[-1]))
    drift = float(vals.sum()) - 1.0
    if abs(drift) > tol_tr:
        raise TraceNotOne(f"eigenvalues sum to 1{drift:+.3e}", drift)
    return Spectrum(np.clip(vals, 0.0, None))


def as_spectrum(obj) -> Spectrum:
    """Coerce a state, spectrum or probability vector into a :class:`Spectrum`."""
    if isinstance(obj, Spectrum):
        return obj
    if isinstance(obj, DensityMatrix):
        return spectrum(obj)
    arr = np.asarray(obj)
    if arr.ndim == 2:
        return spectrum(arr)
    return Spectrum.from_probabilities(arr)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows, cols, seed=None) -> np.ndarray:
    """Matrix of i.i.d. standard complex Gaussians (E|g|^2 = 1)."""
    rng = _rng(seed)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_state(d, rank=None, seed=None) -> DensityMatrix:
    """Sample from the Ginibre-induced measure on rank-``rank`` states.

    ``seed`` may be an integer (deterministic) or a ``numpy`` Generator.
    """
    rank = d if rank is None else rank
    if d < 1 or not 1 <= rank <= d:
        raise ValueError(f"need 1 <= rank <= d, got d={d}, rank={rank}")
    g = ginibre(d, rank, seed)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return DensityMatrix(hermitian_part(rho))


def random_unitary(d, seed=None) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases removed."""
    q, r = np.linalg.qr(ginibre(d, d, seed))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def bloch_to_state(r) -> DensityMatrix:
    vec = r.as_array() if isinstance(r, BlochVector) else np.asarray(r, dtype=float)
    m = 0.5 * (np.eye(2) + sum(c * p for c, p in zip(vec, PAULIS)))
    return DensityMatrix(m)


def state_to_bloch(state) -> BlochVector:
    m = as_matrix(state)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"Bloch vectors need d=2, got d={m.shape[0]}")
    return BlochVector(*(float(np.trace(m @ p).real) for p in PAULIS))


def partial_trace_second(rho12, d) -> DensityMatrix:
    """Trace out the second factor of a state on C^d (x) C^d.

    Composite index convention: (i, k) -> i*d + k.
    """
    m = np.asarray(rho12.data if isinstance(rho12, DensityMatrix) else rho12, dtype=complex)
    if m.shape != (d * d, d * d):
        raise DimensionMismatch(f"expected a {d * d}x{d * d} matrix, got {m.shape}")
    return DensityMatrix(np.einsum("ikjk->ij", m.reshape(d, d, d, d)))


def maximally_mixed(d) -> DensityMatrix:
    return DensityMatrix(np.eye(d) / d)


def basis_state(d, i=0) -> DensityMatrix:
    m = np.zeros((d, d), dtype=complex)
    m[i, i] = 1.0
    return DensityMatrix(m)


def diagonal_state(probs) -> DensityMatrix:
    """Diagonal state with ``probs`` on the diagonal, in the given order."""
    Spectrum.from_probabilities(probs)
    return DensityMatrix(np.diag(np.asarray(probs, dtype=complex)))
