"""Dense-matrix oracle and state-level simulation.

Everything here works with explicit numpy arrays: density matrices are
``2**n x 2**n`` complex arrays (qubit 1 is the leftmost tensor factor, hence
the most significant bit of a basis index), Pauli-component vectors are flat
real arrays of length ``4**n`` indexed by flat multi-index.  These routines
are the independent cross-check for the symbolic bitmask path: Choi matrices
are built by explicit Kronecker sums and handed to a Hermitian eigensolver,
with no reuse of the exact integer transform.

Dense limits: ``n <= 5`` for state-sized matrices, ``n <= 3`` for Choi
matrices (``4**n`` dimensional).
"""

from __future__ import annotations

import functools

import numpy as np

from . import gf2
from .errors import CapacityError, DimensionMismatchError, InvalidStabilizerSetError
from .maps import PceMap
from .pauli import (
    DENSE_QUBIT_LIMIT,
    MultiIndex,
    SINGLE_QUBIT_PAULIS,
    _sp_parity,
    pauli_basis,
    pauli_string_dense,
)

__all__ = [
    "CHOI_QUBIT_LIMIT",
    "pauli_components",
    "from_pauli_components",
    "purity_from_components",
    "apply_pce",
    "apply_generator_kraus",
    "choi_basis_terms",
    "choi_dense",
    "choi_pauli_vector",
    "partial_trace",
    "qc_channel",
    "common_eigenbasis",
    "qc_project",
    "pauli_transfer_matrix",
    "is_positive_semidefinite",
]

CHOI_QUBIT_LIMIT = 3


def _infer_n(dim: int, what: str) -> int:
    n = dim.bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"{what} dimension {dim} is not a power of two")
    if n > DENSE_QUBIT_LIMIT:
        raise CapacityError(f"dense limit is n <= {DENSE_QUBIT_LIMIT}, got n={n}")
    return n


def _infer_n_components(size: int) -> int:
    n = (size.bit_length() - 1) // 2
    if size <= 0 or 4**n != size:
        raise ValueError(f"component vector length {size} is not a power of four")
    return n


def pauli_components(rho: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Expansion coefficients ``r_f = tr(rho P_f)`` over all Pauli strings.

    Raises:
        ValueError: if ``rho`` is not Hermitian within ``tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    n = _infer_n(rho.shape[0], "density matrix")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian within tolerance")
    return np.einsum("aij,ji->a", pauli_basis(n), rho).real


def from_pauli_components(r: np.ndarray) -> np.ndarray:
    """Reconstruct the density matrix ``2**-n * sum_f r_f P_f``."""
    r = np.asarray(r, dtype=float)
    n = _infer_n_components(r.size)
    return np.einsum("a,aij->ij", r, pauli_basis(n)) / 2**n


def purity_from_components(r: np.ndarray) -> float:
    """``2**-n * sum_f r_f**2``, which equals ``tr(rho**2)``."""
    r = np.asarray(r, dtype=float)
    n = _infer_n_components(r.size)
    return float(np.dot(r, r)) / 2**n


def apply_pce(pce: PceMap, state: np.ndarray) -> np.ndarray:
    """Apply the componentwise mask; accepts a component vector or a density
    matrix, returns the masked component vector."""
    state = np.asarray(state)
    r = pauli_components(state) if state.ndim == 2 else state.astype(float)
    if r.size != 4**pce.n:
        raise DimensionMismatchError(
            f"state has {r.size} components, map expects {4**pce.n}"
        )
    return r * pce.tau_vector()


def apply_generator_kraus(label: MultiIndex, rho: np.ndarray) -> np.ndarray:
    """Kraus route of the elementary channel: ``(rho + P rho P) / 2``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[0] != 2**label.n:
        raise DimensionMismatchError(
            f"state dimension {rho.shape[0]} does not match n={label.n}"
        )
    sigma = pauli_string_dense(label)
    return (rho + sigma @ rho @ sigma) / 2


@functools.lru_cache(maxsize=4)
def choi_basis_terms(n: int) -> np.ndarray:
    """Per-index Choi building blocks, stacked along axis 0.

    Term ``f`` is the Kronecker chain over qubits of (P_digit x P_digit*),
    with the system and copy factor of each qubit adjacent.  Cached and
    read-only.
    """
    if n > CHOI_QUBIT_LIMIT:
        raise CapacityError(f"Choi matrices limited to n <= {CHOI_QUBIT_LIMIT}")
    dim = 4**n
    out = np.empty((dim, dim, dim), dtype=complex)
    for f in range(dim):
        idx = MultiIndex(n, f)
        term = np.array([[1.0 + 0j]])
        for k in range(1, n + 1):
            sigma = SINGLE_QUBIT_PAULIS[idx.digit(k)]
            term = np.kron(term, np.kron(sigma, sigma.conj()))
        out[f] = term
    out.setflags(write=False)
    return out


def choi_dense(pce: PceMap) -> np.ndarray:
    """Dense Choi matrix ``2**-n * sum_f tau_f (P x P*) terms``."""
    terms = choi_basis_terms(pce.n)
    tau = pce.tau_vector().astype(float)
    dim = 4**pce.n
    return (tau @ terms.reshape(dim, dim * dim)).reshape(dim, dim) / 2**pce.n


def choi_pauli_vector(a: MultiIndex) -> np.ndarray:
    """Vectorized Pauli string in the Choi matrix's interleaved qubit order."""
    vec = np.array([1.0 + 0j])
    for k in range(1, a.n + 1):
        vec = np.kron(vec, SINGLE_QUBIT_PAULIS[a.digit(k)].reshape(4))
    return vec


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Trace out all qubits not in ``keep`` (1-based indices)."""
    rho = np.asarray(rho, dtype=complex)
    n = _infer_n(rho.shape[0], "density matrix")
    kept = sorted({int(k) - 1 for k in keep})
    if not kept or kept[0] < 0 or kept[-1] >= n:
        raise ValueError(f"keep must be a nonempty subset of 1..{n}")
    row = [chr(ord("a") + i) for i in range(n)]
    col = list(row)
    for offset, i in enumerate(kept):
        col[i] = chr(ord("a") + n + offset)
    spec = "".join(row) + "".join(col)
    out = "".join(row[i] for i in kept) + "".join(col[i] for i in kept)
    reduced = np.einsum(f"{spec}->{out}", rho.reshape((2,) * (2 * n)))
    dim = 2 ** len(kept)
    return reduced.reshape(dim, dim)


def _coerce_labels(strings) -> list[MultiIndex]:
    """Accept base-4 strings or MultiIndex objects interchangeably."""
    return [
        s if isinstance(s, MultiIndex) else MultiIndex.from_string(s)
        for s in strings
    ]


def _commuting_generators(strings: list[MultiIndex]) -> list[int]:
    """RREF generators of a commuting family; raises on an anticommuting pair."""
    n = strings[0].n
    basis = gf2.rref(s.code for s in strings)
    for i, u in enumerate(basis):
        for v in basis[i + 1 :]:
            if _sp_parity(u, v, n):
                raise InvalidStabilizerSetError(
                    f"labels {MultiIndex(n, u)} and {MultiIndex(n, v)} do not commute"
                )
    return basis


def qc_channel(strings: list[MultiIndex]) -> PceMap:
    """PCE channel of a maximal commuting index set (its diagonal projector).

    The input must contain the zero index, have exactly ``2**n`` distinct
    pairwise-commuting elements, and be closed under componentwise addition;
    the resulting channel preserves exactly that index set.

    Raises:
        InvalidStabilizerSetError: naming the specific failed requirement.
    """
    if not strings:
        raise InvalidStabilizerSetError("empty index set")
    strings = _coerce_labels(strings)
    n = strings[0].n
    if any(s.n != n for s in strings):
        raise DimensionMismatchError("labels have mixed qubit counts")
    codes = {s.code for s in strings}
    if len(codes) != len(strings):
        raise InvalidStabilizerSetError("duplicate labels in index set")
    if len(codes) != 2**n:
        raise InvalidStabilizerSetError(
            f"index set has {len(codes)} elements, expected 2**{n} = {2**n}"
        )
    if 0 not in codes:
        raise InvalidStabilizerSetError("index set must contain the zero index")
    basis = _commuting_generators(strings)
    if 1 << len(basis) != len(codes):
        raise InvalidStabilizerSetError(
            "index set is not closed under componentwise addition"
        )
    return PceMap.from_preserved(n, codes)


def common_eigenbasis(strings: list[MultiIndex]) -> np.ndarray:
    """Orthonormal simultaneous eigenbasis of a commuting Pauli family.

    Returns a ``2**n x 2**n`` unitary whose columns are the eigenvectors.
    Computed by diagonalizing a generic real combination of independent
    generators (weights 3**-i, so every joint sign pattern gets a distinct
    eigenvalue).
    """
    strings = _coerce_labels(strings)
    n = strings[0].n
    basis = _commuting_generators(strings)
    mix = np.zeros((2**n, 2**n), dtype=complex)
    for i, code in enumerate(basis):
        mix += 3.0 ** -(i + 1) * pauli_string_dense(MultiIndex(n, code))
    _, vectors = np.linalg.eigh(mix)
    return vectors


def qc_project(rho: np.ndarray, basis_vectors: np.ndarray) -> np.ndarray:
    """Erase off-diagonal entries of ``rho`` in the given orthonormal basis."""
    v = np.asarray(basis_vectors, dtype=complex)
    diag = np.diag(v.conj().T @ np.asarray(rho, dtype=complex) @ v)
    return (v * diag) @ v.conj().T


def pauli_transfer_matrix(channel, n: int) -> np.ndarray:
    """Matrix of a channel in the normalized Pauli basis.

    ``channel`` maps density-matrix-like arrays to arrays; entry (a, b) is
    ``2**-n tr(P_a channel(P_b))``.  For a PCE channel this is diagonal with
    the 0/1 mask on the diagonal.
    """
    basis = pauli_basis(n)
    dim = 4**n
    out = np.empty((dim, dim), dtype=complex)
    for b in range(dim):
        image = channel(basis[b])
        out[:, b] = np.einsum("aij,ji->a", basis, image) / 2**n
    return out


def is_positive_semidefinite(matrix: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether a Hermitian matrix has all eigenvalues ``>= -tol``.

    Raises:
        ValueError: if the matrix is not Hermitian within ``tol``.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if np.abs(matrix - matrix.conj().T).max() > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    return bool(np.linalg.eigvalsh(matrix).min() >= -tol)
