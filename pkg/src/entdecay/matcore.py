"""Dense complex kernels for registers of up to a few qubits.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The basis is
big-endian: the first tensor factor is the most significant bit, so the ket
``|1000>`` of four qubits sits at index 8.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidArgument, NotHermitian, NotPSD, NumericalError

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-8
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class HermitianEig(NamedTuple):
    """Eigenvalues sorted descending and the matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def approx_equal(a, b, atol: float) -> bool:
    """Entrywise comparison with an explicit absolute tolerance."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) <= atol)


def hermiticity_error(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def kron(a, b) -> np.ndarray:
    """Kronecker product, blocks of ``a`` scaled by ``b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Sequence) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    # Cyclic row-by-row sweeps.  Each 2x2 Hermitian block is first made real
    # by a phase on column q, then zeroed by a real Givens rotation.
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a[offdiag]) ** 2))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # g = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise NumericalError("Jacobi iteration did not converge")
    return np.diag(a).real.copy(), v


def hermitian_eig(m, method: str = "jacobi", tol: float = HERMITIAN_TOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian within ``tol``.
    method : {"jacobi", "lapack"}
        ``"jacobi"`` runs the cyclic Jacobi solver in this module (converged
        when the off-diagonal Frobenius norm drops below 1e-12 times the
        matrix scale); ``"lapack"`` defers to ``numpy.linalg.eigh``.

    Returns
    -------
    HermitianEig
        Eigenvalues sorted descending (stable for ties) and unitary
        eigenvector columns in the same order.
    """
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > tol:
        raise NotHermitian(f"matrix is not Hermitian (max |m - m^H| = {err:.3e})")
    a = hermitize(a)
    if method == "jacobi":
        w, v = _jacobi(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    elif method == "lapack":
        w, v = np.linalg.eigh(a)
    else:
        raise InvalidArgument(f"unknown eigensolver {method!r}")
    order = np.argsort(-w, kind="stable")
    return HermitianEig(w[order], v[:, order])


def psd_sqrt(m, method: str = "jacobi") -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-8, 0)`` are treated as roundoff and clamped to zero.
    """
    w, v = hermitian_eig(m, method=method)
    if w[-1] < -PSD_TOL:
        raise NotPSD(f"minimum eigenvalue {w[-1]:.3e} below -{PSD_TOL:g}")
    root = np.sqrt(np.clip(w, 0.0, None))
    return hermitize((v * root) @ v.conj().T)


def n_qubits_of(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    return n


def permutation_matrix(perm: Sequence[int], n_qubits: int) -> np.ndarray:
    """Basis permutation moving input qubit ``perm[k]`` to output position ``k``."""
    perm = _check_perm(perm, n_qubits)
    dim = 1 << n_qubits
    out = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
        new = 0
        for k in range(n_qubits):
            new = (new << 1) | bits[perm[k]]
        out[new, idx] = 1.0
    return out


def _check_perm(perm: Sequence[int], n_qubits: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(n_qubits)):
        raise DimensionMismatch(f"{perm} is not a permutation of 0..{n_qubits - 1}")
    return perm


def permute_qubits(m, perm: Sequence[int], n_qubits: int) -> np.ndarray:
    """Reorder the tensor factors of an operator on ``n_qubits`` qubits.

    Input qubit ``perm[k]`` becomes qubit ``k`` of the result; equivalent to
    ``P @ m @ P.T`` with ``P = permutation_matrix(perm, n_qubits)`` but done
    as an axis transpose, so it is exact.
    """
    a = as_matrix(m)
    if a.shape[0] != 1 << n_qubits:
        raise DimensionMismatch(f"matrix of dim {a.shape[0]} does not act on {n_qubits} qubits")
    perm = _check_perm(perm, n_qubits)
    t = a.reshape((2,) * (2 * n_qubits))
    axes = list(perm) + [n_qubits + p for p in perm]
    return t.transpose(axes).reshape(a.shape)


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p] = k
    return tuple(inv)
