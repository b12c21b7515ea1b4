"""Lower bound to multipartite concurrence built from one-vs-rest cuts.

For every cut ``n`` (one qubit against the others) and every generator index
``k`` the term ``C_k^n = max(0, l1 - l2 - l3 - l4)`` uses the square roots of
the four largest eigenvalues of ``rho * S rho^* S``, where ``S`` is the tensor
product of the SO(2) generator on qubit ``n`` with the k-th SO(2**(N-1))
generator on the remaining qubits.  The bound is

    tau = sqrt( (1/N) * sum_n sum_k (C_k^n)**2 ).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import matcore, states
from .errors import IndexOutOfRange, InvalidArgument, NotPSD, NotSorted, WrongDimension

EIG_CLAMP = 1e-12
LAMBDA_CLAMP = np.sqrt(EIG_CLAMP)
PSD_TOL = 1e-8

SO2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def so_generators(d: int) -> list[np.ndarray]:
    """The d(d-1)/2 matrices E_ij - E_ji, i < j, in lexicographic order."""
    if d < 2:
        raise InvalidArgument("SO(d) generators need d >= 2")
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            g = np.zeros((d, d))
            g[i, j] = 1.0
            g[j, i] = -1.0
            out.append(g)
    return out


def terms_per_cut(n_qubits: int) -> int:
    """K = 2**(N-2) * (2**(N-1) - 1)."""
    half = 1 << (n_qubits - 1)
    return half * (half - 1) // 2


@dataclass(frozen=True)
class CutGenerator:
    cut: int
    k: int
    matrix: np.ndarray


def _cut_order(cut: int, n_qubits: int) -> list[int]:
    return [cut] + [q for q in range(n_qubits) if q != cut]


def s_matrix(cut: int, k: int, n_qubits: int) -> CutGenerator:
    """S_k^n with qubit ``cut`` carrying the SO(2) generator (0-based indices)."""
    if n_qubits < 2:
        raise InvalidArgument("cuts need at least two qubits")
    if not 0 <= cut < n_qubits:
        raise IndexOutOfRange(f"cut {cut} outside 0..{n_qubits - 1}")
    n_terms = terms_per_cut(n_qubits)
    if not 0 <= k < n_terms:
        raise IndexOutOfRange(f"generator {k} outside 0..{n_terms - 1}")
    rest = so_generators(1 << (n_qubits - 1))[k]
    local = np.kron(SO2, rest)
    order = _cut_order(cut, n_qubits)
    mat = matcore.permute_qubits(local, matcore.inverse_permutation(order), n_qubits).real
    return CutGenerator(cut, k, mat)


@lru_cache(maxsize=8)
def _generator_stack(n_qubits: int) -> np.ndarray:
    # shape (N, K, d, d); cut-major, then lexicographic (i, j)
    n_terms = terms_per_cut(n_qubits)
    d = 1 << n_qubits
    stack = np.empty((n_qubits, n_terms, d, d))
    for cut in range(n_qubits):
        for k in range(n_terms):
            stack[cut, k] = s_matrix(cut, k, n_qubits).matrix
    stack.setflags(write=False)
    return stack


def tilde_rho(rho, s) -> np.ndarray:
    """Spin-flipped state S rho^* S."""
    rho = matcore.as_matrix(rho)
    mat = s.matrix if isinstance(s, CutGenerator) else np.asarray(s)
    if mat.shape != rho.shape:
        raise WrongDimension(f"generator shape {mat.shape} does not match density {rho.shape}")
    return mat @ rho.conj() @ mat


def lambda4(rho, rho_tilde, method: str = "lapack") -> np.ndarray:
    """Square roots of the four largest eigenvalues of sqrt(rho) rho~ sqrt(rho).

    That Hermitian matrix shares its nonzero spectrum with rho rho~.
    Eigenvalues under 1e-12 count as zero.
    """
    rho = matcore.as_matrix(rho)
    rho_tilde = matcore.as_matrix(rho_tilde)
    if rho.shape != rho_tilde.shape:
        raise WrongDimension("rho and rho_tilde differ in shape")
    root = matcore.psd_sqrt(rho, method=method)
    if np.linalg.eigvalsh(matcore.hermitize(rho_tilde))[0] < -PSD_TOL:
        raise NotPSD("rho_tilde is not positive semidefinite")
    m = matcore.hermitize(root @ rho_tilde @ root)
    w = matcore.hermitian_eig(m, method=method).eigenvalues
    out = np.zeros(4)
    top = w[:4]
    out[: len(top)] = top
    out[out < EIG_CLAMP] = 0.0
    return np.sqrt(out)


def c_term(lambdas: Sequence[float]) -> float:
    """max(0, l1 - l2 - l3 - l4) for a descending quadruple."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (4,):
        raise InvalidArgument("c_term needs exactly four values")
    if np.any(np.diff(lam) > 1e-12):
        raise NotSorted(f"lambdas must be in descending order, got {lam}")
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


@dataclass
class TauResult:
    tau: float
    per_cut: np.ndarray
    per_term: np.ndarray | None = None

    @property
    def n_terms(self) -> int:
        return int(self.per_cut.size * terms_per_cut(self.per_cut.size))


def _all_lambdas(rho: np.ndarray, method: str) -> np.ndarray:
    n = matcore.n_qubits_of(rho.shape[0])
    stack = _generator_stack(n)
    root = matcore.psd_sqrt(rho, method=method)
    # sqrt(rho) rho~ sqrt(rho) = B B^H with B = sqrt(rho) S sqrt(rho)^*, so the
    # lambdas are the singular values of B
    b = root @ stack @ root.conj()
    sv = np.linalg.svd(b, compute_uv=False)[..., :4]
    return np.where(sv < LAMBDA_CLAMP, 0.0, sv)


def tau_lower_bound(rho, keep_terms: bool = False, method: str = "lapack") -> TauResult:
    """Evaluate the concurrence lower bound for an N-qubit density matrix (N >= 2).

    Parameters
    ----------
    rho : array_like
        Density matrix of dimension 2**N.
    keep_terms : bool
        Also return the full (N, K) table of C_k^n.
    method : {"lapack", "jacobi"}
        Eigensolver used for sqrt(rho).
    """
    rho = matcore.as_matrix(rho)
    n = matcore.n_qubits_of(rho.shape[0])
    if n < 2:
        raise InvalidArgument("the bound needs at least two qubits")
    lam = _all_lambdas(rho, method)
    terms = np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])
    per_cut = np.sum(terms**2, axis=1)
    tau = float(np.sqrt(np.sum(per_cut) / n))
    return TauResult(tau, per_cut, terms if keep_terms else None)


def tau(rho) -> float:
    return tau_lower_bound(rho).tau


def pure_bipartite_concurrence(psi, cut: int) -> float:
    """sqrt(2 (1 - Tr rho_n^2)) for the reduced state of qubit ``cut``."""
    rho = states.density(psi)
    red = states.partial_trace(rho, [cut])
    purity = float(np.real(np.trace(red @ red)))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def wootters_concurrence(rho) -> float:
    """Two-qubit concurrence from the eigenvalues of rho (sy x sy) rho^* (sy x sy)."""
    rho = matcore.as_matrix(rho)
    if rho.shape != (4, 4):
        raise WrongDimension(f"Wootters concurrence needs a 4x4 density, got {rho.shape}")
    ev = np.linalg.eigvals(rho @ _SYSY @ rho.conj() @ _SYSY).real
    ev[ev < EIG_CLAMP] = 0.0
    lam = np.sort(np.sqrt(ev))[::-1]
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))
