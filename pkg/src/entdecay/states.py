"""State catalog: W, GHZ and the three maximally entangled four-qubit states."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import matcore
from .errors import InvalidArgument, InvalidSubset, NotHermitian, NotPSD, UnknownState, ValidationError

NORM_TOL = 1e-12
TRACE_TOL = 1e-10

# tie-break order used when comparing states
CATALOG_ORDER = ("w4", "phi1", "phi2", "phi3", "w3")


def basis_index(bits: str) -> int:
    return int(bits, 2)


def from_kets(n_qubits: int, terms: Iterable[tuple[str, complex]]) -> np.ndarray:
    """Normalized superposition of computational basis kets given as bit strings."""
    psi = np.zeros(1 << n_qubits, dtype=complex)
    for bits, amp in terms:
        if len(bits) != n_qubits:
            raise InvalidArgument(f"ket {bits!r} is not on {n_qubits} qubits")
        psi[basis_index(bits)] += amp
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise InvalidArgument("zero vector")
    return psi / norm


def w_state(n: int) -> np.ndarray:
    """Symmetric single-excitation state, amplitude 1/sqrt(n) at indices 2**j."""
    if n < 1:
        raise InvalidArgument(f"W state needs n >= 1, got {n}")
    psi = np.zeros(1 << n, dtype=complex)
    psi[[1 << j for j in range(n)]] = 1.0 / np.sqrt(n)
    return psi


def ghz_state(n: int) -> np.ndarray:
    if n < 1:
        raise InvalidArgument(f"GHZ state needs n >= 1, got {n}")
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
    return psi


def phi1() -> np.ndarray:
    return ghz_state(4)


def phi2() -> np.ndarray:
    return from_kets(4, [("1111", 1), ("1100", 1), ("0010", 1), ("0001", 1)])


def phi3() -> np.ndarray:
    return from_kets(
        4,
        [("1111", np.sqrt(2.0)), ("1000", 1), ("0100", 1), ("0010", 1), ("0001", 1)],
    )


def catalog_state(state_id: str) -> np.ndarray:
    """Pure state for a catalog id.

    Accepted ids: ``w3``, ``w4``, ``phi1``, ``phi2``, ``phi3``, ``w:N`` and
    ``ghz:N``.
    """
    key = state_id.strip().lower()
    fixed = {"w3": lambda: w_state(3), "w4": lambda: w_state(4), "phi1": phi1, "phi2": phi2, "phi3": phi3}
    if key in fixed:
        return fixed[key]()
    family, sep, arg = key.partition(":")
    if sep and family in ("w", "ghz"):
        try:
            n = int(arg)
        except ValueError:
            raise UnknownState(f"bad qubit count in state id {state_id!r}") from None
        if n < 1:
            raise UnknownState(f"state id {state_id!r} needs at least one qubit")
        return w_state(n) if family == "w" else ghz_state(n)
    raise UnknownState(f"unknown state {state_id!r}")


def density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise InvalidArgument("state vector is not normalized")
    return np.outer(psi, psi.conj())


def validate_density(rho, herm_tol: float = TRACE_TOL, trace_tol: float = TRACE_TOL, psd_tol: float = 1e-8) -> np.ndarray:
    """Return ``rho`` as an array after checking Hermiticity, unit trace and positivity."""
    rho = matcore.as_matrix(rho)
    matcore.n_qubits_of(rho.shape[0])
    err = matcore.hermiticity_error(rho)
    if err > herm_tol:
        raise NotHermitian(f"density matrix not Hermitian (max |rho - rho^H| = {err:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValidationError(f"density matrix trace {tr.real:.12g} is not 1")
    lam_min = np.linalg.eigvalsh(matcore.hermitize(rho))[0]
    if lam_min < -psd_tol:
        raise NotPSD(f"density matrix has eigenvalue {lam_min:.3e}")
    return rho


def partial_trace(rho, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the qubits in ``keep`` (0-based, any order).

    The kept qubits appear in ascending order in the result.
    """
    rho = matcore.as_matrix(rho)
    n = matcore.n_qubits_of(rho.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise InvalidSubset(f"keep={keep} is not a nonempty subset of 0..{n - 1}")
    drop = [q for q in range(n) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    # trace pairs from the highest axis down so lower axis numbers stay valid
    for q in sorted(drop, reverse=True):
        cur = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + cur)
    d = 1 << len(keep)
    return t.reshape(d, d)
