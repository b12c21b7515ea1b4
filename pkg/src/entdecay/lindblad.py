"""Pauli noise channels and Lindblad evolution of small qubit registers.

Time enters only through ``kappa * t``; with the default ``kappa = 1`` the
time arguments below are the dimensionless ``kt``.  The system Hamiltonian is
zero for every catalog run, but :func:`rhs` and :func:`propagate` accept one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import matcore
from .errors import DimensionMismatch, InvalidArgument, StepTooLarge

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
CHANNEL_AXES = {"x": ("x",), "y": ("y",), "z": ("z",), "iso": ("x", "y", "z")}
_CHANNEL_ALIASES = {"d": "iso", "dep": "iso", "depolarizing": "iso", "isotropic": "iso", "xyz": "iso"}

DEFAULT_STEP = 1e-3
TRACE_DRIFT_MAX = 1e-6


def channel_name(channel_id: str) -> str:
    key = channel_id.strip().lower()
    key = _CHANNEL_ALIASES.get(key, key)
    if key not in CHANNEL_AXES:
        raise InvalidArgument(f"unknown channel {channel_id!r} (expected x, y, z or iso)")
    return key


@dataclass(frozen=True)
class NoiseChannel:
    """Independent Pauli noise on every qubit.

    ``kappa`` is either one rate shared by all qubits or a per-qubit sequence;
    each listed axis acts on each qubit at that qubit's rate.
    """

    axes: tuple[str, ...]
    n_qubits: int
    kappa: float | tuple[float, ...] = 1.0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        axes = tuple(sorted(set(a.lower() for a in self.axes)))
        if not axes or any(a not in PAULI for a in axes):
            raise InvalidArgument(f"axes must be a nonempty subset of x, y, z, got {self.axes}")
        if self.n_qubits < 1:
            raise InvalidArgument("n_qubits must be positive")
        rates = self.rates
        if len(rates) != self.n_qubits or any(not (k > 0) for k in rates):
            raise InvalidArgument(f"kappa must be positive (one value or one per qubit), got {self.kappa}")
        object.__setattr__(self, "axes", axes)
        if not isinstance(self.kappa, (int, float)):
            object.__setattr__(self, "kappa", tuple(float(k) for k in self.kappa))

    @classmethod
    def named(cls, channel_id: str, n_qubits: int, kappa: float = 1.0) -> "NoiseChannel":
        key = channel_name(channel_id)
        return cls(CHANNEL_AXES[key], n_qubits, kappa, name=key)

    @property
    def rates(self) -> tuple[float, ...]:
        if isinstance(self.kappa, (int, float)):
            return (float(self.kappa),) * self.n_qubits
        return tuple(float(k) for k in self.kappa)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


def embed(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Single-qubit operator on ``qubit`` (0 = most significant), identity elsewhere."""
    eye = np.eye(2, dtype=complex)
    return matcore.kron_all([op if q == qubit else eye for q in range(n_qubits)])


def lindblad_ops(ch: NoiseChannel) -> list[np.ndarray]:
    """Operators sqrt(kappa_i) sigma_a^i, qubit-major, axes in x < y < z order."""
    rates = ch.rates
    return [
        math.sqrt(rates[q]) * embed(PAULI[a], q, ch.n_qubits)
        for q in range(ch.n_qubits)
        for a in ch.axes
    ]


def _check_dims(rho: np.ndarray, ch: NoiseChannel) -> np.ndarray:
    rho = matcore.as_matrix(rho)
    if rho.shape[0] != ch.dim:
        raise DimensionMismatch(f"density of dim {rho.shape[0]} but channel acts on {ch.n_qubits} qubits")
    return rho


def rhs(rho, ch: NoiseChannel, hamiltonian=None) -> np.ndarray:
    """Lindblad generator: sum over L of L rho L^H - {L^H L, rho}/2, minus i[H, rho]."""
    rho = _check_dims(rho, ch)
    out = np.zeros_like(rho)
    for op in lindblad_ops(ch):
        op_h = op.conj().T
        ltl = op_h @ op
        out += op @ rho @ op_h - 0.5 * (ltl @ rho + rho @ ltl)
    if hamiltonian is not None:
        h = matcore.as_matrix(hamiltonian)
        out += -1j * (h @ rho - rho @ h)
    return out


def euler_step(rho, ch: NoiseChannel, dt: float) -> np.ndarray:
    """First-order step ``rho + rhs(rho) * dt``, the small-time expansion."""
    if dt < 0:
        raise InvalidArgument("dt must be non-negative")
    rho = _check_dims(rho, ch)
    return rho + rhs(rho, ch) * dt


def liouvillian(ch: NoiseChannel, hamiltonian=None) -> np.ndarray:
    """Superoperator acting on the row-major flattening of rho.

    Uses vec(A rho B) = (A kron B^T) vec(rho).
    """
    d = ch.dim
    eye = np.eye(d, dtype=complex)
    sup = np.zeros((d * d, d * d), dtype=complex)
    for op in lindblad_ops(ch):
        ltl = op.conj().T @ op
        sup += np.kron(op, op.conj()) - 0.5 * (np.kron(ltl, eye) + np.kron(eye, ltl.T))
    if hamiltonian is not None:
        h = matcore.as_matrix(hamiltonian)
        sup += -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    return sup


def _rk4_matrix(gen: np.ndarray, h: float) -> np.ndarray:
    # one classical RK4 step of y' = gen @ y is exactly this polynomial in h*gen
    a = h * gen
    a2 = a @ a
    a3 = a2 @ a
    return np.eye(gen.shape[0], dtype=complex) + a + a2 / 2.0 + a3 / 6.0 + (a3 @ a) / 24.0


@lru_cache(maxsize=64)
def _cached_rk4(ch: NoiseChannel, h: float) -> np.ndarray:
    return _rk4_matrix(liouvillian(ch), h)


def _n_steps(duration: float, step: float) -> int:
    if step <= 0:
        raise InvalidArgument("step must be positive")
    return max(1, math.ceil(duration / step - 1e-9))


def propagate(rho0, ch: NoiseChannel, t_final: float, step: float = DEFAULT_STEP, hamiltonian=None) -> np.ndarray:
    """Integrate the master equation from 0 to ``t_final`` with fixed-step RK4.

    The step is shrunk slightly so an integer number of steps lands exactly on
    ``t_final``.  After every step the state is re-Hermitized; a trace drift
    above 1e-6 raises :class:`StepTooLarge`.
    """
    rho = _check_dims(rho0, ch).astype(complex, copy=True)
    if t_final < 0:
        raise InvalidArgument("t_final must be non-negative")
    if t_final == 0:
        return rho
    n = _n_steps(t_final, step)
    h = t_final / n
    if hamiltonian is None:
        prop = _cached_rk4(ch, h)
    else:
        prop = _rk4_matrix(liouvillian(ch, hamiltonian), h)
    d = ch.dim
    tr0 = np.trace(rho).real
    for _ in range(n):
        rho = (prop @ rho.reshape(-1)).reshape(d, d)
        rho = 0.5 * (rho + rho.conj().T)
        if abs(np.trace(rho).real - tr0) > TRACE_DRIFT_MAX:
            raise StepTooLarge(f"trace drift {abs(np.trace(rho).real - tr0):.3e} with step {h:g}")
    return rho


def trajectory(rho0, ch: NoiseChannel, times: Sequence[float], step: float = DEFAULT_STEP) -> list[np.ndarray]:
    """Densities at each of the ascending ``times``, integrating segment by segment."""
    times = [float(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])) or (times and times[0] < 0):
        raise InvalidArgument("times must be non-negative and ascending")
    out = []
    rho = _check_dims(rho0, ch).astype(complex, copy=True)
    t_prev = 0.0
    for t in times:
        if t > t_prev:
            rho = propagate(rho, ch, t - t_prev, step)
        out.append(rho)
        t_prev = t
    return out


@dataclass
class OrbitPartition:
    """Matrix entries grouped by identical time dependence."""

    classes: list[frozenset[tuple[int, int]]]
    zero_class: frozenset[tuple[int, int]]

    @property
    def n_nonzero(self) -> int:
        return len(self.classes)

    def class_of(self, i: int, j: int) -> int | None:
        for k, cls in enumerate(self.classes):
            if (i, j) in cls:
                return k
        return None


def orbit_classes(
    rho0,
    ch: NoiseChannel,
    sample_times: Iterable[float] | None = None,
    rtol: float = 1e-9,
    zero_tol: float = 1e-12,
    step: float = DEFAULT_STEP,
) -> OrbitPartition:
    """Partition the entries of rho(t) by numerical equality across sample times.

    Entries below ``zero_tol`` at every sample form the zero class.  Classes
    are listed in order of their first entry in row-major order.
    """
    if sample_times is None:
        scale = 1.0 / max(ch.rates)
        sample_times = [scale * f for f in (0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0)]
    times = sorted(float(t) for t in sample_times)
    if len(times) < 5:
        raise InvalidArgument("orbit detection needs at least five sample times")
    traj = np.array([r.reshape(-1) for r in trajectory(rho0, ch, times, step)]).T
    d = ch.dim
    reps: list[np.ndarray] = []
    members: list[list[tuple[int, int]]] = []
    zero = []
    for flat, sig in enumerate(traj):
        pos = divmod(flat, d)
        if np.max(np.abs(sig)) < zero_tol:
            zero.append(pos)
            continue
        for k, rep in enumerate(reps):
            scale = np.maximum(np.abs(sig), np.abs(rep))
            if np.all(np.abs(sig - rep) <= rtol * scale + 1e-15):
                members[k].append(pos)
                break
        else:
            reps.append(sig)
            members.append([pos])
    return OrbitPartition([frozenset(m) for m in members], frozenset(zero))
