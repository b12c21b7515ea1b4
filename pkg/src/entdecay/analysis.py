"""Sweeps, sudden-death search, robustness tables and catalog verification.

All time arguments are the dimensionless ``kt`` (unit decay rate).
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import analytic, concurrence, lindblad, matcore, states
from .errors import InvalidArgument, NotInCatalog, ValidationError

SOURCES = ("engine-numeric", "engine-analytic-density", "closed-form")
_SOURCE_ALIASES = {"numeric": "engine-numeric", "analytic": "engine-analytic-density", "formula": "closed-form"}

DEATH_THRESHOLD = 1e-9
DEATH_TOL = 1e-6
DEATH_SCAN_POINTS = 201
VERIFY_TOL = 1e-6
TIE_TOL = 1e-12

CSV_HEADER = ("kt", "tau_raw", "tau_normalized")


def source_name(source: str) -> str:
    key = source.strip().lower()
    key = _SOURCE_ALIASES.get(key, key)
    if key not in SOURCES:
        raise InvalidArgument(f"unknown source {source!r} (expected one of {', '.join(SOURCES)})")
    return key


def load_state(state_id: str) -> np.ndarray:
    """Initial density for a catalog id or ``file:PATH``."""
    if state_id.startswith("file:"):
        return read_density(state_id[len("file:"):])
    return states.density(states.catalog_state(state_id))


def _channel_for(rho: np.ndarray, channel_id: str) -> lindblad.NoiseChannel:
    return lindblad.NoiseChannel.named(channel_id, matcore.n_qubits_of(rho.shape[0]))


def _grid(kt_max: float, points: int) -> np.ndarray:
    if not kt_max > 0:
        raise InvalidArgument("kt_max must be positive")
    if points < 2:
        raise InvalidArgument("need at least two grid points")
    return np.linspace(0.0, kt_max, points)


def _tau_series(state_id: str, channel_id: str, kts: Sequence[float], source: str, step: float) -> list[float]:
    """Raw tau at ascending, non-negative ``kts``."""
    source = source_name(source)
    if source == "closed-form":
        formula = analytic.tau_formula(state_id, channel_id)
        if formula is None:
            raise NotInCatalog(f"no closed-form tau for ({state_id}, {channel_id})")
        return [formula(kt) for kt in kts]
    if source == "engine-analytic-density":
        return [concurrence.tau(analytic.closed_form_density(state_id, channel_id, kt, step)) for kt in kts]
    rho0 = load_state(state_id)
    traj = lindblad.trajectory(rho0, _channel_for(rho0, channel_id), kts, step)
    return [concurrence.tau(r) for r in traj]


def _normalize(raw: Sequence[float], ref: float) -> list[float]:
    return [r / ref if ref > 0 else 0.0 for r in raw]


@dataclass
class TauCurve:
    state_id: str
    channel_id: str
    rows: list[tuple[float, float, float]]
    source: str = "engine-numeric"

    @property
    def kt(self) -> np.ndarray:
        return np.array([r[0] for r in self.rows])

    @property
    def tau_raw(self) -> np.ndarray:
        return np.array([r[1] for r in self.rows])

    @property
    def tau_normalized(self) -> np.ndarray:
        return np.array([r[2] for r in self.rows])


def sweep(
    state_id: str,
    channel_id: str,
    kt_max: float = 1.0,
    points: int = 101,
    source: str = "engine-numeric",
    step: float = lindblad.DEFAULT_STEP,
) -> TauCurve:
    """Tau on a uniform grid ``0..kt_max`` together with its value normalized at kt = 0."""
    source = source_name(source)
    grid = _grid(kt_max, points)
    raw = _tau_series(state_id, channel_id, grid, source, step)
    norm = _normalize(raw, raw[0])
    rows = [(float(k), float(r), float(n)) for k, r, n in zip(grid, raw, norm)]
    return TauCurve(state_id, lindblad.channel_name(channel_id), rows, source)


@dataclass
class SuddenDeathReport:
    state_id: str
    channel_id: str
    kt_star: float | None
    bracket: tuple[float, float] | None
    tolerance: float = DEATH_TOL
    source: str = "engine-numeric"

    def line(self) -> str:
        head = f"state={self.state_id} channel={self.channel_id} source={self.source}"
        if self.kt_star is None:
            return f"{head} kt_star=none"
        lo, hi = self.bracket
        return f"{head} kt_star={self.kt_star:.10g} bracket=[{lo:.10g},{hi:.10g}] tol={self.tolerance:g}"


def _tau_function(state_id: str, channel_id: str, source: str, step: float) -> tuple[str, Callable[[float], float]]:
    if source == "auto":
        source = "closed-form" if analytic.tau_formula(state_id, channel_id) is not None else "engine-numeric"
    source = source_name(source)
    if source == "closed-form":
        formula = analytic.tau_formula(state_id, channel_id)
        if formula is None:
            raise NotInCatalog(f"no closed-form tau for ({state_id}, {channel_id})")
        return source, formula
    if source == "engine-analytic-density":
        return source, lambda kt: concurrence.tau(analytic.closed_form_density(state_id, channel_id, kt, step))
    rho0 = load_state(state_id)
    ch = _channel_for(rho0, channel_id)
    return source, lambda kt: concurrence.tau(lindblad.propagate(rho0, ch, kt, step))


def sudden_death(
    state_id: str,
    channel_id: str,
    kt_max: float = 5.0,
    source: str = "auto",
    step: float = lindblad.DEFAULT_STEP,
    threshold: float = DEATH_THRESHOLD,
    tol: float = DEATH_TOL,
) -> SuddenDeathReport:
    """First ``kt`` where tau falls to ``threshold`` or below.

    A 201-point scan of ``[0, kt_max]`` brackets the crossing, then bisection
    narrows it below ``tol``.  ``kt_star`` is the upper bracket end, so tau
    there is already at or below the threshold.  ``source="auto"`` uses the
    closed-form tau when one exists and the integrated density otherwise.
    """
    grid = _grid(kt_max, DEATH_SCAN_POINTS)
    source, fn = _tau_function(state_id, channel_id, source, step)
    channel = lindblad.channel_name(channel_id)
    if source == "engine-numeric":
        # one pass along the grid, then bisection restarts from the bracket's left density
        rho0 = load_state(state_id)
        ch = _channel_for(rho0, channel_id)
        traj = lindblad.trajectory(rho0, ch, grid, step)
        scan = [concurrence.tau(r) for r in traj]
    else:
        traj = None
        scan = [fn(kt) for kt in grid]
    below = [i for i, v in enumerate(scan) if v <= threshold]
    if not below:
        return SuddenDeathReport(state_id, channel, None, None, tol, source)
    i = below[0]
    if i == 0:
        return SuddenDeathReport(state_id, channel, 0.0, (0.0, 0.0), tol, source)
    lo, hi = float(grid[i - 1]), float(grid[i])
    if traj is not None:
        rho_lo = traj[i - 1]
        fn = lambda kt: concurrence.tau(lindblad.propagate(rho_lo, ch, kt - grid[i - 1], step))  # noqa: E731
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) > threshold:
            lo = mid
        else:
            hi = mid
    return SuddenDeathReport(state_id, channel, hi, (lo, hi), tol, source)


@dataclass
class CompareTable:
    channel_id: str
    kt_grid: list[float]
    state_ids: list[str]
    normalized: dict[str, list[float]]
    argmax: list[str]
    raw: dict[str, list[float]] = field(default_factory=dict)

    def format(self) -> str:
        head = "kt".rjust(8) + "".join(s.rjust(12) for s in self.state_ids) + "  argmax"
        lines = [head]
        for j, kt in enumerate(self.kt_grid):
            vals = "".join(f"{self.normalized[s][j]:12.6f}" for s in self.state_ids)
            lines.append(f"{kt:8.4f}{vals}  {self.argmax[j]}")
        return "\n".join(lines)


def _catalog_rank(state_ids: Sequence[str]) -> list[str]:
    order = {s: i for i, s in enumerate(states.CATALOG_ORDER)}
    return sorted(state_ids, key=lambda s: (order.get(s, len(order)), state_ids.index(s)))


def compare(
    state_ids: Sequence[str],
    channel_id: str,
    kt_grid: Iterable[float],
    source: str = "engine-numeric",
    step: float = lindblad.DEFAULT_STEP,
) -> CompareTable:
    """Normalized tau of several states on a shared grid and the leader at each point.

    Values within 1e-12 of the maximum tie; ties go to the earliest state in
    the catalog order w4, phi1, phi2, phi3, w3 (other ids after, in input order).
    """
    state_ids = list(dict.fromkeys(state_ids))
    if not state_ids:
        raise InvalidArgument("compare needs at least one state")
    grid = [float(k) for k in kt_grid]
    if not grid or min(grid) < 0:
        raise InvalidArgument("kt grid must be a nonempty list of non-negative values")
    points = sorted(set(grid) | {0.0})
    raw, norm = {}, {}
    for s in state_ids:
        series = dict(zip(points, _tau_series(s, channel_id, points, source, step)))
        raw[s] = [series[k] for k in grid]
        norm[s] = _normalize(raw[s], series[0.0])
    ranked = _catalog_rank(state_ids)
    leaders = []
    for j in range(len(grid)):
        best = max(norm[s][j] for s in state_ids)
        leaders.append(next(s for s in ranked if norm[s][j] >= best - TIE_TOL))
    return CompareTable(lindblad.channel_name(channel_id), grid, state_ids, norm, leaders, raw)


@dataclass
class VerifyRow:
    kt: float
    deviation: float
    trace_error: float
    hermiticity_error: float
    min_eigenvalue: float


@dataclass
class VerifyReport:
    state_id: str
    channel_id: str
    rows: list[VerifyRow]
    hybrid_symbols: frozenset[str]
    n_hybrid_entries: int

    @property
    def max_deviation(self) -> float:
        return max(r.deviation for r in self.rows)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= VERIFY_TOL

    def lines(self) -> list[str]:
        hyb = ",".join(sorted(self.hybrid_symbols)) or "-"
        out = [
            f"state={self.state_id} channel={self.channel_id} max_deviation={self.max_deviation:.3e} "
            f"hybrid_symbols={hyb} hybrid_entries={self.n_hybrid_entries} status={'ok' if self.passed else 'FAIL'}"
        ]
        for r in self.rows:
            out.append(
                f"kt={r.kt:.6g} deviation={r.deviation:.3e} trace_error={r.trace_error:.3e} "
                f"hermiticity_error={r.hermiticity_error:.3e} min_eig={r.min_eigenvalue:.3e}"
            )
        return out


def verify(
    state_id: str,
    channel_id: str,
    kt_grid: Iterable[float] | None = None,
    step: float = lindblad.DEFAULT_STEP,
) -> VerifyReport:
    """Compare the closed-form density with the integrator on ``kt_grid``.

    Entries backed by an undefined symbol are copied from the integrator, so
    they are excluded from the deviation and only counted.  Diagnostics
    describe the closed-form matrix.
    """
    entry = analytic.closed_form_entry(state_id, channel_id)
    grid = sorted(float(k) for k in (np.linspace(0, 1, 21) if kt_grid is None else kt_grid))
    if not grid or grid[0] < 0:
        raise InvalidArgument("kt grid must be a nonempty list of non-negative values")
    rho0 = states.density(states.catalog_state(entry.state_id))
    ch = lindblad.NoiseChannel.named(entry.channel_id, matcore.n_qubits_of(rho0.shape[0]))
    mask = entry.hybrid_mask()
    rows = []
    for kt, numeric in zip(grid, lindblad.trajectory(rho0, ch, grid, step)):
        closed = entry.instantiate(kt, fill=numeric)
        diff = np.abs(closed - numeric)[~mask]
        rows.append(
            VerifyRow(
                kt,
                float(np.max(diff, initial=0.0)),
                float(abs(np.trace(closed) - 1.0)),
                matcore.hermiticity_error(closed),
                float(np.linalg.eigvalsh(matcore.hermitize(closed))[0]),
            )
        )
    return VerifyReport(entry.state_id, entry.channel_id, rows, entry.hybrid_symbols, int(mask.sum()))


# --- file formats -------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_curve_csv(curve: TauCurve, path) -> None:
    """Write ``kt,tau_raw,tau_normalized`` rows at 17 significant digits."""
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in curve.rows:
            w.writerow([_fmt(v) for v in row])


def read_curve_csv(path, state_id: str = "", channel_id: str = "", source: str = "engine-numeric") -> TauCurve:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValidationError(f"{path}: expected header {','.join(CSV_HEADER)}")
        rows = []
        for n, rec in enumerate(reader, start=2):
            if len(rec) != 3:
                raise ValidationError(f"{path}:{n}: expected 3 fields")
            rows.append(tuple(float(v) for v in rec))
    return TauCurve(state_id, channel_id, rows, source)


def write_compare_csv(table: CompareTable, path) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kt", *table.state_ids, "argmax"])
        for j, kt in enumerate(table.kt_grid):
            w.writerow([_fmt(kt), *(_fmt(table.normalized[s][j]) for s in table.state_ids), table.argmax[j]])


def write_density(rho, path) -> None:
    """``dim=<d>`` then one ``row col re im`` line per entry, 0-based, row-major."""
    rho = matcore.as_matrix(rho)
    d = rho.shape[0]
    with _open_out(path) as fh:
        fh.write(f"dim={d}\n")
        for i in range(d):
            for j in range(d):
                z = rho[i, j]
                fh.write(f"{i} {j} {_fmt(z.real)} {_fmt(z.imag)}\n")


def read_density(path) -> np.ndarray:
    """Parse a density file and validate Hermiticity, trace and positivity."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("dim="):
        raise ValidationError(f"{path}: first line must be dim=<2^N>")
    try:
        d = int(lines[0][4:])
    except ValueError:
        raise ValidationError(f"{path}: bad dimension line {lines[0]!r}") from None
    matcore.n_qubits_of(d)
    if len(lines) - 1 != d * d:
        raise ValidationError(f"{path}: expected {d * d} entries, found {len(lines) - 1}")
    rho = np.zeros((d, d), dtype=complex)
    seen = np.zeros((d, d), dtype=bool)
    for n, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        try:
            i, j = int(parts[0]), int(parts[1])
            re, im = float(parts[2]), float(parts[3])
        except (ValueError, IndexError):
            raise ValidationError(f"{path}:{n}: expected 'row col re im'") from None
        if len(parts) != 4 or not (0 <= i < d and 0 <= j < d) or seen[i, j]:
            raise ValidationError(f"{path}:{n}: bad or repeated entry {ln!r}")
        rho[i, j] = complex(re, im)
        seen[i, j] = True
    return states.validate_density(rho)


class _open_out:
    # "-" or None means stdout
    def __init__(self, path):
        self.path = path
        self.fh = None

    def __enter__(self):
        if self.path in (None, "-"):
            import sys

            return sys.stdout
        self.fh = open(os.fspath(self.path), "w", newline="\n")
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()
        return False


def format_number(x: float | None) -> str:
    return "none" if x is None or (isinstance(x, float) and math.isnan(x)) else _fmt(x)
