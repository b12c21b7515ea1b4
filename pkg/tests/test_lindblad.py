import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from _util import random_density
from entdecay import lindblad, matcore, states
from entdecay.errors import DimensionMismatch, InvalidArgument, StepTooLarge

W4 = states.density(states.w_state(4))


def chan(cid, n=4, kappa=1.0):
    return lindblad.NoiseChannel.named(cid, n, kappa)


# --- channels and operators -----------------------------------------------------


@pytest.mark.parametrize("cid, n, count", [("x", 4, 4), ("iso", 4, 12), ("z", 1, 1), ("y", 3, 3)])
def test_operator_count(cid, n, count):
    assert len(lindblad.lindblad_ops(chan(cid, n))) == count


def test_single_qubit_z_operator():
    (op,) = lindblad.lindblad_ops(chan("z", 1, kappa=2.0))
    assert np.allclose(op, math.sqrt(2.0) * np.diag([1, -1]))


def test_operator_order_is_qubit_major():
    ops = lindblad.lindblad_ops(chan("iso", 2))
    expected = [lindblad.embed(lindblad.PAULI[a], q, 2) for q in range(2) for a in "xyz"]
    for got, want in zip(ops, expected):
        assert np.array_equal(got, want)


@pytest.mark.parametrize("alias", ["d", "dep", "Depolarizing", "ISO", "xyz"])
def test_channel_aliases(alias):
    assert lindblad.channel_name(alias) == "iso"


@pytest.mark.parametrize(
    "kwargs",
    [dict(axes=(), n_qubits=2), dict(axes=("w",), n_qubits=2), dict(axes=("x",), n_qubits=0),
     dict(axes=("x",), n_qubits=2, kappa=0.0), dict(axes=("x",), n_qubits=2, kappa=(1.0,))],
)
def test_channel_validation(kwargs):
    with pytest.raises(InvalidArgument):
        lindblad.NoiseChannel(**kwargs)


def test_unknown_channel_name():
    with pytest.raises(InvalidArgument):
        lindblad.channel_name("amplitude")


# --- generator --------------------------------------------------------------------


def test_rhs_w4_bit_flip():
    d = lindblad.rhs(W4, chan("x"))
    assert abs(d[0, 0] - 1.0) < 1e-15
    assert abs(d[1, 1] + 1.0) < 1e-15


def test_rhs_w4_phase_flip():
    d = lindblad.rhs(W4, chan("z"))
    assert np.max(np.abs(np.diag(d))) == 0
    assert abs(d[1, 2] + 1.0) < 1e-15


@pytest.mark.parametrize("cid", ["x", "y", "z", "iso"])
def test_maximally_mixed_is_fixed(cid):
    assert np.max(np.abs(lindblad.rhs(np.eye(16) / 16, chan(cid)))) < 1e-16


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["x", "y", "z", "iso"]), st.integers(1, 4))
def test_rhs_traceless_and_hermitian(seed, cid, n):
    rho = random_density(np.random.default_rng(seed), 1 << n)
    d = lindblad.rhs(rho, chan(cid, n))
    assert abs(np.trace(d)) < 1e-12
    assert matcore.hermiticity_error(d) < 1e-12


def test_rhs_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lindblad.rhs(np.eye(8) / 8, chan("x", 4))


def test_liouvillian_matches_rhs(rng):
    rho = random_density(rng, 8)
    h = random_density(rng, 8)
    ch = chan("iso", 3, kappa=0.7)
    via_sup = (lindblad.liouvillian(ch, h) @ rho.reshape(-1)).reshape(8, 8)
    assert np.max(np.abs(via_sup - lindblad.rhs(rho, ch, h))) < 1e-13


# --- Euler step ---------------------------------------------------------------------


def test_euler_zero_step():
    assert np.array_equal(lindblad.euler_step(W4, chan("x"), 0.0), W4)


def test_euler_negative_step():
    with pytest.raises(InvalidArgument):
        lindblad.euler_step(W4, chan("x"), -1e-3)


@pytest.mark.parametrize("cid", ["x", "iso"])
def test_euler_is_first_order(cid):
    dt = 1e-4
    e = lindblad.euler_step(W4, chan(cid), dt)
    exact = lindblad.propagate(W4, chan(cid), dt, step=dt)
    assert np.max(np.abs(e - exact)) < 20 * dt**2


def test_euler_w4_bit_flip_matrix():
    # small-time matrix: population 4*kappa*dt/4 flows into |0000>, W block diagonal loses it
    dt = 1e-3
    e = lindblad.euler_step(W4, chan("x"), dt)
    assert abs(e[0, 0] - dt) < 1e-15
    assert abs(e[1, 1] - (1 - 4 * dt) / 4) < 1e-15


def test_euler_w4_depolarizing_corner():
    dt = 1e-3
    e = lindblad.euler_step(W4, chan("iso"), dt)
    # X and Y flips on each of the four qubits feed |0000>
    assert abs(e[0, 0] - 2 * dt) < 1e-15


# --- propagation ----------------------------------------------------------------------


def test_propagate_zero_time():
    assert np.array_equal(lindblad.propagate(W4, chan("x"), 0.0), W4)


def test_propagate_w4_phase_flip_coherence():
    rho = lindblad.propagate(W4, chan("z"), 0.5)
    assert abs(rho[1, 2] - math.exp(-2) / 4) < 1e-10
    assert abs(rho[1, 2] - 0.0338338) < 1e-7


def test_propagate_w4_bit_flip_corner():
    rho = lindblad.propagate(W4, chan("x"), 0.1)
    expected = (1 + 2 * math.exp(-0.2) - 2 * math.exp(-0.6) - math.exp(-0.8)) / 16
    assert abs(rho[0, 0] - expected) < 1e-10


@pytest.mark.parametrize("sid", ["w4", "phi1", "phi2", "phi3"])
@pytest.mark.parametrize("cid", ["x", "y", "z", "iso"])
def test_propagate_matches_matrix_exponential(sid, cid):
    rho0 = states.density(states.catalog_state(sid))
    ch = chan(cid)
    exact = (scipy.linalg.expm(0.7 * lindblad.liouvillian(ch)) @ rho0.reshape(-1)).reshape(16, 16)
    assert np.max(np.abs(lindblad.propagate(rho0, ch, 0.7) - exact)) < 1e-10


def test_propagate_with_hamiltonian(rng):
    rho0 = random_density(rng, 4)
    h = random_density(rng, 4)
    ch = chan("z", 2, kappa=0.3)
    exact = (scipy.linalg.expm(1.3 * lindblad.liouvillian(ch, h)) @ rho0.reshape(-1)).reshape(4, 4)
    assert np.max(np.abs(lindblad.propagate(rho0, ch, 1.3, hamiltonian=h) - exact)) < 1e-10


def test_heterogeneous_rates(rng):
    rho0 = random_density(rng, 8)
    ch = lindblad.NoiseChannel(("x", "z"), 3, (0.5, 1.0, 2.0))
    assert ch.rates == (0.5, 1.0, 2.0)
    exact = (scipy.linalg.expm(0.4 * lindblad.liouvillian(ch)) @ rho0.reshape(-1)).reshape(8, 8)
    assert np.max(np.abs(lindblad.propagate(rho0, ch, 0.4) - exact)) < 1e-10


def test_step_halving_converges():
    for sid in ["w4", "phi3"]:
        rho0 = states.density(states.catalog_state(sid))
        a = lindblad.propagate(rho0, chan("iso"), 1.0, step=1e-3)
        b = lindblad.propagate(rho0, chan("iso"), 1.0, step=5e-4)
        assert np.max(np.abs(a - b)) < 1e-8


def test_step_lands_on_target():
    # 0.35 / 0.1 is not an integer; the step shrinks to hit 0.35 exactly
    # four RK4 steps of h = 0.0875 on a coherence decaying at rate 4
    rho = lindblad.propagate(W4, chan("z"), 0.35, step=0.1)
    z = -4 * 0.0875
    growth = 1 + z + z**2 / 2 + z**3 / 6 + z**4 / 24
    assert abs(rho[1, 2] - growth**4 / 4) < 1e-15


def test_trajectory_matches_individual_calls():
    times = [0.0, 0.1, 0.25, 0.6]
    traj = lindblad.trajectory(W4, chan("iso"), times)
    for t, rho in zip(times, traj):
        assert np.max(np.abs(rho - lindblad.propagate(W4, chan("iso"), t))) < 1e-12


def test_trajectory_rejects_unsorted():
    with pytest.raises(InvalidArgument):
        lindblad.trajectory(W4, chan("x"), [0.2, 0.1])


def test_propagate_argument_errors():
    with pytest.raises(InvalidArgument):
        lindblad.propagate(W4, chan("x"), -0.1)
    with pytest.raises(InvalidArgument):
        lindblad.propagate(W4, chan("x"), 0.1, step=0.0)


def test_step_too_large_detected():
    with pytest.raises(StepTooLarge):
        lindblad.propagate(W4, chan("iso"), 100.0, step=10.0)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["x", "y", "z", "iso"]), st.floats(0.0, 2.0))
def test_random_states_stay_physical(seed, cid, kt):
    rho0 = random_density(np.random.default_rng(seed), 8, rank=2)
    rho = lindblad.propagate(rho0, chan(cid, 3), kt)
    assert abs(np.trace(rho) - 1) < 1e-9
    assert matcore.hermiticity_error(rho) < 1e-12
    assert np.linalg.eigvalsh(rho)[0] >= -1e-8


# --- X and Y channels -----------------------------------------------------------------------


def test_w4_y_is_local_phase_conjugate_of_x():
    u = np.diag(1j ** np.array([bin(i).count("1") for i in range(16)]))
    for kt in np.linspace(0, 1, 11):
        rx = lindblad.propagate(W4, chan("x"), kt)
        ry = lindblad.propagate(W4, chan("y"), kt)
        assert np.max(np.abs(u @ rx @ u.conj().T - ry)) < 1e-12
        assert np.max(np.abs(np.abs(rx) - np.abs(ry))) < 1e-12


# --- orbit classes ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "sid, cid, count",
    [("w4", "x", 11), ("w4", "y", 11), ("w4", "z", 2), ("w4", "iso", 8), ("phi3", "z", 4)],
)
def test_orbit_class_counts(sid, cid, count):
    part = lindblad.orbit_classes(states.density(states.catalog_state(sid)), chan(cid))
    assert part.n_nonzero == count


def test_orbit_classes_partition_grid():
    part = lindblad.orbit_classes(W4, chan("x"))
    cells = set(part.zero_class)
    for cls in part.classes:
        assert not cells & cls
        cells |= cls
    assert cells == {(i, j) for i in range(16) for j in range(16)}
    assert part.class_of(1, 2) == part.class_of(2, 1)
    assert part.class_of(0, 0) != part.class_of(1, 1)


def test_orbit_classes_need_five_samples():
    with pytest.raises(InvalidArgument):
        lindblad.orbit_classes(W4, chan("x"), sample_times=[0.1, 0.2])
