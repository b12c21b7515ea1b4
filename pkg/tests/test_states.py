import itertools

import numpy as np
import pytest

from entdecay import matcore, states
from entdecay.errors import InvalidArgument, InvalidSubset, NotHermitian, NotPSD, UnknownState, ValidationError

CATALOG = ["w3", "w4", "phi1", "phi2", "phi3", "ghz:3", "w:5"]


def test_w_state_small():
    assert np.array_equal(states.w_state(1), [0, 1])
    psi = states.w_state(2)
    assert np.allclose(psi, [0, 1 / np.sqrt(2), 1 / np.sqrt(2), 0], atol=1e-15)


def test_w4_amplitudes():
    psi = states.w_state(4)
    assert np.flatnonzero(psi).tolist() == [1, 2, 4, 8]
    assert np.allclose(psi[[1, 2, 4, 8]], 0.5, atol=1e-15)


def test_w_state_rejects_zero():
    with pytest.raises(InvalidArgument):
        states.w_state(0)


def test_phi_states():
    p1 = states.catalog_state("phi1")
    assert np.flatnonzero(p1).tolist() == [0, 15]
    assert np.allclose(p1[[0, 15]], 1 / np.sqrt(2), atol=1e-15)
    p2 = states.catalog_state("phi2")
    assert np.flatnonzero(p2).tolist() == [1, 2, 12, 15]
    assert np.allclose(p2[[1, 2, 12, 15]], 0.5, atol=1e-15)
    p3 = states.catalog_state("phi3")
    assert abs(p3[15] - np.sqrt(2) / np.sqrt(6)) < 1e-15
    assert np.allclose(p3[[1, 2, 4, 8]], 1 / np.sqrt(6), atol=1e-15)


@pytest.mark.parametrize("bad", ["phi4", "w", "ghz:x", "w:0", ""])
def test_unknown_state(bad):
    with pytest.raises(UnknownState):
        states.catalog_state(bad)


@pytest.mark.parametrize("sid", CATALOG)
def test_catalog_norm_and_rank(sid):
    psi = states.catalog_state(sid)
    assert abs(np.linalg.norm(psi) - 1) < 1e-12
    w = matcore.hermitian_eig(states.density(psi), method="lapack").eigenvalues
    assert w[1] < 1e-10


def test_density_examples():
    assert np.array_equal(states.density([1, 0]), np.diag([1, 0]))
    rho = states.density(states.w_state(4))
    idx = [1, 2, 4, 8]
    assert np.allclose(rho[np.ix_(idx, idx)], 0.25, atol=1e-15)
    assert abs(np.trace(rho) - 1) < 1e-15
    rho = states.density(states.phi1())
    for i, j in itertools.product([0, 15], repeat=2):
        assert abs(rho[i, j] - 0.5) < 1e-15


def test_density_requires_normalized():
    with pytest.raises(InvalidArgument):
        states.density([1, 1])


def test_partial_trace_examples():
    prod = states.density(np.kron([1, 0], [0, 1]))
    assert np.allclose(states.partial_trace(prod, [1]), np.diag([0, 1]))
    ghz = states.density(states.phi1())
    w4 = states.density(states.w_state(4))
    for q in range(4):
        assert np.allclose(states.partial_trace(ghz, [q]), np.eye(2) / 2, atol=1e-15)
        assert np.allclose(states.partial_trace(w4, [q]), np.diag([0.75, 0.25]), atol=1e-15)


def test_partial_trace_keeps_ascending_order():
    rho = states.density(np.kron(np.kron([1, 0], [0, 1]), [1, 0]))
    # qubits (0,1) hold |01>; asking for (1,0) still returns qubits in order 0,1
    red = states.partial_trace(rho, [1, 0])
    assert red[1, 1] == 1


@pytest.mark.parametrize("keep", [[], [4], [-1]])
def test_partial_trace_bad_subset(keep):
    with pytest.raises(InvalidSubset):
        states.partial_trace(np.eye(16) / 16, keep)


def test_partial_trace_preserves_trace_and_hermiticity(rng):
    from _util import random_density

    for _ in range(20):
        rho = random_density(rng, 16)
        for r in range(1, 4):
            for keep in itertools.combinations(range(4), r):
                red = states.partial_trace(rho, keep)
                assert abs(np.trace(red) - 1) < 1e-12
                assert matcore.hermiticity_error(red) < 1e-15


@pytest.mark.parametrize("n", [2, 3, 4])
def test_w_density_permutation_invariant(n):
    rho = states.density(states.w_state(n))
    for perm in itertools.permutations(range(n)):
        assert np.max(np.abs(matcore.permute_qubits(rho, perm, n) - rho)) < 1e-14


def test_validate_density():
    states.validate_density(np.eye(4) / 4)
    with pytest.raises(NotHermitian):
        states.validate_density(np.array([[0.5, 0.1], [0, 0.5]]))
    with pytest.raises(ValidationError):
        states.validate_density(np.eye(2))
    with pytest.raises(NotPSD):
        states.validate_density(np.diag([1.5, -0.5]))
