import numpy as np
import pytest

from icogrover.errors import DimensionError
from icogrover.qmath import (
    MINUS,
    PLUS,
    BlockState,
    basis_for_dim,
    block_trace,
    check_density_matrix,
    dagger,
    is_density_matrix,
    kron,
    maximally_mixed,
    partial_trace_last_qubit,
    pauli_basis,
    project_controls,
    random_density_matrix,
    random_operator,
    twirl,
)

from conftest import maxabs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pauli_basis_is_unitary_and_orthogonal(n):
    basis = pauli_basis(n)
    d = 2**n
    assert len(basis) == d * d
    assert basis.labels[0] == "I" * n
    assert maxabs(basis.ops[0], np.eye(d)) == 0.0
    flat = basis.ops.reshape(len(basis), -1)
    gram = np.conj(flat) @ flat.T
    assert maxabs(gram, d * np.eye(d * d)) < 1e-12


def test_pauli_basis_cached_and_read_only():
    assert pauli_basis(2) is pauli_basis(2)
    with pytest.raises(ValueError):
        pauli_basis(2).ops[0, 0, 0] = 3.0


@pytest.mark.parametrize("d", [2, 4, 8, 16])
def test_twirl_of_arbitrary_operator(d, rng):
    v = random_operator(d, rng)
    assert maxabs(twirl(v, basis_for_dim(d)), np.trace(v) * np.eye(d) / d) < 1e-12


@pytest.mark.parametrize("d", [3, 6, 1])
def test_basis_needs_power_of_two(d):
    with pytest.raises(DimensionError):
        basis_for_dim(d)


def test_random_density_matrix_is_valid(rng):
    for d in (2, 4, 16):
        rho = random_density_matrix(d, rng)
        assert is_density_matrix(rho)
        check_density_matrix(rho)


def test_check_density_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        check_density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        check_density_matrix(np.array([[0.5, 1.0], [0.0, 0.5]]))
    assert not is_density_matrix(2 * maximally_mixed(4))


def test_block_state_layout_controls_outer(rng):
    rho = random_density_matrix(4, rng)
    rc = np.array([[0.3, 0.1], [0.1, 0.7]])
    state = BlockState(4, 1, kron(rc, rho))
    assert maxabs(state.block(0, 1), 0.1 * rho) == 0.0
    assert state.blocks().shape == (2, 2, 4, 4)
    assert maxabs(block_trace(state), rc) < 1e-15
    assert maxabs(partial_trace_last_qubit(state).mat, rho) < 1e-15


def test_block_state_rejects_wrong_shape():
    with pytest.raises(DimensionError):
        BlockState(4, 2, np.eye(8))


def test_block_trace_level_zero():
    assert block_trace(BlockState(2, 0, np.eye(2))).shape == (1, 1)


def test_project_controls_matches_explicit_projector(rng):
    d, k = 2, 3
    mat = random_operator(d * 2**k, rng)
    vecs = [PLUS, MINUS, PLUS]
    proj = np.kron(np.kron(np.kron(vecs[0], vecs[1]), vecs[2])[:, None], np.eye(d))
    expect = dagger(proj) @ mat @ proj
    assert maxabs(project_controls(mat, k, d, vecs), expect) < 1e-14
    with pytest.raises(DimensionError):
        project_controls(mat, k, d, vecs[:2])
