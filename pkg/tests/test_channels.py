from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icogrover.channels import (
    KrausChannel,
    apply_kraus,
    channel_action_matrix,
    check_t,
    completeness_error,
    compose,
    depolarize,
    depolarizing_kraus,
    identity_channel,
    lift,
    unitary_channel,
)
from icogrover.errors import CompletenessError, DimensionError
from icogrover.qmath import is_density_matrix, random_density_matrix, random_operator

from conftest import maxabs

TS = (0.0, 0.25, 0.5, 0.75, 1.0)


@pytest.mark.parametrize("d", [2, 4, 16])
@pytest.mark.parametrize("split", [False, True])
def test_depolarizing_kraus_complete(d, split):
    for t in TS:
        ch = depolarizing_kraus(t, d, split)
        assert len(ch) == d * d + 1
        assert completeness_error(ch.ops) < 1e-12


@pytest.mark.parametrize("d", [2, 4])
def test_kraus_matches_closed_form_on_arbitrary_operator(d, rng):
    v = random_operator(d, rng)
    for t in TS:
        assert maxabs(apply_kraus(depolarizing_kraus(t, d), v), depolarize(v, t)) < 1e-12


@pytest.mark.parametrize("d", [2, 4])
def test_semigroup_and_commutation(d, rng):
    rho = random_density_matrix(d, rng)
    for t1, t2 in product(TS, repeat=2):
        a, b = depolarizing_kraus(t1, d), depolarizing_kraus(t2, d)
        ab = apply_kraus(compose(a, b), rho)
        ba = apply_kraus(compose(b, a), rho)
        assert maxabs(ab, depolarize(rho, t1 * t2)) < 1e-12
        assert maxabs(ab, ba) < 1e-12


def test_sqrt_split_squares_to_full_channel(rng):
    rho = random_density_matrix(16, rng)
    for t in TS:
        half = depolarizing_kraus(t, 16, sqrt_split=True)
        assert maxabs(apply_kraus(half, apply_kraus(half, rho)), depolarize(rho, t)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(t=st.floats(0.0, 1.0), seed=st.integers(0, 2**32 - 1))
def test_depolarize_output_is_state(t, seed):
    rho = random_density_matrix(4, np.random.default_rng(seed))
    out = apply_kraus(depolarizing_kraus(t, 4), rho)
    assert is_density_matrix(out)
    assert maxabs(out, depolarize(rho, t)) < 1e-12


def test_compose_order():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    both = compose(unitary_channel(h), unitary_channel(x))
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert maxabs(both(rho), h @ x @ rho @ x @ h) < 1e-15


def test_lift_acts_blockwise(rng):
    rho = random_density_matrix(8, rng)
    lifted = lift(depolarizing_kraus(0.3, 2), 2)
    assert lifted.dim == 8
    out = apply_kraus(lifted, rho)
    assert maxabs(np.trace(out), 1.0) < 1e-12
    assert completeness_error(lifted.ops) < 1e-12


def test_channel_action_matrix_identity():
    assert maxabs(channel_action_matrix(identity_channel(2)), np.eye(4)) < 1e-15


def test_incomplete_channel_rejected():
    with pytest.raises(CompletenessError):
        KrausChannel(2, np.array([0.5 * np.eye(2)]))
    with pytest.raises(DimensionError):
        KrausChannel(2, np.zeros((1, 3, 3)))


@pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan")])
def test_check_t_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        check_t(bad)


def test_depolarizing_extremes(rng):
    rho = random_density_matrix(4, rng)
    assert maxabs(depolarize(rho, 1.0), rho) == 0.0
    assert maxabs(apply_kraus(depolarizing_kraus(0.0, 4), rho), np.eye(4) / 4) < 1e-12
