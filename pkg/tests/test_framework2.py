import numpy as np
import pytest

from icogrover.errors import CapacityError, DimensionError
from icogrover.framework1 import p_framework1, p_framework1_sim
from icogrover.framework2 import (
    block_words,
    build_state,
    dense_block_coefficients,
    measure_all_plus,
    p_framework2_closed,
    p_framework2_exact,
    p_framework2_sim,
    p_framework2_symbolic,
    project_all_plus,
    project_all_plus_recursive,
    symbolic_measure,
    symbolic_state,
)
from icogrover.grover import GroverConfig, ideal_success_probability
from icogrover.qmath import is_density_matrix
from icogrover.qswitch import ControlSpec

from conftest import maxabs

TS = (0.0, 0.25, 0.5, 0.75, 1.0)


@pytest.mark.parametrize("d", [2, 4, 16])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_recursion_matches_projection(d, k):
    cfg = GroverConfig.from_dim(d)
    for t in TS:
        for theta in (0.3, 0.5):
            state = build_state(k, t, cfg, theta)
            assert maxabs(project_all_plus_recursive(state), project_all_plus(state)) < 1e-10


@pytest.mark.parametrize("d", [2, 16])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_dense_matches_symbolic(d, k):
    cfg = GroverConfig.from_dim(d)
    for t in TS:
        state = build_state(k, t, cfg, 0.5)
        alpha, beta, resid = dense_block_coefficients(state, cfg)
        sym = symbolic_state(k, t, d)
        assert resid < 1e-10
        assert maxabs(alpha, sym.alpha) < 1e-10
        assert maxabs(beta, sym.beta) < 1e-10
        assert abs(p_framework2_symbolic(k, t, d) - p_framework2_sim(k, t, ControlSpec(), cfg)) < 1e-10


def test_joint_state_is_density_matrix():
    state = build_state(3, 0.4, GroverConfig(2), 0.3)
    assert state.iterations == 3
    assert is_density_matrix(state.block.mat)


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.9])
def test_coincides_with_framework1(theta):
    cfg = GroverConfig(4, 7)
    spec = ControlSpec(theta)
    for k in (1, 2, 3, 4):
        for t in TS:
            p2 = p_framework2_sim(k, t, spec, cfg)
            assert abs(p2 - p_framework1_sim(k, t, spec, cfg)) < 1e-12
            assert abs(p2 - p_framework2_exact(k, t, 16, theta)) < 1e-12


def test_exact_values_d16():
    assert p_framework2_exact(2, 0.5, 16) == pytest.approx(0.2934412377033294, abs=1e-13)
    assert p_framework2_exact(2, 0.5, 16, 0.3) == pytest.approx(0.292539129676986, abs=1e-13)
    assert p_framework2_exact(3, 1.0, 16) == ideal_success_probability(3, 16)


def test_published_k1_formula_matches():
    for d in (2, 4, 16):
        for t in TS:
            assert abs(p_framework2_closed(1, t, d) - p_framework1(1, t, d)) < 1e-12


def test_published_k2_k3_formulas_deviate_at_d16():
    # the k = 2 expression carries 1/d^2 where the recursion gives 2/d^2
    cfg = GroverConfig(4)
    k2 = max(abs(p_framework2_closed(2, t, 16) - p_framework2_sim(2, t, ControlSpec(), cfg)) for t in TS)
    k3 = max(abs(p_framework2_closed(3, t, 16) - p_framework2_sim(3, t, ControlSpec(), cfg)) for t in TS)
    assert 2e-5 < k2 < 3e-5
    assert 0.1 < k3 < 0.11


def test_published_formulas_agree_where_ideal_is_uniform():
    # at d = 2 and d = 4, P(k, 0, d) = 1/d for the k used here, hiding the error
    for d, k in ((2, 2), (2, 3), (4, 2)):
        assert ideal_success_probability(k, d) == pytest.approx(1 / d)
        for t in TS:
            assert abs(p_framework2_closed(k, t, d) - p_framework2_exact(k, t, d)) < 1e-12


def test_published_formula_range():
    with pytest.raises(ValueError):
        p_framework2_closed(4, 0.5, 16)


def test_measure_probability_matches_symbolic():
    cfg = GroverConfig(3)
    for k in (1, 2, 3):
        _, prob = measure_all_plus(build_state(k, 0.3, cfg))
        _, _, sym_prob = symbolic_measure(symbolic_state(k, 0.3, 8))
        assert prob == pytest.approx(sym_prob, abs=1e-12)


def test_block_words_layout():
    words = block_words(2)
    assert words.shape == (4, 4)
    assert words[0, 0] == "FF" and words[0, 3] == "RR" and words[1, 2] == "RR"
    assert (np.diag(words) == "FF").all()


def test_capacity_and_degenerate_inputs():
    with pytest.raises(CapacityError):
        build_state(3, 0.5, GroverConfig(1), k_max=2)
    with pytest.raises(CapacityError):
        symbolic_state(7, 0.5, 2)
    with pytest.raises(DimensionError):
        measure_all_plus(build_state(0, 0.5, GroverConfig(1)))
    assert p_framework2_sim(0, 0.5, ControlSpec(), GroverConfig(4)) == pytest.approx(1 / 16)
