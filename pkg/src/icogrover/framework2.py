"""A register of switches, one per Grover iteration, measured only at the end.

Two evaluators are provided.  The dense one stores the full ``2^k d``
dimensional operator and applies each switch blockwise through the affine
maps

    F(B) = f_rho B + f_id Tr(B) I/d        (same control value)
    R(B) = r_rho B + r_id Tr(B) I/d        (different control values)

The symbolic one tracks, for every ``d x d`` block, the pair ``(alpha, beta)``
with ``block = alpha * rho_ideal(k) + beta * I/d``; F and R map this span to
itself and commute with the Grover rotation, so the pair is all there is.
"""

from dataclasses import dataclass
from math import sqrt
from typing import Optional

import numpy as np

from . import _kernels
from .channels import check_t
from .errors import CapacityError, DegenerateBranchError, DimensionError
from .grover import GroverConfig, grover_unitary, ideal_state, ideal_success_probability, uniform_state
from .qmath import PLUS, BlockState, block_trace, dagger, kron, project_controls
from .qswitch import DEGENERATE_BRANCH, ControlSpec

K_MAX = 6
RECURSION_TOL = 1e-10


@dataclass(frozen=True)
class FRCoefficients:
    f_rho: float
    f_id: float
    r_rho: float
    r_id: float


def fr_coefficients(t, d):
    t = check_t(t)
    s = sqrt(t)
    return FRCoefficients(
        f_rho=t,
        f_id=1.0 - t,
        r_rho=((1 - s) / d) ** 2 + t,
        r_id=2 * s * (1 - s),
    )


def _affine(rho, w_rho, w_id):
    d = rho.shape[0]
    return w_rho * rho + w_id * np.trace(rho) * np.eye(d) / d


def f_map(rho, c):
    return _affine(np.asarray(rho, dtype=complex), c.f_rho, c.f_id)


def r_map(rho, c):
    return _affine(np.asarray(rho, dtype=complex), c.r_rho, c.r_id)


def _lifted_affine(state, w_rho, w_id):
    """Apply the affine map to every d x d block of a BlockState matrix."""
    d = state.block_dim
    return w_rho * state.mat + w_id * kron(block_trace(state), np.eye(d) / d)


@dataclass(frozen=True, eq=False)
class F2State:
    block: BlockState
    control_theta: float = 0.5
    t: Optional[float] = None
    grover: Optional[np.ndarray] = None
    previous: Optional["F2State"] = None

    @property
    def iterations(self):
        return self.block.levels

    @property
    def d(self):
        return self.block.block_dim


def initial_state(cfg, theta=0.5):
    return F2State(BlockState(cfg.d, 0, uniform_state(cfg.d)), control_theta=theta)


def grow(state, t, cfg, k_max=K_MAX):
    """Apply G to the system, then switch two D_sqrt(t) channels with a fresh control."""
    t = check_t(t)
    level = state.block.levels
    if level + 1 > k_max:
        raise CapacityError(f"k = {level + 1} exceeds k_max = {k_max}")
    if cfg.d != state.d:
        raise DimensionError("Grover config does not match state dimension")
    g = grover_unitary(cfg)
    rotated = BlockState(cfg.d, level, _kernels.conjugate_blocks(state.block.mat, g))
    c = fr_coefficients(t, cfg.d)
    same = _lifted_affine(rotated, c.f_rho, c.f_id)
    cross = _lifted_affine(rotated, c.r_rho, c.r_id)
    th = state.control_theta
    coh = sqrt(th * (1 - th))
    mat = np.block([[th * same, coh * cross], [coh * cross, (1 - th) * same]])
    return F2State(BlockState(cfg.d, level + 1, mat), th, t, g, state)


def build_state(k, t, cfg, theta=0.5, k_max=K_MAX):
    state = initial_state(cfg, theta)
    for _ in range(k):
        state = grow(state, t, cfg, k_max)
    return state


def project_all_plus(state):
    """Unnormalized (I (x) <+|^k) rho (I (x) |+>^k) by direct projection."""
    k = state.iterations
    return project_controls(state.block.mat, k, state.d, [PLUS] * k)


def project_all_plus_recursive(state):
    """Unnormalized all-|+> projection from the level-by-level recursion

        M_k = 1/2 { (f_rho + 2c r_rho) G M_{k-1} G^dag
                    + (f_id + 2c r_id) <+|^{k-1} Tr_dxd(rho_{k-1}) |+>^{k-1} I/d }

    with c = sqrt(theta (1 - theta)) and rho_{k-1} the rotated input of step k.
    """
    if state.previous is None:
        return np.array(state.block.mat, dtype=complex)
    prev = state.previous
    g = state.grover
    d = state.d
    c = fr_coefficients(state.t, d)
    two_c = 2 * sqrt(state.control_theta * (1 - state.control_theta))
    inner = g @ project_all_plus_recursive(prev) @ dagger(g)
    rotated = BlockState(d, prev.iterations, _kernels.conjugate_blocks(prev.block.mat, g))
    traces = block_trace(rotated)
    j = prev.iterations
    weight = project_controls(traces, j, 1, [PLUS] * j)[0, 0]
    return 0.5 * (
        (c.f_rho + two_c * c.r_rho) * inner
        + (c.f_id + two_c * c.r_id) * weight * np.eye(d) / d
    )


def measure_all_plus(state, check=True):
    """Post-select every control on |+>.

    Returns the normalized system state and the post-selection probability.
    With ``check`` the recursion is evaluated too and must agree with the
    direct projection.
    """
    if state.iterations < 1:
        raise DimensionError("state carries no control qubits")
    direct = project_all_plus(state)
    if check:
        rec = project_all_plus_recursive(state)
        gap = float(np.max(np.abs(rec - direct)))
        if gap > RECURSION_TOL:
            raise ArithmeticError(f"measurement recursion disagrees with projection by {gap:.3e}")
    prob = float(np.trace(direct).real)
    if prob < DEGENERATE_BRANCH:
        raise DegenerateBranchError(f"all-|+> post-selection has probability {prob:.3e}")
    return direct / prob, prob


def p_framework2_sim(k, t, spec=None, cfg=None):
    spec = spec or ControlSpec()
    cfg = cfg or GroverConfig(4)
    if k == 0:
        return float(uniform_state(cfg.d)[cfg.marked, cfg.marked].real)
    rho, _ = measure_all_plus(build_state(k, t, cfg, spec.theta), check=False)
    return float(rho[cfg.marked, cfg.marked].real)


@dataclass(frozen=True, eq=False)
class SymbolicF2:
    """Per-block coefficients: block(a, b) = alpha[a, b] rho_ideal(k) + beta[a, b] I/d."""

    alpha: np.ndarray
    beta: np.ndarray
    control_theta: float = 0.5

    @property
    def iterations(self):
        return self.alpha.shape[0].bit_length() - 1


def symbolic_initial(theta=0.5):
    return SymbolicF2(np.ones((1, 1)), np.zeros((1, 1)), theta)


def symbolic_grow(sym, t, d, k_max=K_MAX):
    if sym.iterations + 1 > k_max:
        raise CapacityError(f"k = {sym.iterations + 1} exceeds k_max = {k_max}")
    c = fr_coefficients(t, d)
    a, b = sym.alpha, sym.beta
    tr = a + b
    fa, fb = c.f_rho * a, c.f_rho * b + c.f_id * tr
    ra, rb = c.r_rho * a, c.r_rho * b + c.r_id * tr
    th = sym.control_theta
    coh = sqrt(th * (1 - th))

    def grid(same, cross):
        return np.block([[th * same, coh * cross], [coh * cross, (1 - th) * same]])

    return SymbolicF2(grid(fa, ra), grid(fb, rb), th)


def symbolic_state(k, t, d, theta=0.5, k_max=K_MAX):
    sym = symbolic_initial(theta)
    for _ in range(k):
        sym = symbolic_grow(sym, t, d, k_max)
    return sym


def symbolic_measure(sym):
    """Return (alpha, beta, prob) of the normalized all-|+> outcome."""
    n = sym.alpha.shape[0]
    a = sym.alpha.sum() / n
    b = sym.beta.sum() / n
    prob = a + b
    if prob < DEGENERATE_BRANCH:
        raise DegenerateBranchError(f"all-|+> post-selection has probability {prob:.3e}")
    return a / prob, b / prob, prob


def p_framework2_symbolic(k, t, d, theta=0.5, k_max=K_MAX):
    alpha, beta, _ = symbolic_measure(symbolic_state(k, t, d, theta, k_max))
    return alpha * ideal_success_probability(k, d) + beta / d


def dense_block_coefficients(state, cfg):
    """Least-squares (alpha, beta) of every block against rho_ideal(k) and I/d.

    Returns ``(alpha, beta, residual)`` where residual is the largest
    elementwise deviation of any block from its fitted combination.
    """
    k, d = state.iterations, state.d
    basis = np.stack([ideal_state(k, cfg).ravel(), (np.eye(d) / d).ravel()], axis=1)
    blocks = state.block.blocks().reshape(-1, d * d)
    coef, *_ = np.linalg.lstsq(basis, blocks.T, rcond=None)
    fitted = (basis @ coef).T
    residual = float(np.max(np.abs(fitted - blocks)))
    n = 2**k
    return coef[0].reshape(n, n), coef[1].reshape(n, n), residual


def block_words(k):
    """Nested F/R word of every block, outermost (latest) map first."""
    words = np.array([[""]], dtype=object)
    for _ in range(k):
        words = np.block([[("F" + words), ("R" + words)], [("R" + words), ("F" + words)]])
    return words


def p_framework2_exact(k, t, d, theta=0.5):
    """Closed form implied by the measurement recursion, valid for every k.

    Each level multiplies the rho-weight by a = f_rho + 2c r_rho and adds
    b = f_id + 2c r_id times the trace to the identity part, so the
    normalized rho-weight after k levels is (a / (a + b))^k.
    """
    c = fr_coefficients(t, d)
    two_c = 2 * sqrt(theta * (1 - theta))
    a = c.f_rho + two_c * c.r_rho
    b = c.f_id + two_c * c.r_id
    w = (a / (a + b)) ** k
    return w * ideal_success_probability(k, d) + (1 - w) / d


def p_framework2_closed(k, t, d):
    """The published k = 1, 2, 3 success-probability expressions, verbatim.

    Only k = 1 agrees with simulation in general; k = 2 and k = 3 are kept
    as-is so their deviation from :func:`p_framework2_sim` can be measured.
    """
    t = check_t(t)
    s = sqrt(t)
    lead = ((1 - s) / d) ** 2 + 2 * t
    ideal = ideal_success_probability(k, d)
    if k == 1:
        f = lead / ((1 + (t - 2 * s) * (1 - d**2)) / d**2 + 1)
        return f * ideal + (1 - f) / d
    mix = 1 + 2 * (1 - s) * s - t
    if k == 2:
        tail = mix * (1 + (1 - s) ** 2 / d**2 + 2 * (1 - s) * s + 3 * t)
        den = lead**2 + tail
        return lead**2 / den * ideal + tail / den / d
    if k == 3:
        tail = mix * (
            1 + (1 - s) ** 2 / (2 * d**2) + 2 * (1 - s) * s + 3 * t
            + ((1 - s) ** 2 / d**2 + 2 * t) ** 2
        )
        den = lead**3 + tail
        return lead**3 / den * ideal + tail / den / d
    raise ValueError(f"published closed forms cover k = 1, 2, 3 only (got k = {k}); use p_framework2_sim")
