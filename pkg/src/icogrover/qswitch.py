"""Quantum switch of two channels with a coherent control qubit.

The control is attached as the new *outermost* qubit (see :mod:`icogrover.qmath`
for the layout), so the switched output of a ``D``-dimensional input is a
2 x 2 grid of ``D x D`` blocks indexed by the control.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import _kernels
from .channels import check_t, completeness_error
from .errors import CompletenessError, DegenerateBranchError, DimensionError
from .qmath import MINUS, PLUS, BlockState, _require_square, block_trace, kron

DEGENERATE_BRANCH = 1e-15


@dataclass(frozen=True)
class ControlSpec:
    """Control qubit sqrt(theta)|0> + sqrt(1 - theta)|1>."""

    theta: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"control theta must lie in [0, 1], got {self.theta}")

    @property
    def theta_bar(self):
        return 1.0 - self.theta

    @property
    def coherence(self):
        """sqrt(theta * theta_bar), the only place the off-diagonals enter."""
        return sqrt(self.theta * self.theta_bar)


def control_state(spec):
    th, tb, c = spec.theta, spec.theta_bar, spec.coherence
    return np.array([[th, c], [c, tb]], dtype=complex)


@dataclass(frozen=True, eq=False)
class SwitchKrausSet:
    """Joint operators W_ij on (control (x) system), dimension 2 * dim."""

    dim: int
    ops: np.ndarray

    def __post_init__(self):
        if self.ops.shape[1:] != (2 * self.dim, 2 * self.dim):
            raise DimensionError("switch operators must act on control (x) system")
        err = completeness_error(self.ops)
        if err > 1e-10:
            raise CompletenessError(f"switch Kraus set violates completeness by {err:.3e}")

    def __len__(self):
        return len(self.ops)


def switch_kraus(ch_a, ch_b, swap_indices=False):
    """W_ij = B_j A_i (x) |0><0| + A_i B_j (x) |1><1|.

    Control |0> runs ``ch_a`` first.  ``swap_indices`` builds the alternative
    convention K_i K_j (x) |0><0| + K_j K_i (x) |1><1| (identical channels only
    differ by relabelling).
    """
    if ch_a.dim != ch_b.dim:
        raise DimensionError("switched channels must share a dimension")
    d = ch_a.dim
    a, b = ch_a.ops[:, None], ch_b.ops[None, :]
    ab = np.matmul(a, b).reshape(-1, d, d)
    ba = np.matmul(b, a).reshape(-1, d, d)
    first, second = (ab, ba) if swap_indices else (ba, ab)
    ops = np.zeros((len(ab), 2 * d, 2 * d), dtype=complex)
    ops[:, :d, :d] = first
    ops[:, d:, d:] = second
    return SwitchKrausSet(d, ops)


def _as_block_state(rho):
    if isinstance(rho, BlockState):
        return rho
    rho = _require_square(rho)
    return BlockState(rho.shape[0], 0, np.asarray(rho, dtype=complex))


def apply_switch(rho, spec, kset):
    """Brute-force sum_ij W_ij (rho_c (x) rho) W_ij^dag."""
    state = _as_block_state(rho)
    if state.dim != kset.dim:
        raise DimensionError(f"input dim {state.dim} != switch dim {kset.dim}")
    joint_in = kron(control_state(spec), state.mat)
    out = _kernels.kraus_sum(kset.ops, joint_in)
    return BlockState(state.block_dim, state.levels + 1, out)


def apply_switch_closed_form(rho, spec, t):
    """Switch of two D_sqrt(t) channels evaluated from its closed form.

    For block inputs ``Tr(rho) I/d`` generalises to ``Tr_dxd(rho) (x) I/d``,
    since each depolarizing channel acts only on the system factor.
    """
    t = check_t(t)
    state = _as_block_state(rho)
    d = state.block_dim
    x = state.mat
    mixed = kron(block_trace(state), np.eye(d) / d)
    rc = control_state(spec)
    diag_c = np.diag([spec.theta, spec.theta_bar]).astype(complex)
    offdiag_c = spec.coherence * np.array([[0, 1], [1, 0]], dtype=complex)
    s = sqrt(t)
    out = (
        (1 - s) ** 2 * (kron(diag_c, mixed) + kron(offdiag_c, x / d**2))
        + 2 * s * (1 - s) * kron(rc, mixed)
        + t * kron(rc, x)
    )
    return BlockState(d, state.levels + 1, out)


def measure_control(joint, branch="+"):
    """Project the outermost control on |+> or |->.

    Returns the normalized conditional state (as an ndarray of half the
    dimension) and the branch probability.
    """
    if joint.levels < 1:
        raise DimensionError("state carries no control qubit")
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    v = PLUS if branch == "+" else MINUS
    half = joint.dim // 2
    m = joint.mat.reshape(2, half, 2, half)
    cond = np.einsum("a,aibj,b->ij", np.conj(v), m, v)
    prob = float(np.trace(cond).real)
    if prob < DEGENERATE_BRANCH:
        raise DegenerateBranchError(f"branch {branch} has probability {prob:.3e}")
    return cond / prob, prob
