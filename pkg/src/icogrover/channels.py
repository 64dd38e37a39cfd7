"""Kraus-form CPTP maps, centred on the total depolarizing channel.

``D_t(rho) = t rho + (1 - t) Tr(rho) I/d``.  The Kraus set used everywhere is

    K_0 = sqrt(t) I,   K_i = sqrt((1 - t) / d**2) U_i,   i = 1..d**2

with ``U_i`` the n-qubit Pauli strings.  The ``sqrt_split`` variant builds the
same set for ``D_sqrt(t)``, two copies of which compose to ``D_t``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CompletenessError, DimensionError
from .qmath import _require_square, basis_for_dim, kron

COMPLETENESS_TOL = 1e-10


def check_t(t):
    """Validate a state-preservation probability and return it as float."""
    t = float(t)
    if not 0.0 <= t <= 1.0 or not np.isfinite(t):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return t


@dataclass(frozen=True, eq=False)
class KrausChannel:
    dim: int
    ops: np.ndarray
    label: str = ""

    def __post_init__(self):
        ops = np.ascontiguousarray(self.ops, dtype=complex)
        if ops.ndim != 3 or ops.shape[1:] != (self.dim, self.dim) or len(ops) == 0:
            raise DimensionError(f"Kraus ops must have shape (m, {self.dim}, {self.dim})")
        object.__setattr__(self, "ops", ops)
        err = completeness_error(ops)
        if err > COMPLETENESS_TOL:
            raise CompletenessError(f"channel {self.label!r} violates completeness by {err:.3e}")

    def __len__(self):
        return len(self.ops)

    def __call__(self, rho):
        return apply_kraus(self, rho)


def completeness_error(ops):
    ops = np.asarray(ops)
    m, d, _ = ops.shape
    stacked = ops.reshape(m * d, d)
    total = np.conj(stacked).T @ stacked
    return float(np.max(np.abs(total - np.eye(ops.shape[1]))))


def identity_channel(d):
    return KrausChannel(d, np.eye(d, dtype=complex)[None], label="id")


def unitary_channel(u, label="U"):
    u = _require_square(u)
    return KrausChannel(u.shape[0], np.asarray(u, dtype=complex)[None], label=label)


def depolarize(rho, t):
    """Closed-form D_t; uses Tr(rho) so it is linear on arbitrary operators."""
    rho = _require_square(rho)
    t = check_t(t)
    d = rho.shape[0]
    return t * rho + (1.0 - t) * np.trace(rho) * np.eye(d) / d


def depolarizing_kraus(t, d, sqrt_split=False):
    t = check_t(t)
    basis = basis_for_dim(d)
    keep = np.sqrt(t) if sqrt_split else t
    ops = np.empty((len(basis) + 1, d, d), dtype=complex)
    ops[0] = np.sqrt(keep) * np.eye(d)
    ops[1:] = np.sqrt((1.0 - keep) / d**2) * basis.ops
    label = f"D_sqrt({t:g})" if sqrt_split else f"D_{t:g}"
    return KrausChannel(d, ops, label=label)


def apply_kraus(ch, rho):
    rho = _require_square(rho)
    if rho.shape[0] != ch.dim:
        raise DimensionError(f"rho has dim {rho.shape[0]}, channel acts on dim {ch.dim}")
    return _kernels.kraus_sum(ch.ops, rho)


def compose(outer, inner):
    """Channel ``outer o inner``: Kraus ops outer_i @ inner_j."""
    if outer.dim != inner.dim:
        raise DimensionError("cannot compose channels of different dimension")
    ops = np.matmul(outer.ops[:, None], inner.ops[None, :]).reshape(-1, outer.dim, outer.dim)
    return KrausChannel(outer.dim, ops, label=f"{outer.label}o{inner.label}")


def lift(ch, levels):
    """Act as ``ch`` on the system and trivially on ``levels`` outer controls."""
    if levels == 0:
        return ch
    eye = np.eye(2**levels)
    ops = np.array([kron(eye, k) for k in ch.ops])
    return KrausChannel(ch.dim * 2**levels, ops, label=f"{ch.label}(x)I")


def channel_action_matrix(ch):
    """Superoperator (row-major vectorisation) of the channel; handy for comparing actions."""
    return sum(np.kron(k, np.conj(k)) for k in ch.ops)


__all__ = [
    "KrausChannel",
    "apply_kraus",
    "channel_action_matrix",
    "check_t",
    "completeness_error",
    "compose",
    "depolarize",
    "depolarizing_kraus",
    "identity_channel",
    "lift",
    "unitary_channel",
]
