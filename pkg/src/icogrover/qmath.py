"""Dense complex-matrix helpers.

Joint system/control operators use a *controls-outer* layout: for ``k``
control qubits and a ``d``-dimensional system, the matrix index is
``(c_k, ..., c_1, s)`` with the most recently attached control most
significant.  Such a matrix is a ``2^k x 2^k`` grid of ``d x d`` blocks, and
the mathematical state ``rho (x) rho_c`` is stored as ``kron(rho_c, rho)``.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product

import numpy as np

from . import _kernels
from .errors import DimensionError

TOL_HERM = 1e-12
TOL_TR = 1e-12
TOL_PSD = 1e-10

MAX_BASIS_QUBITS = 6

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def kron(a, b):
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*mats):
    return reduce(kron, mats)


def projector(index, dim):
    p = np.zeros((dim, dim), dtype=complex)
    p[index, index] = 1.0
    return p


def maximally_mixed(dim):
    return np.eye(dim, dtype=complex) / dim


def _require_square(a, name="matrix"):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    return a


def is_hermitian(a, tol=TOL_HERM):
    a = _require_square(a)
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= tol)


def min_eigenvalue(a):
    a = _require_square(a)
    return float(np.linalg.eigvalsh((a + dagger(a)) / 2).min())


def is_density_matrix(a, tol_herm=TOL_HERM, tol_tr=TOL_TR, tol_psd=TOL_PSD):
    a = _require_square(a)
    if not np.all(np.isfinite(a)):
        return False
    return (
        is_hermitian(a, tol_herm)
        and abs(np.trace(a) - 1.0) <= tol_tr
        and min_eigenvalue(a) >= -tol_psd
    )


def check_density_matrix(a, name="rho", tol=None):
    """Raise ``ValueError`` unless ``a`` is a valid density matrix."""
    a = _require_square(a, name)
    kw = {} if tol is None else {"tol_herm": tol, "tol_tr": tol}
    if not is_density_matrix(a, **kw):
        raise ValueError(f"{name} is not a valid density matrix")
    return a


def random_density_matrix(dim, rng):
    """Full-rank random state A A^dag / Tr(A A^dag) with Gaussian A."""
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ dagger(a)
    return rho / np.trace(rho).real


def random_operator(dim, rng):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


@dataclass(frozen=True, eq=False)
class UnitaryBasis:
    """The ``d**2`` n-qubit Pauli strings, identity string first."""

    dim: int
    ops: np.ndarray
    labels: tuple

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)


@lru_cache(maxsize=None)
def pauli_basis(n):
    if not 1 <= n <= MAX_BASIS_QUBITS:
        raise DimensionError(f"qubit count must be in [1, {MAX_BASIS_QUBITS}], got {n}")
    labels = tuple("".join(p) for p in product("IXYZ", repeat=n))
    ops = np.array([kron_all(*(PAULI[c] for c in label)) for label in labels])
    ops.setflags(write=False)
    return UnitaryBasis(dim=2**n, ops=ops, labels=labels)


def basis_for_dim(d):
    n = int(d).bit_length() - 1
    if d < 2 or 2**n != d:
        raise DimensionError(f"dimension must be a power of two >= 2, got {d}")
    return pauli_basis(n)


def twirl(rho, basis):
    """Uniform average of U rho U^dag over the basis; equals Tr(rho) I/d."""
    rho = _require_square(rho)
    if rho.shape[0] != basis.dim:
        raise DimensionError(f"rho has dim {rho.shape[0]}, basis has dim {basis.dim}")
    return _kernels.kraus_sum(basis.ops, rho) / basis.dim**2


@dataclass(frozen=True, eq=False)
class BlockState:
    """Operator on ``levels`` control qubits (outer) and a ``block_dim`` system."""

    block_dim: int
    levels: int
    mat: np.ndarray

    def __post_init__(self):
        mat = _require_square(self.mat, "BlockState.mat")
        if self.levels < 0 or self.block_dim < 1:
            raise DimensionError("levels must be >= 0 and block_dim >= 1")
        if mat.shape[0] != 2**self.levels * self.block_dim:
            raise DimensionError(
                f"matrix dim {mat.shape[0]} != 2^{self.levels} * {self.block_dim}"
            )

    @property
    def dim(self):
        return self.mat.shape[0]

    @property
    def n_blocks(self):
        return 2**self.levels

    def block(self, a, b):
        d = self.block_dim
        return self.mat[a * d:(a + 1) * d, b * d:(b + 1) * d]

    def blocks(self):
        """View as an array of shape (2^k, d, 2^k, d) rearranged to (2^k, 2^k, d, d)."""
        n, d = self.n_blocks, self.block_dim
        return self.mat.reshape(n, d, n, d).transpose(0, 2, 1, 3)


def block_trace(state):
    """Trace of every d x d block: a 2^k x 2^k matrix."""
    if state.levels == 0:
        return np.array([[np.trace(state.mat)]], dtype=complex)
    return _kernels.block_trace(state.mat, state.block_dim)


def partial_trace_last_qubit(state):
    """Trace out the outermost (most recently attached) control qubit."""
    if state.levels < 1:
        raise DimensionError("no control qubit to trace out")
    half = state.dim // 2
    m = state.mat.reshape(2, half, 2, half)
    return BlockState(state.block_dim, state.levels - 1, m[0, :, 0, :] + m[1, :, 1, :])


def project_controls(mat, levels, block_dim, vectors):
    """Return (<v_1| (x) ... (x) <v_k| (x) I) mat (|v_1> (x) ... (x) |v_k> (x) I).

    ``vectors`` lists one 2-vector per control, outermost first.
    """
    if len(vectors) != levels:
        raise DimensionError("need one projection vector per control level")
    out = np.asarray(mat, dtype=complex)
    d_rest = out.shape[0]
    for v in vectors:
        d_rest //= 2
        m = out.reshape(2, d_rest, 2, d_rest)
        out = np.einsum("a,aibj,b->ij", np.conj(v), m, v)
    if out.shape[0] != block_dim:
        raise DimensionError("projection did not reduce to the system dimension")
    return out
