"""Hot dense kernels, each with a numba and a numpy implementation.

The public names (``kraus_sum``, ``block_trace``, ``conjugate_blocks``) are
bound at import time according to :data:`icogrover._accel.USE_NUMBA`.  Both
implementations sum in a fixed order, so results are reproducible run to run.
"""

import numpy as np

from ._accel import USE_NUMBA, njit


def kraus_sum_numpy(ops, rho):
    """Return sum_k ops[k] @ rho @ ops[k]^dag."""
    left = np.matmul(ops, rho)
    terms = np.matmul(left, np.conj(np.transpose(ops, (0, 2, 1))))
    return terms.sum(axis=0)


def block_trace_numpy(mat, block_dim):
    n = mat.shape[0] // block_dim
    return np.trace(mat.reshape(n, block_dim, n, block_dim), axis1=1, axis2=3)


def conjugate_blocks_numpy(mat, unitary):
    """Return (I_n (x) U) mat (I_n (x) U)^dag for controls-outer layout."""
    d = unitary.shape[0]
    n = mat.shape[0] // d
    blocks = mat.reshape(n, d, n, d)
    out = np.einsum("ij,ajbk,lk->aibl", unitary, blocks, np.conj(unitary), optimize=True)
    return out.reshape(n * d, n * d)


@njit(cache=True)
def kraus_sum_numba(ops, rho):
    m, dim, _ = ops.shape
    out = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(m):
        op = ops[k]
        out += np.dot(np.dot(op, rho), np.conj(op).T.copy())
    return out


@njit(cache=True)
def block_trace_numba(mat, block_dim):
    n = mat.shape[0] // block_dim
    out = np.zeros((n, n), dtype=np.complex128)
    for a in range(n):
        for b in range(n):
            acc = 0j
            for i in range(block_dim):
                acc += mat[a * block_dim + i, b * block_dim + i]
            out[a, b] = acc
    return out


@njit(cache=True)
def conjugate_blocks_numba(mat, unitary):
    d = unitary.shape[0]
    n = mat.shape[0] // d
    out = np.empty_like(mat)
    u_dag = np.conj(unitary).T.copy()
    for a in range(n):
        for b in range(n):
            blk = mat[a * d:(a + 1) * d, b * d:(b + 1) * d].copy()
            out[a * d:(a + 1) * d, b * d:(b + 1) * d] = np.dot(np.dot(unitary, blk), u_dag)
    return out


if USE_NUMBA:
    _kraus_sum = kraus_sum_numba
    _block_trace = block_trace_numba
    _conjugate_blocks = conjugate_blocks_numba
else:
    _kraus_sum = kraus_sum_numpy
    _block_trace = block_trace_numpy
    _conjugate_blocks = conjugate_blocks_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"


def _c128(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def kraus_sum(ops, rho):
    return _kraus_sum(_c128(ops), _c128(rho))


def block_trace(mat, block_dim):
    return _block_trace(_c128(mat), int(block_dim))


def conjugate_blocks(mat, unitary):
    return _conjugate_blocks(_c128(mat), _c128(unitary))
