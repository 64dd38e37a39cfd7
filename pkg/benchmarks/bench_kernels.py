"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Shapes are the ones the verification suite actually hits: the D_t Kraus
sum at d = 16, the explicit switch at d = 4 with one and two earlier
controls, and block conjugation of a k = 6 register at d = 16.
"""

import argparse
import timeit

import numpy as np

from icogrover import _accel, _kernels
from icogrover.channels import depolarizing_kraus, lift
from icogrover.qmath import random_density_matrix, random_operator
from icogrover.qswitch import switch_kraus


def cases(rng):
    d16 = depolarizing_kraus(0.3, 16).ops
    yield "kraus_sum  D_t d=16 (257 x 16^2)", "kraus_sum", (d16, random_density_matrix(16, rng))
    for levels in (1, 2):
        half = lift(depolarizing_kraus(0.3, 4, sqrt_split=True), levels)
        ops = switch_kraus(half, half).ops
        dim = ops.shape[1]
        yield (f"kraus_sum  switch d=4 L={levels} ({len(ops)} x {dim}^2)", "kraus_sum",
               (ops, random_density_matrix(dim, rng)))
    big = random_operator(64 * 16, rng)
    yield "conjugate_blocks 64 x 64 blocks of 16^2", "conjugate_blocks", (big, random_operator(16, rng))
    yield "block_trace 64 x 64 blocks of 16^2", "block_trace", (big, 16)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not _accel.HAS_NUMBA:
        print("numba is not installed; nothing to compare")
        return 0
    rng = np.random.default_rng(7)
    print(f"{'case':48s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for label, name, inputs in cases(rng):
        fast = getattr(_kernels, f"{name}_numba")
        slow = getattr(_kernels, f"{name}_numpy")
        ref = slow(*inputs)
        assert np.allclose(fast(*inputs), ref, atol=1e-10)  # also triggers compilation
        number = 3
        t_np = min(timeit.repeat(lambda: slow(*inputs), number=number, repeat=args.repeat)) / number
        t_nb = min(timeit.repeat(lambda: fast(*inputs), number=number, repeat=args.repeat)) / number
        print(f"{label:48s} {1e3 * t_np:10.3f} {1e3 * t_nb:10.3f} {t_np / t_nb:8.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
