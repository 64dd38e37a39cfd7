"""Grover search on a ``d = 2**n`` register: ideal and depolarized evolution."""

from dataclasses import dataclass
from math import asin, floor, pi, sin, sqrt

import numpy as np

from .channels import apply_kraus, check_t, depolarizing_kraus
from .errors import DimensionError
from .qmath import dagger, maximally_mixed

MAX_QUBITS = 6


@dataclass(frozen=True)
class GroverConfig:
    n: int
    marked: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise DimensionError(f"n must be in [1, {MAX_QUBITS}], got {self.n}")
        if not 0 <= self.marked < self.d:
            raise DimensionError(f"marked index {self.marked} outside [0, {self.d})")

    @property
    def d(self):
        return 2**self.n

    @classmethod
    def from_dim(cls, d, marked=0):
        n = int(d).bit_length() - 1
        if 2**n != d:
            raise DimensionError(f"d must be a power of two, got {d}")
        return cls(n, marked)


def grover_angle(d):
    """Rotation angle arcsin(1/sqrt(d)) of one Grover iteration (half of it)."""
    if d < 1:
        raise DimensionError("d must be positive")
    return asin(1.0 / sqrt(d))


def uniform_vector(d):
    return np.full(d, 1.0 / sqrt(d), dtype=complex)


def uniform_state(d):
    if d < 2:
        raise DimensionError(f"search space needs d >= 2, got {d}")
    psi = uniform_vector(d)
    return np.outer(psi, np.conj(psi))


def oracle_unitary(cfg):
    o = np.eye(cfg.d, dtype=complex)
    o[cfg.marked, cfg.marked] = -1.0
    return o


def diffusion_operator(d, flipped=False):
    """Inversion about the mean, 2|psi><psi| - I (or its negative if ``flipped``)."""
    op = 2.0 * uniform_state(d) - np.eye(d)
    return -op if flipped else op


def grover_unitary(cfg, flipped_diffusion=False):
    return diffusion_operator(cfg.d, flipped_diffusion) @ oracle_unitary(cfg)


def ideal_state(k, cfg, flipped_diffusion=False):
    """rho(k) = G^k rho(0) G^dag^k."""
    g = grover_unitary(cfg, flipped_diffusion)
    rho = uniform_state(cfg.d)
    for _ in range(k):
        rho = g @ rho @ dagger(g)
    return rho


def ideal_success_probability(k, d):
    if k < 0:
        raise ValueError("k must be >= 0")
    return sin((2 * k + 1) * grover_angle(d)) ** 2


def optimal_iterations(d):
    if d < 2:
        raise DimensionError("d must be >= 2")
    return floor(pi / 4 * sqrt(d))


def noisy_state(k, t, cfg):
    """Closed form t^k rho(k) + (1 - t^k) I/d."""
    t = check_t(t)
    w = t**k
    return w * ideal_state(k, cfg) + (1.0 - w) * maximally_mixed(cfg.d)


def noisy_success_probability(k, t, d):
    """Exact success probability with one D_t after every Grover iteration."""
    t = check_t(t)
    w = t**k
    return (1.0 - w) / d + w * ideal_success_probability(k, d)


def noisy_success_probability_sim(k, t, cfg, average_oracles=False):
    """Simulate (D_t o G_x)^k on |psi><psi| by explicit Kraus application.

    With ``average_oracles`` the result is averaged over every marked index
    x in [0, d); otherwise only ``cfg.marked`` is simulated.
    """
    t = check_t(t)
    channel = depolarizing_kraus(t, cfg.d)
    targets = range(cfg.d) if average_oracles else [cfg.marked]
    total = 0.0
    for x in targets:
        g = grover_unitary(GroverConfig(cfg.n, x))
        rho = uniform_state(cfg.d)
        for _ in range(k):
            rho = apply_kraus(channel, g @ rho @ dagger(g))
        total += rho[x, x].real
    return total / len(targets)
