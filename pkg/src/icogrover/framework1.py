"""Switch plus |+> post-selection after every Grover iteration."""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .channels import check_t, depolarizing_kraus
from .grover import GroverConfig, grover_unitary, ideal_success_probability, uniform_state
from .qmath import dagger
from .qswitch import (
    ControlSpec,
    apply_switch,
    apply_switch_closed_form,
    measure_control,
    switch_kraus,
)


@dataclass(frozen=True, eq=False)
class F1StepResult:
    state: np.ndarray
    branch_prob: float
    f_value: float


def f_xi(t, d):
    """Weight of the ideal state after one switched, post-selected step (theta = 1/2)."""
    t = check_t(t)
    s = sqrt(t)
    num = ((1 - s) / d) ** 2 + 2 * t
    den = (1 + (t - 2 * s) * (1 - d**2)) / d**2 + 1
    return num / den


def mixing_weight(t, d, theta=0.5):
    """Weight of the rotated input in the |+> branch for any control theta."""
    t = check_t(t)
    s = sqrt(t)
    two_c = 2 * sqrt(theta * (1 - theta))
    keep = t + two_c * (((1 - s) / d) ** 2 + t)
    mix = (1 - t) + two_c * 2 * s * (1 - s)
    return keep / (keep + mix)


def step(rho_in, t, spec, cfg, brute_force=False):
    """One iteration: rotate by G, switch two D_sqrt(t) channels, keep the |+> branch."""
    t = check_t(t)
    g = grover_unitary(cfg)
    rotated = g @ rho_in @ dagger(g)
    if brute_force:
        half = depolarizing_kraus(t, cfg.d, sqrt_split=True)
        joint = apply_switch(rotated, spec, switch_kraus(half, half))
    else:
        joint = apply_switch_closed_form(rotated, spec, t)
    state, prob = measure_control(joint, "+")
    return F1StepResult(state, prob, mixing_weight(t, cfg.d, spec.theta))


def p_framework1(k, t, d):
    """Closed-form success probability after k post-selected steps (theta = 1/2)."""
    w = f_xi(t, d) ** k
    return w * ideal_success_probability(k, d) + (1 - w) / d


def run_framework1(k, t, spec, cfg, brute_force=False):
    """Iterate :func:`step` k times from the uniform state.

    Returns the final state and the per-step results.
    """
    rho = uniform_state(cfg.d)
    results = []
    for _ in range(k):
        res = step(rho, t, spec, cfg, brute_force=brute_force)
        results.append(res)
        rho = res.state
    return rho, results


def p_framework1_sim(k, t, spec=None, cfg=None, brute_force=False):
    spec = spec or ControlSpec()
    cfg = cfg or GroverConfig(4)
    rho, _ = run_framework1(k, t, spec, cfg, brute_force)
    return float(rho[cfg.marked, cfg.marked].real)
