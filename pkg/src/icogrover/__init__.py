"""Grover search under total depolarizing noise, with quantum-switch mitigation."""

from ._kernels import BACKEND
from .channels import KrausChannel, apply_kraus, compose, depolarize, depolarizing_kraus
from .framework1 import f_xi, p_framework1, p_framework1_sim
from .framework2 import (
    fr_coefficients,
    measure_all_plus,
    p_framework2_closed,
    p_framework2_exact,
    p_framework2_sim,
    p_framework2_symbolic,
)
from .grover import (
    GroverConfig,
    ideal_success_probability,
    noisy_success_probability,
    noisy_success_probability_sim,
    optimal_iterations,
)
from .qswitch import ControlSpec, apply_switch, apply_switch_closed_form, measure_control, switch_kraus

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ControlSpec",
    "GroverConfig",
    "KrausChannel",
    "apply_kraus",
    "apply_switch",
    "apply_switch_closed_form",
    "compose",
    "depolarize",
    "depolarizing_kraus",
    "f_xi",
    "fr_coefficients",
    "ideal_success_probability",
    "measure_all_plus",
    "measure_control",
    "noisy_success_probability",
    "noisy_success_probability_sim",
    "optimal_iterations",
    "p_framework1",
    "p_framework1_sim",
    "p_framework2_closed",
    "p_framework2_exact",
    "p_framework2_sim",
    "p_framework2_symbolic",
    "switch_kraus",
]
