"""Brute-force reference simulations and the cross-check suite.

Everything in the ``simulate_*`` functions is built from explicit Kraus sums
(or, above d = 4, the switch's own closed-form action); nothing here imports
the framework modules at module level, so the reference path cannot lean on
the closed forms it is meant to check.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .channels import (
    apply_kraus,
    completeness_error,
    compose,
    depolarize,
    depolarizing_kraus,
    lift,
)
from .errors import CapacityError
from .grover import GroverConfig, grover_unitary, ideal_success_probability, uniform_state
from .qmath import (
    BlockState,
    basis_for_dim,
    dagger,
    kron,
    random_density_matrix,
    random_operator,
    twirl,
)
from .qswitch import (
    ControlSpec,
    apply_switch,
    apply_switch_closed_form,
    measure_control,
    switch_kraus,
)

MAX_D = 16
MAX_K = 6
EXPLICIT_SWITCH_MAX_D = 4


def _check_capacity(k, d):
    if d > MAX_D or k > MAX_K:
        raise CapacityError(f"oracle limited to d <= {MAX_D}, k <= {MAX_K} (got d={d}, k={k})")


def simulate_noisy_grover(k, t, cfg):
    """Alternate G-conjugation and the full (d^2 + 1)-term D_t Kraus sum."""
    _check_capacity(k, cfg.d)
    g = grover_unitary(cfg)
    noise = depolarizing_kraus(t, cfg.d)
    rho = uniform_state(cfg.d)
    for _ in range(k):
        rho = apply_kraus(noise, g @ rho @ dagger(g))
    return rho


def _switched(state, t, spec, explicit):
    d = state.block_dim
    if explicit:
        half = lift(depolarizing_kraus(t, d, sqrt_split=True), state.levels)
        return apply_switch(state, spec, switch_kraus(half, half))
    return apply_switch_closed_form(state, spec, t)


def simulate_framework(framework, k, t, theta, cfg, explicit=None):
    """Success probability of framework ``"f1"`` or ``"f2"`` by direct simulation.

    ``explicit`` selects the (d^2 + 1)^2-term Kraus switch; it defaults to on
    for d <= 4 and is refused above that.
    """
    _check_capacity(k, cfg.d)
    if explicit is None:
        explicit = cfg.d <= EXPLICIT_SWITCH_MAX_D
    if explicit and cfg.d > EXPLICIT_SWITCH_MAX_D:
        raise CapacityError(f"explicit switch simulation limited to d <= {EXPLICIT_SWITCH_MAX_D}")
    spec = ControlSpec(theta)
    g = grover_unitary(cfg)
    d = cfg.d
    if framework == "f1":
        rho = uniform_state(d)
        for _ in range(k):
            joint = _switched(BlockState(d, 0, g @ rho @ dagger(g)), t, spec, explicit)
            rho, _ = measure_control(joint, "+")
    elif framework == "f2":
        state = BlockState(d, 0, uniform_state(d))
        for level in range(k):
            u = kron(np.eye(2**level), g)
            rotated = BlockState(d, level, u @ state.mat @ dagger(u))
            state = _switched(rotated, t, spec, explicit)
        while state.levels > 0:
            cond, _ = measure_control(state, "+")
            state = BlockState(d, state.levels - 1, cond)
        rho = state.mat
    else:
        raise ValueError(f"unknown framework {framework!r}; expected 'f1' or 'f2'")
    return float(rho[cfg.marked, cfg.marked].real)


@dataclass(frozen=True)
class VerificationReport:
    case_id: str
    max_abs_error: float
    tolerance: float
    lhs_source: str
    rhs_source: str
    seed: int = 0
    kind: str = "check"
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.max_abs_error <= self.tolerance))

    @property
    def blocking(self):
        """True when this report should fail the suite."""
        return self.kind == "check" and not self.passed

    def line(self):
        if self.passed:
            status = "PASS"
        else:
            status = "FAIL" if self.kind == "check" else "DEVIATES"
        return (
            f"{status:8s} {self.case_id:48s} err={self.max_abs_error:.3e} "
            f"tol={self.tolerance:.0e}  [{self.lhs_source} vs {self.rhs_source}]"
        )


@dataclass(frozen=True)
class VerificationGrid:
    ds: tuple = (2, 4)
    ks: tuple = (1, 2)
    ts: tuple = (0.0, 0.5, 1.0)
    thetas: tuple = (0.5,)
    seed: int = 20240917


PRESETS = {
    "quick": VerificationGrid(),
    "full": VerificationGrid(
        ds=(2, 4, 16),
        ks=(1, 2, 3),
        ts=(0.0, 0.25, 0.5, 0.75, 1.0),
        thetas=(0.3, 0.5),
    ),
}


def _maxabs(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _jitter(t, amount):
    if amount == 0.0:
        return t
    return t + amount if t + amount <= 1.0 else t - amount


def verify_all(grid, perturb=0.0):
    """Run the cross-check matrix over ``grid``; one report per case.

    ``perturb`` shifts t on the closed-form side of the probability checks
    and exists only to confirm that the suite can fail.
    """
    from . import framework1 as f1
    from . import framework2 as f2
    from .grover import noisy_state, noisy_success_probability

    reports = []
    seed = grid.seed

    def add(case_id, err, tol, lhs, rhs, kind="check"):
        reports.append(VerificationReport(case_id, err, tol, lhs, rhs, seed, kind))

    for d in grid.ds:
        rng = np.random.default_rng([seed, d])
        cfg = GroverConfig.from_dim(d)
        rho = random_density_matrix(d, rng)
        v = random_operator(d, rng)
        basis = basis_for_dim(d)

        g = grover_unitary(cfg)
        add(f"grover/d={d}/unitarity", _maxabs(dagger(g) @ g, np.eye(d)), 1e-12, "G^dag G", "I")
        twirl_err = _maxabs(twirl(v, basis), np.trace(v) * np.eye(d) / d)
        resolution = sum(np.trace(dagger(u) @ v) * u for u in basis.ops) / d
        add(f"qmath/d={d}/twirl", max(twirl_err, _maxabs(resolution, v)), 1e-12,
            "Pauli twirl / resolution", "Tr(V) I/d / V")

        if not grid.ts:
            continue
        comp = max(
            completeness_error(depolarizing_kraus(t, d, split).ops)
            for t in grid.ts for split in (False, True)
        )
        add(f"channels/d={d}/completeness", comp, 1e-12, "sum K^dag K", "I")
        # the composed set has (d^2 + 1)^2 terms; above d = 4 apply the two sets in turn
        semi = 0.0
        for t1, t2 in product(grid.ts, repeat=2):
            first, second = depolarizing_kraus(t1, d), depolarizing_kraus(t2, d)
            if d <= EXPLICIT_SWITCH_MAX_D:
                out = apply_kraus(compose(first, second), rho)
            else:
                out = apply_kraus(first, apply_kraus(second, rho))
            semi = max(semi, _maxabs(out, depolarize(rho, t1 * t2)))
        add(f"channels/d={d}/semigroup", semi, 1e-12, "D_t1 o D_t2 (Kraus)", "D_(t1 t2)")
        split_err = 0.0
        for t in grid.ts:
            half = depolarizing_kraus(t, d, sqrt_split=True)
            split_err = max(split_err, _maxabs(apply_kraus(half, apply_kraus(half, rho)), depolarize(rho, t)))
        add(f"channels/d={d}/sqrt-split", split_err, 1e-12, "D_sqrt(t)^2 (Kraus)", "D_t")

        for t in grid.ts:
            tc = _jitter(t, perturb)
            step = f1.step(rho, t, ControlSpec(0.5), cfg, brute_force=d <= EXPLICIT_SWITCH_MAX_D)
            fx = f1.f_xi(tc, d)
            expect = fx * g @ rho @ dagger(g) + (1 - fx) * np.eye(d) / d
            add(f"f1/d={d}/t={t:g}/f_xi-step", _maxabs(step.state, expect), 1e-10,
                "switch + |+> post-selection", "f_xi closed form")
            for theta in grid.thetas:
                if d <= EXPLICIT_SWITCH_MAX_D:
                    spec = ControlSpec(theta)
                    half = depolarizing_kraus(t, d, sqrt_split=True)
                    brute = apply_switch(rho, spec, switch_kraus(half, half))
                    closed = apply_switch_closed_form(rho, spec, tc)
                    add(f"switch/d={d}/t={t:g}/theta={theta:g}/closed-form",
                        _maxabs(brute.mat, closed.mat), 1e-10, "Kraus switch", "closed-form switch")

        for k, t in product(grid.ks, grid.ts):
            tc = _jitter(t, perturb)
            tag = f"d={d}/k={k}/t={t:g}"
            add(f"noisy/{tag}/state", _maxabs(simulate_noisy_grover(k, t, cfg), noisy_state(k, tc, cfg)),
                1e-12, "Kraus simulation", "t^k rho(k) + (1-t^k) I/d")
            p_sim = np.mean([
                simulate_noisy_grover(k, t, GroverConfig(cfg.n, x))[x, x].real for x in range(d)
            ])
            add(f"noisy/{tag}/probability", abs(p_sim - noisy_success_probability(k, tc, d)), 1e-10,
                "oracle-averaged simulation", "closed form")
            bound = t**k * ideal_success_probability(k, d)
            add(f"noisy/{tag}/lower-bound", max(0.0, bound - noisy_success_probability(k, tc, d)), 0.0,
                "p(k, 1-t, d)", "t^k sin^2((2k+1) theta)")

            for theta in grid.thetas:
                ttag = f"{tag}/theta={theta:g}"
                spec = ControlSpec(theta)
                sim1 = simulate_framework("f1", k, t, theta, cfg)
                sim2 = simulate_framework("f2", k, t, theta, cfg)
                if theta == 0.5:
                    add(f"f1/{ttag}/probability", abs(sim1 - f1.p_framework1(k, tc, d)), 1e-10,
                        "oracle F1 simulation", "P_xi closed form")
                state = f2.build_state(k, tc, cfg, theta)
                rec = f2.project_all_plus_recursive(state)
                add(f"f2/{ttag}/recursion", _maxabs(rec, f2.project_all_plus(state)), 1e-10,
                    "M_k recursion", "direct |+>^k projection")
                alpha, beta, resid = f2.dense_block_coefficients(state, cfg)
                sym = f2.symbolic_state(k, tc, d, theta)
                sym_err = max(_maxabs(alpha, sym.alpha), _maxabs(beta, sym.beta), resid)
                add(f"f2/{ttag}/symbolic", sym_err, 1e-10, "dense blocks", "symbolic (alpha, beta)")
                dense_p = f2.p_framework2_sim(k, tc, spec, cfg)
                add(f"f2/{ttag}/probability", abs(sim2 - dense_p), 1e-10,
                    "oracle F2 simulation", "dense F/R evolution")
                add(f"f2/{ttag}/matches-f1", abs(sim2 - sim1), 1e-10,
                    "oracle F2 simulation", "oracle F1 simulation")
                add(f"f2/{ttag}/recursion-closed-form", abs(sim2 - f2.p_framework2_exact(k, tc, d, theta)),
                    1e-10, "oracle F2 simulation", "(a/(a+b))^k closed form")
                if theta == 0.5 and k <= 3:
                    add(f"f2/{ttag}/published-formula", abs(f2.p_framework2_closed(k, tc, d) - sim2), 1e-8,
                        "published P_omega formula", "oracle F2 simulation", kind="claim")

    reports.sort(key=lambda r: r.case_id)
    return reports


def suite_passed(reports):
    return not any(r.blocking for r in reports)
