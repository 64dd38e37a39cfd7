"""Command-line entry point: ``sweep``, ``verify`` and ``point``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

import argparse
import io
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import framework1, framework2, grover, oracle
from .grover import GroverConfig
from .qswitch import ControlSpec

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CSV_HEADER = "d,k,one_minus_t,theta,p_ideal,p_noisy,p_f1,p_f2"
FRAMEWORKS = ("none", "f1", "f2")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n: int = 4
    k_list: tuple = (1, 2, 3)
    noise_points: int = 101
    theta: float = 0.5
    frameworks: tuple = FRAMEWORKS
    output_path: str = "-"

    def __post_init__(self):
        if self.noise_points < 2:
            raise UsageError("noise_points must be >= 2")
        if not self.k_list:
            raise UsageError("k_list must not be empty")
        if any(k < 0 or k > framework2.K_MAX for k in self.k_list):
            raise UsageError(f"iteration counts must lie in [0, {framework2.K_MAX}]")
        if not 1 <= self.n <= 6:
            raise UsageError("n must lie in [1, 6]")
        if not 0.0 <= self.theta <= 1.0:
            raise UsageError("theta must lie in [0, 1]")
        bad = set(self.frameworks) - set(FRAMEWORKS)
        if bad:
            raise UsageError(f"unknown frameworks {sorted(bad)}; choose from {FRAMEWORKS}")


def fmt(x):
    return format(float(x), ".12g")


def sweep_rows(cfg):
    """Yield one tuple of CSV fields per (k, noise point), k-major."""
    d = 2**cfg.n
    gcfg = GroverConfig(cfg.n)
    spec = ControlSpec(cfg.theta)
    noise = np.linspace(0.0, 1.0, cfg.noise_points)
    for k in cfg.k_list:
        p_ideal = grover.ideal_success_probability(k, d)
        for one_minus_t in noise:
            t = 1.0 - float(one_minus_t)
            p_noisy = grover.noisy_success_probability(k, t, d) if "none" in cfg.frameworks else None
            p_f1 = p_f2 = None
            if "f1" in cfg.frameworks:
                if cfg.theta == 0.5:
                    p_f1 = framework1.p_framework1(k, t, d)
                else:
                    p_f1 = framework1.p_framework1_sim(k, t, spec, gcfg)
            if "f2" in cfg.frameworks:
                p_f2 = framework2.p_framework2_sim(k, t, spec, gcfg)
            yield (d, k, one_minus_t, cfg.theta, p_ideal, p_noisy, p_f1, p_f2)


def format_row(row):
    d, k, *floats = row
    return ",".join([str(d), str(k)] + ["" if x is None else fmt(x) for x in floats])


def cmd_sweep(cfg, stream=None):
    buf = io.StringIO(newline="")
    buf.write(CSV_HEADER + "\n")
    for row in sweep_rows(cfg):
        buf.write(format_row(row) + "\n")
    text = buf.getvalue()
    if cfg.output_path in ("-", "") and stream is None:
        sys.stdout.write(text)
    elif stream is not None:
        stream.write(text)
    else:
        Path(cfg.output_path).write_text(text, encoding="utf-8", newline="\n")
    return text


def cmd_verify(preset="quick", perturb=0.0, out=None):
    out = out or sys.stdout
    if preset not in oracle.PRESETS:
        raise UsageError(f"unknown preset {preset!r}; choose from {sorted(oracle.PRESETS)}")
    start = time.perf_counter()
    reports = oracle.verify_all(oracle.PRESETS[preset], perturb=perturb)
    for r in reports:
        print(r.line(), file=out)
    blocking = sum(r.blocking for r in reports)
    claims = [r for r in reports if r.kind == "claim" and not r.passed]
    elapsed = time.perf_counter() - start
    print(
        f"{len(reports)} cases, {blocking} failed, {len(claims)} published-formula deviations "
        f"reported, {elapsed:.1f} s",
        file=out,
    )
    return EXIT_OK if blocking == 0 else EXIT_VERIFY


def point_value(n, k, one_minus_t, framework, theta=0.5):
    d = 2**n
    t = 1.0 - one_minus_t
    if framework == "none":
        return grover.noisy_success_probability(k, t, d)
    if framework == "f1":
        if theta == 0.5:
            return framework1.p_framework1(k, t, d)
        return framework1.p_framework1_sim(k, t, ControlSpec(theta), GroverConfig(n))
    if framework == "f2":
        return framework2.p_framework2_sim(k, t, ControlSpec(theta), GroverConfig(n))
    raise UsageError(f"unknown framework {framework!r}; choose from {FRAMEWORKS}")


def cmd_point(n, k, one_minus_t, framework, theta=0.5, out=None):
    if not 0.0 <= one_minus_t <= 1.0:
        raise UsageError("noise must lie in [0, 1]")
    value = point_value(n, k, one_minus_t, framework, theta)
    print(f"{value:.12f}", file=out or sys.stdout)
    return value


def read_config_file(path):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _int_list(text):
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _name_list(text):
    return tuple(x.strip() for x in str(text).split(",") if x.strip())


_SWEEP_KEYS = {
    "n": ("n", int),
    "k": ("k_list", _int_list),
    "noise_points": ("noise_points", int),
    "theta": ("theta", float),
    "frameworks": ("frameworks", _name_list),
    "out": ("output_path", str),
}


def build_sweep_config(args):
    """Merge CLI flags over config-file values over defaults."""
    merged = {}
    if args.config:
        file_values = read_config_file(args.config)
        unknown = set(file_values) - set(_SWEEP_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for key, raw in file_values.items():
            name, conv = _SWEEP_KEYS[key]
            try:
                merged[name] = conv(raw)
            except ValueError:
                raise UsageError(f"bad value for {key}: {raw!r}") from None
    for key, (name, conv) in _SWEEP_KEYS.items():
        value = getattr(args, key, None)
        if value is not None:
            merged[name] = conv(value)
    valid = {f.name for f in fields(SweepConfig)}
    return SweepConfig(**{k: v for k, v in merged.items() if k in valid})


def make_parser():
    parser = argparse.ArgumentParser(
        prog="icogrover",
        description="Grover search under total depolarizing noise, with quantum-switch mitigation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="success probability vs noise strength (1 - t) as CSV")
    sw.add_argument("--n", type=int, help="qubits in the search register (default 4)")
    sw.add_argument("--k", help="comma-separated iteration counts (default 1,2,3)")
    sw.add_argument("--noise-points", dest="noise_points", type=int,
                    help="samples of 1 - t in [0, 1] (default 101)")
    sw.add_argument("--theta", type=float, help="control amplitude theta (default 0.5)")
    sw.add_argument("--frameworks", help="subset of none,f1,f2 (default all)")
    sw.add_argument("--out", help="output CSV path, '-' for stdout (default)")
    sw.add_argument("--config", help="key=value file; CLI flags take precedence")

    ve = sub.add_parser("verify", help="run the closed-form vs brute-force cross-checks")
    ve.add_argument("--preset", choices=sorted(oracle.PRESETS), default="quick")
    ve.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)

    pt = sub.add_parser("point", help="one success probability")
    pt.add_argument("--n", type=int, default=4)
    pt.add_argument("--k", type=int, default=1)
    pt.add_argument("--noise", type=float, default=0.0, help="noise strength 1 - t")
    pt.add_argument("--framework", default="none", help="none, f1 or f2")
    pt.add_argument("--theta", type=float, default=0.5)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            cmd_sweep(build_sweep_config(args))
            return EXIT_OK
        if args.command == "verify":
            return cmd_verify(args.preset, args.perturb)
        if args.command == "point":
            if args.framework not in FRAMEWORKS:
                raise UsageError(f"unknown framework {args.framework!r}; choose from {FRAMEWORKS}")
            cmd_point(args.n, args.k, args.noise, args.framework, args.theta)
            return EXIT_OK
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError) as exc:
        print(f"icogrover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"icogrover: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
