"""Command-line front end: grid sweeps as CSV, material maps as JSON, and a self-test.

Exit status: 0 on success, 1 when an evaluation fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .errors import ConstQError
from .fractional import (
    DerivativeKind,
    FractionalOrder,
    PowerFunction,
    SampledFunction,
    caputo_derivative_sampled,
    frac_derivative_power,
)
from .green import Medium, pulse_space, pulse_time
from .material import QFactor, beta_from_nu, nearly_elastic_approx, nu_from_q, q_from_nu
from .stable import StableParams, stable_pdf
from .wright import AuxFunctionParams, Method, m_aux

EXIT_OK, EXIT_EVAL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return "%.17g" % v


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def write_csv(columns, rows, path: str | None = None) -> None:
    """Header comment, column names, then rows at 17 significant digits, LF endings."""
    lines = [f"# constq-waves v{__version__}", ",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    with _output(path) as fh:
        fh.write("\n".join(lines) + "\n")


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if not lo < hi:
        raise UsageError(f"range minimum {lo} must be below maximum {hi}")
    if steps < 2:
        raise UsageError(f"steps must be at least 2, got {steps}")
    return np.linspace(lo, hi, steps)


def _beta_from_args(args) -> float:
    given = [n for n in ("beta", "q", "epsilon") if getattr(args, n, None) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --beta, --q" + (", --epsilon" if hasattr(args, "epsilon") else ""))
    if args.beta is not None:
        beta = args.beta
    elif args.q is not None:
        if not args.q > 0.0:
            raise UsageError(f"Q must be positive, got {args.q}")
        beta = beta_from_nu(nu_from_q(QFactor.from_q(args.q)))
    else:
        beta = 1.0 - args.epsilon
    if not 0.0 < beta < 1.0:
        raise UsageError(f"beta must lie in (0, 1), got {beta}")
    return beta


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval_m(args) -> int:
    beta = _beta_from_args(args)
    p = AuxFunctionParams(beta, Method(args.method))
    rows = []
    for r in _grid(args.rmin, args.rmax, args.steps):
        res = m_aux(float(r), p)
        rows.append((r, res.value, beta * r * res.value, res.method_used.value, res.est_abs_error))
    write_csv(("r", "M", "F", "method_used", "est_abs_error"), rows, args.out)
    return EXIT_OK


def cmd_pulse(args) -> int:
    beta = _beta_from_args(args)
    medium = Medium(args.D, beta)
    if args.axis == "space":
        xmin = -args.xmax if args.xmin is None else args.xmin
        prof = pulse_space(args.t, medium, _grid(xmin, args.xmax, args.steps))
        cols = ("x", "G_c")
    else:
        prof = pulse_time(args.x, medium, _grid(args.tmin, args.tmax, args.steps))
        cols = ("t", "G_s")
    write_csv(cols, zip(prof.coords, prof.density), args.out)
    return EXIT_OK


def cmd_material(args) -> int:
    if (args.nu is None) == (args.q is None):
        raise UsageError("give exactly one of --nu, --q")
    if args.nu is not None:
        if not 0.0 < args.nu <= 1.0:
            raise UsageError(f"nu must lie in (0, 1], got {args.nu}")
        nu, q = args.nu, q_from_nu(args.nu)
    else:
        if not args.q > 0.0:
            raise UsageError(f"Q must be positive, got {args.q}")
        q = QFactor.from_q(args.q)
        nu = nu_from_q(q)
    out = {"nu": nu, "q_inv": "infinite" if q.is_infinite else q.q_inv, "beta": beta_from_nu(nu)}
    if q.is_infinite:
        out.update(nu_approx="infinite", approx_rel_err=None)
    else:
        approx = nearly_elastic_approx(q)
        out.update(nu_approx=approx.nu_approx, approx_rel_err=approx.rel_err_vs_exact)
    with _output(args.out) as fh:
        fh.write(json.dumps(out) + "\n")
    return EXIT_OK


def cmd_stable(args) -> int:
    try:
        p = StableParams(args.alpha, args.theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    for y in _grid(args.ymin, args.ymax, args.steps):
        res = stable_pdf(float(y), p)
        rows.append((y, res.value, res.method_used.value))
    write_csv(("y", "p", "method"), rows, args.out)
    return EXIT_OK


def _monomial_values(f: PowerFunction, ts: np.ndarray) -> np.ndarray:
    out = np.empty_like(ts)
    for i, t in enumerate(ts):
        if f.coefficient == 0.0:
            out[i] = 0.0
        elif t > 0.0:
            out[i] = f.coefficient * t**f.gamma
        else:
            out[i] = 0.0 if f.gamma > 0.0 else (f.coefficient if f.gamma == 0.0 else math.copysign(math.inf, f.coefficient))
    return out


def cmd_fracderiv(args) -> int:
    try:
        f = PowerFunction(args.coef, args.gamma)
        order = FractionalOrder(args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ts = _grid(0.0, args.tmax, args.steps)
    exact = frac_derivative_power(f, order, DerivativeKind(args.kind))
    if args.mode == "analytic":
        write_csv(("t", "value"), zip(ts, _monomial_values(exact, ts)), args.out)
        return EXIT_OK
    if args.kind != DerivativeKind.CAPUTO.value:
        raise UsageError("sampled mode computes Caputo derivatives only")
    samples = SampledFunction(dt=float(ts[1] - ts[0]), values=_monomial_values(f, ts))
    d = caputo_derivative_sampled(samples, order)
    write_csv(("t", "value", "exact"), zip(ts, d.values, _monomial_values(exact, ts)), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    return EXIT_OK if run_all(sys.stdout) else EXIT_EVAL


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _add_beta(p, epsilon: bool = False) -> None:
    p.add_argument("--beta", type=float, help="order beta in (0, 1)")
    p.add_argument("--q", type=float, help="quality factor Q; beta = 1 - nu/2 with nu = (2/pi) arctan(1/Q)")
    if epsilon:
        p.add_argument("--epsilon", type=float, help="nearly-elastic order beta = 1 - epsilon")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="constq-waves", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"constq-waves {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval-m", help="tabulate M(r;beta) and F(r;beta)")
    _add_beta(p)
    p.add_argument("--rmin", type=float, default=0.0)
    p.add_argument("--rmax", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=401)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.AUTO.value)
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval_m)

    p = sub.add_parser("pulse", help="Cauchy pulse in space or signalling pulse in time")
    _add_beta(p, epsilon=True)
    p.add_argument("--axis", choices=("space", "time"), required=True)
    p.add_argument("--D", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0, help="fixed time for --axis space")
    p.add_argument("--x", type=float, default=1.0, help="fixed position for --axis time")
    p.add_argument("--xmin", type=float, default=None, help="default -xmax")
    p.add_argument("--xmax", type=float, default=2.0)
    p.add_argument("--tmin", type=float, default=0.0)
    p.add_argument("--tmax", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=401)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pulse)

    p = sub.add_parser("material", help="Q and nu maps as JSON")
    p.add_argument("--nu", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_material)

    p = sub.add_parser("stable", help="tabulate a stable density")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--ymin", type=float, default=0.1)
    p.add_argument("--ymax", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stable)

    p = sub.add_parser("fracderiv", help="fractional derivative of coef * t^gamma")
    p.add_argument("--kind", choices=[k.value for k in DerivativeKind], default=DerivativeKind.CAPUTO.value)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--coef", type=float, default=1.0)
    p.add_argument("--mode", choices=("analytic", "sampled"), default="analytic")
    p.add_argument("--tmax", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fracderiv)

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ConstQError, ValueError, ArithmeticError, OSError) as exc:
        sys.stderr.write(f"constq-waves: error: {exc}\n")
        return EXIT_EVAL
    return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
