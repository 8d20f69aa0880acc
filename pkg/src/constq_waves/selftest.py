"""Fast invariant suites, one per module, run by ``constq-waves selftest``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fractional as fr
from . import green, material, stable, wright


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    tol: float
    residual: Callable[[], float]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _fractional() -> list[Check]:
    def semigroup():
        f = fr.PowerFunction(1.0, 0.5)
        a = fr.frac_integral_power(fr.frac_integral_power(f, fr.FractionalOrder(0.3)), fr.FractionalOrder(0.4))
        b = fr.frac_integral_power(f, fr.FractionalOrder(0.7))
        return _rel(a.coefficient, b.coefficient) + abs(a.gamma - b.gamma)

    def constant():
        s = fr.SampledFunction(dt=1e-3, values=np.full(1001, 2.5))
        return float(np.max(np.abs(fr.caputo_derivative_sampled(s, fr.FractionalOrder(0.5)).values)))

    def linear():
        s = fr.SampledFunction.from_callable(lambda t: t, 1.0, 1000)
        d = fr.caputo_derivative_sampled(s, fr.FractionalOrder(0.25))
        exact = s.times[1:] ** 0.75 / math.gamma(1.75)
        return float(np.max(np.abs(d.values[1:] - exact)))

    def laplace():
        lhs, rhs = fr.laplace_of_caputo_check(fr.PowerFunction(1.0, 1.5), fr.FractionalOrder(0.5), 2.0)
        return _rel(lhs, rhs)

    return [
        Check("fractional", "integral semigroup on t^0.5", 1e-14, semigroup),
        Check("fractional", "sampled Caputo of a constant", 1e-12, constant),
        Check("fractional", "sampled Caputo of t at alpha 0.25", 1e-4, linear),
        Check("fractional", "Laplace rule for Caputo of t^1.5", 1e-6, laplace),
    ]


def _wright() -> list[Check]:
    def gauss():
        r = np.linspace(0.0, 4.0, 41)
        got = [wright.m_value(float(x), 0.5, "series") for x in r]
        return float(np.max(np.abs(np.asarray(got) - np.exp(-r * r / 4) / math.sqrt(math.pi))))

    def f_identity():
        return max(
            _rel(wright.f_series(r, b).value, b * r * wright.m_series(r, b).value)
            for b in (0.25, 0.75)
            for r in (0.5, 1.5)
        )

    def series_vs_contour():
        return max(
            abs(wright.m_series(r, b).value - wright.m_contour(r, b).value)
            for b in (0.25, 0.5, 0.75)
            for r in (0.3, 1.0, 2.5)
        )

    def moments():
        got = wright.m_integral(0.75, powers=(0, 1, 2))
        want = [wright.m_moment(n, 0.75) for n in (0, 1, 2)]
        return max(_rel(g, w) for g, w in zip(got, want))

    return [
        Check("wright", "M(r;1/2) against the Gaussian", 1e-12, gauss),
        Check("wright", "F = beta r M", 1e-10, f_identity),
        Check("wright", "series against contour", 1e-10, series_vs_contour),
        Check("wright", "absolute moments at beta 0.75", 1e-8, moments),
    ]


def _green() -> list[Check]:
    m = green.Medium(1.0, 0.75)

    def reciprocity():
        return max(green.reciprocity_residual(green.SpaceTimePoint(x, t), m) for x, t in ((0.5, 1.0), (1.0, 2.0)))

    def mass():
        return abs(green.cauchy_moment(0, 1.0, m) - 1.0)

    def second_moment():
        return _rel(green.cauchy_moment(2, 1.0, m), green.cauchy_moment_exact(2, 1.0, m))

    def signalling_mass():
        return abs(green.signalling_mass(1.0, m) - 1.0)

    return [
        Check("green", "reciprocity x G_c = beta t G_s", 1e-10, reciprocity),
        Check("green", "Cauchy mass", 1e-8, mass),
        Check("green", "Cauchy second moment", 1e-8, second_moment),
        Check("green", "signalling mass", 1e-8, signalling_mass),
    ]


def _stable() -> list[Check]:
    def levy():
        lp = stable.LevyParams(0.5)
        p = stable.StableParams(0.5, -0.5)
        return max(_rel(stable.stable_pdf(y, p).value, stable.levy_pdf(y, lp)) for y in (0.2, 1.0, 5.0))

    def gauss():
        g = stable.GaussParams(math.sqrt(2.0))
        p = stable.StableParams(2.0, 0.0)
        return max(_rel(stable.stable_pdf(y, p).value, stable.gauss_pdf(y, g)) for y in (0.0, 1.0, 3.0))

    def duality():
        return max(abs(stable.stable_duality_residual(y, 0.75, 0.2)) for y in (0.5, 1.0, 2.0))

    return [
        Check("stable", "alpha 1/2 extremal is Levy", 1e-10, levy),
        Check("stable", "alpha 2 is Gaussian", 1e-12, gauss),
        Check("stable", "Feller duality", 1e-10, duality),
    ]


def _material() -> list[Check]:
    def round_trip():
        return max(abs(material.nu_from_q(material.q_from_nu(nu)) - nu) for nu in (0.01, 0.3, 0.5, 0.9))

    def half():
        return abs(material.q_from_nu(0.5).q_inv - 1.0)

    def creep_loop():
        mat = material.MaterialLaw(1.0, 1.0, 0.4)
        sigma = material.stress_from_strain_power(material.creep_power(mat), mat)
        return abs(sigma.coefficient - 1.0) + abs(sigma.gamma)

    return [
        Check("material", "nu -> Q^-1 -> nu round trip", 1e-14, round_trip),
        Check("material", "Q^-1 = 1 at nu = 1/2", 1e-14, half),
        Check("material", "creep compliance returns unit stress", 1e-12, creep_loop),
    ]


def all_checks() -> list[Check]:
    return _fractional() + _wright() + _green() + _stable() + _material()


def run_all(out) -> bool:
    """Print one line per invariant; True when every check passes."""
    ok = True
    for c in all_checks():
        try:
            res = float(c.residual())
            passed = res <= c.tol
            detail = f"residual={res:.3e} tol={c.tol:.0e}"
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, f"error: {exc}"
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'} {c.suite}: {c.name} {detail}\n")
    out.write(f"{'all suites passed' if ok else 'some checks failed'}\n")
    return ok
