r"""Fundamental solutions of the time-fractional diffusion-wave equation.

The equation :math:`D_*^{2\beta} w = D\, w_{xx}` with :math:`0 < \beta < 1` has two
fundamental solutions, both functions of the similarity variable
:math:`r = |x| / (\sqrt{D}\, t^\beta)`:

* Cauchy problem (initial data on the whole line):
  :math:`G_c(x,t;\beta) = M(r;\beta) / (2\sqrt{D}\, t^\beta)`;
* Signalling problem (boundary data at :math:`x = 0`, :math:`x > 0`):
  :math:`G_s(x,t;\beta) = F(r;\beta)/t = \beta x M(r;\beta) / (\sqrt{D}\, t^{1+\beta})`.

For :math:`1/2 < \beta < 1` the second initial condition
:math:`w_t(x, 0^+) = 0` is implied; no API accepts an initial velocity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import _quad
from .errors import DomainError, GridError
from .fractional import SampledFunction
from .wright import (
    AuxFunctionParams,
    Method,
    f_series,
    m_aux,
    m_peak,
    m_series,
    m_tail_radius,
)

BETA_CLOSEST_TO_ONE = 1.0 - 1e-4


class ProblemKind(str, enum.Enum):
    CAUCHY = "cauchy"
    SIGNALLING = "signalling"


class Axis(str, enum.Enum):
    SPACE_AT_FIXED_T = "space_at_fixed_t"
    TIME_AT_FIXED_X = "time_at_fixed_x"


@dataclass(frozen=True)
class Medium:
    D: float
    beta: float

    def __post_init__(self):
        if not (self.D > 0.0 and math.isfinite(self.D)):
            raise DomainError(f"D must be positive, got {self.D}")
        if not 0.0 < self.beta <= BETA_CLOSEST_TO_ONE:
            raise DomainError(f"beta must lie in (0, {BETA_CLOSEST_TO_ONE}], got {self.beta}")

    @property
    def sqrt_d(self) -> float:
        return math.sqrt(self.D)

    def similarity(self, x: float, t: float) -> float:
        """r = |x| / (sqrt(D) t^beta)."""
        return abs(x) / (self.sqrt_d * t**self.beta)


@dataclass(frozen=True)
class SpaceTimePoint:
    x: float
    t: float


@dataclass(frozen=True)
class SpatialSamples:
    """Initial data g(x) sampled at x_k = x0 + k dx."""

    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise GridError("spatial data needs at least 2 samples")
        if not (self.dx > 0.0 and math.isfinite(self.dx)):
            raise GridError(f"grid step must be positive, got {self.dx}")
        object.__setattr__(self, "values", vals)

    @property
    def coords(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.values.size)


@dataclass(frozen=True)
class PulseProfile:
    axis: Axis
    fixed_value: float
    coords: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        d = np.asarray(self.density, dtype=float)
        if c.shape != d.shape or c.ndim != 1:
            raise GridError("coordinates and densities must be 1-D arrays of equal length")
        if c.size > 1 and not np.all(np.diff(c) > 0):
            raise GridError("profile coordinates must be strictly increasing")
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "coords", c)
        object.__setattr__(self, "density", d)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.coords.tolist(), self.density.tolist()))


def _require_t(t: float) -> None:
    if not (t > 0.0 and math.isfinite(t)):
        raise DomainError(f"t must be positive, got {t}")


def green_cauchy(p: SpaceTimePoint, m: Medium, method: Method | str = Method.AUTO) -> float:
    """G_c(x,t;beta) = M(r;beta) / (2 sqrt(D) t^beta); even in x."""
    _require_t(p.t)
    scale = m.sqrt_d * p.t**m.beta
    r = abs(p.x) / scale
    return m_aux(r, AuxFunctionParams(m.beta, Method(method))).value / (2.0 * scale)


def green_signalling(p: SpaceTimePoint, m: Medium, method: Method | str = Method.AUTO) -> float:
    """G_s(x,t;beta) = beta x M(r;beta) / (sqrt(D) t^(1+beta)) for x > 0."""
    if not p.x > 0.0:
        raise DomainError(f"signalling problem needs x > 0, got {p.x}")
    _require_t(p.t)
    r = m.similarity(p.x, p.t)
    return m.beta * r * m_aux(r, AuxFunctionParams(m.beta, Method(method))).value / p.t


def reciprocity_terms(p: SpaceTimePoint, m: Medium) -> tuple[float, float]:
    """(2 beta x G_c, t G_s) with G_c from the M series and G_s from the F series."""
    if not p.x > 0.0:
        raise DomainError(f"reciprocity needs x > 0, got {p.x}")
    _require_t(p.t)
    scale = m.sqrt_d * p.t**m.beta
    r = p.x / scale
    g_c = m_series(r, m.beta).value / (2.0 * scale)
    g_s = f_series(r, m.beta).value / p.t
    return 2.0 * m.beta * p.x * g_c, p.t * g_s


def reciprocity_residual(p: SpaceTimePoint, m: Medium) -> float:
    """2 beta x G_c(x,t) - t G_s(x,t), each side from an independent series."""
    a, b = reciprocity_terms(p, m)
    return a - b


def scaling_check(p: SpaceTimePoint, m: Medium, scale_p: float, scale_q: float) -> dict[ProblemKind, tuple[float, float]]:
    """Both sides of the space-time scaling laws of the two Green functions.

    Cauchy:     G_c(p x, q t) = q^-beta G_c(p x / q^beta, t)
    Signalling: G_s(p x, q t) = q^-1    G_s(p x / q^beta, t)
    """
    if not (scale_p > 0.0 and scale_q > 0.0):
        raise DomainError("scale factors must be positive")
    _require_t(p.t)
    qb = scale_q**m.beta
    a = SpaceTimePoint(scale_p * p.x, scale_q * p.t)
    b = SpaceTimePoint(scale_p * p.x / qb, p.t)
    out = {ProblemKind.CAUCHY: (green_cauchy(a, m), green_cauchy(b, m) / qb)}
    if p.x > 0.0:
        out[ProblemKind.SIGNALLING] = (green_signalling(a, m), green_signalling(b, m) / scale_q)
    return out


def green_laplace(x: float, s: float, m: Medium, kind: ProblemKind | str) -> float:
    """Laplace transforms in t: Cauchy exp(-|x| s^beta/sqrt(D)) / (2 sqrt(D) s^(1-beta)),
    Signalling exp(-x s^beta / sqrt(D))."""
    kind = ProblemKind(kind)
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s}")
    mu = s**m.beta / m.sqrt_d
    if kind is ProblemKind.CAUCHY:
        return math.exp(-abs(x) * mu) / (2.0 * m.sqrt_d * s ** (1.0 - m.beta))
    if x < 0.0:
        raise DomainError(f"signalling problem needs x >= 0, got {x}")
    return math.exp(-x * mu)


@dataclass(frozen=True)
class ClassicalLimit:
    beta: float
    cauchy: float | None = None
    signalling: float | None = None
    wave_speed: float | None = None
    wavefronts: tuple[float, ...] = ()
    wavefront_weights: tuple[float, ...] = ()
    signalling_arrival: float | None = None


def classical_limits(p: SpaceTimePoint | None, D: float, beta: float) -> ClassicalLimit:
    """Closed forms at the two classical orders.

    beta = 1/2 (diffusion): G_c = exp(-x^2/(4Dt)) / (2 sqrt(pi D t)),
    G_s = x exp(-x^2/(4Dt)) / (2 sqrt(pi D) t^(3/2)).
    beta = 1 (waves, c = sqrt(D)): G_c = [delta(x-ct) + delta(x+ct)]/2 and
    G_s = delta(t - x/c), returned as wavefront positions and weights only.
    """
    if not D > 0.0:
        raise DomainError(f"D must be positive, got {D}")
    if beta == 0.5:
        if p is None:
            return ClassicalLimit(beta)
        _require_t(p.t)
        g = math.exp(-p.x * p.x / (4.0 * D * p.t))
        gc = g / (2.0 * math.sqrt(math.pi * D * p.t))
        gs = abs(p.x) * g / (2.0 * math.sqrt(math.pi * D) * p.t**1.5) if p.x > 0.0 else None
        return ClassicalLimit(beta, cauchy=gc, signalling=gs)
    if beta == 1.0:
        c = math.sqrt(D)
        fronts, weights, arrival = (), (), None
        if p is not None:
            if p.t > 0.0:
                fronts, weights = (-c * p.t, c * p.t), (0.5, 0.5)
            if p.x > 0.0:
                arrival = p.x / c
        return ClassicalLimit(beta, wave_speed=c, wavefronts=fronts, wavefront_weights=weights, signalling_arrival=arrival)
    raise DomainError(f"classical limits exist only for beta in {{1/2, 1}}, got {beta}")


@dataclass(frozen=True)
class DecayExponents:
    cauchy_space_exp: float
    cauchy_prefactor_power: float
    signalling_time_exp: float


def decay_exponents(m: Medium) -> DecayExponents:
    """Large-argument structure: log G_c ~ -c |x|^(1/(1-beta)) with prefactor
    power (beta-1/2)/(1-beta); G_s ~ t^-(1+beta) for t -> inf."""
    b = m.beta
    return DecayExponents(1.0 / (1.0 - b), (b - 0.5) / (1.0 - b), -(1.0 + b))


# ---------------------------------------------------------------------------
# profiles and convolution


def pulse_space(t: float, m: Medium, xs) -> PulseProfile:
    """G_c(x, t) over the spatial grid ``xs``."""
    _require_t(t)
    xs = np.asarray(xs, dtype=float)
    vals = [green_cauchy(SpaceTimePoint(x, t), m) for x in xs]
    return PulseProfile(Axis.SPACE_AT_FIXED_T, t, xs, np.array(vals))


def pulse_time(x: float, m: Medium, ts) -> PulseProfile:
    """G_s(x, t) over the time grid ``ts``; t = 0 gives the limit value 0."""
    if not x > 0.0:
        raise DomainError(f"signalling problem needs x > 0, got {x}")
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0.0):
        raise DomainError("times must be non-negative")
    vals = [green_signalling(SpaceTimePoint(x, t), m) if t > 0.0 else 0.0 for t in ts]
    return PulseProfile(Axis.TIME_AT_FIXED_X, x, ts, np.array(vals))


def _trapezoid_weights(n: int) -> np.ndarray:
    w = np.ones(n)
    w[0] = w[-1] = 0.5
    return w


def convolve_solution(data, m: Medium, kind: ProblemKind | str, *, at: float) -> PulseProfile:
    """Solution for general data by trapezoidal convolution with a Green function.

    Cauchy: ``data`` is :class:`SpatialSamples` g(x), ``at`` is the time t, and
    w(x_i, t) = sum_j g_j G_c(x_i - x_j, t) dx (trapezoid weights).
    Signalling: ``data`` is a causal :class:`SampledFunction` h(t), ``at`` is
    the position x, and w(x, t_i) = sum_{j<=i} h_j G_s(x, t_i - t_j) dt.

    A discrete delta has unit trapezoid mass: 1/dx at an interior node, 2/dt at
    the causal endpoint t = 0.
    """
    kind = ProblemKind(kind)
    if kind is ProblemKind.CAUCHY:
        if not isinstance(data, SpatialSamples):
            raise GridError("Cauchy convolution needs SpatialSamples initial data")
        n = data.values.size
        lags = data.dx * np.arange(-(n - 1), n)
        # G_c is even: evaluate on non-negative lags only
        half = np.array([green_cauchy(SpaceTimePoint(x, at), m) for x in lags[n - 1 :]])
        kernel = np.concatenate([half[:0:-1], half])
        weighted = data.values * _trapezoid_weights(n) * data.dx
        full = np.convolve(weighted, kernel)
        return PulseProfile(Axis.SPACE_AT_FIXED_T, at, data.coords, full[n - 1 : 2 * n - 1])
    if not isinstance(data, SampledFunction):
        raise GridError("signalling convolution needs causal SampledFunction boundary data")
    if not at > 0.0:
        raise DomainError(f"signalling problem needs x > 0, got {at}")
    n = data.values.size
    kernel = pulse_time(at, m, data.dt * np.arange(n)).density
    w = np.empty(n)
    for i in range(n):
        # trapezoid over [0, t_i]; the j = i end carries G_s(x, 0) = 0
        wts = _trapezoid_weights(i + 1) if i > 0 else np.zeros(1)
        w[i] = data.dt * np.dot(data.values[: i + 1] * wts, kernel[i::-1])
    return PulseProfile(Axis.TIME_AT_FIXED_X, at, data.times, w)


# ---------------------------------------------------------------------------
# integral diagnostics


def _space_breakpoints(m: Medium, scale: float, x_max: float) -> list[float]:
    # the auto evaluator switches near r = 2; the interior peak needs resolving
    pts = [2.0 * scale]
    if 0.5 < m.beta < 1.0:
        r0, _ = m_peak(m.beta)
        pts += [r0 * scale * f for f in (0.9, 0.97, 1.0, 1.03, 1.1)]
    return [x for x in pts if 0.0 < x < x_max]


def cauchy_moment(n: int, t: float, m: Medium, rtol: float = 1e-12) -> float:
    """Quadrature of int x^(2n) G_c(x,t) dx over the whole line, truncated where
    the integrand has fallen below 1e-14 of its size."""
    _require_t(t)
    scale = m.sqrt_d * t**m.beta
    x_max = scale * m_tail_radius(m.beta, 1e-14, 2 * n)

    def f(x):
        return x ** (2 * n) * green_cauchy(SpaceTimePoint(x, t), m)

    v, _ = _quad.quad(f, 0.0, x_max, points=_space_breakpoints(m, scale, x_max), epsabs=1e-15 * scale ** (2 * n), epsrel=rtol)
    return 2.0 * v


def cauchy_moment_exact(n: int, t: float, m: Medium) -> float:
    """Gamma(2n+1)/Gamma(2 beta n+1) (D t^(2 beta))^n."""
    return math.exp(math.lgamma(2 * n + 1.0) - math.lgamma(2 * m.beta * n + 1.0)) * (m.D * t ** (2 * m.beta)) ** n


def _signalling_tail(r_cut: float, beta: float) -> float:
    # int_T^inf G_s dt with r(T) = r_cut, termwise from the F series:
    # (1/beta) sum_{n>=1} (-r_cut)^n / (n n! Gamma(-beta n))
    # |1/Gamma(-beta n)| <= Gamma(1+beta n)/pi <= n!, so terms are below r_cut^n / n
    if not 0.0 < r_cut <= 0.2:
        raise DomainError(f"tail cut must lie in (0, 0.2], got {r_cut}")
    total = math.fsum(
        (-r_cut) ** n / (n * math.factorial(n)) * float(special.rgamma(-beta * n)) for n in range(1, 41)
    )
    return total / beta


def signalling_mass(x: float, m: Medium, r_cut: float = 0.05, rtol: float = 1e-12) -> float:
    """int_0^inf G_s(x,t) dt: quadrature up to the time where r = r_cut, plus the
    algebraic t^-(1+beta) tail integrated term by term."""
    if not x > 0.0:
        raise DomainError(f"signalling problem needs x > 0, got {x}")
    t_of_r = lambda r: (x / (m.sqrt_d * r)) ** (1.0 / m.beta)  # noqa: E731
    t_end = t_of_r(r_cut)
    pts = [t_of_r(r) for r in (4.0, 2.0, 1.0, 0.5, 0.2)]

    def f(t):
        return green_signalling(SpaceTimePoint(x, t), m) if t > 0.0 else 0.0

    v, _ = _quad.quad(f, 0.0, t_end, points=pts, epsrel=rtol, epsabs=1e-15)
    return v + _signalling_tail(r_cut, m.beta)


def signalling_laplace_numeric(x: float, s: float, m: Medium, rtol: float = 1e-12) -> float:
    """Quadrature of int_0^inf e^(-st) G_s(x,t) dt, truncated at e^(-st) < 1e-16."""
    if not (x > 0.0 and s > 0.0):
        raise DomainError("need x > 0 and s > 0")
    t_end = 37.0 / s
    pts = [(x / (m.sqrt_d * r)) ** (1.0 / m.beta) for r in (4.0, 2.0, 1.0, 0.5)] + [1.0 / s, 5.0 / s]

    def f(t):
        return math.exp(-s * t) * green_signalling(SpaceTimePoint(x, t), m) if t > 0.0 else 0.0

    v, _ = _quad.quad(f, 0.0, t_end, points=pts, epsrel=rtol, epsabs=1e-16)
    return v
