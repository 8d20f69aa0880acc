r"""Riemann-Liouville and Caputo operators.

For a causal function the Riemann-Liouville integral of order :math:`\alpha`
is :math:`J^\alpha f(t) = \frac{1}{\Gamma(\alpha)}\int_0^t (t-\tau)^{\alpha-1}
f(\tau)\,d\tau`.  With :math:`m-1 < \alpha \le m` the two derivatives are
:math:`D^\alpha = D^m J^{m-\alpha}` (Riemann-Liouville) and
:math:`D_*^\alpha = J^{m-\alpha} D^m` (Caputo).

Monomials :math:`c\,t^\gamma` are handled in closed form.  Sampled functions
get a product-trapezoid Caputo derivative for :math:`0 < \alpha < 1`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError, GridError, UnsupportedOrderError


class DerivativeKind(str, enum.Enum):
    RIEMANN_LIOUVILLE = "riemann_liouville"
    CAPUTO = "caputo"


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


@dataclass(frozen=True)
class FractionalOrder:
    alpha: float

    def __post_init__(self):
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"fractional order must be finite and >= 0, got {self.alpha}")

    @property
    def m(self) -> int:
        """Integer with m-1 < alpha <= m (m = alpha for integer alpha)."""
        return int(math.ceil(self.alpha))

    @property
    def is_integer(self) -> bool:
        return _is_integer(self.alpha)


@dataclass(frozen=True)
class PowerFunction:
    """The causal monomial coefficient * t**gamma."""

    coefficient: float
    gamma: float

    def __post_init__(self):
        if not self.gamma > -1.0:
            raise DomainError(f"power-function exponent must exceed -1, got {self.gamma}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.coefficient == 0.0:
            return np.zeros_like(t)
        return self.coefficient * np.power(t, self.gamma)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0.0

    def initial_value(self) -> float:
        """f(0+); infinite for a negative exponent."""
        if self.coefficient == 0.0 or self.gamma > 0.0:
            return 0.0
        if self.gamma == 0.0:
            return self.coefficient
        return math.copysign(math.inf, self.coefficient)

    def laplace(self, s: float) -> float:
        """Analytic transform c Gamma(gamma+1) / s^(gamma+1)."""
        return self.coefficient * math.gamma(self.gamma + 1.0) / s ** (self.gamma + 1.0)


@dataclass(frozen=True)
class SampledFunction:
    """Causal function sampled at t_k = t0 + k dt, k = 0..len(values)-1."""

    dt: float
    values: np.ndarray
    t0: float = 0.0
    initial_derivatives: tuple = field(default=())

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise GridError("a sampled function needs at least 2 samples")
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise GridError(f"time step must be positive, got {self.dt}")
        if self.t0 != 0.0:
            raise GridError("sampled functions are causal and must start at t0 = 0")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "initial_derivatives", tuple(float(v) for v in self.initial_derivatives))

    @classmethod
    def from_callable(cls, f, t_end: float, n_intervals: int) -> "SampledFunction":
        if n_intervals < 1:
            raise GridError("need at least one interval")
        t = np.linspace(0.0, t_end, n_intervals + 1)
        return cls(dt=t_end / n_intervals, values=np.asarray(f(t), dtype=float) * np.ones_like(t))

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)


def _ratio(gamma: float, shift: float) -> float:
    # Gamma(gamma+1)/Gamma(gamma+1+shift); a pole in the denominator gives exactly 0
    den = gamma + 1.0 + shift
    # poles are detected up to the rounding of gamma + 1 + shift
    slack = 16.0 * np.finfo(float).eps * (1.0 + abs(gamma) + abs(shift))
    nearest = round(den)
    if nearest <= 0 and abs(den - nearest) <= slack:
        return 0.0
    return math.exp(special.gammaln(gamma + 1.0) - special.gammaln(den)) * float(np.sign(special.gamma(den)))


def frac_integral_power(p: PowerFunction, order: FractionalOrder) -> PowerFunction:
    """J^alpha (c t^gamma) = c Gamma(gamma+1)/Gamma(gamma+1+alpha) t^(gamma+alpha)."""
    if order.alpha == 0.0:
        return p
    return PowerFunction(p.coefficient * _ratio(p.gamma, order.alpha), p.gamma + order.alpha)


def frac_derivative_power(
    p: PowerFunction, order: FractionalOrder, kind: DerivativeKind | str = DerivativeKind.RIEMANN_LIOUVILLE
) -> PowerFunction:
    """Fractional derivative of c t^gamma.

    Riemann-Liouville: c Gamma(gamma+1)/Gamma(gamma+1-alpha) t^(gamma-alpha),
    which vanishes when gamma+1-alpha is a non-positive integer (for example
    t^(alpha-1)).  Caputo agrees except that monomials of integer degree below
    alpha are annihilated.  For non-integer gamma < m-1 the m-th derivative
    is not integrable at 0 and the Caputo derivative does not exist.
    """
    kind = DerivativeKind(kind)
    alpha = order.alpha
    if alpha == 0.0:
        return p
    exponent = p.gamma - alpha
    if kind is DerivativeKind.CAPUTO and not order.is_integer:
        if _is_integer(p.gamma) and p.gamma < alpha:
            return PowerFunction(0.0, max(exponent, 0.0))
        if not _is_integer(p.gamma) and p.gamma < order.m - 1:
            raise DomainError(
                f"Caputo derivative of order {alpha} needs integrable D^{order.m} t^{p.gamma}; "
                f"exponent must exceed {order.m - 1}"
            )
    coef = p.coefficient * _ratio(p.gamma, -alpha)
    if coef == 0.0:
        # keep a representable exponent for the zero function
        return PowerFunction(0.0, max(exponent, 0.0))
    return PowerFunction(coef, exponent)


def rl_from_caputo_correction(f0_values, order: FractionalOrder, t: float) -> float:
    """D^alpha f(t) - D_*^alpha f(t) = sum_k t^(k-alpha)/Gamma(k-alpha+1) f^(k)(0+)."""
    if order.is_integer:
        raise DomainError("the correction is defined only for non-integer orders")
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    f0 = [float(v) for v in f0_values]
    if len(f0) != order.m:
        raise DomainError(f"order {order.alpha} needs exactly {order.m} initial values, got {len(f0)}")
    return math.fsum(
        t ** (k - order.alpha) * float(special.rgamma(k - order.alpha + 1.0)) * v for k, v in enumerate(f0) if v != 0.0
    )


def caputo_weights(n: int, alpha: float) -> np.ndarray:
    """b_j = (j+1)^(1-alpha) - j^(1-alpha), j = 0..n-1."""
    j = np.arange(n + 1, dtype=float)
    return np.diff(j ** (1.0 - alpha))


def caputo_derivative_sampled(f: SampledFunction, order: FractionalOrder) -> SampledFunction:
    """Caputo derivative of order 0 < alpha < 1 on the sample grid.

    The samples are joined by straight lines; on each interval the constant
    slope is integrated exactly against the kernel (t-tau)^(-alpha), giving

        D_*^alpha f(t_n) = dt^(-alpha)/Gamma(2-alpha) sum_{j<n} b_j (f_{n-j} - f_{n-j-1}).

    The error is O(dt^(2-alpha)) for smooth f and zero for linear f.
    """
    alpha = order.alpha
    if not 0.0 < alpha < 1.0:
        raise UnsupportedOrderError(f"sampled Caputo derivative supports 0 < alpha < 1, got {alpha}")
    if f.values.size < 3:
        raise GridError("sampled Caputo derivative needs at least 3 samples")
    n = f.values.size - 1
    b = caputo_weights(n, alpha)
    diffs = np.diff(f.values)
    # out[k] = sum_{j<k} b_j diffs[k-1-j]: a causal discrete convolution
    conv = np.convolve(b, diffs)[:n]
    out = np.empty(n + 1)
    out[0] = 0.0
    out[1:] = conv * (f.dt ** (-alpha) / math.gamma(2.0 - alpha))
    return SampledFunction(dt=f.dt, values=out)


def _laplace_of_power(c: float, gamma: float, s: float, rtol: float) -> tuple[float, float]:
    # int_0^T c t^gamma e^{-st} dt, with T where the integrand is below 1e-14 of its peak
    if c == 0.0:
        return 0.0, 0.0
    t_peak = max(gamma, 0.0) / s
    log_peak = gamma * math.log(t_peak) - s * t_peak if t_peak > 0 else 0.0
    t_end = max(t_peak, 1.0 / s)
    while gamma * math.log(t_end) - s * t_end > log_peak + math.log(1e-14):
        t_end *= 1.5
    t_split = min(1.0 / s, t_end)
    total, err = 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            # the algebraic weight absorbs the t^gamma endpoint singularity
            v, e = integrate.quad(lambda t: math.exp(-s * t), 0.0, t_split, weight="alg", wvar=(gamma, 0.0), epsabs=0.0, epsrel=rtol)
            total, err = v, e
            v, e = integrate.quad(lambda t: t**gamma * math.exp(-s * t), t_split, t_end, epsabs=0.0, epsrel=rtol, limit=200)
            total += v
            err += e
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"Laplace quadrature failed: {exc}") from exc
    if err > 100 * rtol * abs(total):
        raise ConvergenceError(f"Laplace quadrature error {err:.3g} exceeds tolerance")
    return c * total, abs(c) * err


def laplace_of_caputo_check(f: PowerFunction, order: FractionalOrder, s: float, rtol: float = 1e-12) -> tuple[float, float]:
    """(numerical L{D_*^alpha f}(s), s^alpha F(s) - f(0+) s^(alpha-1)) for 0 < alpha < 1."""
    if not 0.0 < order.alpha < 1.0:
        raise UnsupportedOrderError(f"Laplace rule check supports 0 < alpha < 1, got {order.alpha}")
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s}")
    d = frac_derivative_power(f, order, DerivativeKind.CAPUTO)
    lhs, _ = _laplace_of_power(d.coefficient, d.gamma, s, rtol)
    rhs = s**order.alpha * f.laplace(s) - f.initial_value() * s ** (order.alpha - 1.0)
    return lhs, rhs
