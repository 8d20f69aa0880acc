r"""Stable probability densities and their link with the Wright-type functions.

Densities use the skewness convention :math:`p_\alpha(-y;-\theta) = p_\alpha(y;\theta)`
with :math:`|\theta| \le \alpha` for :math:`0 < \alpha < 1` and
:math:`|\theta| \le 2-\alpha` for :math:`1 < \alpha \le 2`.  For :math:`y > 0`

.. math::

    p_\alpha(y;\theta) = \frac{1}{\pi y}\sum_{n\ge1} (-y^{-\alpha})^n
        \frac{\Gamma(n\alpha+1)}{n!} \sin\Big[\frac{n\pi}{2}(\theta-\alpha)\Big],
        \qquad 0<\alpha<1,

.. math::

    p_\alpha(y;\theta) = \frac{1}{\pi y}\sum_{n\ge1} (-y)^n
        \frac{\Gamma(n/\alpha+1)}{n!} \sin\Big[\frac{n\pi}{2\alpha}(\theta-\alpha)\Big],
        \qquad 1<\alpha<2.

The extremal densities are also Wright functions:
:math:`p_\alpha(y;-\alpha) = \alpha y^{-\alpha-1} M(y^{-\alpha};\alpha)` and
:math:`p_\alpha(y;\alpha-2) = M(y;1/\alpha)/\alpha`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath
from scipy import optimize, special

from . import _quad, _series
from .errors import ConvergenceError, DomainError
from .green import Medium, SpaceTimePoint, green_cauchy, green_signalling
from .wright import AuxFunctionParams, m_aux

# the series hands over to the Wright identities after this many terms
SERIES_HANDOFF_TERMS = 200
_ASYMPTOTIC_RTOL = 1e-14
_TOL = 1e-12


class StableMethod(str, enum.Enum):
    SERIES = "series"
    WRIGHT = "wright"
    CLOSED_FORM = "closed_form"
    ASYMPTOTIC = "asymptotic"


class WrightKind(enum.IntEnum):
    """Kind 1: 0 < alpha < 1, theta = -alpha.  Kind 2: 1 < alpha <= 2, theta = alpha - 2."""

    UNILATERAL = 1
    BILATERAL = 2


@dataclass(frozen=True)
class StableParams:
    alpha: float
    theta: float

    def __post_init__(self):
        a, t = self.alpha, self.theta
        if not (0.0 < a <= 2.0) or a == 1.0:
            raise DomainError(f"stability index must lie in (0,1) or (1,2], got {a}")
        bound = a if a < 1.0 else 2.0 - a
        if not abs(t) <= bound + _TOL:
            raise DomainError(f"skewness {t} outside |theta| <= {bound} for alpha = {a}")

    @property
    def theta_max(self) -> float:
        return self.alpha if self.alpha < 1.0 else 2.0 - self.alpha

    def wright_kind(self) -> WrightKind | None:
        """Which Wright identity applies, if any."""
        if self.alpha < 1.0 and abs(self.theta + self.alpha) <= _TOL:
            return WrightKind.UNILATERAL
        if self.alpha > 1.0 and abs(self.theta - (self.alpha - 2.0)) <= _TOL:
            return WrightKind.BILATERAL
        return None


@dataclass(frozen=True)
class StableResult:
    value: float
    method_used: StableMethod


# ---------------------------------------------------------------------------
# Gauss, Levy, Cauchy


@dataclass(frozen=True)
class GaussParams:
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")

    @classmethod
    def from_diffusion(cls, D: float, t: float) -> "GaussParams":
        """sigma^2 = 2 D t."""
        return cls(math.sqrt(2.0 * D * t))


@dataclass(frozen=True)
class LevyParams:
    mu: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise DomainError(f"Levy scale must be positive, got {self.mu}")

    @classmethod
    def from_signalling(cls, x: float, D: float) -> "LevyParams":
        """mu = x^2 / (2 D)."""
        return cls(x * x / (2.0 * D))


def gauss_pdf(x: float, g: GaussParams) -> float:
    return math.exp(-x * x / (2.0 * g.sigma**2)) / (math.sqrt(2.0 * math.pi) * g.sigma)


def gauss_cdf(x: float, g: GaussParams) -> float:
    return 0.5 * (1.0 + math.erf(x / (math.sqrt(2.0) * g.sigma)))


def gauss_moment(order: int, g: GaussParams) -> float:
    """E[x^order]: (2n-1)!! sigma^(2n) for order 2n, zero for odd orders."""
    if order < 0 or int(order) != order:
        raise DomainError(f"moment order must be a non-negative integer, got {order}")
    if order % 2:
        return 0.0
    n = order // 2
    return float(special.factorial2(2 * n - 1, exact=True)) * g.sigma ** (2 * n) if n else 1.0


def levy_pdf(t: float, lp: LevyParams) -> float:
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    return math.sqrt(lp.mu) / (math.sqrt(2.0 * math.pi) * t**1.5) * math.exp(-lp.mu / (2.0 * t))


def levy_cdf(t: float, lp: LevyParams) -> float:
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    return math.erfc(math.sqrt(lp.mu / (2.0 * t)))


def levy_median(lp: LevyParams) -> float:
    """Root of levy_cdf = 1/2, bracketed in (mu, 10 mu)."""
    return optimize.brentq(lambda t: levy_cdf(t, lp) - 0.5, lp.mu, 10.0 * lp.mu, xtol=1e-15 * lp.mu, rtol=1e-15)


def cauchy_pdf(x: float, lam: float = 1.0) -> float:
    """lam / (pi (x^2 + lam^2)), the alpha = 1 symmetric law."""
    if not lam > 0.0:
        raise DomainError(f"Cauchy scale must be positive, got {lam}")
    return lam / (math.pi * (x * x + lam * lam))


# ---------------------------------------------------------------------------
# series and Wright paths


def _series_sum(y: float, p: StableParams, *, max_terms: int, extended: bool):
    a, th = p.alpha, p.theta
    if a < 1.0:
        z, rho, angle = y**-a, a, 0.5 * math.pi * (th - a)
        mz, mrho, mangle = mpmath.mpf(y) ** (-mpmath.mpf(a)), mpmath.mpf(a), mpmath.pi * (mpmath.mpf(th) - mpmath.mpf(a)) / 2
    else:
        z, rho, angle = y, 1.0 / a, 0.5 * math.pi * (th - a) / a
        mz, mrho = mpmath.mpf(y), 1 / mpmath.mpf(a)
        mangle = mpmath.pi * (mpmath.mpf(th) - mpmath.mpf(a)) / (2 * mpmath.mpf(a))
    log_z = math.log(z)

    def envelope(n):
        return n * log_z + math.lgamma(n * rho + 1.0) - math.lgamma(n + 1.0)

    def term(n):
        s = math.sin(n * angle)
        if s == 0.0:
            return -math.inf, 0
        sign = (-1 if n % 2 else 1) * (1 if s > 0 else -1)
        return envelope(n) + math.log(abs(s)), sign

    def mp_term(n):
        return (-mz) ** n * mpmath.gamma(n * mrho + 1) / mpmath.factorial(n) * mpmath.sin(n * mangle)

    s = _series.sum_series(term, envelope, mp_term, start=1, max_terms=max_terms, extended=extended)
    return s


def _small_y_asymptotic(y: float, p: StableParams) -> tuple[float, float]:
    # For 0 < alpha < 1 the positive-power series diverges but is asymptotic
    # as y -> 0+; summed up to its smallest term it is accurate exactly where
    # the negative-power series needs too many terms.  Returns (pdf, abs error).
    a, th = p.alpha, p.theta
    log_y, angle = math.log(y), 0.5 * math.pi * (th - a) / a
    total, comp, prev_env, n = 0.0, 0.0, math.inf, 1
    while n < _series.MAX_TERMS:
        env = n * log_y + math.lgamma(n / a + 1.0) - math.lgamma(n + 1.0)
        if env > prev_env:
            break
        t = (-1.0) ** n * math.exp(env) * math.sin(n * angle)
        s = total + t
        comp += (total - s) + t if abs(total) >= abs(t) else (t - s) + total
        total = s
        prev_env = env
        if env < math.log(_series.STOP_RTOL) + math.log(abs(total + comp) or 1e-300):
            break
        n += 1
    total += comp
    return total / (math.pi * y), math.exp(prev_env) / (math.pi * y)


def stable_from_wright(y: float, alpha: float, kind: WrightKind | int) -> float:
    """Extremal density from M: kind 1 gives alpha y^(-alpha-1) M(y^-alpha; alpha)
    (0 < alpha < 1, theta = -alpha); kind 2 gives M(y; 1/alpha)/alpha
    (1 < alpha <= 2, theta = alpha - 2)."""
    kind = WrightKind(kind)
    if not y > 0.0:
        raise DomainError(f"y must be positive, got {y}")
    if kind is WrightKind.UNILATERAL:
        if not 0.0 < alpha < 1.0:
            raise DomainError(f"kind-1 identity needs 0 < alpha < 1, got {alpha}")
        # y^-alpha overflows long before the density is non-zero in double precision
        log_r = -alpha * math.log(y)
        if log_r > 700.0:
            return 0.0
        r = math.exp(log_r)
        return alpha * r / y * m_aux(r, AuxFunctionParams(alpha)).value
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"kind-2 identity needs 1 < alpha <= 2, got {alpha}")
    return m_aux(y, AuxFunctionParams(1.0 / alpha)).value / alpha


def _clamp(v: float) -> float:
    return 0.0 if -1e-12 < v < 0.0 else v


def stable_pdf(y: float, p: StableParams) -> StableResult:
    """p_alpha(y; theta) for any real y, with the evaluation path reported.

    Negative y uses the reflection p(-y; -theta) = p(y; theta).  The power
    series is tried first; when it has not converged in 200 terms or its
    double-precision sum is dominated by cancellation, extremal laws switch
    to the Wright identity.  For the others with 0 < alpha < 1 and y < 1 the
    positive-power series, asymptotic as y -> 0+, is tried next; otherwise
    the series continues in extended precision.  alpha = 2 is the Gaussian
    with variance 2 via M(|y|; 1/2)/2.
    """
    if not math.isfinite(y):
        raise DomainError(f"y must be finite, got {y}")
    if p.alpha == 2.0:
        return StableResult(stable_from_wright(abs(y), 2.0, WrightKind.BILATERAL) if y else 0.5 * m_aux(0.0, AuxFunctionParams(0.5)).value, StableMethod.WRIGHT)
    if y < 0.0:
        return stable_pdf(-y, StableParams(p.alpha, -p.theta))
    if p.alpha < 1.0 and abs(p.theta - p.alpha) <= _TOL:
        # unilateral law supported on y < 0
        return StableResult(0.0, StableMethod.CLOSED_FORM)
    if y == 0.0:
        if p.alpha < 1.0:
            if p.wright_kind() is WrightKind.UNILATERAL:
                return StableResult(0.0, StableMethod.CLOSED_FORM)
            raise DomainError("the series for 0 < alpha < 1 does not reach y = 0")
        # limit of the n = 1 term of the positive-power series
        v = -math.gamma(1.0 / p.alpha + 1.0) / math.pi * math.sin(0.5 * math.pi * (p.theta - p.alpha) / p.alpha)
        return StableResult(v, StableMethod.SERIES)
    kind = p.wright_kind()
    quick = None
    try:
        quick = _series_sum(y, p, max_terms=SERIES_HANDOFF_TERMS, extended=False)
    except ConvergenceError:
        pass
    if quick is not None and math.isfinite(quick.value) and quick.abs_sum <= _series.DOUBLE_CANCELLATION_LIMIT * abs(quick.value):
        return StableResult(_clamp(quick.value / (math.pi * y)), StableMethod.SERIES)
    if kind is not None:
        return StableResult(stable_from_wright(y, p.alpha, kind), StableMethod.WRIGHT)
    if p.alpha < 1.0 and y < 1.0:
        v, err = _small_y_asymptotic(y, p)
        if err <= _ASYMPTOTIC_RTOL * abs(v):
            return StableResult(_clamp(v), StableMethod.ASYMPTOTIC)
    full = _series_sum(y, p, max_terms=_series.MAX_TERMS, extended=True)
    if not math.isfinite(full.value):
        raise ConvergenceError(f"stable series overflows at y={y}")
    return StableResult(_clamp(full.value / (math.pi * y)), StableMethod.SERIES)


def stable_pdf_series(y: float, p: StableParams) -> float:
    """p_alpha(y; theta) for y > 0 from the power series (see :func:`stable_pdf`)."""
    if not y > 0.0:
        raise DomainError(f"y must be positive, got {y}")
    return stable_pdf(y, p).value


def stable_duality_residual(y: float, alpha: float, theta: float) -> float:
    """y^-(alpha+1) p_{1/alpha}(y^-alpha; theta) - p_alpha(y; theta*), theta* = alpha(theta+1) - 1."""
    if not 0.5 < alpha < 1.0:
        raise DomainError(f"duality needs 1/2 < alpha < 1, got {alpha}")
    if not abs(theta) <= 2.0 - 1.0 / alpha + _TOL:
        raise DomainError(f"duality needs |theta| <= 2 - 1/alpha, got {theta}")
    if not y > 0.0:
        raise DomainError(f"y must be positive, got {y}")
    theta_star = alpha * (theta + 1.0) - 1.0
    lhs = y ** -(alpha + 1.0) * stable_pdf(y**-alpha, StableParams(1.0 / alpha, theta)).value
    rhs = stable_pdf(y, StableParams(alpha, theta_star)).value
    return lhs - rhs


def dual_skewness(alpha: float, theta: float) -> float:
    return alpha * (theta + 1.0) - 1.0


def signalling_as_stable(x: float, t: float, m: Medium) -> tuple[float, float]:
    """((x/sqrt D)^(1/beta) G_s(x,t), p_beta(tau; -beta)) with tau = t (sqrt D / x)^(1/beta)."""
    if not (x > 0.0 and t > 0.0):
        raise DomainError("need x > 0 and t > 0")
    k = (x / m.sqrt_d) ** (1.0 / m.beta)
    lhs = k * green_signalling(SpaceTimePoint(x, t), m)
    rhs = stable_pdf(t / k, StableParams(m.beta, -m.beta)).value
    return lhs, rhs


def cauchy_as_stable(x: float, t: float, m: Medium) -> tuple[float, float]:
    """(2 beta sqrt(D) t^beta G_c(|x|,t), p_{1/beta}(xi; 1/beta - 2)) with xi = |x|/(sqrt D t^beta)."""
    if not 0.5 <= m.beta < 1.0:
        raise DomainError(f"the Cauchy solution is a stable density only for 1/2 <= beta < 1, got {m.beta}")
    if x == 0.0 or not t > 0.0:
        raise DomainError("need x != 0 and t > 0")
    scale = m.sqrt_d * t**m.beta
    lhs = 2.0 * m.beta * scale * green_cauchy(SpaceTimePoint(abs(x), t), m)
    a = 1.0 / m.beta
    rhs = stable_pdf(abs(x) / scale, StableParams(a, a - 2.0)).value
    return lhs, rhs


# ---------------------------------------------------------------------------
# integrals of the unilateral densities


def _unilateral(alpha: float) -> StableParams:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"unilateral extremal laws need 0 < alpha < 1, got {alpha}")
    return StableParams(alpha, -alpha)


def _breakpoints(y_max: float) -> list[float]:
    pts, y = [], 0.05
    while y < y_max:
        pts.append(y)
        y *= 4.0
    return pts


def stable_tail_mass(y_cut: float, p: StableParams) -> float:
    """int_{y_cut}^inf p_alpha(y; theta) dy for 0 < alpha < 1, term by term:
    (1/(pi alpha)) sum_n (-1)^n Gamma(n alpha+1)/(n n!) sin(n pi (theta-alpha)/2) y_cut^(-alpha n)."""
    if not p.alpha < 1.0:
        raise DomainError("termwise tail needs 0 < alpha < 1")
    z = y_cut**-p.alpha
    if not z <= 0.2:
        raise DomainError(f"tail cut too small for a fast series: y_cut^-alpha = {z}")
    angle = 0.5 * math.pi * (p.theta - p.alpha)
    # Gamma(n alpha + 1)/n! <= 1, so terms are below z^n / n
    total = math.fsum(
        (-z) ** n * math.exp(math.lgamma(n * p.alpha + 1.0) - math.lgamma(n + 1.0)) * math.sin(n * angle) / n for n in range(1, 41)
    )
    return total / (math.pi * p.alpha)


def stable_mass(alpha: float, z_cut: float = 0.05) -> float:
    """int_0^inf p_alpha(y; -alpha) dy, quadrature up to y^-alpha = z_cut plus the series tail."""
    p = _unilateral(alpha)
    y_cut = z_cut ** (-1.0 / alpha)
    v, _ = _quad.quad(lambda y: stable_pdf(y, p).value, 0.0, y_cut, points=_breakpoints(y_cut), epsrel=1e-12, epsabs=1e-15)
    return v + stable_tail_mass(y_cut, p)


def stable_cdf(y: float, alpha: float) -> float:
    """P(Y <= y) for the unilateral law p_alpha(.; -alpha), by quadrature of the density."""
    p = _unilateral(alpha)
    if y <= 0.0:
        return 0.0
    v, _ = _quad.quad(lambda u: stable_pdf(u, p).value, 0.0, y, points=_breakpoints(y), epsrel=1e-12, epsabs=1e-15)
    return v


def stable_median(alpha: float) -> float:
    """Median of the unilateral law p_alpha(.; -alpha)."""
    lo, hi = 0.1, 1.0
    while stable_cdf(hi, alpha) < 0.5:
        lo, hi = hi, hi * 4.0
    return optimize.brentq(lambda y: stable_cdf(y, alpha) - 0.5, lo, hi, xtol=1e-12, rtol=1e-12)


def stable_truncated_moment(alpha: float, delta: float, y_max: float) -> float:
    """int_0^y_max y^delta p_alpha(y; -alpha) dy."""
    p = _unilateral(alpha)
    v, _ = _quad.quad(lambda y: y**delta * stable_pdf(y, p).value, 0.0, y_max, points=_breakpoints(y_max), epsrel=1e-10, epsabs=1e-14)
    return v


def stable_laplace_numeric(alpha: float, s: float) -> float:
    """int_0^inf e^(-s y) p_alpha(y; -alpha) dy by quadrature (compare with exp(-s^alpha))."""
    p = _unilateral(alpha)
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s}")
    y_max = 37.0 / s
    v, _ = _quad.quad(lambda y: math.exp(-s * y) * stable_pdf(y, p).value, 0.0, y_max, points=_breakpoints(y_max), epsrel=1e-12, epsabs=1e-16)
    return v
