r"""Wright function and the auxiliary functions :math:`M(r;\beta)`, :math:`F(r;\beta)`.

Three independent evaluators are provided for :math:`M`:

* the power series of the Wright function :math:`W_{-\beta,1-\beta}(-r)`,
* the leading-order saddle-point asymptotics, valid for large ``r``,
* quadrature of the inversion integral along the steepest-descent path.

The steepest-descent path is the curve :math:`s = \rho(\varphi) e^{i\varphi}`,
:math:`-\pi < \varphi < \pi`, on which :math:`s - r s^\beta` is real.  It passes
through the saddle point and runs out to :math:`-\infty` on both sides of the
branch cut, so it is a legitimate deformation of the Bromwich path.  On it

.. math::

    M(r;\beta) = \frac{r^{\beta/(1-\beta)}}{\pi (1-\beta)}
        \int_0^\pi a(\varphi)\, e^{-r^{1/(1-\beta)} a(\varphi)}\, d\varphi,
    \qquad
    a(\varphi) = \Big(\frac{\sin\beta\varphi}{\sin\varphi}\Big)^{1/(1-\beta)}
        \frac{\sin(1-\beta)\varphi}{\sin\beta\varphi},

with a positive integrand, which keeps the evaluator well conditioned up to
:math:`\beta \to 1^-`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy import integrate, optimize

from . import _series
from .errors import ConvergenceError, DomainError, RegimeError


class Method(str, enum.Enum):
    SERIES = "series"
    SADDLE_POINT = "saddle_point"
    CONTOUR = "contour"
    AUTO = "auto"


@dataclass(frozen=True)
class WrightParams:
    lam: float
    mu: float

    def __post_init__(self):
        if not (self.lam > -1.0 and self.mu > 0.0):
            raise DomainError(f"Wright parameters need lam > -1, mu > 0 (got {self.lam}, {self.mu})")


@dataclass(frozen=True)
class AuxFunctionParams:
    beta: float
    method: Method = Method.AUTO

    def __post_init__(self):
        _check_beta(self.beta)
        object.__setattr__(self, "method", Method(self.method))


@dataclass(frozen=True)
class EvalResult:
    value: float
    method_used: Method
    est_abs_error: float


def _check_beta(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")


def _check_r(r: float) -> None:
    if not (r >= 0.0 and math.isfinite(r)):
        raise DomainError(f"r must be finite and non-negative, got {r}")


# ---------------------------------------------------------------------------
# series


def _wright_sum(lam: float, mu: float, z: float, *, extended: bool = True, max_terms: int = _series.MAX_TERMS):
    log_abs_z = math.log(abs(z)) if z != 0.0 else -math.inf
    neg = z < 0.0

    def term(n):
        if n == 0:
            return _series.log_rgamma(mu)
        if z == 0.0:
            return -math.inf, 0
        lg, sg = _series.log_rgamma(lam * n + mu)
        if neg and n % 2:
            sg = -sg
        return n * log_abs_z - math.lgamma(n + 1.0) + lg, sg

    def envelope(n):
        if z == 0.0 and n > 0:
            return -math.inf
        return (n * log_abs_z if n else 0.0) - math.lgamma(n + 1.0) + _series.log_rgamma_envelope(lam * n + mu)

    mz, mlam, mmu = mpmath.mpf(z), mpmath.mpf(lam), mpmath.mpf(mu)

    def mp_term(n):
        return mz**n / mpmath.factorial(n) * mpmath.rgamma(mlam * n + mmu)

    return _series.sum_series(term, envelope, mp_term, extended=extended, max_terms=max_terms)


def wright_series(p: WrightParams, z: float) -> EvalResult:
    r"""Sum :math:`W_{\lambda,\mu}(z) = \sum z^n / (n!\,\Gamma(\lambda n + \mu))`."""
    s = _wright_sum(p.lam, p.mu, float(z))
    if not math.isfinite(s.value):
        raise ConvergenceError(f"Wright series overflows at z={z}")
    return EvalResult(s.value, Method.SERIES, s.error)


def m_series(r: float, beta: float, *, max_terms: int = _series.MAX_TERMS) -> EvalResult:
    """M(r;beta) summed as W_{-beta,1-beta}(-r).

    Cancellation is handled by re-summing in extended precision, so the result
    is accurate wherever the series converges within ``max_terms``; for large
    r and beta near 1 that can be very slow or impossible.
    """
    _check_r(r)
    _check_beta(beta)
    s = _wright_sum(-beta, 1.0 - beta, -r, max_terms=max_terms)
    if not math.isfinite(s.value):
        raise ConvergenceError(f"M series overflows at r={r}, beta={beta}")
    return _clamped(s.value, Method.SERIES, s.error)


def f_series(r: float, beta: float, *, max_terms: int = _series.MAX_TERMS) -> EvalResult:
    """F(r;beta) from its own series, with no reference to M."""
    _check_r(r)
    _check_beta(beta)
    s = _wright_sum(-beta, 0.0, -r, max_terms=max_terms)
    if not math.isfinite(s.value):
        raise ConvergenceError(f"F series overflows at r={r}, beta={beta}")
    return _clamped(s.value, Method.SERIES, s.error)


def _clamped(value: float, method: Method, err: float) -> EvalResult:
    # cancellation noise must not surface as a negative density
    if -1e-12 < value < 0.0:
        value = 0.0
    return EvalResult(value, method, err)


# ---------------------------------------------------------------------------
# saddle point

# Smallest r at which the leading-order saddle-point value is within 1% of the
# exact M(r;beta), measured against the contour evaluator by bisection and padded
# by 2%.  The error changes sign at beta = 1/2, where the formula is exact.
_SADDLE_RMIN_TABLE = (
    (0.05, 141.94),
    (0.10, 58.88),
    (0.15, 32.46),
    (0.20, 20.03),
    (0.25, 13.07),
    (0.30, 8.76),
    (0.35, 5.88),
    (0.40, 3.81),
    (0.45, 2.12),
    (0.55, 1.80),
    (0.60, 2.39),
    (0.65, 2.57),
    (0.70, 2.53),
    (0.75, 2.37),
    (0.80, 2.14),
    (0.85, 1.88),
    (0.90, 1.61),
)
BETA_MIN_SADDLE = 0.05
BETA_MAX_SADDLE = 0.9


def saddle_r_min(beta: float) -> float:
    """Lower edge of the saddle-point validity region (1% relative error).

    Between tabulated orders the larger neighbouring radius is used, which is
    conservative because the measured threshold is not monotone in beta.
    """
    _check_beta(beta)
    if beta == 0.5:
        return 0.0
    if not BETA_MIN_SADDLE <= beta <= BETA_MAX_SADDLE:
        return math.inf
    for (b0, r0), (b1, r1) in zip(_SADDLE_RMIN_TABLE[:-1], _SADDLE_RMIN_TABLE[1:]):
        if b0 <= beta <= b1:
            if beta == b0:
                return r0
            return r1 if beta == b1 else max(r0, r1)
    return math.inf


def _saddle_value(r: float, beta: float) -> float:
    x = beta * r
    log_a = (beta - 0.5) / (1.0 - beta) * math.log(x) - 0.5 * math.log(2.0 * math.pi * (1.0 - beta))
    b = (1.0 - beta) / beta * math.exp(math.log(x) / (1.0 - beta))
    return math.exp(log_a - b)


def m_saddle(r: float, beta: float, *, strict: bool = True) -> EvalResult:
    r"""Leading-order saddle-point value of :math:`M(r;\beta)`.

    With :math:`x = \beta r`,
    :math:`M \approx x^{(\beta-1/2)/(1-\beta)} / \sqrt{2\pi(1-\beta)}
    \exp[-\frac{1-\beta}{\beta} x^{1/(1-\beta)}]`, exact at :math:`\beta = 1/2`.
    Raises :class:`RegimeError` below :func:`saddle_r_min` unless ``strict`` is
    false, which is meant for measuring the asymptotic error itself.
    """
    _check_beta(beta)
    if not r > 0.0:
        raise DomainError(f"saddle point needs r > 0, got {r}")
    r_min = saddle_r_min(beta)
    if strict and r < r_min:
        raise RegimeError(f"saddle point invalid for r={r} < r_min({beta})={r_min:.3g}")
    v = _saddle_value(r, beta)
    return EvalResult(v, Method.SADDLE_POINT, 0.0 if beta == 0.5 else 0.01 * v)


# ---------------------------------------------------------------------------
# steepest-descent contour


def _log_a0(beta: float) -> float:
    return beta / (1.0 - beta) * math.log(beta) + math.log(1.0 - beta)


def _log_a_lower(phi: float, beta: float) -> float:
    # phi in [0, pi/2]
    if phi < 1e-8:
        return _log_a0(beta)
    lsb = math.log(math.sin(beta * phi))
    return (lsb - math.log(math.sin(phi))) / (1.0 - beta) + math.log(math.sin((1.0 - beta) * phi)) - lsb


def _log_a_upper(u: float, beta: float) -> float:
    # phi = pi - psi with psi = e^u in (0, pi/2]; u may be far below the double range of psi
    psi = math.exp(u)
    log_sin_psi = u if u < -20.0 else math.log(math.sin(psi))
    lsb = math.log(math.sin((1.0 - beta) * math.pi + beta * psi))
    return (lsb - log_sin_psi) / (1.0 - beta) + math.log(math.sin((1.0 - beta) * (math.pi - psi))) - lsb


_BREAK_LEVELS = (1e-4, 1e-2, 0.1, 1.0, 5.0, 20.0)
_CUT_LEVEL = 60.0


def _contour(r: float, beta: float) -> tuple[float, float]:
    # Everything is carried in logarithms: K = r^{1/(1-beta)} leaves the double
    # range long before M does once beta is close to 1.
    log_r = math.log(r)
    log_k = log_r / (1.0 - beta)
    log_a0 = _log_a0(beta)
    log_ka0 = log_k + log_a0
    log_pref = beta / (1.0 - beta) * log_r - math.log(math.pi * (1.0 - beta))
    if log_ka0 > math.log(2000.0):
        # e^{-K a0} is far below the double range
        return 0.0, 0.0

    def excess(la):
        # K (a - a0), formed without cancelling against the constant K a0
        d = la - log_a0
        if d <= 0.0:
            return 0.0
        x = log_ka0 + d + math.log(-math.expm1(-d))
        return math.exp(x) if x < 709.0 else math.inf

    def exponent_lower(phi):
        la = _log_a_lower(phi, beta)
        return la - excess(la)

    def exponent_upper(u):
        la = _log_a_upper(u, beta)
        return la + u - excess(la)

    # values of log a at which K (a - a0) reaches each level
    targets = [log_a0 + float(np.logaddexp(0.0, math.log(c) - log_ka0)) for c in _BREAK_LEVELS + (_CUT_LEVEL,)]
    u_top = math.log(0.5 * math.pi)
    log_mid = _log_a_lower(0.5 * math.pi, beta)
    lower_pts, upper_pts = [], []
    for la_c in targets:
        if la_c < log_mid:
            lower_pts.append(optimize.brentq(lambda p: _log_a_lower(p, beta) - la_c, 0.0, 0.5 * math.pi, xtol=1e-15, rtol=1e-14))
        else:
            u_lo = u_top - 1.0
            while _log_a_upper(u_lo, beta) <= la_c:
                u_lo = 2.0 * u_lo - 1.0
            upper_pts.append(optimize.brentq(lambda u: _log_a_upper(u, beta) - la_c, u_lo, u_top, xtol=1e-13, rtol=1e-14))
    pieces = []
    edges = [0.0] + lower_pts + ([0.5 * math.pi] if upper_pts else [])
    pieces += [(exponent_lower, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
    uedges = [u_top] + upper_pts
    pieces += [(exponent_upper, lo, hi) for hi, lo in zip(uedges[:-1], uedges[1:])]
    pieces = [p for p in pieces if p[2] > p[1]]
    # scale by the largest exponent seen at the breakpoints so the integrands are O(1)
    shift = max(max(fn(lo), fn(hi)) for fn, lo, hi in pieces)
    log_scale = log_pref - math.exp(log_ka0) + shift
    if log_scale < -800.0:
        # the integral is at most a few units of pi, so M underflows
        return 0.0, 0.0
    # log a carries rounding noise of order eps/(1-beta), amplified by K a in the exponent
    epsrel = max(1e-13, 64.0 * _series.EPS * (1.0 + math.exp(log_ka0)) / (1.0 - beta))
    total, err = 0.0, 0.0
    for fn, lo, hi in pieces:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", integrate.IntegrationWarning)
            v, e, info = integrate.quad(
                lambda x, fn=fn: math.exp(fn(x) - shift), lo, hi, epsabs=0.0, epsrel=epsrel, limit=200, full_output=1
            )[:3]
        # quadpack flags roundoff even when the estimate is fine; only a large error is fatal
        if caught and not e <= 1e-9 * abs(v):
            raise ConvergenceError(
                f"contour quadrature failed at r={r}, beta={beta} on [{lo:.6g}, {hi:.6g}] "
                f"after {info['neval']} nodes: {caught[0].message}"
            )
        total += v
        err += e
    scale = math.exp(log_scale)
    return scale * total, scale * err


def m_contour(r: float, beta: float) -> EvalResult:
    """M(r;beta) by quadrature along the steepest-descent deformation of the Bromwich path."""
    _check_r(r)
    _check_beta(beta)
    if r == 0.0:
        # Hankel's integral for 1/Gamma
        return EvalResult(1.0 / math.gamma(1.0 - beta), Method.CONTOUR, 0.0)
    v, e = _contour(r, beta)
    return EvalResult(v, Method.CONTOUR, e + 4 * _series.EPS * v)


# ---------------------------------------------------------------------------
# automatic selection

_MATCH_RTOL = 1e-6
# max|term|/|sum| beyond which the series is no longer considered usable
SERIES_CANCELLATION_GUARD = 1e13
# auto keeps the series only while its double-precision pass is trustworthy
_AUTO_CANCELLATION_LIMIT = _series.DOUBLE_CANCELLATION_LIMIT
_AUTO_MAX_TERMS = 2000


def _match_grid():
    r = 2.0
    while r <= 1000.0:
        yield r
        r += 0.25 if r < 10.0 else (1.0 if r < 50.0 else 5.0)


@lru_cache(maxsize=256)
def matching_radius(beta: float) -> float:
    """Smallest grid point r >= 2 where series and saddle agree to 1e-6 relative.

    Returns ``inf`` when no such point exists before either the series gives
    up or M underflows; the caller then falls back to the contour evaluator.
    """
    _check_beta(beta)
    if beta > BETA_MAX_SADDLE:
        return math.inf
    for r in _match_grid():
        sad = _saddle_value(r, beta)
        if sad < 1e-290:
            return math.inf
        # screen with the contour before paying for an extended-precision series
        cont, _ = _contour(r, beta)
        if abs(sad - cont) > 2 * _MATCH_RTOL * cont:
            continue
        try:
            quick = _wright_sum(-beta, 1.0 - beta, -r, extended=False, max_terms=_AUTO_MAX_TERMS)
            if not math.isfinite(quick.value) or quick.cancellation > SERIES_CANCELLATION_GUARD:
                # cancellation only grows with r: the series guard has been reached
                return math.inf
            ser = _wright_sum(-beta, 1.0 - beta, -r)
        except ConvergenceError:
            return math.inf
        if abs(sad - ser.value) <= _MATCH_RTOL * abs(ser.value):
            return r
    return math.inf


def _auto(r: float, beta: float) -> EvalResult:
    r_star = matching_radius(beta)
    if math.isfinite(r_star) and r > r_star:
        return m_saddle(r, beta)
    if r <= max(r_star if math.isfinite(r_star) else 2.0, 2.0):
        try:
            quick = _wright_sum(-beta, 1.0 - beta, -r, extended=False, max_terms=_AUTO_MAX_TERMS)
        except ConvergenceError:
            quick = None
        if quick is not None and math.isfinite(quick.value) and quick.abs_sum <= _AUTO_CANCELLATION_LIMIT * abs(quick.value):
            return EvalResult(quick.value, Method.SERIES, quick.error)
    return m_contour(r, beta)


def m_aux(r: float, p: AuxFunctionParams) -> EvalResult:
    """M(r;beta) = W_{-beta,1-beta}(-r) with the evaluator chosen by ``p.method``."""
    _check_r(r)
    method = p.method
    if method is Method.SERIES:
        return m_series(r, p.beta)
    if method is Method.SADDLE_POINT:
        return m_saddle(r, p.beta)
    if method is Method.CONTOUR:
        return m_contour(r, p.beta)
    res = _auto(r, p.beta)
    return _clamped(res.value, res.method_used, res.est_abs_error)


def f_aux(r: float, p: AuxFunctionParams) -> EvalResult:
    """F(r;beta) = beta r M(r;beta); the series method sums its own series."""
    _check_r(r)
    if p.method is Method.SERIES:
        return f_series(r, p.beta)
    m = m_aux(r, p)
    scale = p.beta * r
    return EvalResult(scale * m.value, m.method_used, scale * m.est_abs_error)


def m_value(r: float, beta: float, method: Method | str = Method.AUTO) -> float:
    """Shorthand returning only the value of M(r;beta)."""
    return m_aux(r, AuxFunctionParams(beta, Method(method))).value


# ---------------------------------------------------------------------------
# moments and shape


def m_moment(n: int, beta: float) -> float:
    """Gamma(n+1)/Gamma(beta n + 1), the n-th moment of M on (0, inf)."""
    _check_beta(beta)
    if n < 0 or int(n) != n:
        raise DomainError(f"moment order must be a non-negative integer, got {n}")
    return math.exp(math.lgamma(n + 1.0) - math.lgamma(beta * n + 1.0))


def m_tail_radius(beta: float, rtol: float = 1e-14, power: int = 0) -> float:
    """Radius beyond which r^power M(r;beta) is below ``rtol`` times its bulk size."""
    _check_beta(beta)
    # leading saddle-point decay: log M ~ -(1-beta)/beta (beta r)^{1/(1-beta)}
    target = -math.log(rtol) + 5.0
    r = 1.0
    while True:
        x = beta * r
        b = (1.0 - beta) / beta * x ** (1.0 / (1.0 - beta))
        growth = power * math.log(r) + max((beta - 0.5) / (1.0 - beta), 0.0) * math.log(max(x, 1.0))
        if b - growth > target:
            return r
        r *= 1.05


def m_integral(beta: float, powers=(0,), method: Method | str = Method.AUTO, rtol: float = 1e-14) -> np.ndarray:
    """Quadrature of int_0^inf r^n M(r;beta) dr for each n in ``powers``."""
    p = AuxFunctionParams(beta, Method(method))
    powers = np.asarray(powers, dtype=float)
    r_max = m_tail_radius(beta, rtol, int(powers.max()))

    def f(r):
        return m_aux(r, p).value * r**powers

    pts = [0.0]
    if beta > 0.5:
        r0, _ = m_peak(beta) if beta < 1.0 else (1.0, 0.0)
        width = _peak_width(beta, r0)
        pts += [max(r0 - k * width, 0.0) for k in (8, 3, 1)] + [r0] + [r0 + k * width for k in (1, 3, 8)]
    pts.append(r_max)
    pts = sorted(set(x for x in pts if 0.0 <= x <= r_max))
    total = np.zeros_like(powers)
    for lo, hi in zip(pts[:-1], pts[1:]):
        v, _ = integrate.quad_vec(f, lo, hi, epsabs=1e-15, epsrel=1e-12, limit=400)
        total += v
    return total


def _peak_width(beta: float, r0: float) -> float:
    # scale from the curvature of log M at the peak
    h = 1e-4 * max(r0, 1e-3)
    p = AuxFunctionParams(beta, Method.CONTOUR)
    lm = [math.log(max(m_aux(r0 + k * h, p).value, 1e-300)) for k in (-1, 0, 1)]
    curv = -(lm[0] - 2 * lm[1] + lm[2]) / h**2
    return 1.0 / math.sqrt(curv) if curv > 0 else 0.1


def m_peak(beta: float) -> tuple[float, float]:
    """Location and value of the interior maximum of M(.;beta), 1/2 < beta < 1."""
    if not 0.5 < beta < 1.0:
        raise DomainError(f"interior maximum exists only for 1/2 < beta < 1, got {beta}")
    return _peak(beta)


@lru_cache(maxsize=128)
def _peak(beta: float) -> tuple[float, float]:
    p = AuxFunctionParams(beta, Method.CONTOUR)

    def neg(r):
        return -m_aux(r, p).value

    grid = np.linspace(0.0, 4.0, 801)[1:]
    vals = np.array([-neg(r) for r in grid])
    i = int(np.argmax(vals))
    if i == 0 or i == len(grid) - 1:
        # peak may be narrower than the grid: refine around r = 1
        fine = np.linspace(0.8, 1.2, 4001)
        fvals = np.array([-neg(r) for r in fine])
        j = int(np.argmax(fvals))
        if j == 0 or j == len(fine) - 1:
            raise ConvergenceError(f"no interior maximum of M found in (0, 4) for beta={beta}")
        lo, hi = fine[j - 1], fine[j + 1]
    else:
        lo, hi = grid[i - 1], grid[i + 1]
    res = optimize.minimize_scalar(neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(-res.fun)
