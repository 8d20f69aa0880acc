"""Summation of slowly converging alternating power series.

Terms are generated in log-magnitude/sign form so that factorials and gamma
functions never overflow.  A first pass runs in double precision; when the
ratio between the largest term and the sum shows that rounding would eat
the result, the series is re-summed with mpmath at a working precision
sized to the observed cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath

from .errors import ConvergenceError

EPS = 2.0**-52
STOP_RTOL = 1e-17
MAX_TERMS = 10_000
# Largest ratio sum(|t|)/|sum| accepted from the double-precision pass.
DOUBLE_CANCELLATION_LIMIT = 1e5
_LOG_TINY = math.log(1e-300)


@dataclass(frozen=True)
class SeriesSum:
    value: float
    error: float
    terms: int
    max_term: float
    abs_sum: float
    extended: bool

    @property
    def cancellation(self) -> float:
        """max|term| / |sum|; inf when the sum vanishes."""
        if self.value == 0.0:
            return math.inf if self.max_term > 0 else 0.0
        return self.max_term / abs(self.value)


def log_rgamma_envelope(x: float) -> float:
    """log of a smooth upper bound for |1/Gamma(x)| that ignores the sine zeros."""
    if x >= 1.0:
        return -math.lgamma(x)
    # |1/Gamma(x)| <= Gamma(1-x)/pi <= Gamma(2-x)/pi for x <= 0, and <= 1.2 on (0, 1)
    return max(math.log(1.2), math.lgamma(2.0 - x) - math.log(math.pi))


def log_rgamma(x: float) -> tuple[float, int]:
    """log|1/Gamma(x)| and its sign; sign 0 marks a pole of Gamma."""
    if x > 0:
        return -math.lgamma(x), 1
    if x == math.floor(x):
        return -math.inf, 0
    # reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    s = math.sin(math.pi * math.fmod(x, 2.0))
    if s == 0.0:
        return -math.inf, 0
    return math.lgamma(1.0 - x) + math.log(abs(s)) - math.log(math.pi), (1 if s > 0 else -1)


def _stop(log_env: float, prev_log_env: float, log_total: float, n: int, start: int) -> bool:
    if n > start and log_env == -math.inf:
        return True
    if n <= start + 1 or log_env >= prev_log_env:
        return False
    if log_env < _LOG_TINY:
        return True
    return log_env < math.log(STOP_RTOL) + log_total


def _log_abs(x: float) -> float:
    return math.log(abs(x)) if x != 0.0 else -math.inf


def sum_series(
    term: Callable[[int], tuple[float, int]],
    envelope: Callable[[int], float],
    mp_term: Callable[[int], "mpmath.mpf"],
    *,
    start: int = 0,
    max_terms: int = MAX_TERMS,
    extended: bool = True,
) -> SeriesSum:
    """Sum ``sum_{n >= start} t_n``.

    ``term(n)`` returns ``(log|t_n|, sign)``, ``envelope(n)`` an upper bound of
    ``log|t_n|`` that is eventually decreasing, and ``mp_term(n)`` the exact
    term as an mpmath number (used at the current mpmath precision).

    Summation stops at the first ``n`` past the peak of the envelope whose
    envelope falls below ``1e-17 * |partial sum|``.  The reported error is the
    magnitude of the first omitted term plus a rounding estimate.  With
    ``extended=False`` the double-precision result is returned even under
    heavy cancellation, so callers can inspect ``cancellation`` cheaply.
    """
    total = 0.0
    comp = 0.0
    abs_sum = 0.0
    max_term = 0.0
    prev_env = math.inf
    n = start
    while True:
        if n - start >= max_terms:
            raise ConvergenceError(f"series not converged after {max_terms} terms")
        lt, sg = term(n)
        if sg and lt > 709.0:
            if not extended:
                return SeriesSum(math.nan, math.inf, n + 1 - start, math.inf, math.inf, False)
            # magnitude beyond double range: only the extended pass can cope
            return _sum_extended(mp_term, envelope, start, max_terms)
        t = sg * math.exp(lt) if sg else 0.0
        # Kahan-Babuska summation
        s = total + t
        if abs(total) >= abs(t):
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
        at = abs(t)
        abs_sum += at
        max_term = max(max_term, at)
        env = envelope(n)
        if _stop(env, prev_env, _log_abs(total + comp), n, start):
            break
        prev_env = env
        n += 1
    total += comp
    lt_next, sg_next = term(n + 1)
    omitted = math.exp(lt_next) if sg_next else 0.0
    if not extended or abs_sum == 0.0 or abs_sum <= DOUBLE_CANCELLATION_LIMIT * abs(total):
        return SeriesSum(total, omitted + 4 * EPS * abs_sum, n + 1 - start, max_term, abs_sum, False)
    return _sum_extended(mp_term, envelope, start, max_terms)


def _sum_extended(mp_term, envelope, start: int, max_terms: int) -> SeriesSum:
    # Rounding noise of a sum at precision dps is ~ max|t| 10^-dps, so a result
    # that is not at least 10^-20 above that floor is recomputed with more digits.
    dps = 30
    for _ in range(6):
        with mpmath.workdps(dps):
            result, log10_max, log10_total = _mp_pass(mp_term, envelope, start, max_terms)
        needed = int(math.ceil(log10_max - log10_total)) + 20
        if needed <= dps:
            return result
        dps = max(needed + 10, 2 * dps)
    raise ConvergenceError("extended-precision series did not stabilise")


def _mp_pass(mp_term, envelope, start: int, max_terms: int):
    total = mpmath.mpf(0)
    abs_sum = mpmath.mpf(0)
    max_term = mpmath.mpf(0)
    prev_env = math.inf
    n = start
    while True:
        if n - start >= max_terms:
            raise ConvergenceError(f"series not converged after {max_terms} terms")
        t = mp_term(n)
        total += t
        at = abs(t)
        abs_sum += at
        if at > max_term:
            max_term = at
        env = envelope(n)
        log_total = float(mpmath.log(abs(total))) if total else -math.inf
        if _stop(env, prev_env, log_total, n, start):
            break
        prev_env = env
        n += 1
    omitted = abs(mp_term(n + 1))
    log10_max = float(mpmath.log10(max_term)) if max_term else 0.0
    log10_total = float(mpmath.log10(abs(total))) if total else log10_max - mpmath.mp.dps
    err = float(omitted + abs_sum * mpmath.mpf(10) ** (-mpmath.mp.dps + 2))
    result = SeriesSum(float(total), err, n + 1 - start, float(max_term), float(abs_sum), True)
    return result, log10_max, log10_total
