"""Adaptive quadrature with warnings turned into errors."""

from __future__ import annotations

import warnings

from scipy import integrate

from .errors import ConvergenceError


def quad(f, a: float, b: float, *, points=(), epsabs: float = 0.0, epsrel: float = 1e-12, limit: int = 400, **kw):
    """Sum of ``scipy.integrate.quad`` over [a, b] split at ``points``.

    Returns (value, error estimate).  QUADPACK warnings are only fatal when the
    reported error exceeds the requested tolerance by a wide margin.
    """
    edges = [a] + sorted(p for p in set(points) if a < p < b) + [b]
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", integrate.IntegrationWarning)
            v, e = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit, **kw)
        if caught and e > 100.0 * max(epsabs, epsrel * abs(v)):
            raise ConvergenceError(f"quadrature on [{lo:.6g}, {hi:.6g}] failed: {caught[0].message}")
        total += v
        err += e
    return total, err
