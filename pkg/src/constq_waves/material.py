r"""Power-law solid with frequency-independent Q.

The creep compliance :math:`J(t) = t^\nu / (\rho D \Gamma(\nu+1))` with
:math:`0 < \nu \le 1` and zero glass compliance gives the stress-strain law
:math:`\sigma = \rho D\, D_*^\nu \varepsilon`.  Wave propagation then obeys the
fractional diffusion-wave equation of order :math:`2\beta = 2 - \nu`, and the
internal friction is :math:`Q^{-1} = \tan(\nu\pi/2)`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .fractional import DerivativeKind, FractionalOrder, PowerFunction, frac_derivative_power


@dataclass(frozen=True)
class MaterialLaw:
    rho: float
    D: float
    nu: float

    def __post_init__(self):
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise DomainError(f"density must be positive, got {self.rho}")
        if not (self.D > 0.0 and math.isfinite(self.D)):
            raise DomainError(f"D must be positive, got {self.D}")
        if not 0.0 < self.nu <= 1.0:
            raise DomainError(f"nu must lie in (0, 1], got {self.nu}")

    @property
    def beta(self) -> float:
        return beta_from_nu(self.nu)

    @property
    def glass_compliance(self) -> float:
        return 0.0


@dataclass(frozen=True)
class QFactor:
    """Internal friction Q^-1; ``math.inf`` is the Newtonian (nu = 1) value."""

    q_inv: float

    def __post_init__(self):
        if not self.q_inv >= 0.0:
            raise DomainError(f"internal friction must be non-negative, got {self.q_inv}")

    @classmethod
    def from_q(cls, q: float) -> "QFactor":
        if not q > 0.0:
            raise DomainError(f"Q must be positive, got {q}")
        return cls(1.0 / q)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.q_inv)

    @property
    def q(self) -> float:
        return math.inf if self.q_inv == 0.0 else 1.0 / self.q_inv


def beta_from_nu(nu: float) -> float:
    """beta = 1 - nu/2, mapping (0, 1] onto [1/2, 1)."""
    if not 0.0 < nu <= 1.0:
        raise DomainError(f"nu must lie in (0, 1], got {nu}")
    return 1.0 - 0.5 * nu


def q_from_nu(nu: float) -> QFactor:
    """Q^-1 = tan(nu pi / 2); nu = 1 returns the infinite value exactly."""
    if not 0.0 < nu <= 1.0:
        raise DomainError(f"nu must lie in (0, 1], got {nu}")
    if nu == 1.0:
        return QFactor(math.inf)
    return QFactor(math.tan(0.5 * math.pi * nu))


def nu_from_q(q: QFactor) -> float:
    """nu = (2/pi) arctan(Q^-1)."""
    if not q.q_inv > 0.0:
        raise DomainError("nu is defined for Q^-1 > 0")
    if q.is_infinite:
        return 1.0
    return 2.0 / math.pi * math.atan(q.q_inv)


@dataclass(frozen=True)
class NearlyElastic:
    nu_approx: float
    rel_err_vs_exact: float
    q_inv_from_nu: float


def nearly_elastic_approx(q: QFactor) -> NearlyElastic:
    """Small-friction forms nu ~ 2 Q^-1 / pi and Q^-1 ~ pi nu / 2."""
    if not q.q_inv > 0.0 or q.is_infinite:
        raise DomainError("the approximation needs finite Q^-1 > 0")
    exact = nu_from_q(q)
    approx = 2.0 / math.pi * q.q_inv
    return NearlyElastic(approx, abs(approx - exact) / exact, 0.5 * math.pi * approx)


def creep_compliance(t: float, mat: MaterialLaw) -> float:
    """J(t) = t^nu / (rho D Gamma(nu+1))."""
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    return t**mat.nu / (mat.rho * mat.D * math.gamma(mat.nu + 1.0))


def creep_power(mat: MaterialLaw) -> PowerFunction:
    """J(t) as a power function, the strain under a unit step stress."""
    return PowerFunction(1.0 / (mat.rho * mat.D * math.gamma(mat.nu + 1.0)), mat.nu)


def stress_from_strain_power(eps: PowerFunction, mat: MaterialLaw) -> PowerFunction:
    """sigma = rho D times the Caputo derivative of order nu of the strain."""
    d = frac_derivative_power(eps, FractionalOrder(mat.nu), DerivativeKind.CAPUTO)
    return PowerFunction(mat.rho * mat.D * d.coefficient, d.gamma)


def mu_exponent(s: float, mat: MaterialLaw) -> float:
    """Laplace-domain propagation exponent s^beta / sqrt(D)."""
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s}")
    return s**mat.beta / math.sqrt(mat.D)


def mu_exponent_from_compliance(s: float, mat: MaterialLaw) -> float:
    """s sqrt(rho s J~(s)) with J~(s) = 1/(rho D s^(nu+1)); equals :func:`mu_exponent`."""
    if not s > 0.0:
        raise DomainError(f"s must be positive, got {s}")
    j_tilde = 1.0 / (mat.rho * mat.D * s ** (mat.nu + 1.0))
    return s * math.sqrt(mat.rho * s * j_tilde)


class Behaviour(str, enum.Enum):
    WAVE = "wave-like"
    DIFFUSION = "diffusion-like"


@dataclass(frozen=True)
class Classification:
    behaviour: Behaviour
    front_velocity: float | None


def classify_behavior(J0: float, rho: float) -> Classification:
    """J0 > 0: wave-like with front velocity 1/sqrt(rho J0); J0 = 0: diffusion-like."""
    if not J0 >= 0.0:
        raise DomainError(f"glass compliance must be non-negative, got {J0}")
    if not rho > 0.0:
        raise DomainError(f"density must be positive, got {rho}")
    if J0 == 0.0:
        return Classification(Behaviour.DIFFUSION, None)
    return Classification(Behaviour.WAVE, 1.0 / math.sqrt(rho * J0))
