"""Jacobi theta functions theta1 and theta4 as truncated q-series.

Conventions (nome p, |p| < 1, half-period ratio tau with p = exp(i*pi*tau)):

    theta1(phi | p) = 2 * sum_{k>=0} (-1)^k p^{(k+1/2)^2} sin((2k+1) phi)
    theta4(phi | p) = 1 + 2 * sum_{k>=1} (-1)^k p^{k^2} cos(2k phi)

Laws used throughout the workbench, checkable via the verify suites:

    theta1(-phi) = -theta1(phi)            theta4(-phi) = theta4(phi)
    theta1(phi +- pi) = -theta1(phi)       theta4(phi +- pi) = theta4(phi)
    theta1(phi + pi*tau) = -p^-1 e^{-2i phi} theta1(phi)   (same for theta4)
    theta4(phi) = i p^{1/4} e^{-i phi} theta1(phi - pi*tau/2)

plus the nome-cubing identity

    theta1(phi|p) theta1(phi+pi/3|p) theta1(phi+2pi/3|p) = D(p) theta1(3phi|p^3)

with D(p) = theta1'(0|p) theta1(pi/3|p) theta1(2pi/3|p) / (3 theta1'(0|p^3)).

Series are truncated when a term-magnitude envelope falls below
term_tolerance * (1 + |partial sum|); the q-series converge
super-exponentially on the working domain |p| <= 0.5.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NomeDomainError, PoleError, SeriesTruncationError

TWO_PI_OVER_3 = 2.0 * math.pi / 3.0

_LOG_HUGE = 700.0  # exp beyond this overflows a double
_POLE_TOL = 1e-12


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation control for the q-series."""

    term_tolerance: float = 1e-16
    max_terms: int = 64

    def __post_init__(self) -> None:
        if not self.term_tolerance > 0.0:
            raise ValueError("term_tolerance must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_SERIES = SeriesConfig()


@dataclass(frozen=True)
class EllipticParams:
    """Global elliptic context: nome p, half-period ratio tau, parameter lambda.

    tau is kept alongside p (redundantly) because the pi*tau shift laws and
    the half-period substitution need it explicitly.  The default
    verification domain is real p in (0, 0.5] and real lambda.
    """

    p: complex
    tau: complex
    lam: complex

    def __post_init__(self) -> None:
        if abs(self.p) >= 1.0:
            raise NomeDomainError(f"|p| = {abs(self.p)} >= 1: series diverge")
        if abs(self.p) > 0.0:
            expected = cmath.exp(1j * math.pi * self.tau)
            if abs(expected - self.p) > 1e-10 * (1.0 + abs(self.p)):
                raise ValueError("p and tau inconsistent: require p = exp(i*pi*tau)")

    @classmethod
    def from_nome(cls, p: complex, lam: complex = 0.0) -> "EllipticParams":
        """Build from the nome; tau = log(p) / (i*pi) on the principal branch."""
        p = complex(p)
        if abs(p) >= 1.0:
            raise NomeDomainError(f"|p| = {abs(p)} >= 1: series diverge")
        if p == 0:
            # degenerate trigonometric limit; tau is formally i*infinity
            return cls(p=0j, tau=complex(0.0, math.inf), lam=complex(lam))
        tau = cmath.log(p) / (1j * math.pi)
        return cls(p=p, tau=tau, lam=complex(lam))

    @classmethod
    def from_tau(cls, tau: complex, lam: complex = 0.0) -> "EllipticParams":
        return cls(p=cmath.exp(1j * math.pi * complex(tau)), tau=complex(tau), lam=complex(lam))

    def with_lambda(self, lam: complex) -> "EllipticParams":
        return EllipticParams(p=self.p, tau=self.tau, lam=complex(lam))

    def shifted_lambda(self, delta: complex) -> "EllipticParams":
        return self.with_lambda(self.lam + delta)

    def cubed(self) -> "EllipticParams":
        """Parameters at nome p^3 (tau -> 3*tau), same lambda."""
        return EllipticParams(p=self.p ** 3, tau=3 * self.tau, lam=self.lam)


def _nome_log_abs(p: complex) -> float:
    ap = abs(p)
    if ap >= 1.0:
        raise NomeDomainError(f"|p| = {ap} >= 1: series diverge")
    if ap == 0.0:
        return -math.inf
    return math.log(ap)


def _pow_nome(p: complex, a: float) -> complex:
    """p**a for the series exponents (a > 0); 0**a := 0."""
    if p == 0:
        return 0j
    if isinstance(p, complex):
        if p.imag == 0.0 and p.real > 0.0:
            return complex(math.exp(a * math.log(p.real)))
        return cmath.exp(a * cmath.log(p))
    if p > 0:
        return complex(math.exp(a * math.log(p)))
    return cmath.exp(a * cmath.log(complex(p)))


def theta1(phi: complex, params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """theta1(phi | p), odd and pi-antiperiodic in phi."""
    p = params.p
    log_ap = _nome_log_abs(p)
    phi = complex(phi)
    im = abs(phi.imag)
    s = 0j
    for k in range(cfg.max_terms):
        log_env = (k + 0.5) ** 2 * log_ap + (2 * k + 1) * im + math.log(2.0)
        if log_env < math.log(cfg.term_tolerance * (1.0 + abs(s))):
            return s
        if log_env > _LOG_HUGE:
            raise SeriesTruncationError(
                f"theta1 term overflow at k={k}: |Im phi| = {im} too large for |p| = {abs(p)}")
        s += 2.0 * (-1) ** k * _pow_nome(p, (k + 0.5) ** 2) * cmath.sin((2 * k + 1) * phi)
    raise SeriesTruncationError(
        f"theta1 series not converged in {cfg.max_terms} terms (|p| = {abs(p)}, |Im phi| = {im})")


def theta4(phi: complex, params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """theta4(phi | p), even and pi-periodic in phi."""
    p = params.p
    log_ap = _nome_log_abs(p)
    phi = complex(phi)
    im = abs(phi.imag)
    s = 1.0 + 0j
    for k in range(1, cfg.max_terms):
        log_env = k * k * log_ap + 2 * k * im + math.log(2.0)
        if log_env < math.log(cfg.term_tolerance * (1.0 + abs(s))):
            return s
        if log_env > _LOG_HUGE:
            raise SeriesTruncationError(
                f"theta4 term overflow at k={k}: |Im phi| = {im} too large for |p| = {abs(p)}")
        s += 2.0 * (-1) ** k * _pow_nome(p, k * k) * cmath.cos(2 * k * phi)
    raise SeriesTruncationError(
        f"theta4 series not converged in {cfg.max_terms} terms (|p| = {abs(p)}, |Im phi| = {im})")


def theta1_reduced(phi: complex, params: EllipticParams,
                   cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """theta1(phi | p) / p^{1/4} = 2 * sum_k (-1)^k p^{k(k+1)} sin((2k+1) phi).

    The p^{1/4} prefactor cancels in every theta1 ratio, so the Boltzmann
    weights are built from this reduced series; it stays finite at p = 0,
    where it degenerates to 2 sin(phi).
    """
    p = params.p
    log_ap = _nome_log_abs(p)
    phi = complex(phi)
    im = abs(phi.imag)
    s = 0j
    for k in range(cfg.max_terms):
        log_env = k * (k + 1) * log_ap + (2 * k + 1) * im + math.log(2.0)
        if k == 0:
            log_env = im + math.log(2.0)
        if log_env < math.log(cfg.term_tolerance * (1.0 + abs(s))):
            return s
        if log_env > _LOG_HUGE:
            raise SeriesTruncationError(
                f"theta1_reduced term overflow at k={k}")
        coeff = 1.0 + 0j if k == 0 else _pow_nome(p, k * (k + 1))
        s += 2.0 * (-1) ** k * coeff * cmath.sin((2 * k + 1) * phi)
    raise SeriesTruncationError(
        f"theta1_reduced series not converged in {cfg.max_terms} terms")


def theta1_prime_at_zero(params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """d/dphi theta1(phi | p) at phi = 0, by termwise differentiation."""
    p = params.p
    log_ap = _nome_log_abs(p)
    s = 0j
    for k in range(cfg.max_terms):
        log_env = (k + 0.5) ** 2 * log_ap + math.log(2.0 * (2 * k + 1))
        if log_env < math.log(cfg.term_tolerance * (1.0 + abs(s))):
            return s
        s += 2.0 * (-1) ** k * (2 * k + 1) * _pow_nome(p, (k + 0.5) ** 2)
    raise SeriesTruncationError(
        f"theta1' series not converged in {cfg.max_terms} terms")


def _theta1_prime_reduced(params: EllipticParams, cfg: SeriesConfig) -> complex:
    """theta1'(0 | p) / p^{1/4} = 2 * sum_k (-1)^k (2k+1) p^{k(k+1)}."""
    p = params.p
    log_ap = _nome_log_abs(p)
    s = 0j
    for k in range(cfg.max_terms):
        log_env = (0.0 if k == 0 else k * (k + 1) * log_ap) + math.log(2.0 * (2 * k + 1))
        if log_env < math.log(cfg.term_tolerance * (1.0 + abs(s))):
            return s
        coeff = 1.0 + 0j if k == 0 else _pow_nome(p, k * (k + 1))
        s += 2.0 * (-1) ** k * (2 * k + 1) * coeff
    raise SeriesTruncationError("reduced theta1' series not converged")


def theta4_lattice(m: int, params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """theta4(lambda + 2*pi*m/3 | p); well defined for m modulo 3."""
    return theta4(params.lam + TWO_PI_OVER_3 * (m % 3), params, cfg)


def zeta(r: int, params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Face weight ratio zeta_r(lambda, p) built from theta4 at lambda + 2*pi*r/3.

        zeta_r = theta4(lambda + 2pi(r-1)/3) theta4(lambda + 2pi(r+1)/3)
                 / theta4(lambda + 2pi r/3)^2

    The three values multiply to 1 because theta4 is pi-periodic.
    """
    den = theta4_lattice(r, params, cfg)
    if abs(den) < _POLE_TOL:
        raise PoleError(f"theta4(lambda + 2*pi*{r % 3}/3) vanishes at lambda = {params.lam}")
    return theta4_lattice(r - 1, params, cfg) * theta4_lattice(r + 1, params, cfg) / (den * den)


def zeta_log_table(params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> tuple[complex, complex, complex]:
    """(log zeta_0, log zeta_1, log zeta_2) built from logs of the three theta4 values.

    Constructing the logs from the underlying theta values (rather than from
    the zeta products) pins all fractional powers zeta_r^a = exp(a log zeta_r)
    to one branch sheet with log zeta_0 + log zeta_1 + log zeta_2 = 0 exactly.
    On the default real domain all theta4 values are positive and the table
    is plainly real.
    """
    logs = []
    for m in range(3):
        val = theta4_lattice(m, params, cfg)
        if abs(val) < _POLE_TOL:
            raise PoleError(f"theta4(lambda + 2*pi*{m}/3) vanishes at lambda = {params.lam}")
        logs.append(cmath.log(val))
    return tuple(logs[(r - 1) % 3] + logs[(r + 1) % 3] - 2 * logs[r] for r in range(3))


def cubic_factor_D(params: EllipticParams, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Proportionality factor D(p) in the nome-cubing identity.

    D(p) = theta1'(0|p) theta1(pi/3|p) theta1(2pi/3|p) / (3 theta1'(0|p^3)).
    Computed from the reduced series; the p^{3/4} factors cancel exactly, so
    the value extends continuously to D(0) = 1.
    """
    if abs(params.p) ** 3 >= 1.0:
        raise NomeDomainError("|p^3| >= 1")
    den = _theta1_prime_reduced(params.cubed(), cfg)
    if abs(den) < _POLE_TOL:
        raise PoleError("theta1'(0 | p^3) vanishes")
    num = (_theta1_prime_reduced(params, cfg)
           * theta1_reduced(math.pi / 3, params, cfg)
           * theta1_reduced(TWO_PI_OVER_3, params, cfg))
    return num / (3.0 * den)


def quasi_period_factor(phi: complex, params: EllipticParams) -> complex:
    """Common multiplier -p^{-1} exp(-2i phi) in the pi*tau shift laws."""
    return -cmath.exp(-2j * complex(phi)) / params.p
