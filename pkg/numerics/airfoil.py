"""
Airfoil Integrals
J_n(a; mu) = PV integral_{-1}^{1} x^{2n+1} / (x - a) (1 - x^2)^{-mu} dx for mu < 1, |a| < 1,
the downwash integral of a lifting line whose circulation flattens the
elliptic profile.

Three independent routes:
  - j_series: finite 2F1 part + log term + an infinite sum of 2F1(1, 1-mu; r+1; -X),
    X = a^2/(1 - a^2), with terms decaying like r^{mu-2};
  - j_accelerated: the same infinite sum with the sigma_0, sigma_1, sigma_2 sums
    taken out in closed form, leaving a residual decaying like r^{mu-5};
  - j_pv_oracle: principal-value quadrature.
"""
import math
import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

from errors import DomainError, ConvergenceError
from quad import IntegrandSpec, QuadratureResult, integrate_finite, principal_value, DEFAULT_TOL
from series import SWITCH_INDEX, SeriesSum, sum_algebraic_series
from specfun import (SQRT_PI, Hyp2F1Args, gauss_2f1, gauss_2f1m1, gamma_fn, ln_gamma,
                     log_gamma_ratio, recip_gamma, pochhammer)

logger = logging.getLogger(__name__)

DEFAULT_SERIES_TOL = 1e-10
# above this X the inner 2F1 is summed in the argument a^2 instead of -X
X_SWITCH = 0.9
# direct evaluation of (mu)_r / r! below this index, gamma functions above
_DIRECT_COEFF_LIMIT = 64

CLOSED_FORM = "closed_form"
DIRECT_SUM = "direct_sum"


@dataclass(frozen=True)
class AirfoilQuery:
    """
    Parameters (n, a, mu) of J_n(a; mu).

    Raises:
        DomainError: n not a non-negative integer, |a| >= 1 or mu >= 1
    """
    n: int
    a: float
    mu: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if not abs(self.a) < 1.0:
            raise DomainError(f"|a| must be below 1, got {self.a!r}")
        if not self.mu < 1.0 or not math.isfinite(self.mu):
            raise DomainError(f"mu must be below 1, got {self.mu!r}")

    @property
    def X(self) -> float:
        a2 = self.a * self.a
        return a2 / ((1.0 - abs(self.a)) * (1.0 + abs(self.a)))


def rising_over_factorial(mu: float, r: float) -> float:
    """(mu)_r / r! = Gamma(mu + r) / (Gamma(mu) Gamma(r + 1)), r real once past the small integers."""
    if r < _DIRECT_COEFF_LIMIT and float(r).is_integer():
        return pochhammer(mu, int(r)) / math.factorial(int(r))
    rg = recip_gamma(mu)
    if rg == 0.0:
        return 0.0
    return rg * math.exp(log_gamma_ratio(r, mu, 1.0))


def _coefficients(mu: float) -> Iterator[Tuple[int, float]]:
    """(r, (mu)_r / r!) for r = 1, 2, ... by the running product."""
    c = 1.0
    r = 0
    while True:
        r += 1
        c *= (mu + r - 1) / r
        yield r, c


def _inner(q: AirfoilQuery, r: float) -> float:
    return gauss_2f1(Hyp2F1Args(1.0, 1.0 - q.mu, r + 1.0, -q.X), transform=q.X > X_SWITCH)


def _inner_residual(q: AirfoilQuery, r: float) -> float:
    return gauss_2f1m1(Hyp2F1Args(1.0, 3.0 - q.mu, r + 3.0, -q.X), transform=q.X > X_SWITCH)


def plain_term_at(q: AirfoilQuery, r: float) -> float:
    """r-th term (mu)_r / ((2r-1) r!) 2F1(1, 1-mu; r+1; -X) of the plain infinite sum."""
    c = rising_over_factorial(q.mu, r)
    return 0.0 if c == 0.0 else c / (2 * r - 1) * _inner(q, r)


def residual_term_at(q: AirfoilQuery, r: float) -> float:
    """r-th term (mu)_r / ((2r-1) (r+2)!) (2F1(1, 3-mu; r+3; -X) - 1) of the residual sum."""
    c = rising_over_factorial(q.mu, r)
    return 0.0 if c == 0.0 else c / ((2 * r - 1) * (r + 1) * (r + 2)) * _inner_residual(q, r)


def _plain_terms(q: AirfoilQuery) -> Iterator[float]:
    for r, c in _coefficients(q.mu):
        yield 0.0 if c == 0.0 else c / (2 * r - 1) * _inner(q, r)


def _residual_terms(q: AirfoilQuery) -> Iterator[float]:
    for r, c in _coefficients(q.mu):
        yield 0.0 if c == 0.0 else c / ((2 * r - 1) * (r + 1) * (r + 2)) * _inner_residual(q, r)


def _switch_index(mu: float) -> int:
    # past r = -mu the coefficients (mu)_r / r! keep one sign
    return SWITCH_INDEX + max(0, math.ceil(-mu))


def infinite_sum(q: AirfoilQuery, tol: float = DEFAULT_SERIES_TOL, accelerated: bool = False) -> SeriesSum:
    """
    The infinite part of the series for J_n(a; mu).

    Args:
        q: Query
        tol: Absolute tolerance on the sum
        accelerated: Sum the r^{mu-5} residual instead of the r^{mu-2} plain series
    """
    if accelerated:
        return sum_algebraic_series(_residual_terms(q), 5.0 - q.mu, tol,
                                    term_fn=lambda r: residual_term_at(q, r), switch_index=_switch_index(q.mu))
    return sum_algebraic_series(_plain_terms(q), 2.0 - q.mu, tol,
                                term_fn=lambda r: plain_term_at(q, r), switch_index=_switch_index(q.mu))


def _gamma_term(mu: float) -> float:
    """sqrt(pi) Gamma(1-mu) / Gamma(1/2-mu), zero at the poles of Gamma(1/2-mu)."""
    return SQRT_PI * gamma_fn(1.0 - mu) * recip_gamma(0.5 - mu)


def sigma2_as_printed(mu: float) -> float:
    """sigma_2 with the rational part as printed in the literature, (16 - 25mu + 15mu^2)/(30(1-mu)(2-mu))."""
    if not mu < 1.0:
        raise DomainError(f"sigma requires mu < 1, got {mu!r}")
    return (16.0 - 25.0 * mu + 15.0 * mu * mu) / (30.0 * (1.0 - mu) * (2.0 - mu)) - 4.0 * _gamma_term(mu) / 15.0


def _sigma_closed(m: int, mu: float) -> float:
    g = _gamma_term(mu)
    if m == 0:
        return 1.0 - g
    if m == 1:
        return (2.0 - 3.0 * mu) / (3.0 * (1.0 - mu)) - 2.0 * g / 3.0
    return (16.0 - 35.0 * mu + 15.0 * mu * mu) / (30.0 * (1.0 - mu) * (2.0 - mu)) - 4.0 * g / 15.0


def sigma_term_at(m: int, mu: float, r: float) -> float:
    """r-th term (mu)_r / ((2r-1) r! (r+1)...(r+m)) of sigma_m."""
    tail = 1.0
    for j in range(1, m + 1):
        tail *= r + j
    return rising_over_factorial(mu, r) / ((2.0 * r - 1.0) * tail)


def _sigma_terms(m: int, mu: float) -> Iterator[float]:
    for r, c in _coefficients(mu):
        tail = 1.0
        for j in range(1, m + 1):
            tail *= r + j
        yield c / ((2 * r - 1) * tail)


def sigma(m: int, mu: float, method: str = CLOSED_FORM, tol: float = DEFAULT_SERIES_TOL) -> float:
    """
    sigma_m = sum_{r>=1} (mu)_r / ((2r-1) (r+m)!) for m = 0, 1, 2; terms decay like r^{mu-2-m}.

    Args:
        m: 0, 1 or 2
        mu: Exponent, mu < 1
        method: 'closed_form' (gamma-ratio term through recip_gamma, vanishing at
            the poles of Gamma(1/2 - mu)) or 'direct_sum'
        tol: Tolerance of the direct sum

    Raises:
        DomainError: m outside 0..2, mu >= 1 or unknown method
        ConvergenceError: direct sum did not converge
    """
    if m not in (0, 1, 2):
        raise DomainError(f"sigma_m exists for m = 0, 1, 2 only, got {m!r}")
    if not mu < 1.0:
        raise DomainError(f"sigma requires mu < 1, got {mu!r}")
    if method == CLOSED_FORM:
        return _sigma_closed(m, mu)
    if method != DIRECT_SUM:
        raise DomainError(f"unknown sigma method {method!r}")
    total = sum_algebraic_series(_sigma_terms(m, mu), 2.0 + m - mu, tol,
                                 term_fn=lambda r: sigma_term_at(m, mu, r), switch_index=_switch_index(mu))
    if not total.converged:
        raise ConvergenceError(f"sigma_{m} direct sum did not converge at mu={mu!r}", total.value, total.err_estimate)
    return total.value


def _finite_part(n: int, a: float, mu: float) -> float:
    """sqrt(pi) Gamma(1-mu)/Gamma(3/2-mu) sum_{r=0}^{n} a^{2(n-r)} (1/2)_r / (3/2-mu)_r."""
    a2 = a * a
    total = 0.0
    ratio = 1.0
    for r in range(n + 1):
        if r:
            ratio *= (r - 0.5) / (r + 0.5 - mu)
        total += a2 ** (n - r) * ratio
    return SQRT_PI * math.exp(ln_gamma(1.0 - mu) - ln_gamma(1.5 - mu)) * total


def _outer_parts(q: AirfoilQuery) -> Tuple[float, float, float]:
    """(finite part, log term, prefactor 2a^{2n+2}/(1-a^2) of the infinite sum), evaluated at |a|."""
    a = abs(q.a)
    finite = _finite_part(q.n, a, q.mu)
    if a == 0.0:
        return finite, 0.0, 0.0
    one_minus = (1.0 - a) * (1.0 + a)
    lead = a ** (2 * q.n + 1)
    log_term = lead * (math.log1p(-a) - math.log1p(a)) / one_minus ** q.mu
    return finite, log_term, lead * 2.0 * a / one_minus


def _checked(total: SeriesSum, q: AirfoilQuery, route: str) -> float:
    if not total.converged:
        raise ConvergenceError(f"{route} series for J_{q.n}({q.a}; {q.mu}) did not converge",
                               total.value, total.err_estimate)
    logger.debug("%s series for %s: %d terms, truncation index %d", route, q, total.n_terms, total.truncation_index)
    return total.value


def j_series(q: AirfoilQuery, tol: float = DEFAULT_SERIES_TOL) -> float:
    """
    J_n(a; mu) from the hypergeometric series.

    Evaluated at |a|, so J_n(-a; mu) = J_n(a; mu) holds exactly; a = 0 gives
    Gamma(n+1/2)Gamma(1-mu)/Gamma(n+3/2-mu).

    Raises:
        ConvergenceError: the infinite sum did not converge
    """
    finite, log_term, prefactor = _outer_parts(q)
    if prefactor == 0.0:
        return finite + log_term
    total = infinite_sum(q, tol / max(1.0, prefactor), accelerated=False)
    return finite + log_term + prefactor * _checked(total, q, "plain")


def j_accelerated(q: AirfoilQuery, tol: float = DEFAULT_SERIES_TOL) -> float:
    """
    J_n(a; mu) with the infinite sum reorganised as
    sigma_0 - (1-mu) X sigma_1 + (1-mu)_2 X^2 sigma_2 + (1-mu)_2 X^2 * residual.
    """
    finite, log_term, prefactor = _outer_parts(q)
    if prefactor == 0.0:
        return finite + log_term
    mu = q.mu
    x = q.X
    weight = (1.0 - mu) * (2.0 - mu) * x * x
    closed = _sigma_closed(0, mu) - (1.0 - mu) * x * _sigma_closed(1, mu) + weight * _sigma_closed(2, mu)
    residual = infinite_sum(q, tol / max(1.0, prefactor * weight), accelerated=True)
    return finite + log_term + prefactor * (closed + weight * _checked(residual, q, "accelerated"))


def j_pv_oracle(q: AirfoilQuery, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """
    J_n(a; mu) by principal-value quadrature on (-1, 1); a = 0 integrates x^{2n} (1-x^2)^{-mu}.

    The endpoint factor is formed from the distances to -1 and 1, so mu close
    to 1 keeps full accuracy.
    """
    n, mu = q.n, q.mu
    if q.a == 0.0:
        def even(x: float, d_lo: float, d_hi: float) -> float:
            return x ** (2 * n) * (d_lo * d_hi) ** -mu
        spec = IntegrandSpec.finite(lambda x: even(x, 1.0 + x, 1.0 - x), -1.0, 1.0, endpoint_integrand=even)
        return integrate_finite(spec, tol)

    def g(x: float, d_lo: float, d_hi: float) -> float:
        return x ** (2 * n + 1) * (d_lo * d_hi) ** -mu

    return principal_value(lambda x: g(x, 1.0 + x, 1.0 - x), q.a, -1.0, 1.0, tol, endpoint_g=g)


def gamma_profile(n: int, x: float) -> float:
    """
    Circulation shape P_n(x) = integral_x^1 t^{2n+1} (1-t^2)^{-1/2} dt.

    Exactly sum_k C(n,k) (-1)^k (1-x^2)^{k+1/2} / (2k+1); P_n(1) = P_n(-1) = 0.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    if not abs(x) <= 1.0:
        raise DomainError(f"profile requires |x| <= 1, got {x!r}")
    w = (1.0 - abs(x)) * (1.0 + abs(x))
    root = math.sqrt(w)
    total = 0.0
    power = 1.0
    for k in range(int(n) + 1):
        total += math.comb(int(n), k) * (-1) ** k * power / (2 * k + 1)
        power *= w
    return root * total


_PRINTED_PROFILES = {
    0: lambda x: 1.0,
    1: lambda x: 0.5 * (2.0 + x * x),
    2: lambda x: (8.0 + 4.0 * x * x + 3.0 * x ** 4) / 15.0,
}


def printed_profile(n: int, x: float) -> float:
    """Circulation profile Gamma/Gamma_0 as printed for n = 0, 1, 2."""
    if n not in _PRINTED_PROFILES:
        raise DomainError(f"printed profiles exist for n = 0, 1, 2 only, got {n!r}")
    if not abs(x) <= 1.0:
        raise DomainError(f"profile requires |x| <= 1, got {x!r}")
    return _PRINTED_PROFILES[n](x) * math.sqrt((1.0 - abs(x)) * (1.0 + abs(x)))


def printed_profile_ratio(n: int, x: float = 0.0) -> float:
    """printed_profile(n, x) / gamma_profile(n, x): 1 for n = 0, 2 and 3/2 for n = 1."""
    return printed_profile(n, x) / gamma_profile(n, x)
