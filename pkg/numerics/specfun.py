"""
Special Functions
Real-argument error functions, gamma-family values, Pochhammer symbols and the
Gauss hypergeometric series used by the quadrature oracles, the Tricomi
expansions and the airfoil series.

All functions are pure and safe to call from several threads at once.
"""
import math
import logging
from dataclasses import dataclass
from typing import Optional

from errors import DomainError, ConvergenceError

logger = logging.getLogger(__name__)

# Euler-Mascheroni constant, lim_{n->inf} (1 + 1/2 + ... + 1/n - log n)
EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992
# Apery's constant, zeta(3) = sum_{k>=1} 1/k^3
ZETA3 = 1.20205690315959428539973816151144999076498629234049

SQRT_PI = 1.77245385090551602729816748334114518279754945612239
TWO_OVER_SQRT_PI = 2.0 / SQRT_PI
HALF_LOG_2PI = 0.91893853320467274178032973640561763986139747363778

# erfc(x) underflows to zero beyond this point
_ERFC_UNDERFLOW = 27.3
# erfcx(x) = (1/(x sqrt(pi))) (1 - 1/(2x^2) + ...) is exact in double precision here
_ERFCX_ASYMPTOTIC = 1e8
_TINY = 1e-300
_EPS = 2.220446049250313e-16

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _exp_neg_square(x: float) -> float:
    """exp(-x*x) without the rounding error of forming x*x (x >= 0)."""
    # hi keeps 12 fractional bits so hi*hi is exact
    hi = math.floor(x * 4096.0) / 4096.0
    return math.exp(-hi * hi) * math.exp(-(x - hi) * (x + hi))


def _erf_series(x: float) -> float:
    """erf for 0 <= x, x^2 < 1.5: (2/sqrt(pi)) e^{-x^2} sum 2^n x^{2n+1}/(1*3*...*(2n+1))."""
    if x == 0.0:
        return 0.0
    x2 = x * x
    term = x
    total = x
    n = 0
    while term > total * 0.5 * _EPS:
        n += 1
        term *= 2.0 * x2 / (2 * n + 1)
        total += term
    return TWO_OVER_SQRT_PI * _exp_neg_square(x) * total


def _erfcx_continued_fraction(x: float) -> float:
    """
    erfcx for x^2 >= 1.5 from the continued fraction of Gamma(1/2, x^2).

    Modified Lentz evaluation; converges in a few dozen steps at the split
    point and faster beyond it.
    """
    b = x * x + 0.5
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - 0.5)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= 2.0 * _EPS:
            return x * h / SQRT_PI
    raise ConvergenceError(f"erfc continued fraction did not converge at x={x!r}")


def _erfcx_large(x: float) -> float:
    inv2 = 0.5 / (x * x)
    return (1.0 - inv2 + 3.0 * inv2 * inv2) / (x * SQRT_PI)


def erf(x: float) -> float:
    """
    Error function erf(x) = (2/sqrt(pi)) * integral_0^x exp(-t^2) dt.

    Args:
        x: Finite real argument

    Returns:
        erf(x), odd in x, with relative accuracy near 1e-16
    """
    if math.isnan(x):
        return x
    if x < 0.0:
        return -erf(-x)
    if x * x < 1.5:
        return _erf_series(x)
    return 1.0 - erfc(x)


def erfc(x: float) -> float:
    """
    Complementary error function erfc(x) = 1 - erf(x).

    The far tail stays accurate to full relative precision and underflows
    to 0 beyond x ~ 27.3.
    """
    if math.isnan(x):
        return x
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x * x < 1.5:
        return 1.0 - _erf_series(x)
    if x > _ERFC_UNDERFLOW:
        return 0.0
    return _exp_neg_square(x) * _erfcx_continued_fraction(x)


def erfcx(x: float) -> float:
    """Scaled complementary error function exp(x^2) * erfc(x)."""
    if math.isnan(x):
        return x
    if x < 0.0:
        return 2.0 * math.exp(x * x) - erfcx(-x)
    if x * x < 1.5:
        return erfc(x) / _exp_neg_square(x)
    if x > _ERFCX_ASYMPTOTIC:
        return _erfcx_large(x)
    return _erfcx_continued_fraction(x)


def log_erfc(x: float) -> float:
    """log(erfc(x)), finite for every finite x (no underflow in the far tail)."""
    if x * x < 1.5 or x < 0.0:
        return math.log(erfc(x))
    return -x * x + math.log(erfcx(x))


def _sin_pi(x: float) -> float:
    """sin(pi*x) with exact zeros at the integers."""
    r = math.fmod(x, 2.0)
    if r < 0.0:
        r += 2.0
    if r > 1.0:
        return -_sin_pi(r - 1.0)
    if r > 0.5:
        r = 1.0 - r
    return math.sin(math.pi * r)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def ln_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function for x > 0 (Lanczos, g=7).

    Raises:
        DomainError: x <= 0
    """
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        return ln_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    series = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        series += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(series)


def gamma_fn(x: float) -> float:
    """
    Gamma function for real x, by reflection below 1/2.

    Raises:
        DomainError: x is zero or a negative integer (pole)
    """
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma function has a pole at x={x!r}")
    if x < 0.5:
        return math.pi / (_sin_pi(x) * gamma_fn(1.0 - x))
    return math.exp(ln_gamma(x))


def recip_gamma(x: float) -> float:
    """1/Gamma(x) for any finite x; exactly 0 at x = 0, -1, -2, ..."""
    if _is_nonpositive_integer(x):
        return 0.0
    if x < 0.5:
        return _sin_pi(x) * gamma_fn(1.0 - x) / math.pi
    if x > 171.7:
        return 0.0
    return math.exp(-ln_gamma(x))


def _stirling_tail(z: float) -> float:
    """ln Gamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2] for z >= 20."""
    w = 1.0 / (z * z)
    return (1.0 / 12.0 - w * (1.0 / 360.0 - w * (1.0 / 1260.0 - w * (1.0 / 1680.0 - w / 1188.0)))) / z


def log_gamma_ratio(x: float, a: float, b: float) -> float:
    """
    ln Gamma(x + a) - ln Gamma(x + b) for x + a > 0, x + b > 0.

    For large x the difference is formed from the Stirling series so that
    the O(x log x) parts cancel analytically.
    """
    if not (x + a > 0.0 and x + b > 0.0):
        raise DomainError("log_gamma_ratio requires x + a > 0 and x + b > 0")
    if x + min(a, b) < 20.0:
        return ln_gamma(x + a) - ln_gamma(x + b)
    return ((a - b) * math.log(x)
            + (x + a - 0.5) * math.log1p(a / x) - (x + b - 0.5) * math.log1p(b / x)
            - (a - b) + _stirling_tail(x + a) - _stirling_tail(x + b))


def gamma_ratio(p: float, q: float) -> float:
    """
    Gamma(p)/Gamma(q).

    Positive arguments go through exp(ln_gamma(p) - ln_gamma(q)); otherwise
    the ratio is built from gamma_fn and recip_gamma so a pole of Gamma(q)
    gives 0.
    """
    if p > 0.0 and q > 0.0:
        return math.exp(ln_gamma(p) - ln_gamma(q))
    return gamma_fn(p) * recip_gamma(q)


def pochhammer(x: float, k: int) -> float:
    """
    Rising factorial (x)_k = x (x+1) ... (x+k-1).

    Raises:
        DomainError: k is not a non-negative integer
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"pochhammer requires a non-negative integer k, got {k!r}")
    result = 1.0
    for i in range(int(k)):
        result *= x + i
    return result


@dataclass(frozen=True)
class Hyp2F1Args:
    """
    Parameters of a real Gauss hypergeometric function 2F1(a, b; c; z).

    Raises:
        DomainError: c is zero or a negative integer, or z lies outside
            z < 1 (z = 1 is accepted when c - a - b > 0)
    """
    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"2F1 lower parameter c={self.c!r} is zero or a negative integer")
        if self.z > 1.0:
            raise DomainError(f"2F1 argument z={self.z!r} is beyond the branch point")
        if self.z == 1.0 and not self.c - self.a - self.b > 0.0:
            raise DomainError("2F1 at z=1 requires c - a - b > 0")


def gauss_sum_at_one(a: float, b: float, c: float) -> float:
    """Gauss summation: 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))."""
    if c > 0.0 and c - a - b > 0.0 and c - a > 0.0 and c - b > 0.0:
        return math.exp(ln_gamma(c) + ln_gamma(c - a - b) - ln_gamma(c - a) - ln_gamma(c - b))
    return gamma_fn(c) * gamma_fn(c - a - b) * recip_gamma(c - a) * recip_gamma(c - b)


def _series_tail(a: float, b: float, c: float, z: float, tol: float, max_terms: int) -> float:
    """
    sum_{k>=1} (a)_k (b)_k / ((c)_k k!) z^k, i.e. 2F1 - 1.

    Stops when the geometric bound on the remaining terms drops below
    tol * |1 + tail| (relative to the full value) or below tol * |tail|
    once the tail itself is tiny.
    """
    term = 1.0
    tail = 0.0
    abs_z = abs(z)
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        tail += term
        if term == 0.0:
            return tail
        ratio = abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2)) * z)
        rho = max(ratio, abs_z)
        if rho < 1.0:
            bound = abs(term) * rho / (1.0 - rho)
            if bound <= tol * min(abs(1.0 + tail), abs(tail)):
                return tail
    raise ConvergenceError(
        f"2F1({a!r}, {b!r}; {c!r}; {z!r}) series did not converge in {max_terms} terms",
        estimate=1.0 + tail,
    )


def _select_transform(z: float, transform: Optional[bool]) -> bool:
    if transform is not None:
        return transform
    w = z / (z - 1.0)
    return abs(w) < 0.9 * abs(z)


def _check_series_argument(z: float, args: Hyp2F1Args, terminating: bool):
    if abs(z) >= 1.0 and not terminating:
        raise ConvergenceError(
            f"2F1 series argument {z!r} has modulus >= 1 (a={args.a!r}, b={args.b!r}, c={args.c!r})"
        )


def gauss_2f1m1(args: Hyp2F1Args, tol: float = 1e-15, transform: Optional[bool] = None,
                max_terms: int = 200000) -> float:
    """
    2F1(a, b; c; z) - 1 without cancellation.

    Args:
        args: Parameters (z < 1)
        tol: Relative tolerance on the result
        transform: Force (True) or forbid (False) the Pfaff transformation
            2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)); None picks
            the smaller argument modulus (ties stay untransformed)
        max_terms: Hard cap on series terms

    Returns:
        The value of 2F1 minus one
    """
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    a, b, c, z = args.a, args.b, args.c, args.z
    if z == 0.0:
        return 0.0
    if z == 1.0:
        return gauss_sum_at_one(a, b, c) - 1.0
    if _select_transform(z, transform):
        w = z / (z - 1.0)
        _check_series_argument(w, args, _is_nonpositive_integer(a) or _is_nonpositive_integer(c - b))
        tail = _series_tail(a, c - b, c, w, tol, max_terms)
        prefactor_m1 = math.expm1(-a * math.log1p(-z))
        return prefactor_m1 + (1.0 + prefactor_m1) * tail
    _check_series_argument(z, args, _is_nonpositive_integer(a) or _is_nonpositive_integer(b))
    return _series_tail(a, b, c, z, tol, max_terms)


def gauss_2f1(args: Hyp2F1Args, tol: float = 1e-15, transform: Optional[bool] = None,
              max_terms: int = 200000) -> float:
    """
    Gauss hypergeometric function 2F1(a, b; c; z) for real parameters, z <= 1.

    The series argument is z, or z/(z-1) after the Pfaff transformation when
    that is smaller than 0.9|z|. z = 1 uses the Gauss summation formula.

    Raises:
        ConvergenceError: the chosen series argument has modulus >= 1 and
            the series does not terminate, or max_terms is exhausted
    """
    if args.z == 1.0:
        return gauss_sum_at_one(args.a, args.b, args.c)
    return 1.0 + gauss_2f1m1(args, tol=tol, transform=transform, max_terms=max_terms)
