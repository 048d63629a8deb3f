"""
Quadrature
Double-exponential quadrature engines: tanh-sinh on finite intervals, exp-sinh
on half lines, the real line as two half lines split at 0, and Cauchy
principal values by singularity subtraction.

Engines are stateless. Refinement halves the step in the transformed variable
until two successive levels agree; the difference is the error estimate.
"""
import math
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Dict, Any

from errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MAX_LEVEL = 12
# convergence is only accepted from this level on
MIN_LEVEL = 3
# |t| range of the transformed variable; node distances underflow before it ends
T_MAX = 6.5
PV_GUARD = 1e-4

FINITE = "finite"
HALF_LINE = "half_line"
FULL_LINE = "full_line"
DOMAINS = (FINITE, HALF_LINE, FULL_LINE)

ENDPOINT_ALGEBRAIC = "endpoint-algebraic"
INTERIOR_POLE = "interior-pole"

Integrand = Callable[[float], float]
# f(x, d_lo, d_hi) with d_lo = x - lo and d_hi = hi - x computed without cancellation
EndpointIntegrand = Callable[[float, float, float], float]


@dataclass(frozen=True)
class Singularity:
    """Annotation of where an integrand is singular."""
    kind: str
    location: Optional[float] = None

    def __post_init__(self):
        if self.kind not in (ENDPOINT_ALGEBRAIC, INTERIOR_POLE):
            raise DomainError(f"unknown singularity kind {self.kind!r}")
        if self.kind == INTERIOR_POLE and self.location is None:
            raise DomainError("an interior pole needs a location")


@dataclass(frozen=True)
class IntegrandSpec:
    """
    An integrand together with its domain.

    Attributes:
        integrand: x -> f(x)
        domain: 'finite' (lo, hi), 'half_line' (lo, inf) or 'full_line'
        lo: Lower end (finite and half_line)
        hi: Upper end (finite only)
        singularity: Optional annotation; an interior pole must lie strictly inside
        endpoint_integrand: Optional (x, d_lo, d_hi) -> f(x) form, preferred by
            the engines when present. For half lines d_hi is inf.
    """
    integrand: Integrand
    domain: str = FINITE
    lo: Optional[float] = None
    hi: Optional[float] = None
    singularity: Optional[Singularity] = None
    endpoint_integrand: Optional[EndpointIntegrand] = None

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise DomainError(f"unknown integration domain {self.domain!r}")
        if self.domain == FINITE:
            if self.lo is None or self.hi is None or not self.lo < self.hi:
                raise DomainError("a finite domain requires lo < hi")
        if self.domain == HALF_LINE and (self.lo is None or not math.isfinite(self.lo)):
            raise DomainError("a half-line domain requires a finite lower end")
        if self.singularity is not None and self.singularity.kind == INTERIOR_POLE:
            loc = self.singularity.location
            lo = -math.inf if self.lo is None else self.lo
            hi = math.inf if self.hi is None else self.hi
            if not lo < loc < hi:
                raise DomainError(f"interior pole {loc!r} is not strictly inside the domain")

    @classmethod
    def finite(cls, integrand: Integrand, lo: float, hi: float,
               endpoint_integrand: Optional[EndpointIntegrand] = None,
               singularity: Optional[Singularity] = None) -> 'IntegrandSpec':
        return cls(integrand, FINITE, lo, hi, singularity, endpoint_integrand)

    @classmethod
    def half_line(cls, integrand: Integrand, lo: float = 0.0,
                  endpoint_integrand: Optional[EndpointIntegrand] = None) -> 'IntegrandSpec':
        return cls(integrand, HALF_LINE, lo, None, None, endpoint_integrand)

    @classmethod
    def full_line(cls, integrand: Integrand) -> 'IntegrandSpec':
        return cls(integrand, FULL_LINE)

    def evaluate(self, x: float, d_lo: float, d_hi: float) -> float:
        if self.endpoint_integrand is not None:
            return self.endpoint_integrand(x, d_lo, d_hi)
        return self.integrand(x)


@dataclass
class QuadratureResult:
    """
    Outcome of a quadrature.

    Attributes:
        value: Integral estimate
        err_estimate: Absolute error estimate (|S_k - S_{k-1}| of the last level)
        n_evals: Integrand evaluations, zero-valued and skipped nodes included
        converged: True when err_estimate <= tol * max(1, |value|)
        levels: Refinement level reached (informational)
        n_dropped: Evaluated nodes whose contribution was not finite and was left out
    """
    value: float
    err_estimate: float
    n_evals: int
    converged: bool
    levels: int = field(default=0, compare=False)
    n_dropped: int = field(default=0, compare=False)

    def __add__(self, other: 'QuadratureResult') -> 'QuadratureResult':
        return QuadratureResult(
            value=self.value + other.value,
            err_estimate=self.err_estimate + other.err_estimate,
            n_evals=self.n_evals + other.n_evals,
            converged=self.converged and other.converged,
            levels=max(self.levels, other.levels),
            n_dropped=self.n_dropped + other.n_dropped,
        )

    def scaled(self, factor: float) -> 'QuadratureResult':
        return QuadratureResult(self.value * factor, self.err_estimate * abs(factor),
                                self.n_evals, self.converged, self.levels, self.n_dropped)

    def shifted(self, offset: float) -> 'QuadratureResult':
        return QuadratureResult(self.value + offset, self.err_estimate,
                                self.n_evals, self.converged, self.levels, self.n_dropped)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "err_estimate": self.err_estimate,
            "n_evals": self.n_evals,
            "converged": self.converged,
            "n_dropped": self.n_dropped,
        }


def _accepted(err: float, value: float, tol: float) -> bool:
    return err <= tol * max(1.0, abs(value))


@dataclass
class _NodeSum:
    """Weighted sum over the nodes of one level."""
    label: str
    total: float = 0.0
    evals: int = 0
    dropped: int = 0

    def skip(self):
        """A node whose position or distance to an end is not representable."""
        self.evals += 1

    def add(self, evaluate: EndpointIntegrand, x: float, d_lo: float, d_hi: float, weight: float):
        self.evals += 1
        if d_lo == 0.0 or d_hi == 0.0:
            return
        try:
            contribution = evaluate(x, d_lo, d_hi) * weight
        except (ZeroDivisionError, OverflowError) as e:
            contribution = math.nan
            logger.debug("%s: integrand raised %r at x = %.17g", self.label, e, x)
        if math.isfinite(contribution):
            self.total += contribution
        else:
            self.dropped += 1
            logger.debug("%s: dropped non-finite contribution %r at x = %.17g (d_lo %.3g, d_hi %.3g)",
                         self.label, contribution, x, d_lo, d_hi)


def _refine(node_sum: Callable[[float, int, int], _NodeSum], tol: float, max_level: int,
            label: str) -> QuadratureResult:
    """
    Level-doubling trapezoidal driver shared by the engines.

    node_sum(h, j_start, j_step) sums f*w over the nodes t = j*h with
    j = j_start, j_start + j_step, ... inside [-T_MAX, T_MAX].
    """
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    if max_level < 1:
        raise DomainError("max_level must be at least 1")
    h = 1.0
    first = node_sum(h, 0, 1)
    total, n_evals, n_dropped = first.total, first.evals, first.dropped
    estimate = h * total
    err = math.inf
    level = 0
    for level in range(1, max_level + 1):
        h *= 0.5
        nodes = node_sum(h, 1, 2)
        total += nodes.total
        n_evals += nodes.evals
        n_dropped += nodes.dropped
        previous, estimate = estimate, h * total
        err = abs(estimate - previous)
        logger.debug("%s level %d: %.17g (err %.3g, %d evals, %d dropped)",
                     label, level, estimate, err, n_evals, n_dropped)
        if level >= MIN_LEVEL and _accepted(err, estimate, tol):
            return QuadratureResult(estimate, err, n_evals, True, level, n_dropped)
    logger.warning("%s did not converge after %d levels (err %.3g, %d nodes dropped)",
                   label, level, err, n_dropped)
    return QuadratureResult(estimate, err, n_evals, False, level, n_dropped)


def _node_range(h: float, j_start: int, j_step: int):
    j_max = int(T_MAX / h)
    first = -j_max
    if (first - j_start) % j_step:
        first += 1
    return range(first, j_max + 1, j_step)


def integrate_finite(spec: IntegrandSpec, tol: float = DEFAULT_TOL,
                     max_level: int = MAX_LEVEL) -> QuadratureResult:
    """
    Tanh-sinh quadrature on a finite interval.

    Endpoint algebraic singularities of exponent > -1 are handled; nodes whose
    distance to an end underflows, or whose contribution is not finite, are
    dropped (and still counted as evaluations).

    Args:
        spec: A finite-domain IntegrandSpec
        tol: Mixed absolute/relative tolerance
        max_level: Refinement cap (step 2^-max_level)

    Returns:
        QuadratureResult; converged=False carries the best estimate
    """
    if spec.domain != FINITE:
        raise DomainError("integrate_finite requires a finite domain")
    lo, hi = spec.lo, spec.hi
    half = 0.5 * (hi - lo)
    half_pi = 0.5 * math.pi
    label = f"tanh-sinh[{lo:g},{hi:g}]"

    def node_sum(h: float, j_start: int, j_step: int) -> _NodeSum:
        nodes = _NodeSum(label)
        for j in _node_range(h, j_start, j_step):
            t = j * h
            u = half_pi * math.sinh(abs(t))
            e = math.exp(-2.0 * u)
            near = 2.0 * e / (1.0 + e)
            far = 2.0 - near
            weight = half * half_pi * math.cosh(t) * near * far
            if near == 0.0 or weight == 0.0:
                nodes.skip()
                continue
            if t >= 0.0:
                d_hi, d_lo = half * near, half * far
                x = hi - d_hi
            else:
                d_lo, d_hi = half * near, half * far
                x = lo + d_lo
            nodes.add(spec.evaluate, x, d_lo, d_hi, weight)
        return nodes

    return _refine(node_sum, tol, max_level, label)


def integrate_half_line(spec: IntegrandSpec, tol: float = DEFAULT_TOL,
                        max_level: int = MAX_LEVEL) -> QuadratureResult:
    """
    Exp-sinh quadrature on (lo, inf): x = lo + exp((pi/2) sinh t).

    The integrand should decay at least exponentially; an integrable
    algebraic singularity at lo is allowed.
    """
    if spec.domain != HALF_LINE:
        raise DomainError("integrate_half_line requires a half-line domain")
    lo = spec.lo
    half_pi = 0.5 * math.pi
    label = f"exp-sinh[{lo:g},inf)"

    def node_sum(h: float, j_start: int, j_step: int) -> _NodeSum:
        nodes = _NodeSum(label)
        for j in _node_range(h, j_start, j_step):
            t = j * h
            arg = half_pi * math.sinh(t)
            d_lo = math.exp(arg) if arg <= 709.0 else 0.0
            weight = half_pi * math.cosh(t) * d_lo
            if d_lo == 0.0 or math.isinf(weight):
                nodes.skip()
                continue
            nodes.add(spec.evaluate, lo + d_lo, d_lo, math.inf, weight)
        return nodes

    return _refine(node_sum, tol, max_level, label)


def integrate_real_line(spec: IntegrandSpec, tol: float = DEFAULT_TOL,
                        max_level: int = MAX_LEVEL) -> QuadratureResult:
    """
    Quadrature over the whole real line, split at 0 into two exp-sinh halves.

    Integrand values of exactly 0 (e.g. an underflowed power) are fine.
    """
    if spec.domain != FULL_LINE:
        raise DomainError("integrate_real_line requires a full-line domain")
    f = spec.integrand
    right = integrate_half_line(IntegrandSpec.half_line(f, 0.0), tol, max_level)
    left = integrate_half_line(IntegrandSpec.half_line(lambda x: f(-x), 0.0), tol, max_level)
    result = left + right
    result.converged = _accepted(result.err_estimate, result.value, tol)
    return result


def principal_value(g: Integrand, pole: float, lo: float, hi: float, tol: float = DEFAULT_TOL,
                    endpoint_g: Optional[EndpointIntegrand] = None,
                    max_level: int = MAX_LEVEL) -> QuadratureResult:
    """
    Cauchy principal value of integral_lo^hi g(x)/(x - pole) dx.

    Computed as integral (g(x) - g(pole))/(x - pole) dx + g(pole) log((hi-pole)/(pole-lo)),
    split at the pole. Within |x - pole| < delta = (hi-lo)*1e-4 the difference
    quotient is replaced by the cubic through its exact values at +-delta/2 and
    +-delta, which meets the exact quotient at the guard edge.

    Args:
        g: Numerator, continuously differentiable near the pole
        pole: Pole location, lo < pole < hi
        lo, hi: Interval ends; g may carry integrable algebraic singularities there
        tol: Mixed absolute/relative tolerance
        endpoint_g: Optional (x, d_lo, d_hi) form of g using distances to lo and hi

    Raises:
        DomainError: pole not strictly inside (lo, hi)
    """
    if not lo < pole < hi:
        raise DomainError(f"pole {pole!r} must lie strictly inside ({lo!r}, {hi!r})")
    if endpoint_g is None:
        def endpoint_g(x, d_lo, d_hi):
            return g(x)
    left_gap = pole - lo
    right_gap = hi - pole
    delta = min((hi - lo) * PV_GUARD, 0.5 * left_gap, 0.5 * right_gap)
    g0 = endpoint_g(pole, left_gap, right_gap)

    def exact(offset: float) -> float:
        return (endpoint_g(pole + offset, left_gap + offset, right_gap - offset) - g0) / offset

    # cubic p0 + p1 s + p2 s^2 + p3 s^3 through the exact quotients at s = +-delta, +-delta/2
    q_far, q_far_neg = exact(delta), exact(-delta)
    q_near, q_near_neg = exact(0.5 * delta), exact(-0.5 * delta)
    even_far, odd_far = 0.5 * (q_far + q_far_neg), 0.5 * (q_far - q_far_neg)
    even_near, odd_near = 0.5 * (q_near + q_near_neg), 0.5 * (q_near - q_near_neg)
    p2 = (even_far - even_near) / (0.75 * delta * delta)
    p0 = even_near - 0.25 * p2 * delta * delta
    p3 = (odd_far - 2.0 * odd_near) / (0.75 * delta ** 3)
    p1 = (odd_far - p3 * delta ** 3) / delta

    def quotient(offset: float, d_lo: float, d_hi: float) -> float:
        # offset = x - pole
        if abs(offset) < delta:
            return p0 + offset * (p1 + offset * (p2 + offset * p3))
        return (endpoint_g(pole + offset, d_lo, d_hi) - g0) / offset

    def left_piece(x: float, dl: float, dr: float) -> float:
        return quotient(-dr, dl, right_gap + dr)

    def right_piece(x: float, dl: float, dr: float) -> float:
        return quotient(dl, left_gap + dl, dr)

    left = integrate_finite(
        IntegrandSpec.finite(lambda x: left_piece(x, x - lo, pole - x), lo, pole, endpoint_integrand=left_piece),
        tol, max_level,
    )
    right = integrate_finite(
        IntegrandSpec.finite(lambda x: right_piece(x, x - pole, hi - x), pole, hi, endpoint_integrand=right_piece),
        tol, max_level,
    )
    result = (left + right).shifted(g0 * math.log(right_gap / left_gap))
    result.n_evals += 5
    result.converged = left.converged and right.converged and _accepted(result.err_estimate, result.value, tol)
    return result
