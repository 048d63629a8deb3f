"""
Series Summation
Summation of slowly converging series whose terms are single-signed and
decay algebraically, t_r ~ r^{-p} with p > 1.

Two stopping rules are used:
  1. tail bound: |t_r| / (1 - t_r/t_{r-1}) < tol, the ratio taken from the
     last two terms;
  2. tail integral: once `switch_index` terms are summed, the rest
     sum_{r>=N} t_r is taken as integral_N^inf t(x) dx plus Gregory
     end corrections in forward differences of t at N, N+1, ...
     This needs the term as a smooth function of real x.
Rule 1 alone needs ~tol^{-1/(p-1)} terms, which is out of reach for p near 1.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from errors import DomainError
from quad import IntegrandSpec, integrate_half_line

logger = logging.getLogger(__name__)

MAX_TERMS = 10 ** 6
SWITCH_INDEX = 128
TAIL_MAX_LEVEL = 8
# coefficients of 1/log(1+D) - 1/D in powers of the forward difference D
GREGORY_COEFFS = (1.0 / 2.0, -1.0 / 12.0, 1.0 / 24.0, -19.0 / 720.0, 3.0 / 160.0,
                  -863.0 / 60480.0, 275.0 / 24192.0)

TermFunction = Callable[[float], float]


@dataclass
class SeriesSum:
    """
    Result of summing a series.

    Attributes:
        value: Sum estimate
        n_terms: Number of terms summed one by one
        truncation_index: Index at which the tail bound drops below tol
            (capped at MAX_TERMS)
        err_estimate: Tail bound, or last Gregory correction plus quadrature error
        tail_integrated: True when the tail came from rule 2
        converged: True when err_estimate < tol
        tail_evals: Term evaluations spent on the tail integral
    """
    value: float
    n_terms: int
    truncation_index: int
    err_estimate: float
    tail_integrated: bool
    converged: bool
    tail_evals: int = 0


class _CompensatedSum:
    """Neumaier running sum."""

    def __init__(self):
        self.total = 0.0
        self.compensation = 0.0

    def add(self, value: float):
        t = self.total + value
        if abs(self.total) >= abs(value):
            self.compensation += (self.total - t) + value
        else:
            self.compensation += (value - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.compensation


def tail_bound(term: float, previous: Optional[float]) -> float:
    """|t_r| / (1 - t_r/t_{r-1}); inf while the ratio is not in [0, 1)."""
    if previous is None or previous == 0.0:
        return 0.0 if term == 0.0 and previous == 0.0 else math.inf
    ratio = term / previous
    if not 0.0 <= ratio < 1.0:
        return math.inf
    return abs(term) / (1.0 - ratio)


def truncation_index(term_at: Callable[[int], float], tol: float, start: int = 1,
                     cap: int = MAX_TERMS) -> int:
    """
    First index r at which the tail bound of term_at(r) is below tol.

    Doubling search followed by bisection; assumes the bound decreases
    monotonically once terms are in their asymptotic regime. Returns cap
    when the bound is not met below it.
    """
    def met(r: int) -> bool:
        return tail_bound(term_at(r), term_at(r - 1)) < tol

    lo = start + 1
    if met(lo):
        return lo
    hi = lo
    while not met(hi):
        if hi >= cap:
            return cap
        lo, hi = hi, min(2 * hi, cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if met(mid):
            hi = mid
        else:
            lo = mid
    return hi


def gregory_tail(term_fn: TermFunction, first: int, tol: float) -> Tuple[float, float, int]:
    """
    sum_{r >= first} t(r) for a smooth algebraically decaying t.

    Returns:
        (value, error estimate, number of term evaluations)
    """
    points = np.array([term_fn(float(first + j)) for j in range(len(GREGORY_COEFFS))], dtype=float)
    corrections = [coeff * float(np.diff(points, n=j)[0]) if j else coeff * float(points[0])
                   for j, coeff in enumerate(GREGORY_COEFFS)]

    def scaled(y: float) -> float:
        x = first * (1.0 + y)
        return term_fn(x) if math.isfinite(x) else 0.0

    # x = first (1 + y) puts the variation of t on the unit scale of exp-sinh
    integral = integrate_half_line(IntegrandSpec.half_line(scaled, 0.0), tol=0.1 * tol / first,
                                  max_level=TAIL_MAX_LEVEL)
    value = first * integral.value + math.fsum(corrections)
    err = abs(corrections[-1]) + first * integral.err_estimate
    return value, err, integral.n_evals + len(points)


def sum_algebraic_series(terms: Iterable[float], decay: float, tol: float,
                         term_fn: Optional[TermFunction] = None, start: int = 1,
                         max_terms: int = MAX_TERMS,
                         switch_index: int = SWITCH_INDEX) -> SeriesSum:
    """
    Sum t_start + t_{start+1} + ... for single-signed terms decaying like r^{-decay}.

    Args:
        terms: Iterator yielding t_start, t_{start+1}, ... in order
        decay: Decay exponent p > 1 of the terms
        tol: Absolute tolerance
        term_fn: The term as a function of real r; enables the tail integral
            and the reported truncation index
        start: Index of the first term
        max_terms: Hard cap on summed terms
        switch_index: Index at which the tail integral takes over

    Returns:
        SeriesSum; converged is False when neither rule was met
    """
    if not decay > 1.0:
        raise DomainError(f"series with term decay r^-{decay} does not converge")
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    running = _CompensatedSum()
    previous = None
    bound = math.inf
    n = 0
    for term in terms:
        n += 1
        running.add(term)
        bound = tail_bound(term, previous)
        if bound < tol:
            logger.debug("series truncated by tail bound at r=%d (bound %.3g)", start + n - 1, bound)
            return SeriesSum(running.value, n, start + n - 1, bound, False, True)
        if term_fn is not None and start + n >= switch_index:
            break
        if n >= max_terms:
            break
        previous = term
    if term_fn is None:
        logger.warning("series reached %d terms without meeting tol %.3g", n, tol)
        return SeriesSum(running.value, n, max_terms, bound, False, False)

    tail, err, evals = gregory_tail(term_fn, start + n, tol)
    index = max(start + n, truncation_index(lambda r: term_fn(float(r)), tol, start=start + n))
    converged = err < tol
    if converged:
        logger.debug("series tail integrated from r=%d: %.17g (err %.3g, %d evals)", start + n, tail, err, evals)
    else:
        logger.warning("series tail from r=%d has err %.3g above tol %.3g", start + n, err, tol)
    return SeriesSum(running.value + tail, n, index, err, True, converged, evals)


def tail_slope(term_at: Callable[[int], float], r_values: Sequence[int]) -> float:
    """Least-squares slope of log|t_r| against log r."""
    r = np.asarray(r_values, dtype=float)
    magnitudes = np.abs(np.array([term_at(int(k)) for k in r_values], dtype=float))
    slope, _ = np.polyfit(np.log(r), np.log(magnitudes), 1)
    return float(slope)
