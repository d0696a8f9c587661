"""Upper-tail probabilities and closed-form bounds for rare-alert counts.

Core quantities for a screening test that flags an individual when a count
statistic reaches a threshold m:

* the Poisson rate function D(c) = c ln c - c + 1, governing tails of
  Pr(Pois(lambda) >= c*lambda),
* exact Poisson and binomial upper tails,
* a Chernoff upper bound exp(-lambda * D(m/lambda)) and a Robbins-Stirling
  lower bound that sandwich the exact tail in the c > 1 regime,
* the hypergeometric probability that a random s-subset hits a fixed t-subset
  (list-overlap false match), and Le Cam's bound on the binomial-Poisson gap.

Everything here is scalar math on floats; no arrays, no state.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb, exp, expm1, fsum, lgamma, log, log1p, pi, sqrt

from scipy.special import gammainc

from .errors import DomainError

__all__ = [
    "RateInput",
    "TailEstimate",
    "OverlapInput",
    "rate_function",
    "poisson_tail",
    "log_poisson_tail",
    "binomial_tail",
    "chernoff_upper",
    "robbins_lower",
    "tail_estimate",
    "overlap_probability",
    "lecam_bound",
]

# Relative truncation target for the log-space tail series.
_SERIES_RTOL = 1e-18


@dataclass(frozen=True, slots=True)
class RateInput:
    """A validated (c, lam) pair for rate-function work.

    Attributes:
        c: Threshold-to-mean ratio; must be positive.
        lam: Mean event count; must be positive.
    """

    c: float
    lam: float

    def __post_init__(self) -> None:
        if not (self.c > 0.0):
            raise DomainError(f"c must be positive, got {self.c}")
        if not (self.lam > 0.0):
            raise DomainError(f"lam must be positive, got {self.lam}")

    @property
    def exponent(self) -> float:
        """lam * D(c), the large-deviation exponent at this operating point."""
        return self.lam * rate_function(self.c)


@dataclass(frozen=True, slots=True)
class TailEstimate:
    """Exact upper tail with its sandwich bounds at an integer threshold.

    Attributes:
        exact: Pr(Pois(lam) >= m).
        chernoff_upper: exp(-lam * D(m/lam)), always >= exact.
        robbins_lower: Stirling-corrected lower bound, always <= exact.
        log_exact: ln of the exact tail, finite even when `exact`
            underflows to zero in double precision.
        exponent: lam * D(m/lam).
    """

    exact: float
    chernoff_upper: float
    robbins_lower: float
    log_exact: float
    exponent: float


@dataclass(frozen=True, slots=True)
class OverlapInput:
    """Sizes for the random-list overlap probability.

    Attributes:
        domain_size: Number of distinct items V in the universe.
        person_items: Size t of the fixed (personal) list.
        suspicious_items: Size s of the randomly chosen list.
    """

    domain_size: int
    person_items: int
    suspicious_items: int

    def __post_init__(self) -> None:
        v, t, s = self.domain_size, self.person_items, self.suspicious_items
        if v < 1:
            raise DomainError(f"domain_size must be >= 1, got {v}")
        if not (0 <= t <= v):
            raise DomainError(f"person_items must lie in [0, {v}], got {t}")
        if not (0 <= s <= v):
            raise DomainError(f"suspicious_items must lie in [0, {v}], got {s}")


def rate_function(c: float) -> float:
    """Poisson rate function D(c) = c ln c - c + 1.

    Strictly convex, zero only at c = 1, with D'(c) = ln c. Governs the
    exponential decay rate of Pr(Pois(lam) >= c*lam) for c > 1.

    Args:
        c: Positive ratio of threshold to mean.

    Raises:
        DomainError: If c <= 0.
    """
    if not (c > 0.0):
        raise DomainError(f"rate function needs c > 0, got {c}")
    return c * log(c) - c + 1.0


def _validate_tail_args(lam: float, m: int) -> None:
    if not (lam > 0.0):
        raise DomainError(f"lam must be positive, got {lam}")
    if m != int(m) or m < 0:
        raise DomainError(f"threshold m must be a nonnegative integer, got {m}")


def poisson_tail(lam: float, m: int) -> float:
    """Exact Pr(Pois(lam) >= m) via the regularized lower incomplete gamma.

    Uses the identity Pr(Pois(lam) >= m) = P(m, lam), evaluated by the
    series / continued-fraction split inside scipy's gammainc. Relative
    accuracy is ~1e-13 over lam <= 1e4, m <= 1e5.

    Args:
        lam: Mean of the Poisson distribution (> 0).
        m: Integer threshold (>= 0).
    """
    _validate_tail_args(lam, m)
    if m == 0:
        return 1.0
    return float(gammainc(m, lam))


def log_poisson_tail(lam: float, m: int) -> float:
    """ln Pr(Pois(lam) >= m), finite far past double-precision underflow.

    For m > lam the tail series e^-lam lam^j / j! (j >= m) has decreasing
    terms with geometric ratio < lam/m, so the sum is evaluated in log space
    anchored at the first term. Otherwise the tail is order one and plain
    log(poisson_tail(...)) is exact enough.
    """
    _validate_tail_args(lam, m)
    if m == 0:
        return 0.0
    if m <= lam:
        # Tail is order one here; underflow impossible.
        return log(float(gammainc(m, lam)))
    # m > lam: series in log space, one code path at any depth.
    log_first = -lam + m * log(lam) - lgamma(m + 1.0)
    total = 1.0
    term = 1.0
    j = m
    while True:
        j += 1
        term *= lam / j
        total += term
        if term < _SERIES_RTOL * total:
            break
    return log_first + log(total)


def binomial_tail(k: int, p: float, m: int) -> float:
    """Exact Pr(Bin(k, p) >= m) by stable compensated summation.

    Terms are evaluated in log space through lgamma and accumulated with
    fsum, so the result is accurate to ~1e-14 relative even deep in the
    tail. Serves as the exact reference the Poisson approximation is
    checked against.

    Args:
        k: Number of trials (>= 0).
        p: Success probability in [0, 1].
        m: Threshold; m > k gives 0, m <= 0 gives 1.
    """
    if k < 0 or k != int(k):
        raise DomainError(f"k must be a nonnegative integer, got {k}")
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if m != int(m):
        raise DomainError(f"threshold m must be an integer, got {m}")
    if m <= 0:
        return 1.0
    if m > k:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    log_p = log(p)
    log_q = log1p(-p)
    log_choose = lgamma(k + 1.0)
    terms = []
    for j in range(m, k + 1):
        log_term = (
            log_choose
            - lgamma(j + 1.0)
            - lgamma(k - j + 1.0)
            + j * log_p
            + (k - j) * log_q
        )
        terms.append(exp(log_term))
    return min(1.0, fsum(terms))


def chernoff_upper(lam: float, m: float) -> float:
    """Chernoff bound exp(-lam * D(m/lam)) on Pr(Pois(lam) >= m), m > lam."""
    if not (lam > 0.0):
        raise DomainError(f"lam must be positive, got {lam}")
    if not (m > lam):
        raise DomainError(f"Chernoff bound needs m > lam, got m={m}, lam={lam}")
    return min(1.0, exp(-lam * rate_function(m / lam)))


def robbins_lower(lam: float, c: float) -> float:
    """Robbins-Stirling lower bound on the upper tail at threshold c*lam.

    (2 pi c lam)^(-1/2) * exp(-lam D(c) - 1/(12 c lam)); a guaranteed lower
    bound on Pr(Pois(lam) >= m) when evaluated at c = m/lam for integer
    m > lam, since it lower-bounds the single pmf term at m.

    Args:
        lam: Poisson mean (> 0).
        c: Threshold ratio (> 1).
    """
    if not (lam > 0.0):
        raise DomainError(f"lam must be positive, got {lam}")
    if not (c > 1.0):
        raise DomainError(f"Robbins bound needs c > 1, got {c}")
    m = c * lam
    return exp(-lam * rate_function(c) - 1.0 / (12.0 * m)) / sqrt(2.0 * pi * m)


def tail_estimate(lam: float, m: int) -> TailEstimate:
    """Exact tail plus both sandwich bounds at an integer threshold m > lam."""
    _validate_tail_args(lam, m)
    if not (m > lam):
        raise DomainError(
            f"sandwich bounds exist only for m > lam, got m={m}, lam={lam}"
        )
    c = m / lam
    return TailEstimate(
        exact=poisson_tail(lam, m),
        chernoff_upper=chernoff_upper(lam, m),
        robbins_lower=robbins_lower(lam, c),
        log_exact=log_poisson_tail(lam, m),
        exponent=lam * rate_function(c),
    )


def overlap_probability(inp: OverlapInput) -> float:
    """Probability a uniformly random s-subset intersects a fixed t-subset.

    Complement of the hypergeometric zero-intersection term:
    1 - prod_{l=0}^{s-1} (1 - t / (V - l)), accumulated in log space.
    Returns exactly 1.0 when s > V - t (pigeonhole) and 0.0 when either
    list is empty.
    """
    v, t, s = inp.domain_size, inp.person_items, inp.suspicious_items
    if t == 0 or s == 0:
        return 0.0
    if s > v - t:
        return 1.0
    log_miss = 0.0
    for el in range(s):
        log_miss += log1p(-t / (v - el))
    return -expm1(log_miss)


def lecam_bound(k: int, p: float) -> float:
    """Le Cam bound 2 k p^2 on total variation between Bin(k,p) and Pois(kp)."""
    if k < 0 or k != int(k):
        raise DomainError(f"k must be a nonnegative integer, got {k}")
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"p must lie in [0, 1], got {p}")
    return 2.0 * k * p * p


def threshold_for_ratio(lam: float, c: float) -> int:
    """Integer threshold m = ceil(c * lam), robust to float fuzz at integers."""
    if not (lam > 0.0) or not (c > 0.0):
        raise DomainError(f"need lam > 0 and c > 0, got lam={lam}, c={c}")
    return int(ceil(c * lam - 1e-9))


def exact_overlap_fraction(v: int, t: int, s: int) -> float:
    """Exact comb-based overlap probability 1 - C(V-t, s)/C(V, s).

    Integer-combinatorics route; complements overlap_probability as an
    independently computed cross-check for moderate V.
    """
    inp = OverlapInput(domain_size=v, person_items=t, suspicious_items=s)
    if t == 0 or s == 0:
        return 0.0
    if s > v - t:
        return 1.0
    return 1.0 - comb(v - t, s) / comb(v, s)


__all__ += ["threshold_for_ratio", "exact_overlap_fraction"]
