"""The conjectured floor for #Sigma(A) and the theorem thresholds"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict

import numpy as np

from ..errors import EvenPrimeUnsupportedError, SizeOutOfRangeError
from .certificate import BoundCertificate, Rule


def conjecture_floor(p: int, m: int, n: int) -> int:
    """
    Conjectured minimum of #Sigma(A) over valid multisets of size n in Z_p^m

    With n = qp + k (0 <= k <= p-1): (k+2)p^q when k <= p-3, p^(q+1) - 1 when
    k = p-2, and p^(q+1) when k = p-1. Below p the answer is n + 1.

    Raises:
        EvenPrimeUnsupportedError: If p = 2
        SizeOutOfRangeError: Unless 0 <= n <= mp - 1
    """
    if p == 2:
        raise EvenPrimeUnsupportedError("conjecture_floor")
    if not 0 <= n <= m * p - 1:
        raise SizeOutOfRangeError(f"no valid multiset of size {n} exists in Z_{p}^{m}")
    if n < p:
        return n + 1
    q, k = divmod(n, p)
    if k <= p - 3:
        return (k + 2) * p ** q
    if k == p - 2:
        return p ** (q + 1) - 1
    return p ** (q + 1)


def conjecture_floor_certificate(p: int, m: int, n: int) -> BoundCertificate:
    """The floor as a (non-theorem) certificate"""
    q, k = divmod(n, p)
    return BoundCertificate(
        Rule.CONJECTURE_FLOOR, conjecture_floor(p, m, n), {"n": n, "q": q, "k": k}
    )


def harmonic(k: int) -> Fraction:
    """H_k = 1 + 1/2 + ... + 1/k, exactly"""
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def p_min_large_p(k: int) -> int:
    """ceil(4(k+1)^2 H_k - 2k), computed in exact rational arithmetic"""
    return math.ceil(4 * (k + 1) ** 2 * harmonic(k) - 2 * k)


def k_max_small_k(p: int) -> int:
    """
    Largest k with k <= sqrt(p / (2 ln p + 1)) - 1

    The float estimate is corrected by comparing (k+1)^2 (2 ln p + 1) with p.
    """
    if p < 2:
        return -1
    denom = 2 * math.log(p) + 1
    k = math.floor(math.sqrt(p / denom)) - 1
    while (k + 2) ** 2 * denom <= p:
        k += 1
    while k >= 0 and (k + 1) ** 2 * denom > p:
        k -= 1
    return k


@dataclass(frozen=True)
class ThresholdReport:
    """Hypothesis thresholds of the large-p and small-k theorems for given (p, k)"""

    p: int
    k: int
    harmonic_Hk: Fraction
    p_min_large_p_threshold: int
    k_max_small_k_threshold: int
    large_p_hypothesis: bool
    small_k_hypothesis: bool
    harmonic_upper: float
    harmonic_bound_holds: bool
    log_base: str = "e"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "k": self.k,
            "harmonic_Hk": f"{self.harmonic_Hk.numerator}/{self.harmonic_Hk.denominator}",
            "p_min_large_p_threshold": self.p_min_large_p_threshold,
            "k_max_small_k_threshold": self.k_max_small_k_threshold,
            "large_p_hypothesis": self.large_p_hypothesis,
            "small_k_hypothesis": self.small_k_hypothesis,
            "harmonic_upper": self.harmonic_upper,
            "harmonic_bound_holds": self.harmonic_bound_holds,
            "log_base": self.log_base,
        }


def thresholds(p: int, k: int) -> ThresholdReport:
    """
    Threshold report for the pair (p, k), k >= 1

    Logarithms are natural. H_k <= gamma + ln(k+1) is checked with a 1e-12
    tolerance.
    """
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    h = harmonic(k)
    p_min = p_min_large_p(k)
    k_max = k_max_small_k(p)
    upper = float(np.euler_gamma) + math.log(k + 1)
    return ThresholdReport(
        p=p,
        k=k,
        harmonic_Hk=h,
        p_min_large_p_threshold=p_min,
        k_max_small_k_threshold=k_max,
        large_p_hypothesis=k >= 2 and p >= p_min,
        small_k_hypothesis=2 <= k <= k_max,
        harmonic_upper=upper,
        harmonic_bound_holds=float(h) <= upper + 1e-12,
    )
