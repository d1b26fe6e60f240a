"""Closed-form asymptotics for sparse connected graph counts and excess
transitions, evaluated in log space at extended precision.

The quantities here are the analytic counterparts of exlab.exact_enum:

* wright_w / rho: the constants w_l and rho_l multiplying the leading
  k^{k+(3l-1)/2} growth of connected (k, k+l) graph counts;
* c_bcm: the uniform Bender-Canfield-McKay-style estimate of c(k, k+l),
  with published correction constants r_1..r_4;
* alpha_approx: the closed approximation of the expected l -> l+1 transition
  count in components of order k;
* lemma2_rhs: the n -> infinity closed form of the transition-count power sum
  (the quantity laplace.power_sum evaluates directly);
* alpha_total_asymptotic: the limit product for alpha_l, which tends to 1;
* v_expected: the (12 l)^{1/3} n^{2/3} law for the expected number of
  vertices that ever sit in an l-component;
* dominance_ratio: the ratio of the two error-term sums whose comparison
  yields the l = o(n^{1/4}) validity threshold.

Every estimate carries the error tag claimed for it, since the truncation
d_l = 1/(2 pi) and the finite-n corrections are invisible in the value itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

import mpmath
from mpmath import mp

from .errors import UsageError
from .logreal import DEFAULT_PRECISION_BITS, LogReal, _wp

__all__ = [
    "LogReal", "DEFAULT_PRECISION_BITS", "WrightConstants", "WRIGHT",
    "AsymptoticEstimate", "ERROR_TAGS", "rho", "wright_w", "c_bcm",
    "alpha_approx", "lemma2_rhs", "alpha_total_asymptotic", "v_expected",
    "dominance_ratio",
]

# ----------------------------------------------------------------------
# constants and estimate container

# The only tags formulas in this package may claim. The d_l truncation makes
# everything built on w_l an O(1/l) statement; the remaining tags record the
# uniformity regimes under which each formula was derived.
TAG_EXACT = "exact"
TAG_INV_L = "O(1/l)"
TAG_L43_N13 = "O(l^{4/3}/n^{1/3})"
TAG_PER_ORDER = ("O(k/n + k^4/n^3 + 1/k + l^3/k^2 + (l/k)^{1/2}"
              " + (l+1)^{1/16}/k^{9/50})")
TAG_BCM_UNIFORM = "uniform 1+o(1) for l = O(k^{1-eps})"
TAG_SPARSE_LIMIT = "1+o(1), l = o(n^{1/4})"

ERROR_TAGS = frozenset({
    TAG_EXACT, TAG_INV_L, TAG_L43_N13, TAG_PER_ORDER, TAG_BCM_UNIFORM,
    TAG_SPARSE_LIMIT,
})


@dataclass(frozen=True)
class WrightConstants:
    """Published correction constants of the connected-count asymptotics.

    r holds r_1..r_4 of the exp(sum r_i l^{i+1}/k^i) factor; d is known only
    to its leading term 1/(2 pi), and w_0 = pi/sqrt(6).
    """

    r: Tuple[Fraction, ...] = (
        Fraction(-1, 2),
        Fraction(701, 2100),
        Fraction(-263, 1050),
        Fraction(538859, 2695000),
    )

    def d_leading(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
        with _wp(precision_bits):
            return 1 / (2 * mpmath.pi)

    def w0(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
        with _wp(precision_bits):
            return mpmath.pi / mpmath.sqrt(6)


WRIGHT = WrightConstants()


@dataclass(frozen=True)
class AsymptoticEstimate:
    """A LogReal value plus the error order claimed for the formula."""

    value: LogReal
    claimed_error_order: str

    def __post_init__(self):
        if self.claimed_error_order not in ERROR_TAGS:
            raise UsageError(
                f"unknown error tag {self.claimed_error_order!r}; "
                f"allowed: {sorted(ERROR_TAGS)}")

    def to_float(self) -> float:
        return self.value.to_float()

    def ratio_to(self, other) -> float:
        if isinstance(other, AsymptoticEstimate):
            other = other.value
        return self.value.ratio_to(other)


# ----------------------------------------------------------------------
# formula internals (log magnitudes as mpf, under working precision)


def _log_wright_w(l: int, bits: int) -> mpmath.mpf:
    # pi * Gamma(l)/Gamma(3l/2) * d * sqrt(8/3) * (27 l/(8 e))^{l/2}
    lf = mpmath.mpf(l)
    return (mpmath.log(mpmath.pi)
            + mpmath.loggamma(lf) - mpmath.loggamma(3 * lf / 2)
            - mpmath.log(2 * mpmath.pi)
            + mpmath.log(mpmath.mpf(8) / 3) / 2
            + (lf / 2) * (mpmath.log(27 * lf / 8) - 1))


def _log_rho(l: int, mode: str, bits: int) -> mpmath.mpf:
    lf = mpmath.mpf(l)
    lead = (mpmath.log(mpmath.mpf(3) / mpmath.pi) / 2
            + (lf / 2) * (1 - mpmath.log(12 * lf)))
    if mode == "leading":
        return lead - mpmath.log(2)
    # via_w replaces the bare 1/2 by w_l/2
    return lead + _log_wright_w(l, bits) - mpmath.log(2)


# ----------------------------------------------------------------------
# operations


def wright_w(l: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """w_l: the constant linking the two spellings of the count asymptotics.

    w_0 = pi/sqrt(6) exactly; for l >= 1 the truncation d_l = 1/(2 pi) leaves
    a relative O(1/l), and w_l -> 1 as l grows.
    """
    if l < 0:
        raise UsageError(f"wright_w needs l >= 0, got {l}")
    if l == 0:
        with _wp(precision_bits):
            lm = mpmath.log(WRIGHT.w0(precision_bits))
        return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_EXACT)
    with _wp(precision_bits):
        lm = _log_wright_w(l, precision_bits)
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_INV_L)


def rho(l: int, mode: str = "leading",
        precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """rho_l = (w_l/2) sqrt(3/pi) (e/12l)^{l/2}; leading mode takes w_l = 1."""
    if l < 1:
        raise UsageError(f"rho needs l >= 1, got {l}")
    if mode not in ("leading", "via_w"):
        raise UsageError(f"rho mode must be 'leading' or 'via_w', got {mode!r}")
    with _wp(precision_bits):
        lm = _log_rho(l, mode, precision_bits)
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_INV_L)


def c_bcm(k: int, l: int, terms: int = 3,
          precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """Asymptotic count of connected (k, k+l) graphs.

    sqrt(3/pi) (w_l/2) (e/12l)^{l/2} k^{k+(3l-1)/2}
        * exp(sum_{i=1}^{terms-2} r_i l^{i+1}/k^i)

    `terms` counts expansion terms the usual way: terms = 2 is the bare
    leading order, each extra term consumes one r_i, and only r_1..r_4 are
    published, so terms is capped at 6.
    """
    if k < 2:
        raise UsageError(f"c_bcm needs k >= 2, got {k}")
    if l < 1:
        raise UsageError(f"c_bcm needs l >= 1, got {l}")
    if terms > 6:
        raise UsageError(f"terms = {terms}: correction constants beyond r_4 "
                         f"are not published")
    if terms < 2:
        raise UsageError(f"terms must be >= 2, got {terms}")
    with _wp(precision_bits):
        kf, lf = mpmath.mpf(k), mpmath.mpf(l)
        # log rho(via_w) is exactly log[sqrt(3/pi) (w_l/2) (e/12l)^{l/2}]
        lm = (_log_rho(l, "via_w", precision_bits)
              + (kf + (3 * lf - 1) / 2) * mpmath.log(kf))
        corr = mpmath.mpf(0)
        for i in range(1, terms - 1):
            ri = WRIGHT.r[i - 1]
            corr += (mpmath.mpf(ri.numerator) / ri.denominator
                     * lf ** (i + 1) / kf ** i)
        lm = lm + corr
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_BCM_UNIFORM)


def alpha_approx(n: int, l: int, k: int,
                 precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """Closed approximation of the expected l -> l+1 transitions at order k.

    (1/2) rho_l k^{(3l+1)/2} n^{-(l+1)} exp(-k^3/24n^2 + lk^2/8n^2 + lk/2n).
    """
    if l < 1:
        raise UsageError(f"alpha_approx needs l >= 1, got {l}")
    if not (1 <= k <= n):
        raise UsageError(f"alpha_approx needs 1 <= k <= n, got k={k}, n={n}")
    with _wp(precision_bits):
        nf, kf, lf = mpmath.mpf(n), mpmath.mpf(k), mpmath.mpf(l)
        lm = (_log_rho(l, "leading", precision_bits) - mpmath.log(2)
              + ((3 * lf + 1) / 2) * mpmath.log(kf)
              - (lf + 1) * mpmath.log(nf)
              - kf ** 3 / (24 * nf ** 2)
              + lf * kf ** 2 / (8 * nf ** 2)
              + lf * kf / (2 * nf))
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_PER_ORDER)


def lemma2_rhs(l: int, n: int,
               precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """n -> infinity closed form of the transition power sum.

    2^{a+1} 3^{(a-2)/3} Gamma((a+1)/3) n^{2(a+1)/3} with a = (3l+1)/2. The
    finite-n gap is dominated by the dropped l-terms of the exponent, of
    relative size ~ 2 a^{1/3} l / n^{1/3}.
    """
    if l < 0:
        raise UsageError(f"lemma2_rhs needs l >= 0, got {l}")
    if n < 1:
        raise UsageError(f"lemma2_rhs needs n >= 1, got {n}")
    with _wp(precision_bits):
        nf, lf = mpmath.mpf(n), mpmath.mpf(l)
        a = (3 * lf + 1) / 2
        lm = ((a + 1) * mpmath.log(2)
              + ((a - 2) / 3) * mpmath.log(3)
              + mpmath.loggamma((a + 1) / 3)
              + (2 * (a + 1) / 3) * mpmath.log(nf))
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_L43_N13)


def alpha_total_asymptotic(l: int,
                           precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """Limit of alpha_l: (rho_l/2) 2^{(3l+3)/2} 3^{(l-1)/2} Gamma((l+1)/2).

    Analytically this product cancels to 1 + O(1/l); evaluating it at growing
    l is the cancellation check the acceptance suite runs.
    """
    if l < 1:
        raise UsageError(f"alpha_total_asymptotic needs l >= 1, got {l}")
    with _wp(precision_bits):
        lf = mpmath.mpf(l)
        lm = (_log_rho(l, "leading", precision_bits) - mpmath.log(2)
              + ((3 * lf + 3) / 2) * mpmath.log(2)
              + ((lf - 1) / 2) * mpmath.log(3)
              + mpmath.loggamma((lf + 1) / 2))
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_INV_L)


def v_expected(l: int, n: int,
               precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticEstimate:
    """Expected number of vertices ever in an l-component: (12l)^{1/3} n^{2/3}."""
    if l < 1:
        raise UsageError(f"v_expected needs l >= 1, got {l}")
    if n < 1:
        raise UsageError(f"v_expected needs n >= 1, got {n}")
    with _wp(precision_bits):
        lm = (mpmath.log(12 * mpmath.mpf(l)) / 3
              + 2 * mpmath.log(mpmath.mpf(n)) / 3)
    return AsymptoticEstimate(LogReal(1, lm, precision_bits), TAG_SPARSE_LIMIT)


def dominance_ratio(l: int, n: int) -> float:
    """Size of the neglected error sum relative to the kept one.

    2^4 3^{4/3} Gamma((l+1)/2 + 4/3) / Gamma((l+1)/2) / n^{1/3}, which scales
    as l^{4/3}/n^{1/3}: negligible exactly when l = o(n^{1/4}).
    """
    if l < 1:
        raise UsageError(f"dominance_ratio needs l >= 1, got {l}")
    if n < 2:
        raise UsageError(f"dominance_ratio needs n >= 2, got {n}")
    import math
    x = (l + 1) / 2
    return (16.0 * 3.0 ** (4 / 3)
            * math.exp(math.lgamma(x + 4 / 3) - math.lgamma(x))
            / n ** (1 / 3))
