"""Saddle-point side of the power-sum estimate.

The object of interest is

    S(l, n) = sum_{k=1}^{n} k^a exp(-k^3/24n^2 + l k^2/8n^2 + l k/2n),

with a = (3l+1)/2.  Substituting k = 2 n^{2/3} e^z turns the sum into
2^{a+1} n^{2(a+1)/3} * I up to Euler-Maclaurin corrections, where

    I = int e^{h(z)} dz,
    h(z) = -e^{3z}/3 + (l / 2n^{2/3}) e^{2z} + (l / n^{1/3}) e^z + (a+1) z.

In u = e^z the stationarity condition h'(z) = 0 is a cubic with exactly
one positive root (one sign change), so h has a single interior maximum
z0 and Laplace's method gives I ~ sqrt(-2 pi / h''(z0)) e^{h(z0)}.

Three independent evaluations of the same quantity live here: the
Laplace estimate, direct quadrature of I, and the literal sum.  The
test suite pits them against each other.
"""

from __future__ import annotations

import dataclasses
import math

import mpmath
import numpy as np

from .errors import NumericalError, UsageError
from .logreal import DEFAULT_PRECISION_BITS, LogReal

__all__ = [
    "SaddleProblem",
    "SaddleSolution",
    "h_eval",
    "solve_saddle",
    "laplace_estimate",
    "integral_quadrature",
    "power_sum",
]

_GUARD_BITS = 16
_NEWTON_MAX_ITER = 120
_MAX_STEP = 2.0            # Newton damping; the root is O(1) from the start point
_WINDOW_DOUBLINGS = 7
_WINDOW_REL_TOL = mpmath.mpf("1e-12")

# power_sum runs on float64; 48 bits understates the 53-bit significand a
# little to absorb accumulation error, so the 2^-24 budget stays honest.
_FLOAT64_BITS = 48
_DIRECT_LIMIT = 10**7
_SAMPLE_BUDGET = 1 << 22   # panels per strided pass
_CHUNK = 1 << 20
_EDGE_DROP = 40.0          # required log-drop of the summand at the window edge
_TAIL_REL = 1e-10


@dataclasses.dataclass(frozen=True)
class SaddleProblem:
    """Parameters (l, n) together with the derived exponent a = (3l+1)/2."""

    l: int
    n: float
    precision_bits: int = DEFAULT_PRECISION_BITS
    a: float = dataclasses.field(init=False)

    def __post_init__(self) -> None:
        if self.l < 0:
            raise UsageError(f"excess must be >= 0, got {self.l}")
        if self.n < 1:
            raise UsageError(f"order must be >= 1, got {self.n}")
        if self.precision_bits < 8:
            raise UsageError("precision_bits must be at least 8")
        object.__setattr__(self, "a", (3 * self.l + 1) / 2)


@dataclasses.dataclass(frozen=True)
class SaddleSolution:
    """Root data: z0 with h(z0) and h''(z0) < 0, residual = |h'(z0)|."""

    z0: mpmath.mpf
    h_at_z0: mpmath.mpf
    h2_at_z0: mpmath.mpf
    residual: mpmath.mpf


def h_eval(z, p: SaddleProblem):
    """Evaluate (h, h', h'') at z, working at p.precision_bits.

    h(z) = -e^{3z}/3 + (l/2n^{2/3}) e^{2z} + (l/n^{1/3}) e^z + (a+1) z.
    """
    with mpmath.workprec(p.precision_bits + _GUARD_BITS):
        zz = mpmath.mpf(z) if not isinstance(z, mpmath.mpf) else z
        if not mpmath.isfinite(zz):
            raise UsageError(f"h needs a finite argument, got {z!r}")
        n13 = mpmath.cbrt(mpmath.mpf(p.n))
        c2 = mpmath.mpf(p.l) / (n13 * n13)   # multiplies e^{2z} in h'
        c1 = mpmath.mpf(p.l) / n13
        a1 = mpmath.mpf(p.a) + 1
        e1 = mpmath.exp(zz)
        e2 = e1 * e1
        e3 = e2 * e1
        h = -e3 / 3 + c2 * e2 / 2 + c1 * e1 + a1 * zz
        h1 = -e3 + c2 * e2 + c1 * e1 + a1
        h2 = -3 * e3 + 2 * c2 * e2 + c1 * e1
        if not (mpmath.isfinite(h) and mpmath.isfinite(h1) and mpmath.isfinite(h2)):
            raise NumericalError(f"h overflowed at z = {float(zz)!r}")
    return h, h1, h2


def solve_saddle(p: SaddleProblem) -> SaddleSolution:
    """Locate the unique maximum z0 of h by damped Newton on h'.

    Start point (1/3) log(a+1) is the exact root of the n -> infinity
    cubic -u^3 + (a+1) = 0, and the finite-n root sits within
    O(l^{1/3}/n^{1/3}) of it, so convergence is fast.  Tolerance is
    |h'| < 2^(-precision_bits/2).
    """
    if p.l < 1:
        raise UsageError("saddle point requires l >= 1")
    with mpmath.workprec(p.precision_bits + _GUARD_BITS):
        tol = mpmath.power(2, -mpmath.mpf(p.precision_bits) / 2)
        z = mpmath.log(mpmath.mpf(p.a) + 1) / 3
        h1 = None
        for _ in range(_NEWTON_MAX_ITER):
            _, h1, h2 = h_eval(z, p)
            if abs(h1) <= tol:
                break
            if h2 == 0:
                raise NumericalError("flat h'' encountered during saddle search")
            step = -h1 / h2
            if abs(step) > _MAX_STEP:
                step = mpmath.sign(step) * _MAX_STEP
            z = z + step
        else:
            raise NumericalError(
                f"saddle Newton stalled at |h'| = {float(abs(h1)):.3e} "
                f"for l={p.l}, n={p.n}"
            )
        h0, h1, h2 = h_eval(z, p)
        if h2 >= 0:
            raise NumericalError("saddle search landed on a non-maximum")
    return SaddleSolution(z0=z, h_at_z0=h0, h2_at_z0=h2, residual=abs(h1))


def laplace_estimate(p: SaddleProblem, solution: SaddleSolution | None = None) -> LogReal:
    """Leading Laplace approximation sqrt(-2 pi / h''(z0)) e^{h(z0)}."""
    sol = solution if solution is not None else solve_saddle(p)
    with mpmath.workprec(p.precision_bits + _GUARD_BITS):
        lm = (mpmath.log(2 * mpmath.pi) - mpmath.log(-sol.h2_at_z0)) / 2 + sol.h_at_z0
    return LogReal.from_log(lm, 1, p.precision_bits)


def integral_quadrature(p: SaddleProblem, solution: SaddleSolution | None = None) -> LogReal:
    """Adaptive quadrature of int e^{h(z)} dz, rescaled through the peak.

    Integrates e^{h(z) - h(z0)} over [z0 - W, z0 + W] with the window
    W = max(10, 8/sqrt(-h''(z0))) doubled until the result is stable to
    a relative 1e-12, then restores the e^{h(z0)} factor in log space.
    """
    if p.l < 1:
        raise UsageError("quadrature requires l >= 1")
    sol = solution if solution is not None else solve_saddle(p)
    with mpmath.workprec(p.precision_bits + _GUARD_BITS):
        z0 = sol.z0
        h0 = sol.h_at_z0
        width = max(mpmath.mpf(10), 8 / mpmath.sqrt(-sol.h2_at_z0))

        def integrand(z):
            h, _, _ = h_eval(z, p)
            return mpmath.exp(h - h0)

        value = None
        prev = None
        for _ in range(_WINDOW_DOUBLINGS):
            value = mpmath.quad(integrand, [z0 - width, z0, z0 + width])
            if prev is not None and abs(value - prev) <= _WINDOW_REL_TOL * abs(value):
                break
            prev = value
            width *= 2
        else:
            raise NumericalError("window doubling did not stabilize the integral")
        lm = h0 + mpmath.log(value)
    return LogReal.from_log(lm, 1, p.precision_bits)


def _log_term(x, l, n, a):
    """log of the summand at (possibly non-integer) k = x; numpy-friendly."""
    inv_n2 = 1.0 / (float(n) * float(n))
    return (
        a * np.log(x)
        - x * x * x * (inv_n2 / 24.0)
        + l * x * x * (inv_n2 / 8.0)
        + l * x / (2.0 * float(n))
    )


def _log_term_d1(x, l, n, a):
    inv_n2 = 1.0 / (float(n) * float(n))
    return a / x - x * x * (inv_n2 / 8.0) + l * x * (inv_n2 / 4.0) + l / (2.0 * float(n))


def _log_term_d2(x, l, n, a):
    inv_n2 = 1.0 / (float(n) * float(n))
    return -a / (x * x) - (x - l) * (inv_n2 / 4.0)


def _peak_location(l, n, a) -> float:
    # d1 is strictly decreasing past x = l, positive at 1, negative for
    # large x: plain bisection is deterministic and cheap
    lo = 1.0
    hi = 4.0 * (a + l + 2.0) ** (1.0 / 3.0) * float(n) ** (2.0 / 3.0) + 16.0
    while _log_term_d1(hi, l, n, a) > 0.0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _log_term_d1(mid, l, n, a) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * hi:
            break
    return 0.5 * (lo + hi)


def _lse_merge(m1: float, s1: float, m2: float, s2: float):
    if s1 == 0.0:
        return m2, s2
    if s2 == 0.0:
        return m1, s1
    if m1 >= m2:
        return m1, s1 + s2 * math.exp(m2 - m1)
    return m2, s2 + s1 * math.exp(m1 - m2)


def _window_sum_log(lo: int, hi: int, panels: int, l, n, a) -> float:
    """log of sum_{k=lo}^{hi} term(k) by composite midpoint on [lo-1/2, hi+1/2].

    With panels == hi-lo+1 the midpoints are exactly the integers and the
    result is the exact sum; with fewer panels it is a midpoint rule on
    the smooth extension, whose relative error is O((step/sigma)^2) with
    sigma the Gaussian width of the peak.  Panel budgets keep step well
    below sigma for every n this module accepts.
    """
    count = hi - lo + 1
    panels = int(min(panels, count))
    step = count / panels
    log_step = math.log(step)
    base = lo - 0.5
    acc_m, acc_s = -math.inf, 0.0
    for start in range(0, panels, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, panels), dtype=np.float64)
        x = base + (j + 0.5) * step
        y = _log_term(x, l, n, a) + log_step
        m = float(y.max())
        s = float(np.exp(y - m).sum())
        acc_m, acc_s = _lse_merge(acc_m, acc_s, m, s)
    return acc_m + math.log(acc_s)


def _geometric_tail_log(k_first: int, k_next: int, l, n, a) -> float:
    """Upper bound on log of the tail starting at k_first, stepping toward k_next.

    Valid because the summand is log-concave on [1, n] in this regime, so
    successive ratios only shrink away from the peak.
    """
    y1 = float(_log_term(float(k_first), l, n, a))
    y2 = float(_log_term(float(k_next), l, n, a))
    rho = math.exp(y2 - y1)
    if rho >= 1.0:
        raise NumericalError("tail ratio not contracting; window too narrow")
    return y1 - math.log1p(-rho)


def power_sum(p: SaddleProblem) -> LogReal:
    """sum_{k=1}^{n} k^a exp(-k^3/24n^2 + l k^2/8n^2 + l k/2n) as a LogReal.

    Direct float64 log-sum-exp for n <= 10^7.  Beyond that the summand is
    sampled on a window around its peak (stride-adaptive composite that
    reduces to the exact sum when the panel budget covers the window) and
    the two tails are replaced by geometric-series bounds, checked to sit
    below a relative 1e-10 before being folded in.  Either way the result
    is float64 work, so it is tagged at 48 bits rather than at
    p.precision_bits.
    """
    l, a = p.l, p.a
    n = int(p.n)
    if n != p.n:
        raise UsageError(f"power sum needs an integer order, got {p.n!r}")

    if n <= _DIRECT_LIMIT:
        total = _window_sum_log(1, n, n, l, n, a)
        return LogReal.from_log(mpmath.mpf(total), 1, _FLOAT64_BITS)

    x_peak = _peak_location(l, n, a)
    sigma = (-_log_term_d2(x_peak, l, n, a)) ** -0.5
    lt_peak = float(_log_term(x_peak, l, n, a))
    half = math.sqrt(2.0 * _EDGE_DROP) * sigma
    lo = hi = None
    for _ in range(8):
        lo = max(1, int(x_peak - half))
        hi = min(n, int(x_peak + half) + 1)
        ok_lo = lo == 1 or lt_peak - float(_log_term(float(lo), l, n, a)) >= _EDGE_DROP
        ok_hi = hi == n or lt_peak - float(_log_term(float(hi), l, n, a)) >= _EDGE_DROP
        if ok_lo and ok_hi:
            break
        half *= 1.5
    else:
        raise NumericalError("could not isolate the summand peak")

    window = _window_sum_log(lo, hi, _SAMPLE_BUDGET, l, n, a)
    acc_m, acc_s = window, 1.0
    tails = []
    if lo > 1:
        tails.append(
            _geometric_tail_log(lo - 1, lo - 2, l, n, a)
            if lo >= 3
            else float(_log_term(1.0, l, n, a))
        )
    if hi < n:
        tails.append(
            _geometric_tail_log(hi + 1, hi + 2, l, n, a)
            if hi + 2 <= n
            else float(_log_term(float(n), l, n, a))
        )
    for t in tails:
        if t > window + math.log(_TAIL_REL):
            raise NumericalError("tail bound exceeds tolerance; window too narrow")
        acc_m, acc_s = _lse_merge(acc_m, acc_s, t, 1.0)
    return LogReal.from_log(mpmath.mpf(acc_m + math.log(acc_s)), 1, _FLOAT64_BITS)
