"""Exact counting: connected graphs by edge count and expected excess
transitions in the evolving random graph, all in integer/rational arithmetic.

An l-component is a connected component whose excess (edges minus vertices)
is l; trees have excess -1. As edges of K_n arrive in uniformly random order,
a transition l -> l+1 happens each time an edge lands inside an l-component.
alpha_exact(n, l, k) is the expected number of such transitions that occur in
components of order k over the whole evolution; it has the closed form

    (n)_k * ((k+l)!/k!) * c(k, k+l) * (C(k,2) - k - l) / (A)_{k+l+1}

with A = nk - k(k+1)/2 and c(k, m) the number of connected labelled graphs
with k vertices and m edges. Everything here is exact; Fractions in, Fractions
out. Asymptotic counterparts live in exlab.asymptotics.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

import gmpy2

from .errors import ResourceLimitError, UsageError

# Exact counts are plain Python ints (arbitrary precision); exact expectations
# are stdlib Fractions, which already guarantee canonical form.
Count = int
ExactRational = Fraction

CACHE_HEADER = "exlab-ctable v1"


def total_graph_count(k: int, m: int) -> Count:
    """Number of labelled graphs with k vertices and m edges: C(C(k,2), m)."""
    if k < 0 or m < 0:
        raise UsageError(f"total_graph_count needs k, m >= 0, got ({k}, {m})")
    return math.comb(k * (k - 1) // 2, m)


class ConnectedCountTable:
    """Memoized table of c(k, m), the connected labelled graph counts.

    Two fill strategies, cross-checked in the test suite:

    * full rows by root-component inclusion-exclusion,
          c(k,m) = g(k,m) - sum_{j<k} C(k-1,j-1) sum_i c(j,i) g(k-j, m-i),
      fine for small k but needs every smaller row densely, so it cannot
      reach large k;

    * an excess-band recurrence obtained by double counting (graph, edge)
      pairs: removing an edge from a connected (k, m) graph either leaves it
      connected or splits it into exactly two connected parts, giving
          m c(k,m) = (C(k,2) - m + 1) c(k, m-1)
                     + (1/2) sum_{k1+k2=k} sum_{m1+m2=m-1}
                           C(k,k1) k1 k2 c(k1,m1) c(k2,m2).
      Producing excess l touches only excesses <= l, so the sparse band
      c(k, k+l) for l <= L fills in O(k^2 L^2) big-int multiplies and scales
      to k in the thousands.

    Entries are exact ints. max_k caps the table size; raising it is the
    caller's explicit choice.
    """

    # auto-fill thresholds for plain connected_count() calls
    _FULL_ROW_LIMIT = 24
    _AUTO_BAND_EXCESS = 16
    _OP_BUDGET = 2 * 10**8

    def __init__(self, max_k: int = 400):
        if max_k < 1:
            raise UsageError(f"max_k must be >= 1, got {max_k}")
        self.max_k = max_k
        self._full: Dict[Tuple[int, int], int] = {}
        self._full_rows_done = 0
        # band state: _band[k] is a list of gmpy2.mpz indexed by l+1, l in
        # [-1, _band_excess]; row index 0 unused
        self._band: List[Optional[list]] = [None]
        self._band_k = 0
        self._band_excess = -2

    # ------------------------------------------------------------------
    # queries

    def connected_count(self, k: int, m: int) -> Count:
        """Exact number of connected labelled graphs with k vertices, m edges."""
        if k < 1 or m < 0:
            raise UsageError(f"connected_count needs k >= 1, m >= 0, got ({k}, {m})")
        if k > self.max_k:
            raise ResourceLimitError(
                f"k = {k} exceeds this table's max_k = {self.max_k}; "
                f"construct ConnectedCountTable(max_k={k}) to allow it")
        full = k * (k - 1) // 2
        if m > full or (m < k - 1):
            return 0
        l = m - k
        if k <= self._band_k and l <= self._band_excess:
            return int(self._band[k][l + 1])
        if (k, m) in self._full:
            return self._full[(k, m)]
        # fill on demand
        if k <= self._FULL_ROW_LIMIT:
            self._fill_full_rows(k)
            return self._full[(k, m)]
        if l <= max(self._AUTO_BAND_EXCESS, self._band_excess):
            self.ensure_band(k, max(l, 0))
            return int(self._band[k][l + 1])
        raise ResourceLimitError(
            f"c({k}, {m}) is outside the automatic fill region (excess {l}); "
            f"call ensure_band({k}, {l}) explicitly if the cost is acceptable")

    def cayley_check(self, k: int) -> bool:
        """True iff the stored tree count matches k^(k-2)."""
        return self.connected_count(k, k - 1) == k ** (k - 2) if k >= 2 else True

    # ------------------------------------------------------------------
    # full-row fill (root-component inclusion-exclusion)

    def _fill_full_rows(self, up_to_k: int) -> None:
        for k in range(self._full_rows_done + 1, up_to_k + 1):
            full = k * (k - 1) // 2
            for m in range(0, full + 1):
                self._full[(k, m)] = self._root_component_entry(k, m)
            self._full_rows_done = k

    def _root_component_entry(self, k: int, m: int) -> int:
        if k == 1:
            return 1 if m == 0 else 0
        if m < k - 1:
            return 0
        total = total_graph_count(k, m)
        # subtract graphs where vertex 1's component has j < k vertices
        for j in range(1, k):
            rest = k - j
            rest_full = rest * (rest - 1) // 2
            choose = math.comb(k - 1, j - 1)
            acc = 0
            for i in range(j - 1, min(j * (j - 1) // 2, m) + 1):
                if m - i > rest_full:
                    continue
                cji = self._full[(j, i)]
                if cji:
                    acc += cji * math.comb(rest_full, m - i)
            total -= choose * acc
        return total

    # ------------------------------------------------------------------
    # band fill (edge-removal double counting)

    def ensure_band(self, max_k: int, max_excess: int) -> None:
        """Fill c(k, k+l) for all k <= max_k, -1 <= l <= max_excess."""
        if max_k > self.max_k:
            raise ResourceLimitError(
                f"ensure_band(max_k={max_k}) exceeds table max_k = {self.max_k}")
        max_excess = max(max_excess, 0)
        if max_k <= self._band_k and max_excess <= self._band_excess:
            return
        L = max(max_excess, self._band_excess)
        K = max(max_k, self._band_k)
        est_ops = (K * K // 2) * ((L + 2) * (L + 3) // 2)
        if est_ops > self._OP_BUDGET:
            raise ResourceLimitError(
                f"band fill to (k={K}, l={L}) prices at ~{est_ops:.1e} big-int "
                f"multiplies, over the {self._OP_BUDGET:.0e} budget")
        self._band = self._build_band(K, L)
        self._band_k, self._band_excess = K, L

    @staticmethod
    def _build_band(K: int, L: int) -> list:
        mpz = gmpy2.mpz
        width = L + 2  # slots for l = -1 .. L
        rows: list = [None] * (K + 1)
        rows[1] = [mpz(1)] + [mpz(0)] * (L + 1)
        zero = mpz(0)
        for n in range(2, K + 1):
            binom = [mpz(1)] * (n + 1)
            for i in range(1, n + 1):
                binom[i] = binom[i - 1] * (n - i + 1) // i
            # conv[j] = sum over ordered splits of C(n,k1) k1 k2 c1 c2 with
            # (l1+1) + (l2+1) = j; j = l+1 where l = l1+l2+1 is the excess
            # reached after the joining edge is put back
            conv = [zero] * width
            for k1 in range(1, n):
                k2 = n - k1
                r1, r2 = rows[k1], rows[k2]
                w = binom[k1] * k1 * k2
                for j1 in range(width):
                    v1 = r1[j1]
                    if v1:
                        wv1 = w * v1
                        for j2 in range(width - j1):
                            v2 = r2[j2]
                            if v2:
                                conv[j1 + j2] += wv1 * v2
            row = [zero] * width
            full = n * (n - 1) // 2
            prev = zero
            for j in range(width):
                m = n + (j - 1)
                if m > full:
                    prev = zero
                    continue
                tot = (full - m + 1) * prev + conv[j] // 2
                row[j] = tot // m
                prev = row[j]
            rows[n] = row
        return rows

    # ------------------------------------------------------------------
    # cache file

    def save_cache(self, fh: TextIO) -> int:
        """Write all materialized entries; returns the record count."""
        fh.write(CACHE_HEADER + "\n")
        written = 0
        for (k, m), c in sorted(self._full.items()):
            fh.write(f"{k} {m} {c}\n")
            written += 1
        for k in range(1, self._band_k + 1):
            row = self._band[k]
            for j, c in enumerate(row):
                m = k + (j - 1)
                if (k, m) not in self._full and m >= 0:
                    fh.write(f"{k} {m} {c}\n")
                    written += 1
        return written

    def load_cache(self, fh: TextIO) -> int:
        """Merge records from a cache stream; returns the record count."""
        header = fh.readline().rstrip("\n")
        if header != CACHE_HEADER:
            raise UsageError(f"bad cache header {header!r}, expected {CACHE_HEADER!r}")
        loaded = 0
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 3:
                raise UsageError(f"malformed cache record: {line!r}")
            k, m, c = int(parts[0]), int(parts[1]), int(parts[2])
            self._full[(k, m)] = c
            loaded += 1
        return loaded


_DEFAULT_TABLE = ConnectedCountTable()


def connected_count(k: int, m: int, table: Optional[ConnectedCountTable] = None) -> Count:
    """c(k, m) through the shared default table (max_k = 400)."""
    return (table or _DEFAULT_TABLE).connected_count(k, m)


# ----------------------------------------------------------------------
# exact expected transition counts


def _check_alpha_domain(n: int, l: int, k: int) -> None:
    if k < 1 or k > n:
        raise UsageError(f"need 1 <= k <= n, got k={k}, n={n}")
    if l < -1:
        raise UsageError(f"need l >= -1, got l={l}")


def alpha_exact(n: int, l: int, k: int,
                table: Optional[ConnectedCountTable] = None) -> ExactRational:
    """Expected number of l -> l+1 transitions in components of order k.

    Exact rational. Zero whenever an l-component of order k has no free
    internal pair (C(k,2) - k - l <= 0), no connected graph realizes (k, k+l),
    or the remaining-slot falling factorial would run out (A < k+l+1).
    """
    _check_alpha_domain(n, l, k)
    non_edges = k * (k - 1) // 2 - k - l
    if non_edges <= 0:
        return Fraction(0)
    c = connected_count(k, k + l, table)
    if c == 0:
        return Fraction(0)
    A = n * k - k * (k + 1) // 2
    if A - (k + l + 1) < 0:
        return Fraction(0)
    num = math.perm(n, k) * c * non_edges
    den = math.perm(A, k + l + 1)
    if l >= 0:
        num *= math.perm(k + l, l)  # (k+l)!/k!
    else:
        den *= k  # (k-1)!/k! = 1/k
    return Fraction(num, den)


def alpha_exact_via_beta(n: int, l: int, k: int,
                         table: Optional[ConnectedCountTable] = None) -> ExactRational:
    """Same expectation through the Beta-integral form.

    C(n,k) * c(k,k+l) * (C(k,2)-k-l) * B(k+l+1, M), with
    M = (n-k)k + C(k,2) - k - l and B the exact Beta function on integers.
    Must equal alpha_exact on the whole domain (property-tested).
    """
    _check_alpha_domain(n, l, k)
    non_edges = k * (k - 1) // 2 - k - l
    if non_edges <= 0:
        return Fraction(0)
    c = connected_count(k, k + l, table)
    if c == 0:
        return Fraction(0)
    M = (n - k) * k + k * (k - 1) // 2 - k - l
    if M < 1:
        return Fraction(0)
    # B(a, b) = (a-1)! (b-1)! / (a+b-1)! with a = k+l+1:
    # (k+l)! / ( (M+k+l)(M+k+l-1)...M ), a falling factorial of length a
    beta = Fraction(math.factorial(k + l), math.perm(M + k + l, k + l + 1))
    return math.comb(n, k) * c * non_edges * beta


def alpha_total_exact(n: int, l: int,
                      table: Optional[ConnectedCountTable] = None) -> ExactRational:
    """alpha_l for the finite process: sum of alpha_exact over k = 1..n."""
    if n < 1:
        raise UsageError(f"need n >= 1, got {n}")
    if l < -1:
        raise UsageError(f"need l >= -1, got l={l}")
    tab = table or _DEFAULT_TABLE
    if n > tab._FULL_ROW_LIMIT and l <= tab._AUTO_BAND_EXCESS:
        tab.ensure_band(min(n, tab.max_k), max(l, 0))
    total = Fraction(0)
    for k in range(1, n + 1):
        total += alpha_exact(n, l, k, tab)
    return total


# ----------------------------------------------------------------------
# brute-force oracle


_BRUTE_LIMIT = 6
_brute_cache: Dict[int, Dict[int, Fraction]] = {}


def _replay_all_orderings(n: int) -> Dict[int, Fraction]:
    """Average l -> l+1 transition counts over every edge ordering of K_n.

    Literal enumeration: every permutation of the C(n,2) edges is replayed
    through a tiny merge-find state. Exact by construction.
    """
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    nedges = len(edges)
    max_excess = nedges - n + 1
    totals = [0] * (max_excess + 2)  # index l+1
    for perm in itertools.permutations(edges):
        label = list(range(n))
        size = [1] * n
        excess = [-1] * n
        for (u, v) in perm:
            lu = label[u]
            lv = label[v]
            if lu == lv:
                e = excess[lu]
                totals[e + 1] += 1
                excess[lu] = e + 1
            else:
                if size[lu] < size[lv]:
                    lu, lv = lv, lu
                for w in range(n):
                    if label[w] == lv:
                        label[w] = lu
                size[lu] += size[lv]
                excess[lu] += excess[lv] + 1
    denom = math.factorial(nedges)
    return {l - 1: Fraction(totals[l], denom) for l in range(len(totals))}


def brute_force_alpha(n: int, l: int) -> ExactRational:
    """alpha_l by replaying all C(n,2)! edge orderings of K_n.

    The oracle the analytic chain is checked against. Enumeration is cached
    per n, so asking for several l values costs one pass. n is capped at 6 by
    precondition; note 6 already means 15! ~ 1.3e12 orderings, beyond practical
    patience, and 5 (10! = 3628800) is the workable maximum.
    """
    if n < 2:
        raise UsageError(f"need n >= 2, got {n}")
    if n > _BRUTE_LIMIT:
        raise ResourceLimitError(
            f"brute_force_alpha enumerates C(n,2)! orderings; n = {n} > {_BRUTE_LIMIT}")
    if l < -1:
        raise UsageError(f"need l >= -1, got l={l}")
    if n not in _brute_cache:
        _brute_cache[n] = _replay_all_orderings(n)
    return _brute_cache[n].get(l, Fraction(0))
