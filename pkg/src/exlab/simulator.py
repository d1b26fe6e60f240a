"""Monte Carlo engine for the uniform edge process on the complete graph.

Model reduction: attach i.i.d. continuous arrival times to the C(n,2)
edges and only the arrival ORDER matters for anything counted here, and
that order is a uniform random permutation.  So the simulator never
touches continuous time; it replays a random permutation of E(K_n)
through a union-find forest that stores order and excess (edges minus
vertices) per component root.

Bookkeeping per tracked excess value l:
  transitions[l]        internal edges landing in a component of excess l
                        (the l -> l+1 events)
  transition_orders[l]  histogram of the component order at those events
  V[l]                  vertices whose component ever attains excess
                        exactly l; a vertex is counted at the first event
                        that puts it in an excess-l component
  V_max[l]              largest component order ever observed at excess l

The incremental V rule: an event that produces a component of excess
e_new adds the sizes of the merging sides whose excess was not already
e_new.  Per-vertex excess never decreases, so this counts every vertex
exactly once per attained excess value and never double counts.

A run may stop as soon as the graph is connected with excess beyond
l_stop: every later edge is internal to the unique component, whose
excess only grows, so no tracked event is lost.

This file is the reference engine; _kernels.py holds the jitted twin.
Both consume their generator identically and the tests assert bit-equal
RunStats on shared seeds.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import ResourceLimitError, UsageError
from .rng import Xoshiro256PP, replica_seed

__all__ = [
    "FULL_SHUFFLE_LIMIT",
    "ComponentForest",
    "EdgeStream",
    "MergeEvent",
    "InternalEvent",
    "RunStats",
    "RunState",
    "AggregateStats",
    "new_run",
    "step",
    "run_to_completion",
    "run_stats",
    "aggregate",
]

# full shuffle materializes every edge; past this many edges, sample with
# rejection instead (only a prefix is ever consumed before the stop rule)
FULL_SHUFFLE_LIMIT = 10**7

_EVENT_CAP = 1 << 16


class ComponentForest:
    """Union-find with order and excess stored at the roots."""

    __slots__ = ("parent", "size", "excess", "component_count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.excess = [-1] * n
        self.component_count = n

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def roots(self) -> Iterable[int]:
        return (v for v in range(len(self.parent)) if self.parent[v] == v)


class EdgeStream:
    """Distinct edges of K_n in uniformly random order.

    full_shuffle: Fisher-Yates over all C(n,2) edges, then replay.
    rejection: draw (u, v) pairs, discard loops and repeats via a seen
    set.  Both modes emit a prefix of a uniform permutation; rejection
    just pays per draw instead of up front.
    """

    __slots__ = ("n", "rng_seed", "mode", "total", "emitted", "rng", "_pairs", "_seen")

    def __init__(self, n: int, rng_seed: int, mode: str | None = None):
        self.n = n
        self.rng_seed = rng_seed
        self.total = n * (n - 1) // 2
        self.emitted = 0
        self.rng = Xoshiro256PP(rng_seed)
        if mode is None:
            mode = "full_shuffle" if self.total <= FULL_SHUFFLE_LIMIT else "rejection"
        if mode not in ("full_shuffle", "rejection"):
            raise UsageError(f"unknown edge stream mode {mode!r}")
        self.mode = mode
        self._pairs = None
        self._seen = None
        if mode == "full_shuffle":
            pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
            self.rng.shuffle(pairs)
            self._pairs = pairs
        else:
            self._seen = set()

    def next_edge(self) -> tuple[int, int]:
        if self.emitted >= self.total:
            raise StopIteration
        if self.mode == "full_shuffle":
            edge = self._pairs[self.emitted]
            self.emitted += 1
            return edge
        n = self.n
        while True:
            u = self.rng.bounded(n)
            v = self.rng.bounded(n)
            if u == v:
                continue
            if u > v:
                u, v = v, u
            key = u * n + v
            if key in self._seen:
                continue
            self._seen.add(key)
            self.emitted += 1
            return u, v


@dataclasses.dataclass(frozen=True)
class MergeEvent:
    e1: int
    e2: int
    e_new: int
    size1: int
    size2: int
    order: int  # of the merged component


@dataclasses.dataclass(frozen=True)
class InternalEvent:
    e_old: int
    e_new: int
    order: int


@dataclasses.dataclass
class RunStats:
    transitions: dict[int, int]
    transition_orders: dict[int, dict[int, int]]
    V: dict[int, int]
    V_max: dict[int, int]
    edges_processed: int


@dataclasses.dataclass
class RunState:
    forest: ComponentForest
    stream: EdgeStream
    stats: RunStats
    tracked: frozenset[int]
    l_stop: int
    done: bool = False
    _last_excess: int = -1


def _validate(n: int, tracked, l_stop: int) -> frozenset[int]:
    if n < 1:
        raise UsageError(f"order must be >= 1, got {n}")
    tracked = frozenset(tracked)
    if not tracked:
        raise UsageError("tracked set must be non-empty")
    if min(tracked) < -1:
        raise UsageError("tracked excesses start at -1 (trees)")
    if l_stop < max(tracked):
        raise UsageError(
            f"l_stop={l_stop} below max tracked excess {max(tracked)}; "
            "events past l_stop are not observed"
        )
    return tracked


def new_run(n: int, seed: int, tracked, l_stop: int) -> RunState:
    """Fresh forest of n singletons plus a seeded edge stream."""
    tracked = _validate(n, tracked, l_stop)
    stats = RunStats(
        transitions={l: 0 for l in tracked},
        transition_orders={l: {} for l in tracked},
        V={l: 0 for l in tracked},
        V_max={l: 0 for l in tracked},
        edges_processed=0,
    )
    if -1 in tracked:
        stats.V[-1] = n  # every vertex starts in a tree
        stats.V_max[-1] = 1
    return RunState(
        forest=ComponentForest(n),
        stream=EdgeStream(n, seed),
        stats=stats,
        tracked=tracked,
        l_stop=l_stop,
    )


def step(state: RunState):
    """Process the next edge; returns the event, raises StopIteration when
    all C(n,2) edges are exhausted."""
    u, v = state.stream.next_edge()  # propagates StopIteration
    forest = state.forest
    stats = state.stats
    stats.edges_processed += 1
    ru = forest.find(u)
    rv = forest.find(v)
    if ru == rv:
        e_old = forest.excess[ru]
        e_new = e_old + 1
        order = forest.size[ru]
        forest.excess[ru] = e_new
        if e_old in state.tracked:
            stats.transitions[e_old] += 1
            hist = stats.transition_orders[e_old]
            hist[order] = hist.get(order, 0) + 1
        if e_new in state.tracked:
            stats.V[e_new] += order
            if order > stats.V_max[e_new]:
                stats.V_max[e_new] = order
        state._last_excess = e_new
        return InternalEvent(e_old=e_old, e_new=e_new, order=order)
    if forest.size[ru] < forest.size[rv]:
        ru, rv = rv, ru
    e1 = forest.excess[ru]
    e2 = forest.excess[rv]
    e_new = e1 + e2 + 1
    s1 = forest.size[ru]
    s2 = forest.size[rv]
    forest.parent[rv] = ru
    order = s1 + s2
    if e_new in state.tracked:
        add = 0
        if e1 != e_new:
            add += s1
        if e2 != e_new:
            add += s2
        stats.V[e_new] += add
        if order > stats.V_max[e_new]:
            stats.V_max[e_new] = order
    forest.size[ru] = order
    forest.excess[ru] = e_new
    forest.component_count -= 1
    state._last_excess = e_new
    return MergeEvent(e1=e1, e2=e2, e_new=e_new, size1=s1, size2=s2, order=order)


def run_to_completion(state: RunState) -> RunStats:
    """Steps until connected with excess beyond l_stop, or edges exhausted.

    The early stop loses nothing: once a single component has excess
    above l_stop, every later edge is internal to it and excess only
    climbs further.
    """
    while not state.done:
        try:
            step(state)
        except StopIteration:
            state.done = True
            break
        if state.forest.component_count == 1 and state._last_excess > state.l_stop:
            state.done = True
    return state.stats


def _kernel_run(n: int, seed: int, tracked: frozenset[int], l_stop: int) -> RunStats:
    total = n * (n - 1) // 2
    use_shuffle = total <= FULL_SHUFFLE_LIMIT
    ev_cap = max(1, min(total, _EVENT_CAP))
    trans, V, Vmax, edges, ev_l, ev_k, ev_n, status = _kernels.run_kernel(
        n, np.uint64(seed), l_stop, use_shuffle, ev_cap
    )
    if status == _kernels.TABLE_FULL:
        raise ResourceLimitError("edge seen-table saturated; raise its headroom")
    if status == _kernels.EVENT_OVERFLOW:
        raise ResourceLimitError("transition event log overflowed")
    orders: dict[int, dict[int, int]] = {l: {} for l in tracked}
    for i in range(ev_n):
        l = int(ev_l[i])
        if l in orders:
            hist = orders[l]
            k = int(ev_k[i])
            hist[k] = hist.get(k, 0) + 1
    stats = RunStats(
        transitions={l: int(trans[l + 1]) for l in tracked},
        transition_orders=orders,
        V={l: int(V[l + 1]) for l in tracked},
        V_max={l: int(Vmax[l + 1]) for l in tracked},
        edges_processed=int(edges),
    )
    return stats


def run_stats(n: int, seed: int, tracked, l_stop: int, engine: str = "numba") -> RunStats:
    """One full replica; engine is 'numba' (fast) or 'python' (reference)."""
    tracked = _validate(n, tracked, l_stop)
    if engine == "python":
        return run_to_completion(new_run(n, seed, tracked, l_stop))
    if engine == "numba":
        return _kernel_run(n, seed, tracked, l_stop)
    raise UsageError(f"unknown engine {engine!r}")


@dataclasses.dataclass(frozen=True)
class AggregateStats:
    """Replica means with sample-variance errors, plus raw bin totals.

    Deterministic in (n, base_seed, replicas, tracked, l_stop): replica i
    always runs on replica_seed(base_seed, i), so neither engine choice
    nor scheduling order can change a digit.
    """

    n: int
    base_seed: int
    replicas: int
    l_stop: int
    tracked: tuple[int, ...]
    transition_mean: dict[int, float]
    transition_variance: dict[int, float]
    transition_stderr: dict[int, float]
    v_mean: dict[int, float]
    v_variance: dict[int, float]
    v_stderr: dict[int, float]
    v_max_mean: dict[int, float]
    v_max_peak: dict[int, int]
    order_totals: dict[tuple[int, int], int]
    order_sumsq: dict[tuple[int, int], int]
    edges_mean: float

    def order_mean_stderr(self, l: int, k: int) -> tuple[float, float]:
        """Mean and stderr of the per-replica count of l -> l+1 events at
        component order k."""
        total = self.order_totals.get((l, k), 0)
        sumsq = self.order_sumsq.get((l, k), 0)
        return _mean_stderr(total, sumsq, self.replicas)[::2]


def _mean_stderr(total: int, sumsq: int, r: int) -> tuple[float, float, float]:
    mean = total / r
    if r < 2:
        return mean, 0.0, 0.0
    var = (sumsq - total * total / r) / (r - 1)
    var = max(var, 0.0)
    return mean, var, math.sqrt(var / r)


def aggregate(
    n: int,
    base_seed: int,
    replicas: int,
    tracked,
    l_stop: int,
    engine: str = "numba",
) -> AggregateStats:
    """Means and standard errors over independent replicas.

    Integer accumulators only; the floating-point statistics are computed
    once at the end, so the result is independent of summation order.
    """
    tracked = _validate(n, tracked, l_stop)
    if replicas < 1:
        raise UsageError(f"replicas must be >= 1, got {replicas}")
    ls = sorted(tracked)
    t_sum = {l: 0 for l in ls}
    t_sq = {l: 0 for l in ls}
    v_sum = {l: 0 for l in ls}
    v_sq = {l: 0 for l in ls}
    vm_sum = {l: 0 for l in ls}
    vm_peak = {l: 0 for l in ls}
    bin_sum: dict[tuple[int, int], int] = {}
    bin_sq: dict[tuple[int, int], int] = {}
    edges_total = 0
    for i in range(replicas):
        seed = replica_seed(base_seed, i)
        stats = run_stats(n, seed, tracked, l_stop, engine=engine)
        for l in ls:
            t = stats.transitions[l]
            t_sum[l] += t
            t_sq[l] += t * t
            w = stats.V[l]
            v_sum[l] += w
            v_sq[l] += w * w
            m = stats.V_max[l]
            vm_sum[l] += m
            if m > vm_peak[l]:
                vm_peak[l] = m
            for k, c in stats.transition_orders[l].items():
                key = (l, k)
                bin_sum[key] = bin_sum.get(key, 0) + c
                bin_sq[key] = bin_sq.get(key, 0) + c * c
        edges_total += stats.edges_processed

    t_stats = {l: _mean_stderr(t_sum[l], t_sq[l], replicas) for l in ls}
    v_stats = {l: _mean_stderr(v_sum[l], v_sq[l], replicas) for l in ls}
    return AggregateStats(
        n=n,
        base_seed=base_seed,
        replicas=replicas,
        l_stop=l_stop,
        tracked=tuple(ls),
        transition_mean={l: t_stats[l][0] for l in ls},
        transition_variance={l: t_stats[l][1] for l in ls},
        transition_stderr={l: t_stats[l][2] for l in ls},
        v_mean={l: v_stats[l][0] for l in ls},
        v_variance={l: v_stats[l][1] for l in ls},
        v_stderr={l: v_stats[l][2] for l in ls},
        v_max_mean={l: vm_sum[l] / replicas for l in ls},
        v_max_peak=dict(vm_peak),
        order_totals=bin_sum,
        order_sumsq=bin_sq,
        edges_mean=edges_total / replicas,
    )
