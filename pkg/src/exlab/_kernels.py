"""Compiled inner loops for the edge-process simulator.

Everything here mirrors the pure-Python engine in simulator.py draw for
draw: same generator, same seeding walk, same rejection pattern, same
shuffle order.  The test suite asserts bit-identical RunStats between
the two, so any change on one side must land on both.

The state array s holds the four 64-bit words of a xoshiro256++ stream.
Bounded draws reject below 2^64 mod n, which keeps them exactly uniform.
"""

import numpy as np
from numba import int64, njit, uint64

GOLDEN = np.uint64(0x9E3779B97F4A7C15)

# status codes returned by run_kernel
OK = 0
TABLE_FULL = 1
EVENT_OVERFLOW = 2


@njit(uint64(uint64), cache=True)
def mix64(x):
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


@njit(cache=True)
def xoshiro_seed(seed):
    s = np.empty(4, dtype=np.uint64)
    x = seed
    for i in range(4):
        x = x + GOLDEN
        s[i] = mix64(x)
    return s


@njit(uint64(uint64[:]), inline="always", cache=True)
def xoshiro_next(s):
    x = s[0] + s[3]
    r = ((x << np.uint64(23)) | (x >> np.uint64(41))) + s[0]
    t = s[1] << np.uint64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = (s[3] << np.uint64(45)) | (s[3] >> np.uint64(19))
    return r


@njit(uint64(uint64[:], uint64), inline="always", cache=True)
def bounded(s, n):
    lim = (-n) % n  # 2^64 mod n
    while True:
        r = xoshiro_next(s)
        if r >= lim:
            return r % n


@njit(cache=True)
def shuffled_edges(n, s):
    """All C(n,2) edges in a uniformly random order (Fisher-Yates)."""
    m = n * (n - 1) // 2
    eu = np.empty(m, dtype=np.int32)
    ev = np.empty(m, dtype=np.int32)
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            eu[idx] = u
            ev[idx] = v
            idx += 1
    for i in range(m - 1, 0, -1):
        j = int64(bounded(s, uint64(i + 1)))
        tu = eu[i]
        eu[i] = eu[j]
        eu[j] = tu
        tv = ev[i]
        ev[i] = ev[j]
        ev[j] = tv
    return eu, ev


@njit(cache=True)
def run_kernel(n, seed, l_stop, use_shuffle, ev_cap):
    """One full replica of the edge process.

    Tracks excesses -1..l_stop in arrays indexed by excess+1:
      trans[e+1]  count of internal edges arriving at a component of excess e
      V[e+1]      vertices whose component ever attains excess exactly e
      Vmax[e+1]   largest component order observed at excess e
    Also logs (excess_before, component_order) for every counted internal
    edge into ev_l/ev_k, up to ev_cap entries.

    Stops as soon as the graph is connected with excess beyond l_stop
    (later edges cannot touch the tracked range: per-vertex excess only
    ever goes up) or when all C(n,2) edges have arrived.
    """
    s = xoshiro_seed(seed)
    ntrack = l_stop + 2
    trans = np.zeros(ntrack, dtype=np.int64)
    V = np.zeros(ntrack, dtype=np.int64)
    Vmax = np.zeros(ntrack, dtype=np.int64)
    ev_l = np.empty(ev_cap, dtype=np.int32)
    ev_k = np.empty(ev_cap, dtype=np.int32)
    ev_n = 0
    status = OK
    if n >= 1:
        V[0] = n
        Vmax[0] = 1
    if n <= 1:
        return trans, V, Vmax, 0, ev_l, ev_k, ev_n, status

    parent = np.arange(n, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    excess = np.full(n, -1, dtype=np.int64)
    ncomp = n
    total_edges = n * (n - 1) // 2

    if use_shuffle:
        eu, ev = shuffled_edges(n, s)
        table = np.empty(1, dtype=np.int64)
        cap = 0
    else:
        eu = np.empty(0, dtype=np.int32)
        ev = np.empty(0, dtype=np.int32)
        # sized for the ~ (n ln n)/2 edges consumed before the stop
        # condition, with headroom so the load factor stays low
        target = int(1.5 * (n * np.log(n) / 2 + 5 * n)) if n > 64 else total_edges + 1
        cap = 1
        while cap < 2 * target:
            cap <<= 1
        table = np.full(cap, -1, dtype=np.int64)
    mask = np.uint64(cap - 1) if cap > 0 else np.uint64(0)

    nn = np.uint64(n)
    ptr = 0
    edges = 0
    while edges < total_edges:
        if use_shuffle:
            u = int64(eu[ptr])
            v = int64(ev[ptr])
            ptr += 1
        else:
            u = int64(bounded(s, nn))
            v = int64(bounded(s, nn))
            if u == v:
                continue
            if u > v:
                u, v = v, u
            key = u * n + v
            h = mix64(np.uint64(key)) & mask
            found = False
            while True:
                slot = table[h]
                if slot == -1:
                    break
                if slot == key:
                    found = True
                    break
                h = (h + np.uint64(1)) & mask
            if found:
                continue
            if 2 * (edges + 2) > cap:
                status = TABLE_FULL
                break
            table[h] = key
        edges += 1

        x = u
        while parent[x] != x:
            x = parent[x]
        r = x
        x = u
        while parent[x] != x:
            parent[x], x = r, parent[x]
        ru = r
        x = v
        while parent[x] != x:
            x = parent[x]
        r = x
        x = v
        while parent[x] != x:
            parent[x], x = r, parent[x]
        rv = r

        if ru == rv:
            e_old = excess[ru]
            e_new = e_old + 1
            excess[ru] = e_new
            if e_old + 1 < ntrack:
                trans[e_old + 1] += 1
                if ev_n < ev_cap:
                    ev_l[ev_n] = np.int32(e_old)
                    ev_k[ev_n] = np.int32(size[ru])
                    ev_n += 1
                else:
                    status = EVENT_OVERFLOW
            if e_new + 1 < ntrack:
                V[e_new + 1] += size[ru]
                if size[ru] > Vmax[e_new + 1]:
                    Vmax[e_new + 1] = size[ru]
        else:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            e1 = excess[ru]
            e2 = excess[rv]
            e_new = e1 + e2 + 1
            parent[rv] = ru
            snew = size[ru] + size[rv]
            if e_new + 1 < ntrack:
                add = 0
                if e1 != e_new:
                    add += size[ru]
                if e2 != e_new:
                    add += size[rv]
                V[e_new + 1] += add
                if snew > Vmax[e_new + 1]:
                    Vmax[e_new + 1] = snew
            size[ru] = snew
            excess[ru] = e_new
            ncomp -= 1
        if ncomp == 1 and excess[ru] > l_stop:
            break
    return trans, V, Vmax, edges, ev_l, ev_k, ev_n, status
