"""Generator correctness: frozen reference vectors, range contracts, stream hygiene.

The splitmix64 vectors are the standard ones for seed 0 (output i equals
mix64(i*GOLDEN)), so any drift in the finalizer breaks them immediately.
The xoshiro outputs below were frozen from this implementation at review
time and pin the seeding walk + scrambler as regression constants.
"""

import pytest
from hypothesis import given, settings, strategies as st

from exlab.rng import GOLDEN, MASK64, Xoshiro256PP, mix64, replica_seed

# splitmix64(seed=0) reference outputs
SPLITMIX0 = [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]

# first outputs of this generator for base seeds 0 and 1
XOSHIRO_SEED0 = [0x53175D61490B23DF, 0x61DA6F3DC380D507, 0x5C0FDF91EC9A7BFC]


def test_splitmix64_reference_vectors():
    for i, want in enumerate(SPLITMIX0, start=1):
        assert mix64((GOLDEN * i) & MASK64) == want


def test_xoshiro_frozen_stream():
    r = Xoshiro256PP(0)
    assert [r.next64() for _ in range(3)] == XOSHIRO_SEED0


def test_mix64_stays_in_range():
    for x in (0, 1, GOLDEN, MASK64, 0xDEADBEEF):
        y = mix64(x)
        assert 0 <= y <= MASK64


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=MASK64))
def test_next64_range(seed):
    r = Xoshiro256PP(seed)
    for _ in range(8):
        assert 0 <= r.next64() <= MASK64


def test_seeding_state_never_all_zero():
    # all-zero state is the one absorbing point of the xor shuffle
    for seed in (0, 1, MASK64, GOLDEN):
        r = Xoshiro256PP(seed)
        assert (r.s0, r.s1, r.s2, r.s3) != (0, 0, 0, 0)


def test_bounded_contract():
    r = Xoshiro256PP(42)
    assert all(r.bounded(1) == 0 for _ in range(16))
    for n in (2, 3, 7, 100, 10**9):
        for _ in range(32):
            v = r.bounded(n)
            assert 0 <= v < n


def test_bounded_rough_uniformity():
    # 60k draws over 6 cells; chi-square(5) at the 1e-3 level is 20.52
    r = Xoshiro256PP(2024)
    counts = [0] * 6
    draws = 60000
    for _ in range(draws):
        counts[r.bounded(6)] += 1
    e = draws / 6
    chi2 = sum((c - e) ** 2 / e for c in counts)
    assert chi2 < 20.52


def test_shuffle_is_permutation_and_deterministic():
    xs = list(range(50))
    a, b = xs[:], xs[:]
    Xoshiro256PP(7).shuffle(a)
    Xoshiro256PP(7).shuffle(b)
    assert a == b
    assert sorted(a) == xs
    c = xs[:]
    Xoshiro256PP(8).shuffle(c)
    assert c != a


def test_shuffle_first_position_uniform():
    # first element after shuffling [0..4] should be ~uniform over 5 values
    counts = [0] * 5
    trials = 20000
    for s in range(trials):
        xs = [0, 1, 2, 3, 4]
        Xoshiro256PP(s).shuffle(xs)
        counts[xs[0]] += 1
    e = trials / 5
    chi2 = sum((c - e) ** 2 / e for c in counts)
    assert chi2 < 18.47  # chi-square(4), 1e-3 level


def test_replica_seed_definition_and_spread():
    assert replica_seed(2024, 0) == mix64(2024)
    assert replica_seed(2024, 3) == mix64(2024 ^ ((GOLDEN * 3) & MASK64))
    seen = {replica_seed(2024, i) for i in range(10000)}
    assert len(seen) == 10000


def test_replica_streams_differ():
    a = Xoshiro256PP(replica_seed(5, 0))
    b = Xoshiro256PP(replica_seed(5, 1))
    assert [a.next64() for _ in range(4)] != [b.next64() for _ in range(4)]


def test_bounded_rejects_nonpositive():
    r = Xoshiro256PP(1)
    with pytest.raises(Exception):
        r.bounded(0)
