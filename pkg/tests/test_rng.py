import numpy as np

from hjsemigroup import CounterRng


def test_same_key_same_stream():
    a = CounterRng(5).raw_blocks(2, 0, 10)
    b = CounterRng(5).raw_blocks(2, 0, 10)
    assert np.array_equal(a, b)


def test_chunks_are_offsets_of_one_stream():
    rng = CounterRng(11)
    whole = rng.raw_blocks(0, 0, 100)
    parts = np.concatenate([rng.raw_blocks(0, s, 25) for s in range(0, 100, 25)])
    assert np.array_equal(whole, parts)


def test_variables_and_seeds_are_independent_streams():
    rng = CounterRng(3)
    assert not np.array_equal(rng.raw_blocks(0, 0, 4), rng.raw_blocks(1, 0, 4))
    assert not np.array_equal(rng.raw_blocks(0, 0, 4), CounterRng(4).raw_blocks(0, 0, 4))


def test_slots_differ():
    rng = CounterRng(3)
    assert not np.array_equal(rng.raw_blocks(0, 0, 4, slot=0), rng.raw_blocks(0, 0, 4, slot=1))


def test_uniform_range_and_mean():
    u = CounterRng(9).uniforms(0, 0, 50_000)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.005


def test_normals_moments():
    z = CounterRng(1).normals(0, 0, 100_000, 3)
    assert z.shape == (100_000, 3)
    assert np.all(np.abs(z.mean(axis=0)) < 0.02)
    assert np.all(np.abs(z.std(axis=0) - 1.0) < 0.02)


def test_normals_chunk_invariant():
    rng = CounterRng(8)
    whole = rng.normals(1, 0, 60, 5)
    parts = np.concatenate([rng.normals(1, s, 20, 5) for s in (0, 20, 40)])
    assert np.array_equal(whole, parts)


def test_large_seed_wraps():
    assert np.array_equal(CounterRng(2**64 + 3).raw_blocks(0, 0, 2), CounterRng(3).raw_blocks(0, 0, 2))
