import pytest

from mdbv.rng import HashDrbg, system_rng


def test_same_seed_same_stream():
    a = HashDrbg(b"seed")
    b = HashDrbg(b"seed")
    assert a.randbytes(100) == b.randbytes(100)
    assert a.getrandbits(160) == b.getrandbits(160)


def test_different_seeds_diverge():
    assert HashDrbg(b"one").randbytes(32) != HashDrbg(b"two").randbytes(32)


def test_ranges():
    rng = HashDrbg(b"ranges")
    for _ in range(500):
        assert 0 <= rng.randbelow(7) < 7
        assert 1 <= rng.scalar(97) < 97
        assert 0.0 <= rng.random() < 1.0
    assert rng.getrandbits(1) in (0, 1)


def test_rejects_bad_arguments():
    rng = HashDrbg(b"x")
    with pytest.raises(ValueError):
        rng.randbelow(0)
    with pytest.raises(ValueError):
        rng.getrandbits(0)
    with pytest.raises(TypeError):
        HashDrbg("not bytes")


def test_system_rng_streams_differ():
    assert system_rng().randbytes(16) != system_rng().randbytes(16)
