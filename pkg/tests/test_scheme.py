import dataclasses

import pytest

from mdbv.counters import count_ops
from mdbv.curve import mul_vartime, point_add, scalar_mul
from mdbv.errors import AggregationError, InvalidIdentityError
from mdbv.hashing import hash_to_point
from mdbv.pairing import pairing
from mdbv.rng import HashDrbg
from mdbv.scheme import (
    AggregateBatch,
    SignedMessage,
    aggregate,
    batch_verify,
    build_batch,
    register,
    setup,
    sign,
    verify_individual,
)


def make_fleet(system, count, rng, delta=b"shared-delta", data_size=20):
    params, msk = system
    messages = []
    creds_list = []
    for i in range(count):
        creds = register(msk, b"FLEET-%03d" % i, params, rng)
        data = rng.randbytes(data_size)
        sig = sign(data, delta, creds, params, rng)
        messages.append(SignedMessage(creds.vehicle_id, data, creds.p_pub, sig))
        creds_list.append(creds)
    return messages, creds_list


def verify_message(message, delta, params):
    return verify_individual(
        message.data, delta, message.vehicle_id, message.p_pub,
        message.signature, params,
    )


# -- setup --------------------------------------------------------------------

def test_setup_public_key_in_subgroup(small_params):
    params, msk = setup(80, HashDrbg(b"su"), group=small_params)
    assert params.p0 is not None
    assert mul_vartime(params.group, params.group.q, params.p0) is None


def test_setup_key_satisfies_pairing_relation(small_params):
    params, msk = setup(80, HashDrbg(b"su2"), group=small_params)
    P = params.group.base_point
    assert pairing(params.group, params.p0, P) == pairing(params.group, P, P) ** msk.s


def test_setup_distinct_seeds_distinct_keys(small_params):
    seen = set()
    for i in range(100):
        _, msk = setup(80, HashDrbg(b"seed-%d" % i), group=small_params)
        seen.add(msk.s)
    assert len(seen) == 100


def test_setup_rejects_low_level():
    with pytest.raises(ValueError):
        setup(64, HashDrbg(b"x"))


# -- registration -------------------------------------------------------------

def test_register_partial_key_validity(small_system):
    params, msk = small_system
    creds = register(msk, b"V001", params, HashDrbg(b"r1"))
    # e(D, P) = e(Q, P0) certifies D = s*Q without revealing s
    group = params.group
    assert pairing(group, creds.d, group.base_point) == pairing(
        group, creds.q_point, params.p0
    )
    assert creds.q_point == hash_to_point(b"V001", group)
    assert creds.p_pub == scalar_mul(group, creds.x, group.base_point)


def test_register_same_id_same_partial_key_fresh_secret(small_system):
    params, msk = small_system
    a = register(msk, b"V002", params, HashDrbg(b"ra"))
    b = register(msk, b"V002", params, HashDrbg(b"rb"))
    assert a.q_point == b.q_point and a.d == b.d
    assert a.x != b.x and a.p_pub != b.p_pub


def test_register_rejects_empty_id(small_system):
    params, msk = small_system
    with pytest.raises(InvalidIdentityError):
        register(msk, b"", params, HashDrbg(b"r"))


# -- signing and individual verification ---------------------------------------

def test_sign_verify_roundtrip(small_system):
    params, _ = small_system
    rng = HashDrbg(b"roundtrip")
    messages, _ = make_fleet(small_system, 3, rng)
    for message in messages:
        assert verify_message(message, b"shared-delta", params)


def test_signatures_randomized_but_both_verify(small_system):
    params, msk = small_system
    rng = HashDrbg(b"rand")
    creds = register(msk, b"V005", params, rng)
    data, delta = b"payload", b"d-1"
    s1 = sign(data, delta, creds, params, rng)
    s2 = sign(data, delta, creds, params, rng)
    assert s1.r != s2.r
    assert verify_individual(data, delta, creds.vehicle_id, creds.p_pub, s1, params)
    assert verify_individual(data, delta, creds.vehicle_id, creds.p_pub, s2, params)


def test_sign_requires_delta(small_system):
    params, msk = small_system
    creds = register(msk, b"V006", params, HashDrbg(b"r6"))
    with pytest.raises(ValueError):
        sign(b"data", b"", creds, params, HashDrbg(b"s"))


def test_sign_op_counts(small_system):
    params, msk = small_system
    rng = HashDrbg(b"counts")
    creds = register(msk, b"V007", params, rng)
    with count_ops() as ops:
        sign(b"data", b"delta", creds, params, rng)
    assert ops.as_tuple() == (3, 1, 0)


def test_individual_verify_op_counts(small_system):
    params, msk = small_system
    rng = HashDrbg(b"vcounts")
    creds = register(msk, b"V008", params, rng)
    sig = sign(b"data", b"delta", creds, params, rng)
    with count_ops() as ops:
        verify_individual(b"data", b"delta", creds.vehicle_id, creds.p_pub,
                          sig, params)
    assert ops.as_tuple() == (2, 2, 3)


def test_tampering_any_field_falsifies(small_system):
    params, msk = small_system
    rng = HashDrbg(b"tamper")
    creds = register(msk, b"V009", params, rng)
    data, delta = b"monitoring data", b"delta-t"
    sig = sign(data, delta, creds, params, rng)

    assert not verify_individual(b"monitoring data!", delta, creds.vehicle_id,
                                 creds.p_pub, sig, params)
    assert not verify_individual(data, b"delta-u", creds.vehicle_id,
                                 creds.p_pub, sig, params)
    assert not verify_individual(data, delta, b"V010", creds.p_pub, sig, params)
    other = register(msk, b"V010", params, rng)
    assert not verify_individual(data, delta, creds.vehicle_id, other.p_pub,
                                 sig, params)
    wrong_r = dataclasses.replace(
        sig, r=point_add(params.group, sig.r, params.group.base_point)
    )
    assert not verify_individual(data, delta, creds.vehicle_id, creds.p_pub,
                                 wrong_r, params)
    wrong_v = dataclasses.replace(
        sig, v=point_add(params.group, sig.v, params.group.base_point)
    )
    assert not verify_individual(data, delta, creds.vehicle_id, creds.p_pub,
                                 wrong_v, params)


def test_verify_rejects_off_curve_points(small_system):
    params, msk = small_system
    rng = HashDrbg(b"offc")
    creds = register(msk, b"V011", params, rng)
    sig = sign(b"d", b"x", creds, params, rng)
    bogus = (creds.p_pub[0], (creds.p_pub[1] + 1) % params.group.p)
    with pytest.raises(ValueError):
        verify_individual(b"d", b"x", creds.vehicle_id, bogus, sig, params)


# -- aggregation ----------------------------------------------------------------

def test_aggregate_singleton(small_system):
    params, _ = small_system
    rng = HashDrbg(b"agg1")
    (message,), _ = make_fleet(small_system, 1, rng)
    r_agg, v_agg = aggregate([message.signature], params.group)
    assert (r_agg, v_agg) == (message.signature.r, message.signature.v)


def test_aggregate_permutation_invariant(small_system):
    params, _ = small_system
    rng = HashDrbg(b"agg2")
    messages, _ = make_fleet(small_system, 6, rng)
    sigs = [m.signature for m in messages]
    forward = aggregate(sigs, params.group)
    assert aggregate(list(reversed(sigs)), params.group) == forward
    shuffled = [sigs[i] for i in (3, 0, 5, 1, 4, 2)]
    assert aggregate(shuffled, params.group) == forward


def test_aggregate_distributes_over_concatenation(small_system):
    params, _ = small_system
    rng = HashDrbg(b"agg3")
    messages, _ = make_fleet(small_system, 8, rng)
    sigs = [m.signature for m in messages]
    for split in (1, 3, 5):
        ra, va = aggregate(sigs[:split], params.group)
        rb, vb = aggregate(sigs[split:], params.group)
        merged = (point_add(params.group, ra, rb), point_add(params.group, va, vb))
        assert merged == aggregate(sigs, params.group)


def test_aggregate_rejects_empty(small_system):
    params, _ = small_system
    with pytest.raises(AggregationError):
        aggregate([], params.group)
    with pytest.raises(AggregationError):
        build_batch(b"d", [], params.group)


def test_batch_rejects_zero_entries(small_system):
    params, _ = small_system
    with pytest.raises(AggregationError):
        AggregateBatch(delta=b"d", entries=(), r=None, v=None)


# -- batch verification -----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 5, 20, 50])
def test_honest_batches_verify(small_system, n):
    params, _ = small_system
    rng = HashDrbg(b"honest-%d" % n)
    messages, _ = make_fleet(small_system, n, rng)
    batch = build_batch(b"shared-delta", messages, params.group)
    assert batch_verify(batch, params)


def test_batch_of_one_equals_individual(small_system):
    params, _ = small_system
    rng = HashDrbg(b"single")
    (message,), _ = make_fleet(small_system, 1, rng)
    batch = build_batch(b"shared-delta", [message], params.group)
    assert batch_verify(batch, params) == verify_message(
        message, b"shared-delta", params
    )


def test_batch_verify_op_counts(small_system):
    params, _ = small_system
    rng = HashDrbg(b"bcounts")
    n = 4
    messages, _ = make_fleet(small_system, n, rng)
    batch = build_batch(b"shared-delta", messages, params.group)
    with count_ops() as ops:
        batch_verify(batch, params)
    assert ops.as_tuple() == (2 * n, n + 1, 3)


def test_batch_outcome_equals_individual_conjunction(small_system):
    params, _ = small_system
    rng = HashDrbg(b"conj")
    messages, _ = make_fleet(small_system, 6, rng)
    # corrupt message 2's payload after signing
    bad = dataclasses.replace(messages[2], data=b"tampered")
    tampered = messages[:2] + [bad] + messages[3:]
    batch = build_batch(b"shared-delta", tampered, params.group)
    individual = [verify_message(m, b"shared-delta", params) for m in tampered]
    assert individual == [True, True, False, True, True, True]
    assert batch_verify(batch, params) == all(individual)


def test_corrupted_aggregate_points_rejected(small_system):
    params, _ = small_system
    rng = HashDrbg(b"aggbad")
    messages, _ = make_fleet(small_system, 4, rng)
    batch = build_batch(b"shared-delta", messages, params.group)
    base = params.group.base_point
    assert not batch_verify(
        dataclasses.replace(batch, r=point_add(params.group, batch.r, base)),
        params,
    )
    assert not batch_verify(
        dataclasses.replace(batch, v=point_add(params.group, batch.v, base)),
        params,
    )


def test_mixed_delta_batches_rejected(small_system):
    params, _ = small_system
    rng = HashDrbg(b"mixed")
    messages_a, _ = make_fleet(small_system, 3, rng, delta=b"area-A")
    messages_b, _ = make_fleet(small_system, 3, rng, delta=b"area-B")
    mixed = build_batch(b"area-A", messages_a + messages_b, params.group)
    assert not batch_verify(mixed, params)


def test_swapped_public_keys_rejected(small_system):
    params, _ = small_system
    rng = HashDrbg(b"swap")
    messages, _ = make_fleet(small_system, 2, rng)
    swapped = [
        dataclasses.replace(messages[0], p_pub=messages[1].p_pub),
        dataclasses.replace(messages[1], p_pub=messages[0].p_pub),
    ]
    batch = build_batch(b"shared-delta", swapped, params.group)
    assert not batch_verify(batch, params)


def test_duplicate_identities_permitted(small_system):
    params, msk = small_system
    rng = HashDrbg(b"dup")
    creds = register(msk, b"DUP-1", params, rng)
    messages = []
    for _ in range(3):
        data = rng.randbytes(20)
        sig = sign(data, b"dup-delta", creds, params, rng)
        messages.append(SignedMessage(creds.vehicle_id, data, creds.p_pub, sig))
    batch = build_batch(b"dup-delta", messages, params.group)
    assert batch_verify(batch, params)
