import pytest

from mdbv.curve import (
    deserialize_point,
    mul_vartime,
    scalar_mul,
    serialize_point,
)
from mdbv.errors import DecodeError
from mdbv.rng import HashDrbg
from mdbv.scheme import SignedMessage, build_batch, register, sign
from mdbv.wire import (
    batch_size,
    credentials_text,
    deserialize_batch,
    group_params_text,
    master_key_text,
    parse_credentials,
    parse_group_params,
    parse_master_key,
    parse_signature_record,
    parse_system_params,
    serialize_batch,
    signature_record_text,
    system_params_text,
)


# -- point compression -------------------------------------------------------

def test_point_roundtrip_random(small_params):
    rng = HashDrbg(b"roundtrip")
    for _ in range(100):
        point = scalar_mul(small_params, rng.scalar(small_params.q),
                           small_params.base_point)
        blob = serialize_point(small_params, point)
        assert len(blob) == small_params.point_bytes
        assert deserialize_point(small_params, blob) == point


def test_identity_encodes_as_zero_bytes(full_params):
    blob = serialize_point(full_params, None)
    assert blob == bytes(65)
    assert deserialize_point(full_params, blob) is None


def test_default_point_length_is_65(full_params):
    blob = serialize_point(full_params, full_params.base_point)
    assert len(blob) == 65
    assert blob[64] in (2, 3)


def test_point_decode_rejects_bad_input(small_params):
    size = small_params.point_bytes
    with pytest.raises(DecodeError):
        deserialize_point(small_params, bytes(size - 1))
    with pytest.raises(DecodeError):
        deserialize_point(small_params, bytes(size - 1) + b"\x09")
    blob = bytearray(serialize_point(small_params, small_params.base_point))
    blob[0] = 0xFF  # push x out of field range
    with pytest.raises(DecodeError):
        deserialize_point(small_params, bytes(blob))
    junk = bytearray(serialize_point(small_params, None))
    junk[2] = 1  # identity marker with nonzero x
    with pytest.raises(DecodeError):
        deserialize_point(small_params, bytes(junk))


def test_point_decode_rejects_off_curve(small_params):
    # scan for an x whose x^3 + x is a non-residue
    size = small_params.fp_bytes
    for x in range(2, 200):
        blob = x.to_bytes(size, "big") + b"\x02"
        try:
            point = deserialize_point(small_params, blob)
        except DecodeError:
            break
        assert mul_vartime(small_params, small_params.q, point) is None
    else:
        pytest.fail("no off-curve x found in scan")


def test_point_decode_rejects_low_order_component(small_params):
    # a point cleared only partially (order 2) must not decode
    p = int(small_params.p)
    blob = (0).to_bytes(small_params.fp_bytes, "big") + b"\x02"
    with pytest.raises(DecodeError):
        deserialize_point(small_params, blob)  # (0, 0) is 2-torsion


# -- batch codec --------------------------------------------------------------

@pytest.fixture(scope="module")
def sample_batch(small_system):
    params, msk = small_system
    rng = HashDrbg(b"batch-codec")
    delta = b"codec-delta"
    messages = []
    for i in range(20):
        creds = register(msk, b"C%03d" % i, params, rng)
        data = rng.randbytes(20)
        sig = sign(data, delta, creds, params, rng)
        messages.append(SignedMessage(creds.vehicle_id, data, creds.p_pub, sig))
    return params, build_batch(delta, messages, params.group)


def test_batch_roundtrip(sample_batch):
    params, batch = sample_batch
    blob = serialize_batch(batch, params.group)
    assert deserialize_batch(blob, params.group) == batch


def test_batch_size_formula(sample_batch):
    params, batch = sample_batch
    blob = serialize_batch(batch, params.group)
    n = len(batch.entries)
    expected = batch_size(
        params.group, len(batch.delta),
        [len(e.vehicle_id) for e in batch.entries],
        [len(e.data) for e in batch.entries],
    )
    assert len(blob) == expected
    point = params.group.point_bytes
    assert expected == 13 + len(batch.delta) + n * (8 + 4 + 20 + point) + 2 * point


def test_batch_decode_rejects_corruption(sample_batch):
    params, batch = sample_batch
    blob = serialize_batch(batch, params.group)
    with pytest.raises(DecodeError):
        deserialize_batch(blob[:-1], params.group)  # truncation
    with pytest.raises(DecodeError):
        deserialize_batch(blob + b"\x00", params.group)  # trailing bytes
    with pytest.raises(DecodeError):
        deserialize_batch(b"XDBV" + blob[4:], params.group)  # magic
    with pytest.raises(DecodeError):
        deserialize_batch(blob[:4] + b"\x02" + blob[5:], params.group)  # version
    bad_point = bytearray(blob)
    bad_point[-1] ^= 0x08  # break V's parity byte
    with pytest.raises(DecodeError) as err:
        deserialize_batch(bytes(bad_point), params.group)
    assert "V" in str(err.value)


def test_batch_decode_never_returns_verdict(sample_batch):
    params, batch = sample_batch
    blob = serialize_batch(batch, params.group)
    try:
        deserialize_batch(blob[:30], params.group)
    except DecodeError:
        pass
    else:
        pytest.fail("truncated batch must raise, not verify")


# -- text formats ---------------------------------------------------------------

def test_group_params_text_roundtrip(small_params):
    text = group_params_text(small_params)
    assert parse_group_params(text) == small_params
    assert "p=" in text and "Px=" in text and "l=" in text


def test_system_and_key_files_roundtrip(small_system):
    params, msk = small_system
    assert parse_system_params(system_params_text(params)) == params
    assert parse_master_key(master_key_text(msk)) == msk


def test_credentials_roundtrip(small_system):
    params, msk = small_system
    creds = register(msk, b"veh", params, HashDrbg(b"creds"))
    text = credentials_text(creds)
    assert parse_credentials(text, params.group) == creds


def test_credentials_reject_foreign_points(small_system):
    params, msk = small_system
    creds = register(msk, b"veh2", params, HashDrbg(b"creds2"))
    text = credentials_text(creds).replace("Qy", "ZZ")
    with pytest.raises(DecodeError):
        parse_credentials(text, params.group)


def test_signature_record_roundtrip(small_system):
    params, msk = small_system
    rng = HashDrbg(b"record")
    creds = register(msk, b"veh3", params, rng)
    delta, data = b"delta-x", b"payload"
    sig = sign(data, delta, creds, params, rng)
    text = signature_record_text(delta, creds.vehicle_id, data, creds.p_pub,
                                 sig, params.group)
    parsed_delta, message = parse_signature_record(text, params.group)
    assert parsed_delta == delta
    assert message.vehicle_id == creds.vehicle_id
    assert message.data == data
    assert message.p_pub == creds.p_pub
    assert message.signature == sig


def test_kv_parser_rejects_garbage(small_params):
    with pytest.raises(DecodeError):
        parse_group_params("p=zz\nq=3\n")
    with pytest.raises(DecodeError):
        parse_group_params("just some text")
    with pytest.raises(DecodeError):
        parse_group_params("p=11\n")  # missing keys
