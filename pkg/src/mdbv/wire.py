"""Serialization: the binary batch format and the text key-value files.

Batch wire layout (all integers big-endian)::

    magic "MDBV" (4) || version 0x01 (1) ||
    delta-length (4) || delta ||
    n (4) || n * [ id-length (4) || id || P_i compressed ||
                   data-length (4) || data ] ||
    R compressed || V compressed

Compressed points take ``fp_bytes + 1`` bytes (65 under the default
512-bit field), so a batch with 20-byte ids and payloads occupies
``143 + len(delta) + 113 * n`` bytes.

Keys, parameters and credentials travel as ``key=value`` text with
lowercase-hex big-endian integers, one pair per line.
"""

import struct

from gmpy2 import mpz

from .curve import GroupParams, deserialize_point, in_subgroup, serialize_point
from .errors import DecodeError
from .scheme import (
    AggregateBatch,
    BatchEntry,
    IndividualSignature,
    MasterSecretKey,
    SignedMessage,
    SystemParams,
    VehicleCredentials,
)

MAGIC = b"MDBV"
VERSION = 1


def batch_size(params: GroupParams, delta_len: int, id_lens, data_lens) -> int:
    """Exact byte length of a serialized batch with the given field sizes."""
    point = params.point_bytes
    body = sum(4 + i + point + 4 + d for i, d in zip(id_lens, data_lens))
    return 4 + 1 + 4 + delta_len + 4 + body + 2 * point


def serialize_batch(batch: AggregateBatch, params: GroupParams) -> bytes:
    out = bytearray()
    out += MAGIC
    out.append(VERSION)
    out += struct.pack(">I", len(batch.delta))
    out += batch.delta
    out += struct.pack(">I", len(batch.entries))
    for entry in batch.entries:
        out += struct.pack(">I", len(entry.vehicle_id))
        out += entry.vehicle_id
        out += serialize_point(params, entry.p_pub)
        out += struct.pack(">I", len(entry.data))
        out += entry.data
    out += serialize_point(params, batch.r)
    out += serialize_point(params, batch.v)
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, field: str) -> bytes:
        if self.pos + n > len(self.data):
            raise DecodeError("input truncated", field=field)
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u32(self, field: str) -> int:
        return struct.unpack(">I", self.take(4, field))[0]

    def done(self) -> bool:
        return self.pos == len(self.data)


def deserialize_batch(data: bytes, params: GroupParams) -> AggregateBatch:
    """Strict inverse of :func:`serialize_batch`.

    Truncation, trailing bytes and off-curve points all raise
    :class:`DecodeError` naming the offending field; decode never returns
    a verification verdict.
    """
    reader = _Reader(data)
    if reader.take(4, "magic") != MAGIC:
        raise DecodeError("bad magic", field="magic")
    version = reader.take(1, "version")[0]
    if version != VERSION:
        raise DecodeError(f"unsupported version {version}", field="version")
    delta = reader.take(reader.u32("delta length"), "delta")
    if not delta:
        raise DecodeError("state info delta must be non-empty", field="delta")
    count = reader.u32("entry count")
    if count == 0:
        raise DecodeError("batch must contain at least one entry", field="entry count")
    point_len = params.point_bytes
    entries = []
    for index in range(count):
        tag = f"entry {index}"
        vehicle_id = reader.take(reader.u32(f"{tag} id length"), f"{tag} id")
        p_pub = deserialize_point(
            params, reader.take(point_len, f"{tag} public key"),
            field=f"{tag} public key",
        )
        payload = reader.take(reader.u32(f"{tag} data length"), f"{tag} data")
        entries.append(BatchEntry(data=payload, vehicle_id=vehicle_id, p_pub=p_pub))
    r_agg = deserialize_point(params, reader.take(point_len, "R"), field="R")
    v_agg = deserialize_point(params, reader.take(point_len, "V"), field="V")
    if not reader.done():
        raise DecodeError(
            f"{len(data) - reader.pos} trailing bytes after batch", field="trailer"
        )
    return AggregateBatch(delta=delta, entries=tuple(entries), r=r_agg, v=v_agg)


# -- key=value text files -------------------------------------------------

def _format_kv(pairs) -> str:
    return "".join(f"{key}={value}\n" for key, value in pairs)


def _parse_kv(text: str, path: str = "<memory>") -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DecodeError(f"{path}:{lineno}: expected key=value", field="line")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _hex(value) -> str:
    return format(int(value), "x")


def _get(values: dict, key: str, path: str) -> str:
    if key not in values:
        raise DecodeError(f"{path}: missing key {key!r}", field=key)
    return values[key]


def _get_int(values: dict, key: str, path: str) -> mpz:
    raw = _get(values, key, path)
    try:
        return mpz(int(raw, 16))
    except ValueError as exc:
        raise DecodeError(f"{path}: bad hex for {key!r}", field=key) from exc


def _get_bytes(values: dict, key: str, path: str) -> bytes:
    raw = _get(values, key, path)
    try:
        return bytes.fromhex(raw)
    except ValueError as exc:
        raise DecodeError(f"{path}: bad hex for {key!r}", field=key) from exc


def group_params_text(params: GroupParams) -> str:
    return _format_kv([
        ("p", _hex(params.p)),
        ("q", _hex(params.q)),
        ("cofactor", _hex(params.cofactor)),
        ("Px", _hex(params.px)),
        ("Py", _hex(params.py)),
        ("l", _hex(params.security_level)),
    ])


def parse_group_params(text: str, path: str = "<memory>") -> GroupParams:
    values = _parse_kv(text, path)
    params = GroupParams(
        p=_get_int(values, "p", path),
        q=_get_int(values, "q", path),
        cofactor=_get_int(values, "cofactor", path),
        px=_get_int(values, "Px", path),
        py=_get_int(values, "Py", path),
        security_level=int(_get_int(values, "l", path)),
    )
    try:
        params.validate()
    except ValueError as exc:
        raise DecodeError(f"{path}: {exc}", field="params") from exc
    return params


def system_params_text(params: SystemParams) -> str:
    p0x, p0y = params.p0
    return group_params_text(params.group) + _format_kv([
        ("P0x", _hex(p0x)),
        ("P0y", _hex(p0y)),
    ])


def parse_system_params(text: str, path: str = "<memory>") -> SystemParams:
    values = _parse_kv(text, path)
    group = parse_group_params(text, path)
    p0 = (_get_int(values, "P0x", path), _get_int(values, "P0y", path))
    if not in_subgroup(group, p0):
        raise DecodeError(f"{path}: P0 is not a valid subgroup point", field="P0x")
    return SystemParams(group=group, p0=p0)


def master_key_text(msk: MasterSecretKey) -> str:
    return _format_kv([("s", _hex(msk.s))])


def parse_master_key(text: str, path: str = "<memory>") -> MasterSecretKey:
    values = _parse_kv(text, path)
    return MasterSecretKey(s=int(_get_int(values, "s", path)))


def credentials_text(creds: VehicleCredentials) -> str:
    return _format_kv([
        ("id", creds.vehicle_id.hex()),
        ("x", _hex(creds.x)),
        ("Qx", _hex(creds.q_point[0])),
        ("Qy", _hex(creds.q_point[1])),
        ("Ppubx", _hex(creds.p_pub[0])),
        ("Ppuby", _hex(creds.p_pub[1])),
        ("Dx", _hex(creds.d[0])),
        ("Dy", _hex(creds.d[1])),
    ])


def parse_credentials(text: str, group: GroupParams, path: str = "<memory>"):
    values = _parse_kv(text, path)
    creds = VehicleCredentials(
        vehicle_id=_get_bytes(values, "id", path),
        x=int(_get_int(values, "x", path)),
        q_point=(_get_int(values, "Qx", path), _get_int(values, "Qy", path)),
        p_pub=(_get_int(values, "Ppubx", path), _get_int(values, "Ppuby", path)),
        d=(_get_int(values, "Dx", path), _get_int(values, "Dy", path)),
    )
    for name, point in (("Q", creds.q_point), ("Ppub", creds.p_pub), ("D", creds.d)):
        if not in_subgroup(group, point):
            raise DecodeError(f"{path}: {name} is not a valid subgroup point",
                              field=name)
    return creds


def signature_record_text(
    delta: bytes,
    vehicle_id: bytes,
    data: bytes,
    p_pub,
    sig: IndividualSignature,
    params: GroupParams,
) -> str:
    return _format_kv([
        ("delta", delta.hex()),
        ("id", vehicle_id.hex()),
        ("data", data.hex()),
        ("ppub", serialize_point(params, p_pub).hex()),
        ("sigr", serialize_point(params, sig.r).hex()),
        ("sigv", serialize_point(params, sig.v).hex()),
    ])


def parse_signature_record(text: str, params: GroupParams, path: str = "<memory>"):
    """Returns (delta, SignedMessage)."""
    values = _parse_kv(text, path)
    delta = _get_bytes(values, "delta", path)
    vehicle_id = _get_bytes(values, "id", path)
    data = _get_bytes(values, "data", path)
    p_pub = deserialize_point(params, _get_bytes(values, "ppub", path), field="ppub")
    sig = IndividualSignature(
        r=deserialize_point(params, _get_bytes(values, "sigr", path), field="sigr"),
        v=deserialize_point(params, _get_bytes(values, "sigv", path), field="sigv"),
    )
    return delta, SignedMessage(
        vehicle_id=vehicle_id, data=data, p_pub=p_pub, signature=sig
    )
