"""The five protocol algorithms: setup, registration, signing, aggregation
and batch verification, plus per-signature verification.

A signature on ``data`` under shared state info ``delta`` is the pair
(R, V) with

    R = r*P
    V = g*D + (x*h + r)*U

where h = h2(data || delta || id), g = h2(data || delta || P_pub),
U = H1(delta || P0), D the KGC-issued partial key s*H1(id) and x the
vehicle's self-chosen secret. A batch under one delta then satisfies

    e(V, P) = e(sum g_i*Q_i, P0) * e(sum h_i*P_i + R, U)

with R, V the componentwise sums, which is exactly what
:func:`batch_verify` checks with three pairings.

All hash preimages use length-prefixed field concatenation; raw
concatenation would let an attacker shift bytes between fields.
"""

import struct
from dataclasses import dataclass

from .curve import (
    GroupParams,
    is_on_curve,
    point_add,
    scalar_mul,
    search_group_params,
    serialize_point,
)
from .errors import AggregationError, InvalidIdentityError
from .hashing import hash_to_point, hash_to_scalar
from .pairing import pairing
from .rng import HashDrbg


@dataclass(frozen=True)
class SystemParams:
    """Public system parameters: the group plus the KGC public key P0 = s*P."""

    group: GroupParams
    p0: tuple


@dataclass(frozen=True)
class MasterSecretKey:
    s: int


@dataclass(frozen=True)
class VehicleCredentials:
    """Everything a registered vehicle holds.

    q_point = H1(id) and d = s*q_point come from the KGC; x is the
    vehicle's own secret with public key p_pub = x*P.
    """

    vehicle_id: bytes
    q_point: tuple
    x: int
    p_pub: tuple
    d: tuple


@dataclass(frozen=True)
class IndividualSignature:
    r: tuple
    v: tuple


@dataclass(frozen=True)
class SignedMessage:
    """One vehicle's contribution as it travels to the road-side unit."""

    vehicle_id: bytes
    data: bytes
    p_pub: tuple
    signature: IndividualSignature


@dataclass(frozen=True)
class BatchEntry:
    data: bytes
    vehicle_id: bytes
    p_pub: tuple


@dataclass(frozen=True)
class AggregateBatch:
    """n (data, id, public key) entries plus the aggregated (R, V)."""

    delta: bytes
    entries: tuple
    r: tuple
    v: tuple

    def __post_init__(self):
        if not self.delta:
            raise ValueError("state info delta must be non-empty")
        if len(self.entries) == 0:
            raise AggregationError("a batch needs at least one entry")


def _pack(*fields: bytes) -> bytes:
    """Length-prefixed concatenation: 4-byte big-endian length per field."""
    return b"".join(struct.pack(">I", len(f)) + f for f in fields)


def _scalar_u(delta: bytes, params: SystemParams):
    """U = H1(delta || P0), the per-state-info generator."""
    return hash_to_point(
        _pack(delta, serialize_point(params.group, params.p0)), params.group
    )


def _entry_scalars(data: bytes, delta: bytes, vehicle_id: bytes, p_pub, params):
    h = hash_to_scalar(_pack(data, delta, vehicle_id), params.group)
    g = hash_to_scalar(
        _pack(data, delta, serialize_point(params.group, p_pub)), params.group
    )
    return h, g


def setup(
    security_level_l: int,
    rng: HashDrbg,
    group: GroupParams | None = None,
) -> tuple[SystemParams, MasterSecretKey]:
    """Create system parameters and the KGC master key.

    A pre-generated group may be supplied; otherwise one is searched from
    the rng stream (level 80 gives the default 160/512-bit sizes).
    """
    if security_level_l < 80:
        raise ValueError("security level must be at least 80 bits")
    if group is None:
        q_bits = 2 * security_level_l
        p_bits = max(512, -(-(64 * security_level_l) // 10 // 64) * 64)
        group = search_group_params(q_bits, p_bits, rng, security_level_l)
    s = rng.scalar(group.q)
    p0 = scalar_mul(group, s, group.base_point)
    return SystemParams(group=group, p0=p0), MasterSecretKey(s=s)


def register(
    msk: MasterSecretKey,
    vehicle_id: bytes,
    params: SystemParams,
    rng: HashDrbg,
) -> VehicleCredentials:
    """Issue the partial private key for an identity and draw the vehicle's
    own key pair."""
    if not vehicle_id:
        raise InvalidIdentityError("vehicle identity must be non-empty")
    group = params.group
    q_point = hash_to_point(vehicle_id, group)
    d = scalar_mul(group, msk.s, q_point)
    x = rng.scalar(group.q)
    p_pub = scalar_mul(group, x, group.base_point)
    return VehicleCredentials(
        vehicle_id=bytes(vehicle_id), q_point=q_point, x=x, p_pub=p_pub, d=d
    )


def sign(
    data: bytes,
    delta: bytes,
    creds: VehicleCredentials,
    params: SystemParams,
    rng: HashDrbg,
) -> IndividualSignature:
    """Sign one datum under the shared state info (3 M + 1 H)."""
    if not delta:
        raise ValueError("state info delta must be non-empty")
    group = params.group
    q = int(group.q)
    r = rng.scalar(q)
    big_r = scalar_mul(group, r, group.base_point)
    h, g = _entry_scalars(data, delta, creds.vehicle_id, creds.p_pub, params)
    u = _scalar_u(delta, params)
    v = point_add(
        group,
        scalar_mul(group, g, creds.d),
        scalar_mul(group, (creds.x * h + r) % q, u),
    )
    return IndividualSignature(r=big_r, v=v)


def _require_on_curve(group: GroupParams, named_points) -> None:
    for name, point in named_points:
        if not is_on_curve(group, point):
            raise ValueError(f"{name} is not a curve point")


def verify_individual(
    data: bytes,
    delta: bytes,
    vehicle_id: bytes,
    p_pub,
    sig: IndividualSignature,
    params: SystemParams,
) -> bool:
    """Check e(V, P) = e(g*Q, P0) * e(h*P_pub + R, U) for one signature.

    Malformed points raise; a failed equation returns False.
    """
    group = params.group
    _require_on_curve(group, [("p_pub", p_pub), ("R", sig.r), ("V", sig.v)])
    q_point = hash_to_point(vehicle_id, group)
    u = _scalar_u(delta, params)
    h, g = _entry_scalars(data, delta, vehicle_id, p_pub, params)
    lhs = pairing(group, sig.v, group.base_point)
    rhs = pairing(group, scalar_mul(group, g, q_point), params.p0) * pairing(
        group, point_add(group, scalar_mul(group, h, p_pub), sig.r), u
    )
    return lhs == rhs


def aggregate(sigs, group: GroupParams) -> tuple:
    """Componentwise sums (R, V) = (sum R_i, sum V_i).

    Plain point additions; aggregation carries no M/H/P cost.
    """
    sigs = list(sigs)
    if not sigs:
        raise AggregationError("cannot aggregate an empty signature list")
    r_agg = None
    v_agg = None
    for sig in sigs:
        r_agg = point_add(group, r_agg, sig.r)
        v_agg = point_add(group, v_agg, sig.v)
    return r_agg, v_agg


def batch_verify(batch: AggregateBatch, params: SystemParams) -> bool:
    """Check the whole batch with three pairings (3 P + 2n M + (n+1) H)."""
    group = params.group
    _require_on_curve(group, [("R", batch.r), ("V", batch.v)])
    for index, entry in enumerate(batch.entries):
        if not is_on_curve(group, entry.p_pub):
            raise ValueError(f"entry {index}: public key is not a curve point")
    u = _scalar_u(batch.delta, params)
    s1 = None
    s2 = None
    for entry in batch.entries:
        q_point = hash_to_point(entry.vehicle_id, group)
        h, g = _entry_scalars(entry.data, batch.delta, entry.vehicle_id,
                              entry.p_pub, params)
        s1 = point_add(group, s1, scalar_mul(group, g, q_point))
        s2 = point_add(group, s2, scalar_mul(group, h, entry.p_pub))
    s2 = point_add(group, s2, batch.r)
    lhs = pairing(group, batch.v, group.base_point)
    rhs = pairing(group, s1, params.p0) * pairing(group, s2, u)
    return lhs == rhs


def build_batch(delta: bytes, messages, group: GroupParams) -> AggregateBatch:
    """Aggregate signed messages sharing one delta into a batch."""
    messages = list(messages)
    if not messages:
        raise AggregationError("cannot build a batch from zero messages")
    r_agg, v_agg = aggregate((m.signature for m in messages), group)
    entries = tuple(
        BatchEntry(data=m.data, vehicle_id=m.vehicle_id, p_pub=m.p_pub)
        for m in messages
    )
    return AggregateBatch(delta=bytes(delta), entries=entries, r=r_agg, v=v_agg)
