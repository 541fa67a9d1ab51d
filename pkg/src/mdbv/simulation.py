"""Deterministic role simulation: vehicles sign monitoring data, road-side
units aggregate per state info, the data center batch-verifies.

Every random draw (keys, payloads, corruption) comes from one seeded
generator consumed in a fixed order, so a config and seed pin the entire
run byte-for-byte. Verification failures are recorded as data; only
configuration mistakes raise.

Corruption model: with the configured probability per signed item, one
uniformly chosen bit is flipped in the item's wire bytes (payload or one
of the two compressed signature points). A flipped point that no longer
decodes makes the road-side unit drop the group (aggregated mode) or the
data center reject the item (un-agg mode); either way the round counts as
rejected, never as an error.
"""

import struct
from dataclasses import dataclass, replace

from .counters import OpCounts, count_ops
from .curve import GroupParams, deserialize_point, serialize_point
from .errors import DecodeError, SimulationStateError
from .rng import HashDrbg
from .scheme import (
    IndividualSignature,
    SignedMessage,
    batch_verify,
    build_batch,
    register,
    setup,
    sign,
    verify_individual,
)
from .wire import _parse_kv, deserialize_batch, serialize_batch

MODE_AGGREGATED = "aggregated"
MODE_UN_AGG = "un_agg"


@dataclass(frozen=True)
class ScenarioConfig:
    n_vehicles: int
    n_rounds: int
    data_size: int = 20
    corruption_rate: float = 0.0
    mode: str = MODE_AGGREGATED
    rng_seed: bytes = b"mdbv-simulation"
    area_count: int = 1
    security_level: int = 80
    group: GroupParams | None = None  # reuse pre-generated group parameters

    def validate(self) -> None:
        if self.n_vehicles < 1:
            raise ValueError("need at least one vehicle")
        if self.n_rounds < 1:
            raise ValueError("need at least one round")
        if self.data_size < 1:
            raise ValueError("data size must be positive")
        if not 0.0 <= self.corruption_rate <= 1.0:
            raise ValueError("corruption rate must lie in [0, 1]")
        if self.mode not in (MODE_AGGREGATED, MODE_UN_AGG):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.area_count < 1:
            raise ValueError("need at least one area")
        if not self.rng_seed:
            raise ValueError("rng seed must be non-empty")


@dataclass(frozen=True)
class RoundRecord:
    round_index: int
    area: int
    n: int
    accepted: bool
    decode_ok: bool
    sign_ops: OpCounts
    aggregate_ops: OpCounts
    verify_ops: OpCounts
    message_bytes: int
    item_results: tuple | None = None  # per-item verdicts in un-agg mode


@dataclass(frozen=True)
class SimulationReport:
    mode: str
    records: tuple

    @property
    def all_accepted(self) -> bool:
        return all(r.accepted for r in self.records)

    @property
    def total_bytes(self) -> int:
        return sum(r.message_bytes for r in self.records)

    def total_ops(self, phase: str) -> OpCounts:
        total = OpCounts()
        for record in self.records:
            total = total + getattr(record, f"{phase}_ops")
        return total

    def to_csv(self) -> str:
        lines = [
            "round,area,n,accepted,decode_ok,"
            "sign_m,sign_h,sign_p,agg_m,agg_h,agg_p,"
            "verify_m,verify_h,verify_p,bytes"
        ]
        for r in self.records:
            lines.append(
                f"{r.round_index},{r.area},{r.n},"
                f"{int(r.accepted)},{int(r.decode_ok)},"
                f"{r.sign_ops.m},{r.sign_ops.h},{r.sign_ops.p},"
                f"{r.aggregate_ops.m},{r.aggregate_ops.h},{r.aggregate_ops.p},"
                f"{r.verify_ops.m},{r.verify_ops.h},{r.verify_ops.p},"
                f"{r.message_bytes}"
            )
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        lines = [f"mode: {self.mode}"]
        for r in self.records:
            verdict = "VALID" if r.accepted else "INVALID"
            note = "" if r.decode_ok else " (signature decode failed)"
            lines.append(
                f"round {r.round_index} area {r.area}: n={r.n} {verdict}"
                f" bytes={r.message_bytes}{note}"
            )
        sign_ops = self.total_ops("sign")
        verify_ops = self.total_ops("verify")
        lines.append(
            f"totals: sign M={sign_ops.m} H={sign_ops.h} P={sign_ops.p}; "
            f"verify M={verify_ops.m} H={verify_ops.h} P={verify_ops.p}; "
            f"bytes={self.total_bytes}"
        )
        lines.append("all rounds VALID" if self.all_accepted
                     else "some rounds INVALID")
        return "\n".join(lines) + "\n"


@dataclass
class _WireItem:
    """A vehicle's message as the road-side unit receives it."""

    vehicle_id: bytes
    data: bytearray
    p_pub: tuple
    r_bytes: bytearray
    v_bytes: bytearray
    area: int


class Simulation:
    """Stepwise simulation with dynamic vehicle membership."""

    def __init__(self, cfg: ScenarioConfig):
        cfg.validate()
        self.cfg = cfg
        self.rng = HashDrbg(cfg.rng_seed)
        self.params, self._msk = setup(cfg.security_level, self.rng, group=cfg.group)
        self.vehicles: dict = {}  # id -> (credentials, area)
        self._joined = 0
        self.round_index = 0
        self.records: list = []
        for i in range(cfg.n_vehicles):
            self.join_vehicle(b"VEH-%04d" % i)

    def join_vehicle(self, vehicle_id: bytes) -> None:
        """Register a new vehicle; it signs from the next round on."""
        if vehicle_id in self.vehicles:
            raise SimulationStateError(f"vehicle {vehicle_id!r} is already active")
        creds = register(self._msk, vehicle_id, self.params, self.rng)
        area = self._joined % self.cfg.area_count
        self._joined += 1
        self.vehicles[vehicle_id] = (creds, area)

    def leave_vehicle(self, vehicle_id: bytes) -> None:
        if vehicle_id not in self.vehicles:
            raise SimulationStateError(f"vehicle {vehicle_id!r} is not active")
        del self.vehicles[vehicle_id]

    def delta_for(self, area: int) -> bytes:
        """State info for an area: area id plus a per-round epoch counter."""
        return b"area" + struct.pack(">II", area, self.round_index)

    def _maybe_corrupt(self, item: _WireItem) -> None:
        if self.rng.random() >= self.cfg.corruption_rate:
            return
        target = (item.data, item.r_bytes, item.v_bytes)[self.rng.randbelow(3)]
        bit = self.rng.randbelow(len(target) * 8)
        target[bit // 8] ^= 1 << (bit % 8)

    def run_round(self) -> None:
        cfg = self.cfg
        group = self.params.group
        buckets: dict = {}  # delta -> (area, [items])
        sign_ops_by_area: dict = {}

        for vehicle_id, (creds, area) in self.vehicles.items():
            delta = self.delta_for(area)
            data = self.rng.randbytes(cfg.data_size)
            with count_ops() as ops:
                sig = sign(data, delta, creds, self.params, self.rng)
            item = _WireItem(
                vehicle_id=vehicle_id,
                data=bytearray(data),
                p_pub=creds.p_pub,
                r_bytes=bytearray(serialize_point(group, sig.r)),
                v_bytes=bytearray(serialize_point(group, sig.v)),
                area=area,
            )
            self._maybe_corrupt(item)
            buckets.setdefault(delta, (area, []))[1].append(item)
            totals = sign_ops_by_area.setdefault(area, OpCounts())
            sign_ops_by_area[area] = totals + ops

        for delta in sorted(buckets):
            area, items = buckets[delta]
            record = self._deliver(delta, area, items,
                                   sign_ops_by_area.get(area, OpCounts()))
            self.records.append(record)
        self.round_index += 1

    def _decode_items(self, items):
        """Road-side unit view: turn wire items back into signed messages."""
        group = self.params.group
        decoded = []
        for item in items:
            try:
                sig = IndividualSignature(
                    r=deserialize_point(group, bytes(item.r_bytes), field="R"),
                    v=deserialize_point(group, bytes(item.v_bytes), field="V"),
                )
            except DecodeError:
                decoded.append(None)
                continue
            decoded.append(SignedMessage(
                vehicle_id=item.vehicle_id, data=bytes(item.data),
                p_pub=item.p_pub, signature=sig,
            ))
        return decoded

    def _deliver(self, delta, area, items, sign_ops) -> RoundRecord:
        if self.cfg.mode == MODE_AGGREGATED:
            return self._deliver_aggregated(delta, area, items, sign_ops)
        return self._deliver_un_agg(delta, area, items, sign_ops)

    def _deliver_aggregated(self, delta, area, items, sign_ops) -> RoundRecord:
        group = self.params.group
        decoded = self._decode_items(items)
        if any(m is None for m in decoded):
            return RoundRecord(
                round_index=self.round_index, area=area, n=len(items),
                accepted=False, decode_ok=False,
                sign_ops=sign_ops, aggregate_ops=OpCounts(),
                verify_ops=OpCounts(), message_bytes=0,
            )
        with count_ops() as agg_ops:
            batch = build_batch(delta, decoded, group)
            blob = serialize_batch(batch, group)
        with count_ops() as verify_ops:
            received = deserialize_batch(blob, group)
            accepted = batch_verify(received, self.params)
        return RoundRecord(
            round_index=self.round_index, area=area, n=len(items),
            accepted=accepted, decode_ok=True,
            sign_ops=sign_ops, aggregate_ops=agg_ops,
            verify_ops=verify_ops, message_bytes=len(blob),
        )

    def _deliver_un_agg(self, delta, area, items, sign_ops) -> RoundRecord:
        group = self.params.group
        decoded = self._decode_items(items)
        results = []
        total_bytes = 0
        with count_ops() as verify_ops:
            for message in decoded:
                if message is None:
                    results.append(False)
                    continue
                blob = serialize_batch(build_batch(delta, [message], group), group)
                total_bytes += len(blob)
                received = deserialize_batch(blob, group)
                entry = received.entries[0]
                sig = IndividualSignature(r=received.r, v=received.v)
                results.append(verify_individual(
                    entry.data, received.delta, entry.vehicle_id,
                    entry.p_pub, sig, self.params,
                ))
        return RoundRecord(
            round_index=self.round_index, area=area, n=len(items),
            accepted=all(results), decode_ok=all(m is not None for m in decoded),
            sign_ops=sign_ops, aggregate_ops=OpCounts(),
            verify_ops=verify_ops, message_bytes=total_bytes,
            item_results=tuple(results),
        )

    def report(self) -> SimulationReport:
        return SimulationReport(mode=self.cfg.mode, records=tuple(self.records))


def run_scenario(cfg: ScenarioConfig) -> SimulationReport:
    """Set up once, register the fleet, run every round, report."""
    sim = Simulation(cfg)
    for _ in range(cfg.n_rounds):
        sim.run_round()
    return sim.report()


def compare_modes(cfg: ScenarioConfig):
    """Run the identical seeded scenario aggregated and un-agg.

    Returns (aggregated_report, un_agg_report); outcomes agree
    batch-for-batch while operation and byte counts differ.
    """
    aggregated = run_scenario(replace(cfg, mode=MODE_AGGREGATED))
    un_agg = run_scenario(replace(cfg, mode=MODE_UN_AGG))
    return aggregated, un_agg


def parse_scenario_config(text: str, path: str = "<memory>",
                          group: GroupParams | None = None) -> ScenarioConfig:
    """Scenario from flat key=value text (unknown keys rejected)."""
    values = _parse_kv(text, path)
    known = {
        "n_vehicles": int, "n_rounds": int, "data_size": int,
        "corruption_rate": float, "mode": str, "seed": bytes.fromhex,
        "area_count": int, "security_level": int,
    }
    unknown = set(values) - set(known)
    if unknown:
        raise DecodeError(f"{path}: unknown keys {sorted(unknown)}", field="config")
    kwargs = {}
    for key, convert in known.items():
        if key in values:
            try:
                kwargs[key] = convert(values[key])
            except ValueError as exc:
                raise DecodeError(f"{path}: bad value for {key!r}",
                                  field=key) from exc
    if "seed" in kwargs:
        kwargs["rng_seed"] = kwargs.pop("seed")
    try:
        cfg = ScenarioConfig(group=group, **kwargs)
    except TypeError as exc:
        raise DecodeError(f"{path}: {exc}", field="config") from exc
    cfg.validate()
    return cfg
