"""Command-line front end.

Subcommands: gen-params, setup, register, sign, aggregate, verify,
simulate, bench. Exit codes: 0 success (and VALID), 1 verification
INVALID, 2 usage, state or decode errors. Every randomized subcommand
takes --seed and is then byte-reproducible.
"""

import argparse
import os
import sys
from dataclasses import replace

from . import bench as bench_mod
from . import simulation as sim_mod
from . import wire
from .curve import default_params, generate_params
from .errors import MdbvError
from .rng import HashDrbg, system_rng
from .scheme import batch_verify, build_batch, register, setup, sign
from .wire import deserialize_batch, serialize_batch

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2


def _rng_from(seed: str | None) -> HashDrbg:
    if seed is None:
        return system_rng()
    return HashDrbg(seed.encode("utf-8"))


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _hex_bytes(value: str, what: str) -> bytes:
    try:
        data = bytes.fromhex(value)
    except ValueError as exc:
        raise MdbvError(f"{what} must be hex: {exc}") from exc
    if not data:
        raise MdbvError(f"{what} must be non-empty")
    return data


def cmd_gen_params(args) -> int:
    params = generate_params(args.l, _rng_from(args.seed).randbytes(32))
    _write_text(args.out, wire.group_params_text(params))
    print(f"wrote group parameters to {args.out}")
    return EXIT_OK


def cmd_setup(args) -> int:
    group = None
    if args.params:
        group = wire.parse_group_params(_read_text(args.params), args.params)
    system, msk = setup(args.l, _rng_from(args.seed), group=group)
    _write_text(args.out, wire.system_params_text(system))
    _write_text(args.msk, wire.master_key_text(msk))
    print(f"wrote system parameters to {args.out} and master key to {args.msk}")
    return EXIT_OK


def _load_system(args):
    return wire.parse_system_params(_read_text(args.params), args.params)


def cmd_register(args) -> int:
    system = _load_system(args)
    msk = wire.parse_master_key(_read_text(args.msk), args.msk)
    creds = register(msk, args.id.encode("utf-8"), system, _rng_from(args.seed))
    _write_text(args.out, wire.credentials_text(creds))
    print(f"registered {args.id!r}; credentials in {args.out}")
    return EXIT_OK


def cmd_sign(args) -> int:
    system = _load_system(args)
    creds = wire.parse_credentials(_read_text(args.creds), system.group, args.creds)
    delta = _hex_bytes(args.delta, "--delta")
    with open(args.data, "rb") as handle:
        data = handle.read()
    sig = sign(data, delta, creds, system, _rng_from(args.seed))
    _write_text(
        args.out,
        wire.signature_record_text(delta, creds.vehicle_id, data, creds.p_pub,
                                   sig, system.group),
    )
    print(f"signed {args.data}; signature record in {args.out}")
    return EXIT_OK


def cmd_aggregate(args) -> int:
    system = _load_system(args)
    names = sorted(
        name for name in os.listdir(args.directory)
        if os.path.isfile(os.path.join(args.directory, name))
    )
    if not names:
        raise MdbvError(f"no signature files in {args.directory}")
    delta = None
    delta_source = None
    messages = []
    for name in names:
        path = os.path.join(args.directory, name)
        record_delta, message = wire.parse_signature_record(
            _read_text(path), system.group, path
        )
        if delta is None:
            delta, delta_source = record_delta, path
        elif record_delta != delta:
            raise MdbvError(
                f"state info mismatch: {path} disagrees with {delta_source}"
            )
        messages.append(message)
    batch = build_batch(delta, messages, system.group)
    blob = serialize_batch(batch, system.group)
    with open(args.out, "wb") as handle:
        handle.write(blob)
    print(f"aggregated {len(messages)} signatures into {args.out} ({len(blob)} bytes)")
    return EXIT_OK


def cmd_verify(args) -> int:
    system = _load_system(args)
    with open(args.batch, "rb") as handle:
        blob = handle.read()
    batch = deserialize_batch(blob, system.group)
    if batch_verify(batch, system):
        print("VALID")
        return EXIT_OK
    print("INVALID")
    return EXIT_INVALID


def cmd_simulate(args) -> int:
    if args.config:
        cfg = sim_mod.parse_scenario_config(_read_text(args.config), args.config)
    else:
        cfg = sim_mod.ScenarioConfig(n_vehicles=20, n_rounds=5)
    overrides = {}
    if args.n is not None:
        overrides["n_vehicles"] = args.n
    if args.rounds is not None:
        overrides["n_rounds"] = args.rounds
    if args.corruption is not None:
        overrides["corruption_rate"] = args.corruption
    if args.areas is not None:
        overrides["area_count"] = args.areas
    if args.data_size is not None:
        overrides["data_size"] = args.data_size
    if args.seed is not None:
        overrides["rng_seed"] = args.seed.encode("utf-8")
    if overrides:
        cfg = replace(cfg, **overrides)
    cfg.validate()

    if args.compare:
        aggregated, un_agg = sim_mod.compare_modes(cfg)
        _write_text(f"{args.out}_aggregated.csv", aggregated.to_csv())
        _write_text(f"{args.out}_un_agg.csv", un_agg.to_csv())
        summary = aggregated.summary() + "\n" + un_agg.summary()
    else:
        report = sim_mod.run_scenario(cfg)
        _write_text(f"{args.out}.csv", report.to_csv())
        summary = report.summary()
    _write_text(f"{args.out}.txt", summary)
    print(summary, end="")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.n < 1:
        raise MdbvError("--n must be at least 1")
    scheme = bench_mod.normalize_scheme(args.scheme)
    if args.fixtures == "paper":
        fixtures = bench_mod.load_fixtures()
    else:
        timings = bench_mod.measure_primitives(default_params(), args.iterations)
        fixtures = replace(bench_mod.load_fixtures(), timings=timings)

    os.makedirs(args.out, exist_ok=True)
    _write_text(os.path.join(args.out, "costs.csv"),
                bench_mod.costs_csv(fixtures.timings, args.n))
    _write_text(os.path.join(args.out, "sizes.csv"), bench_mod.sizes_csv(args.n))
    _write_text(os.path.join(args.out, "energy.csv"),
                bench_mod.energy_csv(fixtures, args.n))

    prediction = bench_mod.predict_costs(
        bench_mod.COST_MODEL, fixtures.timings, args.n
    )[scheme]
    size = bench_mod.message_size(scheme, args.n)
    print(f"scheme {scheme} n={args.n} (timings: {fixtures.timings.source})")
    print(f"sign_ms={bench_mod.format_ms(prediction.sign_ms)}")
    print(f"verify_ms={bench_mod.format_ms(prediction.verify_ms)}")
    print(f"message_bytes={size}")
    for gap in bench_mod.reference_gaps():
        print(
            f"reference gap, {gap.quantity}: analytic "
            f"{bench_mod.format_ms(gap.analytic_ms)} ms vs measured "
            f"{bench_mod.format_ms(gap.measured_ms)} ms "
            f"(gap {bench_mod.format_ms(gap.gap_ms)} ms)"
        )
    if args.energy:
        app = bench_mod.message_size(scheme, args.n)
        print(f"rsu_tx_mJ={bench_mod.format_mj(bench_mod.radio_energy(app, fixtures.radio, 'tx'))}")
        print(f"datacenter_rx_mJ={bench_mod.format_mj(bench_mod.radio_energy(app, fixtures.radio, 'rx'))}")
        print(f"datacenter_compute_mJ={bench_mod.format_mj(bench_mod.compute_energy(fixtures.measured_verify1_ms, fixtures.compute))}")
        total = bench_mod.total_energy(
            scheme, args.n, fixtures.timings, fixtures.radio, fixtures.compute,
            verify_ms=fixtures.measured_verify1_ms if scheme == "MDBV" else None,
        )
        print(f"datacenter_total_mJ={bench_mod.format_mj(total)}")
    print(f"wrote costs.csv, sizes.csv, energy.csv to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdbv",
        description="Certificateless aggregate signatures for monitoring data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-params", help="generate group parameters")
    p.add_argument("--l", type=int, default=80, help="security level in bits")
    p.add_argument("--seed", help="deterministic seed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_params)

    p = sub.add_parser("setup", help="create system parameters and master key")
    p.add_argument("--l", type=int, default=80)
    p.add_argument("--seed")
    p.add_argument("--params", help="reuse an existing group parameter file")
    p.add_argument("--out", required=True, help="system parameter file")
    p.add_argument("--msk", required=True, help="master key file")
    p.set_defaults(func=cmd_setup)

    p = sub.add_parser("register", help="issue credentials for a vehicle")
    p.add_argument("--params", required=True, help="system parameter file")
    p.add_argument("--msk", required=True)
    p.add_argument("--id", required=True, help="vehicle identity")
    p.add_argument("--seed")
    p.add_argument("--out", required=True, help="credentials file")
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("sign", help="sign one data file")
    p.add_argument("--params", required=True)
    p.add_argument("--creds", required=True)
    p.add_argument("--delta", required=True, help="state info, hex")
    p.add_argument("--data", required=True, help="path to the data bytes")
    p.add_argument("--seed")
    p.add_argument("--out", required=True, help="signature record file")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("aggregate",
                       help="aggregate a directory of signature records")
    p.add_argument("directory")
    p.add_argument("--params", required=True)
    p.add_argument("--out", required=True, help="batch file")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("verify", help="batch-verify a batch file")
    p.add_argument("batch")
    p.add_argument("--params", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run the role simulation")
    p.add_argument("--config", help="scenario config file")
    p.add_argument("--n", type=int, help="number of vehicles")
    p.add_argument("--rounds", type=int)
    p.add_argument("--corruption", type=float)
    p.add_argument("--areas", type=int)
    p.add_argument("--data-size", type=int, dest="data_size")
    p.add_argument("--seed")
    p.add_argument("--compare", action="store_true",
                   help="run aggregated and un-agg modes")
    p.add_argument("--out", default="simulation", help="output file prefix")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="cost, size and energy models")
    p.add_argument("--fixtures", choices=("paper", "host"), default="paper")
    p.add_argument("--scheme", default="MDBV")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--energy", action="store_true", help="print energy lines")
    p.add_argument("--iterations", type=int, default=1000,
                   help="host measurement iterations")
    p.add_argument("--out", default=".", help="directory for the CSV files")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MdbvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
