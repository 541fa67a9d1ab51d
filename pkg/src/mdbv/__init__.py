"""Certificateless aggregate signatures for batch verification of
vehicle-sourced monitoring data, with a symmetric-pairing core, a role
simulation and a cost/energy workbench."""

from .counters import OpCounts, count_ops
from .curve import (
    GroupParams,
    default_params,
    deserialize_point,
    generate_params,
    is_on_curve,
    in_subgroup,
    mul_vartime,
    point_add,
    point_neg,
    scalar_mul,
    search_group_params,
    serialize_point,
)
from .errors import (
    AggregationError,
    DecodeError,
    HashToPointError,
    InvalidIdentityError,
    MdbvError,
    ParameterGenerationError,
    SimulationStateError,
)
from .hashing import hash_to_point, hash_to_scalar
from .pairing import GtElement, pairing
from .rng import HashDrbg, system_rng
from .scheme import (
    AggregateBatch,
    BatchEntry,
    IndividualSignature,
    MasterSecretKey,
    SignedMessage,
    SystemParams,
    VehicleCredentials,
    aggregate,
    batch_verify,
    build_batch,
    register,
    setup,
    sign,
    verify_individual,
)
from .simulation import (
    ScenarioConfig,
    Simulation,
    SimulationReport,
    compare_modes,
    run_scenario,
)
from .wire import deserialize_batch, serialize_batch

__version__ = "0.1.0"

__all__ = [
    "AggregateBatch",
    "AggregationError",
    "BatchEntry",
    "DecodeError",
    "GroupParams",
    "GtElement",
    "HashDrbg",
    "HashToPointError",
    "IndividualSignature",
    "InvalidIdentityError",
    "MasterSecretKey",
    "MdbvError",
    "OpCounts",
    "ParameterGenerationError",
    "ScenarioConfig",
    "SignedMessage",
    "Simulation",
    "SimulationReport",
    "SimulationStateError",
    "SystemParams",
    "VehicleCredentials",
    "aggregate",
    "batch_verify",
    "build_batch",
    "compare_modes",
    "count_ops",
    "default_params",
    "deserialize_batch",
    "deserialize_point",
    "generate_params",
    "hash_to_point",
    "hash_to_scalar",
    "in_subgroup",
    "is_on_curve",
    "mul_vartime",
    "pairing",
    "point_add",
    "point_neg",
    "register",
    "run_scenario",
    "scalar_mul",
    "search_group_params",
    "serialize_batch",
    "serialize_point",
    "setup",
    "sign",
    "system_rng",
    "verify_individual",
]
