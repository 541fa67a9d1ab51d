"""Hash functions onto the curve subgroup (H1) and onto scalars (h2)."""

import hashlib

from gmpy2 import mpz

from .counters import tick
from .curve import GroupParams, mul_vartime
from .errors import HashToPointError
from .fields import legendre, sqrt_mod

_TAG_POINT = b"MDBV-H1:"
_TAG_SCALAR = b"MDBV-H2:"

_MAX_COUNTER = 1 << 16


def hash_to_point(msg: bytes, params: GroupParams):
    """Map arbitrary bytes to a point of order q (try-and-increment).

    For counter c = 0, 1, ... an extendable digest of (tag || msg || c)
    supplies a candidate x and a target parity bit; the first x whose
    x^3 + x is a nonzero square gives y (sign fixed by the parity bit),
    and the point is cleared to the order-q subgroup by the cofactor.
    Deterministic in msg; counted as one H operation.
    """
    tick("h")
    p = params.p
    size = params.fp_bytes
    for counter in range(_MAX_COUNTER):
        shake = hashlib.shake_256(_TAG_POINT + msg + counter.to_bytes(4, "big"))
        digest = shake.digest(size + 1)
        x = mpz(int.from_bytes(digest[:size], "big")) % p
        want_odd = digest[size] & 1
        rhs = (x * x * x + x) % p
        if rhs == 0 or legendre(rhs, p) != 1:
            continue
        y = sqrt_mod(rhs, p)
        if (y & 1) != want_odd:
            y = p - y
        point = mul_vartime(params, params.cofactor, (x, y))
        if point is not None:
            return point
    raise HashToPointError(
        "no curve point found in 2^16 attempts; group parameters look broken"
    )


def hash_to_scalar(msg: bytes, params: GroupParams) -> int:
    """Map arbitrary bytes to a nonzero scalar mod q."""
    q = int(params.q)
    value = int.from_bytes(hashlib.sha256(_TAG_SCALAR + msg).digest(), "big") % q
    counter = 0
    while value == 0:
        counter += 1
        retry = _TAG_SCALAR + msg + bytes([counter & 0xFF])
        value = int.from_bytes(hashlib.sha256(retry).digest(), "big") % q
    return value
