"""Group parameters and point arithmetic on the supersingular curve y^2 = x^3 + x.

Over F_p with p = 3 (mod 4) this curve is supersingular with exactly p + 1
points, so picking p + 1 = cofactor * q (q prime) gives a unique subgroup
of prime order q; all public points live there. The quadratic twist
structure (embedding degree 2) is what makes the symmetric pairing in
:mod:`mdbv.pairing` possible.

Points are affine ``(x, y)`` tuples of ``mpz`` with ``None`` as the
identity. Hot loops work in Jacobian coordinates internally.
"""

import functools
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpz

from .counters import tick
from .errors import DecodeError, ParameterGenerationError
from .fields import legendre, sqrt_mod
from .rng import HashDrbg

PRIMALITY_ROUNDS = 64

# Bounded search sizes; exceeding them means the RNG or the target bit
# lengths are unusable, not bad luck.
_MAX_PRIME_ATTEMPTS = 200_000
_MAX_POINT_ATTEMPTS = 10_000


def is_probable_prime(n) -> bool:
    return bool(gmpy2.is_prime(mpz(n), PRIMALITY_ROUNDS))


@dataclass(frozen=True)
class GroupParams:
    """Public description of the pairing group.

    p: base field prime, p = 3 (mod 4)
    q: prime order of the working subgroup, q > 2^security_level
    cofactor: p + 1 = cofactor * q
    px, py: coordinates of the base point P of order q
    security_level: bits (the default ships 160-bit q over 512-bit p)
    """

    p: mpz
    q: mpz
    cofactor: mpz
    px: mpz
    py: mpz
    security_level: int

    @property
    def base_point(self):
        return (self.px, self.py)

    @property
    def fp_bytes(self) -> int:
        """Byte length of one base-field coordinate."""
        return (int(self.p).bit_length() + 7) // 8

    @property
    def point_bytes(self) -> int:
        """Compressed point size: one coordinate plus a parity byte."""
        return self.fp_bytes + 1

    def validate(self) -> None:
        """Check every structural invariant; raises ValueError on failure."""
        p, q = self.p, self.q
        if not is_probable_prime(p):
            raise ValueError("p is not prime")
        if not is_probable_prime(q):
            raise ValueError("q is not prime")
        if p % 4 != 3:
            raise ValueError("p must be 3 (mod 4)")
        if (p + 1) % q != 0:
            raise ValueError("q must divide p + 1")
        if self.cofactor * q != p + 1:
            raise ValueError("cofactor does not match p + 1 = cofactor * q")
        if q <= (1 << self.security_level):
            raise ValueError("q must exceed 2^security_level")
        P = self.base_point
        if not is_on_curve(self, P):
            raise ValueError("base point is not on the curve")
        if P is None or mul_vartime(self, q, P) is not None:
            raise ValueError("base point does not have order q")


def _to_mpz_point(point):
    if point is None:
        return None
    x, y = point
    return (mpz(x), mpz(y))


def is_on_curve(params: GroupParams, point) -> bool:
    if point is None:
        return True
    p = params.p
    x, y = point
    return (y * y - (x * x * x + x)) % p == 0


def in_subgroup(params: GroupParams, point) -> bool:
    """Order of ``point`` divides q (identity included)."""
    return is_on_curve(params, point) and mul_vartime(params, params.q, point) is None


def point_neg(params: GroupParams, point):
    if point is None:
        return None
    x, y = point
    return (x, (-y) % params.p)


def point_add(params: GroupParams, a, b):
    """Affine short-Weierstrass group law; identity handled structurally."""
    if a is None:
        return b
    if b is None:
        return a
    p = params.p
    x1, y1 = a
    x2, y2 = b
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + 1) * gmpy2.invert(2 * y1, p) % p
    else:
        lam = (y2 - y1) * gmpy2.invert(x2 - x1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


def point_double(params: GroupParams, a):
    return point_add(params, a, a)


# -- Jacobian internals -------------------------------------------------
#
# (X, Y, Z) represents the affine point (X/Z^2, Y/Z^3); Z = 0 is the
# identity. Formulas follow the standard dbl-2007-bl / madd-2007-bl
# sequences specialized to a = 1, b = 0.

def _jac_double(p, X1, Y1, Z1):
    if not Z1:
        return (X1, Y1, Z1)
    XX = X1 * X1 % p
    YY = Y1 * Y1 % p
    YYYY = YY * YY % p
    ZZ = Z1 * Z1 % p
    t = X1 + YY
    S = 2 * (t * t - XX - YYYY) % p
    M = (3 * XX + ZZ * ZZ) % p
    X3 = (M * M - 2 * S) % p
    Y3 = (M * (S - X3) - 8 * YYYY) % p
    t = Y1 + Z1
    Z3 = (t * t - YY - ZZ) % p
    return (X3, Y3, Z3)


def _jac_add_affine(p, X1, Y1, Z1, x2, y2):
    """Mixed addition of Jacobian (X1,Y1,Z1) and affine (x2,y2)."""
    if not Z1:
        return (x2, y2, mpz(1))
    Z1Z1 = Z1 * Z1 % p
    U2 = x2 * Z1Z1 % p
    S2 = y2 * Z1 % p * Z1Z1 % p
    H = (U2 - X1) % p
    r = 2 * (S2 - Y1) % p
    if not H:
        if not r:
            return _jac_double(p, X1, Y1, Z1)
        return (mpz(1), mpz(1), mpz(0))
    HH = H * H % p
    I = 4 * HH % p
    J = H * I % p
    V = X1 * I % p
    X3 = (r * r - J - 2 * V) % p
    Y3 = (r * (V - X3) - 2 * Y1 * J) % p
    t = Z1 + H
    Z3 = (t * t - Z1Z1 - HH) % p
    return (X3, Y3, Z3)


def _jac_to_affine(p, X, Y, Z):
    if not Z:
        return None
    zinv = gmpy2.invert(Z, p)
    zinv2 = zinv * zinv % p
    return (X * zinv2 % p, Y * zinv2 % p * zinv % p)


def scalar_mul(params: GroupParams, k, point):
    """k * point using a double-and-add ladder of fixed bit length.

    The ladder always walks ``q.bit_length()`` bits and computes the
    addition on every step, selecting the result by the key bit, so the
    operation sequence does not depend on the bit pattern of ``k``.
    Counted as one M operation.
    """
    tick("m")
    if point is None:
        return None
    p = params.p
    k = int(k) % int(params.q)
    x2, y2 = point
    T = (mpz(1), mpz(1), mpz(0))
    for i in range(int(params.q).bit_length() - 1, -1, -1):
        T = _jac_double(p, *T)
        U = _jac_add_affine(p, *T, x2, y2)
        T = U if (k >> i) & 1 else T
    return _jac_to_affine(p, *T)


def mul_vartime(params: GroupParams, k, point):
    """Variable-time k * point for public inputs (cofactor clearing,
    subgroup checks). Not counted as an M operation."""
    if point is None or k == 0:
        return None
    p = params.p
    k = int(k)
    x2, y2 = point
    T = (x2, y2, mpz(1))
    for i in range(k.bit_length() - 2, -1, -1):
        T = _jac_double(p, *T)
        if (k >> i) & 1:
            T = _jac_add_affine(p, *T, x2, y2)
    return _jac_to_affine(p, *T)


# -- Parameter generation -----------------------------------------------

def _random_prime(rng: HashDrbg, bits: int):
    for _ in range(_MAX_PRIME_ATTEMPTS):
        candidate = mpz(rng.getrandbits(bits) | (1 << (bits - 1)) | 1)
        if is_probable_prime(candidate):
            return candidate
    raise ParameterGenerationError(f"no {bits}-bit prime found within attempt budget")


def search_group_params(
    q_bits: int, p_bits: int, rng: HashDrbg, security_level: int | None = None
) -> GroupParams:
    """Find parameters with a q_bits subgroup order and a p_bits base field.

    p is searched as cofactor * q - 1 with the cofactor forced to be a
    multiple of 4, which makes p = 3 (mod 4) automatic for odd q.
    """
    if q_bits < 4 or p_bits < q_bits + 4:
        raise ParameterGenerationError("field size must exceed group size by 4+ bits")
    q = _random_prime(rng, q_bits)

    c_min = ((1 << (p_bits - 1)) // q) // 4 + 1
    c_max = ((1 << p_bits) // q) // 4
    if c_max <= c_min:
        raise ParameterGenerationError("no room for a cofactor at these bit lengths")
    p = None
    cofactor = None
    for _ in range(_MAX_PRIME_ATTEMPTS):
        c = 4 * mpz(rng.randrange(c_min, c_max))
        if c % q == 0:
            continue  # keep the q-part of the group cyclic
        candidate = c * q - 1
        if int(candidate).bit_length() != p_bits:
            continue
        if is_probable_prime(candidate):
            p, cofactor = candidate, c
            break
    if p is None:
        raise ParameterGenerationError(f"no {p_bits}-bit field prime found")

    level = security_level if security_level is not None else q_bits // 2
    params = GroupParams(p=p, q=q, cofactor=cofactor, px=mpz(0), py=mpz(0),
                         security_level=level)
    base = _find_base_point(params, rng)
    params = GroupParams(p=p, q=q, cofactor=cofactor, px=base[0], py=base[1],
                         security_level=level)
    params.validate()
    return params


def _find_base_point(params: GroupParams, rng: HashDrbg):
    p = params.p
    for _ in range(_MAX_POINT_ATTEMPTS):
        x = mpz(rng.randbelow(int(p)))
        rhs = (x * x * x + x) % p
        if rhs == 0 or legendre(rhs, p) != 1:
            continue
        y = sqrt_mod(rhs, p)
        cleared = mul_vartime(params, params.cofactor, (x, y))
        if cleared is not None:
            return cleared
    raise ParameterGenerationError("no base point found within attempt budget")


def _sizes_for_level(security_level: int) -> tuple[int, int]:
    # Default level 80 maps to the shipped 160/512 sizes; larger levels
    # scale both proportionally, rounded up to a whole number of limbs.
    q_bits = 2 * security_level
    p_bits = -(-(64 * security_level) // 10 // 64) * 64
    return q_bits, max(p_bits, 512)


def generate_params(security_level_l: int, rng_seed: bytes) -> GroupParams:
    """Deterministically generate group parameters for a security level.

    Level 80 (the default everywhere) yields a 160-bit q over a 512-bit p.
    """
    if security_level_l < 80:
        raise ValueError("security level must be at least 80 bits")
    q_bits, p_bits = _sizes_for_level(security_level_l)
    rng = HashDrbg(rng_seed)
    return search_group_params(q_bits, p_bits, rng, security_level=security_level_l)


@functools.lru_cache(maxsize=1)
def default_params() -> GroupParams:
    """The package-wide 160/512 parameter set (fixed seed, cached)."""
    return generate_params(80, b"mdbv-default-params-v1")


# -- Compressed point encoding ------------------------------------------

def serialize_point(params: GroupParams, point) -> bytes:
    """Big-endian x coordinate followed by one parity byte.

    0x02 marks an even y, 0x03 an odd y; the identity is all zero bytes.
    """
    size = params.fp_bytes
    if point is None:
        return bytes(size + 1)
    x, y = point
    return int(x).to_bytes(size, "big") + (b"\x03" if y & 1 else b"\x02")


def deserialize_point(params: GroupParams, data: bytes, field: str = "point"):
    """Inverse of :func:`serialize_point`; validates curve and subgroup
    membership so every decoded point is safe to use."""
    size = params.fp_bytes
    if len(data) != size + 1:
        raise DecodeError(
            f"expected {size + 1} bytes, got {len(data)}", field=field
        )
    x = mpz(int.from_bytes(data[:size], "big"))
    parity = data[size]
    if parity == 0:
        if x != 0:
            raise DecodeError("identity encoding must be all zero", field=field)
        return None
    if parity not in (2, 3):
        raise DecodeError(f"bad parity byte {parity:#04x}", field=field)
    p = params.p
    if x >= p:
        raise DecodeError("x coordinate out of field range", field=field)
    rhs = (x * x * x + x) % p
    if rhs != 0 and legendre(rhs, p) != 1:
        raise DecodeError("x is not on the curve", field=field)
    y = sqrt_mod(rhs, p)
    if (y & 1) != (parity & 1):
        y = (p - y) % p
    point = (x, y)
    if (y * y - rhs) % p != 0:
        raise DecodeError("x is not on the curve", field=field)
    if mul_vartime(params, params.q, point) is not None:
        raise DecodeError("point is not in the prime-order subgroup", field=field)
    return point
