"""
A tour of the bilinear group
============================

Build group parameters, poke at the curve arithmetic, and watch the
pairing behave bilinearly. Run from the repository root:

    python demos/01_pairing_playground.py
"""

from mdbv import (
    HashDrbg,
    generate_params,
    hash_to_point,
    hash_to_scalar,
    mul_vartime,
    pairing,
    point_add,
    scalar_mul,
    search_group_params,
    serialize_point,
    deserialize_point,
)

# The default security level is 80 bits: a 160-bit prime group order q
# over a 512-bit base field p, on the supersingular curve y^2 = x^3 + x
# with p + 1 = cofactor * q. Generation is deterministic in the seed.
params = generate_params(80, b"demo-seed")
print("p bits:", int(params.p).bit_length())
print("q bits:", int(params.q).bit_length())
print("p mod 4:", int(params.p) % 4)

# The base point P generates the order-q subgroup, so q*P vanishes.
P = params.base_point
print("q*P is the identity:", scalar_mul(params, params.q, P) is None)

# e(aP, bP) = e(P, P)^(ab): the pairing turns point multiplication into
# exponent arithmetic. That is the whole trick behind batch verification.
rng = HashDrbg(b"demo-scalars")
a = rng.scalar(params.q)
b = rng.scalar(params.q)
aP = scalar_mul(params, a, P)
bP = scalar_mul(params, b, P)
e_pp = pairing(params, P, P)
print("e(P,P) is non-degenerate:", not e_pp.is_one())
print("bilinearity holds:", pairing(params, aP, bP) == e_pp ** (a * b))
print("symmetry holds:", pairing(params, aP, bP) == pairing(params, bP, aP))

# Hashing to the curve: arbitrary bytes land on an order-q point.
Q = hash_to_point(b"vehicle-007", params)
print("hashed point in subgroup:", mul_vartime(params, params.q, Q) is None)
print("hash-to-scalar:", hash_to_scalar(b"vehicle-007", params))

# Points travel compressed: the x coordinate plus one parity byte,
# 65 bytes at the default field size.
blob = serialize_point(params, aP)
print("compressed point bytes:", len(blob))
print("round-trips:", deserialize_point(params, blob) == aP)

# Everything works the same on a toy 32-bit field, handy for
# experiments where you want to see full numbers.
toy = search_group_params(16, 32, HashDrbg(b"toy-demo"))
print("\ntoy parameters: p =", int(toy.p), " q =", int(toy.q))
T = toy.base_point
print("toy point:", (int(T[0]), int(T[1])))
print("2*P via add:", point_add(toy, T, T) == scalar_mul(toy, 2, T))
