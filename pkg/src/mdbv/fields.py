"""Arithmetic in the base field F_p and its quadratic extension F_p2.

F_p2 is realized as F_p(i) with i^2 = -1, which is a field exactly when
p = 3 (mod 4); every parameter set in this package satisfies that.
Elements are kept as canonical residues in [0, p).
"""

import gmpy2
from gmpy2 import mpz


def inv_mod(a, p):
    """Modular inverse of a (mod p)."""
    return gmpy2.invert(a, p)


def legendre(a, p) -> int:
    """Legendre symbol: 1 for a quadratic residue, -1 for a non-residue, 0 for 0."""
    a = a % p
    if a == 0:
        return 0
    t = gmpy2.powmod(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def sqrt_mod(a, p):
    """A square root of a (mod p) for p = 3 (mod 4); caller checks residuosity."""
    return gmpy2.powmod(a, (p + 1) // 4, p)


class Fp2:
    """Element a + b*i of F_p2, with componentwise canonical reduction."""

    __slots__ = ("a", "b", "p")

    def __init__(self, a, b, p):
        self.a = a % p
        self.b = b % p
        self.p = p

    @classmethod
    def one(cls, p):
        return cls(mpz(1), mpz(0), p)

    def __eq__(self, other):
        return (
            isinstance(other, Fp2)
            and self.a == other.a
            and self.b == other.b
            and self.p == other.p
        )

    def __hash__(self):
        return hash((int(self.a), int(self.b), int(self.p)))

    def __repr__(self):
        return f"Fp2({self.a:#x}, {self.b:#x})"

    def __mul__(self, other):
        p = self.p
        a, b = self.a, self.b
        c, d = other.a, other.b
        # (a + bi)(c + di) = (ac - bd) + (ad + bc)i
        ac = a * c
        bd = b * d
        return Fp2(ac - bd, (a + b) * (c + d) - ac - bd, p)

    def square(self):
        p = self.p
        a, b = self.a, self.b
        # (a + bi)^2 = (a - b)(a + b) + 2abi
        return Fp2((a - b) * (a + b), 2 * a * b, p)

    def conjugate(self):
        return Fp2(self.a, self.p - self.b if self.b else self.b, self.p)

    def inverse(self):
        p = self.p
        norm = (self.a * self.a + self.b * self.b) % p
        ninv = inv_mod(norm, p)
        return Fp2(self.a * ninv, -self.b * ninv, p)

    def pow(self, e: int) -> "Fp2":
        e = int(e)
        if e < 0:
            return self.inverse().pow(-e)
        result = Fp2.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base.square()
            e >>= 1
        return result

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0
