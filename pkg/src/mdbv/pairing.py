"""Symmetric bilinear pairing e: G1 x G1 -> G2 on y^2 = x^3 + x.

The construction is the modified Tate pairing: a Miller loop of length q
over the first argument, evaluated at the distortion image
phi(x, y) = (-x, i*y) of the second, followed by the final exponentiation
to (p^2 - 1)/q. The distortion map lands outside G1 proper, which is what
makes e(P, P) != 1.

Because the embedding degree is 2, every vertical-line factor of the
Miller function takes values in F_p and is annihilated by the final
exponentiation, so only tangent/chord numerators are accumulated
(denominator elimination). Line evaluations are scaled by powers of Z so
the whole loop runs inversion-free in Jacobian coordinates; the scaling
factors also live in F_p and vanish the same way.
"""

from gmpy2 import mpz

from .counters import tick
from .curve import GroupParams
from .fields import Fp2


class GtElement:
    """Element of the order-q target group (unit subgroup of F_p2)."""

    __slots__ = ("value", "q")

    def __init__(self, value: Fp2, q):
        self.value = value
        self.q = q

    @classmethod
    def unit(cls, params: GroupParams) -> "GtElement":
        return cls(Fp2.one(params.p), params.q)

    def __eq__(self, other):
        return isinstance(other, GtElement) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"GtElement({self.value!r})"

    def __mul__(self, other: "GtElement") -> "GtElement":
        return GtElement(self.value * other.value, self.q)

    def __pow__(self, exponent: int) -> "GtElement":
        e = int(exponent) % int(self.q)
        return GtElement(self.value.pow(e), self.q)

    def inverse(self) -> "GtElement":
        # After the final exponentiation elements are unitary, so the
        # inverse is just the conjugate.
        return GtElement(self.value.conjugate(), self.q)

    def is_one(self) -> bool:
        return self.value.is_one()


def _dbl_step(p, T, xs, yb):
    """Double T and evaluate the tangent line at (xs, i*yb), both scaled."""
    X1, Y1, Z1 = T
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
    # line = -2*YY - M*(xs*ZZ - X1) + i * (Z3*ZZ*yb), up to F_p factors
    re = (-2 * YY - M * (xs * ZZ - X1)) % p
    im = Z3 * ZZ % p * yb % p
    return (X3, Y3, Z3), re, im


def _add_step(p, T, xa, ya, xs, yb):
    """Add the affine base (xa, ya) to T and evaluate the chord at (xs, i*yb).

    Returns (T', re, im); a vertical chord (the final loop step, where
    T = -base) reports ``None`` line components since it is eliminated.
    """
    X1, Y1, Z1 = T
    Z1Z1 = Z1 * Z1 % p
    U2 = xa * Z1Z1 % p
    S2 = ya * Z1 % p * Z1Z1 % p
    H = (U2 - X1) % p
    rr = (S2 - Y1) % p
    if not H:
        if not rr:
            T3, re, im = _dbl_step(p, T, xs, yb)
            return T3, re, im
        return (mpz(1), mpz(1), mpz(0)), None, None
    HH = H * H % p
    I = 4 * HH % p
    J = H * I % p
    V = X1 * I % p
    r2 = 2 * rr % p
    X3 = (r2 * r2 - J - 2 * V) % p
    Y3 = (r2 * (V - X3) - 2 * Y1 * J) % p
    t = Z1 + H
    Z3 = (t * t - Z1Z1 - HH) % p
    HZ = H * Z1 % p
    # line = HZ*ya + (S2 - Y1)*(xs - xa) + i * (-HZ*yb), up to F_p factors
    re = (HZ * ya + rr * (xs - xa)) % p
    im = (-HZ * yb) % p
    return (X3, Y3, Z3), re, im


def pairing(params: GroupParams, a, b) -> GtElement:
    """Bilinear pairing of two subgroup points; counted as one P operation.

    Identity in either argument yields the unit of G2.
    """
    tick("p")
    if a is None or b is None:
        return GtElement.unit(params)
    p = params.p
    xa, ya = a
    xb, yb = b
    xs = (-xb) % p  # distortion image: x of phi(b); its y is i*yb

    q = int(params.q)
    fr, fi = mpz(1), mpz(0)  # Miller accumulator as raw Fp2 components
    T = (xa, ya, mpz(1))
    for i in range(q.bit_length() - 2, -1, -1):
        # f <- f^2 * line_dbl
        sr = (fr - fi) * (fr + fi) % p
        si = 2 * fr * fi % p
        T, lr, li = _dbl_step(p, T, xs, yb)
        fr = (sr * lr - si * li) % p
        fi = (sr * li + si * lr) % p
        if (q >> i) & 1:
            T, lr, li = _add_step(p, T, xa, ya, xs, yb)
            if lr is not None:
                fr, fi = (fr * lr - fi * li) % p, (fr * li + fi * lr) % p

    f = Fp2(fr, fi, p)
    # (p^2 - 1)/q = (p - 1) * cofactor; f^(p-1) = conj(f)/f via Frobenius.
    reduced = f.conjugate() * f.inverse()
    return GtElement(reduced.pow(int(params.cofactor)), params.q)
