"""Hyperbolic volume as a rigorous interval.

The volume of an ideal tetrahedron with shape z is the sum of the
Lobachevsky function at its three dihedral angles,

    vol = L(arg z) + L(arg 1/(1-z)) + L(arg (z-1)/z),

and L(theta) = Cl2(2*theta)/2 with the Clausen function evaluated through

    Cl2(x) = x - x log x + sum_{n>=1} c_n x^{2n+1},
    c_n = |B_{2n}| / (2 (2n)! n (2n+1)),

whose coefficients are exact rationals (Bernoulli numbers), making the
series directly evaluable in interval arithmetic.  Arguments are reduced
to [0, pi] by the odd 2*pi-antiperiodicity Cl2(2*pi - x) = -Cl2(x), where
the series term ratio is at most 1/4.
"""

from fractions import Fraction

import mpmath
from mpmath import iv, mp

from .interval import precision, civ, carg, PrecisionError

_coeff_cache = {}


def _cl2_coeffs(count):
    if count in _coeff_cache:
        return _coeff_cache[count]
    coeffs = []
    fact = 1
    for n in range(1, count + 1):
        for m in (2 * n - 1, 2 * n):
            fact *= m
        p, q = mpmath.bernfrac(2 * n)
        c = Fraction(abs(p), q) / (2 * fact * n * (2 * n + 1))
        coeffs.append(c)
    _coeff_cache[count] = coeffs
    return coeffs


def _cl2_series(x, bits):
    """Cl2 on an interval within [0, pi]; x.a must be > 0."""
    if not x.a > 0:
        raise PrecisionError("Clausen series needs a strictly positive angle")
    nterms = max(8, bits // 2 + 8)
    coeffs = _cl2_coeffs(nterms)
    x2 = x * x
    total = x - x * iv.log(x)
    power = x * x2  # x^3
    for c in coeffs:
        total += iv.mpf(c.numerator) / c.denominator * power
        power *= x2
    # tail: sum_{n>N} 2 x^{2n+1} / (n(2n+1)(2pi)^{2n})
    q = (x / (2 * iv.pi)) ** 2
    qb = iv.mpf(q.b)
    tail_hi = 2 * iv.mpf(x.b) * qb ** (nterms + 1) / (1 - qb)
    total += iv.mpf([-tail_hi.b, tail_hi.b])
    return total


def clausen(theta, bits):
    """Cl2 over an interval inside (0, 2*pi)."""
    pi_lo = iv.pi.a
    if theta.b <= pi_lo:
        return _cl2_series(theta, bits)
    two_pi = 2 * iv.pi
    if theta.a >= iv.pi.b:
        return -_cl2_series(two_pi - theta, bits)
    # straddles pi: split
    left = _cl2_series(iv.mpf([theta.a, iv.pi.b]), bits)
    right = -_cl2_series(two_pi - iv.mpf([pi_lo, theta.b]), bits)
    lo = min(left.a, right.a)
    hi = max(left.b, right.b)
    return iv.mpf([lo, hi])


def lobachevsky(theta, bits):
    return clausen(2 * theta, bits) / 2


def tet_volume(z, bits):
    """Volume interval of the ideal tetrahedron with shape box z (Im > 0)."""
    one = civ(1 + 0j)
    a1 = carg(z)
    a2 = carg(one / (one - z))
    a3 = carg((z - one) / z)
    for a in (a1, a2, a3):
        if not (a.a > 0 and a.b < iv.pi.b):
            raise PrecisionError("dihedral angle not strictly inside (0, pi)")
    return (lobachevsky(a1, bits) + lobachevsky(a2, bits)
            + lobachevsky(a3, bits))


def volume(shapes):
    """Rigorous volume enclosure of a certified ShapeVector."""
    if not shapes.certified:
        raise ValueError("volume needs certified shapes")
    bits = shapes.precision_bits
    with precision(bits):
        total = iv.mpf(0)
        for z in shapes.shapes:
            total += tet_volume(z, bits)
        return total
