"""Thin layer over mpmath's interval context.

Complex quantities are rectangles (independent real/imaginary intervals).
mpmath's ``iv`` context provides outward-rounded arithmetic and enough
elementary functions; this module adds the conventions the geometry code
relies on: a precision guard, safe logarithms away from the branch cut,
strict sign tests, and serialization of enclosures as decimal endpoint
strings (parsed back with outward rounding, so round-trips stay rigorous).
"""

from contextlib import contextmanager

import mpmath
from mpmath import iv, mp


class PrecisionError(ArithmeticError):
    """An interval operation could not be performed safely at this precision."""


@contextmanager
def precision(bits):
    old_iv, old_mp = iv.prec, mp.prec
    iv.prec = bits
    mp.prec = bits
    try:
        yield
    finally:
        iv.prec = old_iv
        mp.prec = old_mp


def civ(z):
    """Complex rectangle from a python complex / float / existing box."""
    if isinstance(z, iv.mpc):
        return z
    if isinstance(z, complex):
        return iv.mpc(iv.mpf(z.real), iv.mpf(z.imag))
    return iv.mpc(iv.mpf(z), iv.mpf(0))


def civ_box(re_lo, re_hi, im_lo, im_hi):
    return iv.mpc(iv.mpf([re_lo, re_hi]), iv.mpf([im_lo, im_hi]))


def mid(x):
    """Midpoint of an interval as an mp number at current precision."""
    return mp.mpf(x.mid.a)


def cmid(z):
    return mp.mpc(mid(z.real), mid(z.imag))


def width(x):
    return float(x.delta.b)


def cwidth(z):
    return max(width(z.real), width(z.imag))


def contains_zero(x):
    return x.a <= 0 <= x.b


def is_positive(x):
    return x.a > 0


def is_negative(x):
    return x.b < 0


def sign_of(x):
    """+1 / -1 when the interval has strict sign, else 0 (undecided)."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return 0


def clog(z):
    """Principal log of a rectangle that stays off the branch cut.

    Safe whenever the imaginary part has a strict sign, or the real part is
    strictly positive.  Raises PrecisionError otherwise.
    """
    im = z.imag
    re = z.real
    if not (im.a > 0 or im.b < 0 or re.a > 0):
        raise PrecisionError("log argument box touches the branch cut")
    return iv.log(z)


def csqrt_abs(z):
    """|z| as a real interval."""
    return iv.sqrt(z.real * z.real + z.imag * z.imag)


def carg(z):
    """Principal argument of a box avoiding the branch cut."""
    im = z.imag
    re = z.real
    if not (im.a > 0 or im.b < 0 or re.a > 0):
        raise PrecisionError("arg box touches the branch cut")
    return iv.atan2(im, re)


def in_interior(inner, outer):
    """Strict containment of complex rectangles."""
    return (outer.real.a < inner.real.a and inner.real.b < outer.real.b
            and outer.imag.a < inner.imag.a and inner.imag.b < outer.imag.b)


def hull(a, b):
    return iv.mpc(iv.mpf([min(a.real.a, b.real.a), max(a.real.b, b.real.b)]),
                  iv.mpf([min(a.imag.a, b.imag.a), max(a.imag.b, b.imag.b)]))


def blow_up(z, radius):
    r = iv.mpf([-radius, radius])
    return iv.mpc(z.real + r, z.imag + r)


def mat_vec(M, v):
    n = len(v)
    return [sum((M[i][j] * v[j] for j in range(n)), civ(0j)) for i in range(len(M))]


def mat_mat(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), civ(0j))
             for j in range(cols)] for i in range(rows)]


def interval_str(x, digits=None):
    """Decimal endpoint pair enclosing the interval."""
    if digits is None:
        digits = int(iv.prec / 3.32) + 3
    return (mpmath.nstr(mp.mpf(x.a), digits, strip_zeros=False),
            mpmath.nstr(mp.mpf(x.b), digits, strip_zeros=False))


def interval_from_str(pair):
    return iv.mpf([pair[0], pair[1]])


def cinterval_str(z, digits=None):
    return (interval_str(z.real, digits), interval_str(z.imag, digits))


def cinterval_from_str(pair):
    return iv.mpc(interval_from_str(pair[0]), interval_from_str(pair[1]))
