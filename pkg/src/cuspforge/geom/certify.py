"""Interval certification of geometric solutions.

Existence and uniqueness of an exact solution inside a shape box is proved
with the Krawczyk containment test on the same square subsystem the
numerical solver used (edge rows minus one redundant row per cusp, plus
meridian rows).  On success the certificate is extended to the full system:

- the dropped edge rows are exact integer combinations of the certified
  ones (the cusp/edge end-count minor used for dropping is invertible), so
  they hold exactly;
- every longitude then acts by a translation once its meridian does,
  provided the meridian translation is nonzero; the cusp module verifies
  the stronger lattice nondegeneracy when cross-sections are built.

Certified boxes always have strictly positive imaginary parts: the
logarithmic branch identities the rows are built on hold on the entire box
only under that condition, so positivity is part of the certificate, not
an afterthought.
"""

from mpmath import iv, mp
import mpmath

from .interval import (precision, civ, blow_up, cmid, in_interior, cwidth,
                       clog, PrecisionError, cinterval_str, cinterval_from_str)
from .newton import select_dropped_edges, square_system

PRECISION_LADDER = (53, 212, 848)


class CertificationFailed(Exception):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class ShapeVector:
    """Certified (or pending) complex interval shapes for a triangulation."""

    def __init__(self, system, shapes, precision_bits, certified, cusp_ks,
                 longitude_ks, dropped_edges):
        self.system = system
        self.shapes = shapes
        self.precision_bits = precision_bits
        self.certified = certified
        self.cusp_ks = cusp_ks
        self.longitude_ks = longitude_ks
        self.dropped_edges = dropped_edges

    @property
    def tri(self):
        return self.system.tri

    def min_im(self):
        lo = None
        hi = None
        for z in self.shapes:
            if lo is None or z.imag.a < lo:
                lo = z.imag.a
            if hi is None or z.imag.b < hi:
                hi = z.imag.b
        return iv.mpf([lo, hi])

    def serialize(self):
        return {
            "precision": self.precision_bits,
            "shapes": [cinterval_str(z) for z in self.shapes],
            "cusp_ks": list(self.cusp_ks),
            "longitude_ks": list(self.longitude_ks),
            "dropped_edges": list(self.dropped_edges),
        }


def row_value(row, logs_z, logs_w):
    """Interval value of sum A log z + B log(1-z)."""
    total = civ(0j)
    for a, lz in zip(row.A, logs_z):
        if a:
            total += a * lz
    for b, lw in zip(row.B, logs_w):
        if b:
            total += b * lw
    return total


def _logs(shapes):
    logs_z = []
    logs_w = []
    one = civ(1 + 0j)
    for z in shapes:
        if not z.imag.a > 0:
            raise PrecisionError("shape box touches the real axis")
        logs_z.append(clog(z))
        logs_w.append(clog(one - z))
    return logs_z, logs_w


def _eval_rows(rows, ks, shapes):
    logs_z, logs_w = _logs(shapes)
    ipi = iv.mpc(iv.mpf(0), iv.pi)
    return [row_value(r, logs_z, logs_w) - ipi * k for r, k in zip(rows, ks)]


def _jacobian(rows, shapes):
    one = civ(1 + 0j)
    inv_z = [one / z for z in shapes]
    inv_w = [one / (z - one) for z in shapes]
    J = []
    for r in rows:
        J.append([a * inv_z[j] + b * inv_w[j]
                  for j, (a, b) in enumerate(zip(r.A, r.B))])
    return J


def _mid_inverse(J):
    n = len(J)
    M = mp.matrix(n, n)
    for i in range(n):
        for j in range(n):
            M[i, j] = cmid(J[i][j])
    try:
        Minv = mp.inverse(M)
    except ZeroDivisionError:
        return None
    return [[civ(complex(0, 0)) + iv.mpc(iv.mpf(mp.re(Minv[i, j])), iv.mpf(mp.im(Minv[i, j])))
             for j in range(n)] for i in range(n)]


def _krawczyk_once(rows, ks, X):
    """One Krawczyk image K(X); returns (K, contracted)."""
    n = len(X)
    y = [cmid(z) for z in X]
    Y = [iv.mpc(iv.mpf(p.real), iv.mpf(p.imag)) for p in y]
    Fy = _eval_rows(rows, ks, Y)
    JX = _jacobian(rows, X)
    C = _mid_inverse(JX)
    if C is None:
        return None, False
    # K = y - C F(y) + (I - C J(X)) (X - y)
    CF = [sum((C[i][j] * Fy[j] for j in range(n)), civ(0j)) for i in range(n)]
    D = [x - yy for x, yy in zip(X, Y)]
    K = []
    contracted = True
    for i in range(n):
        acc = Y[i] - CF[i]
        for j in range(n):
            # (I - C J)_ij
            m = -sum((C[i][k] * JX[k][j] for k in range(n)), civ(0j))
            if i == j:
                m = m + civ(1 + 0j)
            acc = acc + m * D[j]
        K.append(acc)
    for ki, xi in zip(K, X):
        if not in_interior(ki, xi):
            contracted = False
    return K, contracted


def _intersect(a, b):
    re = iv.mpf([max(a.real.a, b.real.a), min(a.real.b, b.real.b)])
    im = iv.mpf([max(a.imag.a, b.imag.a), min(a.imag.b, b.imag.b)])
    if re.a > re.b or im.a > im.b:
        raise PrecisionError("empty intersection")
    return iv.mpc(re, im)


def certify_at_precision(system, approx, cusp_ks, dropped, bits):
    """Krawczyk certification at one precision; raises CertificationFailed."""
    with precision(bits):
        edge_rows, cusp_rows = square_system(system, dropped)
        rows = edge_rows + cusp_rows
        ks = [r.k for r in edge_rows] + list(cusp_ks)
        base = [civ(complex(z)) for z in approx]
        for radius_exp in (max(9, bits // 6), max(6, bits // 10), bits // 3):
            radius = mp.mpf(2) ** (-radius_exp)
            X = [blow_up(z, radius) for z in base]
            ok = True
            for z in X:
                if not z.imag.a > 0:
                    ok = False
            if not ok:
                raise CertificationFailed("ImSignUndecided")
            try:
                K, contracted = _krawczyk_once(rows, ks, X)
            except PrecisionError:
                continue
            if K is None or not contracted:
                continue
            # tighten: a couple of extra Krawczyk sweeps
            box = [_intersect(k, x) for k, x in zip(K, X)]
            for _ in range(3):
                try:
                    K2, c2 = _krawczyk_once(rows, ks, box)
                except PrecisionError:
                    break
                if K2 is None or not c2:
                    break
                box = [_intersect(k, x) for k, x in zip(K2, box)]
            for z in box:
                if not z.imag.a > 0:
                    raise CertificationFailed("ImSignUndecided")
            longitude_ks = _freeze_longitudes(system, box)
            _verify_full_system(system, box, cusp_ks, longitude_ks, dropped)
            return ShapeVector(system, box, bits, True, list(cusp_ks),
                               longitude_ks, list(dropped))
        raise CertificationFailed("NoContraction")


def _freeze_longitudes(system, box):
    """Integer i*pi multiples of the longitude rows, pinned by enclosure."""
    logs_z, logs_w = _logs(box)
    out = []
    for c in system.cusps:
        val = row_value(c.longitude_row, logs_z, logs_w)
        ratio = val.imag / iv.pi
        lo = mpmath.floor(mp.mpf(ratio.a))
        hi = mpmath.ceil(mp.mpf(ratio.b))
        candidates = [k for k in range(int(lo), int(hi) + 1)
                      if ratio.a <= k <= ratio.b
                      and (k - c.longitude_row.k) % 2 == 0]
        if len(candidates) != 1:
            raise CertificationFailed("ImSignUndecided")
        out.append(candidates[0])
    return out


def _verify_full_system(system, box, cusp_ks, longitude_ks, dropped):
    """Interval re-check of every row of the full system on the box.

    The kept rows hold exactly by the Krawczyk certificate; this pass
    asserts the dropped edge rows and the peripheral rows enclose their
    targets, which also guards against bookkeeping mistakes.
    """
    logs_z, logs_w = _logs(box)
    ipi = iv.mpc(iv.mpf(0), iv.pi)
    for eid, row in enumerate(system.edge_rows):
        val = row_value(row, logs_z, logs_w) - ipi * row.k
        if not (val.real.a <= 0 <= val.real.b and val.imag.a <= 0 <= val.imag.b):
            raise CertificationFailed("NoContraction")
    for c, km, kl in zip(system.cusps, cusp_ks, longitude_ks):
        for row, k in ((c.meridian_row, km), (c.longitude_row, kl)):
            val = row_value(row, logs_z, logs_w) - ipi * k
            if not (val.real.a <= 0 <= val.real.b and val.imag.a <= 0 <= val.imag.b):
                raise CertificationFailed("NoContraction")


def certify_shapes(system, approx, cusp_ks=None, dropped=None,
                   ladder=PRECISION_LADDER):
    """Certify an approximate solution, escalating precision as needed.

    ``cusp_ks`` are the frozen meridian targets from the numerical solve
    (recomputed here when omitted).
    """
    import numpy as np
    if cusp_ks is None or dropped is None:
        dropped = select_dropped_edges(system)
        _, cusp_rows = square_system(system, dropped)
        z = np.asarray(approx, dtype=complex)
        ks = []
        for r in cusp_rows:
            val = np.array(r.A) @ np.log(z) + np.array(r.B) @ np.log(1 - z)
            k = round(float(np.imag(val) / np.pi))
            if (k - r.k) % 2:
                k += 1 if np.imag(val) / np.pi > k else -1
            ks.append(int(k))
        cusp_ks = ks
    last = None
    for bits in ladder:
        try:
            return certify_at_precision(system, approx, cusp_ks, dropped, bits)
        except (CertificationFailed, PrecisionError) as e:
            last = e
            continue
    if isinstance(last, CertificationFailed):
        raise last
    raise CertificationFailed("NoContraction")


def shapes_from_serialized(system, data):
    sv = ShapeVector(
        system,
        [cinterval_from_str(p) for p in data["shapes"]],
        data["precision"], True, list(data["cusp_ks"]),
        list(data["longitude_ks"]), list(data["dropped_edges"]))
    return sv
