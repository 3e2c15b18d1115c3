"""Floating-point solving of the gluing equations.

Newton iteration on a square subsystem: all edge rows except one per cusp
(dropped so the remaining rows are independent; the dropped ones are exact
integer combinations of the kept ones), plus the meridian completeness row
of every cusp.  Peripheral rows have their integer right-hand sides snapped
to the nearest admissible multiple of i*pi during iteration and frozen on
convergence.

When iteration stalls, the triangulation is re-randomized by a short
random Pachner walk and the attempt repeats, up to the configured retry
count.
"""

import random

import numpy as np

from ..tri.moves import (pachner_2_3, pachner_3_2, two_three_candidates,
                         three_two_candidates)
from .equations import GluingSystem

_IPI = 1j * np.pi


class NumericSolution:
    def __init__(self, found, tri, system, shapes, residual, cusp_ks, dropped_edges):
        self.found = found
        self.tri = tri
        self.system = system
        self.shapes = shapes
        self.residual = residual
        self.cusp_ks = cusp_ks          # frozen i*pi multiples of peripheral rows
        self.dropped_edges = dropped_edges

    def __repr__(self):
        state = "Found" if self.found else "NotFound"
        return "NumericSolution(%s, residual=%.3g)" % (state, self.residual or float("nan"))


def select_dropped_edges(system):
    """One edge class per cusp whose rows are redundant, chosen so the
    integer minor of the cusp/edge end-count matrix is invertible."""
    weights = system.cusp_edge_weights()
    c = len(weights)
    ne = len(system.edge_rows)
    # fraction-free Gaussian elimination with column pivoting
    from fractions import Fraction
    M = [[Fraction(x) for x in row] for row in weights]
    chosen = []
    used = set()
    for i in range(c):
        pivot_col = None
        for j in range(ne):
            if j in used:
                continue
            if M[i][j] != 0:
                pivot_col = j
                break
        if pivot_col is None:
            raise RuntimeError("cusp/edge weight matrix is singular")
        used.add(pivot_col)
        chosen.append(pivot_col)
        for i2 in range(c):
            if i2 != i and M[i2][pivot_col] != 0:
                f = M[i2][pivot_col] / M[i][pivot_col]
                for j in range(ne):
                    M[i2][j] -= f * M[i][j]
    return chosen


def square_system(system, dropped):
    """Rows of the square Newton system: kept edge rows + meridians."""
    rows = [r for i, r in enumerate(system.edge_rows) if i not in set(dropped)]
    peripheral = [c.meridian_row for c in system.cusps]
    return rows, peripheral


def _row_matrices(rows):
    A = np.array([r.A for r in rows], dtype=np.int64)
    B = np.array([r.B for r in rows], dtype=np.int64)
    k = np.array([r.k for r in rows], dtype=np.int64)
    return A, B, k


def _snap_parity(value, parity):
    """Nearest integer of given parity to ``value``."""
    k = np.round((value - parity) / 2.0) * 2 + parity
    return k


def newton_attempt(system, seed=0, max_iter=60, tol=1e-11, require_positive=True):
    """One Newton run on the given system.  Returns (shapes, residual,
    cusp_ks, dropped) or None."""
    n = system.n
    dropped = select_dropped_edges(system)
    edge_rows, cusp_rows = square_system(system, dropped)
    Ae, Be, ke = _row_matrices(edge_rows)
    Ac, Bc, kc_par = _row_matrices(cusp_rows)
    kc_parity = np.mod(kc_par, 2)

    rng = np.random.default_rng(seed)
    z = np.full(n, np.exp(1j * np.pi / 3), dtype=complex)
    z += (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * 1e-3

    kc = None
    for it in range(max_iter):
        if np.any(np.abs(z) < 1e-14) or np.any(np.abs(1 - z) < 1e-14):
            return None
        lz = np.log(z)
        lw = np.log(1 - z)
        fe = Ae @ lz + Be @ lw - 1j * np.pi * ke
        vc = Ac @ lz + Bc @ lw
        kc = _snap_parity(np.imag(vc) / np.pi, kc_parity)
        fc = vc - 1j * np.pi * kc
        F = np.concatenate([fe, fc])
        res = np.max(np.abs(F)) if len(F) else 0.0
        if res < tol:
            if require_positive and np.any(np.imag(z) <= 1e-9):
                return None
            return z, res, [int(x) for x in kc], dropped
        J = np.vstack([
            Ae / z[None, :] + Be / (z[None, :] - 1),
            Ac / z[None, :] + Bc / (z[None, :] - 1),
        ])
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return None
        limit = np.max(np.abs(step))
        if limit > 0.5:
            step = step * (0.5 / limit)
        z = z - step
    return None


def random_pachner_walk(tri, rng, max_steps=6):
    """Short random 2-3/3-2 walk used to re-randomize a stalled solve."""
    cur = tri
    for _ in range(rng.randrange(1, max_steps + 1)):
        ups = two_three_candidates(cur)
        downs = three_two_candidates(cur)
        moves = [("u", m) for m in ups] + [("d", m) for m in downs]
        if not moves:
            return cur
        kind, m = moves[rng.randrange(len(moves))]
        cur = pachner_2_3(cur, m[0], m[1]) if kind == "u" else pachner_3_2(cur, m)
    return cur


def solve_shapes_numeric(tri, retries=1, seed=0, require_positive=True):
    """Try to find a geometric solution, re-randomizing the triangulation
    between attempts.  Deterministic for fixed (tri, retries, seed)."""
    rng = random.Random(seed)
    cur = tri
    system = None
    for attempt in range(max(1, retries)):
        try:
            system = GluingSystem(cur.oriented())
        except ValueError:
            return NumericSolution(False, tri, None, None, None, None, None)
        got = newton_attempt(system, seed=seed + attempt,
                             require_positive=require_positive)
        if got is not None:
            z, res, kc, dropped = got
            return NumericSolution(True, system.tri, system, z, res, kc, dropped)
        cur = random_pachner_walk(tri, rng)
    return NumericSolution(False, tri, system, None, None, None, None)
