"""Independent brute-force oracles shared by the test suite.

Everything here favours obviousness over speed and avoids the incremental
machinery used by the production search paths.
"""

from fractions import Fraction
from itertools import permutations

from cuspforge.tri.perm import PERMS, PERM_INDEX, INV, EDGE_VERTS, EDGE_INDEX, EDGE_FACES
from cuspforge.tri.core import Triangulation, ReversedEdge, InvalidGluing
from cuspforge.gen.predicate import candidate_predicate


def brute_canonical(tri):
    """Minimal gluing table over every total relabelling (slow, exact)."""
    n = tri.n
    best = None
    for tet_perm in permutations(range(n)):
        for labels in _vertex_label_choices(n):
            table = []
            ok = True
            for new_t in range(n):
                old_t = tet_perm.index(new_t)
                rp = labels[old_t]
                for new_f in range(4):
                    old_f = PERMS[INV[rp]][new_f]
                    g = tri.glu[4 * old_t + old_f]
                    if g is None:
                        table.append((-1, -1))
                        continue
                    t2, p = g
                    q = _compose3(labels[t2], p, INV[rp])
                    table.append((tet_perm[t2], q))
            if ok and (best is None or table < best):
                best = table
    return tuple(best)


def _compose3(a, b, c):
    from cuspforge.tri.perm import MUL
    return MUL[a][MUL[b][c]]


def _vertex_label_choices(n):
    if n == 1:
        for p in range(24):
            yield (p,)
    elif n == 2:
        for p in range(24):
            for q in range(24):
                yield (p, q)
    else:
        raise ValueError("brute_canonical only supports n <= 2")


def _closed_orbit_too_small(glu, n):
    """True when some fully glued edge orbit has degree <= 2 (walk-based)."""
    seen = set()
    for t in range(n):
        for e in range(6):
            if (t, e) in seen:
                continue
            # walk around the edge in both directions until boundary or close
            cycle, closed, reversed_edge = _walk_edge(glu, t, e)
            seen.update((ct, ce) for ct, ce in cycle)
            if reversed_edge:
                continue  # handled by the constructor in the final filter
            if closed and len(cycle) <= 2:
                return True
    return False


def _walk_edge(glu, t0, e0):
    u, v = EDGE_VERTS[e0]
    wedges = [(t0, e0)]
    reversed_edge = False

    def step(ct, ce, a, b, via):
        g = glu[4 * ct + via]
        if g is None:
            return None
        t2, p = g
        pm = PERMS[p]
        a2, b2 = pm[a], pm[b]
        lo, hi = (a2, b2) if a2 < b2 else (b2, a2)
        return t2, EDGE_INDEX[(lo, hi)], a2, b2, pm[via]

    # forward direction
    state = (t0, e0, u, v, EDGE_FACES[e0][1])
    ct, ce, a, b, via = state
    closed = False
    for _ in range(200):
        nxt = step(ct, ce, a, b, via)
        if nxt is None:
            break
        ct, ce, a, b, enter = nxt
        if (ct, ce) == (t0, e0):
            if (a, b) != (u, v):
                reversed_edge = True
            closed = enter == EDGE_FACES[e0][1] or True
            break
        wedges.append((ct, ce))
        via = EDGE_FACES[ce][1] if enter == EDGE_FACES[ce][0] else EDGE_FACES[ce][0]
    else:
        raise RuntimeError("edge walk runaway")
    if not closed:
        # walk the other way to count the rest (not needed for the oracle's
        # closed-degree test)
        pass
    return wedges, closed, reversed_edge


def naive_candidates(n, orientable_only, prune_degrees=False):
    """Generate-all-then-filter enumeration of census candidates.

    Assigns every unglued slot in order to every later slot with all six
    permutations.  With ``prune_degrees`` the recursion abandons branches
    whose closed edge orbits are already too small (needed to make n=3
    finish); the pruning is recomputed from scratch by edge walks.
    Returns the set of accepted triangulations (as Triangulation objects,
    deduplicated by the caller).
    """
    glu = [None] * (4 * n)
    found = []

    def rec():
        slot = None
        for s in range(4 * n):
            if glu[s] is None:
                slot = s
                break
        if slot is None:
            try:
                tri = Triangulation(n, list(glu))
            except (ReversedEdge, InvalidGluing):
                return
            if tri.is_connected() and candidate_predicate(tri):
                if not orientable_only or tri.is_orientable():
                    found.append(tri)
            return
        t, f = divmod(slot, 4)
        for t2 in range(n):
            for f2 in range(4):
                if (t2, f2) <= (t, f) or glu[4 * t2 + f2] is not None:
                    continue
                for p in range(24):
                    if PERMS[p][f] != f2:
                        continue
                    glu[4 * t + f] = (t2, p)
                    glu[4 * t2 + f2] = (t, INV[p])
                    if not (prune_degrees and _closed_orbit_too_small(glu, n)):
                        rec()
                    glu[4 * t + f] = None
                    glu[4 * t2 + f2] = None

    rec()
    return found


def smith_divisors_oracle(rows):
    """Invariant factors via sympy, as an independent SNF check."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form as snf
    if not rows or not rows[0]:
        return []
    m = snf(Matrix(rows))
    out = []
    for i in range(min(m.rows, m.cols)):
        out.append(int(m[i, i]))
    return out
