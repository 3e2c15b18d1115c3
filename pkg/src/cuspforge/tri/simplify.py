"""Greedy and exhaustive simplification through Pachner moves."""

import random
from collections import deque

from .isosig import canonical_code
from .moves import (
    pachner_2_3, pachner_3_2, two_three_candidates, three_two_candidates,
    MovePreconditionFailed,
)


class BudgetExceeded(RuntimeError):
    def __init__(self, limit):
        super().__init__("exhaustive search budget of %d nodes exceeded" % limit)
        self.limit = limit


class ReducedTo:
    def __init__(self, tri):
        self.tri = tri

    def __repr__(self):
        return "ReducedTo(%d tets)" % self.tri.n


class NoReductionWithin:
    def __init__(self, height):
        self.height = height

    def __repr__(self):
        return "NoReductionWithin(%d)" % self.height


def _three_two_fixpoint(tri):
    while True:
        cands = three_two_candidates(tri)
        if not cands:
            return tri
        tri = pachner_3_2(tri, cands[0])


def greedy_simplify(tri, seed=0, restarts=64, walk_length=8):
    """Cheap seeded search for a smaller triangulation of the same manifold.

    Strategy: run 3-2 moves to a fixpoint, then repeatedly perturb with a
    short random 2-3 walk followed by another 3-2 fixpoint, keeping the
    smallest triangulation seen.  Deterministic for a fixed seed.  Returns
    the input when nothing smaller is found.
    """
    rng = random.Random(seed)
    best = _three_two_fixpoint(tri)
    if best.n > tri.n:  # cannot happen; 3-2 only shrinks
        best = tri
    current = best
    for _ in range(restarts):
        work = current
        for _ in range(rng.randrange(1, walk_length + 1)):
            cands = two_three_candidates(work)
            if not cands:
                break
            t, f = cands[rng.randrange(len(cands))]
            work = pachner_2_3(work, t, f)
        work = _three_two_fixpoint(work)
        if work.n < best.n:
            best = work
            current = work
        elif work.n == best.n:
            current = work
    return best


def exhaustive_simplify(tri, height, node_budget=None):
    """Breadth-first closure under 2-3 / 3-2 moves capped at n+height tets.

    Returns ReducedTo(smaller) the moment any triangulation with fewer than
    n tetrahedra appears, else NoReductionWithin(height) once the closure is
    exhausted.  Raises BudgetExceeded if ``node_budget`` distinct
    triangulations are visited first.
    """
    n0 = tri.n
    cap = n0 + height
    start_code, _ = canonical_code(tri)
    seen = {start_code}
    queue = deque([tri])
    while queue:
        cur = queue.popleft()
        children = []
        if cur.n + 1 <= cap:
            for (t, f) in two_three_candidates(cur):
                children.append(pachner_2_3(cur, t, f))
        for eid in three_two_candidates(cur):
            children.append(pachner_3_2(cur, eid))
        for child in children:
            if child.n < n0:
                return ReducedTo(child)
            code, _ = canonical_code(child)
            if code in seen:
                continue
            seen.add(code)
            if node_budget is not None and len(seen) > node_budget:
                raise BudgetExceeded(node_budget)
            queue.append(child)
    return NoReductionWithin(height)
