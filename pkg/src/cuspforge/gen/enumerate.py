"""Isomorph-free exhaustive generation of census candidates.

The search assigns gluings to the first unglued face in a fixed (tet, face)
order.  Three reductions keep the tree small without losing classes:

- a gluing to a brand-new tetrahedron is explored with a single fixed
  permutation (any other choice differs by a relabelling of the new
  tetrahedron, which maps valid search states to valid search states);
- in orientable-only mode, only odd vertex permutations are used anywhere
  (every orientable triangulation admits a labelling in which all gluings
  are odd);
- a branch is cut when some alternative (root tetrahedron, root labelling)
  relabels the already-decided part of the gluing table to something
  lexicographically smaller: every completion of the branch would then be
  emitted, in smaller form, from a different branch.  Comparison stops at
  the first face that is still unglued on either side, so the cut never
  depends on undecided choices.

Edge orbits are tracked with an undoable union-find carrying orientation
parity and open-end counts, so degree-1/2 closures, reversed edges and
degree-3 orbits spanning three distinct tetrahedra prune branches the
moment an orbit closes.  Surviving leaves are deduplicated by signature,
making the emitted stream exactly one signature per isomorphism class
regardless of how much duplication the reduced tree still contains.
"""

from ..tri.perm import (
    PERMS, PERM_INDEX, INV, MUL, EDGE_INDEX,
    FACE_PERMS, ODD_FACE_PERMS,
)
from ..tri.isosig import canonical_code, code_to_string

UNGLUED = 0
FRESH = 1
BASE = 2
IDENTITY_PERM = PERM_INDEX[(0, 1, 2, 3)]


class GenerationBudgetExceeded(RuntimeError):
    """Node budget hit; carries the decision prefix reached for resumption."""

    def __init__(self, limit, frontier):
        super().__init__("generation budget of %d nodes exceeded" % limit)
        self.limit = limit
        self.frontier = frontier


class GenerationTask:
    def __init__(self, n, orientable_only=True, prefix=None, node_budget=None,
                 canonical_prune=True):
        if n < 1:
            raise ValueError("need n >= 1")
        self.n = n
        self.orientable_only = orientable_only
        self.prefix = list(prefix or [])
        self.node_budget = node_budget
        self.canonical_prune = canonical_prune


def _fresh_perm(f, orientable_only):
    if not orientable_only:
        return PERM_INDEX[(0, 1, 2, 3)]
    others = [v for v in range(4) if v != f]
    p = list(range(4))
    p[others[0]], p[others[1]] = p[others[1]], p[others[0]]
    return PERM_INDEX[tuple(p)]


FRESH_PERM = {
    (f, flag): _fresh_perm(f, flag) for f in range(4) for flag in (False, True)
}

# EDGE_ACTION[f][p] = ((e1, e2, parity) x3): how gluing face f by perm p
# merges the three face edges, with parity 1 when the arrow flips.
def _edge_action():
    table = []
    for f in range(4):
        row = []
        for p in range(24):
            pm = PERMS[p]
            verts = [v for v in range(4) if v != f]
            trip = []
            for i in range(3):
                u, v = verts[i], verts[(i + 1) % 3]
                if u > v:
                    u, v = v, u
                u2, v2 = pm[u], pm[v]
                parity = 0 if u2 < v2 else 1
                lo, hi = (u2, v2) if u2 < v2 else (v2, u2)
                trip.append((EDGE_INDEX[(u, v)], EDGE_INDEX[(lo, hi)], parity))
            row.append(tuple(trip))
        table.append(tuple(row))
    return tuple(table)


EDGE_ACTION = _edge_action()

# Wedge walk tables: crossing out of wedge (edge e, exit face w) by perm p
# lands on edge EDGE_STEP[e][w][p] entering by face PERMS[p][w].
def _edge_step():
    from ..tri.perm import EDGE_VERTS, EDGE_FACES
    table = {}
    for e in range(6):
        u, v = EDGE_VERTS[e]
        for w in EDGE_FACES[e]:
            for p in range(24):
                pm = PERMS[p]
                a2, b2 = pm[u], pm[v]
                lo, hi = (a2, b2) if a2 < b2 else (b2, a2)
                table[(e, w, p)] = (EDGE_INDEX[(lo, hi)], pm[w])
    return table


EDGE_STEP = _edge_step()

from ..tri.perm import EDGE_FACES, EDGE_VERTS


class _Search:
    def __init__(self, task):
        self.n = task.n
        self.orientable = task.orientable_only
        self.canonical_prune = task.canonical_prune
        n = task.n
        self.glu_t = [-1] * (4 * n)     # partner tet, -1 = unglued
        self.glu_p = [0] * (4 * n)      # partner perm index
        self.fresh_slot = [False] * (4 * n)
        self.max_used = 0
        self.nodes = 0
        self.raw_leaves = 0
        self.budget = task.node_budget
        self.codes = set()
        self.decisions = []
        m = 6 * n
        self.parent = list(range(m))
        self.par = [0] * m
        self.rank = [0] * m
        self.size = [1] * m
        self.open = [2] * m
        self.trail = []
        self.perm_table = ODD_FACE_PERMS if self.orientable else FACE_PERMS
        self.fresh_p = FRESH_PERM[(0, self.orientable)]
        self.fresh_by_face = [FRESH_PERM[(f, self.orientable)] for f in range(4)]
        self._alt_index = [-1] * n
        self._alt_lab = [0] * n
        self._alt_order = [0] * n

    # ---- undoable union-find over tet edges ----------------------------

    def _find(self, x):
        p = 0
        parent = self.parent
        par = self.par
        while parent[x] != x:
            p ^= par[x]
            x = parent[x]
        return x, p

    def _union(self, x, y, parity):
        rx, px = self._find(x)
        ry, py = self._find(y)
        if rx == ry:
            if px ^ py != parity:
                return -1, False
            self.open[rx] -= 2
            self.trail.append((rx, -1, 0))
            return rx, self.open[rx] == 0
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
            px, py = py, px
        self.parent[ry] = rx
        self.par[ry] = px ^ py ^ parity
        bump = 0
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
            bump = 1
        self.size[rx] += self.size[ry]
        self.open[rx] += self.open[ry] - 2
        self.trail.append((rx, ry, bump))
        return rx, self.open[rx] == 0

    def _rollback(self, mark):
        trail = self.trail
        while len(trail) > mark:
            rx, ry, bump = trail.pop()
            if ry < 0:
                self.open[rx] += 2
                continue
            self.open[rx] -= self.open[ry] - 2
            self.size[rx] -= self.size[ry]
            if bump:
                self.rank[rx] -= 1
            self.parent[ry] = ry

    # ---- gluing application with orbit pruning --------------------------

    def _apply(self, t, f, t2, p, fresh):
        mark = len(self.trail)
        s1 = 4 * t + f
        f2 = PERMS[p][f]
        s2 = 4 * t2 + f2
        self.glu_t[s1] = t2
        self.glu_p[s1] = p
        self.glu_t[s2] = t
        self.glu_p[s2] = INV[p]
        self.fresh_slot[s1] = fresh
        base1 = 6 * t
        base2 = 6 * t2
        for (e1, e2, parity) in EDGE_ACTION[f][p]:
            root, closed = self._union(base1 + e1, base2 + e2, parity)
            if root < 0:
                self._unapply(s1, s2, mark)
                return -1
            if closed:
                deg = self.size[root]
                if deg <= 2:
                    self._unapply(s1, s2, mark)
                    return -1
                if deg == 3 and self._cycle_tets(root) == 3:
                    self._unapply(s1, s2, mark)
                    return -1
        return mark

    def _unapply(self, s1, s2, mark):
        self._rollback(mark)
        self.glu_t[s1] = -1
        self.glu_t[s2] = -1
        self.fresh_slot[s1] = False

    def _cycle_tets(self, root):
        t0, e0 = divmod(root, 6)
        tets = {t0}
        ct, ce = t0, e0
        enter = EDGE_FACES[ce][0]
        glu_t = self.glu_t
        glu_p = self.glu_p
        for _ in range(64):
            w = EDGE_FACES[ce][1] if enter == EDGE_FACES[ce][0] else EDGE_FACES[ce][0]
            s = 4 * ct + w
            t2 = glu_t[s]
            p = glu_p[s]
            ce2, enter2 = EDGE_STEP[(ce, w, p)]
            if t2 == t0 and ce2 == e0 and enter2 == EDGE_FACES[e0][0]:
                return len(tets)
            ct, ce, enter = t2, ce2, enter2
            tets.add(ct)
        raise RuntimeError("edge walk runaway")

    # ---- canonical-start pruning ----------------------------------------

    def _beaten_by_alternative(self):
        """True when some alternative start relabels the decided part of the
        table strictly smaller.  Comparison stops (inconclusively) at the
        first face that is unglued on either side."""
        glu_t = self.glu_t
        glu_p = self.glu_p
        fresh_slot = self.fresh_slot
        n_used = self.max_used + 1
        fresh_by_face = self.fresh_by_face
        new_index = self._alt_index
        lab = self._alt_lab
        order = self._alt_order
        for root in range(n_used):
            for rho in range(24):
                if root == 0 and rho == IDENTITY_PERM:
                    continue
                for i in range(n_used):
                    new_index[i] = -1
                new_index[root] = 0
                lab[root] = rho
                order[0] = root
                n_order = 1
                pos = 0
                qi = 0
                smaller = False
                stopped = False
                while qi < n_order:
                    t = order[qi]
                    qi += 1
                    pi = lab[t]
                    inv_pi = INV[pi]
                    pm_inv = PERMS[inv_pi]
                    for fc in range(4):
                        oslot = pos
                        ot2 = glu_t[oslot]
                        if ot2 < 0:
                            stopped = True
                            break
                        ov = FRESH if fresh_slot[oslot] else BASE + ot2 * 24 + glu_p[oslot]
                        fo = pm_inv[fc]
                        slot = 4 * t + fo
                        at2 = glu_t[slot]
                        if at2 < 0:
                            stopped = True
                            break
                        q = glu_p[slot]
                        if new_index[at2] < 0:
                            if ov != FRESH:
                                smaller = True  # FRESH beats any back reference
                                break
                            new_index[at2] = n_order
                            lab[at2] = MUL[fresh_by_face[PERMS[pi][fo]]][MUL[pi][INV[q]]]
                            order[n_order] = at2
                            n_order += 1
                        else:
                            av = BASE + new_index[at2] * 24 + MUL[lab[at2]][MUL[q][inv_pi]]
                            if av > ov:
                                stopped = True
                                break
                            if av < ov:
                                smaller = True
                                break
                        pos += 1
                    if stopped or smaller:
                        break
                if smaller:
                    return True
        return False

    # ---- leaf handling ---------------------------------------------------

    def _leaf_ok(self):
        """Every vertex link must be a torus or Klein bottle: chi = V - F/2
        must vanish per vertex class (links are closed at a full leaf).
        Everything else is pruned incrementally."""
        n = self.max_used + 1
        parent = list(range(4 * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        glu_t = self.glu_t
        glu_p = self.glu_p
        for t in range(n):
            for f in range(4):
                s = 4 * t + f
                t2 = glu_t[s]
                pm = PERMS[glu_p[s]]
                for v in range(4):
                    if v == f:
                        continue
                    a = find(4 * t + v)
                    b = find(4 * t2 + pm[v])
                    if a != b:
                        parent[a] = b
        corners = [0] * (4 * n)
        for x in range(4 * n):
            corners[find(x)] += 1
        ends = [0] * (4 * n)
        seen_roots = set()
        for x in range(6 * n):
            r, pr = self._find(x)
            if r in seen_roots:
                continue
            seen_roots.add(r)
            rt, re = divmod(r, 6)
            u, v = EDGE_VERTS[re]
            # orientation of the representative instance is 0 by convention
            ends[find(4 * rt + u)] += 1
            ends[find(4 * rt + v)] += 1
        for x in range(4 * n):
            if corners[x]:
                chi = ends[x] - corners[x] // 2
                if chi != 0:
                    return False
        return True

    # ---- main DFS --------------------------------------------------------

    def run(self, prefix):
        for (t, f, t2, p) in prefix:
            fresh = t2 > self.max_used
            if fresh:
                if t2 != self.max_used + 1:
                    raise ValueError("prefix skips tetrahedron indices")
                self.max_used = t2
            if self._apply(t, f, t2, p, fresh) < 0:
                return
            self.decisions.append((t, f, t2, p))
        self._dfs(0)

    def _dfs(self, scan_from):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise GenerationBudgetExceeded(self.budget, [list(self.decisions)])
        glu_t = self.glu_t
        n = self.n
        slot = -1
        for s in range(scan_from, 4 * n):
            if glu_t[s] < 0:
                slot = s
                break
        if slot < 0:
            if self.max_used == n - 1:
                self._emit()
            return
        t, f = divmod(slot, 4)
        if t > self.max_used:
            return  # unreachable tetrahedra ahead; dead branch
        # fresh partner
        if self.max_used + 1 < n:
            t2 = self.max_used + 1
            p = self.fresh_by_face[f]
            mark = self._apply(t, f, t2, p, True)
            if mark >= 0:
                self.max_used = t2
                self.decisions.append((t, f, t2, p))
                if not (self.canonical_prune and self._beaten_by_alternative()):
                    self._dfs(slot + 1)
                self.decisions.pop()
                self.max_used = t2 - 1
                self._unapply(slot, 4 * t2 + PERMS[p][f], mark)
        # existing partners
        perm_table = self.perm_table
        for t2 in range(self.max_used + 1):
            base = 4 * t2
            for f2 in range(4):
                if glu_t[base + f2] >= 0 or base + f2 <= slot:
                    continue
                for p in perm_table[(f, f2)]:
                    mark = self._apply(t, f, t2, p, False)
                    if mark < 0:
                        continue
                    self.decisions.append((t, f, t2, p))
                    if not (self.canonical_prune and self._beaten_by_alternative()):
                        self._dfs(slot + 1)
                    self.decisions.pop()
                    self._unapply(slot, base + f2, mark)

    def _emit(self):
        self.raw_leaves += 1
        if not self._leaf_ok():
            return
        tri = self.to_triangulation()
        code, _ = canonical_code(tri)
        self.codes.add(code)

    def to_triangulation(self):
        from ..tri.core import Triangulation
        n = self.n
        glu = []
        for s in range(4 * n):
            t2 = self.glu_t[s]
            glu.append(None if t2 < 0 else (t2, self.glu_p[s]))
        return Triangulation(n, glu)


def enumerate_candidates(task):
    """All candidate signatures for the task, sorted, exactly one per class.

    Returns (signatures, stats).  Raises GenerationBudgetExceeded carrying
    the current decision prefix when the node budget runs out.
    """
    search = _Search(task)
    search.run(task.prefix)
    sigs = [code_to_string(c) for c in sorted(search.codes)]
    return sigs, {"nodes": search.nodes, "leaves": len(sigs),
                  "raw_leaves": search.raw_leaves}


def enumerate_prefixes(n, orientable_only, depth):
    """Partition the search into decision prefixes of the given depth.

    The union of candidate streams over the returned prefixes equals the
    unpartitioned stream (as a set); prefixes that die immediately are kept
    so the cover is syntactically complete.
    """
    out = []

    def rec(prefix, d):
        if d == depth:
            out.append(list(prefix))
            return
        exps = _expand_one(n, orientable_only, prefix)
        if not exps:
            out.append(list(prefix))
            return
        for dec in exps:
            rec(prefix + [dec], d + 1)

    rec([], 0)
    return out


def _expand_one(n, orientable_only, prefix):
    glu = [None] * (4 * n)
    max_used = 0
    for (t, f, t2, p) in prefix:
        if t2 > max_used:
            max_used = t2
        glu[4 * t + f] = (t2, p)
        glu[4 * t2 + PERMS[p][f]] = (t, INV[p])
    slot = None
    for s in range(4 * n):
        if glu[s] is None:
            slot = s
            break
    if slot is None:
        return []
    t, f = divmod(slot, 4)
    opts = []
    if max_used + 1 < n:
        opts.append((t, f, max_used + 1, FRESH_PERM[(f, orientable_only)]))
    table = ODD_FACE_PERMS if orientable_only else FACE_PERMS
    for t2 in range(max_used + 1):
        for f2 in range(4):
            if (4 * t2 + f2) <= slot or glu[4 * t2 + f2] is not None:
                continue
            for p in table[(f, f2)]:
                opts.append((t, f, t2, p))
    return opts
