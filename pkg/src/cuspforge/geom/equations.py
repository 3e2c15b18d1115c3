"""Thurston gluing equations in logarithmic form.

Shapes live on the tetrahedra of an oriented triangulation (all gluings
odd, every tetrahedron positively oriented).  The three edge parameters of
a tetrahedron with shape z are

    z0 = z            on edges (0,1) and (2,3)
    z1 = 1/(1-z)      on edges (0,2) and (1,3)
    z2 = (z-1)/z      on edges (0,3) and (1,2)

For geometric shapes (Im z > 0) all three lie in the upper half plane and
their principal logarithms satisfy

    log z0 = log z
    log z1 = -log(1-z)
    log z2 = log(1-z) - log z + i*pi

so every equation row is stored as integer vectors (A, B) and an integer k
meaning  sum_t A_t log z_t + B_t log(1-z_t) = i*pi*k.  Edge rows have
k = 2 - (number of z2 factors); peripheral rows carry an unknown even
offset fixed later from a numerical solution.

Peripheral curves are built on each cusp link (the torus triangulated by
the tetrahedron corners at that cusp): a spanning tree of the dual graph
gives fundamental cycles, loops around link vertices give the relations,
and an integer Smith normal form produces a two-element homology basis as
integer combinations of the fundamental cycles.  The derivative of the
holonomy of a dual cycle is read off the cycle's left/right turns: turning
left across a corner multiplies by the corner's edge parameter, turning
right divides by it.
"""

from ..tri.perm import PERMS, EDGE_INDEX
from ..tri.homology import smith_normal_form

# edge index (see tri.perm.EDGE_VERTS order) -> parameter slot 0/1/2
EDGE_PARAM = (0, 1, 2, 2, 1, 0)

# cyclic order of the three corner edges around vertex v of a positively
# oriented tetrahedron: (v, cyc[0], cyc[1], cyc[2]) is an even permutation
VERTEX_CYCLE = {
    0: (1, 2, 3),
    1: (0, 3, 2),
    2: (0, 1, 3),
    3: (0, 2, 1),
}


class NotOrientable(ValueError):
    pass


class Row:
    """Integer row  sum A_t log z_t + B_t log(1-z_t) = i*pi*k."""

    __slots__ = ("A", "B", "k")

    def __init__(self, A, B, k):
        self.A = tuple(A)
        self.B = tuple(B)
        self.k = k

    def __repr__(self):
        return "Row(A=%s, B=%s, k=%s)" % (self.A, self.B, self.k)


def row_from_params(n, param_counts, k_base):
    """Convert per-(tet, parameter) exponents to (A, B, k) form.

    ``param_counts[t]`` is a triple (a0, a1, a2) of exponents of the edge
    parameters of tetrahedron t; the row asserts
    prod z0^a0 z1^a1 z2^a2 = exp(i*pi*k_base).
    """
    A = [0] * n
    B = [0] * n
    c2 = 0
    for t, (a0, a1, a2) in enumerate(param_counts):
        A[t] = a0 - a2
        B[t] = a2 - a1
        c2 += a2
    return Row(A, B, k_base - c2)


class DualCycle:
    """Closed walk through corner triangles of one cusp link.

    Stored as a list of steps (tet, vertex, f_in, f_out); consecutive steps
    are linked through the face gluing at f_out.
    """

    def __init__(self, steps):
        self.steps = steps


class CuspData:
    __slots__ = ("vertex_class", "corners", "tree_edges", "fundamental_cycles",
                 "basis_coeffs", "meridian_row", "longitude_row", "root_corner")


class GluingSystem:
    """Edge equations plus peripheral data of an oriented triangulation."""

    def __init__(self, tri):
        sk = tri.skeleton()
        if not sk.orientable:
            raise NotOrientable("gluing equations need an orientable triangulation")
        if not tri.all_glued() or not tri.is_connected():
            raise ValueError("gluing equations need a connected closed triangulation")
        self.tri = tri
        self.n = tri.n
        self.sk = sk
        self.edge_rows = []
        self.edge_param_counts = []
        for eid in range(len(sk.edge_classes)):
            counts = [[0, 0, 0] for _ in range(tri.n)]
            for (t, e, s, fin, fout) in sk.edge_cycle(eid):
                counts[t][EDGE_PARAM[e]] += 1
            self.edge_param_counts.append([tuple(c) for c in counts])
            self.edge_rows.append(row_from_params(tri.n, counts, 2))
        self.cusps = [self._build_cusp(cid) for cid in range(len(sk.vertex_classes))]

    # -- cusp link machinery ---------------------------------------------

    def _corner_neighbor(self, t, v, f):
        """Across side f of corner triangle (t, v)."""
        t2, p = self.tri.glu[4 * t + f]
        pm = PERMS[p]
        return t2, pm[v], pm[f]

    def _build_cusp(self, cid):
        corners = sorted(self.sk.vertex_classes[cid])
        corner_index = {c: i for i, c in enumerate(corners)}
        # spanning tree of the dual graph (corners as nodes, side classes as
        # arcs); deterministic BFS from the smallest corner
        root = corners[0]
        tree_parent = {root: None}
        order = [root]
        tree_sides = set()
        qi = 0
        while qi < len(order):
            (t, v) = order[qi]
            qi += 1
            for f in range(4):
                if f == v:
                    continue
                t2, v2, f2 = self._corner_neighbor(t, v, f)
                if (t2, v2) not in tree_parent:
                    tree_parent[(t2, v2)] = ((t, v), f)
                    tree_sides.add(((t, v), f))
                    tree_sides.add(((t2, v2), f2))
                    order.append((t2, v2))
        assert len(order) == len(corners)
        # non-tree arcs, one per unordered side class
        nontree = []
        seen = set()
        for (t, v) in corners:
            for f in range(4):
                if f == v:
                    continue
                if ((t, v), f) in tree_sides or ((t, v), f) in seen:
                    continue
                t2, v2, f2 = self._corner_neighbor(t, v, f)
                seen.add(((t2, v2), f2))
                nontree.append(((t, v), f))
        # fundamental cycle for each non-tree arc: root -> a, cross, b -> root
        cycles = []
        for ((t, v), f) in nontree:
            t2, v2, f2 = self._corner_neighbor(t, v, f)
            up_a = self._tree_path(tree_parent, (t, v))
            up_b = self._tree_path(tree_parent, (t2, v2))
            cycles.append(self._assemble_cycle(up_a, ((t, v), f, (t2, v2), f2), up_b))
        # relations: loops of triangles around each link vertex
        relations = []
        link_vertices = self._link_vertices(corners)
        for lv in link_vertices:
            relations.append(self._vertex_loop_coords(lv, nontree, tree_parent))
        basis = self._homology_basis(len(nontree), relations)
        data = CuspData()
        data.vertex_class = cid
        data.corners = corners
        data.tree_edges = tree_parent
        data.fundamental_cycles = cycles
        data.basis_coeffs = basis
        data.root_corner = root
        mu, la = basis
        data.meridian_row = self._combo_row(cycles, mu)
        data.longitude_row = self._combo_row(cycles, la)
        return data

    def _tree_path(self, tree_parent, node):
        """Corners from the root down to ``node`` along tree arcs, as a list
        of (corner, entry_face) pairs; entry_face is the side crossed from
        the parent into this corner (None at the root)."""
        rev = []
        cur = node
        while True:
            par = tree_parent[cur]
            if par is None:
                rev.append((cur, None))
                break
            (pnode, pface) = par
            # face of cur glued back to pnode
            t2, v2, f2 = self._corner_neighbor(pnode[0], pnode[1], pface)
            assert (t2, v2) == cur
            rev.append((cur, f2))
            cur = pnode
        rev.reverse()
        return rev

    def _assemble_cycle(self, up_a, bridge, up_b):
        """Dual cycle: root ~> a, across the non-tree arc, b ~> root."""
        (a, fa, b, fb) = bridge
        steps = []
        # path root -> a: cross tree arcs downward
        for i in range(len(up_a) - 1):
            (cur, _) = up_a[i]
            (nxt, entry) = up_a[i + 1]
            # exit face of cur leading to nxt
            exit_face = self._side_to(cur, nxt, entry)
            steps.append((cur, exit_face))
        steps.append((a, fa))
        for i in range(len(up_b) - 1, 0, -1):
            (cur, entry) = up_b[i]
            steps.append((cur, self._exit_to_parent(cur, entry)))
        return self._close_cycle(steps)

    def _side_to(self, cur, nxt, entry_face_of_nxt):
        # the face of cur glued to nxt's entry face
        t2, v2, f2 = self._corner_neighbor(nxt[0], nxt[1], entry_face_of_nxt)
        assert (t2, v2) == cur
        return f2

    def _exit_to_parent(self, cur, entry_face):
        return entry_face

    def _close_cycle(self, half_steps):
        """Given (corner, exit_face) pairs forming a closed walk, compute the
        in-face of each step from the previous step's gluing."""
        steps = []
        m = len(half_steps)
        for i in range(m):
            (corner, fout) = half_steps[i]
            prev_corner, prev_fout = half_steps[i - 1]
            t2, v2, f2 = self._corner_neighbor(prev_corner[0], prev_corner[1], prev_fout)
            assert (t2, v2) == corner, "walk is not consecutive"
            steps.append((corner[0], corner[1], f2, fout))
        return DualCycle(steps)

    def _link_vertices(self, corners):
        """Orbits of (corner, corner-edge) under side crossings: each orbit
        is one vertex of the link surface."""
        seen = set()
        orbits = []
        for (t, v) in corners:
            for x in range(4):
                if x == v or ((t, v, x) in seen):
                    continue
                orbit = []
                cur = (t, v, x)
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    ct, cv, cx = cur
                    # cross one of the two sides adjacent to this link vertex;
                    # pick consistently: the side whose face label is the
                    # successor of x in the vertex cycle
                    cyc = VERTEX_CYCLE[cv]
                    i = cyc.index(cx)
                    f = cyc[(i + 1) % 3]
                    t2, v2, f2 = self._corner_neighbor(ct, cv, f)
                    x2 = PERMS[self.tri.glu[4 * ct + f][1]][cx]
                    cur = (t2, v2, x2)
                orbits.append(orbit)
        return orbits

    def _vertex_loop_coords(self, orbit, nontree, tree_parent):
        """Coordinates of the triangle loop around a link vertex in the
        fundamental-cycle basis: signed count of non-tree arcs crossed."""
        arc_index = {}
        for i, ((t, v), f) in enumerate(nontree):
            t2, v2, f2 = self._corner_neighbor(t, v, f)
            arc_index[((t, v), f)] = (i, 1)
            arc_index[((t2, v2), f2)] = (i, -1)
        coords = [0] * len(nontree)
        for (ct, cv, cx) in orbit:
            cyc = VERTEX_CYCLE[cv]
            i = cyc.index(cx)
            f = cyc[(i + 1) % 3]
            key = ((ct, cv), f)
            if key in arc_index:
                j, s = arc_index[key]
                coords[j] += s
        return coords

    def _homology_basis(self, ncycles, relations):
        """Two integer vectors of fundamental-cycle coefficients spanning the
        torus homology (cycle space modulo vertex loops)."""
        if ncycles == 0:
            raise ValueError("cusp link has no cycles; not a closed surface?")
        if not relations:
            relations = [[0] * ncycles]
        diag, R, Rinv = smith_normal_form([list(r) for r in relations])
        rank = sum(1 for d in diag if d)
        for d in diag:
            if d not in (0, 1, -1):
                raise ValueError("cusp link homology has torsion; not a torus?")
        free = [Rinv[i] for i in range(rank, ncycles)]
        if len(free) != 2:
            raise ValueError("cusp link homology rank %d != 2" % len(free))
        return [tuple(v) for v in free]

    def cycle_param_counts(self, cycle):
        """Per-(tet, parameter) exponents of the holonomy derivative of a
        dual cycle, via left/right turning.

        Returns (counts, u) where u counts U-turn steps: entering and
        leaving a triangle through the same side reverses the developed
        edge vector, contributing a factor -1 each.
        """
        counts = [[0, 0, 0] for _ in range(self.n)]
        uturns = 0
        for (t, v, fin, fout) in cycle.steps:
            if fout == fin:
                uturns += 1
                continue
            cyc = VERTEX_CYCLE[v]
            k = cyc.index(fin)
            if fout == cyc[(k + 2) % 3]:      # left turn around corner edge (v, cyc[k+1])
                e = EDGE_INDEX[(min(v, cyc[(k + 1) % 3]), max(v, cyc[(k + 1) % 3]))]
                counts[t][EDGE_PARAM[e]] += 1
            elif fout == cyc[(k + 1) % 3]:    # right turn around corner edge (v, cyc[k+2])
                e = EDGE_INDEX[(min(v, cyc[(k + 2) % 3]), max(v, cyc[(k + 2) % 3]))]
                counts[t][EDGE_PARAM[e]] -= 1
            else:
                raise AssertionError("dual step does not turn")
        return counts, uturns

    def _combo_row(self, cycles, coeffs):
        counts = [[0, 0, 0] for _ in range(self.n)]
        u_total = 0
        for c, cyc in zip(coeffs, cycles):
            if c == 0:
                continue
            sub, u = self.cycle_param_counts(cyc)
            u_total += c * u
            for t in range(self.n):
                for j in range(3):
                    counts[t][j] += c * sub[t][j]
        # H' = (-1)^u * prod zeta^a ; H' = 1 forces the i*pi constant u - c2
        return row_from_params(self.n, counts, u_total)

    # -- numeric evaluation helpers ---------------------------------------

    def cusp_count(self):
        return len(self.cusps)

    def all_rows(self):
        """Edge rows then (meridian, longitude) per cusp."""
        rows = list(self.edge_rows)
        for c in self.cusps:
            rows.append(c.meridian_row)
            rows.append(c.longitude_row)
        return rows

    def cusp_edge_weights(self):
        """For each cusp, the vector over edge classes counting edge ends on
        that cusp.  These weight the exact dependencies among edge rows."""
        ne = len(self.sk.edge_classes)
        weights = []
        for c in self.cusps:
            w = [0] * ne
            for eid, (tailc, headc) in enumerate(self.sk.edge_endpoints):
                if tailc == c.vertex_class:
                    w[eid] += 1
                if headc == c.vertex_class:
                    w[eid] += 1
            weights.append(w)
        return weights


def build_gluing_system(tri):
    """Gluing system of the oriented form of ``tri``."""
    return GluingSystem(tri.oriented())
