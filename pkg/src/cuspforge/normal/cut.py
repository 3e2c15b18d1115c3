"""Cutting a triangulation along a two-sided normal surface.

The complement of a regular neighborhood of the surface decomposes each
tetrahedron into regions: corner slabs between parallel triangle copies,
middle slabs between parallel quad copies, and one or two end pieces.
Regions, the polygons separating them (sub-regions of tetrahedron faces,
plus two boundary copies of every normal piece), and the split vertices
along the cut are assembled into a polygonal cellulation whose coning
subdivision is the returned triangulation-with-boundary.

Bookkeeping:
- edge points: crossings of the surface with an edge class, indexed along
  the class arrow; each splits into a tail-side copy ('pt', e, i, 0) and a
  head-side copy ('pt', e, i, 1);
- segments of an edge class survive whole; a polygon side along a segment
  is named locally to the referencing tetrahedron, ('segl', t, e_loc, s),
  with the class arrow as intrinsic direction;
- arcs are named locally per tetrahedron and face, ('arcl', t, f, corner,
  depth, corner_side); their intrinsic direction runs from the endpoint on
  the corner's smaller edge to the larger one.

Local side names make the within-region pairing of the subdivision
unambiguous even when an edge class meets a region several times.
"""

from ..tri.perm import PERMS, EDGE_VERTS, EDGE_INDEX
from .matching import quad_type
from .analyze import analyze_surface
from ..canon.subdivide import PolygonalCellulation, subdivide_cellulation


class OneSided(ValueError):
    pass


class _CutContext:
    def __init__(self, tri, vec):
        self.tri = tri
        self.vec = vec
        self.sk = tri.skeleton()
        n = tri.n
        self.tricount = [[vec[7 * t + v] for v in range(4)] for t in range(n)]
        self.quadtype = []
        self.quadcount = []
        for t in range(n):
            qt, qc = None, 0
            for q in range(3):
                if vec[7 * t + 4 + q]:
                    qt, qc = q, vec[7 * t + 4 + q]
            self.quadtype.append(qt)
            self.quadcount.append(qc)
        self.edge_points = []
        for members in self.sk.edge_classes:
            t, e, s = members[0]
            u, v = EDGE_VERTS[e]
            count = vec[7 * t + u] + vec[7 * t + v]
            qt = self.quadtype[t]
            if qt is not None and (u in (0, qt + 1)) != (v in (0, qt + 1)):
                count += self.quadcount[t]
            self.edge_points.append(count)

    # ---- edge bookkeeping ------------------------------------------------

    def _edge_data(self, t, u, v):
        e = EDGE_INDEX[(min(u, v), max(u, v))]
        eid = self.sk.edge_class[(t, e)]
        s = self.sk.edge_orient[(t, e)]
        lo, hi = EDGE_VERTS[e]
        tail = lo if s == 0 else hi
        return e, eid, tail

    def arrow_seg(self, t, u, v, j_from_u):
        """Arrow segment index of the j-th from-u segment of edge (u, v)."""
        e, eid, tail = self._edge_data(t, u, v)
        m = self.edge_points[eid]
        return (j_from_u if u == tail else m - j_from_u), e, eid, tail

    def seg_side(self, t, u, v, j_from_u, away_from_u):
        """Local side entry for the j-th from-u segment, traversed away
        from or toward u."""
        sa, e, eid, tail = self.arrow_seg(t, u, v, j_from_u)
        direction = 1 if (away_from_u == (u == tail)) else 0
        return (("segl", t, e, sa), direction)

    def point_copy(self, t, u, v, j_from_u, toward_u):
        e, eid, tail = self._edge_data(t, u, v)
        m = self.edge_points[eid]
        i = j_from_u if u == tail else m - 1 - j_from_u
        if not (0 <= i < m):
            raise ValueError("edge point index out of range")
        flag = 0 if (toward_u == (u == tail)) else 1
        return ("pt", eid, i, flag)

    def ideal_vertex(self, t, v):
        return ("iv", self.sk.vertex_class[(t, v)])

    # ---- region ids --------------------------------------------------

    def corner_region(self, t, v, j):
        return ("c", t, v, j)

    def middle_region(self, t, i):
        return ("m", t, i)

    def region_behind_corner_arcs(self, t, f, a, j):
        c = self.tricount[t][a]
        if j < c:
            return self.corner_region(t, a, j)
        qt = self.quadtype[t]
        q = self.quadcount[t]
        k = j - c
        if qt is None or quad_type(a, f) != qt or k >= q:
            raise ValueError("no such face region")
        if a in (0, qt + 1):
            return self.middle_region(t, k)
        return self.middle_region(t, q - k)

    def region_behind_center(self, t, f):
        qt = self.quadtype[t]
        if qt is None or self.quadcount[t] == 0:
            return self.middle_region(t, 0)
        if f in (0, qt + 1):
            return self.middle_region(t, self.quadcount[t])
        return self.middle_region(t, 0)

    def region_beyond_tri(self, t, v, j):
        """Region on the far side of triangle piece j at corner v."""
        c = self.tricount[t][v]
        if j + 1 < c:
            return self.corner_region(t, v, j + 1)
        qt = self.quadtype[t]
        if qt is None or self.quadcount[t] == 0:
            return self.middle_region(t, 0)
        if v in (0, qt + 1):
            return self.middle_region(t, 0)
        return self.middle_region(t, self.quadcount[t])

    def corner_stack_size(self, t, f, a):
        s = self.tricount[t][a]
        qt = self.quadtype[t]
        if qt is not None and quad_type(a, f) == qt:
            s += self.quadcount[t]
        return s


def _arc_side(t, f, a, depth, corner_side, x_from, y_to):
    """Local arc side entry traversed from the endpoint on edge (a, x_from)
    to the endpoint on edge (a, y_to)."""
    return (("arcl", t, f, a, depth, bool(corner_side)),
            1 if x_from < y_to else 0)


def _face_polygons(ctx, t, f):
    """Polygons of the 2-regions of face f of tet t together with both
    incidences; emitted once per face class from the smaller slot.

    Returns a list of (key, verts, incidences)."""
    tri = ctx.tri
    t2, p = tri.glu[4 * t + f]
    pm = PERMS[p]
    f2 = pm[f]
    if (t2, f2) < (t, f):
        return []
    out = []
    corners = [a for a in range(4) if a != f]

    def emit(key, verts, specs, region_here, region_there):
        sides_here = []
        sides_there = []
        for spec in specs:
            kind = spec[0]
            if kind == "seg":
                _, a, b, j, away = spec
                sides_here.append(ctx.seg_side(t, a, b, j, away))
                sides_there.append(ctx.seg_side(t2, pm[a], pm[b], j, away))
            else:
                _, a, depth, cside, xf, yt = spec
                sides_here.append(_arc_side(t, f, a, depth, cside, xf, yt))
                sides_there.append(_arc_side(t2, f2, pm[a], depth, cside, pm[xf], pm[yt]))
        out.append((key, tuple(verts),
                    ((region_here, tuple(sides_here)),
                     (region_there, tuple(sides_there)))))

    for a in corners:
        x, y = [b for b in corners if b != a]
        s_a = ctx.corner_stack_size(t, f, a)
        for j in range(s_a):
            region_here = ctx.region_behind_corner_arcs(t, f, a, j)
            region_there = ctx.region_behind_corner_arcs(t2, f2, pm[a], j)
            if j == 0:
                verts = (ctx.ideal_vertex(t, a),
                         ctx.point_copy(t, a, x, 0, True),
                         ctx.point_copy(t, a, y, 0, True))
                specs = (("seg", a, x, 0, True),
                         ("arc", a, 0, True, x, y),
                         ("seg", a, y, 0, False))
                emit(("f", t, f, "tip", a), verts, specs, region_here, region_there)
            else:
                verts = (ctx.point_copy(t, a, x, j - 1, False),
                         ctx.point_copy(t, a, y, j - 1, False),
                         ctx.point_copy(t, a, y, j, True),
                         ctx.point_copy(t, a, x, j, True))
                specs = (("arc", a, j - 1, False, x, y),
                         ("seg", a, y, j, True),
                         ("arc", a, j, True, y, x),
                         ("seg", a, x, j, False))
                emit(("f", t, f, "strip", a, j), verts, specs, region_here, region_there)

    # centre polygon
    verts = []
    specs = []
    for idx in range(3):
        a = corners[idx]
        b = corners[(idx + 1) % 3]
        prev = corners[(idx + 2) % 3]
        s_a = ctx.corner_stack_size(t, f, a)
        if s_a == 0:
            verts.append(ctx.ideal_vertex(t, a))
        else:
            verts.append(ctx.point_copy(t, a, prev, s_a - 1, False))
            specs.append(("arc", a, s_a - 1, False, prev, b))
            verts.append(ctx.point_copy(t, a, b, s_a - 1, False))
        specs.append(("seg", a, b, s_a, True))
    emit(("f", t, f, "centre"), verts, specs,
         ctx.region_behind_center(t, f), ctx.region_behind_center(t2, f2))
    return out


def _tri_piece_polygons(ctx, t, v, j):
    """The two boundary copies of triangle piece j at corner v."""
    others = [x for x in range(4) if x != v]
    x, y, z = others
    out = []
    for toward in (True, False):
        verts = []
        sides = []
        for (a, b) in ((x, y), (y, z), (z, x)):
            verts.append(ctx.point_copy(t, v, a, j, toward))
            face = [w for w in others if w not in (a, b)][0]
            sides.append(_arc_side(t, face, v, j, toward, a, b))
        region = (ctx.corner_region(t, v, j) if toward
                  else ctx.region_beyond_tri(t, v, j))
        out.append((("tp", t, v, j, toward), tuple(verts),
                    ((region, tuple(sides)),)))
    return out


def _quad_piece_polygons(ctx, t, k):
    """The two boundary copies of quad piece k (indexed from the 0-pair)."""
    qt = ctx.quadtype[t]
    pair = (0, qt + 1)
    other = tuple(w for w in range(4) if w not in pair)
    u, up = pair
    w, wp = other
    cycle = ((u, w), (w, up), (up, wp), (wp, u))
    out = []
    for zero_side in (True, False):
        verts = []
        sides = []
        for i, (a, b) in enumerate(cycle):
            ca = ctx.tricount[t][a]
            if a in pair:
                j_from_a = ca + k
                toward = zero_side
            else:
                j_from_a = ca + (ctx.quadcount[t] - 1 - k)
                toward = not zero_side
            verts.append(ctx.point_copy(t, a, b, j_from_a, toward))
            # arc between this point (edge (a,b)) and the next (edge (b,c)):
            # lies in the face spanned by a, b, c, cutting corner b
            c_next = cycle[(i + 1) % 4][1]
            face = [ww for ww in range(4) if ww not in (a, b, c_next)][0]
            corner = b
            if corner in pair:
                depth = ctx.tricount[t][corner] + k
            else:
                depth = ctx.tricount[t][corner] + (ctx.quadcount[t] - 1 - k)
            corner_side = (zero_side == (corner in pair))
            sides.append(_arc_side(t, face, corner, depth, corner_side, a, c_next))
        region = ctx.middle_region(t, k if zero_side else k + 1)
        out.append((("qp", t, k, zero_side), tuple(verts),
                    ((region, tuple(sides)),)))
    return out


def cut_along(tri, vec):
    """Triangulated pieces of the complement of a regular neighborhood of
    the normal surface ``vec``.  Returns a list of (Triangulation, info)
    pairs; info records whether the piece contains an ideal vertex of the
    original triangulation."""
    analysis = analyze_surface(tri, vec)
    if not analysis.two_sided:
        raise OneSided("cut_along needs a two-sided surface")
    ctx = _CutContext(tri, vec)

    faces = []
    for t in range(tri.n):
        for f in range(4):
            for key, verts, incidences in _face_polygons(ctx, t, f):
                faces.append((verts, [(cell, sides) for cell, sides in incidences]))
    for t in range(tri.n):
        for v in range(4):
            for j in range(ctx.tricount[t][v]):
                for key, verts, incidences in _tri_piece_polygons(ctx, t, v, j):
                    faces.append((verts, list(incidences)))
        qcount = ctx.quadcount[t] if ctx.quadtype[t] is not None else 0
        for k in range(qcount):
            for key, verts, incidences in _quad_piece_polygons(ctx, t, k):
                faces.append((verts, list(incidences)))

    cellulation = PolygonalCellulation(faces)
    whole, tet_desc = subdivide_cellulation(cellulation)

    comp_of = {}
    comps = []
    for t0 in range(whole.n):
        if t0 in comp_of:
            continue
        cid = len(comps)
        stack = [t0]
        comp_of[t0] = cid
        members = [t0]
        while stack:
            ct = stack.pop()
            for ff in range(4):
                g = whole.glu[4 * ct + ff]
                if g is not None and g[0] not in comp_of:
                    comp_of[g[0]] = cid
                    members.append(g[0])
                    stack.append(g[0])
        comps.append(sorted(members))

    comp_has_ideal = [False] * len(comps)
    for i, (fi, si, k) in enumerate(tet_desc):
        verts = cellulation.faces[fi][0]
        if any(isinstance(v, tuple) and v[0] == "iv" for v in verts):
            comp_has_ideal[comp_of[i]] = True

    out = []
    for cid, members in enumerate(comps):
        remap = {old: new for new, old in enumerate(members)}
        glu = [None] * (4 * len(members))
        for new, old in enumerate(members):
            for ff in range(4):
                g = whole.glu[4 * old + ff]
                glu[4 * new + ff] = None if g is None else (remap[g[0]], g[1])
        piece = tri.__class__(len(members), glu)
        out.append((piece, {"has_ideal_vertex": comp_has_ideal[cid]}))
    return out
