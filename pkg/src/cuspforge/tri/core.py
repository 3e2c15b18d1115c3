"""Gluing-level triangulation data and its skeleton.

A triangulation is ``n`` tetrahedra with faces glued in pairs by vertex
permutations.  Face ``f`` of a tetrahedron is the face opposite vertex ``f``;
a gluing record ``(t2, p)`` on face ``f`` of tetrahedron ``t`` identifies it
with face ``PERMS[p][f]`` of ``t2``.  Unglued faces are boundary.

The skeleton groups the 4n corners into vertex classes and the 6n
tetrahedron edges into edge classes, classifies vertex links, and detects
edges identified with themselves in reverse (such triangulations are
rejected outright).
"""

from .perm import (
    PERMS, INV, MUL, PARITY, IDENTITY, EDGE_VERTS, EDGE_INDEX, EDGE_FACES,
    perm_str, perm_from_str,
)


class InvalidGluing(ValueError):
    """Gluing table violates the involution / self-face constraints."""


class ReversedEdge(ValueError):
    """An edge is identified with itself in reverse."""


class Skeleton:
    """Orbit data of a triangulation: vertex/edge classes and link types.

    Attributes:
        vertex_class:   dict (t, v) -> class id
        vertex_classes: list of lists of corners per class
        edge_class:     dict (t, e) -> class id
        edge_classes:   list of lists of (t, e, orient) per class; orient is
                        0 when the class arrow runs along the increasing local
                        vertex order of that instance
        edge_degrees:   degree (wedge count) per edge class
        edge_open_ends: unglued wedge sides per edge class (0 = closed orbit)
        edge_distinct_tets: number of distinct tetrahedra per edge class
        edge_endpoints: (tail vertex class, head vertex class) per edge class
        vertex_link_types: one of 'Sphere', 'Disc', 'Torus', 'KleinBottle',
                        'OtherClosed', 'OtherBounded' per vertex class
        vertex_link_euler: Euler characteristic of each link
        orientable:     manifold orientability (per whole complex)
    """

    def __init__(self, tri):
        self._build(tri)

    def _build(self, tri):
        n = tri.n
        glu = tri.glu

        # --- edge classes, with orientation tracking -------------------
        edge_class = {}
        edge_classes = []
        edge_orient = {}
        edge_open_ends = []
        for t in range(n):
            for e in range(6):
                if (t, e) in edge_class:
                    continue
                cid = len(edge_classes)
                members = []
                stack = [(t, e, 0)]
                edge_class[(t, e)] = cid
                edge_orient[(t, e)] = 0
                open_ends = 0
                while stack:
                    ct, ce, cs = stack.pop()
                    members.append((ct, ce, cs))
                    u, v = EDGE_VERTS[ce]
                    a, b = (u, v) if cs == 0 else (v, u)
                    for w in EDGE_FACES[ce]:
                        g = glu[4 * ct + w]
                        if g is None:
                            open_ends += 1
                            continue
                        t2, p = g
                        pm = PERMS[p]
                        a2, b2 = pm[a], pm[b]
                        e2 = EDGE_INDEX[(a2, b2)]
                        s2 = 0 if a2 < b2 else 1
                        key = (t2, e2)
                        if key in edge_class:
                            if edge_orient[key] != s2:
                                raise ReversedEdge(
                                    "edge (%d,%d) identified with itself in reverse" % (t, e))
                        else:
                            edge_class[key] = cid
                            edge_orient[key] = s2
                            stack.append((t2, e2, s2))
                edge_classes.append(members)
                edge_open_ends.append(open_ends)

        edge_degrees = [len(m) for m in edge_classes]
        edge_distinct_tets = [len({t for t, _, _ in m}) for m in edge_classes]

        # --- vertex classes --------------------------------------------
        vertex_class = {}
        vertex_classes = []
        for t in range(n):
            for v in range(4):
                if (t, v) in vertex_class:
                    continue
                cid = len(vertex_classes)
                members = []
                stack = [(t, v)]
                vertex_class[(t, v)] = cid
                while stack:
                    ct, cv = stack.pop()
                    members.append((ct, cv))
                    for f in range(4):
                        if f == cv:
                            continue
                        g = glu[4 * ct + f]
                        if g is None:
                            continue
                        t2, p = g
                        key = (t2, PERMS[p][cv])
                        if key not in vertex_class:
                            vertex_class[key] = cid
                            stack.append(key)
                vertex_classes.append(members)

        edge_endpoints = []
        for members in edge_classes:
            t0, e0, s0 = members[0]
            u, v = EDGE_VERTS[e0]
            tail, head = (u, v) if s0 == 0 else (v, u)
            edge_endpoints.append((vertex_class[(t0, tail)], vertex_class[(t0, head)]))

        # --- manifold orientability ------------------------------------
        orientable = True
        sign = {}
        for t0 in range(n):
            if t0 in sign:
                continue
            sign[t0] = 1
            stack = [t0]
            while stack:
                ct = stack.pop()
                for f in range(4):
                    g = glu[4 * ct + f]
                    if g is None:
                        continue
                    t2, p = g
                    s2 = sign[ct] if PARITY[p] else -sign[ct]
                    if t2 in sign:
                        if sign[t2] != s2:
                            orientable = False
                    else:
                        sign[t2] = s2
                        stack.append(t2)
        self.tet_sign = sign

        # --- vertex links ----------------------------------------------
        link_types = []
        link_euler = []
        link_orientable_flags = []
        ends_at = [0] * len(vertex_classes)
        for tail, head in edge_endpoints:
            ends_at[tail] += 1
            ends_at[head] += 1

        for cid, members in enumerate(vertex_classes):
            faces_glued = 0
            faces_open = 0
            for (ct, cv) in members:
                for f in range(4):
                    if f == cv:
                        continue
                    if glu[4 * ct + f] is None:
                        faces_open += 1
                    else:
                        faces_glued += 1
            F = len(members)
            E = faces_glued // 2 + faces_open
            V = self._link_vertex_count(tri, members, cid, vertex_class,
                                        edge_class, edge_classes, edge_endpoints)
            chi = V - E + F
            closed = faces_open == 0
            orient = self._link_orientable(tri, members)
            link_euler.append(chi)
            link_orientable_flags.append(orient)
            if closed:
                if chi == 2:
                    link_types.append("Sphere")
                elif chi == 0:
                    link_types.append("Torus" if orient else "KleinBottle")
                else:
                    link_types.append("OtherClosed")
            else:
                link_types.append("Disc" if chi == 1 else "OtherBounded")

        self.vertex_class = vertex_class
        self.vertex_classes = vertex_classes
        self.edge_class = edge_class
        self.edge_classes = edge_classes
        self.edge_orient = edge_orient
        self.edge_degrees = edge_degrees
        self.edge_open_ends = edge_open_ends
        self.edge_distinct_tets = edge_distinct_tets
        self.edge_endpoints = edge_endpoints
        self.vertex_link_types = link_types
        self.vertex_link_euler = link_euler
        self.vertex_link_orientable = link_orientable_flags
        self.orientable = orientable

    @staticmethod
    def _link_vertex_count(tri, members, cid, vertex_class, edge_class,
                           edge_classes, edge_endpoints):
        # Link vertices correspond to (edge class, end) pairs landing on this
        # vertex class; an edge with both ends here contributes two.
        count = 0
        for eid, (tail, head) in enumerate(edge_endpoints):
            if tail == cid:
                count += 1
            if head == cid:
                count += 1
        return count

    @staticmethod
    def _link_orientable(tri, members):
        glu = tri.glu
        sign = {}
        ok = True
        for start in members:
            if start in sign:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                ct, cv = stack.pop()
                others = [x for x in range(4) if x != cv]
                for f in others:
                    g = glu[4 * ct + f]
                    if g is None:
                        continue
                    t2, p = g
                    pm = PERMS[p]
                    v2 = pm[cv]
                    x, y = [o for o in others if o != f]
                    dir1 = -1 if (x, y) == (others[0], others[2]) else 1
                    others2 = [o for o in range(4) if o != v2]
                    x2, y2 = pm[x], pm[y]
                    m = 1 if x2 < y2 else -1
                    lo, hi = min(x2, y2), max(x2, y2)
                    dir2 = -1 if (lo, hi) == (others2[0], others2[2]) else 1
                    s2 = -sign[(ct, cv)] * dir1 * dir2 * m
                    key = (t2, v2)
                    if key in sign:
                        if sign[key] != s2:
                            ok = False
                    else:
                        sign[key] = s2
                        stack.append(key)
        return ok

    def edge_cycle(self, eid):
        """Cyclic wedge walk around a closed edge class.

        Returns a list of (tet, local_edge, orient, enter_face, exit_face)
        in cyclic order around the edge.  Only valid for closed orbits.
        """
        if self.edge_open_ends[eid]:
            raise ValueError("edge class %d is not closed" % eid)
        t0, e0, s0 = self.edge_classes[eid][0]
        out = []
        ct, ce, cs = t0, e0, s0
        enter = EDGE_FACES[ce][0]
        glu = self._tri_glu
        while True:
            exit_face = EDGE_FACES[ce][1] if enter == EDGE_FACES[ce][0] else EDGE_FACES[ce][0]
            out.append((ct, ce, cs, enter, exit_face))
            t2, p = glu[4 * ct + exit_face]
            pm = PERMS[p]
            u, v = EDGE_VERTS[ce]
            a, b = (u, v) if cs == 0 else (v, u)
            a2, b2 = pm[a], pm[b]
            e2 = EDGE_INDEX[(a2, b2)]
            s2 = 0 if a2 < b2 else 1
            enter2 = pm[exit_face]
            if (t2, e2) == (t0, e0) and enter2 == EDGE_FACES[e0][0]:
                break
            ct, ce, cs, enter = t2, e2, s2, enter2
            if len(out) > len(self.edge_classes[eid]):
                raise RuntimeError("edge walk failed to close")
        return out


class Triangulation:
    """Immutable gluing table for n tetrahedra.

    ``glu`` is a flat tuple of length 4n indexed by 4*t + f, each entry
    ``None`` (boundary) or ``(t2, perm_index)``.
    """

    __slots__ = ("n", "glu", "_skel", "_hash")

    def __init__(self, n, glu, check=True):
        if n <= 0:
            raise InvalidGluing("need at least one tetrahedron")
        glu = tuple(glu)
        if len(glu) != 4 * n:
            raise InvalidGluing("gluing table must have 4n entries")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "glu", glu)
        object.__setattr__(self, "_skel", None)
        object.__setattr__(self, "_hash", None)
        if check:
            self._validate()
            self.skeleton()  # raises ReversedEdge on bad edge identifications

    def __setattr__(self, *a):
        raise AttributeError("Triangulation is immutable")

    def _validate(self):
        for t in range(self.n):
            for f in range(4):
                g = self.glu[4 * t + f]
                if g is None:
                    continue
                t2, p = g
                if not (0 <= t2 < self.n) or not (0 <= p < 24):
                    raise InvalidGluing("gluing out of range at (%d,%d)" % (t, f))
                f2 = PERMS[p][f]
                if t2 == t and f2 == f:
                    raise InvalidGluing("face (%d,%d) glued to itself" % (t, f))
                back = self.glu[4 * t2 + f2]
                if back is None or back[0] != t or back[1] != INV[p]:
                    raise InvalidGluing("involution fails at (%d,%d)" % (t, f))

    def skeleton(self):
        if self._skel is None:
            sk = Skeleton(self)
            sk._tri_glu = self.glu
            object.__setattr__(self, "_skel", sk)
        return self._skel

    # -- basic facts ----------------------------------------------------

    def is_orientable(self):
        return self.skeleton().orientable

    def all_glued(self):
        return all(g is not None for g in self.glu)

    def boundary_face_count(self):
        return sum(1 for g in self.glu if g is None)

    def is_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = self.glu[4 * t + f]
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    stack.append(g[0])
        return len(seen) == self.n

    def oriented(self):
        """Relabelled copy in which every gluing permutation is odd.

        Requires orientability.  Geometry code assumes this normal form so
        that one cross-ratio convention applies to every tetrahedron.
        """
        sk = self.skeleton()
        if not sk.orientable:
            raise ValueError("triangulation is not orientable")
        swap = PERMS.index((1, 0, 2, 3))
        relab = [IDENTITY if sk.tet_sign[t] == 1 else swap for t in range(self.n)]
        return self.relabel(list(range(self.n)), relab)

    def relabel(self, tet_map, vert_perms):
        """Apply tetrahedron renumbering and per-tet vertex permutations.

        ``tet_map[t]`` is the new index of old tetrahedron ``t`` and
        ``vert_perms[t]`` the permutation index applied to its vertices.
        """
        glu = [None] * (4 * self.n)
        for t in range(self.n):
            rp = vert_perms[t]
            for f in range(4):
                g = self.glu[4 * t + f]
                if g is None:
                    continue
                t2, p = g
                q = MUL[vert_perms[t2]][MUL[p][INV[rp]]]
                glu[4 * tet_map[t] + PERMS[rp][f]] = (tet_map[t2], q)
        return Triangulation(self.n, glu)

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.n == other.n and self.glu == other.glu

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.glu)))
        return self._hash

    def __repr__(self):
        return "Triangulation(%d tets, %d boundary faces)" % (self.n, self.boundary_face_count())

    # -- the documented text format --------------------------------------
    #
    # One triangulation per line:
    #     n; t0f0=T:PPPP t0f1=T:PPPP ... ;
    # listing every glued face once per side, where T is the partner
    # tetrahedron index and PPPP the vertex permutation as four digits
    # (image of vertex 0,1,2,3 in order).  Unglued faces are omitted.

    def to_text(self):
        parts = ["%d;" % self.n]
        for t in range(self.n):
            for f in range(4):
                g = self.glu[4 * t + f]
                if g is None:
                    continue
                parts.append("t%df%d=%d:%s" % (t, f, g[0], perm_str(g[1])))
        parts.append(";")
        return " ".join(parts)

    @classmethod
    def from_text(cls, line):
        body = line.strip()
        if not body.endswith(";"):
            raise InvalidGluing("missing trailing ';'")
        head, _, rest = body.partition(";")
        try:
            n = int(head.strip())
        except ValueError:
            raise InvalidGluing("bad tetrahedron count %r" % head)
        glu = [None] * (4 * n)
        rest = rest.rstrip(";").strip()
        if rest:
            for tok in rest.split():
                lhs, _, rhs = tok.partition("=")
                if not lhs.startswith("t") or "f" not in lhs or ":" not in rhs:
                    raise InvalidGluing("bad token %r" % tok)
                ts, fs = lhs[1:].split("f")
                t2s, ps = rhs.split(":")
                t, f, t2 = int(ts), int(fs), int(t2s)
                p = perm_from_str(ps)
                if not (0 <= t < n and 0 <= f < 4):
                    raise InvalidGluing("face out of range in %r" % tok)
                if glu[4 * t + f] is not None and glu[4 * t + f] != (t2, p):
                    raise InvalidGluing("conflicting entries for t%df%d" % (t, f))
                glu[4 * t + f] = (t2, p)
                glu[4 * t2 + PERMS[p][f]] = (t, INV[p])
        return cls(n, glu)
