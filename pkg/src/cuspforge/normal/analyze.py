"""Combinatorial analysis of a normal surface from its coordinates.

The induced surface complex is built at the level of individual parallel
copies: pieces are (tetrahedron, type, copy index), and two pieces are
glued along a normal arc exactly when they sit at the same depth in the
arc's crossing stacks on the two sides of a face gluing.
"""

from ..tri.perm import PERMS, EDGE_VERTS
from .matching import quad_type, quads_crossing_edge, is_admissible


class InadmissibleVector(ValueError):
    pass


class SurfaceAnalysis:
    def __init__(self, euler, is_vertex_link, two_sided, connected, pieces):
        self.euler_characteristic = euler
        self.is_vertex_link = is_vertex_link
        self.two_sided = two_sided
        self.connected = connected
        self.piece_count = pieces

    def __repr__(self):
        return ("SurfaceAnalysis(chi=%d, link=%s, two_sided=%s, connected=%s)"
                % (self.euler_characteristic, self.is_vertex_link,
                   self.two_sided, self.connected))


def _pieces(tri, vec):
    """Piece list and index; pieces are ('t', t, v, k) or ('q', t, q, k)."""
    pieces = []
    index = {}
    for t in range(tri.n):
        for v in range(4):
            for k in range(vec[7 * t + v]):
                index[("t", t, v, k)] = len(pieces)
                pieces.append(("t", t, v, k))
        for q in range(3):
            for k in range(vec[7 * t + 4 + q]):
                index[("q", t, q, k)] = len(pieces)
                pieces.append(("q", t, q, k))
    return pieces, index


def _arc_stack(tri, vec, t, f, a):
    """Pieces crossing the arc at corner ``a`` of face ``f`` of tet ``t``,
    ordered from the corner outward, each with its orientation sign
    relative to the piece's reference transverse direction (+1 when the
    piece's reference side faces the corner)."""
    stack = []
    for k in range(vec[7 * t + a]):
        stack.append((("t", t, a, k), 1))
    q = quad_type(a, f)
    count = vec[7 * t + 4 + q]
    if count:
        # quad copies are indexed from the side of the pair containing
        # vertex 0; the arc meets them nearest-first from vertex a's side
        a_on_zero_side = a in (0, q + 1)
        order = range(count) if a_on_zero_side else range(count - 1, -1, -1)
        rel = 1 if a_on_zero_side else -1
        for k in order:
            stack.append((("q", t, q, k), rel))
    return stack


def analyze_surface(tri, vec):
    """Euler characteristic, vertex-link detection, two-sidedness and
    connectedness of the normal surface with coordinates ``vec``."""
    if len(vec) != 7 * tri.n:
        raise ValueError("coordinate vector has wrong length")
    if any(x < 0 for x in vec):
        raise InadmissibleVector("negative coordinate")
    if not is_admissible(vec):
        raise InadmissibleVector("two quad types in one tetrahedron")
    if not tri.all_glued():
        raise ValueError("analysis needs a closed triangulation")

    pieces, index = _pieces(tri, vec)
    F = len(pieces)
    if F == 0:
        raise InadmissibleVector("empty surface")

    # union-find with orientation parity for two-sidedness
    parent = list(range(F))
    rel = [0] * F

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= rel[x]
            x = parent[x]
        return x, p

    def union(x, y, parity):
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            return (px ^ py) == parity
        parent[ry] = rx
        rel[ry] = px ^ py ^ parity
        return True

    two_sided = True
    E = 0
    seen_faces = set()
    for t in range(tri.n):
        for f in range(4):
            if (t, f) in seen_faces:
                continue
            t2, p = tri.glu[4 * t + f]
            pm = PERMS[p]
            f2 = pm[f]
            seen_faces.add((t2, f2))
            for a in range(4):
                if a == f:
                    continue
                s1 = _arc_stack(tri, vec, t, f, a)
                s2 = _arc_stack(tri, vec, t2, f2, pm[a])
                if len(s1) != len(s2):
                    raise InadmissibleVector("matching equations violated")
                E += len(s1)
                for (p1, r1), (p2, r2) in zip(s1, s2):
                    # transverse orientation continuity: the side facing the
                    # corner maps to the side facing the image corner
                    parity = 0 if r1 == r2 else 1
                    if not union(index[p1], index[p2], parity):
                        two_sided = False

    # V: intersection points with edges, counted once per edge class
    sk = tri.skeleton()
    V = 0
    for members in sk.edge_classes:
        t, e, s = members[0]
        u, v = EDGE_VERTS[e]
        count = vec[7 * t + u] + vec[7 * t + v]
        qa, qb = quads_crossing_edge(u, v)
        count += vec[7 * t + 4 + qa] + vec[7 * t + 4 + qb]
        V += count

    euler = V - E + F
    roots = {find(i)[0] for i in range(F)}
    connected = len(roots) == 1

    # vertex-link test: no quads, constant triangle count per vertex class
    is_link = all(vec[7 * t + 4 + q] == 0 for t in range(tri.n) for q in range(3))
    if is_link:
        for members in sk.vertex_classes:
            vals = {vec[7 * t + v] for (t, v) in members}
            if len(vals) != 1:
                is_link = False
                break
    return SurfaceAnalysis(euler, is_link, two_sided, connected, F)
