"""Standard normal coordinates and the matching equations.

Coordinates per tetrahedron t: indices 7t..7t+3 are the triangle types at
vertices 0..3, indices 7t+4..7t+6 the quad types 0..2, where quad q
separates the vertex pair {0, q+1} from the complementary pair.
"""

# quad type whose separation keeps vertices a and b on the same side
_QUAD_JOIN = {}
for a in range(4):
    for b in range(4):
        if a == b:
            continue
        pair = {a, b}
        if 0 in pair:
            q = max(pair) - 1
        else:
            q = ({1, 2, 3} - pair).pop() - 1
        _QUAD_JOIN[(a, b)] = q

# quad type crossing edge (u, v): separates u from v
_QUAD_CROSSING = {}
for u in range(4):
    for v in range(4):
        if u == v:
            continue
        qs = [q for q in range(3) if (u in (0, q + 1)) != (v in (0, q + 1))]
        _QUAD_CROSSING[(u, v)] = tuple(qs)


def quad_type(a, b):
    """Quad type keeping vertices a and b on the same side."""
    return _QUAD_JOIN[(a, b)]


def tri_coord(t, v):
    return 7 * t + v


def quad_coord(t, q):
    return 7 * t + 4 + q


def quads_crossing_edge(u, v):
    """The two quad types meeting edge (u, v)."""
    return _QUAD_CROSSING[(u, v)]


def matching_equations(tri):
    """One equation per (internal face class, normal arc type).

    Row convention: the arc cutting corner ``a`` of face ``f`` is crossed on
    each side by the triangle at ``a`` and the quad joining ``a`` to the
    vertex opposite the face; the two sides must agree.
    """
    from ..tri.perm import PERMS
    if not tri.all_glued():
        raise ValueError("matching equations need all faces glued")
    rows = []
    seen = set()
    for t in range(tri.n):
        for f in range(4):
            if (t, f) in seen:
                continue
            t2, p = tri.glu[4 * t + f]
            pm = PERMS[p]
            f2 = pm[f]
            seen.add((t2, f2))
            for a in range(4):
                if a == f:
                    continue
                a2 = pm[a]
                row = [0] * (7 * tri.n)
                row[tri_coord(t, a)] += 1
                row[quad_coord(t, quad_type(a, f))] += 1
                row[tri_coord(t2, a2)] -= 1
                row[quad_coord(t2, quad_type(a2, f2))] -= 1
                if any(row):
                    rows.append(row)
                else:
                    rows.append(row)  # keep shape 6n x 7n even for trivial rows
    return rows


def is_admissible(vec):
    n = len(vec) // 7
    for t in range(n):
        nz = sum(1 for q in range(3) if vec[7 * t + 4 + q])
        if nz > 1:
            return False
    return True


def vertex_link_vector(tri, cid):
    """Normal coordinates of the link of vertex class ``cid``."""
    sk = tri.skeleton()
    vec = [0] * (7 * tri.n)
    for (t, v) in sk.vertex_classes[cid]:
        vec[tri_coord(t, v)] += 1
    return vec
