"""2-3 and 3-2 Pachner moves.

Both moves replace a small cluster of tetrahedra by its complementary
triangulation of the bipyramid and rewire the cluster's outer faces.  The
rewiring logic is shared: each move builds a map from old outer face slots
to new ones and then re-glues, composing through when two outer slots were
glued to each other.
"""

from .perm import PERMS, PERM_INDEX, IDENTITY, INV, MUL, EDGE_VERTS
from .core import Triangulation


class MovePreconditionFailed(ValueError):
    pass


def _reglue(n_new, new_glu, tri, outer, removed):
    """Wire the outer faces of a replaced cluster.

    ``outer`` maps old slots (t, f) on the cluster boundary to
    (new_t, new_f, perm old->new); ``removed`` is the set of deleted
    tetrahedra.  Old tetrahedra keep their index if below every removed
    index, otherwise shift down.
    """
    shift = []
    k = 0
    for t in range(tri.n):
        if t in removed:
            shift.append(None)
        else:
            shift.append(k)
            k += 1

    def map_slot(t, f):
        # Where did old slot (t, f) go?
        if (t, f) in outer:
            nt, nf, conj = outer[(t, f)]
            return nt, nf, conj
        return shift[t], f, None  # untouched tetrahedron; identity relabel

    done = set()
    for (t, f) in outer:
        if (t, f) in done:
            continue
        g = tri.glu[4 * t + f]
        nt, nf, conj = outer[(t, f)]
        if g is None:
            new_glu[4 * nt + nf] = None
            done.add((t, f))
            continue
        t2, p = g
        f2 = PERMS[p][f]
        nt2, nf2, conj2 = map_slot(t2, f2)
        done.add((t, f))
        done.add((t2, f2))
        # perm from new side 1 to new side 2: conj2 o p o conj^-1
        q = p
        if conj is not None:
            q = MUL[q][INV[conj]]
        if conj2 is not None:
            q = MUL[conj2][q]
        new_glu[4 * nt + nf] = (nt2, q)
        new_glu[4 * nt2 + nf2] = (nt, INV[q])
        assert PERMS[q][nf] == nf2, "face image mismatch in reglue"

    # copy gluings between untouched tetrahedra
    for t in range(tri.n):
        if t in removed:
            continue
        for f in range(4):
            if (t, f) in outer:
                continue
            g = tri.glu[4 * t + f]
            if g is None:
                new_glu[4 * shift[t] + f] = None
                continue
            t2, p = g
            f2 = PERMS[p][f]
            if (t2, f2) in outer:
                continue  # handled above from the outer side
            new_glu[4 * shift[t] + f] = (shift[t2], p)
    return new_glu


def pachner_2_3(tri, t, f):
    """2-3 move through internal face (t, f).

    The face must be glued to a distinct tetrahedron.  Returns the new
    triangulation with one extra tetrahedron.  The new edge introduced by
    the move joins vertices 0 and 1 of each of the three new tetrahedra
    (the last three tetrahedra in the result).
    """
    g = tri.glu[4 * t + f]
    if g is None:
        raise MovePreconditionFailed("face (%d,%d) is boundary" % (t, f))
    B, p = g
    A = t
    fa = f
    fb = PERMS[p][f]
    if A == B:
        raise MovePreconditionFailed("2-3 needs two distinct tetrahedra")
    xs = [v for v in range(4) if v != fa]           # equatorial vertices in A
    pm = PERMS[p]
    ys = [pm[x] for x in xs]                        # their images in B

    n_new = tri.n + 1
    base = tri.n - 2  # new tets occupy indices base, base+1, base+2 after shift
    removed = {A, B}
    new_glu = [None] * (4 * n_new)

    # New tetrahedron N_i has local vertices:
    #   0 = apex of A (vertex fa), 1 = apex of B (vertex fb),
    #   2 = equatorial x_{i+1},    3 = equatorial x_{i+2}   (indices mod 3)
    for i in range(3):
        ni = base + i
        nj = base + (i + 1) % 3
        # face 2 of N_i (vertices {0,1,3} = {a,b,x_{i+2}}) glues to face 3 of
        # N_{i+1} (vertices {0,1,2} = {a,b,x_{i+2}})
        q = PERM_INDEX[(0, 1, 3, 2)]
        new_glu[4 * ni + 2] = (nj, q)
        new_glu[4 * nj + 3] = (ni, INV[q])

    outer = {}
    for i in range(3):
        ni = base + i
        x1, x2 = xs[(i + 1) % 3], xs[(i + 2) % 3]
        y1, y2 = ys[(i + 1) % 3], ys[(i + 2) % 3]
        # A's face opposite xs[i]  ->  N_i face 1 ; old->new vertex map
        mpa = [None] * 4
        mpa[fa] = 0
        mpa[x1] = 2
        mpa[x2] = 3
        mpa[xs[i]] = 1
        outer[(A, xs[i])] = (ni, 1, PERM_INDEX[tuple(mpa)])
        # B's face opposite ys[i]  ->  N_i face 0
        mpb = [None] * 4
        mpb[fb] = 1
        mpb[y1] = 2
        mpb[y2] = 3
        mpb[ys[i]] = 0
        outer[(B, ys[i])] = (ni, 0, PERM_INDEX[tuple(mpb)])

    _reglue(n_new, new_glu, tri, outer, removed)
    return Triangulation(n_new, new_glu)


def pachner_3_2(tri, eid):
    """3-2 move on edge class ``eid`` (degree 3, three distinct tetrahedra).

    Returns the new triangulation with one fewer tetrahedron.
    """
    sk = tri.skeleton()
    if sk.edge_open_ends[eid]:
        raise MovePreconditionFailed("edge class is not internal")
    if sk.edge_degrees[eid] != 3:
        raise MovePreconditionFailed("edge degree is %d, need 3" % sk.edge_degrees[eid])
    if sk.edge_distinct_tets[eid] != 3:
        raise MovePreconditionFailed("edge not contained in three distinct tetrahedra")
    cycle = sk.edge_cycle(eid)
    assert len(cycle) == 3
    # Label the shared edge a -> b by the class arrow.  Tetrahedron T_i of the
    # cycle has apexes (c_i = opposite vertex of its exit face, d_i = of its
    # enter face); walking T_0 -> T_1 -> T_2 the exit face of T_i is the enter
    # face of T_{i+1}, so c_i and d_{i+1} name the same equatorial vertex.
    tets = []
    for ct, ce, cs, enter, exit_face in cycle:
        u, v = EDGE_VERTS[ce]
        a, b = (u, v) if cs == 0 else (v, u)
        tets.append((ct, a, b, exit_face, enter))
    if len({t for t, *_ in tets}) != 3:
        raise MovePreconditionFailed("edge not contained in three distinct tetrahedra")

    # Two new tetrahedra: OA around apex a, OB around apex b.  Local labels:
    #   OA: 3 = a,  (0,1,2) = equatorial vertices (w_0, w_1, w_2)
    #   OB: 3 = b,  (0,1,2) = same equatorial vertices
    # where w_i is the equatorial vertex shared by T_i and T_{i+1}.  The two
    # new tetrahedra share the equatorial triangle vertex-for-vertex, so the
    # central gluing is the identity.
    n_new = tri.n - 1
    removed = {t for t, *_ in tets}
    base = tri.n - 3
    OA, OB = base, base + 1
    new_glu = [None] * (4 * n_new)
    new_glu[4 * OA + 3] = (OB, IDENTITY)
    new_glu[4 * OB + 3] = (OA, IDENTITY)

    outer = {}
    for i in range(3):
        Ti, a, b, exit_face, enter_face = tets[i]
        # T_i spans {a, b, w_{i-1}, w_i}.  Its exit face {a, b, w_i} is the
        # face opposite w_{i-1}, so locally w_{i-1} carries the exit label and
        # w_i the enter label.
        wi_local = enter_face
        wprev_local = exit_face
        # T_i's face opposite a (contains b, w_{i-1}, w_i) -> OB's face
        # opposite w-of-missing-index; T_i spans {a, b, w_{i-1}, w_i} so the
        # missing equatorial vertex is w_{i+1}.
        # OB face opposite local (i+1): vertices {3=b, i-1, i}.
        mpb = [None] * 4
        mpb[b] = 3
        mpb[wprev_local] = (i - 1) % 3
        mpb[wi_local] = i
        mpb[a] = (i + 1) % 3
        outer[(Ti, a)] = (OB, (i + 1) % 3, PERM_INDEX[tuple(mpb)])
        mpa = [None] * 4
        mpa[a] = 3
        mpa[wprev_local] = (i - 1) % 3
        mpa[wi_local] = i
        mpa[b] = (i + 1) % 3
        outer[(Ti, b)] = (OA, (i + 1) % 3, PERM_INDEX[tuple(mpa)])

    _reglue(n_new, new_glu, tri, outer, removed)
    return Triangulation(n_new, new_glu)


def internal_faces(tri):
    """Slots (t, f) of internal faces, one per face class."""
    out = []
    seen = set()
    for t in range(tri.n):
        for f in range(4):
            if (t, f) in seen:
                continue
            g = tri.glu[4 * t + f]
            if g is None:
                continue
            t2, p = g
            seen.add((t2, PERMS[p][f]))
            out.append((t, f))
    return out


def two_three_candidates(tri):
    """Faces where a 2-3 move is legal."""
    return [(t, f) for (t, f) in internal_faces(tri)
            if tri.glu[4 * t + f][0] != t]


def three_two_candidates(tri):
    """Edge classes where a 3-2 move is legal."""
    sk = tri.skeleton()
    return [eid for eid in range(len(sk.edge_classes))
            if not sk.edge_open_ends[eid]
            and sk.edge_degrees[eid] == 3
            and sk.edge_distinct_tets[eid] == 3]
