"""First homology of the ideal (vertexless) manifold.

The manifold deformation retracts onto the dual 2-complex of the
triangulation: one 0-cell per tetrahedron, one 1-cell per internal face
class, one 2-cell per edge class.  H1 is computed from the two integer
boundary maps by Smith normal form.
"""

from .perm import PERMS


class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form."""

    def __init__(self, rank, divisors=()):
        self.rank = rank
        self.divisors = tuple(int(d) for d in divisors if d not in (0, 1))

    def __eq__(self, other):
        return (isinstance(other, AbelianGroup)
                and self.rank == other.rank and self.divisors == other.divisors)

    def __hash__(self):
        return hash((self.rank, self.divisors))

    def __repr__(self):
        parts = ["Z"] * self.rank + ["Z/%d" % d for d in self.divisors]
        return " + ".join(parts) if parts else "0"

    def key(self):
        return (self.rank, self.divisors)

    @classmethod
    def from_key(cls, key):
        return cls(key[0], key[1])


def smith_normal_form(rows):
    """Smith normal form with transform bookkeeping.

    Returns (diag, R, Rinv) where diag is the list of diagonal entries of
    S = L.M.R (nonzero first, each dividing the next) and R / Rinv are the
    unimodular column transform and its inverse (as row-major lists).  The
    row transform L is not needed by callers and is not returned.
    """
    m = len(rows)
    nc = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    R = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    Rinv = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def col_add(dst, src, k):
        # column dst += k * column src ; keep R, Rinv in sync.
        for r in a:
            r[dst] += k * r[src]
        for r in R:
            r[dst] += k * r[src]
        for j in range(nc):
            Rinv[src][j] -= k * Rinv[dst][j]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in R:
            r[i], r[j] = r[j], r[i]
        Rinv[i], Rinv[j] = Rinv[j], Rinv[i]

    def col_neg(i):
        for r in a:
            r[i] = -r[i]
        for r in R:
            r[i] = -r[i]
        for j in range(nc):
            Rinv[i][j] = -Rinv[i][j]

    def row_add(dst, src, k):
        arow = a[src]
        drow = a[dst]
        for j in range(nc):
            drow[j] += k * arow[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]

    t = 0
    limit = min(m, nc)
    while t < limit:
        # find pivot of least magnitude in the remaining block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        if a[t][t] < 0:
            col_neg(t)
        again = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_add(i, t, -q)
                if a[i][t]:
                    again = True
        for j in range(t + 1, nc):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_add(j, t, -q)
                if a[t][j]:
                    again = True
        if again:
            continue
        # ensure divisibility of the remaining block by the pivot
        d = a[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, nc):
                if a[i][j] % d:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad, 1)
            continue
        t += 1

    diag = [a[i][i] for i in range(limit)]
    return diag, R, Rinv


def dual_complex(tri):
    """Boundary maps of the dual 2-complex.

    Returns (faces, d1, d2): ``faces`` lists internal face classes as their
    smaller slot (t, f); ``d1`` is (#tets x #faces), ``d2`` is
    (#faces x #edge classes).
    """
    sk = tri.skeleton()
    glu = tri.glu
    face_id = {}
    faces = []
    for t in range(tri.n):
        for f in range(4):
            g = glu[4 * t + f]
            if g is None:
                continue
            t2, p = g
            f2 = PERMS[p][f]
            slot = (t, f)
            other = (t2, f2)
            lo = min(slot, other)
            if lo not in face_id:
                face_id[lo] = len(faces)
                faces.append(lo)

    def face_of_slot(t, f):
        t2, p = glu[4 * t + f]
        other = (t2, PERMS[p][f])
        lo = min((t, f), other)
        return face_id[lo], (t, f) == lo

    d1 = [[0] * len(faces) for _ in range(tri.n)]
    for (t, f), idx in ((s, face_id[s]) for s in faces):
        t2, p = glu[4 * t + f]
        d1[t2][idx] += 1
        d1[t][idx] -= 1

    ne = len(sk.edge_classes)
    d2 = [[0] * ne for _ in range(len(faces))]
    for eid in range(ne):
        if sk.edge_open_ends[eid]:
            continue
        for ct, ce, cs, enter, exit_face in sk.edge_cycle(eid):
            fid, positive = face_of_slot(ct, exit_face)
            d2[fid][eid] += 1 if positive else -1
    return faces, d1, d2


def homology_h1(tri):
    """H1 of the open manifold (all vertices removed).

    Requires every face to be glued.
    """
    if not tri.all_glued():
        raise ValueError("homology_h1 expects a closed (all faces glued) triangulation")
    faces, d1, d2 = dual_complex(tri)
    nf = len(faces)
    if nf == 0:
        return AbelianGroup(0)
    diag, R, Rinv = smith_normal_form(d1)
    r = sum(1 for d in diag if d)
    kdim = nf - r
    if kdim == 0:
        return AbelianGroup(0)
    # coordinates of im(d2) in the kernel basis: last kdim rows of Rinv . d2
    ne = len(d2[0]) if d2 else 0
    B = []
    for i in range(r, nf):
        row = []
        rrow = Rinv[i]
        for j in range(ne):
            row.append(sum(rrow[k] * d2[k][j] for k in range(nf)))
        B.append(row)
    if ne == 0:
        return AbelianGroup(kdim)
    diag2, _, _ = smith_normal_form(B)
    nonzero = [d for d in diag2 if d]
    rank = kdim - len(nonzero)
    return AbelianGroup(rank, [abs(d) for d in nonzero])
