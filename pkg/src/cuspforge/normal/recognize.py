"""Sound semi-decision for solid torus pieces.

A cut piece is certified NOT to be a solid torus when it has a vertex
whose link is neither a sphere nor a disc (the piece is a cusp cone or
worse), when its boundary is not a single torus, or when its first
homology is not Z.  It is certified TO BE a solid torus when conservative
shelling and internal Pachner moves shrink it onto a catalogued small
triangulation whose fundamental group provably reduces to Z (a compact
orientable 3-manifold with torus boundary and infinite cyclic fundamental
group is a solid torus).  Anything else is Unknown, which callers must
treat as "possibly a solid torus".
"""

import random

from ..tri.perm import PERMS, EDGE_VERTS, EDGE_INDEX, FACE_EDGES
from ..tri.core import Triangulation
from ..tri.homology import smith_normal_form, AbelianGroup
from ..tri.isosig import isosig_encode
from ..tri.moves import pachner_2_3, pachner_3_2, two_three_candidates, three_two_candidates

YES, NO, UNKNOWN = "yes", "no", "unknown"


def h1_bounded(tri):
    """Cellular H1 of the compact quotient complex (vertices included)."""
    sk = tri.skeleton()
    nv = len(sk.vertex_classes)
    ne = len(sk.edge_classes)
    # d1: edge class -> head - tail
    d1 = [[0] * ne for _ in range(nv)]
    for eid, (tail, head) in enumerate(sk.edge_endpoints):
        d1[head][eid] += 1
        d1[tail][eid] -= 1
    # d2: one 2-cell per face class (internal faces once, boundary faces too)
    face_slots = []
    seen = set()
    for t in range(tri.n):
        for f in range(4):
            if (t, f) in seen:
                continue
            g = tri.glu[4 * t + f]
            if g is not None:
                t2, p = g
                seen.add((t2, PERMS[p][f]))
            face_slots.append((t, f))
    d2 = [[0] * len(face_slots) for _ in range(ne)]
    for col, (t, f) in enumerate(face_slots):
        vs = [v for v in range(4) if v != f]
        for i in range(3):
            x, y = vs[i], vs[(i + 1) % 3]
            e = EDGE_INDEX[(min(x, y), max(x, y))]
            eid = sk.edge_class[(t, e)]
            s = sk.edge_orient[(t, e)]
            lo, hi = EDGE_VERTS[e]
            tail_local = lo if s == 0 else hi
            sign = 1 if x == tail_local else -1
            d2[eid][col] += sign
    # H1 = ker d1 / im d2
    diag, R, Rinv = smith_normal_form(d1)
    r = sum(1 for d in diag if d)
    kdim = ne - r
    if kdim == 0:
        return AbelianGroup(0)
    B = []
    for i in range(r, ne):
        row = []
        rrow = Rinv[i]
        for j in range(len(face_slots)):
            row.append(sum(rrow[k] * d2[k][j] for k in range(ne)))
        B.append(row)
    if not face_slots:
        return AbelianGroup(kdim)
    diag2, _, _ = smith_normal_form(B)
    nonzero = [abs(d) for d in diag2 if d]
    return AbelianGroup(kdim - len(nonzero), nonzero)


def boundary_components(tri):
    """(count, [chi per component]) of the boundary surface."""
    sk = tri.skeleton()
    bslots = [(t, f) for t in range(tri.n) for f in range(4)
              if tri.glu[4 * t + f] is None]
    if not bslots:
        return 0, []
    slot_id = {s: i for i, s in enumerate(bslots)}
    parent = list(range(len(bslots)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # boundary edges: edge classes with open wedge ends; walk each open
    # fan from one boundary slot to the other
    bedge_count = 0
    for eid, members in enumerate(sk.edge_classes):
        if sk.edge_open_ends[eid] == 0:
            continue
        if sk.edge_open_ends[eid] != 2:
            raise ValueError("non-manifold edge (open ends != 2)")
        bedge_count += 1
        ends = []
        for (t, e, s) in members:
            for w in (0, 1):
                face = _edge_face(e, w)
                if tri.glu[4 * t + face] is None:
                    ends.append((t, face))
        assert len(ends) == 2
        a = find(slot_id[ends[0]])
        b = find(slot_id[ends[1]])
        if a != b:
            parent[a] = b

    comps = {}
    for i in range(len(bslots)):
        comps.setdefault(find(i), []).append(i)

    # vertices on the boundary: disc-link classes, assigned by incidence
    chis = []
    for root, members in sorted(comps.items()):
        F = len(members)
        E = 0
        vset = set()
        eset = set()
        for i in members:
            t, f = bslots[i]
            for e in FACE_EDGES[f]:
                eset.add(sk.edge_class[(t, e)])
            for v in range(4):
                if v != f:
                    vset.add(sk.vertex_class[(t, v)])
        # count only boundary edges / boundary vertices of this component
        E = sum(1 for eid in eset if sk.edge_open_ends[eid])
        V = sum(1 for vid in vset if sk.vertex_link_types[vid] in ("Disc", "OtherBounded"))
        chis.append(V - E + F)
    return len(comps), chis


def _edge_face(e, which):
    from ..tri.perm import EDGE_FACES
    return EDGE_FACES[e][which]


# ---- conservative shellings ---------------------------------------------

def shell_candidates(tri):
    out = []
    sk = tri.skeleton()
    for t in range(tri.n):
        bdry = [f for f in range(4) if tri.glu[4 * t + f] is None]
        if not bdry or len(bdry) == 4:
            continue
        internal = [f for f in range(4) if f not in bdry]
        if any(tri.glu[4 * t + f][0] == t for f in internal):
            continue
        if len(bdry) == 3:
            # the attaching face must be an embedded disc: distinct edge
            # and vertex classes
            f = internal[0]
            ecls = [sk.edge_class[(t, e)] for e in FACE_EDGES[f]]
            vcls = [sk.vertex_class[(t, v)] for v in range(4) if v != f]
            if len(set(ecls)) == 3 and len(set(vcls)) == 3:
                out.append(t)
            continue
        if len(bdry) == 2:
            f1, f2 = internal
            # disc = two faces along their common edge; keep it embedded
            common = [e for e in FACE_EDGES[f1] if e in FACE_EDGES[f2]]
            others = [e for e in set(FACE_EDGES[f1]) | set(FACE_EDGES[f2])
                      if e not in common]
            cls = [sk.edge_class[(t, e)] for e in others]
            ccls = sk.edge_class[(t, common[0])]
            if len(set(cls)) == 4 and ccls not in cls:
                verts = {v for f in internal for v in range(4) if v != f}
                vcls = [sk.vertex_class[(t, v)] for v in verts]
                if len(set(vcls)) == len(vcls):
                    out.append(t)
            continue
        if len(bdry) == 1:
            apex = bdry[0]
            spokes = [EDGE_INDEX[(min(apex, v), max(apex, v))]
                      for v in range(4) if v != apex]
            rim = FACE_EDGES[apex]
            scls = [sk.edge_class[(t, e)] for e in spokes]
            rcls = [sk.edge_class[(t, e)] for e in rim]
            if len(set(scls)) == 3 and len(set(rcls)) == 3 \
                    and not (set(scls) & set(rcls)):
                vcls = [sk.vertex_class[(t, v)] for v in range(4)]
                if len(set(vcls)) == 4:
                    out.append(t)
    return out


def shell(tri, t):
    """Remove tetrahedron t (precondition: shell_candidates accepted it)."""
    glu = []
    for t2 in range(tri.n):
        if t2 == t:
            continue
        for f in range(4):
            g = tri.glu[4 * t2 + f]
            if g is None or g[0] == t:
                glu.append(None)
            else:
                nt = g[0] if g[0] < t else g[0] - 1
                glu.append((nt, g[1]))
    return Triangulation(tri.n - 1, glu)


def shrink(tri, seed=0, rounds=24):
    """Greedy reduction by shellings and internal Pachner moves."""
    rng = random.Random(seed)
    best = tri
    cur = tri

    def reduce_pass(s):
        changed = True
        while changed and s.n > 1:
            changed = False
            cands = shell_candidates(s)
            if cands:
                s = shell(s, cands[0])
                changed = True
                continue
            threes = three_two_candidates(s)
            if threes:
                s = pachner_3_2(s, threes[0])
                changed = True
        return s

    cur = reduce_pass(cur)
    best = cur if cur.n < best.n else best
    for _ in range(rounds):
        work = cur
        ups = two_three_candidates(work)
        if ups:
            t, f = ups[rng.randrange(len(ups))]
            work = pachner_2_3(work, t, f)
        work = reduce_pass(work)
        if work.n < best.n:
            best = work
            cur = work
        elif work.n <= cur.n:
            cur = work
    return best


# ---- solid torus catalog --------------------------------------------------

_catalog_cache = None


def fundamental_presentation(tri):
    """Presentation of pi1 of the quotient complex: generators are the edge
    classes off a spanning tree, relators come from face classes."""
    sk = tri.skeleton()
    ne = len(sk.edge_classes)
    # spanning tree over vertex classes
    nv = len(sk.vertex_classes)
    tree = set()
    seen = {0}
    changed = True
    while changed:
        changed = False
        for eid, (tail, head) in enumerate(sk.edge_endpoints):
            if eid in tree:
                continue
            if (tail in seen) != (head in seen):
                tree.add(eid)
                seen.update((tail, head))
                changed = True
    gens = [eid for eid in range(ne) if eid not in tree]
    gen_index = {e: i for i, e in enumerate(gens)}
    # relator words from face classes
    words = []
    done = set()
    for t in range(tri.n):
        for f in range(4):
            if (t, f) in done:
                continue
            g = tri.glu[4 * t + f]
            if g is not None:
                t2, p = g
                done.add((t2, PERMS[p][f]))
            vs = [v for v in range(4) if v != f]
            word = []
            for i in range(3):
                x, y = vs[i], vs[(i + 1) % 3]
                e = EDGE_INDEX[(min(x, y), max(x, y))]
                eid = sk.edge_class[(t, e)]
                if eid in tree:
                    continue
                s = sk.edge_orient[(t, e)]
                lo, hi = EDGE_VERTS[e]
                tail_local = lo if s == 0 else hi
                sign = 1 if x == tail_local else -1
                word.append(sign * (gen_index[eid] + 1))
            words.append(word)
    return len(gens), words


def _pi1_is_z(tri):
    ngens, words = fundamental_presentation(tri)
    alive, reduced = tietze_reduce(ngens, words)
    return len(alive) == 1 and not reduced


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) > 1 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def tietze_reduce(ngens, words, max_length=4000):
    """Greedy Tietze elimination: repeatedly remove a generator that occurs
    exactly once in some relator, substituting its expression everywhere.
    Returns (alive generators, reduced relators)."""
    words = [w for w in (_free_reduce(w) for w in words) if w]
    alive = set(range(1, ngens + 1))
    while words:
        pick = None
        for w in sorted(words, key=len):
            for g in alive:
                occ = [i for i, x in enumerate(w) if abs(x) == g]
                if len(occ) == 1:
                    pick = (w, occ[0], g)
                    break
            if pick:
                break
        if pick is None:
            break
        w, i, g = pick
        rot = w[i:] + w[:i]  # starts with +-g
        if rot[0] == g:
            expr = [-x for x in reversed(rot[1:])]
        else:
            expr = list(rot[1:])
        inv_expr = [-x for x in reversed(expr)]
        new_words = []
        total = 0
        for v in words:
            if v is w:
                continue
            nv = []
            for x in v:
                if x == g:
                    nv.extend(expr)
                elif x == -g:
                    nv.extend(inv_expr)
                else:
                    nv.append(x)
            nv = _free_reduce(nv)
            total += len(nv)
            if nv:
                new_words.append(nv)
        if total > max_length:
            break  # substitution blowing up; stop reducing
        words = new_words
        alive.discard(g)
    return alive, words


# small permutation groups for nonabelian quotient certificates
def _sym_group(n):
    from itertools import permutations as _perms
    return [tuple(p) for p in _perms(range(n))]


def _perm_mul(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _perm_inv(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def has_nonabelian_quotient(ngens_alive, words, degrees=(3, 4)):
    """Search for a homomorphism onto a nonabelian permutation subgroup.

    A hit certifies pi1 nonabelian, hence 'not a solid torus'.  The search
    brute-forces generator images in S3 / S4 over the REDUCED presentation,
    so it is only attempted for few generators."""
    gens = sorted(ngens_alive)
    g = len(gens)
    if g == 0 or g > 4:
        return False
    index = {gen: i for i, gen in enumerate(gens)}
    for deg in degrees:
        G = _sym_group(deg)
        ident = tuple(range(deg))
        if deg == 4 and g > 3:
            continue  # 24^4 is too many
        import itertools
        for images in itertools.product(G, repeat=g):
            ok = True
            for w in words:
                acc = ident
                for x in w:
                    im = images[index[abs(x)]]
                    acc = _perm_mul(acc, im if x > 0 else _perm_inv(im))
                if acc != ident:
                    ok = False
                    break
            if not ok:
                continue
            # nonabelian image: some pair of generator images must not commute
            for i in range(g):
                for j in range(i + 1, g):
                    a, b = images[i], images[j]
                    if _perm_mul(a, b) != _perm_mul(b, a):
                        return True
    return False


def solid_torus_catalog():
    """Signatures of certified small solid torus triangulations: one-tet
    bounded triangulations with torus boundary and pi1 = Z, closed under
    2-3 moves up to three tetrahedra."""
    global _catalog_cache
    if _catalog_cache is not None:
        return _catalog_cache
    from ..tri.perm import FACE_PERMS
    base = []
    for f1 in range(4):
        for f2 in range(4):
            if f2 <= f1:
                continue
            for p in FACE_PERMS[(f1, f2)]:
                glu = [None] * 4
                from ..tri.perm import INV
                glu[f1] = (0, p)
                glu[f2] = (0, INV[p])
                if PERMS[p][f1] != f2:
                    continue
                try:
                    tri = Triangulation(1, glu)
                except ValueError:
                    continue
                sk = tri.skeleton()
                if not sk.orientable:
                    continue
                if any(lt not in ("Disc", "Sphere") for lt in sk.vertex_link_types):
                    continue
                ncomp, chis = boundary_components(tri)
                if ncomp != 1 or chis[0] != 0:
                    continue
                if h1_bounded(tri).key() != (1, ()):
                    continue
                if not _pi1_is_z(tri):
                    continue
                base.append(tri)
    sigs = set()
    frontier = base
    for tri in frontier:
        sigs.add(isosig_encode(tri))
    for _ in range(2):
        nxt = []
        for tri in frontier:
            for (t, f) in two_three_candidates(tri):
                bigger = pachner_2_3(tri, t, f)
                s = isosig_encode(bigger)
                if s not in sigs:
                    sigs.add(s)
                    nxt.append(bigger)
        frontier = nxt
    _catalog_cache = sigs
    return sigs


def solid_torus_semidecision(piece, info, seed=0):
    """YES / NO / UNKNOWN for 'this cut piece is a solid torus'."""
    if info.get("has_ideal_vertex"):
        return NO
    sk = piece.skeleton()
    for lt in sk.vertex_link_types:
        if lt not in ("Disc", "Sphere"):
            return NO
    if not sk.orientable:
        return NO
    ncomp, chis = boundary_components(piece)
    if ncomp != 1 or chis[0] != 0:
        return NO
    if h1_bounded(piece).key() != (1, ()):
        return NO
    ngens, words = fundamental_presentation(piece)
    alive, reduced = tietze_reduce(ngens, words)
    if len(alive) == 1 and not reduced:
        # compact orientable, single torus boundary, pi1 = Z: solid torus
        return YES
    if has_nonabelian_quotient(alive, reduced):
        return NO
    small = shrink(piece, seed=seed)
    if isosig_encode(small) in solid_torus_catalog():
        return YES
    ngens, words = fundamental_presentation(small)
    alive, reduced = tietze_reduce(ngens, words)
    if len(alive) == 1 and not reduced:
        return YES
    if has_nonabelian_quotient(alive, reduced):
        return NO
    return UNKNOWN
