"""Permutations of {0,1,2,3} as table-driven small integers.

Every gluing in the package stores a permutation index 0..23 rather than a
tuple, so composition and inversion are single table lookups in the hot
search loops.
"""

from itertools import permutations

# All 24 permutations in lexicographic order; PERMS[i] is a 4-tuple p with
# p[v] = image of vertex v.
PERMS = tuple(permutations(range(4)))
PERM_INDEX = {p: i for i, p in enumerate(PERMS)}
IDENTITY = PERM_INDEX[(0, 1, 2, 3)]


def _parity(p):
    inv = 0
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                inv += 1
    return inv & 1


# PARITY[i] == 1 for odd permutations (orientation-reversing as face maps).
PARITY = tuple(_parity(p) for p in PERMS)

# MUL[a][b] = index of PERMS[a] o PERMS[b]  (apply b first, then a).
MUL = tuple(
    tuple(PERM_INDEX[tuple(PERMS[a][PERMS[b][v]] for v in range(4))] for b in range(24))
    for a in range(24)
)

INV = tuple(PERM_INDEX[tuple(sorted(range(4), key=lambda v: PERMS[p][v]))] for p in range(24))

# Indices of the six permutations exchanging faces f -> g for each (f, g):
# used by the generator to enumerate gluing choices.
FACE_PERMS = {}
for f in range(4):
    for g in range(4):
        FACE_PERMS[(f, g)] = tuple(i for i in range(24) if PERMS[i][f] == g)

ODD_FACE_PERMS = {
    key: tuple(i for i in val if PARITY[i] == 1) for key, val in FACE_PERMS.items()
}

# Vertex pairs indexing the six edges of a tetrahedron.
EDGE_VERTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for i, (u, v) in enumerate(EDGE_VERTS):
    EDGE_INDEX[(u, v)] = i
    EDGE_INDEX[(v, u)] = i

# The two faces of a tetrahedron containing a given edge (faces are labelled
# by their opposite vertex, so these are the two vertices NOT on the edge).
EDGE_FACES = tuple(
    tuple(w for w in range(4) if w not in EDGE_VERTS[e]) for e in range(6)
)

# Edges of a given face (triples of edge indices).
FACE_EDGES = tuple(
    tuple(EDGE_INDEX[(u, v)] for u in range(4) for v in range(u + 1, 4) if u != f and v != f)
    for f in range(4)
)


def perm_str(i):
    return "".join(str(v) for v in PERMS[i])


def perm_from_str(s):
    if len(s) != 4 or set(s) != {"0", "1", "2", "3"}:
        raise ValueError("bad permutation string %r" % s)
    return PERM_INDEX[tuple(int(c) for c in s)]
