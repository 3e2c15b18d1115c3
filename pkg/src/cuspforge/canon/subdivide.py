"""Coning subdivision of a polygonal cellulation into a triangulation.

Every 2-cell and 3-cell receives an interior vertex; each polygon side
spans a triangle with its 2-cell's vertex, and each such triangle spans a
tetrahedron with the 3-cell's vertex.  A polygon shared by two 3-cells
glues the two tetrahedron fans across it; a polygon with one incident
3-cell leaves boundary faces.

A face is described by a vertex cycle plus, per incident 3-cell, a side
list naming each 1-cell occurrence AS SEEN FROM THAT CELL together with a
direction bit (1 when the cycle traverses the 1-cell along its intrinsic
direction).  Within one 3-cell, every such local side name must occur on
exactly two of the cell's polygon sides; those two fans are glued across
it, with the orientation fixed by the direction bits.  This keeps the
pairing well defined even when vertex names repeat along a cycle or the
same 1-cell of the complex meets a cell several times.
"""

from ..tri.perm import PERM_INDEX, INV, PERMS
from ..tri.core import Triangulation


class MalformedCellulation(ValueError):
    pass


class PolygonalCellulation:
    """faces: list of (verts, incidences) where incidences is a tuple of
    (cell, sides) and sides is a tuple of (side_name, direction_bit)
    aligned with verts (side i joins vertex i to vertex i+1)."""

    def __init__(self, faces):
        self.faces = []
        cells = set()
        for (verts, incidences) in faces:
            verts = tuple(verts)
            incidences = tuple((cell, tuple(sides)) for cell, sides in incidences)
            if len(verts) < 3:
                raise MalformedCellulation("polygon needs at least 3 sides")
            if len(incidences) not in (1, 2):
                raise MalformedCellulation("polygon needs 1 or 2 incident cells")
            for cell, sides in incidences:
                if len(sides) != len(verts):
                    raise MalformedCellulation("side list misaligned")
                cells.add(cell)
            self.faces.append((verts, incidences))
        self.cells = sorted(cells, key=repr)


def subdivide_cellulation(cellulation):
    """Cone subdivision; returns (Triangulation, tet_descriptions) where
    tet_descriptions[i] = (face index, side index, incidence position)."""
    faces = cellulation.faces
    tets = []
    tet_index = {}
    for fi, (verts, incidences) in enumerate(faces):
        for k in range(len(incidences)):
            for si in range(len(verts)):
                tet_index[(fi, si, k)] = len(tets)
                tets.append((fi, si, k))
    n = len(tets)
    glu = [None] * (4 * n)

    def glue(t1, f1, t2, f2, vmap):
        p = PERM_INDEX[tuple(vmap)]
        if PERMS[p][f1] != f2:
            raise MalformedCellulation("inconsistent subdivision gluing")
        if glu[4 * t1 + f1] is not None or glu[4 * t2 + f2] is not None:
            raise MalformedCellulation("double gluing in subdivision")
        glu[4 * t1 + f1] = (t2, p)
        glu[4 * t2 + f2] = (t1, INV[p])

    # local labels per tetrahedron: 0 = side tail, 1 = side head,
    # 2 = face centre, 3 = cell centre

    # 1. fan gluings around each face centre, per incidence side
    for fi, (verts, incidences) in enumerate(faces):
        m = len(verts)
        for k in range(len(incidences)):
            for si in range(m):
                sj = (si + 1) % m
                glue(tet_index[(fi, si, k)], 0,
                     tet_index[(fi, sj, k)], 1, (1, 0, 2, 3))

    # 2. gluings across each two-sided polygon
    for fi, (verts, incidences) in enumerate(faces):
        if len(incidences) == 1:
            continue
        for si in range(len(verts)):
            glue(tet_index[(fi, si, 0)], 3,
                 tet_index[(fi, si, 1)], 3, (0, 1, 2, 3))

    # 3. gluings inside each cell across shared 1-cell occurrences
    cell_sides = {}
    for fi, (verts, incidences) in enumerate(faces):
        for k, (cell, sides) in enumerate(incidences):
            for si, (name, direction) in enumerate(sides):
                cell_sides.setdefault(cell, {}).setdefault(name, []).append(
                    (fi, si, k, direction))
    for cell, by_name in cell_sides.items():
        for name, spots in by_name.items():
            if len(spots) != 2:
                raise MalformedCellulation(
                    "1-cell %r meets cell %r on %d polygon sides"
                    % (name, cell, len(spots)))
            (f1, s1, k1, d1), (f2, s2, k2, d2) = spots
            t1 = tet_index[(f1, s1, k1)]
            t2 = tet_index[(f2, s2, k2)]
            # shared face {tail, head, cell centre} is opposite the face
            # centre on both sides; tails match when directions agree
            vmap = (0, 1, 2, 3) if d1 == d2 else (1, 0, 2, 3)
            glue(t1, 2, t2, 2, vmap)

    return Triangulation(n, glu), tets
