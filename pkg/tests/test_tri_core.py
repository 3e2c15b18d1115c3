import random

import pytest

from cuspforge.tri.core import Triangulation, InvalidGluing, ReversedEdge
from cuspforge.tri.perm import PERMS, PERM_INDEX, INV, MUL
from cuspforge.gen import GenerationTask, enumerate_candidates
from cuspforge.tri.isosig import isosig_decode


def lone_tet():
    return Triangulation(1, [None, None, None, None])


def two_tet_candidates():
    sigs, _ = enumerate_candidates(GenerationTask(2, orientable_only=True))
    return [isosig_decode(s) for s in sigs]


def test_lone_tet_skeleton():
    tri = lone_tet()
    sk = tri.skeleton()
    assert len(sk.vertex_classes) == 4
    assert all(t == "Disc" for t in sk.vertex_link_types)
    assert len(sk.edge_classes) == 6
    assert sk.edge_degrees == [1] * 6
    assert tri.is_orientable()


def test_involution_enforced():
    with pytest.raises(InvalidGluing):
        Triangulation(2, [(1, PERM_INDEX[(0, 1, 2, 3)]), None, None, None,
                          None, None, None, None])


def test_face_not_glued_to_itself():
    glu = [None] * 4
    p = PERM_INDEX[(0, 1, 2, 3)]
    glu[0] = (0, p)
    with pytest.raises(InvalidGluing):
        Triangulation(1, glu)


def test_degree_sum_is_6n():
    for tri in two_tet_candidates():
        sk = tri.skeleton()
        assert sum(sk.edge_degrees) == 6 * tri.n


def test_text_roundtrip():
    for tri in two_tet_candidates():
        line = tri.to_text()
        back = Triangulation.from_text(line)
        assert back.glu == tri.glu


def test_relabel_preserves_validity():
    rng = random.Random(7)
    for tri in two_tet_candidates():
        tet_map = list(range(tri.n))
        rng.shuffle(tet_map)
        perms = [rng.randrange(24) for _ in range(tri.n)]
        tri2 = tri.relabel(tet_map, perms)
        assert tri2.n == tri.n
        sk1, sk2 = tri.skeleton(), tri2.skeleton()
        assert sorted(sk1.edge_degrees) == sorted(sk2.edge_degrees)
        assert sorted(sk1.vertex_link_types) == sorted(sk2.vertex_link_types)


def test_oriented_makes_all_gluings_odd():
    from cuspforge.tri.perm import PARITY
    for tri in two_tet_candidates():
        ot = tri.oriented()
        for g in ot.glu:
            if g is not None:
                assert PARITY[g[1]] == 1
