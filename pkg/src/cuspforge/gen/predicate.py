"""Final candidate test for census generation.

A finished triangulation belongs to the candidate set when it is connected,
has every face glued, every vertex link a torus or Klein bottle, no edge of
degree 1 or 2, and no degree-3 edge contained in three distinct tetrahedra.
The generator enforces these incrementally; this module is the pure
from-scratch check used as a final guard and by the test oracles.

Links of higher genus are excluded: such triangulations are not ideal
triangulations of cusped finite-volume hyperbolic manifolds, and none of
the pipeline's eligibility tests can ever discard them, so admitting them
would leave the stage sequence permanently undecided.
"""


class PredicateResult:
    def __init__(self, ok, reason=None):
        self.ok = ok
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "Pass" if self.ok else "Fail(%s)" % self.reason


PASS = PredicateResult(True)


def candidate_predicate(tri):
    if not tri.is_connected():
        return PredicateResult(False, "Disconnected")
    if not tri.all_glued():
        return PredicateResult(False, "NotIdealClosedFaces")
    sk = tri.skeleton()
    for deg, dist, open_ends in zip(sk.edge_degrees, sk.edge_distinct_tets,
                                    sk.edge_open_ends):
        if open_ends:
            return PredicateResult(False, "NotIdealClosedFaces")
        if deg <= 2:
            return PredicateResult(False, "LowDegreeEdge")
        if deg == 3 and dist == 3:
            return PredicateResult(False, "Degree3ThreeTets")
    for lt in sk.vertex_link_types:
        if lt in ("Sphere", "Disc"):
            return PredicateResult(False, "NonIdealVertex")
        if lt == "OtherClosed":
            return PredicateResult(False, "HigherGenusLink")
        if lt == "OtherBounded":
            return PredicateResult(False, "NotIdealClosedFaces")
    return PASS
