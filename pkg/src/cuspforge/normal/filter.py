"""The special-surface eligibility filter.

A candidate is discarded (certified nonminimal or non-hyperbolic) when
some standard vertex normal surface either has positive Euler
characteristic, or has zero Euler characteristic, is not a vertex link,
and in addition is one-sided, or is two-sided and cutting along it leaves
no solid torus piece.  The solid torus test is a sound semi-decision:
Unknown pieces are treated as possible solid tori, so discards are always
certified while keeps may be conservative.
"""

from .vertex_enum import enumerate_vertex_surfaces
from .analyze import analyze_surface
from .cut import cut_along
from .recognize import solid_torus_semidecision, NO


class FilterOutcome:
    def __init__(self, discard, reason=None, surface=None):
        self.discard = discard
        self.reason = reason
        self.surface = surface

    def __repr__(self):
        if self.discard:
            return "DiscardCertified(%s)" % self.reason
        return "Keep"


def special_surface_filter(tri, seed=0):
    surfaces = enumerate_vertex_surfaces(tri)
    for vec in surfaces:
        an = analyze_surface(tri, vec)
        if an.euler_characteristic > 0:
            return FilterOutcome(True, "PositiveEuler", vec)
        if an.euler_characteristic != 0 or an.is_vertex_link:
            continue
        if not an.two_sided:
            return FilterOutcome(True, "OneSidedTorus", vec)
        pieces = cut_along(tri, vec)
        verdicts = [solid_torus_semidecision(piece, info, seed=seed)
                    for piece, info in pieces]
        if all(v == NO for v in verdicts):
            return FilterOutcome(True, "NoSolidTorusPiece", vec)
    return FilterOutcome(False)
