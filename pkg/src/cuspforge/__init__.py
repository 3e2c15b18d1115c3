"""Census engine for orientable cusped hyperbolic 3-manifolds.

The package is organised around the stages of a census build:

- ``cuspforge.tri``      combinatorial triangulations (gluings, skeleton,
  signatures, Pachner moves, simplification, homology)
- ``cuspforge.gen``      isomorph-free candidate generation
- ``cuspforge.normal``   normal surface theory and the special-surface filter
- ``cuspforge.geom``     hyperbolic structures with interval certificates
- ``cuspforge.canon``    canonical (convex) retriangulation and dedup keys
- ``cuspforge.pipeline`` stage orchestration, naming, reports
- ``cuspforge.cli``      the ``forge`` command line entry point
"""

__version__ = "0.1.0"

from .tri.core import Triangulation  # noqa: F401
