from .matching import matching_equations, quad_type, tri_coord, quad_coord, vertex_link_vector, is_admissible
from .vertex_enum import enumerate_vertex_surfaces
from .analyze import analyze_surface, SurfaceAnalysis, InadmissibleVector
from .cut import cut_along, OneSided
from .filter import special_surface_filter, FilterOutcome
