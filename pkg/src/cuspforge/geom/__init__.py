from .equations import build_gluing_system, GluingSystem, NotOrientable
from .newton import solve_shapes_numeric, NumericSolution
from .certify import certify_shapes, ShapeVector, CertificationFailed
from .volume import volume
