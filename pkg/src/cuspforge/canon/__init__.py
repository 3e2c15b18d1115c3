from .subdivide import PolygonalCellulation, subdivide_cellulation, MalformedCellulation

__all__ = ["PolygonalCellulation", "subdivide_cellulation", "MalformedCellulation"]
