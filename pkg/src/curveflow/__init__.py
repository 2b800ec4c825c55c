"""curveflow: exact computational topology for curves on flat surfaces.

Surfaces are convex rational polygons with glued edges and polygonal
holes; curves and arcs are rational polylines drawn on them.  Everything
downstream -- intersection counting, isotopy moves, the fine curve and
arc complexes, homology of the resulting complexes -- runs in exact
rational arithmetic.
"""

__version__ = "0.1.0"
