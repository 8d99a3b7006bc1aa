# Exact geometry helpers for the polytope semiring

from .linalg import (
    AffineFrame,
    clear_denominators,
    integer_det,
    integer_nullspace,
    integer_rank,
    primitive,
    rational_rank,
    rational_rref,
    solve_unique,
)
from .convex import (
    HRep,
    ambient_volume,
    boundary_faces,
    exact_array,
    extreme_points,
    h_representation,
    in_convex_position,
    polygon_cycle,
    pulling_triangulation,
    relative_volume,
)

__all__ = [
    'AffineFrame',
    'HRep',
    'ambient_volume',
    'boundary_faces',
    'clear_denominators',
    'exact_array',
    'extreme_points',
    'h_representation',
    'in_convex_position',
    'integer_det',
    'integer_nullspace',
    'integer_rank',
    'polygon_cycle',
    'primitive',
    'pulling_triangulation',
    'rational_rank',
    'rational_rref',
    'relative_volume',
    'solve_unique',
]
