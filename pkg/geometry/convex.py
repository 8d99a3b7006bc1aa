"""
Exact convex-hull machinery for finite sets of integer points.

Every routine works in the affine hull of its input: points are projected
onto an injective coordinate chart (see AffineFrame), facets are found in
the chart and reported back as index sets or lifted inequalities.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .linalg import AffineFrame, integer_det, integer_rank, reduce_by_gcd

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


def exact_array(points: Sequence[Sequence[int]]) -> np.ndarray:
    """(m, n) array of Python ints; products and sums never overflow"""
    return np.array([[int(c) for c in p] for p in points], dtype=object)


def _dot(arr: np.ndarray, normal: Sequence[int]) -> np.ndarray:
    return arr.dot(np.array([int(a) for a in normal], dtype=object))


@dataclass(frozen=True)
class Facet:
    """Facet inequality normal . x <= offset in chart coordinates"""
    normal: Tuple[int, ...]
    offset: int
    members: Tuple[int, ...]


@dataclass(frozen=True)
class HRep:
    """Ambient equations and inequalities of a polytope"""
    equations: Tuple[Tuple[Tuple[int, ...], int], ...]
    inequalities: Tuple[Tuple[Tuple[int, ...], int], ...]

    def contains(self, point: Sequence[int]) -> bool:
        for normal, rhs in self.equations:
            if sum(a * int(x) for a, x in zip(normal, point)) != rhs:
                return False
        for normal, rhs in self.inequalities:
            if sum(a * int(x) for a, x in zip(normal, point)) > rhs:
                return False
        return True

    def contains_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (m, n) array from exact_array"""
        mask = np.ones(points.shape[0], dtype=bool)
        for normal, rhs in self.equations:
            mask &= (_dot(points, normal) == rhs).astype(bool)
        for normal, rhs in self.inequalities:
            mask &= (_dot(points, normal) <= rhs).astype(bool)
        return mask


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(pts: List[Point]) -> List[Point]:
    """Counter-clockwise hull vertices of sorted distinct planar points"""
    if len(pts) <= 2:
        return list(pts)
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _cofactor_normal(base: Point, others: Sequence[Point]) -> Tuple[int, ...]:
    """Integer normal of the hyperplane through base and d-1 further points"""
    rows = [[a - b for a, b in zip(p, base)] for p in others]
    d = len(base)
    if d == 3:
        (a1, a2, a3), (b1, b2, b3) = rows
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in rows]
        normal.append((-1) ** j * integer_det(minor))
    return tuple(normal)


def full_dimensional_facets(pts: List[Point]) -> List[Facet]:
    """Facets of conv(pts) for distinct points spanning R^d, d >= 1"""
    d = len(pts[0])
    arr = exact_array(pts)
    if d == 1:
        values = arr[:, 0]
        lo, hi = int(values.min()), int(values.max())
        return [
            Facet((-1,), -lo, tuple(int(i) for i in np.flatnonzero(values == lo))),
            Facet((1,), hi, tuple(int(i) for i in np.flatnonzero(values == hi))),
        ]

    facets: Dict[Tuple[int, ...], Facet] = {}
    if d == 2:
        ring = _monotone_chain(sorted(pts))
        for k, p in enumerate(ring):
            normal = reduce_by_gcd((ring[(k + 1) % len(ring)][1] - p[1],
                                    p[0] - ring[(k + 1) % len(ring)][0]))
            offset = normal[0] * p[0] + normal[1] * p[1]
            values = _dot(arr, normal)
            facets[normal] = Facet(normal, offset,
                                   tuple(int(i) for i in np.flatnonzero(values == offset)))
        return [facets[k] for k in sorted(facets)]

    for combo in combinations(range(len(pts)), d):
        base = pts[combo[0]]
        raw = _cofactor_normal(base, [pts[i] for i in combo[1:]])
        if not any(raw):
            continue
        values = _dot(arr, raw)
        rhs = sum(a * b for a, b in zip(raw, base))
        if np.all(values <= rhs):
            sign = 1
        elif np.all(values >= rhs):
            sign = -1
        else:
            continue
        g = reduce_by_gcd(tuple(sign * a for a in raw))
        if g in facets:
            continue
        offset = sum(a * b for a, b in zip(g, base))
        values = _dot(arr, g)
        facets[g] = Facet(g, offset, tuple(int(i) for i in np.flatnonzero(values == offset)))
    return [facets[k] for k in sorted(facets)]


def extreme_points(points: Sequence[Sequence[int]]) -> List[Point]:
    """Irredundant vertex list of conv(points), lexicographically sorted"""
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if len(pts) <= 1:
        return pts
    frame = AffineFrame(pts)
    d = frame.dim
    if d == 0:
        return [pts[0]]
    proj = [frame.project(p) for p in pts]
    if d == 1:
        values = [c[0] for c in proj]
        lo = pts[values.index(min(values))]
        hi = pts[values.index(max(values))]
        return sorted([lo, hi])
    if d == 2:
        back = {c: p for c, p in zip(proj, pts)}
        return sorted(back[c] for c in _monotone_chain(sorted(proj)))
    facets = full_dimensional_facets(proj)
    tight: Dict[int, List[Tuple[int, ...]]] = {}
    for facet in facets:
        for i in facet.members:
            tight.setdefault(i, []).append(facet.normal)
    return sorted(pts[i] for i, normals in tight.items() if integer_rank(normals) == d)


def facet_point_sets(points: Sequence[Point]) -> List[Tuple[Point, ...]]:
    """Facets of conv(points) inside its affine hull, as point subsets"""
    pts = sorted(set(points))
    frame = AffineFrame(pts)
    if frame.dim == 0:
        return []
    proj = [frame.project(p) for p in pts]
    return [tuple(pts[i] for i in facet.members) for facet in full_dimensional_facets(proj)]


def h_representation(vertices: Sequence[Point]) -> HRep:
    """Ambient equations plus lifted facet inequalities"""
    pts = sorted(set(vertices))
    frame = AffineFrame(pts)
    inequalities = []
    if frame.dim > 0:
        proj = [frame.project(p) for p in pts]
        for facet in full_dimensional_facets(proj):
            lifted = [0] * frame.ambient
            for c, a in zip(frame.chart, facet.normal):
                lifted[c] = a
            inequalities.append((tuple(lifted), facet.offset))
    return HRep(tuple(frame.equations), tuple(inequalities))


def pulling_triangulation(points: Sequence[Point]) -> List[Tuple[Point, ...]]:
    """Simplices of a pulling triangulation from the first canonical vertex"""
    vertices = extreme_points(points)
    if len(vertices) == 1:
        return [(vertices[0],)]
    frame = AffineFrame(vertices)
    if frame.dim == 1:
        return [(vertices[0], vertices[1])]
    apex = vertices[0]
    simplices = []
    for members in facet_point_sets(vertices):
        if apex in members:
            continue
        for simplex in pulling_triangulation(members):
            simplices.append((apex,) + simplex)
    return simplices


def relative_volume(points: Sequence[Point]) -> Tuple[Fraction, int]:
    """
    Volume of conv(points) inside its affine hull, measured against the
    direction lattice (a primitive lattice segment has length 1). Returns
    the value and the affine dimension it was taken in.
    """
    vertices = extreme_points(points)
    frame = AffineFrame(vertices)
    d = frame.dim
    if d == 0:
        return Fraction(1), 0
    total = 0
    for simplex in pulling_triangulation(vertices):
        proj = [frame.project(p) for p in simplex]
        rows = [[a - b for a, b in zip(p, proj[0])] for p in proj[1:]]
        total += abs(integer_det(rows))
    chart_volume = Fraction(total, factorial(d))
    return chart_volume / frame.lattice_index(), d


def ambient_volume(points: Sequence[Point]) -> Fraction:
    """Lebesgue volume in R^n; zero for lower-dimensional input"""
    vertices = extreme_points(points)
    n = len(vertices[0])
    frame = AffineFrame(vertices)
    if frame.dim < n:
        return Fraction(0)
    total = 0
    for simplex in pulling_triangulation(vertices):
        rows = [[a - b for a, b in zip(p, simplex[0])] for p in simplex[1:]]
        total += abs(integer_det(rows))
    return Fraction(total, factorial(n))


def in_convex_position(points: Sequence[Point]) -> bool:
    """True when every point is a vertex of the hull"""
    return len(extreme_points(points)) == len(set(points))


def polygon_cycle(points: Sequence[Point]) -> List[Point]:
    """Vertices of a 2-dimensional polytope in cyclic order"""
    vertices = extreme_points(points)
    frame = AffineFrame(vertices)
    if frame.dim != 2:
        raise ValueError(f"Expected a polygon, got affine dimension {frame.dim}")
    lookup = {frame.project(v): v for v in vertices}
    return [lookup[p] for p in _monotone_chain(sorted(lookup))]


def boundary_faces(points: Sequence[Point]) -> List[List[Point]]:
    """Polygons bounding conv(points): itself in dimension 2, its facets in dimension 3"""
    vertices = extreme_points(points)
    d = AffineFrame(vertices).dim
    if d == 2:
        return [polygon_cycle(vertices)]
    if d == 3:
        return [polygon_cycle(facet) for facet in facet_point_sets(vertices)]
    return []
