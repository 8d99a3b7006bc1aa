"""
Values and arithmetic of the polytope semiring A[n]
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from config import *
from errors import BudgetExceeded, MixedDimension, NegativeCoordinate, ZeroElement
from geometry import (
    HRep,
    ambient_volume,
    exact_array,
    extreme_points,
    h_representation,
    in_convex_position,
    relative_volume,
)

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


@dataclass(frozen=True, repr=False)
class LatticePolytope:
    """
    An element of A[n]: the zero element 0_A or the convex hull of
    lattice points in Z^n>=0, stored by its sorted vertex list.
    """
    dim: int
    vertices: Tuple[Point, ...] = ()
    is_zero: bool = False

    @classmethod
    def zero(cls, dim: int) -> "LatticePolytope":
        return cls(dim=dim, vertices=(), is_zero=True)

    @property
    def is_point(self) -> bool:
        return not self.is_zero and len(self.vertices) == 1

    @cached_property
    def hrep(self) -> HRep:
        return h_representation(self.vertices)

    @cached_property
    def affine_dim(self) -> int:
        if self.is_zero:
            return -1
        return relative_volume(self.vertices)[1]

    @cached_property
    def lattice_points(self) -> Tuple[Point, ...]:
        if self.is_zero:
            return ()
        arr = exact_array(self.vertices)
        lows, highs = arr.min(axis=0), arr.max(axis=0)
        axes = [np.array(range(lo, hi + 1), dtype=object) for lo, hi in zip(lows, highs)]
        grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, self.dim)
        inside = grid[self.hrep.contains_many(grid)]
        return tuple(tuple(int(c) for c in row) for row in inside)

    @cached_property
    def lattice_point_set(self) -> frozenset:
        return frozenset(self.lattice_points)

    @cached_property
    def key(self) -> tuple:
        """Deterministic order: dimension, relative volume, vertex count, vertices"""
        if self.is_zero:
            return (-1, Fraction(0), 0, ())
        value, d = relative_volume(self.vertices)
        return (d, value, len(self.vertices), self.vertices)

    def to_dict(self) -> Dict:
        if self.is_zero:
            return {'zero': True}
        return {'dim': self.dim, 'vertices': [list(v) for v in self.vertices]}

    def __str__(self) -> str:
        if self.is_zero:
            return "zero"
        if self.is_point:
            return "point(" + ",".join(str(c) for c in self.vertices[0]) + ")"
        body = ",".join("(" + ",".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"hull({body})"

    def __repr__(self) -> str:
        return f"LatticePolytope({self})"


@dataclass(frozen=True)
class RationalVolume:
    value: Fraction
    dim_used: int

    def to_dict(self) -> Dict:
        return {'value': str(self.value), 'dim_used': self.dim_used}


def _as_point(coords: Sequence[int]) -> Point:
    point = tuple(int(c) for c in coords)
    if any(c < 0 for c in point):
        raise NegativeCoordinate(point)
    return point


def _check_same_dim(*polytopes: LatticePolytope) -> int:
    dims = [p.dim for p in polytopes]
    if len(set(dims)) > 1:
        raise MixedDimension(dims)
    return dims[0]


def hull(points: Sequence[Sequence[int]], dim: Optional[int] = None) -> LatticePolytope:
    """Convex hull of lattice points; the empty list gives 0_A"""
    pts = [_as_point(p) for p in points]
    if not pts:
        return LatticePolytope.zero(dim if dim is not None else 0)
    dims = {len(p) for p in pts}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise MixedDimension(sorted(dims))
    return LatticePolytope(len(pts[0]), tuple(extreme_points(pts)))


def point(*coords: int) -> LatticePolytope:
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    return hull([coords])


def segment(a: Sequence[int], b: Sequence[int]) -> LatticePolytope:
    return hull([a, b])


def origin(n: int) -> LatticePolytope:
    return point(*([0] * n))


def coordinate_point(i: int, n: int) -> LatticePolytope:
    """The point e_i of A[n], 1-based"""
    if not 1 <= i <= n:
        raise ValueError(f"Coordinate index {i} outside 1..{n}")
    return point(*[1 if j == i - 1 else 0 for j in range(n)])


def zero(n: int) -> LatticePolytope:
    return LatticePolytope.zero(n)


def oplus(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """Convex hull of the union; 0_A is the identity"""
    _check_same_dim(P, Q)
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    return hull(P.vertices + Q.vertices)


def oplus_all(polytopes: Sequence[LatticePolytope], dim: int) -> LatticePolytope:
    result = LatticePolytope.zero(dim)
    for P in polytopes:
        result = oplus(result, P)
    return result


def odot(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """Minkowski sum; 0_A annihilates"""
    n = _check_same_dim(P, Q)
    if P.is_zero or Q.is_zero:
        return LatticePolytope.zero(n)
    sums = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return hull(sorted(sums))


def translate(P: LatticePolytope, t: Sequence[int]) -> LatticePolytope:
    if P.is_zero:
        return P
    return hull([tuple(a + b for a, b in zip(v, t)) for v in P.vertices])


def minimum_corner(P: LatticePolytope) -> Point:
    """Componentwise minimum of the vertices"""
    return tuple(min(v[c] for v in P.vertices) for c in range(P.dim))


def normalize(P: LatticePolytope) -> LatticePolytope:
    """Translate so that every coordinate minimum is 0"""
    if P.is_zero:
        return P
    low = minimum_corner(P)
    return hull([tuple(a - b for a, b in zip(v, low)) for v in P.vertices])


def degree(P: LatticePolytope) -> Optional[int]:
    """k when P lies in the hyperplane of coordinate sum k, else None"""
    if P.is_zero:
        raise ZeroElement("0_A has no degree")
    sums = {sum(v) for v in P.vertices}
    return sums.pop() if len(sums) == 1 else None


def contains(P: LatticePolytope, x: Union[LatticePolytope, Sequence[int]]) -> bool:
    """
    Exact point-in-polytope or polytope-in-polytope test. 0_A contains only
    0_A, and every polytope contains 0_A (the bottom of the join order).
    """
    if isinstance(x, LatticePolytope):
        _check_same_dim(P, x)
        if x.is_zero:
            return True
        if P.is_zero:
            return False
        return all(P.hrep.contains(v) for v in x.vertices)
    if len(x) != P.dim:
        raise MixedDimension([P.dim, len(x)])
    if P.is_zero:
        return False
    return P.hrep.contains(x)


def volume(P: LatticePolytope, mode: str = 'ambient') -> RationalVolume:
    """
    Exact volume. Ambient mode is Lebesgue measure in R^n (0 below full
    dimension); relative mode measures inside the affine hull against its
    direction lattice, so a point has volume 1 in dimension 0.
    """
    if mode == 'ambient':
        if P.is_zero:
            return RationalVolume(Fraction(0), P.dim)
        return RationalVolume(ambient_volume(P.vertices), P.dim)
    if mode == 'relative':
        if P.is_zero:
            raise ZeroElement("relative volume of 0_A is undefined")
        value, d = relative_volume(P.vertices)
        return RationalVolume(value, d)
    raise ValueError(f"Unknown volume mode: {mode}")


def lattice_points_of_degree(n: int, k: int) -> List[Point]:
    """All points of Z^n>=0 with coordinate sum k, lexicographically sorted"""
    if n == 1:
        return [(k,)]
    points = []
    for first in range(k + 1):
        for rest in lattice_points_of_degree(n - 1, k - first):
            points.append((first,) + rest)
    return points


def erosion(V: LatticePolytope, Q: LatticePolytope) -> List[Point]:
    """Lattice points t >= 0 with V (.) point(t) inside Q"""
    _check_same_dim(V, Q)
    if V.is_zero or Q.is_zero:
        raise ZeroElement("erosion needs nonzero polytopes")
    base = V.vertices[0]
    inside = Q.lattice_point_set
    result = []
    for q in Q.lattice_points:
        t = tuple(a - b for a, b in zip(q, base))
        if any(c < 0 for c in t):
            continue
        if all(tuple(a + b for a, b in zip(v, t)) in inside for v in V.vertices[1:]):
            result.append(t)
    return result


def is_summand(V: LatticePolytope, Q: LatticePolytope) -> Optional[LatticePolytope]:
    """
    The cofactor R with V (.) R = Q when V is a Minkowski summand of Q.
    Any witness lies inside hull(erosion(V, Q)), so testing that hull decides.
    """
    _check_same_dim(V, Q)
    if V.is_zero or Q.is_zero:
        raise ZeroElement("summand test needs nonzero polytopes")
    T = erosion(V, Q)
    if not T:
        return None
    R = hull(T)
    return R if odot(V, R) == Q else None


def convex_position_subsets(points: Sequence[Point], max_size: Optional[int] = None,
                            desc: Optional[str] = None) -> Iterator[Tuple[Point, ...]]:
    """
    Every nonempty subset of `points` in convex position, each yielded once.
    Subsets of a convex-position set are in convex position, so the search
    prunes on the first failure.
    """
    pts = list(points)

    def extend(chosen: Tuple[Point, ...], start: int) -> Iterator[Tuple[Point, ...]]:
        yield chosen
        if max_size is not None and len(chosen) >= max_size:
            return
        for i in range(start, len(pts)):
            candidate = chosen + (pts[i],)
            if len(candidate) <= 2 or in_convex_position(candidate):
                yield from extend(candidate, i + 1)

    show = PROGRESS_CONFIG['show_progress'] and desc is not None
    for i in tqdm(range(len(pts)), desc=desc, disable=not show):
        yield from extend((pts[i],), i + 1)


@lru_cache(maxsize=64)
def iter_box_polytopes(n: int, box: int) -> Tuple[LatticePolytope, ...]:
    """All lattice polytopes with vertices in [0, box]^n, in key order"""
    grid = lattice_points_in_box(n, box)
    found = {hull(subset) for subset in convex_position_subsets(grid, desc=f"Box polytopes n={n}")}
    ordered = tuple(sorted(found, key=lambda P: P.key))
    logger.info(f"Enumerated {len(ordered)} lattice polytopes in [0,{box}]^{n}")
    return ordered


def lattice_points_in_box(n: int, box: int) -> List[Point]:
    axes = [np.arange(box + 1, dtype=np.int64)] * n
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, n)
    return [tuple(int(c) for c in row) for row in grid]


class SummandSearch:
    """
    Budgeted Minkowski-summand search shared by the factorization routines.
    Every candidate hull built and every summand test is one step.
    """

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget if budget is not None else BUDGET_CONFIG['summand_tests']
        self.tests = 0
        self._irreducible: Dict[LatticePolytope, bool] = {}
        self._candidates: Dict[LatticePolytope, Tuple[LatticePolytope, ...]] = {}

    def step(self) -> None:
        self.tests += 1
        if self.tests > self.budget:
            raise BudgetExceeded("Summand search", self.budget)

    def test(self, V: LatticePolytope, Q: LatticePolytope) -> Optional[LatticePolytope]:
        self.step()
        return is_summand(V, Q)

    def candidates(self, P: LatticePolytope) -> Tuple[LatticePolytope, ...]:
        if P not in self._candidates:
            self._candidates[P] = summand_candidates(P, self.step)
        return self._candidates[P]

    def smallest_split(self, P: LatticePolytope) -> Optional[Tuple[LatticePolytope, LatticePolytope]]:
        """Smallest non-point summand S of normalized P with a non-point cofactor"""
        for S in self.candidates(P):
            if S == P:
                continue
            R = self.test(S, P)
            if R is not None and not R.is_point:
                return S, R
        return None

    def is_irreducible(self, P: LatticePolytope) -> bool:
        if P not in self._irreducible:
            self._irreducible[P] = P.is_point or self.smallest_split(P) is None
        return self._irreducible[P]


def summand_candidates(P: LatticePolytope, step: Optional[Callable[[], None]] = None) -> Tuple[LatticePolytope, ...]:
    """
    Normalized non-point hulls of lattice-point subsets of normalized P with
    at most as many points as P has vertices, smallest key first. Every
    normalized non-point summand of P appears in this list. `step` is called
    before each hull is built and may raise to stop the search.
    """
    points = P.lattice_points
    found = set()
    for size in range(2, len(P.vertices) + 1):
        for subset in combinations(points, size):
            if step is not None:
                step()
            S = normalize(hull(subset))
            if not S.is_point:
                found.add(S)
    return tuple(sorted(found, key=lambda S: S.key))


def factor_irreducible(P: LatticePolytope, budget: Optional[int] = None) -> List[LatticePolytope]:
    """
    One factorization of P into irreducible polytopes. Non-point factors are
    normalized and listed by key; the translation is a trailing point factor
    when it is not the origin.
    """
    if P.is_zero:
        raise ZeroElement("0_A has no factorization")
    search = SummandSearch(budget)
    shift = minimum_corner(P)
    current = normalize(P)
    factors: List[LatticePolytope] = []
    try:
        while not current.is_point:
            split = search.smallest_split(current)
            if split is None:
                factors.append(current)
                break
            S, R = split
            factors.append(S)
            current = normalize(R)
    except BudgetExceeded as e:
        logger.warning(f"Factorization of {P} stopped after {search.tests} summand tests")
        raise BudgetExceeded("Irreducible factorization", e.budget,
                             partial=factors + [current]) from e
    factors.sort(key=lambda S: S.key)
    if any(shift) or not factors:
        factors.append(point(*shift))
    logger.info(f"Factored {P} into {len(factors)} factors with {search.tests} summand tests")
    return factors


def all_factorizations(P: LatticePolytope, budget: Optional[int] = None) -> List[List[LatticePolytope]]:
    """Every factorization into irreducibles up to reordering"""
    if P.is_zero:
        raise ZeroElement("0_A has no factorization")
    search = SummandSearch(budget)
    shift = minimum_corner(P)
    found: List[List[LatticePolytope]] = []

    def enumerate_from(Q: LatticePolytope, floor: tuple) -> List[List[LatticePolytope]]:
        if Q.is_point:
            return [[]]
        results = []
        for S in search.candidates(Q):
            if S.key < floor:
                continue
            if S == Q:
                if search.is_irreducible(Q):
                    results.append([Q])
                continue
            R = search.test(S, Q)
            if R is None or R.is_point or not search.is_irreducible(S):
                continue
            for rest in enumerate_from(normalize(R), S.key):
                results.append([S] + rest)
        return results

    try:
        found = enumerate_from(normalize(P), LatticePolytope.zero(P.dim).key)
    except BudgetExceeded as e:
        raise BudgetExceeded("Factorization enumeration", e.budget, partial=found) from e
    tail = [point(*shift)] if any(shift) else []
    if not found or found == [[]]:
        return [[point(*shift)]]
    return [factors + tail for factors in found]


def shares_nontrivial_summand(P: LatticePolytope, Q: LatticePolytope,
                              budget: Optional[int] = None) -> Optional[Tuple[LatticePolytope, LatticePolytope]]:
    """
    A common non-point summand S of P and Q, returned with the cofactor A
    of P (P = S (.) A), or None.
    """
    _check_same_dim(P, Q)
    if P.is_zero or Q.is_zero:
        raise ZeroElement("summand test needs nonzero polytopes")
    search = SummandSearch(budget)
    for S in search.candidates(normalize(P)):
        A = search.test(S, P)
        if A is None:
            continue
        if search.test(S, Q) is not None:
            return S, A
    return None
