"""
Exact linear algebra over Z and Q backed by python-flint
"""
import logging
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import List, Optional, Sequence, Tuple

from flint import fmpq, fmpq_mat, fmpz_mat

logger = logging.getLogger(__name__)

IntRow = Sequence[int]
RatRow = Sequence[Fraction]


def integer_rank(rows: Sequence[IntRow]) -> int:
    """Rank of an integer matrix given as a list of rows"""
    if not rows or not rows[0]:
        return 0
    return int(fmpz_mat([list(map(int, r)) for r in rows]).rank())


def integer_det(rows: Sequence[IntRow]) -> int:
    if not rows:
        return 1
    return int(fmpz_mat([list(map(int, r)) for r in rows]).det())


def reduce_by_gcd(vector: Sequence[int]) -> Tuple[int, ...]:
    """Divide by the gcd of the entries, keeping signs"""
    g = reduce(gcd, (abs(int(v)) for v in vector), 0)
    if g <= 1:
        return tuple(int(v) for v in vector)
    return tuple(int(v) // g for v in vector)


def primitive(vector: Sequence[int]) -> Tuple[int, ...]:
    """Divide by the gcd and make the first nonzero entry positive"""
    g = reduce(gcd, (abs(int(v)) for v in vector), 0)
    if g == 0:
        return tuple(int(v) for v in vector)
    vec = [int(v) // g for v in vector]
    for v in vec:
        if v != 0:
            if v < 0:
                vec = [-x for x in vec]
            break
    return tuple(vec)


def integer_nullspace(rows: Sequence[IntRow], ncols: int) -> List[Tuple[int, ...]]:
    """Primitive integer vectors spanning {x : rows . x = 0}"""
    if ncols == 0:
        return []
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    X, nullity = fmpz_mat([list(map(int, r)) for r in rows]).nullspace()
    basis = []
    for j in range(int(nullity)):
        basis.append(primitive([int(X[i, j]) for i in range(ncols)]))
    return basis


def clear_denominators(row: RatRow) -> List[int]:
    """Scale a rational row to a primitive integer row"""
    lcm = 1
    for value in row:
        q = Fraction(value).denominator
        lcm = lcm * q // gcd(lcm, q)
    return list(primitive([int(Fraction(v) * lcm) for v in row]))


def _to_fmpq_mat(rows: Sequence[RatRow]) -> fmpq_mat:
    m, n = len(rows), len(rows[0])
    entries = []
    for r in rows:
        for v in r:
            f = Fraction(v)
            entries.append(fmpq(f.numerator, f.denominator))
    return fmpq_mat(m, n, entries)


def _from_fmpq(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def rational_rref(rows: Sequence[RatRow]) -> Tuple[List[List[Fraction]], int]:
    """Reduced row echelon form; returns the nonzero rows and the rank"""
    if not rows or not rows[0]:
        return [], 0
    R, rank = _to_fmpq_mat(rows).rref()
    rank = int(rank)
    n = len(rows[0])
    reduced = [[_from_fmpq(R[i, j]) for j in range(n)] for i in range(rank)]
    return reduced, rank


def rational_rank(rows: Sequence[RatRow]) -> int:
    return rational_rref(rows)[1]


def solve_unique(A: Sequence[RatRow], b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Solve A x = b over Q; None unless the solution exists and is unique"""
    if not A:
        return None
    ncols = len(A[0])
    augmented = [list(row) + [Fraction(rhs)] for row, rhs in zip(A, b)]
    reduced, rank = rational_rref(augmented)
    pivots = []
    for row in reduced:
        pivot = next(j for j, v in enumerate(row) if v != 0)
        if pivot == ncols:
            return None
        pivots.append(pivot)
    if rank != ncols:
        return None
    solution = [Fraction(0)] * ncols
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row[ncols]
    return solution


class AffineFrame:
    """
    Affine hull of a finite set of integer points.

    Holds a basis of difference vectors, a coordinate chart (a set of
    coordinates on which projection is injective on the hull), the affine
    equations cutting the hull out of R^n and the gcd of the maximal minors
    of the basis (used to measure volume in the direction lattice).
    """

    def __init__(self, points: Sequence[IntRow]):
        if not points:
            raise ValueError("AffineFrame needs at least one point")
        self.ambient = len(points[0])
        self.origin = tuple(int(c) for c in points[0])
        self.basis: List[Tuple[int, ...]] = []
        for p in points[1:]:
            diff = tuple(int(a) - int(b) for a, b in zip(p, self.origin))
            if not any(diff):
                continue
            if integer_rank(self.basis + [diff]) > len(self.basis):
                self.basis.append(diff)
                if len(self.basis) == self.ambient:
                    break
        self.dim = len(self.basis)
        self.chart: Tuple[int, ...] = ()
        self.chart_minor = 1
        self.pluecker_gcd = 1
        if self.dim > 0:
            g = 0
            for cols in combinations(range(self.ambient), self.dim):
                minor = integer_det([[row[c] for c in cols] for row in self.basis])
                if minor != 0 and not self.chart:
                    self.chart = cols
                    self.chart_minor = abs(minor)
                g = gcd(g, abs(minor))
            self.pluecker_gcd = g
        self.equations = [
            (normal, sum(a * b for a, b in zip(normal, self.origin)))
            for normal in integer_nullspace(self.basis, self.ambient)
        ]

    def project(self, point: IntRow) -> Tuple[int, ...]:
        return tuple(int(point[c]) for c in self.chart)

    def contains(self, point: IntRow) -> bool:
        return all(sum(a * int(x) for a, x in zip(normal, point)) == rhs
                   for normal, rhs in self.equations)

    def lattice_index(self) -> Fraction:
        """Index of the projected direction lattice inside Z^dim"""
        return Fraction(self.chart_minor, self.pluecker_gcd)
