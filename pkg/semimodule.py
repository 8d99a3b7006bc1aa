"""
Finitely generated sub-semimodules of A[n]: semiring equations and their
canonical solutions, graded pieces and ranks, Newton-Hilbert series,
coordinate regular sequences and Cohen-Macaulay analysis.

Graded pieces are never materialized in full. M_k is represented by its
join generators (translates g (.) point(t) of module generators) and every
element of M_k is a join of those lying below it.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import comb
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import sympy

from config import *
from errors import BudgetExceeded, Inconclusive, MixedDegree, MixedDimension, NotGraded, ZeroElement
from geometry import solve_unique
from polytope_core import (
    LatticePolytope,
    contains,
    convex_position_subsets,
    degree,
    erosion,
    hull,
    is_summand,
    lattice_points_of_degree,
    odot,
    oplus_all,
    translate,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubSemimodule:
    """Sub-semimodule of A[n] generated by finitely many nonzero polytopes"""
    ambient_dim: int
    generators: Tuple[LatticePolytope, ...]

    @classmethod
    def generated_by(cls, generators: Sequence[LatticePolytope], dim: Optional[int] = None) -> "SubSemimodule":
        unique: List[LatticePolytope] = []
        for g in generators:
            if g.is_zero:
                raise ZeroElement("0_A cannot be a generator")
            if g not in unique:
                unique.append(g)
        dims = {g.dim for g in unique} | ({dim} if dim is not None else set())
        if len(dims) > 1:
            raise MixedDimension(sorted(dims))
        if not dims:
            raise ValueError("An empty generator list needs an explicit dimension")
        return cls(dims.pop(), tuple(unique))

    @property
    def graded(self) -> bool:
        return all(degree(g) is not None for g in self.generators)

    def to_dict(self) -> Dict[str, Any]:
        return {'dim': self.ambient_dim, 'generators': [g.to_dict() for g in self.generators]}


@dataclass(frozen=True)
class SolutionTuple:
    """Entries Y_i of a solution of W = (+)_i P_i (.) Y_i; 0_A marks an absent term"""
    entries: Tuple[LatticePolytope, ...]

    def combine(self, P: Sequence[LatticePolytope]) -> LatticePolytope:
        return oplus_all([odot(p, y) for p, y in zip(P, self.entries)], P[0].dim)

    def to_dict(self) -> Dict[str, Any]:
        return {'entries': [y.to_dict() for y in self.entries]}


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    generators_under_oplus: Tuple[LatticePolytope, ...]
    minimal: Tuple[LatticePolytope, ...]

    @property
    def rank(self) -> int:
        return len(self.minimal)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degree': self.degree,
            'rank': self.rank,
            'minimal_generators': [str(g) for g in self.minimal],
            'generator_count': len(self.generators_under_oplus),
        }


@dataclass(frozen=True)
class NewtonHilbertSeries:
    coefficients: Tuple[int, ...]
    rational_form: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None

    @property
    def bound(self) -> int:
        return len(self.coefficients) - 1

    def pretty(self) -> Optional[str]:
        if self.rational_form is None:
            return None
        return format_rational_form(*self.rational_form)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'coefficients': list(self.coefficients), 'bound': {'max_degree': self.bound}}
        if self.rational_form is not None:
            data['rational_form'] = {
                'numerator': list(self.rational_form[0]),
                'denominator': list(self.rational_form[1]),
                'text': self.pretty(),
            }
        else:
            data['rational_form'] = None
        return data


def _check_inputs(W: LatticePolytope, P: Sequence[LatticePolytope]) -> None:
    dims = [W.dim] + [p.dim for p in P]
    if len(set(dims)) > 1:
        raise MixedDimension(dims)
    if W.is_zero:
        raise ZeroElement("equation target must be nonzero")
    if any(p.is_zero for p in P):
        raise ZeroElement("equation coefficients must be nonzero")


def canonical_solution(W: LatticePolytope, P: Sequence[LatticePolytope]) -> Optional[SolutionTuple]:
    """
    The join of all solutions of W = (+)_i P_i (.) Y_i, or None when there
    is none. Entry i is the hull of the erosion of W by P_i, which contains
    the i-th entry of every solution.
    """
    _check_inputs(W, P)
    entries = []
    for p in P:
        T = erosion(p, W)
        entries.append(hull(T) if T else LatticePolytope.zero(W.dim))
    candidate = SolutionTuple(tuple(entries))
    if candidate.combine(P) == W:
        return candidate
    return None


def enumerate_solutions(W: LatticePolytope, P: Sequence[LatticePolytope],
                        budget: Optional[int] = None) -> List[SolutionTuple]:
    """All solutions; entries range over 0_A and hulls of subsets of the erosion sets"""
    _check_inputs(W, P)
    budget = budget if budget is not None else BUDGET_CONFIG['solution_checks']
    options: List[List[LatticePolytope]] = []
    for p in P:
        T = erosion(p, W)
        hulls = {hull(subset) for subset in convex_position_subsets(T)}
        options.append([LatticePolytope.zero(W.dim)] + sorted(hulls, key=lambda Y: Y.key))
    solutions: List[SolutionTuple] = []
    checks = 0
    for entries in product(*options):
        checks += 1
        if checks > budget:
            logger.warning(f"Solution enumeration stopped after {budget} checks")
            raise BudgetExceeded("Solution enumeration", budget, partial=solutions)
        candidate = SolutionTuple(tuple(entries))
        if candidate.combine(P) == W:
            solutions.append(candidate)
    logger.info(f"Found {len(solutions)} solutions after {checks} checks")
    return solutions


def canonical_solution_wrt(W: LatticePolytope, P: Sequence[LatticePolytope],
                           V: LatticePolytope) -> Optional[SolutionTuple]:
    """
    Join of the solutions whose nonzero entries all have V as a Minkowski
    summand. Such solutions are V (.) Z for solutions Z of U = W - V, so this
    is V applied entrywise to the canonical solution for U.
    """
    _check_inputs(W, P)
    if V.is_zero:
        raise ZeroElement("V must be nonzero")
    U = is_summand(V, W)
    if U is None:
        return None
    base = canonical_solution(U, P)
    if base is None:
        return None
    return SolutionTuple(tuple(odot(V, y) for y in base.entries))


def membership(Q: LatticePolytope, M: SubSemimodule) -> bool:
    """Q in M iff the equation Q = (+) g_i (.) Y_i has a solution"""
    if Q.dim != M.ambient_dim:
        raise MixedDimension([Q.dim, M.ambient_dim])
    if Q.is_zero:
        return True
    if not M.generators:
        return False
    return canonical_solution(Q, M.generators) is not None


def minimal_generators(S: Sequence[LatticePolytope]) -> List[LatticePolytope]:
    """The unique join-irreducible generating subset of a same-degree family"""
    items: List[LatticePolytope] = []
    for g in S:
        if g not in items:
            items.append(g)
    if not items:
        return []
    degrees = {degree(g) for g in items}
    if None in degrees or len(degrees) > 1:
        raise MixedDegree(f"Polytopes do not share a degree: {sorted(degrees, key=str)}")
    kept = []
    for g in items:
        below = [h for h in items if h != g and contains(g, h)]
        if not below or oplus_all(below, g.dim) != g:
            kept.append(g)
    return sorted(kept, key=lambda g: g.key)


def free_point_count(m: int, k: int) -> int:
    """Number of degree-k points in m free coordinates"""
    if m == 0:
        return 1 if k == 0 else 0
    return comb(m + k - 1, k)


class PieceTable:
    """
    Memoized join generators of (M^(J))_k, the restriction of M to the
    coordinate hyperplanes x_c = 0 for c in J (0-based). The restriction is
    generated by the faces of M's translates lying in those hyperplanes.
    """

    def __init__(self, M: SubSemimodule):
        if not M.graded:
            raise NotGraded("Every generator needs a degree")
        self.M = M
        self.n = M.ambient_dim
        self._degrees = [degree(g) for g in M.generators]
        self._gens: Dict[Tuple[FrozenSet[int], int], Tuple[LatticePolytope, ...]] = {}
        self._minimal: Dict[Tuple[FrozenSet[int], int], Tuple[LatticePolytope, ...]] = {}

    def generators(self, k: int, zeroed: FrozenSet[int] = frozenset()) -> Tuple[LatticePolytope, ...]:
        key = (zeroed, k)
        if key not in self._gens:
            if zeroed:
                found = set()
                for g in self.generators(k):
                    face = [v for v in g.vertices if all(v[c] == 0 for c in zeroed)]
                    if face:
                        found.add(hull(face))
            else:
                found = set()
                for g, d in zip(self.M.generators, self._degrees):
                    if d > k:
                        continue
                    for t in lattice_points_of_degree(self.n, k - d):
                        found.add(translate(g, t))
            self._gens[key] = tuple(sorted(found, key=lambda g: g.key))
        return self._gens[key]

    def minimal(self, k: int, zeroed: FrozenSet[int] = frozenset()) -> Tuple[LatticePolytope, ...]:
        key = (zeroed, k)
        if key not in self._minimal:
            self._minimal[key] = tuple(minimal_generators(self.generators(k, zeroed)))
        return self._minimal[key]

    def rank(self, k: int, zeroed: FrozenSet[int] = frozenset()) -> int:
        return len(self.minimal(k, zeroed))

    def contains(self, k: int, X: LatticePolytope, zeroed: FrozenSet[int] = frozenset()) -> bool:
        """X in (M^(J))_k iff X is the join of the generators below it"""
        below = [h for h in self.generators(k, zeroed) if contains(X, h)]
        return bool(below) and oplus_all(below, self.n) == X

    def is_full(self, k: int, zeroed: FrozenSet[int] = frozenset()) -> bool:
        """(M^(J))_k equals the full degree-k piece of A[n] on the free coordinates"""
        present = {g.vertices[0] for g in self.generators(k, zeroed) if g.is_point}
        for p in lattice_points_of_degree(self.n, k):
            if any(p[c] != 0 for c in zeroed):
                continue
            if p not in present:
                return False
        return True

    def piece(self, k: int, zeroed: FrozenSet[int] = frozenset()) -> GradedPiece:
        return GradedPiece(k, self.generators(k, zeroed), self.minimal(k, zeroed))


def graded_piece(M: SubSemimodule, k: int) -> GradedPiece:
    if k < 0:
        raise ValueError("Degree must be non-negative")
    return PieceTable(M).piece(k)


def series_expand(numerator: Sequence[int], denominator: Sequence[int], D: int) -> List[int]:
    """First D+1 power-series coefficients of numerator/denominator (denominator[0] = 1)"""
    out: List[int] = []
    for k in range(D + 1):
        value = numerator[k] if k < len(numerator) else 0
        for j in range(1, min(k, len(denominator) - 1) + 1):
            value -= denominator[j] * out[k - j]
        out.append(value)
    return out


def fit_rational_form(coefficients: Sequence[int]) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Smallest N(t)/Q(t) with Q(0) = 1 reproducing the coefficients. Degrees
    are searched by a + b, then a; at least one coefficient beyond the
    unknowns must confirm the fit.
    """
    h = [int(c) for c in coefficients]
    D = len(h) - 1
    spare = SERIES_CONFIG['min_check_equations']
    for total in range(0, D + 1):
        for a in range(0, total + 1):
            b = total - a
            if a > D - 1 or D - a < b + spare:
                continue
            if b == 0:
                q: List[int] = []
                if any(h[k] != 0 for k in range(a + 1, D + 1)):
                    continue
            else:
                rows = [[Fraction(h[k - j]) if k - j >= 0 else Fraction(0) for j in range(1, b + 1)]
                        for k in range(a + 1, D + 1)]
                rhs = [Fraction(-h[k]) for k in range(a + 1, D + 1)]
                solution = solve_unique(rows, rhs)
                if solution is None:
                    continue
                if SERIES_CONFIG['require_integer_denominator'] and any(x.denominator != 1 for x in solution):
                    continue
                q = [int(x) for x in solution]
            den = [1] + q
            num = [sum(den[j] * h[k - j] for j in range(0, min(b, k) + 1)) for k in range(a + 1)]
            if series_expand(num, den, D) != h:
                continue
            while len(den) > 1 and den[-1] == 0:
                den.pop()
            return tuple(num), tuple(den)
    return None


def _one_minus_t_power(m: int) -> List[int]:
    return [(-1) ** j * comb(m, j) for j in range(m + 1)]


def format_rational_form(numerator: Sequence[int], denominator: Sequence[int]) -> str:
    t = sympy.Symbol('t')
    num = sympy.expand(sum(c * t ** i for i, c in enumerate(numerator)))
    num_text = sympy.sstr(num).replace('**', '^')
    m = len(denominator) - 1
    if list(denominator) == _one_minus_t_power(m):
        if m == 0:
            return num_text
        den_text = "(1-t)" if m == 1 else f"(1-t)^{m}"
    else:
        den = sympy.expand(sum(c * t ** i for i, c in enumerate(denominator)))
        den_text = "(" + sympy.sstr(den).replace('**', '^') + ")"
    if len(num.as_ordered_terms()) > 1:
        num_text = f"({num_text})"
    return f"{num_text}/{den_text}"


def newton_hilbert_series(M: SubSemimodule, D: int) -> NewtonHilbertSeries:
    table = PieceTable(M)
    coefficients = tuple(table.rank(k) for k in range(D + 1))
    return NewtonHilbertSeries(coefficients, fit_rational_form(coefficients))


@dataclass
class RegularityVerdict:
    """Bounded verdict on e_i being regular; failed_degree is None when regular up to the bound"""
    index: int
    bound: int
    failed_degree: Optional[int] = None
    condition: Optional[str] = None
    witness: Optional[LatticePolytope] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def regular(self) -> bool:
        return self.failed_degree is None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'verdict': 'RegularUpTo' if self.regular else 'CounterexampleAt',
            'index': self.index,
            'bound': {'max_degree': self.bound},
        }
        if not self.regular:
            data.update({
                'degree': self.failed_degree,
                'condition': self.condition,
                'witness': str(self.witness) if self.witness is not None else None,
                'details': self.details,
            })
        return data


def _check_step(table: PieceTable, zeroed: FrozenSet[int], c: int, K: int,
                check_rank: bool = True) -> Optional[Tuple[int, str, Optional[LatticePolytope], Dict[str, Any]]]:
    """Both regularity conditions for e_(c+1) on M^(J), degrees 0..K"""
    n = table.n
    unit = tuple(1 if j == c else 0 for j in range(n))
    for k in range(K + 1):
        for g in table.minimal(k + 1, zeroed):
            if all(v[c] >= 1 for v in g.vertices):
                lowered = translate(g, tuple(-u for u in unit))
                if not table.contains(k, lowered, zeroed):
                    return k, 'summand', g, {'lowered': str(lowered)}
        if check_rank:
            perp = sum(1 for g in table.minimal(k, zeroed) if any(v[c] == 0 for v in g.vertices))
            restricted = table.rank(k, zeroed | {c})
            if perp != restricted:
                return k, 'rank', None, {'rank_perp': perp, 'rank_restricted': restricted}
    return None


def coordinate_regular(M: SubSemimodule, i: int, K: int, check_rank: bool = True) -> RegularityVerdict:
    """
    Is e_i (1-based) regular on M up to degree K: every element of M_(k+1)
    with e_i as a summand lies in e_i (.) M_k, and, unless check_rank is
    off, the generators of M_k without that summand are as many as the
    generators of the restriction to x_i = 0.
    """
    table = PieceTable(M)
    if not 1 <= i <= table.n:
        raise ValueError(f"Coordinate index {i} outside 1..{table.n}")
    failure = _check_step(table, frozenset(), i - 1, K, check_rank)
    if failure is None:
        logger.info(f"e_{i} regular up to degree {K}")
        return RegularityVerdict(i, K)
    k, condition, witness, details = failure
    logger.info(f"e_{i} fails the {condition} condition at degree {k}")
    return RegularityVerdict(i, K, k, condition, witness, details)


@dataclass
class CMReport:
    bound: int
    coefficients: Tuple[int, ...]
    artinian_k0: Optional[int] = None
    depth: Optional[int] = None
    sequence: Optional[Tuple[int, ...]] = None
    restriction_k0: Optional[int] = None
    regular_sequence: Optional[Tuple[int, ...]] = None
    series: Optional[NewtonHilbertSeries] = None
    recurrence_checks: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bound': {'max_degree': self.bound},
            'coefficients': list(self.coefficients),
            'artinian_k0': self.artinian_k0,
            'depth': self.depth,
            'sequence': list(self.sequence) if self.sequence is not None else None,
            'restriction_k0': self.restriction_k0,
            'regular_sequence': list(self.regular_sequence) if self.regular_sequence is not None else None,
            'series': self.series.to_dict() if self.series is not None else None,
            'recurrence_checks': self.recurrence_checks,
        }


def _artinian_threshold(table: PieceTable, zeroed: FrozenSet[int], K: int) -> Optional[int]:
    """Smallest k0 <= K with the restricted piece full for every k0 <= k <= K"""
    k0 = None
    for k in range(K, -1, -1):
        if table.is_full(k, zeroed):
            k0 = k
        else:
            break
    return k0


def cm_analysis(M: SubSemimodule, K: int) -> CMReport:
    """
    Search coordinate regular sequences (lexicographic order, prefixes
    pruned) whose restriction is Artinian up to degree K. depth is the
    length of the shortest such sequence; the series is assembled from the
    Artinian restriction and checked against the direct coefficients.
    A failed rank recurrence along the sequence makes the result
    Inconclusive.
    """
    table = PieceTable(M)
    n = table.n
    coefficients = tuple(table.rank(k) for k in range(K + 1))
    report = CMReport(bound=K, coefficients=coefficients)
    report.artinian_k0 = _artinian_threshold(table, frozenset(), K)

    valid_prefix: Dict[Tuple[int, ...], bool] = {(): True}

    def prefix_ok(sequence: Tuple[int, ...]) -> bool:
        if sequence not in valid_prefix:
            if not prefix_ok(sequence[:-1]):
                valid_prefix[sequence] = False
            else:
                zeroed = frozenset(sequence[:-1])
                valid_prefix[sequence] = _check_step(table, zeroed, sequence[-1], K) is None
        return valid_prefix[sequence]

    certified: List[Tuple[Tuple[int, ...], int]] = []
    for r in range(n + 1):
        for sequence in permutations(range(n), r):
            if not prefix_ok(sequence):
                continue
            k0 = _artinian_threshold(table, frozenset(sequence), K)
            if k0 is not None:
                certified.append((sequence, k0))
                break
    if not certified:
        logger.info(f"No certified coordinate sequence up to degree {K}")
        raise Inconclusive(K, report.to_dict())

    sequence, k0 = certified[0]
    longest, _ = certified[-1]
    report.depth = len(sequence)
    report.sequence = tuple(c + 1 for c in sequence)
    report.restriction_k0 = k0
    report.regular_sequence = tuple(c + 1 for c in longest)

    for j in range(len(sequence)):
        upper, lower = frozenset(sequence[:j]), frozenset(sequence[:j + 1])
        for k in range(K + 1):
            lhs = table.rank(k, upper)
            rhs = (table.rank(k - 1, upper) if k > 0 else 0) + table.rank(k, lower)
            report.recurrence_checks.append({'level': j, 'degree': k, 'holds': lhs == rhs})
    failed = [row for row in report.recurrence_checks if not row['holds']]
    if failed:
        logger.warning(f"Rank recurrence fails at level {failed[0]['level']}, degree {failed[0]['degree']}")
        raise Inconclusive(K, report.to_dict())

    m = n - len(sequence)
    correction = [table.rank(k, frozenset(sequence)) - free_point_count(m, k) for k in range(k0)]
    numerator = [1] + [0] * max(len(correction) + m, 0)
    one_minus = _one_minus_t_power(m)
    for i, c in enumerate(correction):
        for j, w in enumerate(one_minus):
            numerator[i + j] += c * w
    while len(numerator) > 1 and numerator[-1] == 0:
        numerator.pop()
    denominator = _one_minus_t_power(n)
    if series_expand(numerator, denominator, K) != list(coefficients):
        logger.warning("Assembled series disagrees with direct coefficients")
        raise Inconclusive(K, report.to_dict())
    report.series = NewtonHilbertSeries(coefficients, (tuple(numerator), tuple(denominator)))
    logger.info(f"Depth {report.depth} with sequence {report.sequence}, series {report.series.pretty()}")
    return report


def cm_fixture(d: int) -> SubSemimodule:
    """
    Generators P_q = hull({q} u S_par) in A[3], one for each degree-d point q
    with first coordinate 0, where S_par is the set of degree-d points with
    first coordinate at least 1.
    """
    if d < 1:
        raise ValueError("d must be positive")
    points = lattice_points_of_degree(3, d)
    parallel = [p for p in points if p[0] >= 1]
    perpendicular = sorted((p for p in points if p[0] == 0), reverse=True)
    return SubSemimodule.generated_by([hull([q] + parallel) for q in perpendicular], 3)
