"""
The Newton map on graded ideals: degree pieces by exact row reduction,
circuit (minimal support) enumeration, Newton-Hilbert versus Hilbert
comparison, Newton bases and the generic semimodule D(P_1,...,P_r).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from config import *
from errors import BudgetExceeded, NotGraded, Unstable
from geometry import clear_denominators, integer_nullspace, integer_rank, rational_rank, rational_rref
from polynomial import Exponent, GradedIdeal, Polynomial
from polytope_core import (
    LatticePolytope,
    contains,
    degree,
    hull,
    iter_box_polytopes,
    lattice_points_of_degree,
    odot,
    oplus_all,
)
from semimodule import GradedPiece, PieceTable, SubSemimodule, minimal_generators

logger = logging.getLogger(__name__)


def newton_polytope(f: Polynomial) -> LatticePolytope:
    """Hull of the exponent vectors; the zero polynomial maps to 0_A"""
    if f.is_zero:
        return LatticePolytope.zero(f.dim)
    return hull(f.support)


@dataclass(frozen=True)
class SupportSet:
    """Minimal support of a nonzero element of I_k, with one element realizing it"""
    monomials: Tuple[Exponent, ...]
    polynomial: Polynomial

    @property
    def polytope(self) -> LatticePolytope:
        return hull(self.monomials)

    def to_dict(self) -> Dict[str, Any]:
        return {'monomials': [list(m) for m in self.monomials], 'polynomial': str(self.polynomial)}


@dataclass
class DegreeBasis:
    degree: int
    monomials: Tuple[Exponent, ...]
    basis: List[Polynomial]

    @property
    def h(self) -> int:
        return len(self.basis)


def ideal_degree_basis(I: GradedIdeal, k: int) -> DegreeBasis:
    """Row-reduced basis of I_k spanned by m * g over generators g and monomials m"""
    monomials = tuple(lattice_points_of_degree(I.dim, k))
    rows = []
    for g in I.generators:
        d = g.degree
        if d is None or d > k:
            continue
        for m in lattice_points_of_degree(I.dim, k - d):
            rows.append(g.shift(m).row(monomials))
    reduced, _ = rational_rref(rows)
    return DegreeBasis(k, monomials, [Polynomial.from_row(monomials, row) for row in reduced])


def _check_monomial_cap(n: int, k: int) -> None:
    count = comb(n + k - 1, k)
    if count > CIRCUIT_CONFIG['max_monomials']:
        raise BudgetExceeded(f"Degree {k} in {n} variables has {count} monomials", CIRCUIT_CONFIG['max_monomials'])


def circuits(I: GradedIdeal, k: int, budget: Optional[int] = None) -> List[SupportSet]:
    """
    Inclusion-minimal supports of nonzero elements of I_k. They are the
    complements of the hyperplanes of the column matroid of a basis matrix;
    hyperplanes are closures of rank r-1 column sets, each found once.
    When I_k is spanned by monomials its reduced basis is those monomials,
    and they are the circuits.
    """
    basis = ideal_degree_basis(I, k)
    monomials = basis.monomials
    if basis.h == 0:
        return []
    if all(len(p.support) == 1 for p in basis.basis):
        singles = sorted((SupportSet(p.support, p) for p in basis.basis), key=lambda s: s.monomials)
        logger.info(f"I_{k} is spanned by {len(singles)} monomials")
        return singles
    _check_monomial_cap(I.dim, k)
    budget = budget if budget is not None else BUDGET_CONFIG['circuit_rank_tests']
    B = [clear_denominators(p.row(monomials)) for p in basis.basis]
    r = len(B)
    N = len(monomials)
    tests = 0
    found: List[SupportSet] = []

    def column_rank(cols: Sequence[int]) -> int:
        nonlocal tests
        tests += 1
        if tests > budget:
            raise BudgetExceeded("Circuit enumeration", budget, partial=list(found))
        return integer_rank([[row[c] for c in cols] for row in B])

    hyperplanes: List[frozenset] = []
    subsets = combinations(range(N), r - 1)
    show = PROGRESS_CONFIG['show_progress'] and comb(N, r - 1) >= PROGRESS_CONFIG['min_items']
    for T in tqdm(subsets, total=comb(N, r - 1), desc=f"Circuits k={k}", disable=not show):
        if any(set(T) <= H for H in hyperplanes):
            continue
        if column_rank(T) != r - 1:
            continue
        H = frozenset(T) | {j for j in range(N) if j not in T and column_rank(list(T) + [j]) == r - 1}
        hyperplanes.append(H)
        cols = sorted(H)
        transposed = [[B[i][c] for i in range(r)] for c in cols]
        x = integer_nullspace(transposed, r)[0]
        row = [sum(x[i] * B[i][j] for i in range(r)) for j in range(N)]
        poly = Polynomial.from_row(monomials, [Fraction(v) for v in row])
        found.append(SupportSet(poly.support, poly))
    found.sort(key=lambda s: (len(s.monomials), s.monomials))
    logger.info(f"Found {len(found)} circuits of I_{k} with {tests} rank tests")
    return found


def newton_graded_piece(I: GradedIdeal, k: int, budget: Optional[int] = None) -> GradedPiece:
    """New(I)_k is the join closure of the circuit hulls"""
    hulls = sorted({s.polytope for s in circuits(I, k, budget)}, key=lambda P: P.key)
    return GradedPiece(k, tuple(hulls), tuple(minimal_generators(hulls)))


def _realizer(supports: Sequence[SupportSet], P: LatticePolytope) -> Polynomial:
    """First circuit (by support) whose hull is P"""
    return next(s.polynomial for s in supports if s.polytope == P)


@dataclass
class NewtonBasisResult:
    degree: int
    mode: str
    polynomials: List[Polynomial]
    polytopes: List[LatticePolytope]
    shortcut: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degree': self.degree,
            'mode': self.mode,
            'polynomials': [str(p) for p in self.polynomials],
            'polytopes': [str(P) for P in self.polytopes],
            'artinian_shortcut': self.shortcut,
        }


def _oracle_bases(I: GradedIdeal, k: int, budget: Optional[int] = None) -> List[NewtonBasisResult]:
    """Oracle Newton basis elements in every degree 0..k"""
    results: List[NewtonBasisResult] = []
    lower: List[LatticePolytope] = []
    for d in range(k + 1):
        supports = circuits(I, d, budget)
        piece_minimal = minimal_generators({s.polytope for s in supports})
        table = PieceTable(SubSemimodule(I.dim, tuple(lower))) if lower else None
        new = [g for g in piece_minimal if table is None or not table.contains(d, g)]
        results.append(NewtonBasisResult(d, 'oracle', [_realizer(supports, g) for g in new], new))
        lower.extend(new)
    return results


def newton_semimodule(I: GradedIdeal, K: int, budget: Optional[int] = None) -> SubSemimodule:
    """Sub-semimodule agreeing with New(I) in every degree up to K"""
    generators = [P for result in _oracle_bases(I, K, budget) for P in result.polytopes]
    return SubSemimodule(I.dim, tuple(generators))


def _newton_basis_oracle(I: GradedIdeal, k: int, budget: Optional[int] = None) -> NewtonBasisResult:
    return _oracle_bases(I, k, budget)[k]


def _minimal_by_polytope(elements: Sequence[Polynomial]) -> List[Polynomial]:
    """Elements whose Newton polytope strictly contains no other's; equal polytopes keep the first support"""
    by_polytope: Dict[LatticePolytope, Polynomial] = {}
    for p in sorted(elements, key=lambda p: p.support):
        by_polytope.setdefault(newton_polytope(p), p)
    polytopes = list(by_polytope)
    kept = []
    for P in polytopes:
        if not any(Q != P and contains(P, Q) for Q in polytopes):
            kept.append(by_polytope[P])
    return sorted(kept, key=lambda p: newton_polytope(p).key)


def _newton_basis_paper(I: GradedIdeal, k: int, budget: Optional[int] = None) -> NewtonBasisResult:
    """
    Degreewise closure under pairwise elimination of shared monomials,
    seeded with the generators of degree d and the carried products from
    degree d-1. A support is never inserted twice. The degree-k output drops
    minimal elements whose polytope equals a carried product's.
    """
    budget = budget if budget is not None else BUDGET_CONFIG['basis_steps']
    degrees = [g.degree for g in I.generators]
    d0 = min(degrees)
    if k < d0:
        return NewtonBasisResult(k, 'paper', [], [])
    steps = 0
    carried: List[Polynomial] = []
    for d in range(d0, k + 1):
        all_monomials = set(lattice_points_of_degree(I.dim, d))
        pool: List[Polynomial] = []
        seen = set()
        for p in [g for g, gd in zip(I.generators, degrees) if gd == d] + carried:
            if p.support not in seen:
                seen.add(p.support)
                pool.append(p)
        shortcut = False
        i = 0
        while i < len(pool) and not shortcut:
            for j in range(i):
                p, q = pool[i], pool[j]
                for m in sorted(set(p.terms) & set(q.terms)):
                    steps += 1
                    if steps > budget:
                        raise BudgetExceeded("Newton basis closure", budget, partial=list(pool))
                    combined = p.scale(q.coefficient(m)) - q.scale(p.coefficient(m))
                    if combined.is_zero or combined.support in seen:
                        continue
                    seen.add(combined.support)
                    pool.append(combined)
                monomial_supports = {s[0] for s in seen if len(s) == 1}
                if all_monomials <= monomial_supports:
                    shortcut = True
                    break
            i += 1
        if not shortcut:
            monomial_supports = {s[0] for s in seen if len(s) == 1}
            shortcut = all_monomials <= monomial_supports
        if shortcut:
            logger.info(f"All monomials of degree {d} reached; basis is finite")
            if d == k:
                monomials = [Polynomial.monomial(m) for m in sorted(all_monomials)]
                return NewtonBasisResult(k, 'paper', monomials, [newton_polytope(p) for p in monomials], True)
            return NewtonBasisResult(k, 'paper', [], [], True)
        minimal = _minimal_by_polytope(pool)
        if d == k:
            carried_polytopes = {newton_polytope(p) for p in carried}
            output = [p for p in minimal if newton_polytope(p) not in carried_polytopes]
            return NewtonBasisResult(k, 'paper', output, [newton_polytope(p) for p in output])
        next_carried: List[Polynomial] = []
        next_seen = set()
        for p in minimal:
            for v in range(I.dim):
                product = p.shift(tuple(1 if c == v else 0 for c in range(I.dim)))
                if product.support not in next_seen:
                    next_seen.add(product.support)
                    next_carried.append(product)
        carried = next_carried
    return NewtonBasisResult(k, 'paper', [], [])


def newton_basis(I: GradedIdeal, k: int, mode: str = 'oracle', budget: Optional[int] = None) -> NewtonBasisResult:
    if mode == 'oracle':
        return _newton_basis_oracle(I, k, budget)
    if mode == 'paper':
        return _newton_basis_paper(I, k, budget)
    raise ValueError(f"Unknown Newton basis mode: {mode}")


def newton_basis_compare(I: GradedIdeal, k: int, budget: Optional[int] = None) -> Dict[str, Any]:
    """Run both modes and report the symmetric difference of polytope sets"""
    paper = newton_basis(I, k, 'paper', budget)
    oracle = newton_basis(I, k, 'oracle', budget)
    paper_set, oracle_set = set(paper.polytopes), set(oracle.polytopes)
    if paper_set != oracle_set:
        logger.warning(f"Newton basis modes disagree at degree {k}")
    return {
        'degree': k,
        'agree': paper_set == oracle_set,
        'only_paper': sorted(str(P) for P in paper_set - oracle_set),
        'only_oracle': sorted(str(P) for P in oracle_set - paper_set),
        'paper': paper.to_dict(),
        'oracle': oracle.to_dict(),
    }


@dataclass
class SemicontinuityReport:
    bound: int
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(row['newton'] >= row['hilbert'] for row in self.rows)

    @property
    def lifts_span(self) -> bool:
        return all(row['lifts_span'] for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {'bound': {'max_degree': self.bound}, 'holds': self.holds,
                'lifts_span': self.lifts_span, 'degrees': self.rows}


def semicontinuity_check(I: GradedIdeal, K: int, budget: Optional[int] = None) -> SemicontinuityReport:
    """
    h^New_k >= h_k for k <= K, and the realizing polynomials of the Newton
    generators found so far, times monomials, span every I_k.
    """
    report = SemicontinuityReport(K)
    bases = _oracle_bases(I, K, budget)
    for k in range(K + 1):
        basis = ideal_degree_basis(I, k)
        piece = newton_graded_piece(I, k, budget)
        lifted = []
        for result in bases[:k + 1]:
            for f in result.polynomials:
                for m in lattice_points_of_degree(I.dim, k - result.degree):
                    lifted.append(f.shift(m).row(basis.monomials))
        span = rational_rank(lifted) if lifted else 0
        report.rows.append({
            'degree': k,
            'hilbert': basis.h,
            'newton': piece.rank,
            'lifts_span': span == basis.h,
        })
    logger.info(f"Semicontinuity up to degree {K}: holds={report.holds}")
    return report


def artinian_basis_check(I: GradedIdeal, K: int, budget: Optional[int] = None) -> Dict[str, Any]:
    """First degree d <= K with I_d spanning every monomial; the basis is then finite"""
    for d in range(K + 1):
        basis = ideal_degree_basis(I, d)
        if basis.h == len(basis.monomials) and basis.h > 0:
            sizes = [len(result.polynomials) for result in _oracle_bases(I, min(d + 1, K), budget)]
            return {
                'bound': {'max_degree': K},
                'artinian_degree': d,
                'finite_newton_basis': True,
                'oracle_sizes': sizes,
            }
    return {'bound': {'max_degree': K}, 'artinian_degree': None, 'finite_newton_basis': None}


def _generic_polynomial(P: LatticePolytope, rng: np.random.Generator) -> Polynomial:
    high = 2 ** GENERIC_CONFIG['coefficient_bits']
    values = rng.integers(1, high, size=len(P.lattice_points))
    return Polynomial(P.dim, {m: Fraction(int(v)) for m, v in zip(P.lattice_points, values)})


def generic_ideal(P: Sequence[LatticePolytope], rng: np.random.Generator) -> GradedIdeal:
    for p in P:
        if p.is_zero or degree(p) is None:
            raise NotGraded(f"{p} is not homogeneous")
    return GradedIdeal.generated_by([_generic_polynomial(p, rng) for p in P], P[0].dim)


def generic_semimodule_D(P: Sequence[LatticePolytope], k: int, trials: Optional[int] = None,
                         seed: Optional[int] = None, budget: Optional[int] = None) -> GradedPiece:
    """
    Degree-k piece of New(I) for I generated by polynomials with random
    coefficients on every lattice point of each P_i, confirmed across trials
    """
    trials = trials if trials is not None else GENERIC_CONFIG['default_trials']
    seed = seed if seed is not None else GENERIC_CONFIG['default_seed']
    rng = np.random.default_rng(seed)
    pieces = []
    for _ in range(trials):
        pieces.append(newton_graded_piece(generic_ideal(P, rng), k, budget))
    reference = set(pieces[0].minimal)
    for t, piece in enumerate(pieces[1:], start=1):
        if set(piece.minimal) != reference:
            raise Unstable({
                'degree': k,
                'trial': t,
                'first': sorted(str(g) for g in reference),
                'other': sorted(str(g) for g in piece.minimal),
            })
    return pieces[0]


class GenericMembership:
    """Degreewise membership in D(P_1..P_r), one generic ideal per instance"""

    def __init__(self, P: Sequence[LatticePolytope], seed: int, trials: int, budget: Optional[int] = None):
        self.P = list(P)
        self.seed = seed
        self.trials = trials
        self.budget = budget
        self._pieces: Dict[int, GradedPiece] = {}

    def piece(self, k: int) -> GradedPiece:
        if k not in self._pieces:
            self._pieces[k] = generic_semimodule_D(self.P, k, self.trials, self.seed, self.budget)
        return self._pieces[k]

    def contains(self, X: LatticePolytope) -> bool:
        k = degree(X)
        if k is None:
            return False
        below = [h for h in self.piece(k).generators_under_oplus if contains(X, h)]
        return bool(below) and oplus_all(below, X.dim) == X


@dataclass
class StrongRegularityVerdict:
    box: int
    index: Optional[int] = None
    witness: Optional[LatticePolytope] = None
    checked: int = 0

    @property
    def regular(self) -> bool:
        return self.index is None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'verdict': 'StronglyRegularUpToBox' if self.regular else 'NotStronglyRegular',
            'bound': {'box': self.box},
            'checked': self.checked,
        }
        if not self.regular:
            data.update({'index': self.index, 'witness': str(self.witness)})
        return data


def strongly_regular_check(P: Sequence[LatticePolytope], box: int, seed: Optional[int] = None,
                           trials: Optional[int] = None, budget: Optional[int] = None) -> StrongRegularityVerdict:
    """
    Search homogeneous Q in [0, box]^n with P_i (.) Q in D(P_1..P_(i-1)) but
    Q outside it
    """
    seed = seed if seed is not None else GENERIC_CONFIG['default_seed']
    trials = trials if trials is not None else GENERIC_CONFIG['default_trials']
    verdict = StrongRegularityVerdict(box)
    candidates = [Q for Q in iter_box_polytopes(P[0].dim, box) if degree(Q) is not None]
    for i in range(2, len(P) + 1):
        D = GenericMembership(P[:i - 1], seed, trials, budget)
        for Q in candidates:
            verdict.checked += 1
            if D.contains(odot(P[i - 1], Q)) and not D.contains(Q):
                verdict.index, verdict.witness = i, Q
                logger.info(f"Strong regularity fails at position {i} with {Q}")
                return verdict
    return verdict
