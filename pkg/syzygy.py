"""
Polytope syzygies: verification, Koszul syzygies, type and index set,
equivalence, Koszul representations, bounded enumeration and regular
sequence checks.

A tuple (Q_1..Q_r) is a syzygy of (P_1..P_r) when every vertex of
W = (+)_j P_j (.) Q_j lies in at least two of the nonzero products.
Indices in records and reports are 1-based.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from tqdm import tqdm

from config import *
from errors import (
    BudgetExceeded,
    IndexNotInIndexSet,
    IndexOutOfRange,
    LengthMismatch,
    MixedDimension,
    NotAPolynomialSyzygy,
    NotGraded,
    NotTypeOne,
    PolySemiError,
    ZeroElement,
)
from newton import newton_polytope
from polynomial import Polynomial
from polytope_core import (
    LatticePolytope,
    Point,
    contains,
    convex_position_subsets,
    erosion,
    hull,
    is_summand,
    iter_box_polytopes,
    lattice_points_in_box,
    odot,
    oplus,
    oplus_all,
    shares_nontrivial_summand,
)
from semimodule import SubSemimodule, canonical_solution, coordinate_regular

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SyzygyRecord:
    P: Tuple[LatticePolytope, ...]
    Q: Tuple[LatticePolytope, ...]
    W: LatticePolytope
    zero_set: FrozenSet[int]
    type: int
    index_set: FrozenSet[int]

    @property
    def products(self) -> Tuple[LatticePolytope, ...]:
        return tuple(odot(p, q) for p, q in zip(self.P, self.Q))

    @property
    def class_key(self) -> Tuple[LatticePolytope, FrozenSet[int]]:
        return self.W, self.zero_set

    def to_dict(self) -> Dict[str, Any]:
        return {
            'P': [p.to_dict() for p in self.P],
            'Q': [q.to_dict() for q in self.Q],
            'W': self.W.to_dict(),
            'type': self.type,
            'zero_set': sorted(self.zero_set),
            'index_set': sorted(self.index_set),
        }


def _check_tuples(P: Sequence[LatticePolytope], Q: Sequence[LatticePolytope]) -> int:
    if len(P) != len(Q):
        raise LengthMismatch(f"P has {len(P)} entries but Q has {len(Q)}")
    if len(P) < 2:
        raise LengthMismatch("A syzygy needs at least two polytopes")
    dims = [p.dim for p in P] + [q.dim for q in Q]
    if len(set(dims)) > 1:
        raise MixedDimension(dims)
    if any(p.is_zero for p in P):
        raise ZeroElement("sequence entries must be nonzero")
    return dims[0]


def _shared_vertices(W: LatticePolytope, products: Sequence[LatticePolytope]) -> bool:
    return all(sum(1 for X in products if contains(X, v)) >= 2 for v in W.vertices)


def is_syzygy(P: Sequence[LatticePolytope], Q: Sequence[LatticePolytope]) -> Optional[SyzygyRecord]:
    """The record of Q as a syzygy of P, or None when a vertex of W is not shared"""
    n = _check_tuples(P, Q)
    P, Q = tuple(P), tuple(Q)
    zero_set = frozenset(k for k, q in enumerate(Q, start=1) if q.is_zero)
    if len(zero_set) == len(Q):
        return SyzygyRecord(P, Q, LatticePolytope.zero(n), zero_set, 0, frozenset())
    live = [(k, odot(p, q)) for k, (p, q) in enumerate(zip(P, Q), start=1) if not q.is_zero]
    products = [X for _, X in live]
    W = oplus_all(products, n)
    if not _shared_vertices(W, products):
        return None
    syzygy_type = len(live)
    for size in range(1, len(live) + 1):
        if any(oplus_all([X for _, X in subset], n) == W for subset in combinations(live, size)):
            syzygy_type = size
            break
    index_set = frozenset(k for k, X in live if X == W) if syzygy_type == 1 else frozenset()
    return SyzygyRecord(P, Q, W, zero_set, syzygy_type, index_set)


def koszul(P: Sequence[LatticePolytope], i: int, j: int) -> SyzygyRecord:
    """K_ij: P_j in slot i, P_i in slot j, 0_A elsewhere"""
    r = len(P)
    if not 1 <= i < j <= r:
        raise IndexOutOfRange(f"Koszul indices need 1 <= i < j <= {r}, got ({i}, {j})")
    n = P[0].dim
    Q = [LatticePolytope.zero(n)] * r
    Q[i - 1], Q[j - 1] = P[j - 1], P[i - 1]
    return is_syzygy(P, Q)


def equivalent(first: SyzygyRecord, second: SyzygyRecord) -> bool:
    """Same associated polytope and same zero set"""
    return first.W == second.W and first.zero_set == second.zero_set


def syzygy_oplus(first: SyzygyRecord, second: SyzygyRecord) -> Optional[SyzygyRecord]:
    if first.P != second.P:
        raise ValueError("Syzygies of different sequences cannot be added")
    return is_syzygy(first.P, [oplus(a, b) for a, b in zip(first.Q, second.Q)])


def syzygy_scale(R: LatticePolytope, rec: SyzygyRecord) -> Optional[SyzygyRecord]:
    return is_syzygy(rec.P, [odot(R, q) for q in rec.Q])


@dataclass
class KosConstruction:
    pivot: int
    coefficients: Tuple[LatticePolytope, ...]
    rebuilt: SyzygyRecord
    equivalent: bool
    index_contained: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pivot': self.pivot,
            'coefficients': [L.to_dict() for L in self.coefficients],
            'rebuilt': self.rebuilt.to_dict(),
            'equivalent': self.equivalent,
            'index_contained': self.index_contained,
        }


def kos_construct(P: Sequence[LatticePolytope], rec: SyzygyRecord, i0: int) -> Optional[KosConstruction]:
    """
    Write a type-1 syzygy as (+)_j L_j (.) K_(i0,j). L is the canonical
    solution of Q_i0 = (+) Y_j (.) P_j over the slots outside the zero set;
    None when that equation has no solution.
    """
    if rec.type != 1:
        raise NotTypeOne(f"Record has type {rec.type}")
    if i0 not in rec.index_set:
        raise IndexNotInIndexSet(f"Index {i0} not in {sorted(rec.index_set)}")
    P = tuple(P)
    n = P[0].dim
    slots = [j for j in range(1, len(P) + 1) if j != i0 and j not in rec.zero_set]
    if not slots:
        return None
    solution = canonical_solution(rec.Q[i0 - 1], [P[j - 1] for j in slots])
    if solution is None:
        logger.info(f"No Koszul representation at pivot {i0}")
        return None
    coefficients = [LatticePolytope.zero(n)] * len(P)
    for j, L in zip(slots, solution.entries):
        coefficients[j - 1] = L
    Q = [LatticePolytope.zero(n)] * len(P)
    for j in slots:
        L = coefficients[j - 1]
        Q[j - 1] = odot(L, P[i0 - 1])
        Q[i0 - 1] = oplus(Q[i0 - 1], odot(L, P[j - 1]))
    rebuilt = is_syzygy(P, Q)
    return KosConstruction(
        pivot=i0,
        coefficients=tuple(coefficients),
        rebuilt=rebuilt,
        equivalent=equivalent(rebuilt, rec),
        index_contained=rec.index_set <= rebuilt.index_set,
    )


@dataclass
class KosVerdict:
    mode: str
    budget: int
    in_kos: bool = False
    exhausted: bool = False
    coefficients: Dict[Tuple[int, int], LatticePolytope] = field(default_factory=dict)
    lattice_points: int = 0

    def to_dict(self) -> Dict[str, Any]:
        if self.exhausted:
            verdict = 'NotInKosWithinBound'
        else:
            verdict = 'InKos' if self.in_kos else 'NotInKos'
        data: Dict[str, Any] = {
            'verdict': verdict,
            'mode': self.mode,
            'bound': {'budget': self.budget},
            'lattice_points': self.lattice_points,
        }
        if self.in_kos:
            data['coefficients'] = {f"{i},{j}": L.to_dict() for (i, j), L in sorted(self.coefficients.items())}
        return data


class _PointCounter:
    def __init__(self, verdict: KosVerdict):
        self.verdict = verdict

    def erosion(self, V: LatticePolytope, Q: LatticePolytope) -> List[Point]:
        self.verdict.lattice_points += len(Q.lattice_points)
        if self.verdict.lattice_points > self.verdict.budget:
            raise BudgetExceeded("Kos membership", self.verdict.budget)
        return erosion(V, Q)


def in_kos(P: Sequence[LatticePolytope], rec: SyzygyRecord, budget: Optional[int] = None,
           mode: str = 'exact') -> KosVerdict:
    """
    Exact mode: is rec.Q itself a combination (+) L_ij (.) K_ij? Each L_ij is
    bounded by the hull of erosion(P_j, Q_i) and erosion(P_i, Q_j), so a
    representation exists iff those maxima reproduce Q.

    Equivalent mode: is some element of Kos equivalent to rec with index set
    containing rec's? The coefficients are then bounded by
    erosion(P_i (.) P_j, W), with slots in the zero set switched off.
    """
    if mode not in ('exact', 'equivalent'):
        raise ValueError(f"Unknown Kos mode: {mode}")
    P = tuple(P)
    _check_tuples(P, rec.Q)
    verdict = KosVerdict(mode, budget if budget is not None else BUDGET_CONFIG['kos_lattice_points'])
    r, n = len(P), P[0].dim
    if rec.W.is_zero:
        verdict.in_kos = True
        return verdict
    counter = _PointCounter(verdict)
    L: Dict[Tuple[int, int], LatticePolytope] = {}
    try:
        for i, j in combinations(range(1, r + 1), 2):
            if mode == 'exact':
                Qi, Qj = rec.Q[i - 1], rec.Q[j - 1]
                if Qi.is_zero or Qj.is_zero:
                    continue
                common = set(counter.erosion(P[j - 1], Qi)) & set(counter.erosion(P[i - 1], Qj))
            else:
                if i in rec.zero_set or j in rec.zero_set:
                    continue
                common = set(counter.erosion(odot(P[i - 1], P[j - 1]), rec.W))
            if common:
                L[(i, j)] = hull(sorted(common))
    except BudgetExceeded:
        logger.warning(f"Kos membership stopped after {verdict.lattice_points} lattice points")
        verdict.exhausted = True
        return verdict

    entries = [LatticePolytope.zero(n) for _ in range(r)]
    for (i, j), coefficient in L.items():
        entries[i - 1] = oplus(entries[i - 1], odot(coefficient, P[j - 1]))
        entries[j - 1] = oplus(entries[j - 1], odot(coefficient, P[i - 1]))

    if mode == 'exact':
        verdict.in_kos = tuple(entries) == tuple(rec.Q)
    else:
        built = is_syzygy(P, entries)
        verdict.in_kos = (built is not None and equivalent(built, rec)
                          and all(odot(P[i - 1], entries[i - 1]) == rec.W for i in rec.index_set))
    if verdict.in_kos:
        verdict.coefficients = L
    return verdict


def _w_vertex_pool(P: Sequence[LatticePolytope], box: int) -> List[Point]:
    """
    Points that can be vertices of W: a vertex of W is a vertex of every
    product containing it, so it lies in vert(P_j) + [0, box]^n for two j
    """
    n = P[0].dim
    cube = lattice_points_in_box(n, box)
    counts: Dict[Point, int] = {}
    for p in P:
        reach = {tuple(a + b for a, b in zip(v, t)) for v in p.vertices for t in cube}
        for x in reach:
            counts[x] = counts.get(x, 0) + 1
    return sorted(x for x, c in counts.items() if c >= 2)


def _in_box(t: Sequence[int], box: int) -> bool:
    return all(c <= box for c in t)


def _class_records(P: Tuple[LatticePolytope, ...], W: LatticePolytope, box: int,
                   dimension: Optional[int], step) -> List[SyzygyRecord]:
    """One record per non-empty class (W, zero set) with entries inside the box"""
    n = W.dim
    r = len(P)
    erosions: Dict[int, List[Point]] = {}
    for j in range(1, r + 1):
        T = [t for t in erosion(P[j - 1], W) if _in_box(t, box)]
        if T:
            erosions[j] = T
    admissible = sorted(erosions)
    maxima = {j: hull(erosions[j]) for j in admissible}
    records = []
    for size in range(2, len(admissible) + 1):
        for support in combinations(admissible, size):
            step()
            products = [odot(P[j - 1], maxima[j]) for j in support]
            if oplus_all(products, n) != W or not _shared_vertices(W, products):
                continue
            if dimension is None:
                Q = [maxima[j] if j in support else LatticePolytope.zero(n) for j in range(1, r + 1)]
                records.append(is_syzygy(P, Q))
                continue
            found = _dimension_representative(P, W, support, erosions, dimension, step)
            if found is not None:
                records.append(found)
    return records


def _dimension_representative(P: Tuple[LatticePolytope, ...], W: LatticePolytope, support: Tuple[int, ...],
                              erosions: Dict[int, List[Point]], dimension: int, step) -> Optional[SyzygyRecord]:
    n = W.dim
    options = []
    for j in support:
        hulls = {hull(s) for s in convex_position_subsets(erosions[j], max_size=None)}
        choices = sorted((Y for Y in hulls if Y.affine_dim == dimension), key=lambda Y: Y.key)
        if not choices:
            return None
        options.append(choices)
    for entries in product(*options):
        step()
        Q = [LatticePolytope.zero(n)] * len(P)
        for j, Y in zip(support, entries):
            Q[j - 1] = Y
        rec = is_syzygy(P, Q)
        if rec is not None and rec.W == W and rec.zero_set == frozenset(set(range(1, len(P) + 1)) - set(support)):
            return rec
    return None


def enumerate_syzygies(P: Sequence[LatticePolytope], box: int, budget: Optional[int] = None,
                       dimension: Optional[int] = None,
                       target: Optional[LatticePolytope] = None) -> List[SyzygyRecord]:
    """
    Every equivalence class of syzygies whose entries have vertices in
    [0, box]^n, one record each. Without a dimension filter the record is
    the entrywise maximal member of its class. Order: the all-zero tuple,
    then by W, then by support.
    """
    P = tuple(P)
    n = P[0].dim
    _check_tuples(P, [LatticePolytope.zero(n)] * len(P))
    budget = budget if budget is not None else BUDGET_CONFIG['syzygy_checks']
    checks = [0]
    records: List[SyzygyRecord] = [is_syzygy(P, [LatticePolytope.zero(n)] * len(P))]

    def step() -> None:
        checks[0] += 1
        if checks[0] > budget:
            raise BudgetExceeded("Syzygy enumeration", budget, partial=records)

    if target is not None:
        if target.dim != n:
            raise MixedDimension([n, target.dim])
        candidates = [target]
    else:
        pool = _w_vertex_pool(P, box)
        found = {hull(s) for s in convex_position_subsets(pool, desc="Syzygy polytopes")}
        candidates = sorted(found, key=lambda W: W.key)
        logger.info(f"Syzygy enumeration: {len(pool)} vertex candidates, {len(candidates)} polytopes")

    show = PROGRESS_CONFIG['show_progress'] and len(candidates) >= PROGRESS_CONFIG['min_items']
    try:
        for W in tqdm(candidates, desc="Syzygy classes", disable=not show):
            records.extend(_class_records(P, W, box, dimension, step))
    except BudgetExceeded:
        logger.warning(f"Syzygy enumeration stopped after {budget} checks with {len(records)} classes")
        raise
    logger.info(f"Found {len(records)} syzygy classes within box {box} after {checks[0]} checks")
    return records


@dataclass
class RegularSequenceVerdict:
    box: int
    index: Optional[int] = None
    witness: Optional[LatticePolytope] = None
    solution: Tuple[LatticePolytope, ...] = ()
    checked: int = 0
    exhausted: bool = False
    shared_summand: Optional[LatticePolytope] = None
    summand_check: Optional[bool] = None

    @property
    def regular(self) -> bool:
        return self.index is None

    def to_dict(self) -> Dict[str, Any]:
        if not self.regular:
            verdict = 'NotRegular'
        else:
            verdict = 'NotRefutedWithinBudget' if self.exhausted else 'RegularUpToBox'
        data: Dict[str, Any] = {'verdict': verdict, 'bound': {'box': self.box}, 'checked': self.checked}
        if not self.regular:
            data['index'] = self.index
            data['witness'] = self.witness.to_dict()
            data['solution'] = [R.to_dict() for R in self.solution]
        if self.shared_summand is not None:
            data['shared_summand'] = self.shared_summand.to_dict()
        if self.summand_check is not None:
            data['summand_check'] = self.summand_check
        return data


def _refutes(P: Sequence[LatticePolytope], i: int, Q: LatticePolytope) -> Optional[Tuple[LatticePolytope, ...]]:
    """Solution R with Q (.) P_i = (+) R_j (.) P_j (j < i) when Q lies outside C(P_1..P_(i-1))"""
    generators = list(P[:i - 1])
    solution = canonical_solution(odot(Q, P[i - 1]), generators)
    if solution is None:
        return None
    if canonical_solution(Q, generators) is not None:
        return None
    return solution.entries


def regular_sequence_check(P: Sequence[LatticePolytope], box: int,
                           budget: Optional[int] = None) -> RegularSequenceVerdict:
    """
    Search i and Q with vertices in [0, box]^n such that Q (.) P_i lies in
    C(P_1..P_(i-1)) while Q does not. A refutation is final; otherwise the
    verdict holds up to the box. Pairs sharing a non-point summand are
    refuted by the cofactor directly. While P_1..P_i are points, membership
    in C(P_1..P_(i-1)) is decided vertex by vertex, so a refuting Q has a
    refuting vertex and only points are searched.
    """
    P = tuple(P)
    if any(p.is_zero for p in P):
        raise ZeroElement("sequence entries must be nonzero")
    dims = {p.dim for p in P}
    if len(dims) > 1:
        raise MixedDimension([p.dim for p in P])
    budget = budget if budget is not None else BUDGET_CONFIG['regular_candidates']
    verdict = RegularSequenceVerdict(box)

    if len(P) == 2:
        shared = shares_nontrivial_summand(P[0], P[1])
        if shared is not None:
            S, A = shared
            solution = _refutes(P, 2, A)
            if solution is not None:
                verdict.index, verdict.witness, verdict.solution = 2, A, solution
                verdict.shared_summand = S
                verdict.summand_check = True
                logger.info(f"{P[0]} and {P[1]} share the summand {S}")
                return verdict

    n = P[0].dim
    points = [hull([t]) for t in lattice_points_in_box(n, box)]
    searched = 0
    for i in range(2, len(P) + 1):
        if all(p.is_point for p in P[:i]):
            candidates = points
        else:
            candidates = [Q for Q in iter_box_polytopes(n, box) if not Q.is_zero]
        searched = max(searched, len(candidates))
        for Q in candidates:
            verdict.checked += 1
            if verdict.checked > budget:
                logger.warning(f"Regular sequence check stopped after {budget} candidates")
                verdict.exhausted = True
                return verdict
            solution = _refutes(P, i, Q)
            if solution is None:
                continue
            verdict.index, verdict.witness, verdict.solution = i, Q, solution
            if len(P) == 2:
                verdict.summand_check = (is_summand(P[0], odot(Q, P[1])) is not None
                                         and is_summand(P[0], Q) is None)
            logger.info(f"Regularity fails at position {i} with {Q}")
            return verdict
    logger.info(f"No refutation among {searched} polytopes in box {box}")
    return verdict


def induced_record(P: Sequence[LatticePolytope], verdict: RegularSequenceVerdict) -> SyzygyRecord:
    """(R_1..R_(i-1), Q, 0_A, ...) from a refutation Q (.) P_i = (+) R_j (.) P_j"""
    if verdict.regular:
        raise ValueError("No refutation to build a syzygy from")
    n = P[0].dim
    i = verdict.index
    Q = list(verdict.solution) + [verdict.witness] + [LatticePolytope.zero(n)] * (len(P) - i)
    return is_syzygy(P, Q)


def regular_vs_sequence(P: Sequence[LatticePolytope], i: int, box: int,
                        K: Optional[int] = None) -> Dict[str, Any]:
    """
    Coordinate regularity of e_i on C(P_1..P_r) against regularity of the
    polytope sequence (e_i, P_1..P_r). The two agree when (P_1..P_r) is
    regular.
    """
    K = K if K is not None else DEGREE_CONFIG['default_max_degree']
    M = SubSemimodule.generated_by(P)
    if not M.graded:
        raise NotGraded("regular_vs_sequence needs homogeneous generators")
    n = M.ambient_dim
    e_i = hull([[1 if c == i - 1 else 0 for c in range(n)]])
    coordinate = coordinate_regular(M, i, K, check_rank=False)
    base = regular_sequence_check(P, box) if len(P) >= 2 else RegularSequenceVerdict(box)
    extended = regular_sequence_check((e_i,) + tuple(P), box)
    return {
        'coordinate': coordinate.to_dict(),
        'base_sequence': base.to_dict(),
        'extended_sequence': extended.to_dict(),
        'agree': coordinate.regular == extended.regular,
        'applicable': base.regular,
    }


@dataclass
class SpecializedSyzygy:
    record: SyzygyRecord
    lattice_points_shared: bool

    def to_dict(self) -> Dict[str, Any]:
        data = self.record.to_dict()
        data['lattice_points_shared'] = self.lattice_points_shared
        return data


def specialize_polynomial_syzygy(f: Sequence[Polynomial], g: Sequence[Polynomial]) -> SpecializedSyzygy:
    """
    Newton polytopes of a polynomial syzygy sum f_i g_i = 0 form a polytope
    syzygy. Every f_i must be nonzero since New(0) = 0_A cannot enter a
    sequence; a zero g_i gives 0_A in its slot.
    """
    if len(f) != len(g):
        raise LengthMismatch(f"f has {len(f)} entries but g has {len(g)}")
    zero_slots = [i for i, a in enumerate(f, start=1) if a.is_zero]
    if zero_slots:
        raise ZeroElement(f"f_{zero_slots[0]} is the zero polynomial")
    dims = {p.dim for p in f} | {q.dim for q in g}
    if len(dims) > 1:
        raise MixedDimension(sorted(dims))
    total = Polynomial(dims.pop())
    for a, b in zip(f, g):
        total = total + a * b
    if not total.is_zero:
        raise NotAPolynomialSyzygy(f"sum f_i g_i = {total}")
    record = is_syzygy([newton_polytope(a) for a in f], [newton_polytope(b) for b in g])
    if record is None:
        raise PolySemiError("Newton polytopes of a polynomial syzygy must share every vertex")
    products = [X for X in record.products if not X.is_zero]
    shared = all(sum(1 for X in products if x in X.lattice_point_set) >= 2
                 for x in record.W.lattice_points)
    return SpecializedSyzygy(record, shared)
