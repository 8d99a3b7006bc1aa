"""
Named constructors for the worked examples used by the tests and by
`polysemi fixtures`
"""
import logging
from itertools import product
from typing import Any, Dict, Tuple

from errors import PolySemiError
from polynomial import GradedIdeal
from polytope_core import (
    LatticePolytope,
    coordinate_point,
    hull,
    normalize,
    odot,
    point,
    segment,
)
from semimodule import SubSemimodule, cm_fixture
from syzygy import SyzygyRecord, in_kos, is_syzygy

logger = logging.getLogger(__name__)


def hexagon_pieces() -> Dict[str, LatticePolytope]:
    """Unit square, triangle, diagonal and upper triangle with P1 (.) P3 = P2 (.) P4"""
    pieces = {
        'P1': hull([(0, 0), (1, 0), (0, 1), (1, 1)]),
        'P2': hull([(0, 0), (1, 0), (1, 1)]),
        'P3': segment((0, 0), (1, 1)),
        'P4': hull([(0, 0), (0, 1), (1, 1)]),
    }
    pieces['hexagon'] = odot(pieces['P1'], pieces['P3'])
    return pieces


def nonregular_pair() -> Tuple[LatticePolytope, LatticePolytope]:
    pieces = hexagon_pieces()
    return pieces['P1'], pieces['P2']


def coordinate_points(n: int) -> Tuple[LatticePolytope, ...]:
    return tuple(coordinate_point(i, n) for i in range(1, n + 1))


def a_lattice_ideal(n: int) -> GradedIdeal:
    """<x1 - x2, ..., x(n-1) - xn> in n variables"""
    if n < 2:
        raise ValueError("needs at least two variables")
    return GradedIdeal.parse([f"x{i} - x{i + 1}" for i in range(1, n)], n)


def cm_family(d: int) -> SubSemimodule:
    return cm_fixture(d)


def monomial_ideals() -> Dict[str, GradedIdeal]:
    return {
        'x1^2, x1*x2': GradedIdeal.parse(["x1^2", "x1*x2"], 2),
        'x1, x2': GradedIdeal.parse(["x1", "x2"], 2),
        'x1*x2': GradedIdeal.parse(["x1*x2"], 2),
        'x1^2, x2^2': GradedIdeal.parse(["x1^2", "x2^2"], 2),
        'x1*x2, x2*x3, x1*x3': GradedIdeal.parse(["x1*x2", "x2*x3", "x1*x3"], 3),
    }


def five_polytope_sequence() -> Tuple[LatticePolytope, ...]:
    """A vertical unit segment and the four corners of the unit square"""
    return (segment((0, 0), (0, 1)), point(0, 0), point(0, 1), point(1, 0), point(1, 1))


def parallelogram(a: int, b: int) -> LatticePolytope:
    if a < 1 or b < 0:
        raise ValueError("(a, b) must be non-negative and not a multiple of (0, 1)")
    return odot(segment((0, 0), (0, 1)), segment((0, 0), (a, b)))


def five_polytope_syzygy(a: int, b: int) -> SyzygyRecord:
    """Each corner point moved onto a vertex of the parallelogram"""
    W = parallelogram(a, b)
    Q = [segment((0, 0), (a, b)), point(0, 0), point(0, 0), point(a - 1, b), point(a - 1, b)]
    record = is_syzygy(five_polytope_sequence(), Q)
    if record is None or record.W != W:
        raise PolySemiError(f"Parallelogram syzygy ({a}, {b}) failed to verify")
    return record


def triangulated_product() -> Dict[str, Any]:
    """
    The unit square P, L = seg{(0,0),(1,0)}, and a unimodular triangulation
    T1..T4 of P (.) L
    """
    return {
        'P': hull([(0, 0), (1, 0), (0, 1), (1, 1)]),
        'L': segment((0, 0), (1, 0)),
        'T': (
            hull([(0, 0), (1, 0), (0, 1)]),
            hull([(1, 0), (1, 1), (0, 1)]),
            hull([(1, 0), (2, 0), (1, 1)]),
            hull([(2, 0), (2, 1), (1, 1)]),
        ),
    }


def lifting_failure() -> Dict[str, Any]:
    """Two segments whose D semimodule contains a polytope outside C(P1, P2)"""
    return {
        'P': (segment((0, 3), (2, 1)), segment((0, 3), (1, 2))),
        'target': segment((2, 1), (1, 2)),
        'degree': 3,
        'extra': point(1, 0),
    }


def prism_fixture() -> Dict[str, Any]:
    """
    The triangle edges of T = hull{0, e1, e2} in A[3] together with the first
    triple of prism edge shapes giving a type-2 syzygy with associated
    polytope T (.) seg{0, e3} that lies outside Kos in both senses
    """
    o, e1, e2, e3 = (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)
    T = hull([o, e1, e2])
    vertical = segment(o, e3)
    prism = odot(T, vertical)
    P = (segment(o, e1), segment(o, e2), segment(e1, e2))
    edges = [segment(tuple(x + z * y for x, y in zip(a, e3)), tuple(x + z * y for x, y in zip(b, e3)))
             for a, b in [(o, e1), (o, e2), (e1, e2)] for z in (0, 1)]
    edges += [segment(v, tuple(x + y for x, y in zip(v, e3))) for v in (o, e1, e2)]
    shapes = sorted({normalize(edge) for edge in edges}, key=lambda S: S.key)
    for Q in product(shapes, repeat=len(P)):
        record = is_syzygy(P, Q)
        if record is None or record.W != prism or record.type != 2:
            continue
        if in_kos(P, record).in_kos or in_kos(P, record, mode='equivalent').in_kos:
            continue
        logger.info(f"Prism syzygy found: {[str(q) for q in Q]}")
        return {'P': P, 'Q': tuple(Q), 'W': prism, 'record': record}
    raise PolySemiError("No non-Koszul type-2 syzygy among the prism edges")


def fixture_catalog() -> Dict[str, Dict[str, Any]]:
    """Plain-data view of every fixture for the command line"""
    hexagon = hexagon_pieces()
    triangulated = triangulated_product()
    lifting = lifting_failure()
    prism = prism_fixture()
    return {
        'hexagon': {name: P.to_dict() for name, P in hexagon.items()},
        'a-lattice': {str(n): a_lattice_ideal(n).to_dict() for n in (3, 4, 5)},
        'cm': {str(d): cm_family(d).to_dict() for d in (1, 2)},
        'prism': {'P': [p.to_dict() for p in prism['P']], 'Q': [q.to_dict() for q in prism['Q']],
                  'W': prism['W'].to_dict()},
        'five-polytope': {
            'P': [p.to_dict() for p in five_polytope_sequence()],
            'syzygies': {f"{a},{b}": five_polytope_syzygy(a, b).to_dict() for a, b in [(1, 0), (1, 1), (2, 1)]},
        },
        'nonregular': {
            'pair': [p.to_dict() for p in nonregular_pair()],
            'triangulated': {'P': triangulated['P'].to_dict(), 'L': triangulated['L'].to_dict(),
                             'T': [t.to_dict() for t in triangulated['T']]},
            'lifting': {'P': [p.to_dict() for p in lifting['P']], 'target': lifting['target'].to_dict()},
        },
        'monomial': {name: I.to_dict() for name, I in monomial_ideals().items()},
    }
