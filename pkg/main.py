"""
Command line for the polytope semiring toolkit
"""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from config import *
from errors import (
    BudgetExceeded,
    Inconclusive,
    LengthMismatch,
    MixedDimension,
    NegativeCoordinate,
    ParseError,
    PolySemiError,
)
from fixtures import fixture_catalog
from newton import (
    artinian_basis_check,
    circuits,
    generic_semimodule_D,
    newton_basis,
    newton_basis_compare,
    newton_graded_piece,
    newton_semimodule,
    semicontinuity_check,
    strongly_regular_check,
)
from polynomial import GradedIdeal, parse_polynomial
from polytope_core import (
    LatticePolytope,
    all_factorizations,
    degree,
    factor_irreducible,
    is_summand,
    odot,
    oplus,
    volume,
)
from report_writer import ReportWriter, export_obj
from schemas import (
    IdealModel,
    PolynomialSyzygyModel,
    PolytopeListModel,
    SemimoduleModel,
    SyzygyModel,
    load_model,
    parse_polytope,
)
from semimodule import (
    SubSemimodule,
    canonical_solution,
    cm_analysis,
    coordinate_regular,
    enumerate_solutions,
    graded_piece,
    membership,
    newton_hilbert_series,
)
from syzygy import (
    enumerate_syzygies,
    in_kos,
    induced_record,
    is_syzygy,
    kos_construct,
    koszul,
    regular_sequence_check,
    specialize_polynomial_syzygy,
)

logger = logging.getLogger(__name__)

EXIT_CODES = {'ok': 0, 'negative': 3, 'invalid': 2, 'budget': 4, 'error': 1}

INVALID_INPUT = (ParseError, MixedDimension, NegativeCoordinate, LengthMismatch, ValidationError,
                 ValueError, FileNotFoundError)


def setup_logging(level: Optional[str] = None) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if LOGGING_CONFIG['log_file']:
        handlers.append(logging.FileHandler(LOGGING_CONFIG['log_file']))
    logging.basicConfig(
        level=getattr(logging, (level or LOGGING_CONFIG['level']).upper(), logging.WARNING),
        format=LOGGING_CONFIG['format'],
        handlers=handlers,
        force=True,
    )


class PolytopeSemiringSystem:
    """Runs one command and folds every outcome into a report dict"""

    def __init__(self, dim: Optional[int] = None, budget: Optional[int] = None, seed: Optional[int] = None):
        self.dim = dim
        self.budget = budget
        self.seed = seed if seed is not None else GENERIC_CONFIG['default_seed']
        self.geometry: List[LatticePolytope] = []

    def execute(self, command: str, action: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        try:
            payload = action()
            outcome = payload.pop('_outcome', 'ok')
            return {'command': command, 'success': True, 'outcome': outcome,
                    'message': f"{command} completed", **payload}
        except INVALID_INPUT as e:
            logger.error(f"Invalid input for {command}: {e}")
            report = {'command': command, 'success': False, 'outcome': 'invalid', 'message': str(e)}
            if isinstance(e, ParseError):
                report['location'] = {'line': e.line, 'column': e.column}
            if isinstance(e, MixedDimension):
                report['dims'] = e.dims
            return report
        except BudgetExceeded as e:
            logger.error(f"Budget exhausted in {command}: {e}")
            return {'command': command, 'success': False, 'outcome': 'budget', 'message': str(e),
                    'bound': {'budget': e.budget}, 'partial_count': _count(e.partial)}
        except Inconclusive as e:
            logger.error(f"Inconclusive {command}: {e}")
            return {'command': command, 'success': True, 'outcome': 'negative', 'message': str(e),
                    'verdict': 'Inconclusive', 'bound': {'max_degree': e.bound}, 'report': e.report}
        except PolySemiError as e:
            logger.error(f"Error in {command}: {e}")
            return {'command': command, 'success': False, 'outcome': 'error', 'message': str(e)}
        except Exception as e:
            logger.error(f"Unexpected error in {command}: {e}")
            return {'command': command, 'success': False, 'outcome': 'error', 'message': f"Unexpected error: {e}"}

    # Input loading

    def polytopes(self, texts: Sequence[str], path: Optional[str]) -> List[LatticePolytope]:
        if path:
            model = load_model(path, PolytopeListModel)
            if model.dim is None and self.dim is not None:
                model.dim = self.dim
            return model.to_polytopes()
        result = [parse_polytope(t, self.dim) for t in texts]
        dims = {p.dim for p in result}
        if len(dims) > 1:
            raise MixedDimension([p.dim for p in result])
        return result

    def semimodule(self, texts: Sequence[str], path: Optional[str]) -> SubSemimodule:
        if path:
            return load_model(path, SemimoduleModel).to_semimodule()
        return SubSemimodule.generated_by(self.polytopes(texts, None), self.dim)

    def ideal(self, texts: Sequence[str], path: Optional[str]) -> GradedIdeal:
        if path:
            model = load_model(path, IdealModel)
            if model.dim is None:
                model.dim = self.dim
            return model.to_ideal()
        if not texts:
            raise ValueError("give generators or --ideal")
        return GradedIdeal.parse(list(texts), self.dim)

    # Polytope arithmetic

    def hull(self, points: Sequence[str]) -> Dict[str, Any]:
        if not points:
            raise ValueError("hull needs at least one point")
        P = parse_polytope("hull(" + ",".join(points) + ")", self.dim)
        self.geometry = [P]
        return {'result': P.to_dict(), 'text': str(P)}

    def combine(self, operation: str, polytopes: List[LatticePolytope]) -> Dict[str, Any]:
        if len(polytopes) < 2:
            raise ValueError(f"{operation} needs at least two polytopes")
        step = oplus if operation == 'oplus' else odot
        result = polytopes[0]
        for P in polytopes[1:]:
            result = step(result, P)
        self.geometry = [result]
        return {'result': result.to_dict(), 'text': str(result)}

    def degree(self, P: LatticePolytope) -> Dict[str, Any]:
        return {'polytope': str(P), 'degree': degree(P)}

    def volume(self, P: LatticePolytope, mode: str) -> Dict[str, Any]:
        return {'polytope': str(P), 'mode': mode, 'volume': volume(P, mode).to_dict()}

    def summand(self, V: LatticePolytope, Q: LatticePolytope) -> Dict[str, Any]:
        R = is_summand(V, Q)
        return {'summand': str(V), 'polytope': str(Q), 'is_summand': R is not None,
                'cofactor': R.to_dict() if R is not None else None,
                '_outcome': 'ok' if R is not None else 'negative'}

    def factor(self, P: LatticePolytope, every: bool) -> Dict[str, Any]:
        if every:
            found = all_factorizations(P, self.budget)
            return {'polytope': str(P), 'factorizations': [[str(f) for f in fs] for fs in found]}
        factors = factor_irreducible(P, self.budget)
        self.geometry = factors
        return {'polytope': str(P), 'factors': [str(f) for f in factors]}

    # Semimodules

    def solve(self, polytopes: List[LatticePolytope], every: bool) -> Dict[str, Any]:
        if len(polytopes) < 2:
            raise ValueError("solve needs W followed by at least one coefficient")
        W, P = polytopes[0], polytopes[1:]
        if every:
            solutions = enumerate_solutions(W, P, self.budget)
            return {'W': str(W), 'solutions': [s.to_dict() for s in solutions],
                    '_outcome': 'ok' if solutions else 'negative'}
        solution = canonical_solution(W, P)
        return {'W': str(W), 'canonical_solution': solution.to_dict() if solution else None,
                '_outcome': 'ok' if solution else 'negative'}

    def member(self, Q: LatticePolytope, M: SubSemimodule) -> Dict[str, Any]:
        inside = membership(Q, M)
        return {'polytope': str(Q), 'member': inside, '_outcome': 'ok' if inside else 'negative'}

    def piece(self, M: SubSemimodule, k: int) -> Dict[str, Any]:
        piece = graded_piece(M, k)
        self.geometry = list(piece.minimal)
        return {'piece': piece.to_dict()}

    def hilbert(self, M: SubSemimodule, D: int) -> Dict[str, Any]:
        return {'series': newton_hilbert_series(M, D).to_dict()}

    def cm(self, M: SubSemimodule, K: int, coordinate: Optional[int]) -> Dict[str, Any]:
        if coordinate is not None:
            verdict = coordinate_regular(M, coordinate, K)
            return {'regularity': verdict.to_dict(), '_outcome': 'ok' if verdict.regular else 'negative'}
        return {'analysis': cm_analysis(M, K).to_dict()}

    # Ideals

    def newton(self, I: GradedIdeal, K: int) -> Dict[str, Any]:
        report = semicontinuity_check(I, K, self.budget)
        return {'ideal': I.to_dict(), 'semicontinuity': report.to_dict(),
                'artinian': artinian_basis_check(I, K, self.budget),
                '_outcome': 'ok' if report.holds else 'negative'}

    def ideal_series(self, I: GradedIdeal, D: int) -> Dict[str, Any]:
        M = newton_semimodule(I, D, self.budget)
        return {'ideal': I.to_dict(), 'series': newton_hilbert_series(M, D).to_dict()}

    def circuits(self, I: GradedIdeal, k: int) -> Dict[str, Any]:
        found = circuits(I, k, self.budget)
        return {'degree': k, 'count': len(found), 'circuits': [s.to_dict() for s in found],
                'piece': newton_graded_piece(I, k, self.budget).to_dict()}

    def basis(self, I: GradedIdeal, k: int, mode: str) -> Dict[str, Any]:
        if mode == 'compare':
            comparison = newton_basis_compare(I, k, self.budget)
            return {'comparison': comparison, '_outcome': 'ok' if comparison['agree'] else 'negative'}
        return {'basis': newton_basis(I, k, mode, self.budget).to_dict()}

    def generic_d(self, P: List[LatticePolytope], k: int, trials: Optional[int]) -> Dict[str, Any]:
        piece = generic_semimodule_D(P, k, trials, self.seed, self.budget)
        self.geometry = list(piece.minimal)
        return {'seed': self.seed, 'piece': piece.to_dict()}

    # Syzygies and regular sequences

    def syzygy(self, action: str, P: List[LatticePolytope], Q: List[LatticePolytope], args) -> Dict[str, Any]:
        if action == 'koszul':
            return {'record': koszul(P, args.i, args.j).to_dict()}
        if action == 'enumerate':
            target = parse_polytope(args.target, P[0].dim) if args.target else None
            records = enumerate_syzygies(P, args.box, self.budget, args.dimension, target)
            return {'bound': {'box': args.box}, 'count': len(records), 'records': [r.to_dict() for r in records]}
        record = is_syzygy(P, Q)
        if record is None:
            return {'record': None, 'is_syzygy': False, '_outcome': 'negative'}
        if action == 'check':
            return {'record': record.to_dict(), 'is_syzygy': True}
        if action == 'inkos':
            verdict = in_kos(P, record, self.budget, args.kos_mode)
            return {'record': record.to_dict(), 'kos': verdict.to_dict(),
                    '_outcome': 'ok' if verdict.in_kos else 'negative'}
        if action == 'construct':
            built = kos_construct(P, record, args.pivot)
            return {'record': record.to_dict(), 'construction': built.to_dict() if built else None,
                    '_outcome': 'ok' if built else 'negative'}
        raise ValueError(f"Unknown syzygy action: {action}")

    def regular(self, P: List[LatticePolytope], box: int, strong: bool, trials: Optional[int]) -> Dict[str, Any]:
        if strong:
            verdict = strongly_regular_check(P, box, self.seed, trials, self.budget)
            return {'regularity': verdict.to_dict(), '_outcome': 'ok' if verdict.regular else 'negative'}
        verdict = regular_sequence_check(P, box, self.budget)
        report: Dict[str, Any] = {'regularity': verdict.to_dict()}
        if not verdict.regular:
            self.geometry = [verdict.witness]
            report['induced_syzygy'] = induced_record(P, verdict).to_dict()
            report['_outcome'] = 'negative'
        elif verdict.exhausted:
            report['_outcome'] = 'budget'
        return report

    def specialize(self, f: Sequence[str], g: Sequence[str], path: Optional[str]) -> Dict[str, Any]:
        if path:
            fs, gs = load_model(path, PolynomialSyzygyModel).to_polynomials()
        else:
            n = self.dim or max(parse_polynomial(t).dim for t in list(f) + list(g))
            fs, gs = [parse_polynomial(t, n) for t in f], [parse_polynomial(t, n) for t in g]
        return {'syzygy': specialize_polynomial_syzygy(fs, gs).to_dict()}

    def fixtures(self, name: Optional[str]) -> Dict[str, Any]:
        catalog = fixture_catalog()
        if name is None:
            return {'fixtures': catalog}
        return {'fixture': name, 'data': catalog[name]}


def _count(partial: Any) -> Optional[int]:
    try:
        return len(partial)
    except TypeError:
        return None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--dim', type=int, help='Ambient dimension n')
    common.add_argument('--max-degree', type=int, default=DEGREE_CONFIG['default_max_degree'],
                        help='Degree bound K for graded computations')
    common.add_argument('--degree', type=int, default=1, help='Degree k of a single graded piece')
    common.add_argument('--box', type=int, default=DEGREE_CONFIG['default_box'], help='Coordinate bound for searches')
    common.add_argument('--budget', type=int, help='Step limit for bounded searches')
    common.add_argument('--seed', type=int, help='Seed for generic coefficients')
    common.add_argument('--trials', type=int, help='Agreement trials for generic coefficients')
    common.add_argument('--mode', type=str, help='Mode of the command (volume, basis)')
    common.add_argument('--format', type=str, choices=OUTPUT_CONFIG['supported_formats'],
                        default=OUTPUT_CONFIG['default_format'], help='Report format')
    common.add_argument('--output', type=str, help='Write the report to this file; relative paths go under POLYSEMI_OUTPUT_DIR')
    common.add_argument('--obj', type=str, help='Export resulting 2D/3D polytopes as OBJ')
    common.add_argument('--log-level', type=str, help='Logging level')
    common.add_argument('--polytopes', type=str, help='JSON file with a polytope list')
    common.add_argument('--semimodule', type=str, help='JSON file with semimodule generators')
    common.add_argument('--ideal', type=str, help='JSON file with ideal generators')

    parser = argparse.ArgumentParser(prog='polysemi', description='Polytope semiring toolkit')
    commands = parser.add_subparsers(dest='command', required=True)

    for name, help_text in [
        ('hull', 'Convex hull of points given as "(a,b,...)"'),
        ('oplus', 'Join (convex hull of the union) of polytopes'),
        ('odot', 'Minkowski sum of polytopes'),
        ('degree', 'Degree of a homogeneous polytope'),
        ('volume', 'Ambient or relative volume'),
        ('summand', 'Minkowski summand test: V then Q'),
        ('solve', 'Solve W = (+) P_i (.) Y_i: W then P_1..P_r'),
        ('member', 'Membership: Q then generators'),
        ('piece', 'Graded piece of a semimodule'),
        ('hilbert', 'Newton-Hilbert series of a semimodule or ideal'),
        ('cm', 'Cohen-Macaulay analysis or coordinate regularity'),
        ('newton', 'Hilbert versus Newton-Hilbert comparison of an ideal'),
        ('circuits', 'Minimal supports of a degree piece'),
        ('basis', 'Newton basis at one degree'),
        ('genericD', 'Generic semimodule D(P_1..P_r) at one degree'),
        ('regular', 'Regular sequence check'),
    ]:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('items', nargs='*', help='Polytopes in shorthand, points, or polynomials')
        if name == 'solve':
            sub.add_argument('--enumerate', action='store_true', help='List every solution')
        if name == 'cm':
            sub.add_argument('--coordinate', type=int, help='Check only e_i for regularity')
        if name == 'regular':
            sub.add_argument('--strong', action='store_true', help='Use the generic semimodule D')

    factor = commands.add_parser('factor', parents=[common], help='Factor into irreducible polytopes')
    factor.add_argument('items', nargs='*')
    factor.add_argument('--all', action='store_true', help='Every factorization')

    syzygy = commands.add_parser('syzygy', parents=[common], help='Polytope syzygies')
    syzygy.add_argument('action', choices=['check', 'koszul', 'enumerate', 'inkos', 'construct'])
    syzygy.add_argument('--syzygy', type=str, help='JSON file with P and Q')
    syzygy.add_argument('--i', type=int, default=1)
    syzygy.add_argument('--j', type=int, default=2)
    syzygy.add_argument('--pivot', type=int, default=1)
    syzygy.add_argument('--kos-mode', choices=['exact', 'equivalent'], default='exact')
    syzygy.add_argument('--dimension', type=int, help='Only entries of this dimension')
    syzygy.add_argument('--target', type=str, help='Fix the associated polytope W')

    specialize = commands.add_parser('specialize', parents=[common], help='Newton polytopes of a polynomial syzygy')
    specialize.add_argument('--f', nargs='*', default=[], help='Polynomials f_i')
    specialize.add_argument('--g', nargs='*', default=[], help='Polynomials g_i')
    specialize.add_argument('--polynomials', type=str, help='JSON file with f and g')

    fixtures = commands.add_parser('fixtures', parents=[common], help='Worked examples')
    fixtures.add_argument('name', nargs='?', choices=['hexagon', 'a-lattice', 'cm', 'prism', 'five-polytope',
                                                      'nonregular', 'monomial'])
    return parser


def dispatch(system: PolytopeSemiringSystem, args) -> Dict[str, Any]:
    command = args.command
    items = getattr(args, 'items', [])

    def single() -> LatticePolytope:
        polytopes = system.polytopes(items, args.polytopes)
        if len(polytopes) != 1:
            raise ValueError(f"{command} takes exactly one polytope")
        return polytopes[0]

    actions: Dict[str, Callable[[], Dict[str, Any]]] = {
        'hull': lambda: system.hull(items),
        'oplus': lambda: system.combine('oplus', system.polytopes(items, args.polytopes)),
        'odot': lambda: system.combine('odot', system.polytopes(items, args.polytopes)),
        'degree': lambda: system.degree(single()),
        'volume': lambda: system.volume(single(), args.mode or 'ambient'),
        'summand': lambda: system.summand(*_pair(system.polytopes(items, args.polytopes))),
        'factor': lambda: system.factor(single(), args.all),
        'solve': lambda: system.solve(system.polytopes(items, args.polytopes), args.enumerate),
        'member': lambda: system.member(*_head_and_module(system, items, args)),
        'piece': lambda: system.piece(system.semimodule(items, args.semimodule), args.degree),
        'hilbert': lambda: (system.ideal_series(system.ideal([], args.ideal), args.max_degree) if args.ideal
                            else system.hilbert(system.semimodule(items, args.semimodule), args.max_degree)),
        'cm': lambda: system.cm(system.semimodule(items, args.semimodule), args.max_degree, args.coordinate),
        'newton': lambda: system.newton(system.ideal(items, args.ideal), args.max_degree),
        'circuits': lambda: system.circuits(system.ideal(items, args.ideal), args.degree),
        'basis': lambda: system.basis(system.ideal(items, args.ideal), args.degree, args.mode or 'oracle'),
        'genericD': lambda: system.generic_d(system.polytopes(items, args.polytopes), args.degree, args.trials),
        'regular': lambda: system.regular(system.polytopes(items, args.polytopes), args.box, args.strong, args.trials),
        'syzygy': lambda: system.syzygy(args.action, *_syzygy_tuples(system, args), args),
        'specialize': lambda: system.specialize(args.f, args.g, args.polynomials),
        'fixtures': lambda: system.fixtures(args.name),
    }
    return system.execute(command, actions[command])


def _pair(polytopes: List[LatticePolytope]):
    if len(polytopes) != 2:
        raise ValueError("expected exactly two polytopes")
    return polytopes[0], polytopes[1]


def _head_and_module(system: PolytopeSemiringSystem, items: Sequence[str], args):
    if args.semimodule:
        M = system.semimodule([], args.semimodule)
        return system.polytopes(items, None)[0], M
    polytopes = system.polytopes(items, args.polytopes)
    if len(polytopes) < 2:
        raise ValueError("member needs Q followed by generators")
    return polytopes[0], SubSemimodule.generated_by(polytopes[1:], polytopes[0].dim)


def _syzygy_tuples(system: PolytopeSemiringSystem, args):
    if args.syzygy:
        return load_model(args.syzygy, SyzygyModel).to_tuples()
    return system.polytopes([], args.polytopes), []


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    system = PolytopeSemiringSystem(dim=args.dim, budget=args.budget, seed=args.seed)
    result = dispatch(system, args)

    if args.obj and result['success'] and system.geometry:
        try:
            result['obj'] = export_obj(system.geometry, args.obj)
        except ValueError as e:
            logger.error(f"OBJ export failed: {e}")
            result['obj'] = {'error': str(e)}

    writer = ReportWriter(args.format)
    text = writer.write(result, args.output)
    if not args.output:
        sys.stdout.write(text)
    return EXIT_CODES[result['outcome']]


def main():
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        print("\nOperation cancelled by user")
        sys.exit(1)


if __name__ == "__main__":
    main()
