#!/usr/bin/env python3
"""
Tests for equations, membership, graded pieces, Newton-Hilbert series and
the Cohen-Macaulay analysis
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import logging
from math import comb

import pytest

import semimodule
from errors import Inconclusive, MixedDegree, NotGraded, ZeroElement
from fixtures import cm_family, hexagon_pieces, lifting_failure
from polytope_core import coordinate_point, hull, origin, point, segment, zero
from semimodule import (
    SubSemimodule,
    canonical_solution,
    canonical_solution_wrt,
    cm_analysis,
    coordinate_regular,
    enumerate_solutions,
    fit_rational_form,
    format_rational_form,
    graded_piece,
    membership,
    minimal_generators,
    newton_hilbert_series,
    series_expand,
)


def full_semiring(n: int) -> SubSemimodule:
    return SubSemimodule.generated_by([origin(n)])


def test_canonical_solution_on_hexagon():
    pieces = hexagon_pieces()
    solution = canonical_solution(pieces['hexagon'], [pieces['P1']])
    assert solution.entries == (pieces['P3'],)
    solution = canonical_solution(pieces['hexagon'], [pieces['P2']])
    assert solution.entries == (pieces['P4'],)
    assert canonical_solution(pieces['P3'], [pieces['P2']]) is None


def test_canonical_solution_contains_every_solution():
    pieces = hexagon_pieces()
    W = pieces['hexagon']
    P = [pieces['P1'], pieces['P2']]
    canonical = canonical_solution(W, P)
    solutions = enumerate_solutions(W, P)
    assert canonical in solutions
    for s in solutions:
        assert s.combine(P) == W
        for y, top in zip(s.entries, canonical.entries):
            assert y.is_zero or (not top.is_zero and all(v in top.lattice_point_set for v in y.vertices))


def test_canonical_solution_with_summand_restriction():
    pieces = hexagon_pieces()
    V = pieces['P3']
    solution = canonical_solution_wrt(pieces['hexagon'], [pieces['P1']], V)
    assert solution.entries == (V,)
    assert canonical_solution_wrt(pieces['hexagon'], [pieces['P1']], pieces['P2']) is None


def test_equation_rejects_zero_target():
    with pytest.raises(ZeroElement):
        canonical_solution(zero(2), [point(0, 0)])


def test_membership_zero_and_lifting_target():
    lifting = lifting_failure()
    C = SubSemimodule.generated_by(lifting['P'])
    assert membership(zero(2), C)
    assert not membership(lifting['target'], C)
    assert membership(lifting['P'][0], C)


def test_minimal_generators_of_segments():
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    C = SubSemimodule.generated_by([segment(e[i], e[j]) for i, j in [(0, 1), (0, 2), (1, 2)]])
    piece = graded_piece(C, 1)
    assert piece.rank == 3


def test_minimal_generators_drop_joins():
    a, b = point(2, 0), point(1, 1)
    joined = segment((2, 0), (1, 1))
    assert minimal_generators([joined, a, b]) == [b, a]
    with pytest.raises(MixedDegree):
        minimal_generators([point(1, 0), point(2, 0)])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_semiring_ranks_and_series(n):
    series = newton_hilbert_series(full_semiring(n), 6)
    assert series.coefficients == tuple(comb(n + k - 1, k) for k in range(7))
    assert series.rational_form == ((1,), tuple((-1) ** j * comb(n, j) for j in range(n + 1)))
    assert series.pretty() == f"1/(1-t)^{n}"


def test_series_helpers():
    assert series_expand([0, 1], [1, -2, 1], 4) == [0, 1, 2, 3, 4]
    assert fit_rational_form([0, 1, 2, 3, 4]) == ((0, 1), (1, -2, 1))
    assert fit_rational_form([0, 3]) is None
    assert format_rational_form([0, 2], [1, -3, 3, -1]) == "2*t/(1-t)^3"


def test_coordinate_regularity_on_principal_semimodule():
    M = SubSemimodule.generated_by([coordinate_point(1, 2)])
    first = coordinate_regular(M, 1, 3)
    assert not first.regular
    assert first.failed_degree == 0
    assert first.condition == 'summand'
    assert coordinate_regular(M, 2, 3).regular


def test_cm_analysis_principal_semimodule():
    M = SubSemimodule.generated_by([coordinate_point(1, 2)])
    report = cm_analysis(M, 4)
    assert report.depth == 1
    assert report.sequence == (2,)
    assert report.series.rational_form == ((0, 1), (1, -2, 1))
    assert report.coefficients == (0, 1, 2, 3, 4)
    assert all(check['holds'] for check in report.recurrence_checks)


def test_cm_analysis_artinian_points():
    M = SubSemimodule.generated_by([point(2, 0), point(1, 1), point(0, 2)])
    report = cm_analysis(M, 4)
    assert report.artinian_k0 == 2
    assert report.depth == 0
    assert report.sequence == ()


def test_cm_fixture_series_and_inconclusive_analysis():
    M = cm_family(1)
    assert len(M.generators) == 2
    series = newton_hilbert_series(M, 6)
    assert series.coefficients == (0, 2, 6, 12, 20, 30, 42)
    assert series.rational_form == ((0, 2), (1, -3, 3, -1))
    with pytest.raises(Inconclusive) as info:
        cm_analysis(M, 4)
    assert info.value.bound == 4
    assert info.value.report['coefficients'] == [0, 2, 6, 12, 20]


def test_cm_fixture_degree_two():
    M = cm_family(2)
    assert len(M.generators) == 3
    series = newton_hilbert_series(M, 6)
    assert series.coefficients == (0, 0, 3, 9, 18, 30, 45)
    assert series.rational_form == ((0, 0, 3), (1, -3, 3, -1))
    verdict = coordinate_regular(M, 1, 4)
    assert verdict.failed_degree == 3
    assert verdict.details == {'rank_perp': 6, 'rank_restricted': 4}
    with pytest.raises(Inconclusive) as info:
        cm_analysis(M, 4)
    assert info.value.report['coefficients'] == [0, 0, 3, 9, 18]


def test_cm_analysis_rejects_failed_recurrence(monkeypatch, caplog):
    # treat every coordinate as regular so e_1 is accepted on the fixture
    monkeypatch.setattr(semimodule, '_check_step', lambda *args, **kwargs: None)
    with caplog.at_level(logging.WARNING), pytest.raises(Inconclusive) as info:
        cm_analysis(cm_family(1), 4)
    checks = info.value.report['recurrence_checks']
    assert {'level': 0, 'degree': 2, 'holds': False} in checks
    assert info.value.report['sequence'] == [1]
    assert "Rank recurrence fails" in caplog.text


def test_ungraded_semimodule_rejected():
    M = SubSemimodule.generated_by([hull([(0, 0), (1, 1)])])
    with pytest.raises(NotGraded):
        graded_piece(M, 1)
