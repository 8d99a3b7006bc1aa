#!/usr/bin/env python3
"""
Tests for Newton polytopes, circuits, Newton bases and the generic
semimodule D
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest

from errors import BudgetExceeded, NotGraded, ParseError
from fixtures import a_lattice_ideal, lifting_failure, monomial_ideals
from newton import (
    GenericMembership,
    circuits,
    generic_semimodule_D,
    ideal_degree_basis,
    newton_basis,
    newton_basis_compare,
    newton_graded_piece,
    newton_polytope,
    newton_semimodule,
    semicontinuity_check,
    strongly_regular_check,
)
from polynomial import GradedIdeal, Polynomial, parse_polynomial
from polytope_core import lattice_points_of_degree, point, segment, translate
from semimodule import coordinate_regular


def test_parse_polynomial():
    f = parse_polynomial("x1^2*x2 - 3/2*x2^3")
    assert f.dim == 2
    assert f.support == ((0, 3), (2, 1))
    assert f.is_homogeneous
    with pytest.raises(ParseError) as info:
        parse_polynomial("x1 + $x2")
    assert info.value.column == 6


@pytest.mark.parametrize("text, line, column", [
    ("x1 + * x2", 1, 6),
    ("x1^2 +\n  * x2", 2, 3),
    ("\n x1 + * x2", 2, 7),
])
def test_parse_polynomial_syntax_error_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_newton_polytope():
    f = parse_polynomial("x1^2 - x1*x2 + x2^2")
    assert newton_polytope(f) == segment((0, 2), (2, 0))
    assert newton_polytope(Polynomial(2)).is_zero


@pytest.mark.parametrize("n", [3, 4, 5])
def test_a_lattice_degree_one(n):
    I = a_lattice_ideal(n)
    assert ideal_degree_basis(I, 1).h == n - 1
    assert newton_graded_piece(I, 1).rank == n * (n - 1) // 2


def test_a_lattice_degree_two_circuits():
    I = a_lattice_ideal(3)
    assert ideal_degree_basis(I, 2).h == 5
    assert len(circuits(I, 2)) == 15
    assert newton_graded_piece(I, 2).rank == 12


def test_semicontinuity_on_a_lattice():
    report = semicontinuity_check(a_lattice_ideal(3), 2)
    assert report.holds
    assert report.lifts_span
    assert [row['newton'] for row in report.rows] == [0, 3, 12]
    assert [row['hilbert'] for row in report.rows] == [0, 2, 5]


@pytest.mark.parametrize("n", [2, 3])
def test_first_variable_not_regular_on_newton_semimodule(n):
    # x1 is regular on the quotient ring, e1 is not regular on New(I)
    M = newton_semimodule(a_lattice_ideal(n + 1), 1)
    verdict = coordinate_regular(M, 1, 1)
    assert not verdict.regular
    assert verdict.failed_degree == 1
    assert verdict.condition == 'rank'
    assert verdict.details == {'rank_perp': (n + 1) * n // 2, 'rank_restricted': n}


def test_oracle_basis_adds_long_segments_at_degree_two():
    I = a_lattice_ideal(3)
    lower = newton_basis(I, 1, 'oracle').polytopes
    assert len(lower) == 3
    products = {translate(g, e) for g in lower for e in lattice_points_of_degree(3, 1)}
    assert len(products) == 9
    result = newton_basis(I, 2, 'oracle')
    assert set(result.polytopes) == {
        segment((2, 0, 0), (0, 1, 1)),
        segment((0, 2, 0), (1, 0, 1)),
        segment((0, 0, 2), (1, 1, 0)),
    }
    assert not set(result.polytopes) & products
    for f, P in zip(result.polynomials, result.polytopes):
        assert newton_polytope(f) == P


def test_newton_basis_modes_agree_on_chain():
    I = a_lattice_ideal(4)
    oracle = newton_basis(I, 1, 'oracle')
    paper = newton_basis(I, 1, 'paper')
    assert len(oracle.polytopes) == 6
    assert set(oracle.polytopes) == set(paper.polytopes)
    assert newton_basis_compare(I, 1)['agree']


def test_monomial_ideals_match_hilbert_function():
    for name, I in monomial_ideals().items():
        for k in range(7):
            assert newton_graded_piece(I, k).rank == ideal_degree_basis(I, k).h, (name, k)


def test_circuit_monomial_cap():
    I = GradedIdeal.parse(["x1 - x2"], 4)
    with pytest.raises(BudgetExceeded):
        circuits(I, 6)


def test_generic_D_contains_lifting_target():
    lifting = lifting_failure()
    piece = generic_semimodule_D(lifting['P'], lifting['degree'], trials=2, seed=7)
    assert lifting['target'] in piece.generators_under_oplus
    for seed in range(5):
        assert GenericMembership(lifting['P'], seed=seed, trials=2).contains(lifting['target'])


def test_generic_D_is_deterministic_for_a_seed():
    P = lifting_failure()['P']
    first = generic_semimodule_D(P, 4, trials=2, seed=11)
    second = generic_semimodule_D(P, 4, trials=2, seed=11)
    assert first.minimal == second.minimal


def test_strong_regularity_fails_for_lifting_pair():
    lifting = lifting_failure()
    P = lifting['P'] + (lifting['extra'],)
    verdict = strongly_regular_check(P, box=1, seed=3, trials=2)
    assert not verdict.regular
    assert verdict.index == 2
    assert verdict.witness == segment((0, 1), (1, 0))
    assert verdict.to_dict()['verdict'] == 'NotStronglyRegular'


def test_generic_ideal_requires_homogeneous_input():
    with pytest.raises(NotGraded):
        generic_semimodule_D([segment((0, 0), (1, 1)), point(1, 0)], 2, trials=1, seed=1)
