#!/usr/bin/env python3
"""
Tests for the polytope semiring primitives
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from fractions import Fraction

import pytest

from errors import BudgetExceeded, MixedDimension, NegativeCoordinate, ZeroElement
from fixtures import hexagon_pieces
from geometry.convex import facet_point_sets
from polytope_core import (
    all_factorizations,
    contains,
    degree,
    erosion,
    factor_irreducible,
    hull,
    is_summand,
    iter_box_polytopes,
    lattice_points_of_degree,
    normalize,
    odot,
    oplus,
    origin,
    point,
    segment,
    shares_nontrivial_summand,
    translate,
    volume,
    zero,
)

HEXAGON_VERTICES = ((0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2))


def test_hexagon_has_two_factorizations():
    pieces = hexagon_pieces()
    assert pieces['hexagon'].vertices == HEXAGON_VERTICES
    assert odot(pieces['P2'], pieces['P4']) == pieces['hexagon']


def test_hull_drops_interior_and_duplicate_points():
    P = hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (2, 0)])
    assert P.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert len(P.lattice_points) == 9


def test_collinear_points_give_segment():
    P = hull([(0, 0), (1, 1), (2, 2)])
    assert P.vertices == ((0, 0), (2, 2))
    assert P.affine_dim == 1


def test_zero_is_identity_and_annihilator():
    square = hexagon_pieces()['P1']
    assert oplus(square, zero(2)) == square
    assert oplus(zero(2), square) == square
    assert odot(square, zero(2)).is_zero
    assert odot(square, origin(2)) == square


def test_mixed_dimension_rejected():
    with pytest.raises(MixedDimension):
        oplus(point(1, 0), point(1, 0, 0))
    with pytest.raises(MixedDimension):
        hull([(0, 0), (1, 0, 0)])


def test_negative_coordinate_rejected():
    with pytest.raises(NegativeCoordinate):
        point(-1, 0)


def test_degree():
    assert degree(point(1, 2)) == 3
    assert degree(segment((2, 0), (0, 2))) == 2
    assert degree(segment((0, 0), (1, 1))) is None
    with pytest.raises(ZeroElement):
        degree(zero(2))


def test_contains():
    square = hexagon_pieces()['P1']
    assert contains(square, (1, 1))
    assert not contains(square, (2, 0))
    assert contains(square, segment((0, 0), (1, 1)))
    assert contains(square, zero(2))
    assert contains(zero(2), zero(2))
    assert not contains(zero(2), origin(2))


def test_ambient_and_relative_volume():
    pieces = hexagon_pieces()
    assert volume(pieces['P1']).value == 1
    assert volume(pieces['hexagon']).value == 3
    assert volume(pieces['P3']).value == 0
    assert volume(zero(2)).value == 0
    relative = volume(segment((0, 0), (2, 2)), 'relative')
    assert relative.value == 2 and relative.dim_used == 1
    assert volume(point(3, 1), 'relative').value == 1
    assert volume(pieces['P2'], 'relative').value == Fraction(1, 2)
    with pytest.raises(ZeroElement):
        volume(zero(2), 'relative')


def test_normalize_and_translate():
    P = segment((1, 2), (2, 3))
    assert normalize(P) == segment((0, 0), (1, 1))
    assert translate(normalize(P), (1, 2)) == P


def test_lattice_points_of_degree():
    assert lattice_points_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(lattice_points_of_degree(3, 3)) == 10


def test_erosion_and_summand():
    pieces = hexagon_pieces()
    assert sorted(erosion(pieces['P1'], pieces['hexagon'])) == [(0, 0), (1, 1)]
    assert is_summand(pieces['P1'], pieces['hexagon']) == pieces['P3']
    assert is_summand(pieces['P2'], pieces['hexagon']) == pieces['P4']
    assert is_summand(pieces['P2'], pieces['P3']) is None


def test_factor_irreducible_hexagon():
    factors = factor_irreducible(hexagon_pieces()['hexagon'])
    assert factors == [segment((0, 0), (0, 1)), segment((0, 0), (1, 0)), segment((0, 0), (1, 1))]


def test_factor_keeps_translation_as_point():
    factors = factor_irreducible(segment((1, 1), (2, 1)))
    assert factors == [segment((0, 0), (1, 0)), point(1, 1)]


def test_all_factorizations_hexagon():
    pieces = hexagon_pieces()
    found = {frozenset(fs) for fs in all_factorizations(pieces['hexagon'])}
    assert found == {
        frozenset([segment((0, 0), (0, 1)), segment((0, 0), (1, 0)), segment((0, 0), (1, 1))]),
        frozenset([pieces['P2'], pieces['P4']]),
    }


def test_shared_summand():
    pieces = hexagon_pieces()
    assert shares_nontrivial_summand(pieces['P1'], pieces['P2']) is None
    S, A = shares_nontrivial_summand(segment((0, 0), (2, 0)), segment((0, 0), (1, 0)))
    assert S == segment((0, 0), (1, 0))
    assert A == segment((0, 0), (1, 0))


def test_summand_budget_caps_candidate_construction():
    square = hull([(0, 0), (8, 0), (0, 8), (8, 8)])
    with pytest.raises(BudgetExceeded):
        factor_irreducible(square, budget=5)
    with pytest.raises(BudgetExceeded):
        all_factorizations(square, budget=5)
    with pytest.raises(BudgetExceeded):
        shares_nontrivial_summand(square, square, budget=5)


def test_large_coordinates_stay_exact():
    N = 10 ** 12
    T = hull([(0, 0), (N, 1), (1, N), (N // 2, N // 2)])
    assert T.vertices == ((0, 0), (1, N), (N, 1))
    assert volume(T).value == Fraction(N * N - 1, 2)
    assert contains(T, (N // 2, N // 2))
    assert not contains(T, (N, 2))
    edges = {frozenset(f) for f in facet_point_sets(T.vertices)}
    assert edges == {frozenset({(0, 0), (N, 1)}), frozenset({(0, 0), (1, N)}), frozenset({(1, N), (N, 1)})}

    B = 10 ** 19
    small = hull([(B, B), (B + 2, B), (B, B + 2)])
    assert len(small.lattice_points) == 6
    assert (B + 1, B + 1) in small.lattice_point_set


def test_large_coordinate_tetrahedron():
    N = 10 ** 10
    T = hull([(0, 0, 0), (N, 1, 0), (0, N, 1), (1, 0, N)])
    assert len(T.vertices) == 4
    assert volume(T).value == Fraction(N ** 3 + 1, 6)
    assert volume(T, 'relative').dim_used == 3


def test_box_polytopes_in_key_order():
    found = iter_box_polytopes(1, 2)
    assert len(found) == 6
    assert found[0] == point(0)
    assert found[-1] == segment((0,), (2,))
    keys = [P.key for P in found]
    assert keys == sorted(keys)


def test_str_and_dict_forms():
    P = hexagon_pieces()['P3']
    assert str(P) == "hull((0,0),(1,1))"
    assert str(point(1, 2)) == "point(1,2)"
    assert str(zero(2)) == "zero"
    assert P.to_dict() == {'dim': 2, 'vertices': [[0, 0], [1, 1]]}
