#!/usr/bin/env python3
"""
Tests for polytope syzygies, Koszul representations and regular sequences
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest
from hypothesis import given, settings, strategies as st

from errors import (
    IndexNotInIndexSet,
    IndexOutOfRange,
    LengthMismatch,
    NotAPolynomialSyzygy,
    NotTypeOne,
    ZeroElement,
)
from fixtures import (
    coordinate_points,
    five_polytope_sequence,
    five_polytope_syzygy,
    hexagon_pieces,
    nonregular_pair,
    parallelogram,
    prism_fixture,
    triangulated_product,
)
from polynomial import Polynomial, parse_polynomial
from polytope_core import hull, is_summand, iter_box_polytopes, odot, origin, point, segment, zero
from semimodule import SubSemimodule, membership
from syzygy import (
    enumerate_syzygies,
    equivalent,
    in_kos,
    induced_record,
    is_syzygy,
    kos_construct,
    koszul,
    regular_sequence_check,
    regular_vs_sequence,
    specialize_polynomial_syzygy,
    syzygy_oplus,
    syzygy_scale,
)

E1, E2, E3 = point(1, 0, 0), point(0, 1, 0), point(0, 0, 1)

SMALL_POLYGONS = [Q for Q in iter_box_polytopes(2, 2) if not Q.is_zero]


def hexagon_record():
    pieces = hexagon_pieces()
    return is_syzygy((pieces['P1'], pieces['P2']), (pieces['P3'], pieces['P4']))


def test_hexagon_syzygy_record():
    rec = hexagon_record()
    assert rec.W == hexagon_pieces()['hexagon']
    assert rec.type == 1
    assert rec.index_set == frozenset({1, 2})
    assert rec.zero_set == frozenset()


def test_all_zero_tuple_is_type_zero():
    rec = is_syzygy((E1, E2), (zero(3), zero(3)))
    assert rec.W.is_zero
    assert rec.type == 0


def test_unshared_vertex_is_not_a_syzygy():
    assert is_syzygy((point(1, 0), point(0, 1)), (origin(2), origin(2))) is None


def test_length_and_zero_checks():
    with pytest.raises(LengthMismatch):
        is_syzygy((E1, E2), (E2,))
    with pytest.raises(LengthMismatch):
        is_syzygy((E1,), (E2,))
    with pytest.raises(ZeroElement):
        is_syzygy((E1, zero(3)), (E2, E1))


def test_koszul_syzygy():
    rec = koszul((E1, E2, E3), 1, 2)
    assert rec.Q == (E2, E1, zero(3))
    assert rec.W == point(1, 1, 0)
    assert rec.type == 1
    assert rec.index_set == frozenset({1, 2})
    assert rec.zero_set == frozenset({3})
    with pytest.raises(IndexOutOfRange):
        koszul((E1, E2, E3), 2, 1)
    with pytest.raises(IndexOutOfRange):
        koszul((E1, E2, E3), 1, 4)


def test_closure_under_join_and_scaling():
    P = (E1, E2, E3)
    joined = syzygy_oplus(koszul(P, 1, 2), koszul(P, 1, 3))
    assert joined is not None
    scaled = syzygy_scale(segment((0, 0, 0), (1, 1, 0)), koszul(P, 2, 3))
    assert scaled is not None
    assert scaled.W == segment((0, 1, 1), (1, 2, 1))


def test_five_polytope_syzygy():
    rec = five_polytope_syzygy(1, 0)
    assert rec.W == hull([(0, 0), (0, 1), (1, 0), (1, 1)])
    assert equivalent(rec, rec)


def test_kos_construct_rebuilds_type_one_record():
    P = (E1, E2, E3)
    rec = is_syzygy(P, (point(0, 1, 1), point(1, 0, 1), point(1, 1, 0)))
    assert rec.type == 1 and rec.index_set == frozenset({1, 2, 3})
    built = kos_construct(P, rec, 1)
    assert built.coefficients == (zero(3), E3, E2)
    assert built.rebuilt.Q == rec.Q
    assert built.equivalent
    assert built.index_contained


def test_kos_construct_on_koszul_record():
    P = (E1, E2, E3)
    built = kos_construct(P, koszul(P, 1, 2), 1)
    assert built.coefficients == (zero(3), origin(3), zero(3))
    assert built.rebuilt.Q == koszul(P, 1, 2).Q


@pytest.mark.slow
@pytest.mark.parametrize("r", [2, 3, 4])
def test_coordinate_point_syzygies_rebuild_from_koszul(r):
    P = coordinate_points(r)
    records = [rec for rec in enumerate_syzygies(P, box=1) if rec.type == 1]
    assert records
    for rec in records:
        for i0 in sorted(rec.index_set):
            built = kos_construct(P, rec, i0)
            assert built is not None, (rec.W, i0)
            assert built.equivalent
            assert built.index_contained


def test_kos_construct_failures():
    pieces = hexagon_pieces()
    assert kos_construct((pieces['P1'], pieces['P2']), hexagon_record(), 1) is None
    with pytest.raises(IndexNotInIndexSet):
        kos_construct((E1, E2, E3), koszul((E1, E2, E3), 1, 2), 3)
    prism = prism_fixture()
    with pytest.raises(NotTypeOne):
        kos_construct(prism['P'], prism['record'], 1)


def test_in_kos_modes():
    P = (E1, E2, E3)
    rec = koszul(P, 1, 2)
    assert in_kos(P, rec).in_kos
    verdict = in_kos(P, rec, mode='equivalent')
    assert verdict.in_kos
    assert verdict.to_dict()['verdict'] == 'InKos'

    pair = nonregular_pair()
    hexagon = hexagon_record()
    exact = in_kos(pair, hexagon)
    assert not exact.in_kos
    assert exact.to_dict()['verdict'] == 'NotInKos'
    assert not in_kos(pair, hexagon, mode='equivalent').in_kos


def test_in_kos_budget_is_reported():
    verdict = in_kos(nonregular_pair(), hexagon_record(), budget=1)
    assert verdict.exhausted
    assert verdict.to_dict()['verdict'] == 'NotInKosWithinBound'


def test_prism_syzygy_lies_outside_kos():
    prism = prism_fixture()
    rec = prism['record']
    vertical = segment((0, 0, 0), (0, 0, 1))
    assert rec.Q == (vertical, vertical, vertical)
    assert rec.type == 2
    assert rec.index_set == frozenset()
    assert rec.W == prism['W']
    assert not in_kos(prism['P'], rec).in_kos
    assert not in_kos(prism['P'], rec, mode='equivalent').in_kos


def test_enumeration_of_dimension_one_prism_syzygies():
    prism = prism_fixture()
    records = enumerate_syzygies(prism['P'], box=1, dimension=1, target=prism['W'])
    assert records[0].W.is_zero
    assert any(r.type == 2 and r.W == prism['W'] for r in records[1:])


def test_enumeration_of_coordinate_pair():
    records = enumerate_syzygies((point(1, 0), point(0, 1)), box=1)
    assert len(records) == 2
    assert records[0].type == 0
    assert records[1].Q == (point(0, 1), point(1, 0))
    assert records[1].W == point(1, 1)


def test_enumeration_of_five_polytope_parallelograms():
    P = five_polytope_sequence()
    found = {r.W for r in enumerate_syzygies(P, box=1)}
    assert parallelogram(1, 0) in found
    assert parallelogram(1, 1) in found
    targeted = enumerate_syzygies(P, box=2, target=parallelogram(2, 1))
    assert any(r.W == parallelogram(2, 1) for r in targeted)


def test_enumeration_with_target_on_hexagon_pair():
    pieces = hexagon_pieces()
    records = enumerate_syzygies(nonregular_pair(), box=1, target=pieces['hexagon'])
    assert len(records) == 2
    assert records[1].Q == (pieces['P3'], pieces['P4'])


def test_regular_pair_syzygies_are_koszul():
    P = (segment((0, 0), (1, 0)), segment((0, 0), (0, 1)))
    assert regular_sequence_check(P, box=1).regular
    records = enumerate_syzygies(P, box=1)
    assert len(records) >= 2
    for rec in records:
        assert in_kos(P, rec, mode='equivalent').in_kos


@pytest.mark.slow
@settings(max_examples=500, deadline=None)
@given(st.sampled_from(SMALL_POLYGONS), st.sampled_from(SMALL_POLYGONS))
def test_pair_syzygies_are_koszul_iff_regular(P1, P2):
    # for a pair every syzygy is W = P1 (.) Q1 = P2 (.) Q2
    P = (P1, P2)
    records = []
    for Q in SMALL_POLYGONS:
        Q1 = is_summand(P1, odot(P2, Q))
        if Q1 is not None:
            records.append(is_syzygy(P, (Q1, Q)))
    assert records
    koszul_only = all(in_kos(P, rec, mode='equivalent').in_kos for rec in records)
    assert koszul_only == regular_sequence_check(P, box=2).regular


def test_square_and_triangle_are_not_regular():
    pieces = hexagon_pieces()
    pair = nonregular_pair()
    verdict = regular_sequence_check(pair, box=1)
    assert not verdict.regular
    assert verdict.index == 2
    assert verdict.witness == pieces['P4']
    assert verdict.summand_check
    rec = induced_record(pair, verdict)
    assert rec.Q == (pieces['P3'], pieces['P4'])
    assert not in_kos(pair, rec, mode='equivalent').in_kos


def test_shared_summand_refutes_pair():
    P = (segment((0, 0), (2, 0)), segment((0, 0), (1, 0)))
    verdict = regular_sequence_check(P, box=1)
    assert not verdict.regular
    assert verdict.shared_summand == segment((0, 0), (1, 0))
    assert verdict.witness == segment((0, 0), (1, 0))


def test_triangulated_product_is_not_regular():
    data = triangulated_product()
    T = data['T']
    C = SubSemimodule.generated_by(T)
    assert membership(hull([(0, 0), (2, 0), (0, 1), (2, 1)]), C)
    assert not membership(data['L'], C)
    verdict = regular_sequence_check((data['P'],) + T, box=1)
    assert not verdict.regular
    assert verdict.index == 2
    assert verdict.witness == hull([(0, 1), (1, 0), (1, 1)])
    assert not regular_sequence_check(T + (data['P'],), box=1).regular


@pytest.mark.parametrize("n, box", [(2, 2), (3, 1), (4, 3)])
def test_coordinate_points_are_regular(n, box):
    verdict = regular_sequence_check(coordinate_points(n), box=box)
    assert verdict.regular
    assert verdict.to_dict()['verdict'] == 'RegularUpToBox'


def test_regular_check_budget():
    verdict = regular_sequence_check(coordinate_points(2), box=2, budget=3)
    assert verdict.regular and verdict.exhausted
    assert verdict.to_dict()['verdict'] == 'NotRefutedWithinBudget'


def test_coordinate_regularity_against_sequence():
    P = (point(1, 0),)
    second = regular_vs_sequence(P, 2, box=1, K=3)
    assert second['agree'] and second['applicable']
    assert second['coordinate']['verdict'] == 'RegularUpTo'
    first = regular_vs_sequence(P, 1, box=1, K=3)
    assert first['agree']
    assert first['extended_sequence']['verdict'] == 'NotRegular'


def test_specialize_koszul_polynomial_syzygy():
    f = [parse_polynomial("x1", 2), parse_polynomial("x2", 2)]
    g = [parse_polynomial("x2", 2), parse_polynomial("0 - x1", 2)]
    result = specialize_polynomial_syzygy(f, g)
    assert result.record.Q == (point(0, 1), point(1, 0))
    assert result.record.type == 1
    assert result.lattice_points_shared


def test_specialize_a_lattice_syzygy():
    a, b = parse_polynomial("x1 - x2", 3), parse_polynomial("x2 - x3", 3)
    result = specialize_polynomial_syzygy([a, b], [b, parse_polynomial("x2 - x1", 3)])
    assert result.record.type == 1
    assert result.record.index_set == frozenset({1, 2})


def test_specialize_rejects_non_syzygy():
    f = [parse_polynomial("x1", 2), parse_polynomial("x2", 2)]
    with pytest.raises(NotAPolynomialSyzygy):
        specialize_polynomial_syzygy(f, [parse_polynomial("x2", 2), parse_polynomial("x1", 2)])
    with pytest.raises(LengthMismatch):
        specialize_polynomial_syzygy(f, f[:1])


def test_specialize_zero_entries():
    x1, x2 = parse_polynomial("x1", 2), parse_polynomial("x2", 2)
    minus_x1 = parse_polynomial("0 - x1", 2)
    result = specialize_polynomial_syzygy([x1, x2, x1], [x2, minus_x1, Polynomial(2)])
    assert result.record.Q[2].is_zero
    assert result.record.zero_set == frozenset({3})
    assert result.record.type == 1
    with pytest.raises(ZeroElement):
        specialize_polynomial_syzygy([x1, Polynomial(2)], [x2, x1])
