#!/usr/bin/env python3
"""
Property tests for the semiring axioms, cancellativity, the canonical
solution, minimal generators and syzygy closure

Every suite runs 500 examples with coordinates up to 4. They are marked
slow; `pytest -m "not slow"` skips them.
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import pytest
from hypothesis import given, settings, strategies as st

from newton import newton_polytope
from polynomial import Polynomial
from polytope_core import (
    contains,
    hull,
    is_summand,
    lattice_points_of_degree,
    odot,
    oplus,
    volume,
    zero,
)
from semimodule import SolutionTuple, canonical_solution, canonical_solution_wrt, minimal_generators
from syzygy import is_syzygy, koszul, specialize_polynomial_syzygy, syzygy_oplus, syzygy_scale

pytestmark = pytest.mark.slow

settings.register_profile("acceptance", max_examples=500, deadline=None)
settings.register_profile("quick", max_examples=60, deadline=None)
ACCEPTANCE = settings.get_profile(os.getenv("POLYSEMI_HYPOTHESIS_PROFILE", "acceptance"))

COORDINATE_MAX = 4


def points(n, high=COORDINATE_MAX):
    return st.tuples(*[st.integers(min_value=0, max_value=high)] * n)


def polytopes(n, size=4):
    return st.lists(points(n), min_size=1, max_size=size).map(hull)


def triples():
    return st.sampled_from([2, 3]).flatmap(
        lambda n: st.tuples(polytopes(n, 4 if n == 2 else 3), polytopes(n, 4 if n == 2 else 3),
                            polytopes(n, 4 if n == 2 else 3)))


@ACCEPTANCE
@given(triples())
def test_semiring_axioms(triple):
    P, Q, R = triple
    assert oplus(P, Q) == oplus(Q, P)
    assert odot(P, Q) == odot(Q, P)
    assert oplus(oplus(P, Q), R) == oplus(P, oplus(Q, R))
    assert odot(odot(P, Q), R) == odot(P, odot(Q, R))
    assert odot(P, oplus(Q, R)) == oplus(odot(P, Q), odot(P, R))
    assert oplus(P, P) == P
    assert odot(P, zero(P.dim)).is_zero


@ACCEPTANCE
@given(triples())
def test_cancellation(triple):
    P, Q, R = triple
    assert is_summand(R, odot(P, R)) == P
    if odot(P, R) == odot(Q, R):
        assert P == Q


@ACCEPTANCE
@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(polytopes(n, 3), polytopes(n, 3))))
def test_volume_is_monotone(pair):
    P, Q = pair
    joined = oplus(P, Q)
    assert contains(joined, P)
    assert volume(P).value <= volume(joined).value
    assert volume(P).value <= volume(odot(P, Q)).value


@ACCEPTANCE
@given(st.tuples(polytopes(2, 3), polytopes(2, 3), polytopes(2, 2), polytopes(2, 2)))
def test_canonical_solution_is_maximal(data):
    P1, P2, Y1, Y2 = data
    W = oplus(odot(P1, Y1), odot(P2, Y2))
    solution = canonical_solution(W, [P1, P2])
    assert solution is not None
    assert solution.combine([P1, P2]) == W
    for Y, top in zip((Y1, Y2), solution.entries):
        assert contains(top, Y)


@ACCEPTANCE
@given(st.tuples(polytopes(2, 3), polytopes(2, 3), polytopes(2, 2), polytopes(2, 2), polytopes(2, 3)))
def test_canonical_solution_with_summand_is_translated(data):
    P1, P2, Y1, Y2, V = data
    P = [P1, P2]
    U = oplus(odot(P1, Y1), odot(P2, Y2))
    W = odot(V, U)
    base = canonical_solution(U, P)
    solution = canonical_solution_wrt(W, P, V)
    assert solution == SolutionTuple(tuple(odot(V, y) for y in base.entries))
    assert solution.combine(P) == W
    for y in solution.entries:
        assert y.is_zero or is_summand(V, y) is not None


DEGREE_TWO = lattice_points_of_degree(3, 2)


@ACCEPTANCE
@given(st.lists(st.lists(st.sampled_from(DEGREE_TWO), min_size=1, max_size=3).map(hull), min_size=1, max_size=5))
def test_minimal_generators_are_order_independent(family):
    forward = minimal_generators(family)
    assert forward == minimal_generators(list(reversed(family)))
    joined = hull([v for g in family for v in g.vertices])
    below = [g for g in forward if contains(joined, g)]
    assert hull([v for g in below for v in g.vertices]) == joined


@ACCEPTANCE
@given(st.tuples(polytopes(2, 3), polytopes(2, 3), polytopes(2, 3), polytopes(2, 3)))
def test_syzygies_closed_under_join_and_scaling(data):
    P1, P2, R, S = data
    P = (P1, P2)
    K = koszul(P, 1, 2)
    scaled = syzygy_scale(R, K)
    assert scaled is not None
    assert syzygy_oplus(K, scaled) is not None
    other = is_syzygy(P, (odot(S, P2), odot(S, P1)))
    assert syzygy_oplus(scaled, other) is not None


def polynomials(n):
    return st.dictionaries(points(n, 2), st.integers(min_value=-3, max_value=3).filter(bool),
                           min_size=1, max_size=3).map(lambda terms: Polynomial(n, terms))


@ACCEPTANCE
@given(st.tuples(polynomials(2), polynomials(2), polynomials(2)))
def test_specialized_polynomial_syzygy(data):
    a, b, c = data
    minus_a = Polynomial(2, {m: -v for m, v in a.terms.items()})
    result = specialize_polynomial_syzygy([a, b], [c * b, c * minus_a])
    assert result.record.W == result.record.products[0]
    assert result.record.type == 1


@ACCEPTANCE
@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(polynomials(n), polynomials(n))))
def test_newton_polytope_is_multiplicative(pair):
    f, g = pair
    assert newton_polytope(f * g) == odot(newton_polytope(f), newton_polytope(g))
