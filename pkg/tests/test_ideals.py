"""Ideal toolbox tests: operations, Hilbert data, zero-dimensional tools."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liaison.ideals import Ideal
from liaison.rings import AlgebraError, PolyRing

from .oracles import (ci_hilbert_numerator, hilbert_by_counting,
                      random_homogeneous)

P = 32003
R3 = PolyRing(("x", "y", "z"), P)
R4 = PolyRing(("x0", "x1", "x2", "x3"), P)


def I3(*texts):
    return Ideal.from_strings(R3, list(texts))


def I4(*texts):
    return Ideal.from_strings(R4, list(texts))


small_seeds = st.integers(min_value=0, max_value=10 ** 6)


def random_ideal(ring, rng, max_gens=3, max_deg=3):
    gens = [random_homogeneous(ring, rng.randrange(1, max_deg + 1), rng)
            for _ in range(rng.randrange(1, max_gens + 1))]
    return Ideal(ring, [g for g in gens if g])


# -- basic operations --------------------------------------------------------

def test_intersection_of_two_lines_in_plane():
    meet = I3("x").intersect(I3("y"))
    assert meet == I3("x*y")


def test_intersection_of_point_ideals():
    # [0:0:1] and [0:1:0] in P^2
    meet = I3("x", "y").intersect(I3("x", "z"))
    assert meet == I3("x", "y*z")


def test_quotient_splits_a_product():
    assert I3("x*y").quotient(R3.parse("x")) == I3("y")
    assert I3("x*y").quotient(I3("x")) == I3("y")


def test_quotient_by_comaximal_is_identity():
    ideal = I3("x^2 + y*z")
    assert ideal.quotient(R3.parse("z")) == ideal


def test_saturate_removes_embedded_power():
    # (x^2, x*y) = (x) meet (x^2, y): saturating by y leaves the line
    assert I3("x^2", "x*y").saturate(R3.parse("y")) == I3("x")


def test_saturate_irrelevant_removes_irrelevant_component():
    fat = I3("x", "y", "z")
    ideal = Ideal(R3, [f * g for f in fat.generators
                       for g in fat.generators])  # (x,y,z)^2
    line = I3("x", "y")
    mixed = Ideal(R3, [a * b for a in ideal.generators
                       for b in line.generators])
    assert mixed.saturate_irrelevant() == line


def test_eliminate_projects_twisted_cubic():
    cubic = I4("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")
    gone = cubic.eliminate(["x0"])
    assert gone.ring.variables == ("x1", "x2", "x3")
    assert gone == Ideal.from_strings(gone.ring, ["x1*x3 - x2^2"])


def test_unit_and_zero_flags():
    assert I3("x").quotient(R3.parse("x")).is_unit()
    assert Ideal(R3, []).is_zero()


# -- Hilbert data ------------------------------------------------------------

@pytest.mark.parametrize("degs", [(2,), (2, 3), (2, 2, 2), (1, 2, 4)])
def test_ci_hilbert_numerator_koszul(degs):
    rng = random.Random(str(degs))
    gens = []
    while True:
        gens = [random_homogeneous(R4, d, rng) for d in degs]
        ideal = Ideal(R4, gens)
        if ideal.codim() == len(degs):
            break
    assert list(ideal.hilbert_numerator()) == ci_hilbert_numerator(degs)


def test_hilbert_function_matches_counting():
    texts = ["x^2*y", "y^3", "x*z^2"]
    ideal = I3(*texts)
    leads = [R3.parse(t).leading_monomial() for t in texts]
    for d in range(8):
        assert ideal.hilbert_function(d) == hilbert_by_counting(leads, 3, d)


def test_dimension_degree_twisted_cubic():
    cubic = I4("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")
    assert cubic.krull_dim() == 2          # a curve in P^3 (cone dim 2)
    assert cubic.codim() == 2
    assert cubic.degree() == 3
    assert cubic.h_vector().entries == (1, 2)


def test_degree_of_unit_ideal_rejected():
    unit = I3("x").quotient(R3.parse("x"))
    with pytest.raises(AlgebraError):
        unit.degree()


# -- CM / reducedness / points ----------------------------------------------

def test_cm_test_accepts_aci_and_rejects_mixed():
    cubic = I4("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")
    assert cubic.cm_test(seed=1)[0]
    # a plane union a non-incident line is not ACM
    mixed = I4("x0").intersect(I4("x1", "x2"))
    assert not mixed.cm_test(seed=1)[0]


def test_reducedness_of_point_sets():
    pts = I4("x1", "x2", "x3").intersect(I4("x0", "x2", "x3"))
    assert pts.is_reduced_zero_dim(seed=3)
    fat = Ideal(R4, [a * b for a in I4("x0", "x1", "x2").generators
                     for b in I4("x0", "x1", "x2").generators])
    assert not fat.is_reduced_zero_dim(seed=3)


def test_rational_points_recovers_support():
    pts = I4("x1", "x2", "x3").intersect(I4("x0", "x2", "x3")).intersect(
        I4("x0 - x1", "x1 - x2", "x2 - x3"))
    got = {tuple(pt) for pt in pts.rational_points(seed=2)}
    assert got == {(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 1, 1)}


def test_component_extraction():
    a = I4("x1", "x2", "x3")
    b = I4("x0", "x2", "x3")
    both = a.intersect(b)
    piece = both.component_at_point((1, 0, 0, 0), [(0, 1, 0, 0)], seed=4)
    assert piece == a


# -- ring surgery ------------------------------------------------------------

def test_extend_then_contract_round_trip():
    ideal = I3("x^2 + y*z", "z^3")
    ext = ideal.extend_ring("t")
    assert ext.ring.variables == ("x", "y", "z", "t")
    assert ext.contract_set_zero("t") == ideal


def test_json_round_trip():
    ideal = I3("x^2 + 3*y*z", "z^3")
    again = Ideal.from_json(ideal.to_json())
    assert again.ring.variables == ideal.ring.variables
    assert again == ideal


# -- algebraic laws (property-based) ----------------------------------------

@settings(max_examples=15, deadline=None)
@given(seed=small_seeds)
def test_intersection_contains_product(seed):
    rng = random.Random(seed)
    a, b = random_ideal(R3, rng), random_ideal(R3, rng)
    if a.is_zero() or b.is_zero():
        return
    meet = a.intersect(b)
    assert a.contains_ideal(meet)
    assert b.contains_ideal(meet)
    assert meet.contains_ideal(a * b)


@settings(max_examples=15, deadline=None)
@given(seed=small_seeds)
def test_quotient_law(seed):
    rng = random.Random(seed)
    a = random_ideal(R3, rng)
    f = random_homogeneous(R3, rng.randrange(1, 3), rng)
    if a.is_zero() or not f:
        return
    q = a.quotient(f)
    assert a.contains_ideal(Ideal(R3, [g * f for g in q.generators]))
    assert q.contains_ideal(a)


@settings(max_examples=10, deadline=None)
@given(seed=small_seeds)
def test_saturation_idempotent(seed):
    rng = random.Random(seed)
    a = random_ideal(R3, rng)
    f = random_homogeneous(R3, 1, rng)
    if a.is_zero() or not f:
        return
    s = a.saturate(f)
    assert s.saturate(f) == s
