"""Fat point machinery: formulas, grids, link steps, full reduction."""

import pytest

from liaison.fatpoints import (FatPointScheme, LineP3, PointP3, default_ring,
                               fat_point_ideal, fatpoint_hvector_formula,
                               general_forms_through,
                               gorenstein_X_hvector_formula, grid_curves,
                               point_ideal, reduce_to_reduced,
                               single_fatpoint_link_step,
                               theorem32_double_step, union_ideal)
from liaison.ideals import GenericityError, Ideal
from liaison.rings import AlgebraError, PolyRing

P = 32003
RING = default_ring()
ORIGIN = PointP3.make([1, 0, 0, 0])
OTHER = PointP3.make([0, 1, 0, 0])


# -- points, lines, schemes --------------------------------------------------

def test_point_normalization():
    assert PointP3.make([0, 2, 4, 6]).coords == (0, 1, 2, 3)
    assert PointP3.make([3, 0, 0, 0]) == ORIGIN


def test_line_requires_independent_forms():
    with pytest.raises(GenericityError):
        LineP3.make((1, 0, 0, 0), (2, 0, 0, 0), P)


def test_scheme_rejects_duplicates_and_bad_multiplicities():
    with pytest.raises(AlgebraError):
        FatPointScheme(((ORIGIN, 1), (ORIGIN, 2)))
    with pytest.raises(AlgebraError):
        FatPointScheme(((ORIGIN, 0),))


def test_scheme_degree_and_json():
    scheme = FatPointScheme(((ORIGIN, 2), (OTHER, 1)))
    assert scheme.degree() == 4 + 1
    assert not scheme.is_reduced()
    again = FatPointScheme.from_json(scheme.to_json())
    assert again == scheme


def test_union_ideal_of_empty_scheme_rejected():
    with pytest.raises(AlgebraError):
        union_ideal(RING, FatPointScheme(()))


def test_point_and_fat_ideals():
    p1 = point_ideal(RING, ORIGIN)
    assert p1.degree() == 1 and p1.codim() == 3
    p2 = fat_point_ideal(RING, ORIGIN, 2)
    assert p2 == p1 * p1
    assert p2.degree() == 4


# -- formulas ----------------------------------------------------------------

@pytest.mark.parametrize("n,a", [(2, 2), (3, 2), (3, 3), (3, 4)])
def test_fatpoint_hvector_formula_matches_ideal(n, a):
    ring = PolyRing(tuple("x%d" % i for i in range(n + 1)), P)
    power = Ideal(ring, [ring.variable(v) for v in ring.variables[1:]])
    acc = power
    for _ in range(a - 1):
        acc = acc * power
    assert acc.h_vector().entries == fatpoint_hvector_formula(n, a).entries


def test_gorenstein_formula_is_symmetric():
    for a in (2, 3, 4):
        hv = gorenstein_X_hvector_formula(3, a)
        assert hv.is_symmetric()
        assert hv.entries[a - 1] == max(hv.entries)


# -- general forms and grids -------------------------------------------------

def test_general_forms_through_point():
    forms = general_forms_through(RING, ORIGIN, 3, seed=9, avoid=[OTHER])
    assert len(forms) == 3
    for f in forms:
        assert f.evaluate(ORIGIN.coords) == 0
        assert f.evaluate(OTHER.coords) != 0
    again = general_forms_through(RING, ORIGIN, 3, seed=9, avoid=[OTHER])
    assert [str(f) for f in forms] == [str(f) for f in again]


@pytest.mark.parametrize("a", [2, 3])
def test_grid_curves_h_vector_and_containment(a):
    sel = grid_curves(RING, ORIGIN, a, a + 1, seed=0)
    expected = tuple(range(1, min(a, a + 1) + 1))
    assert sel.ideal_c.h_vector().entries == expected
    assert sel.ideal_d.h_vector().entries == expected
    power = fat_point_ideal(RING, ORIGIN, a)
    assert power.contains_ideal(sel.ideal_c)
    assert power.contains_ideal(sel.ideal_d)


# -- link steps --------------------------------------------------------------

def test_single_step_multiplicity_two():
    report = single_fatpoint_link_step(RING, ORIGIN, 2, seed=0)
    assert report.ok()
    assert report.result == point_ideal(RING, ORIGIN)


def test_single_step_multiplicity_three():
    report = single_fatpoint_link_step(RING, ORIGIN, 3, seed=0)
    assert report.ok()
    assert report.result == fat_point_ideal(RING, ORIGIN, 2)


def test_double_step_single_fat_point():
    scheme = FatPointScheme(((ORIGIN, 2),))
    report = theorem32_double_step(scheme, seed=0)
    assert report.ok()
    assert report.result is not None
    assert report.result.is_reduced()


def test_reduce_single_fat_point_takes_two_links():
    scheme = FatPointScheme(((ORIGIN, 2),))
    report = reduce_to_reduced(scheme, seed=0)
    assert report.ok()
    summary = report.steps[-1]
    assert summary.kind == "reduction-summary"
    assert summary.data["links"] == 2
    assert report.result.is_reduced()
