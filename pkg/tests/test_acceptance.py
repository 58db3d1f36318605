"""Acceptance gate: nine pinned criteria, exact equality throughout.

Each test prints exactly one ``criterion N: pass|FAIL`` line.  Criteria 3
and 4 exercise the full two-link pipeline on multi-point schemes; the
construction provably forces extra components at the auxiliary points
over any fixed finite field (see the residual reports), so those runs
are expected to report honest failures of the "no components at R_k" /
"reduced residue" clauses while every computational invariant
(degree additivity, exactness of every colon) is verified.
"""

import random
import sys
import time

import pytest

from liaison.fatpoints import (FatPointScheme, PointP3, default_ring,
                               fat_point_ideal, fatpoint_hvector_formula,
                               gorenstein_X_hvector_formula, point_ideal,
                               reduce_to_reduced, single_fatpoint_link_step,
                               theorem32_double_step)
from liaison.ideals import Ideal
from liaison.lifting import verify_lifting
from liaison.links import (ci_link, gorenstein_sum, is_geometric_link,
                           lemma_key_link, link_involution_check,
                           proper_ci_intersection_link)
from liaison.rings import AlgebraError, PolyRing

from .conftest import CRITERION_LINES
from .oracles import membership_by_linear_algebra, random_homogeneous

P = 32003
R4 = PolyRing(("x0", "x1", "x2", "x3"), P)


def report(num, ok, detail=""):
    line = "criterion %d: %s%s" % (num, "pass" if ok else "FAIL",
                                   " (%s)" % detail if detail else "")
    print(line, file=sys.stderr, flush=True)
    CRITERION_LINES.append(line)
    assert ok, line


def random_point(rng):
    while True:
        coords = [rng.randrange(P) for _ in range(4)]
        if any(coords):
            return PointP3.make(coords)


def test_criterion_1_hvector_formulas():
    start = time.time()
    ok = True
    for n in (2, 3, 4):
        ring = PolyRing(tuple("x%d" % i for i in range(n + 1)), P)
        point = Ideal(ring, [ring.variable(v) for v in ring.variables[1:]])
        power = point
        for a in range(2, 6):
            # re-generate from the reduced basis to keep the product small
            power = Ideal(ring, (power * point).groebner_basis())
            if power.h_vector().entries != fatpoint_hvector_formula(
                    n, a).entries:
                ok = False
    elapsed = time.time() - start
    report(1, ok and elapsed < 30, "%.1fs" % elapsed)


def test_criterion_2_single_fatpoint_chain():
    start = time.time()
    ring = default_ring()
    origin = PointP3.make([1, 0, 0, 0])
    ok = True

    rep2 = single_fatpoint_link_step(ring, origin, 2, seed=0)
    gor2 = rep2.steps[1]
    ok &= rep2.ok() and gor2.data["h_vector"] == [1, 3, 1]
    ok &= rep2.result == point_ideal(ring, origin)

    rep3 = single_fatpoint_link_step(ring, origin, 3, seed=0)
    gor3 = rep3.steps[1]
    ok &= rep3.ok() and gor3.data["h_vector"] == [1, 3, 6, 3, 1]
    ok &= rep3.result == fat_point_ideal(ring, origin, 2)

    # the multiplicity-3 chain reaches the reduced point in two steps
    rep_down = single_fatpoint_link_step(ring, origin, 2, seed=1)
    ok &= rep_down.ok() and rep_down.result == point_ideal(ring, origin)

    elapsed = time.time() - start
    report(2, ok and elapsed < 60, "%.1fs" % elapsed)


@pytest.mark.parametrize("a,b2", [(2, 2), (3, 1)])
def test_criterion_3_double_step_pipeline(a, b2):
    start = time.time()
    ring = default_ring()
    scheme = FatPointScheme(((PointP3.make([1, 0, 0, 0]), a),
                             (PointP3.make([0, 1, 0, 0]), b2)))
    rep = theorem32_double_step(scheme, seed=0, ring=ring)
    verdict = rep.steps[-1]
    additivity = all(v for s in rep.steps if s.kind == "residual"
                     for v in s.checks.values())
    structural = all(s.passed() for s in rep.steps[:-1])
    ok = rep.ok() and additivity and structural
    elapsed = time.time() - start
    failed = [k for k, v in verdict.checks.items() if not v]
    report(3, ok and elapsed < 600,
           "a=%d b2=%d, %.1fs%s" % (a, b2, elapsed,
                                    ", failed: %s" % ", ".join(failed)
                                    if failed else ""))


def test_criterion_4_full_reduction_two_double_points():
    start = time.time()
    ring = default_ring()
    scheme = FatPointScheme(((PointP3.make([1, 0, 0, 0]), 2),
                             (PointP3.make([0, 1, 0, 0]), 2)))
    try:
        rep = reduce_to_reduced(scheme, seed=0, ring=ring)
        summary = rep.steps[-1]
        ok = (rep.ok() and summary.data["links"] == 4
              and rep.result.is_reduced())
        detail = "%d links" % summary.data["links"]
    except AlgebraError as exc:
        ok = False
        detail = str(exc)
    elapsed = time.time() - start
    report(4, ok and elapsed < 1200, "%.1fs, %s" % (elapsed, detail))


def test_criterion_5_colon_identity_instances():
    start = time.time()
    ok = True
    for seed in range(20):
        rng = random.Random(5000 + seed)
        codim = 2 + seed % 2
        while True:
            gens = [random_homogeneous(R4, rng.randrange(2, 4), rng)
                    for _ in range(codim)]
            ideal = Ideal(R4, [g for g in gens if g])
            if len(ideal.generators) == codim and ideal.codim() == codim:
                break
        other = ideal + Ideal(R4, [random_homogeneous(
            R4, rng.randrange(1, 3), rng)])
        f = random_homogeneous(R4, 1, rng)
        if not ideal.is_regular_element(f):
            ok = False
            continue
        _, step = lemma_key_link(ideal, f, other)
        ok &= step.passed()
    elapsed = time.time() - start
    report(5, ok and elapsed < 120, "20 instances, %.1fs" % elapsed)


def test_criterion_6_hilbert_invariance_under_extension():
    start = time.time()
    cases = [
        Ideal.from_strings(R4, ["x0^2 + x1*x2", "x3^3"]),
        Ideal.from_strings(R4, ["x0", "x1^2 - x2*x3"]),
        Ideal.from_strings(R4, ["x0*x2 - x1^2", "x0*x3 - x1*x2",
                                "x1*x3 - x2^2"]),
        Ideal.from_strings(R4, ["x0", "x1", "x2"]),
        Ideal.from_strings(R4, ["x0^3 + x1^3 + x2^3 + x3^3"]),
    ]
    for seed in range(5):
        rng = random.Random(6000 + seed)
        while True:
            gens = [random_homogeneous(R4, rng.randrange(1, 4), rng)
                    for _ in range(2)]
            ideal = Ideal(R4, [g for g in gens if g])
            if ideal.codim() == 2:
                break
        cases.append(ideal)
    ok = True
    for ideal in cases:
        ext = ideal.extend_ring("t")
        with_t = ext + Ideal(ext.ring, [ext.ring.parse("t")])
        bound = 2 * ideal.max_gen_degree() + 4
        ok &= all(with_t.hilbert_function(d) == ideal.hilbert_function(d)
                  for d in range(bound + 1))
    elapsed = time.time() - start
    report(6, ok, "10 ideals, %.1fs" % elapsed)


def test_criterion_7_lifting_properties():
    start = time.time()
    cases = [
        Ideal.from_strings(PolyRing(("x", "y"), P), ["x^2", "x*y", "y^2"]),
        Ideal.from_strings(PolyRing(("x", "y", "z"), P),
                           ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]),
    ]
    for seed in range(8):
        rng = random.Random(700 + seed)
        n = 2 + seed % 2
        ring = PolyRing(tuple("xyz"[:n]), P)
        pures = [tuple(rng.randrange(1, 5) if j == i else 0
                       for j in range(n)) for i in range(n)]
        extras = [tuple(rng.randrange(0, 3) for _ in range(n))
                  for _ in range(rng.randrange(0, 3))]
        gens = [ring.monomial(m) for m in pures + extras if sum(m)]
        cases.append(Ideal(ring, gens))
    ok = True
    for i, ideal in enumerate(cases):
        good, cert = verify_lifting(ideal, seed=i)
        ok &= good and cert.get("points_reduced", False)
    elapsed = time.time() - start
    report(7, ok and elapsed < 120, "10 ideals, %.1fs" % elapsed)


def test_criterion_8_involution_of_geometric_links():
    start = time.time()
    ok = True
    for seed in range(20):
        rng = random.Random(8000 + seed)
        if seed % 2 == 0:
            # a reduced pair of points
            ideal = point_ideal(R4, random_point(rng)).intersect(
                point_ideal(R4, random_point(rng)))
            degrees = (1, 2, 2)
        else:
            # a pair of skew lines (a curve of degree 2)
            lines = []
            while len(lines) < 2:
                a = [rng.randrange(P) for _ in range(4)]
                b = [rng.randrange(P) for _ in range(4)]
                cand = Ideal(R4, [R4.linear_form(a), R4.linear_form(b)])
                if cand.codim() == 2:
                    lines.append(cand)
            ideal = lines[0].intersect(lines[1])
            if (lines[0] + lines[1]).codim() < 4:
                continue  # incident pair; the union is not ACM, skip
            degrees = (2, 2)
        try:
            ci, residual = proper_ci_intersection_link(ideal, degrees,
                                                       seed=seed)
        except Exception as exc:
            ok = False
            continue
        good, _, back = link_involution_check(ci, ideal)
        ok &= good and is_geometric_link(ci, ideal.saturate_irrelevant(),
                                         residual)
    elapsed = time.time() - start
    report(8, ok and elapsed < 300, "20 links, %.1fs" % elapsed)


def test_criterion_9_membership_oracle_agreement():
    start = time.time()
    checked = 0
    agreed = 0
    for seed in range(20):
        rng = random.Random(9000 + seed)
        nvars = rng.choice((2, 3, 4))
        ring = PolyRing(tuple("abcd"[:nvars]), P)
        gens = [random_homogeneous(ring, rng.randrange(1, 4), rng)
                for _ in range(rng.randrange(1, 4))]
        gens = [g for g in gens if g]
        if not gens:
            continue
        ideal = Ideal(ring, gens)
        for _ in range(6):
            if rng.random() < 0.5:
                f = sum((g * random_homogeneous(
                    ring, rng.randrange(0, 7 - g.degree()), rng)
                    for g in gens if g.degree() < 6), ring.zero())
            else:
                f = random_homogeneous(ring, rng.randrange(1, 7), rng)
            if not f or not f.is_homogeneous() or f.degree() > 6:
                continue
            checked += 1
            lhs = ideal.contains(f)
            rhs = membership_by_linear_algebra(f, gens, f.degree())
            agreed += lhs == rhs
    elapsed = time.time() - start
    report(9, checked > 0 and agreed == checked,
           "%d/%d agreements, %.1fs" % (agreed, checked, elapsed))
