#!/usr/bin/env python3
"""Sweep of seeded colon-identity instances (I + fJ) : (I, f) = J.

For each seed, draws a random complete intersection I of codimension 2
or 3 in four variables, a larger ideal J = I + one general form, and a
general linear f, then verifies the identity chain exactly.
"""

import argparse
import random
import sys
import time

sys.path.insert(0, "src")

from liaison.ideals import Ideal
from liaison.links import lemma_key_link
from liaison.rings import PolyRing


def random_form(ring, degree, rng):
    out = ring.zero()
    for m in _monomials(ring.nvars, degree):
        c = rng.randrange(ring.prime)
        if c:
            out = out + ring.monomial(m, c)
    return out


def _monomials(n, d):
    if n == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _monomials(n - 1, d - e):
            yield (e,) + rest


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--prime", type=int, default=32003)
    ns = ap.parse_args(argv)

    ring = PolyRing(("x0", "x1", "x2", "x3"), ns.prime)
    failures = 0
    start = time.time()
    for i in range(ns.count):
        rng = random.Random("sweep:%d:%d" % (ns.seed, i))
        codim = 2 + i % 2
        while True:
            gens = [random_form(ring, rng.randrange(2, 4), rng)
                    for _ in range(codim)]
            ideal = Ideal(ring, [g for g in gens if g])
            if len(ideal.generators) == codim and ideal.codim() == codim:
                break
        other = ideal + Ideal(ring, [random_form(
            ring, rng.randrange(1, 3), rng)])
        f = random_form(ring, 1, rng)
        _, step = lemma_key_link(ideal, f, other)
        status = "ok" if step.passed() else "FAILED"
        failures += not step.passed()
        print("instance %2d (codim %d): %s" % (i, codim, status))
    print("%d/%d identities verified in %.1fs"
          % (ns.count - failures, ns.count, time.time() - start))
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
