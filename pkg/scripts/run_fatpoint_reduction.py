#!/usr/bin/env python3
"""Run the two-link reduction pipeline on a fat point scheme.

Examples:
    python scripts/run_fatpoint_reduction.py --points 1,0,0,0:2
    python scripts/run_fatpoint_reduction.py \
        --points 1,0,0,0:2 --points 0,1,0,0:1 --double-step --seed 3
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

sys.path.insert(0, "src")

from liaison.fatpoints import (DEFAULT_PRIME, FatPointScheme, PointP3,
                               default_ring, reduce_to_reduced,
                               theorem32_double_step)
from liaison.ideals import GenericityError


@dataclass
class RunConfig:
    points: list = field(default_factory=list)  # (coords, mult) pairs
    prime: int = DEFAULT_PRIME
    seed: int = 0
    double_step: bool = False
    json_out: str = None


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", action="append", default=[],
                    metavar="C0,C1,C2,C3:MULT",
                    help="one fat point; repeat for more")
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--double-step", action="store_true",
                    help="run one two-link step instead of full reduction")
    ap.add_argument("--json-out", default=None)
    ns = ap.parse_args(argv)
    pts = []
    for entry in ns.points or ["1,0,0,0:2"]:
        coords, _, mult = entry.partition(":")
        pts.append(([int(c) for c in coords.split(",")],
                    int(mult) if mult else 1))
    return RunConfig(points=pts, prime=ns.prime, seed=ns.seed,
                     double_step=ns.double_step, json_out=ns.json_out)


def main(argv=None):
    cfg = parse_args(argv)
    ring = default_ring(cfg.prime)
    scheme = FatPointScheme(tuple(
        (PointP3.make(c, cfg.prime), m) for c, m in cfg.points))
    print("input scheme: %s  (degree %d)"
          % (", ".join("%s^%d" % (p, m) for p, m in scheme.points),
             scheme.degree()))
    try:
        if cfg.double_step:
            rep = theorem32_double_step(scheme, seed=cfg.seed, ring=ring)
        else:
            rep = reduce_to_reduced(scheme, seed=cfg.seed, ring=ring)
    except GenericityError as exc:
        print("genericity exhausted: %s" % exc)
        return 3
    print(rep.narrative())
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(rep.to_json(), fh, indent=2, sort_keys=True)
        print("wrote %s" % cfg.json_out)
    return 0 if rep.ok() else 2


if __name__ == "__main__":
    sys.exit(main())
