"""Stabilizer rank vs ns under random marker rescalings, with torsion statistics.

The rank must always equal ns; the torsion of the stabilizer varies with the
markers, and this script tabulates how often each torsion pattern appears.
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from stackyfan import io
from stackyfan.stacky import stabilizer_invariants
from stackyfan.verify import random_rescaling


@dataclass(frozen=True)
class Config:
    seed: int = 0
    iters: int = 200
    max_multiplier: int = 6


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    bad = 0
    for name in io.FIXTURES:
        base = io.fixture(name).stacky_fan
        torsion = Counter()
        checked = 0
        for _ in range(cfg.iters):
            sf = random_rescaling(base, rng, cfg.max_multiplier)
            for c in sf.fan.cones:
                inv = stabilizer_invariants(sf, c)
                checked += 1
                bad += inv.rank != c.ns
                torsion[len(inv.torsion)] += 1
        dist = ", ".join(f"{k} factors: {v}" for k, v in sorted(torsion.items()))
        print(f"{name:22s} cones checked {checked:6d}  torsion [{dist}]")
    print(f"rank != ns violations: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--iters", type=int, default=200)
    ap.add_argument("--max-multiplier", type=int, default=6)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.seed, a.iters, a.max_multiplier)))
