"""Print the worked examples' computed values side by side with the expected ones."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from stackyfan import io
from stackyfan.cox import irrelevant_ideal, saturation_components, saturation_ideal
from stackyfan.desing import divisorial_simplicialize, partial_desingularize
from stackyfan.stacky import gale_dual, stacky_star_subdivide


@dataclass(frozen=True)
class Config:
    show_traces: bool = False


def row(what: str, got, want) -> None:
    mark = "ok " if got == want else "DIFF"
    print(f"  [{mark}] {what}: {got}" + ("" if got == want else f" (expected {want})"))


def main(cfg: Config) -> None:
    print("ex_4_9")
    sf = io.fixture("ex_4_9").stacky_fan
    res = stacky_star_subdivide(sf, [0, 1])
    f = res.stacky_fan.fan
    row("new marker", res.new_marker, (2, 2))
    row("maximal cones", sorted(sorted(f.rays[i] for i in M) for M in f.max_cones), [[(1, 0), (1, 1)], [(1, 1), (1, 2)]])
    row("DG(beta) before/after", (str(gale_dual(sf).invariants), str(gale_dual(res.stacky_fan).invariants)), ("Z/2", "Z + Z/2"))

    for name, want in (("ex_4_10_a", (2, 0, 2)), ("ex_4_10_b", (3, 1, 2))):
        print(name)
        out, trace = partial_desingularize(io.fixture(name).stacky_fan)
        row("new marker", trace.steps[0].new_marker, want)
        row("ns per round", trace.ns_per_round, [1, 0])

    print("ex_4_11")
    sf = io.fixture("ex_4_11").stacky_fan
    row("weights", gale_dual(sf).weights, [(1, -1, 1, -1)])
    row("B", str(irrelevant_ideal(sf.fan)), "<1>")
    for r in (0, 1):
        row(f"I~ at ray {r}", str(saturation_ideal(sf.fan, [r])), ["<x0*x1, x0*x3>", "<x0*x1, x1*x2>"][r])
        row(f"components at ray {r}", [sorted(J) for J in saturation_components(sf.fan, [r])], [[[0], [1, 3]], [[1], [0, 2]]][r])

    print("ex_6_4_sigma")
    doc = io.fixture("ex_6_4_sigma")
    sf = doc.stacky_fan
    row("ns", sf.fan.ns_index(), 1)
    row("|S|", len(sf.fan.minimal_nonsimplicial_cones()), 3)
    out, trace = partial_desingularize(sf)
    row("stacky markers", [s.new_marker for s in trace.steps], [(4, 4, 2), (4, 2, 4), (2, 4, 4)])
    div, dtrace = divisorial_simplicialize(sf)
    row("divisorial first rays", [doc.label(s.cone_rays[0]) for s in dtrace.steps[:2]], ["a", "b"])
    row("divisorial output = sigma_prime", div.fan.canonical() == io.fixture("ex_6_4_sigma_prime").stacky_fan.fan.canonical(), True)
    row("output = sigma_dprime", div.fan.canonical() == io.fixture("ex_6_4_sigma_dprime").stacky_fan.fan.canonical(), False)
    if cfg.show_traces:
        for s in trace.steps + dtrace.steps:
            print("   ", s.to_json())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show-traces", action="store_true")
    main(Config(show_traces=ap.parse_args().show_traces))
