"""Invariant suite run by ``stackyfan verify`` and by the acceptance tests.

Each check returns a :class:`CheckResult`; a result with violations carries
enough context (cone ray sets, the markers in use) to reproduce the failure.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .cox import (
    is_saturated,
    is_saturated_by_cones,
    saturation_components,
    saturation_components_oracle,
    saturation_ideal,
)
from .desing import divisorial_simplicialize, partial_desingularize
from .stacky import StackyFan, group_sequence_check, stabilizer_invariants, stacky_star_subdivide


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    iters: int = 10
    max_multiplier: int = 6


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    reproducer: Optional[StackyFan] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        s = f"{status} {self.name} ({self.checked} checks)"
        if self.violations:
            s += ": " + "; ".join(self.violations[:3])
        return s


def _cones(sf: StackyFan):
    return list(sf.fan.all_cones.values())


def check_ns_monotone(sf: StackyFan) -> CheckResult:
    """ns never increases when passing to a face."""
    res = CheckResult("ns_face_monotone")
    for c in _cones(sf):
        for F in c.face_ray_sets:
            res.checked += 1
            ns_f = len(F) - c.dim_of(F)
            if ns_f > c.ns:
                res.violations.append(f"face {sorted(F)} of {sorted(c.rays)} has ns {ns_f} > {c.ns}")
    return res


def check_minimal_face_unique(sf: StackyFan) -> CheckResult:
    """A non-simplicial cone has exactly one minimal face of the same ns (brute-force scan)."""
    res = CheckResult("minimal_nonsimplicial_face_unique")
    for c in _cones(sf):
        if c.ns == 0:
            continue
        res.checked += 1
        same = [F for F in c.face_ray_sets if len(F) - c.dim_of(F) == c.ns]
        minimal = [F for F in same if not any(G < F for G in same)]
        if len(minimal) != 1:
            res.violations.append(f"cone {sorted(c.rays)} has minimal faces {[sorted(F) for F in minimal]}")
    return res


def check_minimal_cones_disjoint_stars(sf: StackyFan) -> CheckResult:
    """No cone contains two distinct minimal non-simplicial cones."""
    res = CheckResult("minimal_nonsimplicial_cones_share_no_cone")
    if sf.fan.is_simplicial():
        return res
    S = sf.fan.minimal_nonsimplicial_cones()
    for i, a in enumerate(S):
        for b in S[i + 1:]:
            res.checked += 1
            union = a.ray_set | b.ray_set
            if any(union <= K for K in sf.fan.all_cones):
                res.violations.append(f"{sorted(a.rays)} and {sorted(b.rays)} lie in a common cone")
    return res


def check_stabilizer_rank(sf: StackyFan) -> CheckResult:
    """rank of the generic stabilizer on L_sigma equals ns(sigma), for every cone."""
    res = CheckResult("stabilizer_rank_equals_ns")
    for c in _cones(sf):
        res.checked += 1
        inv = stabilizer_invariants(sf, c)
        if inv.rank != c.ns:
            res.violations.append(f"cone {sorted(c.rays)}: stabilizer rank {inv.rank} != ns {c.ns}")
            res.reproducer = sf
    return res


def check_saturation_oracle(sf: StackyFan) -> CheckResult:
    """V(I~_sigma) components agree with the exhaustive face-span oracle."""
    res = CheckResult("saturation_components_match_oracle")
    for c in _cones(sf):
        if not c.rays:
            continue
        res.checked += 1
        got, want = saturation_components(sf.fan, c), saturation_components_oracle(sf.fan, c)
        if got != want:
            res.violations.append(
                f"cone {sorted(c.rays)}: ideal gives {[sorted(J) for J in got]}, oracle {[sorted(J) for J in want]}"
            )
    return res


def check_saturation_equivalence(sf: StackyFan) -> CheckResult:
    """Ideal-based and cone-based saturation tests agree."""
    res = CheckResult("saturated_iff_containing_cones_simplicial")
    for c in _cones(sf):
        if not c.rays:
            continue
        res.checked += 1
        a, b = is_saturated(sf.fan, c), is_saturated_by_cones(sf.fan, c)
        if a != b:
            res.violations.append(f"cone {sorted(c.rays)}: ideal says {a}, cones say {b}")
    return res


def check_maximal_cones_suffice(sf: StackyFan) -> CheckResult:
    """I~_sigma over maximal containing cones equals I~_sigma over all containing cones."""
    res = CheckResult("saturation_ideal_maximal_cones_suffice")
    for c in _cones(sf):
        if not c.rays:
            continue
        res.checked += 1
        if saturation_ideal(sf.fan, c) != saturation_ideal(sf.fan, c, maximal_only=False):
            res.violations.append(f"cone {sorted(c.rays)}")
    return res


def check_key_inclusion(sf: StackyFan) -> CheckResult:
    """Every saturation component spans (via its minimal cone) a cone containing sigma."""
    res = CheckResult("saturation_components_map_into_orbit_closure")
    for c in _cones(sf):
        if not c.rays:
            continue
        for J in saturation_components(sf.fan, c):
            res.checked += 1
            tau = sf.fan.minimal_cone_containing_rays(J)
            if tau is None or not c.ray_set <= tau.ray_set:
                res.violations.append(f"component {sorted(J)} of {sorted(c.rays)}")
    return res


def check_new_cones_drop_ns(sf: StackyFan) -> CheckResult:
    """After subdividing a minimal non-simplicial cone, every new cone has smaller ns."""
    res = CheckResult("new_cones_have_smaller_ns")
    if sf.fan.is_simplicial():
        return res
    for sigma in sf.fan.minimal_nonsimplicial_cones():
        out = stacky_star_subdivide(sf, sigma)
        new = out.new_ray_index
        for K, c in out.stacky_fan.fan.all_cones.items():
            if new in K:
                res.checked += 1
                if c.ns >= sigma.ns:
                    res.violations.append(f"new cone {sorted(K)} has ns {c.ns} >= {sigma.ns}")
    return res


def check_drivers(sf: StackyFan) -> CheckResult:
    """Both drivers end simplicial, ns drops strictly per round, group sequences are exact."""
    res = CheckResult("drivers_terminate_with_exact_group_sequences")
    cur = sf
    out, trace = partial_desingularize(sf)
    ns = trace.ns_per_round
    res.checked += 1
    if any(b >= a for a, b in zip(ns, ns[1:])) or ns[-1] != 0 or not out.fan.is_simplicial():
        res.violations.append(f"stacky driver ns sequence {ns}")
    if len(ns) - 1 > sf.fan.ns_index():
        res.violations.append(f"stacky driver used {len(ns) - 1} rounds for ns {sf.fan.ns_index()}")
    for step in trace.steps:
        sub = stacky_star_subdivide(cur, step.cone_rays)
        if len(step.cone_rays) >= 2:
            res.checked += 1
            report = group_sequence_check(cur, step.cone_rays, sub.stacky_fan)
            if not report.ok:
                res.violations.append(f"step at {list(step.cone_rays)}: {report.before} -> {report.after}")
        cur = sub.stacky_fan
    for i in range(sf.n):
        res.checked += 1
        if out.markers[i] != sf.markers[i]:
            res.violations.append(f"marker {i} changed")
    dout, dtrace = divisorial_simplicialize(sf)
    res.checked += 1
    if not dout.fan.is_simplicial() or dout.markers != sf.markers or dout.fan.rays != sf.fan.rays:
        res.violations.append("divisorial driver changed rays or markers, or did not finish")
    if res.violations:
        res.reproducer = sf
    return res


STRUCTURAL_CHECKS: list[Callable[[StackyFan], CheckResult]] = [
    check_ns_monotone,
    check_minimal_face_unique,
    check_minimal_cones_disjoint_stars,
    check_saturation_oracle,
    check_saturation_equivalence,
    check_maximal_cones_suffice,
    check_key_inclusion,
    check_new_cones_drop_ns,
    check_drivers,
]


def random_rescaling(sf: StackyFan, rng: random.Random, max_multiplier: int = 6) -> StackyFan:
    """Multiply each marker by a random positive integer (fan unchanged)."""
    lat = sf.lattice
    markers = []
    for v in sf.markers:
        k = rng.randint(1, max_multiplier)
        markers.append(lat.element([k * x for x in v]))
    return sf.with_markers(markers)


def run_suite(sf: StackyFan, config: VerifyConfig = VerifyConfig()) -> list[CheckResult]:
    results = [check(sf) for check in STRUCTURAL_CHECKS]
    rng = random.Random(config.seed)
    stab = check_stabilizer_rank(sf)
    for _ in range(config.iters):
        r = check_stabilizer_rank(random_rescaling(sf, rng, config.max_multiplier))
        stab.checked += r.checked
        stab.violations += r.violations
        stab.reproducer = stab.reproducer or r.reproducer
    stab.name = f"stabilizer_rank_equals_ns[+{config.iters} rescalings]"
    results.insert(3, stab)
    return results
