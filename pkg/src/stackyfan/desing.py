"""Drivers: canonical partial desingularization and divisorial simplicialization."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Optional, Sequence

from .cone import Cone
from .cox import is_saturated, is_saturated_by_cones, saturation_components
from .errors import InternalInvariantViolation, NonTermination
from .exactlin import AbelianGroupInvariants, Vector
from .stacky import (
    GroupSequenceReport,
    StackyFan,
    group_sequence_check,
    stabilizer_invariants,
    stacky_star_subdivide,
)


class StepKind(str, Enum):
    STACKY_STAR = "stacky_star"
    DIVISORIAL_RAY = "divisorial_ray"


@dataclass(frozen=True)
class SubdivisionStep:
    round: int
    cone_rays: tuple[int, ...]
    new_marker: Vector
    new_ray_index: int
    kind: StepKind

    def to_json(self) -> dict:
        return {
            "round": self.round,
            "kind": self.kind.value,
            "cone_rays": list(self.cone_rays),
            "new_marker": list(self.new_marker),
            "new_ray_index": self.new_ray_index,
        }


@dataclass
class SubdivisionTrace:
    steps: list[SubdivisionStep] = field(default_factory=list)
    ns_per_round: list[int] = field(default_factory=list)
    mode: str = "stacky"

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "ns_per_round": list(self.ns_per_round),
            "steps": [s.to_json() for s in self.steps],
        }


def _no_common_cone(sf: StackyFan, S: Sequence[Cone]) -> bool:
    for a, b in combinations(S, 2):
        union = a.ray_set | b.ray_set
        if any(union <= K for K in sf.fan.all_cones):
            return False
    return True


Permutation = Callable[[list[Cone]], list[Cone]]


def partial_desingularize(
    sf: StackyFan, permute: Optional[Permutation] = None, check: bool = True
) -> tuple[StackyFan, SubdivisionTrace]:
    """Subdivide every minimal non-simplicial cone, round after round, until simplicial.

    Within a round the cones are processed in sorted ray-set order unless
    ``permute`` reorders them.  Since no two of them lie in a common cone
    their stars are disjoint and the order does not affect the result.
    """
    trace = SubdivisionTrace(mode="stacky")
    ns = sf.fan.ns_index()
    trace.ns_per_round.append(ns)
    rnd = 0
    while ns > 0:
        S = sorted(sf.fan.minimal_nonsimplicial_cones(), key=lambda c: sorted(c.rays))
        if not _no_common_cone(sf, S):
            raise InternalInvariantViolation("two minimal non-simplicial cones share a cone")
        if permute is not None:
            S = permute(list(S))
        for sigma in S:
            res = stacky_star_subdivide(sf, sigma, check=check)
            trace.steps.append(
                SubdivisionStep(rnd, tuple(sorted(sigma.rays)), res.new_marker, res.new_ray_index, StepKind.STACKY_STAR)
            )
            sf = res.stacky_fan
        new_ns = sf.fan.ns_index()
        if new_ns >= ns:
            raise InternalInvariantViolation(f"round {rnd} did not lower ns ({ns} -> {new_ns})")
        ns = new_ns
        trace.ns_per_round.append(ns)
        rnd += 1
    return sf, trace


def divisorial_simplicialize(
    sf: StackyFan, ray_order: Optional[Sequence[int]] = None, check: bool = True
) -> tuple[StackyFan, SubdivisionTrace]:
    """Make the fan simplicial by star subdivisions at existing rays only.

    Rays are swept in ``ray_order`` (ascending index by default); a ray is
    used whenever some non-simplicial cone contains it.  Sweeps repeat until
    the fan is simplicial.  Ray directions and markers never change.
    """
    trace = SubdivisionTrace(mode="divisorial")
    order = list(range(sf.n)) if ray_order is None else list(ray_order)
    if sorted(order) != list(range(sf.n)):
        raise ValueError("ray_order must be a permutation of the ray indices")

    def bad_cones(f) -> int:
        return sum(1 for c in f.all_cones.values() if not c.is_simplicial)

    trace.ns_per_round.append(sf.fan.ns_index())
    sweep = 0
    while not sf.fan.is_simplicial():
        before = bad_cones(sf.fan)
        for i in order:
            if any(i in K and not c.is_simplicial for K, c in sf.fan.all_cones.items()):
                res = stacky_star_subdivide(sf, [i], check=check)
                trace.steps.append(
                    SubdivisionStep(sweep, (i,), res.new_marker, res.new_ray_index, StepKind.DIVISORIAL_RAY)
                )
                sf = res.stacky_fan
        after = bad_cones(sf.fan)
        if after and after >= before:
            raise NonTermination(f"sweep {sweep} left {after} non-simplicial cones (was {before})")
        trace.ns_per_round.append(sf.fan.ns_index())
        sweep += 1
    return sf, trace


@dataclass(frozen=True)
class ReichsteinReport:
    cone_rays: tuple[int, ...]
    saturation_components: tuple[frozenset, ...]
    saturated: bool
    stabilizer: AbelianGroupInvariants
    new_marker: Vector
    new_ray_index: int
    group_sequence: Optional[GroupSequenceReport]

    @property
    def pure_blowup(self) -> bool:
        """L~_sigma = L_sigma, so the transform is just the blow-up."""
        return self.saturated


def reichstein_transform_at_cone(sf: StackyFan, s) -> tuple[StackyFan, ReichsteinReport]:
    c = sf.fan.cone(s.ray_set if isinstance(s, Cone) else s)
    comps = saturation_components(sf.fan, c)
    sat = is_saturated(sf.fan, c)
    if sat != is_saturated_by_cones(sf.fan, c):
        raise InternalInvariantViolation(f"saturation tests disagree on {c!r}")
    stab = stabilizer_invariants(sf, c)
    res = stacky_star_subdivide(sf, c)
    seq = group_sequence_check(sf, c, res.stacky_fan) if c.dim >= 2 else None
    report = ReichsteinReport(
        tuple(sorted(c.rays)), comps, sat, stab, res.new_marker, res.new_ray_index, seq
    )
    return res.stacky_fan, report
