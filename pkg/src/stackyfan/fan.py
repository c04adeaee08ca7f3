"""Fans: validation, non-simplicial index, star subdivision, orbit-cone queries.

A fan is stored by its rays (primitive vectors, identified by position) and
its maximal cones (ray-index sets).  Every face is materialized eagerly as a
:class:`~stackyfan.cone.Cone` keyed by its ray set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .cone import Cone, extreme_rays
from .errors import (
    ConeNotInFan,
    FanValidationError,
    InternalInvariantViolation,
    NotInSupport,
    SimplicialInput,
    ValidationError,
    ZeroVector,
)
from .exactlin import Vector, content, primitive, rank

RaySet = frozenset


def _key(s: Iterable[int]) -> tuple:
    s = sorted(s)
    return (len(s), s)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    cones: tuple[tuple[int, ...], ...] = ()

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, detail, *cones):
        self.violations.append(Violation(kind, detail, tuple(tuple(sorted(c)) for c in cones)))

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]


def _intersection_is_common_face(c1: Cone, c2: Cone) -> bool:
    common = c1.ray_set & c2.ray_set
    if common not in c1.face_ray_sets or common not in c2.face_ray_sets:
        return False
    constraints = list(c1.facet_normals) + list(c2.facet_normals)
    for e in c1.equations + c2.equations:
        constraints += [e, tuple(-x for x in e)]
    if not constraints:
        return True
    allowed = {g for r, g in zip(c1.rays, c1.generators) if r in common}
    return all(r in allowed for r in extreme_rays(constraints, c1.ambient_dim))


def validate(rays: Sequence[Sequence[int]], max_cones: Iterable[Iterable[int]]) -> ValidationReport:
    """Check every fan axiom; collect all violations rather than stopping at one."""
    report = ValidationReport()
    rays = [tuple(int(x) for x in r) for r in rays]
    max_cones = [frozenset(c) for c in max_cones]
    d = len(rays[0]) if rays else 0
    if any(len(r) != d for r in rays):
        report.add("DimensionMismatch", "rays of different lengths")
        return report
    for i, r in enumerate(rays):
        if not any(r):
            report.add("ZeroRay", f"ray {i} is zero")
        elif content(r) != 1:
            report.add("NonPrimitiveRay", f"ray {i} = {r} is not primitive")
    if len(set(rays)) != len(rays):
        report.add("DuplicateRay", "two rays coincide")
    if not report.ok:
        return report
    if rank(rays) < d:
        report.add("RaysDontSpan", f"rays span a rank-{rank(rays)} subspace of R^{d}")
    used = set().union(*max_cones) if max_cones else set()
    for i in range(len(rays)):
        if i not in used:
            report.add("UnusedRay", f"ray {i} lies in no maximal cone")
    for c in max_cones:
        if not c <= set(range(len(rays))):
            report.add("BadRayIndex", f"cone {sorted(c)} references unknown rays", c)
    if not report.ok:
        return report
    built = {}
    for c in max_cones:
        try:
            built[c] = Cone.from_generators([rays[i] for i in sorted(c)], sorted(c), ambient_dim=d)
        except ValidationError as exc:
            report.add(exc.kind, str(exc), c)
    for a, b in combinations(sorted(built, key=_key), 2):
        if not _intersection_is_common_face(built[a], built[b]):
            report.add(
                "IntersectionNotFace",
                f"cones {sorted(a)} and {sorted(b)} do not meet in a common face",
                a,
                b,
            )
    return report


@dataclass(frozen=True)
class Fan:
    rays: tuple[Vector, ...]
    max_cones: tuple[RaySet, ...]
    ambient_dim: int
    all_cones: dict = field(compare=False, repr=False, hash=False)

    @classmethod
    def from_data(cls, rays: Sequence[Sequence[int]], max_cones: Iterable[Iterable[int]], check: bool = True) -> "Fan":
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        cones = {frozenset(c) for c in max_cones}
        if check:
            report = validate(rays, cones)
            if not report.ok:
                raise FanValidationError(report)
        cones = [c for c in cones if not any(c < o for o in cones)]
        cones.sort(key=_key)
        d = len(rays[0])
        all_cones: dict[RaySet, Cone] = {}
        for c in cones:
            top = Cone.from_generators([rays[i] for i in sorted(c)], sorted(c), ambient_dim=d, check_extremal=False)
            for F in top.face_ray_sets:
                if F not in all_cones:
                    all_cones[F] = top if F == top.ray_set else top.subcone(F)
        all_cones = dict(sorted(all_cones.items(), key=lambda kv: _key(kv[0])))
        return cls(rays, tuple(cones), d, all_cones)

    # -- queries -------------------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def cones(self) -> list[Cone]:
        return list(self.all_cones.values())

    def cone(self, ray_set: Iterable[int]) -> Cone:
        J = frozenset(ray_set)
        try:
            return self.all_cones[J]
        except KeyError:
            raise ConeNotInFan(f"no cone with rays {sorted(J)}") from None

    def __contains__(self, ray_set) -> bool:
        return frozenset(ray_set) in self.all_cones

    def ns_index(self) -> int:
        return max((c.ns for c in self.all_cones.values()), default=0)

    def is_simplicial(self) -> bool:
        return self.ns_index() == 0

    def minimal_nonsimplicial_cones(self) -> list[Cone]:
        k = self.ns_index()
        if k == 0:
            raise SimplicialInput("fan is simplicial")
        hits = [J for J, c in self.all_cones.items() if c.ns == k]
        return [self.all_cones[J] for J in hits if not any(K < J for K in hits)]

    def cones_containing(self, s) -> list[Cone]:
        """All cones having ``s`` as a face (``s`` included): the combinatorial V(s)."""
        J = s.ray_set if isinstance(s, Cone) else frozenset(s)
        if J not in self.all_cones:
            raise ConeNotInFan(f"no cone with rays {sorted(J)}")
        return [c for K, c in self.all_cones.items() if J <= K]

    def maximal_cones_containing(self, s) -> list[Cone]:
        J = s.ray_set if isinstance(s, Cone) else frozenset(s)
        self.cone(J)
        return [self.all_cones[M] for M in self.max_cones if J <= M]

    def minimal_cone_containing_rays(self, J: Iterable[int]) -> Optional[Cone]:
        J = frozenset(J)
        hits = [K for K in self.all_cones if J <= K]
        if not hits:
            return None
        meet = frozenset.intersection(*hits)
        return self.all_cones[meet]

    def minimal_cone_containing_point(self, x: Sequence) -> Cone:
        """The unique cone with ``x`` in its relative interior."""
        for c in self.all_cones.values():  # ascending dimension order
            if c.in_relative_interior(x):
                return c
        raise NotInSupport(f"{tuple(x)} is not in the support of the fan")

    def in_support(self, x: Sequence) -> bool:
        return any(self.all_cones[M].contains_point(x) for M in self.max_cones)

    def ray_index(self, v: Sequence[int]) -> Optional[int]:
        try:
            return self.rays.index(primitive(v))
        except ValueError:
            return None

    def canonical(self) -> frozenset:
        """Index-free description: the set of maximal cones as sets of ray vectors."""
        return frozenset(frozenset(self.rays[i] for i in M) for M in self.max_cones)

    # -- subdivision ---------------------------------------------------------

    def star_subdivide(self, v0: Sequence[int], check: bool = True) -> tuple["Fan", int, Cone]:
        """Star subdivision at the ray through ``v0``.

        Returns ``(new_fan, new_ray_index, sigma_min)``.  A genuinely new ray
        is appended at index ``n``; if ``v0`` lies on an existing ray that
        index is reused.
        """
        v0 = tuple(int(x) for x in v0)
        if not any(v0):
            raise ZeroVector("cannot subdivide at the zero vector")
        sigma = self.minimal_cone_containing_point(v0)
        w0 = primitive(v0)
        rays = list(self.rays)
        if sigma.dim == 1:
            new = sigma.rays[0]
            if rays[new] != w0:  # pragma: no cover - relative interior of a ray
                raise InternalInvariantViolation("point on a ray is not a multiple of it")
        else:
            new = len(rays)
            rays.append(w0)
        S = sigma.ray_set
        out: set[RaySet] = set()
        for M in self.max_cones:
            if not S <= M:
                out.add(M)
                continue
            for tau in self.all_cones[M].face_ray_sets:
                if not S <= tau:
                    out.add(tau | {new})
        out = {c for c in out if not any(c < o for o in out)}
        return Fan.from_data(rays, out, check=check), new, sigma

    def replacement_cones(self, sigma: RaySet, new: int) -> dict[RaySet, list[RaySet]]:
        """For each cone mu ⊇ sigma, the new cones Cone(tau, new) with sigma ⊄ tau."""
        out = {}
        for K, c in self.all_cones.items():
            if sigma <= K:
                out[K] = [tau | {new} for tau in c.face_ray_sets if not sigma <= tau]
        return out


def star_subdivide(f: Fan, v0: Sequence[int]) -> Fan:
    return f.star_subdivide(v0)[0]


def sample_points(c: Cone, count: int, rng) -> list[tuple[Fraction, ...]]:
    """Random rational points of ``c`` as positive combinations of its generators."""
    pts = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(0, 20), rng.randint(1, 7)) for _ in c.generators]
        if not any(coeffs):
            coeffs[0] = Fraction(1)
        pts.append(tuple(sum(a * g[j] for a, g in zip(coeffs, c.generators)) for j in range(c.ambient_dim)))
    return pts
