"""Stacky fans (N, Sigma, beta): Gale duals, stabilizers, stacky star subdivision."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .cone import Cone
from .errors import (
    InvalidMarker,
    NoPositiveExpression,
    NotInSupport,
    ZeroCone,
    ZeroVector,
)
from .exactlin import (
    AbelianGroupInvariants,
    IntMatrix,
    Vector,
    cokernel_invariants,
    dot,
    hermite_normal_form,
    primitive,
    rank,
    rational_solve,
    smith_normal_form,
)
from .fan import Fan


@dataclass(frozen=True)
class LatticePresentation:
    """N = Z^rank + Z/q_1 + ... + Z/q_s.

    An element is a tuple of ``rank`` integers followed by ``s`` residues.
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(q < 2 for q in self.torsion):
            raise ValueError("torsion orders must be >= 2")

    @property
    def length(self) -> int:
        return self.rank + len(self.torsion)

    def element(self, v: Sequence[int]) -> Vector:
        v = tuple(int(x) for x in v)
        if len(v) != self.length:
            raise InvalidMarker(f"element {v} should have {self.length} coordinates")
        return v[: self.rank] + tuple(x % q for x, q in zip(v[self.rank:], self.torsion))

    def free_part(self, v: Sequence[int]) -> Vector:
        return tuple(v[: self.rank])

    def add(self, *vs: Sequence[int]) -> Vector:
        total = [sum(xs) for xs in zip(*vs)] if vs else [0] * self.length
        return self.element(total)

    def relation_matrix(self) -> IntMatrix:
        """Q: the (rank + s) x s matrix embedding the torsion relations."""
        s = len(self.torsion)
        return IntMatrix.from_rows(
            [[self.torsion[j] if i == self.rank + j else 0 for j in range(s)] for i in range(self.length)],
            cols=s,
        )


def free_lattice(d: int) -> LatticePresentation:
    return LatticePresentation(d)


@dataclass(frozen=True)
class StackyFan:
    lattice: LatticePresentation
    markers: tuple[Vector, ...]
    fan: Fan
    name: str = ""

    def __post_init__(self):
        if len(self.markers) != self.fan.n_rays:
            raise InvalidMarker(f"{len(self.markers)} markers for {self.fan.n_rays} rays")
        if self.fan.ambient_dim != self.lattice.rank:
            raise InvalidMarker("fan and lattice ranks differ")
        for i, v in enumerate(self.markers):
            free = self.lattice.free_part(v)
            if not any(free):
                raise InvalidMarker(f"marker {i} has zero free part")
            if primitive(free) != self.fan.rays[i]:
                raise InvalidMarker(f"marker {i} = {v} does not lie on ray {self.fan.rays[i]}")

    @classmethod
    def from_markers(
        cls,
        markers: Sequence[Sequence[int]],
        max_cones: Iterable[Iterable[int]],
        lattice: Optional[LatticePresentation] = None,
        name: str = "",
        check: bool = True,
    ) -> "StackyFan":
        markers = [tuple(int(x) for x in v) for v in markers]
        if lattice is None:
            lattice = LatticePresentation(len(markers[0]))
        markers = [lattice.element(v) for v in markers]
        rays = []
        for i, v in enumerate(markers):
            free = lattice.free_part(v)
            if not any(free):
                raise InvalidMarker(f"marker {i} has zero free part")
            rays.append(primitive(free))
        return cls(lattice, tuple(markers), Fan.from_data(rays, max_cones, check=check), name)

    @property
    def n(self) -> int:
        return len(self.markers)

    def with_markers(self, markers: Sequence[Sequence[int]]) -> "StackyFan":
        return StackyFan(self.lattice, tuple(self.lattice.element(v) for v in markers), self.fan, self.name)

    def beta_matrix(self) -> IntMatrix:
        """B: columns are the chosen lifts of the markers to Z^(rank + s)."""
        return IntMatrix.from_columns(self.markers, rows=self.lattice.length)

    def canonical(self) -> tuple:
        """Index-free form for comparing fans built in different ray orders."""
        by_ray = {self.fan.rays[i]: self.markers[i] for i in range(self.n)}
        return (self.lattice, self.fan.canonical(), frozenset(by_ray.items()))


# ---------------------------------------------------------------------------
# Gale duality


@dataclass(frozen=True)
class GaleDual:
    """DG(beta) = coker([B Q]^T) and the map beta^vee: (Z^n)^* -> DG(beta).

    ``beta_dual`` has one column per ray.  Its first ``invariants.rank``
    rows are the free coordinates (the weights of the G-action, in Hermite
    normal form); the remaining rows are residues modulo ``invariants.torsion``.
    """

    presentation: IntMatrix
    invariants: AbelianGroupInvariants
    beta_dual: IntMatrix

    @property
    def weights(self) -> list[Vector]:
        return [self.beta_dual.row(i) for i in range(self.invariants.rank)]


def dual_presentation(sf: StackyFan) -> IntMatrix:
    BQ = sf.beta_matrix().hstack(sf.lattice.relation_matrix())
    return BQ.T


def gale_dual(sf: StackyFan) -> GaleDual:
    A = dual_presentation(sf)
    U, D, _ = smith_normal_form(A)
    diag = [D[i, i] if i < min(D.rows, D.cols) else 0 for i in range(A.rows)]
    cols = [U.column(i) for i in range(sf.n)]
    free_rows = [i for i in range(A.rows) if diag[i] == 0]
    tors_rows = [i for i in range(A.rows) if diag[i] > 1]
    free = [tuple(c[i] for c in cols) for i in free_rows]
    free = hermite_normal_form(free)
    if len(free) < len(free_rows):  # pragma: no cover - beta^vee has full rank on the free part
        free += [(0,) * sf.n] * (len(free_rows) - len(free))
    tors = [tuple(c[i] % diag[i] for c in cols) for i in tors_rows]
    inv = AbelianGroupInvariants(len(free_rows), tuple(diag[i] for i in tors_rows))
    return GaleDual(A, inv, IntMatrix.from_rows(free + tors, cols=sf.n))


def stabilizer_invariants(sf: StackyFan, s) -> AbelianGroupInvariants:
    """Invariants of DG(beta)_sigma, the character group of the generic stabilizer on L_sigma.

    DG(beta)_sigma is DG(beta) modulo the images of the dual basis vectors of
    the rays outside sigma.
    """
    c = sf.fan.cone(s.ray_set if isinstance(s, Cone) else s)
    A = dual_presentation(sf)
    # quotienting by e_j for j outside sigma just deletes row j
    keep = sorted(c.ray_set) + list(range(sf.n, A.rows))
    if not keep:
        return AbelianGroupInvariants(0, ())
    return cokernel_invariants(IntMatrix.from_rows([A.row(i) for i in keep], cols=A.cols))


# ---------------------------------------------------------------------------
# subdivision


@dataclass(frozen=True)
class StarResult:
    stacky_fan: StackyFan
    new_marker: Vector
    new_ray_index: int
    cone_rays: frozenset


def stacky_star_subdivide(sf: StackyFan, s, check: bool = True) -> StarResult:
    """Stacky star subdivision at ``s``: v0 is the sum of the markers on s's rays.

    The new ray takes index ``n``.  When ``s`` is a single ray, v0 is that
    ray's own marker, no ray is added and the markers are unchanged.
    """
    J = s.ray_set if isinstance(s, Cone) else frozenset(s)
    c = sf.fan.cone(J)
    if not J:
        raise ZeroCone("cannot subdivide the zero cone")
    v0 = sf.lattice.add(*(sf.markers[i] for i in sorted(J)))
    fan, new, sigma_min = sf.fan.star_subdivide(sf.lattice.free_part(v0), check=check)
    assert sigma_min.ray_set == c.ray_set
    markers = sf.markers + ((v0,) if new == sf.n else ())
    return StarResult(StackyFan(sf.lattice, markers, fan, sf.name), v0, new, J)


@dataclass(frozen=True)
class GroupSequenceReport:
    before: AbelianGroupInvariants
    after: AbelianGroupInvariants

    @property
    def ok(self) -> bool:
        return self.after.rank == self.before.rank + 1 and self.after.torsion == self.before.torsion


def group_sequence_check(sf: StackyFan, s, subdivided: Optional[StackyFan] = None) -> GroupSequenceReport:
    """0 -> DG(beta) -> DG(beta_sigma) -> Z -> 0 forces rank +1 and equal torsion."""
    if subdivided is None:
        subdivided = stacky_star_subdivide(sf, s).stacky_fan
    return GroupSequenceReport(gale_dual(sf).invariants, gale_dual(subdivided).invariants)


def _positive_expression(sigma: Cone, w0: Vector) -> tuple[Fraction, ...]:
    """Strictly positive rational a with w0 = sum a_i w_i over sigma's generators."""
    W = sigma.generators
    d = sigma.ambient_dim
    if sigma.is_simplicial:
        a = rational_solve(IntMatrix.from_columns(W, rows=d), w0)
        if a is None or any(x <= 0 for x in a):
            raise NoPositiveExpression(f"{w0} is not interior to {sigma!r}")
        return a
    # shift w0 towards the barycenter direction, then express the shifted
    # point in a simplicial sub-cone; adding the shift back makes all
    # coefficients strictly positive
    c = tuple(sum(g[j] for g in W) for j in range(d))
    ratios = [Fraction(dot(m, w0), dot(m, c)) for m in sigma.facet_normals if dot(m, c) > 0]
    eps = min(ratios) / 2
    if eps <= 0:
        raise NoPositiveExpression(f"{w0} is not interior to {sigma!r}")
    p = tuple(Fraction(x) - eps * y for x, y in zip(w0, c))
    for sub in combinations(range(len(W)), sigma.dim):
        cols = [W[i] for i in sub]
        if rank(cols) < sigma.dim:
            continue
        sol = _solve_fraction(cols, p)
        if sol is None or any(x < 0 for x in sol):
            continue
        a = [eps] * len(W)
        for i, x in zip(sub, sol):
            a[i] += x
        return tuple(a)
    raise NoPositiveExpression(f"{w0} is not in {sigma!r}")  # pragma: no cover


def _solve_fraction(cols, p):
    den = lcm(*(x.denominator for x in p))
    sol = rational_solve(IntMatrix.from_columns(cols, rows=len(p)), [int(x * den) for x in p])
    return None if sol is None else tuple(x / den for x in sol)


@dataclass(frozen=True)
class WeightedStructure:
    before: StackyFan
    after: StackyFan
    cone_rays: frozenset
    multipliers: dict  # ray index -> b_i for rays of sigma
    b0: int
    new_marker: Vector
    new_ray_index: int


def weighted_structure_for_ray(f: Fan, rho0: Sequence[int]) -> WeightedStructure:
    """Markers v_i = b_i w_i making the subdivision at ``rho0`` a stacky star subdivision.

    With sigma the cone containing ``rho0`` in its relative interior, writes
    b0 * rho0 = sum b_i w_i with positive integers, so that the stacky star
    subdivision of sigma has new marker v0 = b0 * rho0.
    """
    rho0 = tuple(int(x) for x in rho0)
    if not any(rho0):
        raise ZeroVector("rho0 is zero")
    w0 = primitive(rho0)
    if not f.in_support(w0):
        raise NotInSupport(f"{w0} is not in the support")
    sigma = f.minimal_cone_containing_point(w0)
    a = _positive_expression(sigma, w0)
    den = lcm(*(x.denominator for x in a))
    b = [int(x * den) for x in a]
    g = gcd(den, *b)
    b0, b = den // g, [x // g for x in b]
    mult = dict(zip(sigma.rays, b))
    markers = [
        tuple(mult[i] * x for x in f.rays[i]) if i in mult else f.rays[i]
        for i in range(f.n_rays)
    ]
    before = StackyFan(LatticePresentation(f.ambient_dim), tuple(markers), f)
    res = stacky_star_subdivide(before, sigma)
    if res.new_marker != tuple(b0 * x for x in w0):  # pragma: no cover
        raise NoPositiveExpression("cleared expression does not reproduce b0 * rho0")
    return WeightedStructure(before, res.stacky_fan, sigma.ray_set, mult, b0, res.new_marker, res.new_ray_index)
