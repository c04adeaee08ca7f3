"""Strongly convex rational polyhedral cones given by ray generators.

Facets are found by an all-integer double description run on the dual cone,
inside the saturated linear span of the generators, so cones of any
dimension in any ambient rank are handled uniformly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import InternalInvariantViolation, NonExtremalGenerator, NotStronglyConvex, SimplicialInput, ZeroVector
from .exactlin import (
    IntMatrix,
    Vector,
    dot,
    integer_kernel_basis,
    left_inverse,
    primitive,
    rank,
    rational_solve,
    span_lattice_basis,
)


def extreme_rays(constraints: Sequence[Sequence[int]], k: int) -> list[Vector]:
    """Extreme rays of the pointed cone ``{y in R^k : <a, y> >= 0}``.

    Incremental double description with the combinatorial adjacency test.
    ``constraints`` must have rank ``k`` (otherwise the cone has a lineality
    space and ``ValueError`` is raised).  Rays come back primitive and sorted.
    """
    constraints = [tuple(a) for a in constraints]
    if k == 0:
        return []
    basis: list[int] = []
    for i, a in enumerate(constraints):
        if rank([constraints[j] for j in basis] + [a]) > len(basis):
            basis.append(i)
            if len(basis) == k:
                break
    if len(basis) < k:
        raise ValueError("constraint system has a lineality space")

    A_B = IntMatrix.from_rows([constraints[i] for i in basis], cols=k)
    rays: list[Vector] = []
    zeros: list[frozenset[int]] = []
    for j in range(k):
        e = [int(i == j) for i in range(k)]
        sol = rational_solve(A_B, e)
        den = lcm(*(x.denominator for x in sol))
        rays.append(primitive([int(x * den) for x in sol]))
        zeros.append(frozenset(basis[i] for i in range(k) if i != j))

    processed = set(basis)
    for idx, a in enumerate(constraints):
        if idx in processed:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | {idx} for i in zer]
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if any(q != p and q != n and common <= zeros[q] for q in range(len(rays))):
                    continue
                r = tuple(vals[p] * x - vals[n] * y for x, y in zip(rays[n], rays[p]))
                new_rays.append(primitive(r))
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
        processed.add(idx)
    return sorted(set(rays))


@dataclass(frozen=True)
class Cone:
    """A pointed rational cone together with its dual description.

    ``rays`` are indices into some ambient ray table and ``generators`` the
    matching primitive vectors.  Use :meth:`from_generators` to build one;
    it validates strong convexity and extremality of every generator.
    """

    rays: tuple[int, ...]
    generators: tuple[Vector, ...]
    ambient_dim: int
    dim: int = field(compare=False)
    facet_normals: tuple[Vector, ...] = field(compare=False, repr=False)
    equations: tuple[Vector, ...] = field(compare=False, repr=False)
    span_facet_normals: tuple[Vector, ...] = field(compare=False, repr=False)
    span_basis: tuple[Vector, ...] = field(compare=False, repr=False)

    @classmethod
    def from_generators(
        cls,
        generators: Iterable[Sequence[int]],
        rays: Optional[Sequence[int]] = None,
        ambient_dim: Optional[int] = None,
        check_extremal: bool = True,
    ) -> "Cone":
        gens = [tuple(int(x) for x in g) for g in generators]
        if rays is None:
            rays = range(len(gens))
        rays = tuple(rays)
        if len(rays) != len(gens):
            raise ValueError("one ray index per generator")
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient dimension needed for the zero cone")
            ambient_dim = len(gens[0])
        if any(not any(g) for g in gens):
            raise ZeroVector("zero generator")
        gens = [primitive(g) for g in gens]
        order = sorted(range(len(rays)), key=lambda i: rays[i])
        rays = tuple(rays[i] for i in order)
        gens = tuple(gens[i] for i in order)

        K = span_lattice_basis(gens, ambient_dim)
        k = len(K)
        if gens:
            P = left_inverse(K, ambient_dim)
            coords = [tuple(dot(row, g) for row in P) for g in gens]
            try:
                normals_y = extreme_rays(coords, k)
            except ValueError:  # pragma: no cover - gens always span the span
                raise NotStronglyConvex(f"generators {gens} do not span their span?")
            if rank(normals_y) < k:
                raise NotStronglyConvex(f"cone on {list(gens)} contains a line")
            normals = sorted(
                {tuple(sum(m[i] * P[i][j] for i in range(k)) for j in range(ambient_dim)) for m in normals_y}
            )
            equations = integer_kernel_basis(IntMatrix.from_rows(gens, cols=ambient_dim)).columns()
        else:
            normals_y, normals, P = [], [], []
            equations = [tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)]
        cone = cls(
            rays=rays,
            generators=gens,
            ambient_dim=ambient_dim,
            dim=k,
            facet_normals=tuple(normals),
            equations=tuple(equations),
            span_facet_normals=tuple(sorted(normals_y)),
            span_basis=tuple(K),
        )
        if check_extremal:
            for i in range(len(rays)):
                face = cone.minimal_face_containing([rays[i]])
                if face != frozenset([rays[i]]):
                    raise NonExtremalGenerator(
                        f"generator {gens[i]} (ray {rays[i]}) does not span an extremal ray"
                    )
        return cone

    # -- combinatorics -------------------------------------------------------

    @property
    def ray_set(self) -> frozenset[int]:
        return frozenset(self.rays)

    @cached_property
    def facet_ray_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(r for r, g in zip(self.rays, self.generators) if dot(m, g) == 0)
            for m in self.facet_normals
        )

    @cached_property
    def face_ray_sets(self) -> tuple[frozenset[int], ...]:
        """Ray sets of all faces, from ``{0}`` up to the cone, sorted by (size, rays)."""
        faces = {self.ray_set}
        for F in self.facet_ray_sets:
            faces |= {X & F for X in faces}
        return tuple(sorted(faces, key=lambda s: (len(s), sorted(s))))

    def minimal_face_containing(self, ray_subset: Iterable[int]) -> frozenset[int]:
        J = frozenset(ray_subset)
        if not J <= self.ray_set:
            raise ValueError(f"{sorted(J)} not among the rays of this cone")
        out = self.ray_set
        for F in self.facet_ray_sets:
            if J <= F:
                out &= F
        return out

    def subcone(self, ray_subset: Iterable[int]) -> "Cone":
        J = frozenset(ray_subset)
        gens = [g for r, g in zip(self.rays, self.generators) if r in J]
        return Cone.from_generators(
            gens, [r for r in self.rays if r in J], ambient_dim=self.ambient_dim, check_extremal=False
        )

    def faces(self) -> list["Cone"]:
        return [self.subcone(F) for F in self.face_ray_sets]

    def dim_of(self, ray_subset: Iterable[int]) -> int:
        J = frozenset(ray_subset)
        return rank([g for r, g in zip(self.rays, self.generators) if r in J])

    @property
    def ns(self) -> int:
        return len(self.rays) - self.dim

    @property
    def is_simplicial(self) -> bool:
        return self.ns == 0

    # -- geometry ------------------------------------------------------------

    def contains_point(self, x: Sequence) -> bool:
        x = [Fraction(v) for v in x]
        return all(dot(e, x) == 0 for e in self.equations) and all(
            dot(m, x) >= 0 for m in self.facet_normals
        )

    def in_relative_interior(self, x: Sequence) -> bool:
        x = [Fraction(v) for v in x]
        return all(dot(e, x) == 0 for e in self.equations) and all(
            dot(m, x) > 0 for m in self.facet_normals
        )

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, dim={self.dim})"


def cone(generators: Iterable[Sequence[int]], rays: Optional[Sequence[int]] = None, ambient_dim=None) -> Cone:
    return Cone.from_generators(generators, rays, ambient_dim)


def facet_description(generators: Iterable[Sequence[int]]) -> list[Vector]:
    """Primitive inner facet normals of the cone on ``generators``, lex sorted.

    For a cone that is not full-dimensional the normals are lifts of the
    facet normals inside the saturated span; pair them with ``Cone.equations``.
    """
    return list(Cone.from_generators(generators, check_extremal=False).facet_normals)


def faces(c: Cone) -> list[Cone]:
    return c.faces()


def ns_index(c: Cone) -> int:
    return c.ns


def minimal_nonsimplicial_face(c: Cone) -> Cone:
    k = c.ns
    if k == 0:
        raise SimplicialInput(f"{c!r} is simplicial")
    candidates = [F for F in c.face_ray_sets if len(F) - c.dim_of(F) == k]
    minimal = [F for F in candidates if not any(G < F for G in candidates)]
    if len(minimal) != 1:
        raise InternalInvariantViolation(f"{len(minimal)} minimal faces with ns = {k} in {c!r}")
    return c.subcone(minimal[0])


def is_face_of(t: Cone, c: Cone) -> bool:
    """Whether ``t`` is a face of ``c``, compared by generator vectors."""
    index = {g: r for r, g in zip(c.rays, c.generators)}
    try:
        J = frozenset(index[g] for g in t.generators)
    except KeyError:
        return False
    return J in c.face_ray_sets


def contains_point(c: Cone, x: Sequence) -> bool:
    return c.contains_point(x)
