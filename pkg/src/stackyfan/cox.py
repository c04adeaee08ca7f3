"""Squarefree monomial ideals of the Cox construction.

A squarefree monomial is identified with its support (a frozenset of ray
indices) and an ideal with the antichain of its minimal generators.  The
empty support is the monomial 1, so ``(frozenset(),)`` is the unit ideal.
Coordinate subspace arrangements are lists of ray-index sets J, each
standing for V(x_j : j in J).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .cone import Cone
from .errors import ZeroCone
from .fan import Fan

Support = frozenset


def _sort(sets: Iterable[frozenset]) -> tuple[frozenset, ...]:
    return tuple(sorted(set(sets), key=lambda s: (len(s), sorted(s))))


def minimalize(sets: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    """Inclusion-minimal members of a family of sets."""
    sets = {frozenset(s) for s in sets}
    return _sort(s for s in sets if not any(t < s for t in sets))


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    generators: tuple[Support, ...]

    def __init__(self, generators: Iterable[Iterable[int]] = ()):
        object.__setattr__(self, "generators", minimalize(generators))

    @property
    def is_unit(self) -> bool:
        return frozenset() in self.generators

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains_monomial(self, m: Iterable[int]) -> bool:
        m = frozenset(m)
        return any(g <= m for g in self.generators)

    def __and__(self, other: "SquarefreeMonomialIdeal") -> "SquarefreeMonomialIdeal":
        return ideal_intersect(self, other)

    def __add__(self, other: "SquarefreeMonomialIdeal") -> "SquarefreeMonomialIdeal":
        return SquarefreeMonomialIdeal(self.generators + other.generators)

    def as_lists(self) -> list[list[int]]:
        return [sorted(g) for g in self.generators]

    def __str__(self):
        if self.is_unit:
            return "<1>"
        if self.is_zero:
            return "<0>"
        return "<" + ", ".join("*".join(f"x{i}" for i in sorted(g)) for g in self.generators) + ">"


def ideal_intersect(I: SquarefreeMonomialIdeal, J: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    # lcm of squarefree monomials is the union of supports
    return SquarefreeMonomialIdeal(a | b for a in I.generators for b in J.generators)


def ideal_contains_monomial(I: SquarefreeMonomialIdeal, m: Iterable[int]) -> bool:
    return I.contains_monomial(m)


def minimal_primes(I: SquarefreeMonomialIdeal) -> tuple[frozenset, ...]:
    """Minimal primes p_J of ``I``, as the minimal transversals J of its generators.

    Berge's incremental algorithm: fold in one generator at a time, keeping
    only minimal hitting sets.
    """
    transversals: set[frozenset] = {frozenset()}
    for g in I.generators:
        nxt = set()
        for T in transversals:
            if T & g:
                nxt.add(T)
            else:
                nxt.update(T | {x} for x in g)
        transversals = set(minimalize(nxt))
    return _sort(transversals)


# ---------------------------------------------------------------------------
# the Cox construction


def irrelevant_ideal(f: Fan) -> SquarefreeMonomialIdeal:
    """B = < x^sigma-hat : sigma maximal >."""
    everything = frozenset(range(f.n_rays))
    return SquarefreeMonomialIdeal(everything - M for M in f.max_cones)


def excluded_locus(f: Fan) -> tuple[frozenset, ...]:
    """Components of Z_Sigma = V(B); the Cox space is A^n minus their union."""
    return minimal_primes(irrelevant_ideal(f))


def coordinate_subspace(s: Cone) -> tuple[frozenset, ...]:
    """L_sigma as a component list: the single component sigma(1)."""
    return (s.ray_set,)


def _nonzero_cone(f: Fan, s) -> Cone:
    c = f.cone(s.ray_set if isinstance(s, Cone) else s)
    if not c.rays:
        raise ZeroCone("the zero cone has no saturation ideal")
    return c


def local_saturation_ideal(f: Fan, mu, s) -> SquarefreeMonomialIdeal:
    """I~_{mu,sigma}: products over mu(1) minus tau(1) for faces tau of mu not containing sigma."""
    mu = f.cone(mu.ray_set if isinstance(mu, Cone) else mu)
    S = _nonzero_cone(f, s).ray_set
    return SquarefreeMonomialIdeal(mu.ray_set - tau for tau in mu.face_ray_sets if not S <= tau)


def saturation_ideal(f: Fan, s, maximal_only: bool = True) -> SquarefreeMonomialIdeal:
    """I~_sigma, the intersection of I~_{mu,sigma} over cones mu containing sigma.

    Restricting to maximal mu gives the same ideal; ``maximal_only=False``
    runs over every containing cone.
    """
    c = _nonzero_cone(f, s)
    mus = f.maximal_cones_containing(c) if maximal_only else f.cones_containing(c)
    ideal = None
    for mu in mus:
        local = local_saturation_ideal(f, mu, c)
        ideal = local if ideal is None else ideal & local
    return ideal


def saturation_components(f: Fan, s) -> tuple[frozenset, ...]:
    """Components of L~_sigma = V(I~_sigma)."""
    return minimal_primes(saturation_ideal(f, s))


def saturation_components_oracle(f: Fan, s) -> tuple[frozenset, ...]:
    """Components of L~_sigma by exhaustive search over ray subsets.

    J is a candidate when J lies in a maximal cone mu containing sigma and
    the smallest face of mu containing J contains sigma.  Independent of
    the ideal machinery; exponential in the cone size.
    """
    c = _nonzero_cone(f, s)
    hits = []
    for mu in f.maximal_cones_containing(c):
        rays = sorted(mu.ray_set)
        for k in range(len(rays) + 1):
            for J in combinations(rays, k):
                if c.ray_set <= mu.minimal_face_containing(J):
                    hits.append(frozenset(J))
    return minimalize(hits)


def is_saturated(f: Fan, s) -> bool:
    """Whether L~_sigma = L_sigma, read off the saturation ideal."""
    c = _nonzero_cone(f, s)
    return saturation_components(f, c) == (c.ray_set,)


def is_saturated_by_cones(f: Fan, s) -> bool:
    """Whether every cone containing sigma is simplicial."""
    c = _nonzero_cone(f, s)
    return all(mu.is_simplicial for mu in f.cones_containing(c))
