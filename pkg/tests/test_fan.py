import random

import pytest

from stackyfan import io
from stackyfan.errors import ConeNotInFan, FanValidationError, NotInSupport, ZeroVector
from stackyfan.fan import Fan, sample_points, star_subdivide, validate

CUBE_RAYS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]


def p1cubed() -> Fan:
    cones = []
    for s0 in (0, 3):
        for s1 in (1, 4):
            for s2 in (2, 5):
                cones.append([s0, s1, s2])
    return Fan.from_data(CUBE_RAYS, cones)


def test_validation_collects_all_violations():
    rays = [(1, 0), (0, 1), (1, 1), (2, 2)]
    report = validate(rays, [[0, 1], [0, 2]])
    kinds = report.kinds()
    assert "NonPrimitiveRay" in kinds
    report = validate([(1, 0), (0, 1), (1, 1)], [[0, 1], [0, 2]])
    assert report.kinds() == ["IntersectionNotFace"]
    report = validate([(1, 0, 0), (0, 1, 0)], [[0, 1]])
    assert report.kinds() == ["RaysDontSpan"]
    report = validate([(1, 0), (0, 1), (-1, 0)], [[0, 1]])
    assert report.kinds() == ["UnusedRay"]


def test_fan_validation_error_kind():
    with pytest.raises(FanValidationError) as exc:
        Fan.from_data([(1, 0), (0, 1), (1, 1)], [[0, 1], [0, 2]])
    assert exc.value.kind == "IntersectionNotFace"


def test_overlapping_cones_with_disjoint_rays():
    # two cones sharing no rays that overlap in their interiors
    rays = [(1, 0), (0, 1), (1, 2), (2, 1)]
    assert "IntersectionNotFace" in validate(rays, [[0, 1], [2, 3]]).kinds()


def test_fan_queries(fans):
    f = p1cubed()
    assert f.is_simplicial() and f.ns_index() == 0
    assert len(f.cones) == 1 + 6 + 12 + 8
    assert len(f.cones_containing([0])) == 1 + 4 + 4
    assert [sorted(c.rays) for c in f.maximal_cones_containing([0, 1])] == [[0, 1, 2], [0, 1, 5]]
    assert f.minimal_cone_containing_point((1, 1, 0)).ray_set == frozenset({0, 1})
    assert f.ray_index((3, 0, 0)) == 0
    with pytest.raises(ConeNotInFan):
        f.cone([0, 3])
    g = Fan.from_data([(1, 0), (0, 1)], [[0, 1]])
    with pytest.raises(NotInSupport):
        g.minimal_cone_containing_point((-1, 0))
    e = fans["ex_6_4_sigma"].fan
    assert e.ns_index() == 1
    assert sorted(sorted(c.rays) for c in e.minimal_nonsimplicial_cones()) == [[0, 1, 4, 5], [0, 2, 4, 6], [1, 2, 5, 6]]
    assert len(e.cones_containing([3])) == 7


@pytest.mark.parametrize("name", ["ex_4_9", "ex_4_10_a", "ex_4_11", "ex_6_4_sigma", "p1cubed"])
def test_star_subdivision_support_and_combinatorics(name, fans):
    f = fans[name].fan
    rng = random.Random(name)
    for sigma in [c for c in f.cones if c.dim >= 2][:6]:
        v0 = tuple(sum(g[j] for g in sigma.generators) for j in range(f.ambient_dim))
        g, new, smin = f.star_subdivide(v0)
        assert smin.ray_set == sigma.ray_set
        assert g.n_rays == f.n_rays + 1 and new == f.n_rays
        # cones not containing sigma survive unchanged
        for K in f.all_cones:
            if not sigma.ray_set <= K:
                assert K in g
            else:
                assert K not in g
        # new cones are exactly Cone(tau, v0) with tau a face of some mu >= sigma, sigma not <= tau
        expected = {t for ts in f.replacement_cones(sigma.ray_set, new).values() for t in ts}
        got = {K for K in g.all_cones if new in K}
        assert got == expected
        # supports agree on 1000 sampled points
        pts = []
        for M in f.max_cones:
            pts += sample_points(f.all_cones[M], 1000 // len(f.max_cones) + 1, rng)
        assert all(g.in_support(x) for x in pts[:1000])
        back = []
        for M in g.max_cones:
            back += sample_points(g.all_cones[M], 200 // len(g.max_cones) + 1, rng)
        assert all(f.in_support(x) for x in back)


def test_star_subdivision_at_ray_keeps_rays(fans):
    f = fans["ex_6_4_sigma"].fan
    g, new, smin = f.star_subdivide(f.rays[0])
    assert new == 0 and g.rays == f.rays and smin.dim == 1
    assert g.ns_index() <= f.ns_index()
    with pytest.raises(ZeroVector):
        f.star_subdivide((0, 0, 0))


def test_module_level_star_subdivide():
    f = Fan.from_data([(1, 0), (1, 2)], [[0, 1]])
    g = star_subdivide(f, (2, 2))
    assert g.rays[2] == (1, 1)
    assert sorted(sorted(M) for M in g.max_cones) == [[0, 2], [1, 2]]


def test_canonical_is_index_free(fans):
    f = fans["ex_6_4_sigma_prime"].fan
    perm = list(reversed(range(f.n_rays)))
    rays = [f.rays[p] for p in perm]
    inv = {p: i for i, p in enumerate(perm)}
    g = Fan.from_data(rays, [[inv[i] for i in M] for M in f.max_cones])
    assert g.canonical() == f.canonical()
    assert io.fixture("ex_6_4_sigma_dprime").stacky_fan.fan.canonical() != f.canonical()
