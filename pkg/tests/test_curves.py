import pytest

from hlrc.errors import ParameterError
from hlrc.galois import field_create
from hlrc.curves import (
    Point,
    availability_hierarchies,
    hermitian_hierarchy,
    hermitian_points,
    rs_evaluation_set,
    torus_orbits,
)


F37 = field_create(37)
F27 = field_create(3, 3)
F64 = field_create(2, 6)
F1681 = field_create(41, 2)


def xs(points, idxs):
    return {points[i].get("x") for i in idxs}


def test_rs_evaluation_set_f37_matches_published_groups():
    points, hier = rs_evaluation_set(F37, 12, 4, 36)
    assert len(points) == 36
    d1 = hier.middle_groups[0]
    assert xs(points, d1) == {1, 6, 36, 31, 8, 11, 29, 26, 27, 14, 10, 23}
    locs = hier.local_groups[0]
    assert [xs(points, l) for l in locs] == [
        {1, 6, 31, 36},
        {8, 11, 26, 29},
        {10, 14, 23, 27},
    ]
    d2 = hier.middle_groups[1]
    assert xs(points, d2) == {2, 12, 35, 25, 16, 22, 21, 15, 17, 28, 20, 9}


def test_rs_evaluation_set_single_group():
    points, hier = rs_evaluation_set(F37, 36, 36, 36)
    assert len(hier.middle_groups) == 1
    assert len(hier.local_groups[0]) == 1


def test_rs_evaluation_set_annihilators_constant_on_groups():
    points, hier = rs_evaluation_set(F37, 12, 4, 36)
    for mg in hier.middle_groups:
        vals = {F37.pow(points[i].get("x"), 12) for i in mg}
        assert len(vals) == 1
    for locs in hier.local_groups:
        group_vals = []
        for l in locs:
            vals = {F37.pow(points[i].get("x"), 4) for i in l}
            assert len(vals) == 1
            group_vals.append(vals.pop())
        assert len(set(group_vals)) == len(locs)


def test_rs_evaluation_set_rejects_bad_divisibility():
    with pytest.raises(ParameterError):
        rs_evaluation_set(F37, 12, 4, 35)
    with pytest.raises(ParameterError):
        rs_evaluation_set(F37, 10, 4, 30)


def test_torus_orbits_gf27():
    points, hier, maps = torus_orbits(F27, 14, 7)
    assert len(points) == 28
    assert len(hier.middle_groups) == 2
    assert all(len(g) == 14 for g in hier.middle_groups)
    assert points[0].at_infinity
    assert hier.middle_groups[0][0] == 0
    assert all(len(l) == 7 for locs in hier.local_groups for l in locs)


def test_torus_single_orbit_when_nu_is_q_plus_1():
    points, hier, _ = torus_orbits(F27, 28, 4)
    assert len(hier.middle_groups) == 1
    assert len(hier.middle_groups[0]) == 28


def test_torus_maps_permute_and_preserve_groups():
    points, hier, maps = torus_orbits(F27, 14, 7)
    pt_index = {p: i for i, p in enumerate(points)}
    for mm in maps["group"]:
        images = [pt_index[mm.apply_point(p)] for p in points]
        assert sorted(images) == list(range(28))
        for mg in hier.middle_groups:
            assert {images[i] for i in mg} == set(mg)
    for mm in maps["local_subgroup"]:
        images = [pt_index[mm.apply_point(p)] for p in points]
        for locs in hier.local_groups:
            for l in locs:
                assert {images[i] for i in l} == set(l)


def test_torus_small_field_char2():
    points, hier, maps = torus_orbits(F64, 13, 13)
    assert len(points) == 65
    assert len(hier.middle_groups) == 5
    pt_index = {p: i for i, p in enumerate(points)}
    for mm in maps["group"]:
        images = [pt_index[mm.apply_point(p)] for p in points]
        assert sorted(images) == list(range(65))


def test_hermitian_points_count_and_equation():
    f4 = field_create(2, 2)
    pts = hermitian_points(f4)
    assert len(pts) == 6
    for p in pts:
        x, z = p.get("x"), p.get("z")
        assert f4.add(f4.pow(z, 2), z) == f4.pow(x, 3)
        assert x != 0
    pts64 = hermitian_points(F64)
    assert len(pts64) == 504
    per_x = {}
    for p in pts64:
        per_x[p.get("x")] = per_x.get(p.get("x"), 0) + 1
    assert set(per_x.values()) == {8}
    assert pytest.raises(ParameterError, hermitian_points, F37)


def test_hermitian_hierarchy_sizes():
    pts = hermitian_points(F64)
    hier = hermitian_hierarchy(F64, pts, 2, 2)
    assert len(hier.middle_groups) == 56
    assert all(len(g) == 9 for g in hier.middle_groups)
    assert sum(len(locs) for locs in hier.local_groups) == 168
    assert all(len(l) == 3 for locs in hier.local_groups for l in locs)


def test_hermitian_hierarchy_root_of_unity_orbits():
    pts = hermitian_points(F64)
    hier = hermitian_hierarchy(F64, pts, 2, 2)
    pt_index = {(p.get("x"), p.get("z")): i for i, p in enumerate(pts)}
    alpha = F64.roots_of_unity(9)[1]
    for mg in hier.middle_groups[:8]:
        mapped = {
            pt_index[(F64.mul(alpha, pts[i].get("x")), pts[i].get("z"))] for i in mg
        }
        assert mapped == set(mg)


def test_hermitian_hierarchy_rejects_bad_ab():
    pts = hermitian_points(F64)
    with pytest.raises(ParameterError):
        hermitian_hierarchy(F64, pts, 3, 3)


def test_availability_hierarchies_shapes():
    points, h1, h2 = availability_hierarchies(F1681, 7, 3, 4, 5, 4)
    assert len(points) == 1680
    assert len(h1.middle_groups) == 16 and h1.nu == 105
    assert len(h2.middle_groups) == 20 and h2.nu == 84
    assert h1.local_size == 3 and h2.local_size == 7
    assert h1.claimed["r2"] == 2 and h2.claimed["r2"] == 6


def test_availability_middle_intersections():
    points, h1, h2 = availability_hierarchies(F1681, 7, 3, 4, 5, 4)
    sizes = set()
    for g1 in h1.middle_groups:
        s1 = set(g1)
        for g2 in h2.middle_groups:
            inter = s1 & set(g2)
            if inter:
                sizes.add(len(inter))
    assert sizes == {21}


def test_availability_local_groups_orthogonal():
    points, h1, h2 = availability_hierarchies(F1681, 7, 3, 4, 5, 4)
    locals1 = [l for locs in h1.local_groups for l in locs]
    locals2 = [set(l) for locs in h2.local_groups for l in locs]
    for l1 in locals1[:60]:
        s1 = set(l1)
        for l2 in locals2:
            assert len(s1 & l2) <= 1


def test_availability_rejects_bad_factorization():
    with pytest.raises(ParameterError):
        availability_hierarchies(F1681, 7, 3, 4, 5, 5)
    with pytest.raises(ParameterError):
        availability_hierarchies(F1681, 6, 3, 4, 5, 4)
