import random
from fractions import Fraction

import pytest

from toricfan import linalg
from toricfan.additive import (BLOWUP_F1_FAN, P2_FAN, additive_act, additive_act_X, base_point,
                               build_paper_fan, check_equivariance, component_star_check, cone_names,
                               ga_orbit_report, orbit_dimension, orbit_dimension_Y, family_cones,
                               family_monomials)
from toricfan.cox import (ChartPoint, chart_origin, group_act, in_Y, points_equal, quasitorus,
                          quotient_map, random_point, random_rational, zero_support)
from toricfan.fans import Fan, fan_validate, is_complete, is_smooth

S3 = build_paper_fan(3)
A123 = S3.cone_of(["a1", "a2", "a3"])


def test_family_fan_sizes():
    for n, cones in ((3, 10), (4, 17), (5, 26)):
        f = build_paper_fan(n)
        assert len(f.rays) == 2 * n + 1 and len(f.max_cones) == cones == n * n + 1
    with pytest.raises(ValueError):
        build_paper_fan(2)


def test_family_fan_rays():
    f = build_paper_fan(3)
    assert dict(zip(f.labels, f.rays)) == {
        "b0": (-1, -1, -1), "b1": (0, -1, -1), "b2": (-1, 0, -1), "b3": (-1, -1, 0),
        "a1": (1, 0, 0), "a2": (0, 1, 0), "a3": (0, 0, 1)}


def test_first_row_of_cones():
    cones = family_cones(3)
    assert set(cones["A'(1,1)"]) == {"a2", "a3", "b2"}
    assert set(cones["A'(1,2)"]) == {"a3", "b2", "b3"}
    assert set(cones["A'(1,3)"]) == {"b2", "b3", "b0"}


def test_displayed_rows_for_general_n():
    n = 5
    cones = {k: set(v) for k, v in family_cones(n).items()}
    assert cones["A'(1,1)"] == {"a2", "a3", "a4", "a5", "b2"}
    assert cones["A'(1,5)"] == {"b2", "b3", "b4", "b5", "b0"}
    assert cones["A'(4,1)"] == {"a5", "a1", "a2", "a3", "b5"}
    assert cones["A'(4,2)"] == {"a1", "a2", "a3", "b5", "b1"}
    assert cones["A'(4,4)"] == {"a3", "b5", "b1", "b2", "b3"}
    assert cones["A'(5,1)"] == {"a1", "a2", "a3", "a4", "b1"}
    assert cones["A'(5,4)"] == {"a4", "b1", "b2", "b3", "b4"}


def test_family_fan_n3_is_smooth_complete_fan():
    assert fan_validate(S3).ok and is_smooth(S3) and is_complete(S3)
    assert len(cone_names(S3, 3)) == 10


def test_cyclic_subdivision_breaks_for_n4():
    # faces A1 and A3 triangulate their common triangle conv(a0, a2, a4) differently
    f = build_paper_fan(4)
    assert not fan_validate(f).ok and not is_complete(f)
    assert all(abs(linalg.det(f.generators(c))) == 1 for c in f.max_cones)


def test_one_global_order_gives_a_fan_for_n4():
    n = 4
    base = build_paper_fan(n)
    pos = {lab: k for k, lab in enumerate(base.labels)}
    cones = [tuple(f"a{j}" for j in range(1, n + 1))]
    for i in range(1, n + 1):
        order = [k for k in range(1, n + 1) if k != i]
        for j in range(1, n):
            cones.append(tuple(f"a{k}" for k in order[j - 1:]) + tuple(f"b{k}" for k in order[:j]))
        cones.append(tuple(f"b{k}" for k in order) + ("b0",))
    f = Fan(n, base.rays, tuple(tuple(pos[x] for x in c) for c in cones), base.labels)
    assert fan_validate(f).ok and is_complete(f) and is_smooth(f)


def test_additive_act_examples():
    y = (1, 1, 1, 1, 0, 0, 0)
    assert additive_act((1, 0, 0), y, S3) == (1, 1, 1, 1, 1, 0, 0)
    rng = random.Random(0)
    for _ in range(20):
        y = random_point(S3, rng)
        assert additive_act((0, 0, 0), y, S3) == y
        y0 = (0,) + y[1:]
        if in_Y(y0, S3):
            c = [random_rational(rng) for _ in range(3)]
            assert additive_act(c, y0, S3) == tuple(Fraction(v) for v in y0)


def test_zero_support_can_shrink_or_grow():
    y = (1, 1, 1, 1, -1, 0, 0)
    out = additive_act((1, 0, 0), y, S3)
    assert zero_support(out) == (4, 5, 6) and in_Y(out, S3)


def test_check_equivariance():
    for n in (3, 4, 5):
        assert check_equivariance(build_paper_fan(n))
    bad = family_monomials(3)
    bad[0] = (0,) + bad[0][1:]  # drop x0 from the first monomial
    assert not check_equivariance(S3, bad)


def test_additive_act_X_examples():
    o = chart_origin(S3, A123)
    for c in ((1, 2, 3), (Fraction(1, 2), -4, 0)):
        assert additive_act_X(c, o, S3) == ChartPoint(A123, c)
    x = ChartPoint(A123, (Fraction(2, 3), 5, -1))
    assert additive_act_X((0, 0, 0), x, S3) == x


def test_additivity_and_equivariance():
    rng = random.Random(8)
    data = quasitorus(S3)
    for _ in range(100):
        y = random_point(S3, rng)
        c = [random_rational(rng) for _ in range(3)]
        d = [random_rational(rng) for _ in range(3)]
        cd = [a + b for a, b in zip(c, d)]
        # upstairs: additive in c, commutes with G
        assert additive_act(cd, y, S3) == additive_act(c, additive_act(d, y, S3), S3)
        g = [random_rational(rng) for _ in range(4)]
        assert additive_act(c, group_act(g, y, S3, data), S3) == group_act(g, additive_act(c, y, S3), S3, data)
        # downstairs: the induced action matches the upstairs one through pi
        x = quotient_map(y, S3)
        assert points_equal(additive_act_X(c, x, S3), quotient_map(additive_act(c, y, S3), S3), S3)
        assert points_equal(additive_act_X(cd, x, S3),
                            additive_act_X(c, additive_act_X(d, x, S3), S3), S3)


def test_orbit_dimension_examples():
    assert orbit_dimension_Y(base_point(3), S3) == 3
    assert orbit_dimension_Y((1, 0, 1, 1, 0, 0, 1), S3) == 1
    rng = random.Random(1)
    for cone in S3.cones:
        if S3.index("b0") in cone:
            assert orbit_dimension_Y(random_point(S3, rng, cone), S3) == 0
    assert orbit_dimension(chart_origin(S3, A123), S3) == 3


def test_component_star_check():
    rows = component_star_check(3)
    assert [r["reference"] for r in rows] == ["P2", "blowup of F1 at a point"] + ["blowup of F1 at a point"] * 2
    assert all(r["verified"] and abs(linalg.det(r["witness"])) == 1 for r in rows)
    assert len(P2_FAN.rays) == 3 and len(BLOWUP_F1_FAN.rays) == 5


def test_orbit_report():
    rep = ga_orbit_report(3, samples=10, seed=4)
    assert rep.ok
    assert len(rep.components) == 4
    by_name = {it["name"]: it for it in rep.intersections}
    assert by_name["X1 ∩ X2 ∩ X3"]["kind"] == "empty"
    assert by_name["X0 ∩ X1 ∩ X2"]["points"] == 1
    reps = {r["name"]: r["point"]["coords"] for r in rep.representatives}
    assert reps["S'10 ∩ S'12"] == ["0", "0", "0", "1", "1", "1", "1"]
    assert "[FAIL]" not in rep.render()
    with pytest.raises(ValueError):
        ga_orbit_report(4)
