import random
from fractions import Fraction

import pytest

import fanlib
from fanlib import P1, P2
from toricfan import linalg
from toricfan.additive import BLOWUP_F1_FAN, build_paper_fan
from toricfan.fans import Fan, dual_fan_of_polytope
from toricfan.lp import fm_feasible, verify_farkas
from toricfan.projectivity import (SupportFunction, build_support_system, chain_cone, is_projective,
                                   chain_certificate, support_function_ok, verify_paper_certificate)

S3 = build_paper_fan(3)


def test_support_system_shapes():
    s = build_support_system(P2)
    assert (s.num_vars, len(s.equalities), len(s.inequalities)) == (6, 3, 3)
    s = build_support_system(S3)
    assert (s.num_vars, len(s.equalities), len(s.inequalities)) == (30, 30, 15)
    s = build_support_system(P1)
    assert (s.num_vars, len(s.equalities), len(s.inequalities)) == (2, 0, 1)


def test_support_system_needs_complete_fan():
    with pytest.raises(ValueError):
        build_support_system(Fan(2, P2.rays, P2.max_cones[:2]))
    with pytest.raises(ValueError):
        is_projective(build_paper_fan(4))


def test_projective_examples():
    for f in (P1, P2, fanlib.product_p1(3), fanlib.hirzebruch(2), BLOWUP_F1_FAN):
        v = is_projective(f)
        assert v.projective and support_function_ok(f, v.support)


def test_family_fan_is_not_projective():
    v = is_projective(S3)
    assert not v.projective
    assert verify_farkas(v.system, v.certificate)
    assert not fm_feasible(v.system)


def _global_min_check(f, phi, rng, samples=200):
    for _ in range(samples):
        v = [0] * f.rank
        while not any(v):
            v = [rng.randint(-40, 40) for _ in range(f.rank)]
        cone = f.locate(v)
        u = phi.functionals[f.max_cones.index(cone)]
        here = linalg.dot(u, v)
        for c, w in zip(f.max_cones, phi.functionals):
            other = linalg.dot(w, v)
            assert other >= here
            if not f.in_cone(c, v):
                assert other > here
        assert phi.value(f, v) == here == phi.on_cone(f, v)


def test_support_functions_are_globally_convex():
    rng = random.Random(2)
    fans = [P2, fanlib.product_p1(3), fanlib.hirzebruch(3)]
    fans += [dual_fan_of_polytope(P) for P in fanlib.random_simple_polytopes(6, seed=9)]
    for f in fans:
        v = is_projective(f)
        assert v.projective
        _global_min_check(f, v.support, rng)


def test_support_function_check_rejects_flat_function():
    flat = SupportFunction(tuple((Fraction(0), Fraction(0)) for _ in P2.max_cones))
    assert not support_function_ok(P2, flat)


def test_dual_fans_are_projective():
    for P in fanlib.random_simple_polytopes(20, seed=21):
        assert is_projective(dual_fan_of_polytope(P)).projective


def test_chain_certificate_report_n3():
    rep = verify_paper_certificate(3)
    assert rep.ok and rep.fan_is_valid
    assert len(rep.steps) == 3
    first = rep.steps[0]
    assert first["identity_text"].startswith("a1 + b3 - a3 = (0, -1, -1)")
    assert first["cone"] == chain_cone(3, 1) == "A'(2,1)"
    assert set(first["triple"]) == {"a1", "b3", "a3"}
    assert "-1" in first["coefficients"]
    text = rep.render()
    assert "phi(b1) + phi(b2) + phi(b3) > phi(b1) + phi(b2) + phi(b3)" in text
    assert "warning" not in text


def test_chain_certificate_report_larger_n():
    for n in (4, 5, 6):
        rep = verify_paper_certificate(n)
        assert rep.ok and len(rep.steps) == n
        # the chain is locally sound, but the cones overlap for these n
        assert not rep.fan_is_valid
        assert "warning" in rep.render()
    with pytest.raises(ValueError):
        verify_paper_certificate(2)


def test_chain_certificate_multipliers():
    cert = chain_certificate(3)
    s = build_support_system(S3)
    assert verify_farkas(s, cert)
    assert all(x >= 0 for x in cert.ineq_multipliers)
