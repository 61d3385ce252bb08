import random
from fractions import Fraction

import pytest

from fanlib import random_system
from toricfan.additive import build_paper_fan
from toricfan.lp import FarkasCertificate, LinearSystem, feasible, fm_feasible, fm_project, verify_farkas
from toricfan.projectivity import build_support_system


def test_single_lower_bound():
    res = feasible(LinearSystem(1, (), [([1], 1)]))
    assert res.feasible and res.witness == (1,)


def test_contradictory_bounds():
    s = LinearSystem(1, (), [([1], 1), ([-1], 0)])
    res = feasible(s)
    assert not res.feasible
    assert res.certificate.ineq_multipliers == (1, 1)
    assert verify_farkas(s, FarkasCertificate((), (1, 1)))
    assert not verify_farkas(s, FarkasCertificate((), (1, 0)))


def test_negative_multiplier_rejected():
    s = LinearSystem(1, (), [([1], 1), ([-1], 0)])
    assert not verify_farkas(s, FarkasCertificate((), (-1, -1)))
    with pytest.raises(ValueError):
        verify_farkas(s, FarkasCertificate((), (1,)))


def test_inconsistent_equalities():
    s = LinearSystem(2, [([1, 1], 1), ([2, 2], 3)], ())
    res = feasible(s)
    assert not res.feasible and verify_farkas(s, res.certificate)


def test_mixed_system_witness():
    s = LinearSystem(3, [([1, 1, 1], 3)], [([1, 0, 0], Fraction(1, 2)), ([0, -1, 0], -1), ([0, 0, 1], 1)])
    res = feasible(s)
    assert res.feasible and s.satisfied_by(res.witness)


def test_mixed_system_certificate():
    # x + y = 1, x >= 1, y >= 1
    s = LinearSystem(2, [([1, 1], 1)], [([1, 0], 1), ([0, 1], 1)])
    res = feasible(s)
    assert not res.feasible and verify_farkas(s, res.certificate)
    assert not fm_feasible(s)


def test_zero_variables():
    assert feasible(LinearSystem(0, (), [((), 0)])).feasible
    res = feasible(LinearSystem(0, (), [((), 1)]))
    assert not res.feasible


def test_fm_project_examples():
    assert fm_project(LinearSystem(1, (), [([1], 0), ([-1], -1)]), 0).inequalities == ()
    out = fm_project(LinearSystem(1, (), [([1], 1), ([-1], 0)]), 0)
    assert out.inequalities == (((), 1),)
    assert not fm_feasible(out)


def test_family_support_system():
    s = build_support_system(build_paper_fan(3))
    res = feasible(s)
    assert not res.feasible
    assert verify_farkas(s, res.certificate)
    assert not fm_feasible(s)


def test_deterministic():
    s = build_support_system(build_paper_fan(3))
    assert feasible(s) == feasible(s)


def test_certificate_is_integral_and_coprime():
    s = LinearSystem(2, (), [([2, 0], 1), ([-4, 0], 1), ([0, 1], 0)])
    cert = feasible(s).certificate
    assert all(x.denominator == 1 for x in cert.ineq_multipliers)


def test_simplex_agrees_with_fourier_motzkin():
    rng = random.Random(7)
    outcomes = {True: 0, False: 0}
    for k in range(210):
        s = random_system(rng, rng.randint(1, 40), plant_infeasible=k % 3 == 0)
        res = feasible(s)
        assert res.feasible == fm_feasible(s)
        if res.feasible:
            assert s.satisfied_by(res.witness)
        else:
            assert verify_farkas(s, res.certificate)
        outcomes[res.feasible] += 1
    assert min(outcomes.values()) >= 50
