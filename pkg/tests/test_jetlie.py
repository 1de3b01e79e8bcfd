import random
from fractions import Fraction

import pytest

from jetalg.apoly import APoly
from jetalg.jetlie import (
    GL2Module,
    LElem,
    lelem_from_smash,
    lelem_to_smash,
    lift_gl2,
    theta,
    theta_inv,
)
from jetalg.matrices import mat_is_zero, mat_mul, mat_scale, mat_sub, mat_zero
from jetalg.smash import SmashElem, xk
from jetalg.vfields import NotInSubalgebra, VField


def l_keys(r1=2, r2=2):
    return [
        (k, (m1, m2))
        for k in (1, 2)
        for m1 in range(-r1, r1 + 1)
        for m2 in range(0, r2 + 1)
        if (m1, m2) != (0, 0)
    ]


def test_bracket_paper_instance_b():
    # [X2(0,1), X2(0,2)] = X2(0,2)
    assert LElem.basis(2, (0, 1)).bracket(LElem.basis(2, (0, 2))) == LElem.basis(2, (0, 2))


def test_bracket_self_is_zero():
    rng = random.Random(40)
    for _ in range(20):
        x = LElem({rng.choice(l_keys()): Fraction(rng.choice([-2, -1, 1, 2])) for _ in range(2)})
        assert x.bracket(x).is_zero()


def test_bracket_derived_through_theta():
    # independent oracle: push X1(1,0), X2(2,0) through theta, bracket there,
    # and pull back; the structure constants must agree
    x = LElem.basis(1, (1, 0))
    y = LElem.basis(2, (2, 0))
    oracle = theta_inv(theta(x).bracket(theta(y)))
    got = x.bracket(y)
    assert got == oracle
    assert got == LElem({(2, (2, 0)): -2, (2, (3, 0)): 2})


def test_x_k_zero_dropped():
    # formulas produce X_k(0,0) terms at m + s = 0; they are silently zero
    got = LElem.basis(1, (1, 0)).bracket(LElem.basis(1, (-1, 0)))
    assert got == LElem.basis(1, (1, 0)) + LElem.basis(1, (-1, 0))
    assert LElem({(1, (0, 0)): 5}).is_zero()


def test_theta_examples():
    t1m1 = APoly.mono(1, 0) - APoly.one()
    assert theta(LElem.basis(1, (1, 0))) == VField(t1m1 * APoly.mono(1, 0), None)
    assert theta(LElem.basis(2, (0, 1))) == VField(None, APoly.mono(0, 1))
    assert theta(LElem.zero()).is_zero()


def test_theta_image_vanishes_at_base_point():
    for key in l_keys(3, 3):
        assert theta(LElem.basis(*key)).in_m10_delta()


def test_theta_inv_examples():
    t1m1 = APoly.mono(1, 0) - APoly.one()
    assert theta_inv(VField(t1m1 * APoly.mono(1, 0), None)) == LElem.basis(1, (1, 0))
    assert theta_inv(VField(None, APoly.mono(0, 1))) == LElem.basis(2, (0, 1))
    # (t1 - t1^-1) t1 d1 -> X1(1,0) - X1(-1,0), checked through the forward map
    f = (APoly.mono(1, 0) - APoly.mono(-1, 0)) * APoly.mono(1, 0)
    expected = LElem.basis(1, (1, 0)) - LElem.basis(1, (-1, 0))
    assert theta(expected) == VField(f, None)
    assert theta_inv(VField(f, None)) == expected


def test_theta_inv_precondition():
    with pytest.raises(NotInSubalgebra):
        theta_inv(VField(APoly.one(), None))


def test_theta_is_isomorphism_on_grid():
    keys = l_keys()
    for km in keys:
        x = LElem.basis(*km)
        assert theta_inv(theta(x)) == x
        for ls in keys:
            y = LElem.basis(*ls)
            assert theta(x.bracket(y)) == theta(x).bracket(theta(y))


def test_theta_roundtrip_from_field_side():
    rng = random.Random(41)
    t1m1 = APoly.mono(1, 0) - APoly.one()
    t2 = APoly.mono(0, 1)
    for _ in range(30):
        f1 = t1m1 * APoly.mono(rng.randint(-2, 2), rng.randint(0, 2))
        f2 = t2 * APoly.mono(rng.randint(-2, 2), rng.randint(0, 2))
        x = VField(f1, f2)
        assert theta(theta_inv(x)) == x


def test_structure_constants_match_smash_realization():
    keys = l_keys()
    for km in keys:
        for ls in keys:
            abstract = LElem.basis(*km).bracket(LElem.basis(*ls))
            concrete = xk(*km).bracket(xk(*ls))
            assert lelem_to_smash(abstract) == concrete
            assert lelem_from_smash(concrete) == abstract


def test_lelem_from_smash_rejects_non_span():
    with pytest.raises(ValueError):
        lelem_from_smash(SmashElem.embed_a(APoly.one()))
    with pytest.raises(ValueError):
        lelem_from_smash(SmashElem({((0, 0), (1, 0), 1): 1}))  # bare 1 . t1 d1


def test_jacobi_sampled():
    rng = random.Random(42)
    keys = l_keys(3, 3)
    for _ in range(60):
        x, y, z = (LElem.basis(*rng.choice(keys)) for _ in range(3))
        total = (
            x.bracket(y).bracket(z)
            + y.bracket(z).bracket(x)
            + z.bracket(x).bracket(y)
        )
        assert total.is_zero()


def test_gl2_modules_satisfy_relations():
    for name in ("natural", "adjoint", "sym2"):
        module = GL2Module.by_name(name)
        assert module.satisfies_gl2_relations()
    assert not GL2Module.natural().corrupted().satisfies_gl2_relations()


def test_unknown_module_name():
    with pytest.raises(ValueError):
        GL2Module.by_name("spin7")


def test_lift_examples():
    nat = GL2Module.natural()
    assert lift_gl2(LElem.basis(2, (0, 1)), nat) == nat.e22
    assert lift_gl2(LElem.basis(1, (3, 0)), nat) == mat_scale(nat.e11, 3)
    assert lift_gl2(LElem.basis(1, (0, 5)), nat) == mat_zero(2)


def test_lift_is_representation():
    keys = l_keys()
    for name in ("natural", "adjoint", "sym2"):
        module = GL2Module.by_name(name)
        for km in keys:
            a = lift_gl2(LElem.basis(*km), module)
            for ls in keys:
                b = lift_gl2(LElem.basis(*ls), module)
                lhs = lift_gl2(LElem.basis(*km).bracket(LElem.basis(*ls)), module)
                assert lhs == mat_sub(mat_mul(a, b), mat_mul(b, a))


def test_render():
    x = LElem({(1, (1, 0)): Fraction(-2), (2, (0, 2)): Fraction(1, 2)})
    assert x.render() == "1/2*X2(0,2) - 2*X1(1,0)"
    assert LElem.zero().render() == "0"
