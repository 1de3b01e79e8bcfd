import random
from fractions import Fraction

import pytest

from jetalg.apoly import APoly
from jetalg.phirho import DegreeTooHigh, DLElem, TruncationEscape, phi, rho
from jetalg.smash import SmashElem, xk
from jetalg.vfields import VField
from jetalg.weyl import DOp


def gen(k, m):
    """Smash generator 1 . t^(m + [k=1]e1) d_k."""
    return SmashElem.cover_term((0, 0), (m[0] + (1 if k == 1 else 0), m[1]), k)


def grid(r1=2, r2=2):
    return [(m1, m2) for m1 in range(-r1, r1 + 1) for m2 in range(0, r2 + 1)]


def test_phi_kills_x_at_zero():
    # phi(1 . t1 d1) = t1 d1 (x) 1, the X1(0,0) summand being zero
    assert phi(gen(1, (0, 0))) == DLElem.from_dop(DOp.mono(1, 0, 1, 0))


def test_phi_t2d2():
    got = phi(gen(2, (0, 1)))
    expected = DLElem(DOp.mono(0, 1, 0, 1), {(2, (0, 1)): DOp.one()})
    assert got == expected


def test_phi_on_a():
    assert phi(SmashElem.embed_a(APoly.mono(1, 1))) == DLElem.from_dop(DOp.mono(1, 1, 0, 0))


def test_phi_left_linearity():
    # phi(f . X) = (f (x) 1) phi(1 . X)
    f = APoly.mono(-1, 2, Fraction(3, 2))
    x = gen(1, (2, 1))
    lhs = phi(x.mul_left_a(f))
    img = phi(x)
    rhs = DLElem(
        DOp.from_apoly(f) * img.part0,
        {key: DOp.from_apoly(f) * q for key, q in img.part1.items()},
    )
    assert lhs == rhs


def test_rho_examples():
    assert rho(DLElem.from_dop(DOp.mono(0, 0, 1, 0))) == SmashElem(
        {((-1, 0), (1, 0), 1): 1}
    )  # t1^-1 . t1 d1
    assert rho(DLElem.tensor(DOp.one(), (2, (0, 1)))) == xk(2, (0, 1))
    assert rho(DLElem.from_dop(DOp.mono(1, 0, 0, 0))) == SmashElem.embed_a(APoly.mono(1, 0))


def test_rho_phi_roundtrip_example():
    x = xk(1, (2, 1))
    assert rho(phi(x)) == x


def test_roundtrips_on_generators():
    for k in (1, 2):
        for m in grid():
            x = gen(k, m)
            assert rho(phi(x)) == x
            if m != (0, 0):
                y = DLElem.tensor(DOp.one(), (k, m))
                assert phi(rho(y)) == y
    for d in (DOp.mono(1, 0, 0, 0), DOp.mono(0, 1, 0, 0), DOp.mono(0, 0, 1, 0), DOp.mono(0, 0, 0, 1)):
        y = DLElem.from_dop(d)
        assert phi(rho(y)) == y
    for m1, m2 in grid():
        y = DLElem.from_dop(DOp.mono(m1, m2, 0, 0))
        assert phi(rho(y)) == y


def test_roundtrip_on_random_smash():
    rng = random.Random(50)
    for _ in range(40):
        cover = {}
        for _ in range(rng.randint(1, 3)):
            key = (
                (rng.randint(-2, 2), rng.randint(0, 2)),
                (rng.randint(-2, 2), rng.randint(0, 2)),
                rng.randint(1, 2),
            )
            cover[key] = Fraction(rng.choice([-2, -1, 1, 2]), rng.randint(1, 2))
        x = SmashElem(cover, APoly.mono(rng.randint(-2, 2), rng.randint(0, 2)))
        assert rho(phi(x)) == x


def test_dl_bracket_scalar_coefficient_with_symbol():
    x = DLElem.from_dop(DOp.mono(1, 0, 1, 0))  # t1 d1 (x) 1
    y = DLElem.tensor(DOp.one(), (2, (0, 1)))  # 1 (x) X2(0,1)
    assert x.bracket(y).is_zero()


def test_dl_bracket_structure_constants():
    x = DLElem.tensor(DOp.one(), (2, (0, 1)))
    y = DLElem.tensor(DOp.one(), (2, (0, 2)))
    assert x.bracket(y) == DLElem.tensor(DOp.one(), (2, (0, 2)))


def test_dl_bracket_truncation_escape():
    x = DLElem.tensor(DOp.mono(0, 1, 0, 0), (1, (1, 0)))  # t2 (x) X1(1,0)
    y = DLElem.tensor(DOp.mono(0, 0, 0, 1), (2, (1, 0)))  # d2 (x) X2(1,0)
    with pytest.raises(TruncationEscape):
        x.bracket(y)


def test_phi_is_bracket_homomorphism_small_grid():
    gens = [(k, m) for k in (1, 2) for m in grid()]
    for (k, m) in gens:
        x = gen(k, m)
        px = phi(x)
        for (l, s) in gens:
            y = gen(l, s)
            assert phi(x.bracket(y)) == px.bracket(phi(y))
        for s in grid():
            y = SmashElem.embed_a(APoly.mono(*s))
            assert phi(x.bracket(y)) == px.bracket(phi(y))


def test_phi_images_have_multiplication_coefficients():
    for k in (1, 2):
        for m in grid(3, 3):
            for q in phi(gen(k, m)).part1.values():
                assert q.is_multiplication()


def test_commutation_relations_carry_through_phi():
    # the phi images of the X_k(m) still commute with t1, t2, t1 d1, d2
    targets = [
        phi(SmashElem.embed_a(APoly.mono(1, 0))),
        phi(SmashElem.embed_a(APoly.mono(0, 1))),
        phi(SmashElem.embed_g(VField.basis(1, (1, 0)))),
        phi(SmashElem.embed_g(VField.basis(2, (0, 0)))),
    ]
    for k in (1, 2):
        for m in grid():
            img = phi(xk(k, m))
            for t in targets:
                assert img.bracket(t).is_zero()


def test_rho_degree_too_high():
    with pytest.raises(DegreeTooHigh):
        rho(DLElem.from_dop(DOp.mono(0, 0, 2, 0)))
    with pytest.raises(DegreeTooHigh):
        rho(DLElem.tensor(DOp.mono(0, 0, 1, 0), (1, (1, 0))))


def test_render():
    x = DLElem(DOp.mono(0, 1, 0, 1), {(2, (0, 1)): DOp.one()})
    assert x.render() == "(t2*d2) (x) 1 + (1) (x) X2(0,1)"
    assert DLElem.zero().render() == "0"
