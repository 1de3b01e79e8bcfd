import random
from fractions import Fraction

import pytest

from jetalg.apoly import APoly
from jetalg.smash import SmashElem, xk
from jetalg.vfields import VField


def rand_smash(rng):
    cover = {}
    for _ in range(rng.randint(1, 3)):
        key = (
            (rng.randint(-2, 2), rng.randint(0, 2)),
            (rng.randint(-2, 2), rng.randint(0, 2)),
            rng.randint(1, 2),
        )
        cover[key] = Fraction(rng.choice([-2, -1, 1, 2]))
    apart = APoly.mono(rng.randint(-2, 2), rng.randint(0, 2)) if rng.random() < 0.5 else None
    return SmashElem(cover, apart)


def test_xk_at_zero_is_zero():
    assert xk(1, (0, 0)).is_zero()
    assert xk(2, (0, 0)).is_zero()


def test_xk_examples():
    # X2(0,1) = 1 . t2 d2 - t2 . d2
    assert xk(2, (0, 1)) == SmashElem(
        {((0, 0), (0, 1), 2): 1, ((0, 1), (0, 0), 2): -1}
    )
    # X1(1,0) = t1^-1 . t1^2 d1 - 1 . t1 d1
    assert xk(1, (1, 0)) == SmashElem(
        {((-1, 0), (2, 0), 1): 1, ((0, 0), (1, 0), 1): -1}
    )


def test_bracket_x2_with_t2_vanishes():
    assert xk(2, (0, 1)).bracket(SmashElem.embed_a(APoly.mono(0, 1))).is_zero()


def test_bracket_derivation_action():
    x = SmashElem.embed_g(VField.basis(1, (1, 0)))  # 1 . t1 d1
    t1 = SmashElem.embed_a(APoly.mono(1, 0))
    assert x.bracket(t1) == t1


def test_bracket_paper_instance():
    # [X1(1,0), X1(-1,0)] = X1(1,0) + X1(-1,0)
    got = xk(1, (1, 0)).bracket(xk(1, (-1, 0)))
    assert got == xk(1, (1, 0)) + xk(1, (-1, 0))


def grid(r1=2, r2=2):
    return [(m1, m2) for m1 in range(-r1, r1 + 1) for m2 in range(0, r2 + 1)]


def test_commutes_with_a_and_cartan_generators():
    # the defining property of the X_k(m): they commute with t1, t2, t1 d1, d2
    targets = [
        SmashElem.embed_a(APoly.mono(1, 0)),
        SmashElem.embed_a(APoly.mono(0, 1)),
        SmashElem.embed_g(VField.basis(1, (1, 0))),
        SmashElem.embed_g(VField.basis(2, (0, 0))),
    ]
    for k in (1, 2):
        for m in grid():
            x = xk(k, m)
            for t in targets:
                assert x.bracket(t).is_zero()


def test_antisymmetry_exact():
    rng = random.Random(30)
    for _ in range(40):
        x, y = rand_smash(rng), rand_smash(rng)
        assert (x.bracket(y) + y.bracket(x)).is_zero()


def test_jacobi_sampled():
    rng = random.Random(31)
    for _ in range(40):
        x, y, z = rand_smash(rng), rand_smash(rng), rand_smash(rng)
        total = (
            x.bracket(y).bracket(z)
            + y.bracket(z).bracket(x)
            + z.bracket(x).bracket(y)
        )
        assert total.is_zero()


def test_smash_relation_with_a():
    rng = random.Random(32)
    for _ in range(30):
        x = VField.basis(rng.randint(1, 2), (rng.randint(-2, 2), rng.randint(0, 2)))
        p = APoly.mono(rng.randint(-2, 2), rng.randint(0, 2))
        lhs = SmashElem.embed_g(x).bracket(SmashElem.embed_a(p))
        assert lhs == SmashElem.embed_a(x.apply(p))


def test_apart_bracket_is_zero():
    a = SmashElem.embed_a(APoly.mono(2, 1))
    b = SmashElem.embed_a(APoly.mono(-1, 0))
    assert a.bracket(b).is_zero()


def test_embed_examples():
    e = SmashElem.embed_g(VField.basis(1, (1, 0)))
    assert e.cover == {((0, 0), (1, 0), 1): 1}
    assert SmashElem.embed_a(APoly.one()).apart == APoly.one()


def test_mul_left_a():
    x = xk(2, (0, 1))
    p = APoly.mono(1, 0)
    got = x.mul_left_a(p)
    assert got == SmashElem({((1, 0), (0, 1), 2): 1, ((1, 1), (0, 0), 2): -1})


def test_invalid_cover_key_rejected():
    with pytest.raises(ValueError):
        SmashElem({((0, -1), (0, 0), 1): 1})
    with pytest.raises(ValueError):
        SmashElem({((0, 0), (0, -1), 1): 1})
    with pytest.raises(ValueError):
        SmashElem({((0, 0), (0, 0), 3): 1})


def test_render():
    assert xk(2, (0, 1)).render() == "-t2 . d2 + 1 . t2*d2"
    e = SmashElem((), APoly.mono(1, 0) - APoly.one())
    assert e.render() == "(t1 - 1) . 1"
    assert SmashElem.zero().render() == "0"
