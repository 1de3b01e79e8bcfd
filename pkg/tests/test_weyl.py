import random
from fractions import Fraction

import pytest

from jetalg.apoly import APoly
from jetalg.weyl import DOp, falling

T1 = DOp.mono(1, 0, 0, 0)
T2 = DOp.mono(0, 1, 0, 0)
D1 = DOp.mono(0, 0, 1, 0)
D2 = DOp.mono(0, 0, 0, 1)


def rand_dop(rng, nterms=3):
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        key = (rng.randint(-3, 3), rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
        terms[key] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    return DOp(terms)


def rand_poly(rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[(rng.randint(-3, 3), rng.randint(0, 3))] = Fraction(rng.choice([-2, -1, 1, 2]))
    return APoly(terms)


def test_falling_factorial():
    assert falling(5, 0) == 1
    assert falling(5, 2) == 20
    assert falling(-1, 2) == 2
    assert falling(2, 3) == 0


def test_canonical_weyl_relation():
    assert D1 * T1 == DOp.mono(1, 0, 1, 0) + DOp.one()


def test_d1_through_negative_power():
    # oracle: both sides must act identically on the t1-power basis
    lhs = D1 * DOp.mono(-1, 0, 0, 0)
    closed = DOp.mono(-1, 0, 1, 0) - DOp.mono(-2, 0, 0, 0)
    for n in range(-3, 4):
        basis = APoly.mono(n, 0)
        applied = DOp.mono(-1, 0, 0, 0).apply(D1.apply(basis))
        # careful: lhs means "first multiply by t1^-1, then differentiate"
        assert lhs.apply(basis) == D1.apply(DOp.mono(-1, 0, 0, 0).apply(basis))
        assert closed.apply(basis) == lhs.apply(basis)
    assert lhs == closed


def test_d2_squared_through_t2():
    lhs = DOp.mono(0, 0, 0, 2) * T2
    closed = DOp.mono(0, 1, 0, 2) + DOp.mono(0, 0, 0, 1, 2)
    for n in range(0, 5):
        basis = APoly.mono(0, n)
        assert lhs.apply(basis) == DOp.mono(0, 0, 0, 2).apply(T2.apply(basis))
        assert closed.apply(basis) == lhs.apply(basis)
    assert lhs == closed


def test_commutator_disjoint_indices():
    euler1 = DOp.mono(1, 0, 1, 0)
    euler2 = DOp.mono(0, 1, 0, 1)
    assert euler1.commutator(euler2) == DOp.zero()


def test_commutator_d2_t2():
    assert D2.commutator(T2) == DOp.one()


def test_commutator_euler_against_field():
    # oracle: compare the actions on basis monomials
    euler1 = DOp.mono(1, 0, 1, 0)
    for m1 in range(-2, 3):
        for m2 in range(0, 3):
            x = DOp.mono(m1, m2, 0, 1)
            got = euler1.commutator(x)
            expected = DOp.mono(m1, m2, 0, 1, m1)
            assert got == expected
            for n1 in range(-2, 3):
                for n2 in range(0, 3):
                    basis = APoly.mono(n1, n2)
                    assert got.apply(basis) == euler1.apply(x.apply(basis)) - x.apply(
                        euler1.apply(basis)
                    )


def test_apply_euler_operator():
    euler1 = DOp.mono(1, 0, 1, 0)
    for m1 in range(-3, 4):
        for m2 in range(0, 3):
            assert euler1.apply(APoly.mono(m1, m2)) == APoly.mono(m1, m2, m1)


def test_apply_examples():
    assert D2.apply(APoly.mono(0, 3)) == APoly.mono(0, 2, 3)
    assert DOp.mono(0, 1, 1, 0).apply(APoly.mono(-1, 0)) == APoly.mono(-2, 1, -1)


def test_associativity_random():
    rng = random.Random(10)
    for _ in range(200):
        x, y, z = rand_dop(rng), rand_dop(rng), rand_dop(rng)
        assert (x * y) * z == x * (y * z)


def test_apply_faithful_random():
    rng = random.Random(11)
    for _ in range(200):
        x, y, p = rand_dop(rng), rand_dop(rng), rand_poly(rng)
        assert (x * y).apply(p) == x.apply(y.apply(p))


def test_jacobi_random():
    rng = random.Random(12)
    for _ in range(100):
        x, y, z = rand_dop(rng, 2), rand_dop(rng, 2), rand_dop(rng, 2)
        total = (
            x.commutator(y).commutator(z)
            + y.commutator(z).commutator(x)
            + z.commutator(x).commutator(y)
        )
        assert total == DOp.zero()


def test_apply_never_negative_t2():
    rng = random.Random(13)
    for _ in range(200):
        x, p = rand_dop(rng), rand_poly(rng)
        for (_, m2) in x.apply(p).terms:
            assert m2 >= 0


def test_invalid_key_rejected():
    with pytest.raises(ValueError):
        DOp({(0, -1, 0, 0): 1})
    with pytest.raises(ValueError):
        DOp({(0, 0, -1, 0): 1})


def test_render():
    assert (D1 * T1).render() == "t1*d1 + 1"
    assert (DOp.mono(0, 0, 0, 2) * T2).render() == "t2*d2^2 + 2*d2"
