import itertools
import random
from fractions import Fraction

import pytest

from jetalg.apoly import APoly
from jetalg.matrices import mat_commutator, mat_is_zero, mat_sub, mat_zero
from jetalg.vfields import NotInSubalgebra, VField, gl2_unit
from jetalg.weyl import DOp


def rand_field(rng):
    def poly():
        terms = {}
        for _ in range(rng.randint(1, 2)):
            terms[(rng.randint(-2, 2), rng.randint(0, 2))] = Fraction(rng.choice([-2, -1, 1, 2]))
        return APoly(terms)

    return VField(poly(), poly())


def basis_monomials(r1=3, r2=3):
    return [APoly.mono(m1, m2) for m1 in range(-r1, r1 + 1) for m2 in range(0, r2 + 1)]


def test_bracket_euler_instance():
    # [t1 d1, t^alpha d2] = alpha1 t^alpha d2
    euler = VField.basis(1, (1, 0))
    for a1 in range(-2, 3):
        for a2 in range(0, 3):
            x = VField.basis(2, (a1, a2))
            assert euler.bracket(x) == x.scale(a1)


def test_bracket_antisymmetry_on_self():
    rng = random.Random(20)
    for _ in range(20):
        x = rand_field(rng)
        assert x.bracket(x).is_zero()


def test_bracket_t2d1_t1d2():
    # oracle: operator composition on every basis monomial with small exponents
    x = VField.basis(1, (0, 1))  # t2 d1
    y = VField.basis(2, (1, 0))  # t1 d2
    got = x.bracket(y)
    for p in basis_monomials():
        assert got.apply(p) == x.apply(y.apply(p)) - y.apply(x.apply(p))
    assert got == VField.basis(2, (0, 1)) - VField.basis(1, (1, 0))  # t2 d2 - t1 d1


def test_apply_examples():
    euler = VField.basis(1, (1, 0))
    for k in range(-3, 4):
        assert euler.apply(APoly.mono(k, 0)) == APoly.mono(k, 0, k)
    rng = random.Random(21)
    for _ in range(10):
        assert rand_field(rng).apply(APoly.one()).is_zero()
    assert VField.basis(1, (0, 1)).apply(APoly.mono(1, 1)) == APoly.mono(0, 2)


def test_to_weyl_examples():
    assert VField.basis(1, (1, 0)).to_weyl() == DOp.mono(1, 0, 1, 0)
    x = VField(None, APoly.mono(1, 0) - APoly.one())  # (t1 - 1) d2
    assert x.to_weyl() == DOp.mono(1, 0, 0, 1) - DOp.mono(0, 0, 0, 1)


def test_to_weyl_bracket_compatible():
    x = VField.basis(1, (0, 1))
    y = VField.basis(2, (1, 0))
    assert x.bracket(y).to_weyl() == x.to_weyl().commutator(y.to_weyl())


def test_in_m10_delta_examples():
    t1m1 = APoly.mono(1, 0) - APoly.one()
    assert VField(t1m1 * APoly.mono(1, 0), None).in_m10_delta()
    assert not VField(None, APoly.one()).in_m10_delta()  # d2
    assert VField(APoly.mono(0, 1), None).in_m10_delta()  # t2 d1


def test_gl2_bracket_relations():
    e11, e12, e21, e22 = gl2_unit(1, 1), gl2_unit(1, 2), gl2_unit(2, 1), gl2_unit(2, 2)
    assert mat_commutator(e11, e12) == e12
    assert mat_commutator(e12, e21) == mat_sub(e11, e22)
    assert mat_is_zero(mat_commutator(e11, e22))


def test_pi_examples():
    t1m1 = APoly.mono(1, 0) - APoly.one()
    assert VField(None, t1m1).pi_project() == gl2_unit(1, 2)
    assert mat_is_zero(VField(t1m1 * t1m1, None).pi_project())
    assert VField(t1m1 * APoly.mono(1, 0), None).pi_project() == gl2_unit(1, 1)
    assert VField(APoly.mono(0, 1), None).pi_project() == gl2_unit(2, 1)
    assert VField(None, APoly.mono(0, 1)).pi_project() == gl2_unit(2, 2)


def test_pi_precondition():
    with pytest.raises(NotInSubalgebra):
        VField(APoly.one(), None).pi_project()


def m10_samples():
    t1m1 = APoly.mono(1, 0) - APoly.one()
    t2 = APoly.mono(0, 1)
    out = []
    for m1 in range(-1, 2):
        for m2 in range(0, 2):
            mono = APoly.mono(m1, m2)
            for f in (t1m1 * mono, t2 * mono):
                out.append(VField(f, None))
                out.append(VField(None, f))
    return out


def test_jacobi_sampled():
    rng = random.Random(22)
    for _ in range(60):
        x, y, z = rand_field(rng), rand_field(rng), rand_field(rng)
        total = x.bracket(y).bracket(z) + y.bracket(z).bracket(x) + z.bracket(x).bracket(y)
        assert total.is_zero()


def test_bracket_matches_operator_composition():
    rng = random.Random(23)
    for _ in range(40):
        x, y = rand_field(rng), rand_field(rng)
        b = x.bracket(y)
        for p in (APoly.mono(1, 0), APoly.mono(-1, 2), APoly.mono(0, 1)):
            assert b.apply(p) == x.apply(y.apply(p)) - y.apply(x.apply(p))


def test_m10_delta_closed_under_bracket():
    samples = m10_samples()
    for x, y in itertools.islice(itertools.combinations(samples, 2), 300):
        assert x.bracket(y).in_m10_delta()


def test_pi_is_lie_homomorphism():
    samples = m10_samples()
    for x, y in itertools.islice(itertools.combinations(samples, 2), 300):
        lhs = x.bracket(y).pi_project()
        rhs = mat_commutator(x.pi_project(), y.pi_project())
        assert lhs == rhs


def test_render():
    x = VField(APoly.mono(2, 0) - APoly.mono(1, 0), None)
    assert x.render() == "(t1^2 - t1)*d1"
    assert VField.zero().render() == "0"
