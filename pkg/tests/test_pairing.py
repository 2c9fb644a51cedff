import random

import pytest

from weilchar.curves import (Curve, CurvePoint, count_points, extension_order,
                             frobenius_map, point_add, sample_m_torsion,
                             scalar_mul, torsion_basis,
                             torsion_extension_degree, velu_isogeny)
from weilchar.fields import (FieldElement, FieldTower, PrimeField,
                             element_order, make_extension)
from weilchar.pairing import PairingValue, weil_pairing


def curve_over(p, a4, a6, r=1):
    base = FieldTower(PrimeField(p), [])
    tower = make_extension(FieldTower(PrimeField(p), []), r) if r > 1 else base
    lvl = 1 if r > 1 else 0
    return Curve(tower, lvl,
                 FieldElement(tower, lvl, tower.from_int(a4, lvl)),
                 FieldElement(tower, lvl, tower.from_int(a6, lvl)))


def test_two_torsion_frozen_values():
    rng = random.Random(11)
    # y^2 = x^3 - x over F_13 has full rational 2-torsion
    E = curve_over(13, -1 % 13, 0)
    P = E.point(0, 0)
    Q = E.point(1, 0)
    base = E.tower
    one = FieldElement(base, 0, base.from_int(1, 0))
    minus_one = FieldElement(base, 0, base.from_int(-1 % 13, 0))
    assert weil_pairing(E, P, Q, 2, rng).value == minus_one
    assert weil_pairing(E, P, P, 2, rng).value == one
    assert weil_pairing(E, P, CurvePoint.infinity(), 2, rng).value == one


def test_pairing_value_validates_order():
    base = FieldTower(PrimeField(13), [])
    two = FieldElement(base, 0, base.from_int(2, 0))
    with pytest.raises(ValueError):
        PairingValue(two, 3)  # 2^3 = 8 != 1 mod 13


@pytest.mark.parametrize("m,q,a4,a6", [
    (3, 13, 2, 3),
    (4, 13, 2, 3),
    (5, 13, 2, 3),
    (7, 11, 3, 4),
    (8, 13, 2, 3),
])
def test_pairing_properties(m, q, a4, a6):
    rng = random.Random(11)
    E = curve_over(q, a4, a6)
    N, t = count_points(E)
    r = torsion_extension_degree(E, m)
    Er = curve_over(q, a4, a6, r=r) if r > 1 else E
    Nr = extension_order(q, t, r)
    P, Q = torsion_basis(Er, m, Nr, rng)

    z = weil_pairing(Er, P, Q, m, rng).value
    assert element_order(z, m) == m, "a basis must pair to a primitive root"
    assert weil_pairing(Er, P, P, m, rng).value == z / z
    assert weil_pairing(Er, Q, P, m, rng).value == z.inverse()
    for _ in range(4):
        a, b = rng.randrange(1, m), rng.randrange(1, m)
        za = weil_pairing(Er, scalar_mul(Er, a, P),
                          scalar_mul(Er, b, Q), m, rng).value
        assert za == z ** (a * b)
    zg = weil_pairing(Er, frobenius_map(P, q), frobenius_map(Q, q),
                      m, rng).value
    assert zg == z ** q, "pairing must commute with the q-power Frobenius"
    # choice independence: the divisor shifts do not leak into the value
    assert weil_pairing(Er, P, Q, m, random.Random(999)).value == z


def test_pairing_compatibility_across_m():
    rng = random.Random(11)
    E = curve_over(13, 2, 3)
    N, t = count_points(E)
    r = torsion_extension_degree(E, 4)
    Er = curve_over(13, 2, 3, r=r)
    Nr = extension_order(13, t, r)
    P, Q = torsion_basis(Er, 4, Nr, rng)
    z4 = weil_pairing(Er, P, Q, 4, rng).value
    z2 = weil_pairing(Er, scalar_mul(Er, 2, P), scalar_mul(Er, 2, Q),
                      2, rng).value
    assert z4 * z4 == z2


def test_isogeny_compatibility():
    rng = random.Random(11)
    E0 = curve_over(13, 2, 3)
    N0, t0 = count_points(E0)
    tw12 = make_extension(FieldTower(PrimeField(13), []), 12)
    E12 = E0.in_tower(tw12, 1)
    N12 = extension_order(13, t0, 12)
    K = None
    for _ in range(60):
        R5 = sample_m_torsion(E12, 5, N12, rng)
        T = point_add(E12, frobenius_map(R5, 13), scalar_mul(E12, -4, R5))
        if T.is_infinity():
            continue
        if frobenius_map(T, 13) == scalar_mul(E12, 2, T):
            K = T
            break
    assert K is not None, "no 5-eigenpoint with eigenvalue 2 found"
    phi = velu_isogeny(E0, K, 5)
    P3, Q3 = torsion_basis(E12, 3, N12, rng)
    z3 = weil_pairing(E12, P3, Q3, 3, rng).value
    C12 = phi.codomain.in_tower(tw12, 1)
    iP, iQ = phi(P3), phi(Q3)
    assert C12.contains(iP) and C12.contains(iQ)
    assert weil_pairing(C12, iP, iQ, 3, rng).value == z3 ** 5
