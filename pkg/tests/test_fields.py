"""Finite field arithmetic tests.

The GF(4) modulus is frozen from a brute-force irreducibility search done
right here, independently of the library's own search.
"""

import pytest

from cnspectra import fields
from cnspectra.errors import NonPrimeError, TooLargeError


def _naive_irreducible_quadratics_mod2():
    # a monic quadratic over Z_2 is irreducible iff it has no root
    out = []
    for c0 in (0, 1):
        for c1 in (0, 1):
            if all((x * x + c1 * x + c0) % 2 != 0 for x in (0, 1)):
                out.append((c0, c1, 1))
    return out


def test_prime_field_modulus_is_x():
    spec = fields.field_create(2, 1)
    assert spec.modulus == (0, 1)
    assert spec.order == 2


def test_gf4_modulus_matches_bruteforce_search():
    assert _naive_irreducible_quadratics_mod2() == [(1, 1, 1)]
    spec = fields.field_create(2, 2)
    assert spec.modulus == (1, 1, 1)


def test_composite_characteristic_rejected():
    with pytest.raises(NonPrimeError):
        fields.field_create(4, 1)
    with pytest.raises(NonPrimeError):
        fields.field_create(1, 1)


def test_order_bound_enforced():
    with pytest.raises(TooLargeError):
        fields.field_create(2, 17)
    # 2^16 itself is allowed
    assert fields.field_create(2, 16).order == 65536


def test_field_create_deterministic():
    assert fields.field_create(3, 3) == fields.field_create(3, 3)
    assert fields.field_create(5, 2).modulus == fields.field_create(5, 2).modulus


def test_gf4_multiplication():
    spec = fields.field_create(2, 2)
    x = fields.gen(spec)
    assert fields.mul(spec, x, x).coeffs == (1, 1)  # x^2 = x + 1
    one = fields.one(spec)
    for a in fields.elements(spec):
        assert fields.mul(spec, a, one) == a


def test_inverse_of_zero_raises():
    spec = fields.field_create(2, 2)
    with pytest.raises(ZeroDivisionError):
        fields.inv(spec, fields.zero(spec))


def test_frobenius_gf4():
    spec = fields.field_create(2, 2)
    x = fields.gen(spec)
    assert fields.frobenius(spec, x).coeffs == (1, 1)
    assert fields.frobenius(spec, fields.zero(spec)) == fields.zero(spec)
    assert fields.frobenius(spec, fields.one(spec)) == fields.one(spec)


def test_frobenius_fixes_prime_fields():
    for p in (2, 3, 5, 7, 11, 13):
        spec = fields.field_create(p, 1)
        for a in fields.elements(spec):
            assert fields.frobenius(spec, a) == a


def test_index_round_trip():
    spec = fields.field_create(3, 2)
    for i in range(spec.order):
        assert fields.to_index(spec, fields.from_index(spec, i)) == i


EXTENSION_FIELDS = [
    (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
    (3, 2), (3, 3), (3, 4), (3, 5),
    (5, 2), (5, 3),
    (7, 2),
    (11, 2), (13, 2),
]


@pytest.mark.parametrize("p,n", EXTENSION_FIELDS)
def test_frobenius_is_a_homomorphism(p, n):
    # exhaustive over all element pairs of every extension field of order <= 256
    spec = fields.field_create(p, n)
    els = list(fields.elements(spec))
    frob = {a: fields.frobenius(spec, a) for a in els}
    for a in els:
        for b in els:
            assert frob[fields.add(spec, a, b)] == fields.add(spec, frob[a], frob[b])
            assert frob[fields.mul(spec, a, b)] == fields.mul(spec, frob[a], frob[b])


@pytest.mark.parametrize(
    "p,n",
    EXTENSION_FIELDS + [(2, 1), (3, 1), (7, 1), (97, 1), (251, 1)],
)
def test_multiplicative_group_order(p, n):
    spec = fields.field_create(p, n)
    one = fields.one(spec)
    for a in fields.elements(spec):
        if a == fields.zero(spec):
            continue
        assert fields.pow_(spec, a, spec.order - 1) == one


@pytest.mark.parametrize("p,n", EXTENSION_FIELDS)
def test_inverses(p, n):
    spec = fields.field_create(p, n)
    one = fields.one(spec)
    for a in fields.elements(spec):
        if a == fields.zero(spec):
            continue
        assert fields.mul(spec, a, fields.inv(spec, a)) == one


def test_modulus_is_irreducible_by_trial_division():
    # independent check: the chosen modulus has no factor of degree <= n/2
    from itertools import product

    for p, n in ((2, 4), (3, 3), (5, 2)):
        spec = fields.field_create(p, n)
        for d in range(1, n // 2 + 1):
            for lower in product(range(p), repeat=d):
                divisor = lower + (1,)
                _, rem = fields._poly_divmod(spec.modulus, divisor, p)
                assert rem, f"modulus of GF({p}^{n}) divisible by {divisor}"
