"""Arithmetic in small finite fields GF(p^n).

Elements are dense coefficient vectors over Z_p (constant term first),
reduced modulo a fixed monic irreducible polynomial.  Fields here are tiny,
at most 2^16 elements, so the code favours clarity over speed: no log
tables, no precomputation beyond the modulus search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iter_product

from .errors import NonPrimeError, TooLargeError

ORDER_BOUND = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) presented as Z_p[x] modulo `modulus`.

    `modulus` lists coefficients constant term first and includes the
    leading 1; it is the lexicographically smallest monic irreducible of
    degree n, so two specs for the same (p, n) are identical.
    """

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.n


@dataclass(frozen=True)
class FieldElement:
    """Residue representative: exactly n coefficients, each in [0, p)."""

    coeffs: tuple[int, ...]


# -- dense polynomial helpers (coefficient lists, constant term first) -------


def _trim(poly):
    i = len(poly)
    while i > 0 and poly[i - 1] == 0:
        i -= 1
    return tuple(poly[:i])


def _poly_add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _poly_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_divmod(num, den, p):
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = list(num)
    dn = len(den) - 1
    lead_inv = pow(den[-1], -1, p)
    quo = [0] * max(0, len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] % p
        if c:
            f = (c * lead_inv) % p
            quo[i - dn] = f
            for j, dj in enumerate(den):
                num[i - dn + j] = (num[i - dn + j] - f * dj) % p
    return _trim(quo), _trim(num[:dn])


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for lower in _iter_product(range(p), repeat=d):
            _, rem = _poly_divmod(poly, lower + (1,), p)
            if not rem:
                return False
    return True


def field_create(p: int, n: int) -> FieldSpec:
    """Construct GF(p^n) with a deterministic modulus.

    The modulus is the lexicographically smallest monic irreducible degree-n
    polynomial over Z_p, coefficients compared low-degree-first.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if p**n > ORDER_BOUND:
        raise TooLargeError(f"field order {p**n} exceeds bound {ORDER_BOUND}")
    if n == 1:
        return FieldSpec(p, 1, (0, 1))
    for lower in _iter_product(range(p), repeat=n):
        candidate = lower + (1,)
        if _is_irreducible(candidate, p):
            return FieldSpec(p, n, candidate)
    raise AssertionError("no irreducible polynomial found (impossible)")


# -- element construction ----------------------------------------------------


def element(spec: FieldSpec, coeffs) -> FieldElement:
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != spec.n:
        raise ValueError(f"need exactly {spec.n} coefficients")
    if any(c < 0 or c >= spec.p for c in coeffs):
        raise ValueError(f"coefficients must lie in [0, {spec.p})")
    return FieldElement(coeffs)


def zero(spec: FieldSpec) -> FieldElement:
    return FieldElement((0,) * spec.n)


def one(spec: FieldSpec) -> FieldElement:
    return FieldElement((1,) + (0,) * (spec.n - 1))


def gen(spec: FieldSpec) -> FieldElement:
    """The residue class of x (reduces to 0 in a prime field with modulus x)."""
    if spec.n == 1:
        q, r = _poly_divmod((0, 1), spec.modulus, spec.p)
        return _from_poly(spec, r)
    return element(spec, (0, 1) + (0,) * (spec.n - 2))


def from_index(spec: FieldSpec, i: int) -> FieldElement:
    """Element number i in base-p digit order (constant digit least significant)."""
    if i < 0 or i >= spec.order:
        raise ValueError("index out of range")
    coeffs = []
    for _ in range(spec.n):
        i, c = divmod(i, spec.p)
        coeffs.append(c)
    return FieldElement(tuple(coeffs))


def to_index(spec: FieldSpec, a: FieldElement) -> int:
    i = 0
    for c in reversed(a.coeffs):
        i = i * spec.p + c
    return i


def elements(spec: FieldSpec):
    """All field elements in index order."""
    for i in range(spec.order):
        yield from_index(spec, i)


def _from_poly(spec, poly):
    return FieldElement(tuple(poly) + (0,) * (spec.n - len(poly)))


def _check(spec, a):
    if len(a.coeffs) != spec.n or any(c < 0 or c >= spec.p for c in a.coeffs):
        raise ValueError("element does not belong to this field")


# -- arithmetic ---------------------------------------------------------------


def add(spec: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    _check(spec, a)
    _check(spec, b)
    return _from_poly(spec, _poly_add(a.coeffs, b.coeffs, spec.p))


def neg(spec: FieldSpec, a: FieldElement) -> FieldElement:
    _check(spec, a)
    return FieldElement(tuple((-c) % spec.p for c in a.coeffs))


def sub(spec: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    return add(spec, a, neg(spec, b))


def mul(spec: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    _check(spec, a)
    _check(spec, b)
    prod = _poly_mul(_trim(a.coeffs), _trim(b.coeffs), spec.p)
    _, rem = _poly_divmod(prod, spec.modulus, spec.p)
    return _from_poly(spec, rem)


def inv(spec: FieldSpec, a: FieldElement) -> FieldElement:
    """Multiplicative inverse via the extended Euclidean algorithm."""
    _check(spec, a)
    apoly = _trim(a.coeffs)
    if not apoly:
        raise ZeroDivisionError(f"inverse of zero in GF({spec.p}^{spec.n})")
    r0, r1 = apoly, spec.modulus
    s0, s1 = (1,), ()
    while r1:
        q, r = _poly_divmod(r0, r1, spec.p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, spec.p), spec.p)
    # r0 is a nonzero constant since the modulus is irreducible
    scale = pow(r0[0], -1, spec.p)
    _, rem = _poly_divmod(_poly_mul(s0, (scale,), spec.p), spec.modulus, spec.p)
    return _from_poly(spec, rem)


def pow_(spec: FieldSpec, a: FieldElement, e: int) -> FieldElement:
    _check(spec, a)
    if e < 0:
        return pow_(spec, inv(spec, a), -e)
    result = one(spec)
    base = a
    while e:
        if e & 1:
            result = mul(spec, result, base)
        base = mul(spec, base, base)
        e >>= 1
    return result


def frobenius(spec: FieldSpec, a: FieldElement) -> FieldElement:
    """x -> x^p, the field's Frobenius automorphism."""
    return pow_(spec, a, spec.p)
