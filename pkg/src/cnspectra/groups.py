"""Finite groups as explicit Cayley tables.

Constructors for every supported family (presented two-generator groups,
quasidihedral, dihedral, dicyclic, metacyclic, U_{6n}, Sz(2), GL(2,q),
SL(2,2^k), the two unitriangular matrix families over GF(p^n), and direct
products with abelian groups) plus center / centralizer / quotient
machinery.  Every table is validated at construction: Latin square,
two-sided identity and inverses, and associativity (exhaustive for order
<= 512, sampled above that).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import fields
from .errors import InvalidParamsError, InvalidPresentationError, TooLargeError

ORDER_BOUND = 4096
_EXHAUSTIVE_ASSOCIATIVITY_BOUND = 512
_SAMPLED_TRIPLES = 10_000


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group: `mul[a, b]` is the index of the product a*b."""

    order: int
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    labels: tuple[str, ...] | None = None

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else f"g{g}"


def from_table(mul, labels=None) -> GroupTable:
    """Wrap and validate a raw multiplication table."""
    mul = np.ascontiguousarray(mul, dtype=np.int32)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
        raise ValueError("multiplication table must be square")
    n = mul.shape[0]
    if n == 0:
        raise ValueError("empty multiplication table")
    if n > ORDER_BOUND:
        raise TooLargeError(f"group order {n} exceeds bound {ORDER_BOUND}")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise ValueError("label count does not match order")
    rng = np.arange(n, dtype=np.int32)
    if mul.min() < 0 or mul.max() >= n:
        raise ValueError("table entries out of range")
    if not np.array_equal(np.sort(mul, axis=1), np.broadcast_to(rng, (n, n))):
        raise ValueError("rows are not permutations (not a Latin square)")
    if not np.array_equal(np.sort(mul, axis=0), np.broadcast_to(rng[:, None], (n, n))):
        raise ValueError("columns are not permutations (not a Latin square)")
    candidates = [
        e
        for e in range(n)
        if np.array_equal(mul[e], rng) and np.array_equal(mul[:, e], rng)
    ]
    if len(candidates) != 1:
        raise ValueError("table has no unique two-sided identity")
    e = candidates[0]
    inv = np.empty(n, dtype=np.int32)
    for g in range(n):
        inv[g] = int(np.nonzero(mul[g] == e)[0][0])
    if not np.all(mul[inv, rng] == e):
        raise ValueError("inverses are not two-sided")
    _check_associativity(mul)
    return GroupTable(n, mul, e, inv, labels)


def _check_associativity(mul: np.ndarray) -> None:
    n = mul.shape[0]
    if n <= _EXHAUSTIVE_ASSOCIATIVITY_BOUND:
        for a in range(n):
            left = mul[mul[a], :]  # [b, c] -> (a*b)*c
            right = mul[a][mul]  # [b, c] -> a*(b*c)
            if not np.array_equal(left, right):
                raise ValueError(f"associativity fails at element {a}")
    else:
        rng = np.random.default_rng(0)
        a = rng.integers(0, n, size=_SAMPLED_TRIPLES)
        b = rng.integers(0, n, size=_SAMPLED_TRIPLES)
        c = rng.integers(0, n, size=_SAMPLED_TRIPLES)
        if not np.all(mul[mul[a, b], c] == mul[a, mul[b, c]]):
            raise ValueError("associativity fails on sampled triples")


# -- constructors -------------------------------------------------------------


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise InvalidParamsError("cyclic group needs order >= 1")
    if n > ORDER_BOUND:
        raise TooLargeError(f"order {n} exceeds bound {ORDER_BOUND}")
    idx = np.arange(n, dtype=np.int64)
    mul = (idx[:, None] + idx[None, :]) % n
    return from_table(mul, [str(i) for i in range(n)])


def build_presented(m: int, s: int, t: int = 0, k: int = 1) -> GroupTable:
    """The group <x, y | x^m = 1, y^s = x^t, y^-1 x y = x^k> of order m*s.

    Elements are enumerated as x^i y^j in i-major order; multiplication is
    (x^i y^j)(x^i' y^j') = x^(i + i'*k^j mod m) y^(j + j'), with y-exponent
    overflow folded through y^s = x^t.  Requires the consistency congruences
    k^s = 1 (mod m) and t*(k - 1) = 0 (mod m).
    """
    if m < 1 or s < 1:
        raise InvalidParamsError("need m >= 1 and s >= 1")
    if not 0 <= t < m:
        raise InvalidParamsError("need 0 <= t < m")
    if m == 1:
        k = 0
    elif not 1 <= k < m:
        raise InvalidParamsError("need 1 <= k < m")
    if m * s > ORDER_BOUND:
        raise TooLargeError(f"order {m * s} exceeds bound {ORDER_BOUND}")
    if pow(k, s, m) != 1 % m:
        raise InvalidPresentationError(f"k^s = {pow(k, s, m)} != 1 (mod {m})")
    if (t * (k - 1)) % m != 0:
        raise InvalidPresentationError(f"t*(k-1) = {t * (k - 1)} != 0 (mod {m})")
    n = m * s
    idx = np.arange(n, dtype=np.int64)
    i1, j1 = (idx // s)[:, None], (idx % s)[:, None]
    i2, j2 = (idx // s)[None, :], (idx % s)[None, :]
    kpow = np.array([pow(k, j, m) for j in range(s)], dtype=np.int64)
    new_i = (i1 + i2 * kpow[j1]) % m
    sum_j = j1 + j2
    fold = sum_j >= s
    new_i = (new_i + np.where(fold, t, 0)) % m
    new_j = sum_j - s * fold
    mul = new_i * s + new_j
    labels = []
    for i in range(m):
        for j in range(s):
            if i == 0 and j == 0:
                labels.append("e")
            else:
                xs = "" if i == 0 else (f"x{i}" if i > 1 else "x")
                ys = "" if j == 0 else (f"y{j}" if j > 1 else "y")
                labels.append(xs + ys)
    return from_table(mul, labels)


def quasidihedral(n: int) -> GroupTable:
    """Quasidihedral group of order 2^n, n >= 4.

    The conjugation exponent is 2^(n-2) - 1: with exponent 2^(n-2) the
    presentation fails the consistency congruence entirely (x -> x^(2^(n-2))
    is not an automorphism of the cyclic factor), and this choice is the one
    whose commuting graph decomposes as K_(2^(n-1)-2) plus 2^(n-2) disjoint
    edges, as the family's spectra require.
    """
    if n < 4:
        raise InvalidParamsError("quasidihedral needs n >= 4")
    return build_presented(2 ** (n - 1), 2, 0, 2 ** (n - 2) - 1)


def dihedral(m: int) -> GroupTable:
    """Dihedral group of order 2m, m >= 3."""
    if m < 3:
        raise InvalidParamsError("dihedral needs m >= 3")
    return build_presented(m, 2, 0, m - 1)


def dicyclic(n: int) -> GroupTable:
    """Dicyclic group of order 4n, n >= 2 (generalized quaternion for n a 2-power)."""
    if n < 2:
        raise InvalidParamsError("dicyclic needs n >= 2")
    return build_presented(2 * n, 2, n, 2 * n - 1)


def metacyclic(m: int, n: int) -> GroupTable:
    """The metacyclic group <x, y | x^m = y^(2n) = 1, y x y^-1 = x^-1> of order 2mn."""
    if m < 2 or n < 1:
        raise InvalidParamsError("metacyclic needs m >= 2 and n >= 1")
    return build_presented(m, 2 * n, 0, m - 1)


def u6n(n: int) -> GroupTable:
    """The group U_{6n} = <x, y | x^(2n) = y^3 = 1, x^-1 y x = y^-1> of order 6n."""
    if n < 1:
        raise InvalidParamsError("u6n needs n >= 1")
    return build_presented(3, 2 * n, 0, 2)


def sz2() -> GroupTable:
    """Sz(2), the order-20 Frobenius group <a, b | a^5 = b^4 = 1, b^-1 a b = a^2>."""
    return build_presented(5, 4, 0, 2)


def _prime_power(q: int):
    if q < 2:
        raise InvalidParamsError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    qq = q
    while qq % p == 0:
        qq //= p
        e += 1
    if qq != 1:
        raise InvalidParamsError(f"{q} is not a prime power")
    return p, e


def _field_index_tables(q: int):
    """Index-level add/mul/neg/frobenius tables for GF(q)."""
    p, e = _prime_power(q)
    spec = fields.field_create(p, e)
    els = list(fields.elements(spec))
    add = np.empty((q, q), dtype=np.int32)
    mul = np.empty((q, q), dtype=np.int32)
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            add[i, j] = fields.to_index(spec, fields.add(spec, a, b))
            mul[i, j] = fields.to_index(spec, fields.mul(spec, a, b))
    neg = np.array(
        [fields.to_index(spec, fields.neg(spec, a)) for a in els], dtype=np.int32
    )
    frob = np.array(
        [fields.to_index(spec, fields.frobenius(spec, a)) for a in els],
        dtype=np.int32,
    )
    return add, mul, neg, frob


def _matrix_table(q, a, b, c, d, add, mul):
    """Cayley table for 2x2 matrices (a, b; c, d) over GF(q), given as index arrays."""
    n = len(a)
    code = ((a * q + b) * q + c) * q + d
    lookup = np.full(q**4, -1, dtype=np.int64)
    lookup[code] = np.arange(n)
    table = np.empty((n, n), dtype=np.int32)
    chunk = max(1, (1 << 21) // max(n, 1))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        a1, b1 = a[lo:hi, None], b[lo:hi, None]
        c1, d1 = c[lo:hi, None], d[lo:hi, None]
        a2, b2, c2, d2 = a[None, :], b[None, :], c[None, :], d[None, :]
        e11 = add[mul[a1, a2], mul[b1, c2]]
        e12 = add[mul[a1, b2], mul[b1, d2]]
        e21 = add[mul[c1, a2], mul[d1, c2]]
        e22 = add[mul[c1, b2], mul[d1, d2]]
        prod = lookup[((e11.astype(np.int64) * q + e12) * q + e21) * q + e22]
        if prod.min() < 0:
            raise AssertionError("matrix set not closed under multiplication")
        table[lo:hi] = prod
    labels = [f"[{ai},{bi};{ci},{di}]" for ai, bi, ci, di in zip(a, b, c, d)]
    return from_table(table, labels)


def _all_matrices(q):
    codes = np.arange(q**4, dtype=np.int64)
    a = codes // q**3
    b = (codes // q**2) % q
    c = (codes // q) % q
    d = codes % q
    return a, b, c, d


def gl2(q: int) -> GroupTable:
    """GL(2, q) for a prime power q > 2; order (q^2 - 1)(q^2 - q)."""
    _prime_power(q)
    if q <= 2:
        raise InvalidParamsError("gl2 needs q > 2")
    order = (q * q - 1) * (q * q - q)
    if order > ORDER_BOUND:
        raise TooLargeError(f"order {order} exceeds bound {ORDER_BOUND}")
    add, mul_t, neg, _ = _field_index_tables(q)
    a, b, c, d = _all_matrices(q)
    det = add[mul_t[a, d], neg[mul_t[b, c]]]
    keep = det != 0
    g = _matrix_table(q, a[keep], b[keep], c[keep], d[keep], add, mul_t)
    assert g.order == order
    return g


def sl2(q: int) -> GroupTable:
    """SL(2, 2^k) = PSL(2, 2^k) for k >= 2; order q(q^2 - 1)."""
    p, k = _prime_power(q)
    if p != 2 or k < 2:
        raise InvalidParamsError("sl2 needs q = 2^k with k >= 2")
    order = q * (q * q - 1)
    if order > ORDER_BOUND:
        raise TooLargeError(f"order {order} exceeds bound {ORDER_BOUND}")
    add, mul_t, neg, _ = _field_index_tables(q)
    a, b, c, d = _all_matrices(q)
    det = add[mul_t[a, d], neg[mul_t[b, c]]]
    keep = det == 1  # index 1 is the field element 1 in base-p digit order
    g = _matrix_table(q, a[keep], b[keep], c[keep], d[keep], add, mul_t)
    assert g.order == order
    return g


def hanaki_nu(n: int) -> GroupTable:
    """Lower unitriangular matrices U(a, b) over GF(2^n) with (3,2) entry a^2.

    U(a, b) U(a', b') = U(a + a', b + b' + a^2 a'); order 4^n, n >= 2.
    """
    if n < 2:
        raise InvalidParamsError("hanaki_nu needs n >= 2")
    q = 2**n
    if q * q > ORDER_BOUND:
        raise TooLargeError(f"order {q * q} exceeds bound {ORDER_BOUND}")
    add, mul_t, _, frob = _field_index_tables(q)
    idx = np.arange(q * q, dtype=np.int64)
    a, b = idx // q, idx % q
    a1, b1 = a[:, None], b[:, None]
    a2, b2 = a[None, :], b[None, :]
    new_a = add[a1, a2].astype(np.int64)
    new_b = add[add[b1, b2], mul_t[frob[a1], a2]]
    table = new_a * q + new_b
    labels = [f"U({ai},{bi})" for ai, bi in zip(a, b)]
    return from_table(table, labels)


def hanaki_p(p: int, n: int) -> GroupTable:
    """Lower unitriangular matrices V(a, b, c) over GF(p^n).

    V(a, b, c) V(a', b', c') = V(a + a', b + b' + c a', c + c'); order p^(3n).
    """
    if not fields.is_prime(p):
        raise InvalidParamsError(f"{p} is not prime")
    if n < 1:
        raise InvalidParamsError("hanaki_p needs n >= 1")
    q = p**n
    if q**3 > ORDER_BOUND:
        raise TooLargeError(f"order {q**3} exceeds bound {ORDER_BOUND}")
    add, mul_t, _, _ = _field_index_tables(q)
    idx = np.arange(q**3, dtype=np.int64)
    a, b, c = idx // (q * q), (idx // q) % q, idx % q
    a1, b1, c1 = a[:, None], b[:, None], c[:, None]
    a2, b2, c2 = a[None, :], b[None, :], c[None, :]
    new_a = add[a1, a2].astype(np.int64)
    new_b = add[add[b1, b2], mul_t[c1, a2]].astype(np.int64)
    new_c = add[c1, c2]
    table = (new_a * q + new_b) * q + new_c
    labels = [f"V({ai},{bi},{ci})" for ai, bi, ci in zip(a, b, c)]
    return from_table(table, labels)


def _pair_product(g: GroupTable, h: GroupTable) -> GroupTable:
    ng, nh = g.order, h.order
    if ng * nh > ORDER_BOUND:
        raise TooLargeError(f"order {ng * nh} exceeds bound {ORDER_BOUND}")
    mul = (
        g.mul.astype(np.int64)[:, None, :, None] * nh + h.mul[None, :, None, :]
    ).reshape(ng * nh, ng * nh)
    labels = [
        f"({g.label(x)},{h.label(y)})" for x in range(ng) for y in range(nh)
    ]
    return from_table(mul, labels)


def direct_product(g: GroupTable, cyclic_orders) -> GroupTable:
    """G x Z_{r1} x ... x Z_{rj}; elements enumerated lexicographically."""
    result = g
    for r in cyclic_orders:
        result = _pair_product(result, cyclic(int(r)))
    return result


# -- family specs and serialization -------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """Serializable tag naming one group family instance."""

    family: str
    params: dict

    def key(self) -> str:
        return json.dumps(
            {"family": self.family, "params": self.params}, sort_keys=True
        )


_FAMILY_BUILDERS = {
    "presented": lambda p: build_presented(p["m"], p["s"], p.get("t", 0), p.get("k", 1)),
    "cyclic": lambda p: cyclic(p["n"]),
    "quasidihedral": lambda p: quasidihedral(p["n"]),
    "dihedral": lambda p: dihedral(p["m"]),
    "dicyclic": lambda p: dicyclic(p["n"]),
    "metacyclic": lambda p: metacyclic(p["m"], p["n"]),
    "u6n": lambda p: u6n(p["n"]),
    "sz2": lambda p: sz2(),
    "gl2": lambda p: gl2(p["q"]),
    "sl2": lambda p: sl2(p["q"]),
    "hanaki-nu": lambda p: hanaki_nu(p["n"]),
    "hanaki-p": lambda p: hanaki_p(p["p"], p["n"]),
}


def build_family(spec: GroupSpec) -> GroupTable:
    if spec.family == "direct-product":
        inner = spec_from_json(spec.params["inner"])
        return direct_product(build_family(inner), spec.params["abelian"])
    builder = _FAMILY_BUILDERS.get(spec.family)
    if builder is None:
        raise InvalidParamsError(f"unknown family {spec.family!r}")
    return builder(spec.params)


def spec_to_json(spec: GroupSpec) -> dict:
    return {"family": spec.family, "params": spec.params}


def spec_from_json(obj) -> GroupSpec:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "family" not in obj:
        raise InvalidParamsError("group spec must be {'family': ..., 'params': ...}")
    return GroupSpec(str(obj["family"]), dict(obj.get("params", {})))


def group_to_json(g: GroupTable) -> str:
    doc = {
        "order": g.order,
        "mul": g.mul.tolist(),
        "labels": list(g.labels) if g.labels else None,
    }
    return json.dumps(doc, separators=(",", ":"))


def group_from_json(doc) -> GroupTable:
    if isinstance(doc, str):
        doc = json.loads(doc)
    mul = np.array(doc["mul"], dtype=np.int32)
    if mul.shape[0] != doc.get("order"):
        raise ValueError("declared order does not match table size")
    return from_table(mul, doc.get("labels"))


# -- structure queries ---------------------------------------------------------


def commuting_table(g: GroupTable) -> np.ndarray:
    """Boolean matrix: entry (a, b) is True iff ab = ba."""
    return g.mul == g.mul.T


def center(g: GroupTable) -> np.ndarray:
    """Sorted indices of elements commuting with everything."""
    return np.nonzero(commuting_table(g).all(axis=1))[0]


def is_abelian(g: GroupTable) -> bool:
    return bool(np.array_equal(g.mul, g.mul.T))


def centralizer(g: GroupTable, x: int) -> np.ndarray:
    return np.nonzero(commuting_table(g)[x])[0]


def distinct_centralizers(g: GroupTable) -> list[np.ndarray]:
    """Deduplicated centralizers of non-central elements.

    Sorted by (size, smallest member index); empty for abelian groups.
    """
    comm = commuting_table(g)
    central = comm.all(axis=1)
    seen: dict[bytes, np.ndarray] = {}
    for x in range(g.order):
        if central[x]:
            continue
        key = comm[x].tobytes()
        if key not in seen:
            seen[key] = np.nonzero(comm[x])[0]
    return sorted(seen.values(), key=lambda s: (len(s), int(s[0])))


def is_ac(g: GroupTable) -> bool:
    """True iff every centralizer of a non-central element is abelian."""
    comm = commuting_table(g)
    for cent in distinct_centralizers(g):
        if not comm[np.ix_(cent, cent)].all():
            return False
    return True


def element_orders(g: GroupTable) -> np.ndarray:
    orders = np.empty(g.order, dtype=np.int64)
    for x in range(g.order):
        y = x
        o = 1
        while y != g.identity:
            y = int(g.mul[y, x])
            o += 1
        orders[x] = o
    return orders


def order_histogram(g: GroupTable) -> dict[int, int]:
    return dict(sorted(Counter(element_orders(g).tolist()).items()))


def central_quotient(g: GroupTable) -> GroupTable:
    """Cayley table of G/Z(G) on smallest-index coset representatives."""
    z = center(g)
    coset_rep = g.mul[:, z].min(axis=1)
    reps = np.unique(coset_rep)
    pos = {int(r): i for i, r in enumerate(reps)}
    qn = len(reps)
    qmul = np.empty((qn, qn), dtype=np.int32)
    for i, r1 in enumerate(reps):
        qmul[i] = [pos[int(coset_rep[g.mul[r1, r2]])] for r2 in reps]
    labels = [g.label(int(r)) for r in reps] if g.labels else None
    return from_table(qmul, labels)


def _invariant_triple(g: GroupTable):
    return g.order, is_abelian(g), tuple(sorted(order_histogram(g).items()))


def quotient_matches(g: GroupTable, target: str, param: int | None = None) -> bool:
    """Compare G/Z(G) against a named target group.

    Targets: "sz2"; "zpzp" with param p; "d2m" with param m (the dihedral
    group of order 2m; m = 2 means the Klein four-group).  The comparison
    uses the triple (order, abelianness, element-order histogram), which
    separates these particular targets at the orders arising here; it is
    not a general isomorphism test.
    """
    if target == "sz2":
        ref = sz2()
    elif target == "zpzp":
        if param is None or not fields.is_prime(param):
            raise InvalidParamsError("zpzp target needs a prime p")
        ref = _pair_product(cyclic(param), cyclic(param))
    elif target == "d2m":
        if param is None or param < 2:
            raise InvalidParamsError("d2m target needs m >= 2")
        ref = build_presented(param, 2, 0, param - 1)
    else:
        raise InvalidParamsError(f"unknown quotient target {target!r}")
    return _invariant_triple(central_quotient(g)) == _invariant_triple(ref)
