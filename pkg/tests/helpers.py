"""Independent oracles shared by the test modules.

Everything here deliberately avoids the code paths it is used to check:
rank and determinant go through Fraction Gaussian elimination instead of
fraction-free integer elimination, eigenvalue spot checks go through
shifted inverse iteration instead of Jacobi, and common-neighbor counts
are literal triple loops.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def fraction_rank(matrix) -> int:
    """Rank by plain Gaussian elimination over the rationals."""
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(matrix).tolist()]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        top = rows[rank]
        inv = 1 / top[col]
        for r in range(rank + 1, nrows):
            f = rows[r][col] * inv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], top)]
        rank += 1
    return rank


def fraction_determinant(matrix) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(matrix).tolist()]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def brute_force_cn(adjacency, all_pairs=True):
    """Common-neighbor counts by literal triple loop."""
    n = adjacency.shape[0]
    cn = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if not all_pairs and not adjacency[i, j]:
                continue
            cn[i, j] = sum(
                1
                for x in range(n)
                if x != i and x != j and adjacency[i, x] and adjacency[j, x]
            )
    return cn


def inverse_iteration_eigenvalue(matrix, shift, iterations=4):
    """Rayleigh quotient after shifted inverse iteration near `shift`."""
    m = np.asarray(matrix, dtype=np.float64)
    n = m.shape[0]
    rng = np.random.default_rng(12345)
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    mu = shift
    for _ in range(iterations):
        try:
            y = np.linalg.solve(m - mu * np.eye(n), x)
        except np.linalg.LinAlgError:
            mu += 1e-8 * (1.0 + abs(mu))
            y = np.linalg.solve(m - mu * np.eye(n), x)
        x = y / np.linalg.norm(y)
        mu = float(x @ m @ x)
    return mu


def permutation_closure(generators, identity_size=None):
    """Close a set of permutations (tuples) under composition.

    Returns the multiplication table and element list; used to build small
    oracle groups independently of the package constructors.
    """
    gens = [tuple(g) for g in generators]
    n = len(gens[0])
    identity = tuple(range(n))
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                prod = tuple(a[g[i]] for i in range(n))
                if prod not in seen:
                    seen.add(prod)
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt
    index = {e: i for i, e in enumerate(elements)}
    size = len(elements)
    table = np.zeros((size, size), dtype=np.int32)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[tuple(a[b[k]] for k in range(n))]
    return table, elements
