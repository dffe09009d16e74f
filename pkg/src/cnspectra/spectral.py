"""Common-neighborhood matrices and their spectra.

Provides the CN / CNRS / CNL / CNSL matrices of a graph, exact spectra for
disjoint unions of complete graphs, a deterministic cyclic Jacobi
eigensolver as the numeric oracle, exact rational energies, and exact
integrality certification via fraction-free elimination over arbitrary
precision integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AmbiguousClusterError, NoConvergenceError
from .graphs import (
    CliqueDecomposition,
    CommutingGraph,
    clique_decomposition,
    connected_components,
)

CN_ALL_PAIRS = "all-pairs"
CN_ADJACENT_ONLY = "adjacent-only"

SIZE_BOUND = 4096
JACOBI_MAX_SWEEPS = 50
INTEGER_CLUSTER_TOL = 1e-6


# -- matrices ------------------------------------------------------------------


def cn_matrix(graph: CommutingGraph, mode: str = CN_ALL_PAIRS) -> np.ndarray:
    """Common-neighborhood counts as a symmetric int64 matrix.

    Entry (i, j) with i != j counts the vertices adjacent to both v_i and
    v_j; the diagonal is zero.  The default counts every distinct pair,
    adjacent or not.  ``adjacent-only`` zeroes the counts on non-edges, a
    variant that coincides with the default exactly on clique unions.
    """
    a = graph.adjacency.astype(np.int64)
    cn = a @ a
    np.fill_diagonal(cn, 0)
    if mode == CN_ADJACENT_ONLY:
        cn *= a
    elif mode != CN_ALL_PAIRS:
        raise ValueError(f"unknown CN mode {mode!r}")
    return cn


def cnrs_cnl_cnsl(cn: np.ndarray):
    """Row-sum diagonal, Laplacian-style and signless-Laplacian-style matrices."""
    cn = np.asarray(cn, dtype=np.int64)
    if not np.array_equal(cn, cn.T) or cn.diagonal().any():
        raise ValueError("CN matrix must be symmetric with zero diagonal")
    cnrs = np.diag(cn.sum(axis=1))
    return cnrs, cnrs - cn, cnrs + cn


def delta(graph: CommutingGraph, mode: str = CN_ALL_PAIRS) -> Fraction:
    """Average CN row sum, tr(CNRS)/|V|, as an exact rational."""
    cn = cn_matrix(graph, mode)
    return Fraction(int(cn.sum()), graph.n)


def baseline_energy(n: int) -> Fraction:
    """Both CN-Laplacian energies of the complete graph K_n: 2(n-1)(n-2)."""
    if n < 1:
        raise ValueError("need n >= 1")
    return Fraction(2 * (n - 1) * (n - 2))


# -- exact spectra ---------------------------------------------------------------


@dataclass(frozen=True)
class ExactSpectrum:
    """Multiset of exact eigenvalues: (value, multiplicity) pairs, ascending."""

    pairs: tuple[tuple[Fraction, int], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.pairs)

    def trace(self) -> Fraction:
        return sum((m * v for v, m in self.pairs), Fraction(0))

    def frobenius_sq(self) -> Fraction:
        return sum((m * v * v for v, m in self.pairs), Fraction(0))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v, _ in self.pairs)

    def expand_floats(self) -> np.ndarray:
        """All eigenvalues with multiplicity, ascending, as floats."""
        return np.repeat(
            [float(v) for v, _ in self.pairs], [m for _, m in self.pairs]
        )

    def multiplicity_of(self, value) -> int:
        v = Fraction(value)
        for ev, m in self.pairs:
            if ev == v:
                return m
        return 0


def make_spectrum(pairs) -> ExactSpectrum:
    """Merge equal eigenvalues, drop zero multiplicities, sort ascending."""
    merged: dict[Fraction, int] = {}
    for value, mult in pairs:
        mult = int(mult)
        if mult < 0:
            raise ValueError("multiplicities must be nonnegative")
        if mult == 0:
            continue
        v = Fraction(value)
        merged[v] = merged.get(v, 0) + mult
    return ExactSpectrum(tuple(sorted(merged.items())))


def exact_spectrum_clique_union(d: CliqueDecomposition):
    """CNL and CNSL spectra of a disjoint union of complete graphs.

    For each part of l copies of K_m the CNL block contributes eigenvalue 0
    once per clique and m(m-2) with multiplicity m-1 per clique; the CNSL
    block contributes 2(m-1)(m-2) once per clique and (m-2)^2 with
    multiplicity m-1 per clique.  Equal values from different parts merge.
    """
    cnl = []
    cnsl = []
    cnl.append((0, d.clique_count))
    for m, l in d.parts:
        cnl.append((m * (m - 2), l * (m - 1)))
        cnsl.append((2 * (m - 1) * (m - 2), l))
        cnsl.append(((m - 2) ** 2, l * (m - 1)))
    return make_spectrum(cnl), make_spectrum(cnsl)


def delta_of_decomposition(d: CliqueDecomposition) -> Fraction:
    """tr(CNRS)/|V| of a clique union: each K_m row sums to (m-1)(m-2)."""
    tr = sum(l * m * (m - 1) * (m - 2) for m, l in d.parts)
    return Fraction(tr, d.vertex_count)


def energy(spectrum, delta_value):
    """Sum of multiplicity * |eigenvalue - delta|.

    Exact Fraction for an ExactSpectrum with rational delta; float for a
    NumericSpectrum.  The spectrum's total multiplicity must be the vertex
    count behind `delta_value`.
    """
    if isinstance(spectrum, ExactSpectrum):
        d = Fraction(delta_value)
        return sum((m * abs(v - d) for v, m in spectrum.pairs), Fraction(0))
    d = float(delta_value)
    return float(np.abs(spectrum.values - d).sum())


# -- numeric spectra --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NumericSpectrum:
    """Ascending eigenvalues from the Jacobi solver plus the final residual."""

    values: np.ndarray
    residual: float


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(a.diagonal())
    return float(np.sqrt((off * off).sum()))


def numeric_spectrum(matrix, max_sweeps: int = JACOBI_MAX_SWEEPS) -> NumericSpectrum:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps the upper triangle in row-major order, rotating every nonzero
    off-diagonal entry, until the off-diagonal Frobenius norm drops below
    1e-9 * (1 + ||M||_F) or `max_sweeps` full sweeps have run.  The sweep
    order is fixed, so results are deterministic.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n < 1 or n > SIZE_BOUND:
        raise ValueError(f"size must be in [1, {SIZE_BOUND}]")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    threshold = 1e-9 * (1.0 + float(np.sqrt((a * a).sum())))
    residual = _off_norm(a)
    sweeps = 0
    while residual >= threshold:
        if sweeps >= max_sweeps:
            raise NoConvergenceError(
                f"residual {residual:.3e} above {threshold:.3e} after {sweeps} sweeps"
            )
        for p in range(n - 1):
            row_p = a[p]
            for q in range(p + 1, n):
                apq = row_p[q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (math.sqrt(theta * theta + 1.0) - theta)
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p].copy()
                rq = a[q].copy()
                a[p] = c * rp - s * rq
                a[q] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
        sweeps += 1
        residual = _off_norm(a)
    return NumericSpectrum(np.sort(a.diagonal().copy()), residual)


# -- exact integer linear algebra ---------------------------------------------------


def _int_rows(matrix) -> list[list[int]]:
    if isinstance(matrix, np.ndarray):
        return [[int(x) for x in row] for row in matrix.tolist()]
    return [[int(x) for x in row] for row in matrix]


def _fraction_free_eliminate(rows):
    """Fraction-free Gaussian elimination (Bareiss).

    Returns (rank, det): `det` is the exact determinant when the matrix is
    square (0 if rank deficient).  Division by the previous pivot is exact
    throughout; all arithmetic is arbitrary-precision integer.
    """
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    sign = 1
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            m[rank], m[pivot_row] = m[pivot_row], m[rank]
            sign = -sign
        pivot = m[rank][col]
        top = m[rank]
        for r in range(rank + 1, nrows):
            cur = m[r]
            factor = cur[col]
            for c in range(col + 1, ncols):
                cur[c] = (cur[c] * pivot - factor * top[c]) // prev
            cur[col] = 0
        prev = pivot
        rank += 1
    det = sign * prev if (nrows == ncols and rank == nrows) else 0
    return rank, det


def bareiss_determinant(matrix) -> int:
    rows = _int_rows(matrix)
    if len(rows) == 0:
        return 1
    _, det = _fraction_free_eliminate(rows)
    return det


def fraction_free_rank(matrix) -> int:
    rows = _int_rows(matrix)
    if len(rows) == 0:
        return 0
    rank, _ = _fraction_free_eliminate(rows)
    return rank


def _diagonal_blocks(matrix: np.ndarray) -> list[np.ndarray]:
    """Index sets of the connected components of the off-diagonal pattern."""
    pattern = matrix != 0
    np.fill_diagonal(pattern, False)
    return connected_components(pattern)


@dataclass(frozen=True)
class IntegralityCertificate:
    integral: bool
    witness: tuple[tuple[int, int], ...]


def certify_integral(matrix, spectrum: NumericSpectrum) -> IntegralityCertificate:
    """Exact certification that the spectrum consists of integers.

    Numeric eigenvalues are clustered to the nearest integer (tolerance
    1e-6).  Each candidate integer c is then certified over the integers:
    det(M - cI) must vanish (fraction-free Bareiss elimination) and the
    exact nullity of M - cI must equal the cluster multiplicity.  The
    elimination runs per diagonal block of M, with identical blocks
    deduplicated, so clique-union matrices certify quickly.

    Raises AmbiguousClusterError when some numeric eigenvalue sits farther
    than 1e-6 from every integer even though the exact pre-screen (summed
    nullities of the rounded candidates) accounts for the full dimension.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    n = matrix.shape[0]
    values = spectrum.values
    nearest = np.rint(values)
    far = np.abs(values - nearest) > INTEGER_CLUSTER_TOL

    blocks = _diagonal_blocks(matrix)
    unique_blocks: dict[bytes, tuple[np.ndarray, int]] = {}
    for idx in blocks:
        sub = matrix[np.ix_(idx, idx)]
        key = sub.tobytes() + bytes(str(sub.shape[0]), "ascii")
        if key in unique_blocks:
            sub_stored, count = unique_blocks[key]
            unique_blocks[key] = (sub_stored, count + 1)
        else:
            unique_blocks[key] = (sub, 1)

    cache: dict[tuple[bytes, int], tuple[int, int]] = {}

    def exact_check(c: int) -> tuple[bool, int]:
        det_zero = False
        nullity = 0
        for key, (sub, count) in unique_blocks.items():
            k = (key, c)
            if k not in cache:
                shifted = sub - c * np.eye(sub.shape[0], dtype=np.int64)
                cache[k] = _fraction_free_eliminate(_int_rows(shifted))
            rank, det = cache[k]
            if det == 0:
                det_zero = True
            nullity += count * (sub.shape[0] - rank)
        return det_zero, nullity

    if far.any():
        screen_total = sum(
            exact_check(c)[1] for c in sorted({int(x) for x in nearest})
        )
        if screen_total == n:
            bad = values[far][0]
            raise AmbiguousClusterError(
                f"eigenvalue {bad!r} is not near an integer but the exact "
                "pre-screen accounts for the full dimension"
            )
        return IntegralityCertificate(False, ())

    clusters: dict[int, int] = {}
    for r in nearest:
        clusters[int(r)] = clusters.get(int(r), 0) + 1
    witness = []
    ok = True
    for c in sorted(clusters):
        det_zero, nullity = exact_check(c)
        witness.append((c, nullity))
        if not det_zero or nullity != clusters[c]:
            ok = False
    ok = ok and sum(clusters.values()) == n
    return IntegralityCertificate(ok, tuple(witness))


# -- assembled report -----------------------------------------------------------------


@dataclass(frozen=True)
class EnergyReport:
    """Energies of one graph against the complete-graph baseline."""

    vertex_count: int
    delta: Fraction
    baseline: Fraction
    le_cn: Fraction | None
    le_plus_cn: Fraction | None
    le_cn_numeric: float | None
    le_plus_cn_numeric: float | None
    cnl_integral: bool
    cnsl_integral: bool
    cnl_hyper: bool
    cnsl_hyper: bool
    cnl_border: bool
    cnsl_border: bool


def report_from_decomposition(d: CliqueDecomposition) -> EnergyReport:
    """Exact-path energy report straight from a clique decomposition."""
    cnl_spec, cnsl_spec = exact_spectrum_clique_union(d)
    dv = delta_of_decomposition(d)
    le = energy(cnl_spec, dv)
    le_plus = energy(cnsl_spec, dv)
    base = baseline_energy(d.vertex_count)
    return EnergyReport(
        vertex_count=d.vertex_count,
        delta=dv,
        baseline=base,
        le_cn=le,
        le_plus_cn=le_plus,
        le_cn_numeric=None,
        le_plus_cn_numeric=None,
        cnl_integral=cnl_spec.is_integral(),
        cnsl_integral=cnsl_spec.is_integral(),
        cnl_hyper=le > base,
        cnsl_hyper=le_plus > base,
        cnl_border=le == base,
        cnsl_border=le_plus == base,
    )


def energy_report(
    graph: CommutingGraph, method: str = "both", mode: str = CN_ALL_PAIRS
) -> EnergyReport:
    """Full pipeline on one graph: CN matrices, spectra, energies, flags.

    `method` is "exact", "numeric", or "both".  The exact path requires the
    graph to be a disjoint union of cliques; asking for it on anything else
    raises ValueError.  Integrality flags come from the exact spectra when
    available and from `certify_integral` otherwise.
    """
    if method not in ("exact", "numeric", "both"):
        raise ValueError(f"unknown method {method!r}")
    cn = cn_matrix(graph, mode)
    _, cnl, cnsl = cnrs_cnl_cnsl(cn)
    n = graph.n
    dv = Fraction(int(cn.sum()), n)
    base = baseline_energy(n)

    le = le_plus = None
    cnl_integral = cnsl_integral = None
    if method in ("exact", "both"):
        d = clique_decomposition(graph)
        if d is None:
            if method == "exact":
                raise ValueError(
                    "exact method requires a disjoint union of complete graphs"
                )
        else:
            cnl_spec, cnsl_spec = exact_spectrum_clique_union(d)
            le = energy(cnl_spec, dv)
            le_plus = energy(cnsl_spec, dv)
            cnl_integral = cnl_spec.is_integral()
            cnsl_integral = cnsl_spec.is_integral()

    le_f = le_plus_f = None
    if method in ("numeric", "both"):
        ns_l = numeric_spectrum(cnl)
        ns_q = numeric_spectrum(cnsl)
        df = float(dv)
        le_f = energy(ns_l, df)
        le_plus_f = energy(ns_q, df)
        if cnl_integral is None:
            cnl_integral = certify_integral(cnl, ns_l).integral
            cnsl_integral = certify_integral(cnsl, ns_q).integral

    if le is not None:
        cnl_hyper, cnl_border = le > base, le == base
        cnsl_hyper, cnsl_border = le_plus > base, le_plus == base
    else:
        bf = float(base)
        cnl_hyper = le_f > bf + 1e-9
        cnl_border = abs(le_f - bf) <= 1e-9
        cnsl_hyper = le_plus_f > bf + 1e-9
        cnsl_border = abs(le_plus_f - bf) <= 1e-9

    return EnergyReport(
        vertex_count=n,
        delta=dv,
        baseline=base,
        le_cn=le,
        le_plus_cn=le_plus,
        le_cn_numeric=le_f,
        le_plus_cn_numeric=le_plus_f,
        cnl_integral=bool(cnl_integral),
        cnsl_integral=bool(cnsl_integral),
        cnl_hyper=bool(cnl_hyper),
        cnsl_hyper=bool(cnsl_hyper),
        cnl_border=bool(cnl_border),
        cnsl_border=bool(cnsl_border),
    )
