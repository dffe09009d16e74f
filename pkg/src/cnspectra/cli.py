"""Command-line front end.

Subcommands: build, graph, spectrum, energy, classify, verify, sweep.
`verify` runs the three-route agreement check per instance (structural
exact spectrum, numeric eigensolver, closed-form evaluator) and exits
nonzero on any mismatch.  Outputs are deterministic: identical invocations
produce byte-identical documents.

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classify as classify_mod
from . import formulas, graphs, groups, spectral
from .errors import (
    AbelianGroupError,
    InvalidParamsError,
    InvalidPresentationError,
    MalformedInputError,
    NoConvergenceError,
    OutOfDomainError,
    TooLargeError,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

EIGENVALUE_AGREEMENT_TOL = 1e-8
ENERGY_AGREEMENT_RELTOL = 1e-6


# -- family registry -----------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """One verifiable family member: how to build it and which closed form
    and recorded verdict it must match."""

    family: str
    params: dict

    def sort_key(self):
        return (self.family, tuple(sorted(self.params.items())))

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner})"

    def group_spec(self) -> groups.GroupSpec:
        return _REGISTRY[self.family].spec(self.params)

    def build(self) -> groups.GroupTable:
        return groups.build_family(self.group_spec())

    def evaluate(self) -> formulas.FamilyResult:
        return _REGISTRY[self.family].evaluate(self.params)

    def expected(self) -> classify_mod.ExpectedVerdict:
        return _REGISTRY[self.family].reference(self.params)


@dataclass(frozen=True)
class _Family:
    spec: object  # params -> GroupSpec
    evaluate: object  # params -> FamilyResult
    reference: object  # params -> ExpectedVerdict


def _sz2_times(z):
    base = {"family": "sz2", "params": {}}
    if z == 1:
        return groups.GroupSpec("sz2", {})
    return groups.GroupSpec("direct-product", {"inner": base, "abelian": [z]})


def _heisenberg_realization(p, z):
    if z % p != 0:
        raise InvalidParamsError(
            f"constructible realizations need p | z (got p={p}, z={z})"
        )
    base = {"family": "hanaki-p", "params": {"p": p, "n": 1}}
    if z == p:
        return groups.GroupSpec("hanaki-p", {"p": p, "n": 1})
    return groups.GroupSpec("direct-product", {"inner": base, "abelian": [z // p]})


def _d2m_realization(m, z):
    """A group with central quotient dihedral of order 2m and |Z| = z.

    Odd m: the metacyclic group of order 2mz.  Even m needs even z (the
    metacyclic group of order 2(2m)(z/2)); odd z with even m has no
    direct-product realization here.
    """
    if m % 2 == 1:
        return groups.GroupSpec("metacyclic", {"m": m, "n": z})
    if z % 2 == 0:
        return groups.GroupSpec("metacyclic", {"m": 2 * m, "n": z // 2})
    raise InvalidParamsError(
        f"no constructible realization for even m={m} with odd z={z}"
    )


_REGISTRY: dict[str, _Family] = {
    "qd": _Family(
        lambda p: groups.GroupSpec("quasidihedral", {"n": p["n"]}),
        lambda p: formulas.eval_qd(p["n"]),
        lambda p: classify_mod.reference_verdict("qd", n=p["n"]),
    ),
    "psl": _Family(
        lambda p: groups.GroupSpec("sl2", {"q": 2 ** p["k"]}),
        lambda p: formulas.eval_psl(p["k"]),
        lambda p: classify_mod.reference_verdict("psl", k=p["k"]),
    ),
    "gl2": _Family(
        lambda p: groups.GroupSpec("gl2", {"q": p["q"]}),
        lambda p: formulas.eval_gl(p["q"]),
        lambda p: classify_mod.reference_verdict("gl", q=p["q"]),
    ),
    "hanaki-nu": _Family(
        lambda p: groups.GroupSpec("hanaki-nu", {"n": p["n"]}),
        lambda p: formulas.eval_hanaki_nu(p["n"]),
        lambda p: classify_mod.reference_verdict("hanaki-nu", n=p["n"]),
    ),
    "hanaki-p": _Family(
        lambda p: groups.GroupSpec("hanaki-p", {"p": p["p"], "n": p["n"]}),
        lambda p: formulas.eval_hanaki_p(p["p"], p["n"]),
        lambda p: classify_mod.reference_verdict("hanaki-p", p=p["p"], n=p["n"]),
    ),
    "dihedral": _Family(
        lambda p: groups.GroupSpec("dihedral", {"m": p["m"]}),
        lambda p: formulas.eval_corollaries("dihedral", m=p["m"]),
        lambda p: classify_mod.reference_verdict("dihedral", m=p["m"]),
    ),
    "dicyclic": _Family(
        lambda p: groups.GroupSpec("dicyclic", {"n": p["n"]}),
        lambda p: formulas.eval_corollaries("dicyclic", n=p["n"]),
        lambda p: classify_mod.reference_verdict("dicyclic", n=p["n"]),
    ),
    "metacyclic": _Family(
        lambda p: groups.GroupSpec("metacyclic", {"m": p["m"], "n": p["n"]}),
        lambda p: formulas.eval_corollaries("metacyclic", m=p["m"], n=p["n"]),
        lambda p: classify_mod.reference_verdict("metacyclic", m=p["m"], n=p["n"]),
    ),
    "u6n": _Family(
        lambda p: groups.GroupSpec("u6n", {"n": p["n"]}),
        lambda p: formulas.eval_corollaries("u6n", n=p["n"]),
        lambda p: classify_mod.reference_verdict("u6n", n=p["n"]),
    ),
    "sz2": _Family(
        lambda p: groups.GroupSpec("sz2", {}),
        lambda p: formulas.eval_sz2_quotient(1),
        lambda p: classify_mod.reference_verdict("sz2-quotient", z=1),
    ),
    "sz2-quotient": _Family(
        lambda p: _sz2_times(p["z"]),
        lambda p: formulas.eval_sz2_quotient(p["z"]),
        lambda p: classify_mod.reference_verdict("sz2-quotient", z=p["z"]),
    ),
    # realized as (Heisenberg group of order p^3) x Z_a, so z = p*a
    "zpzp-quotient": _Family(
        lambda p: _heisenberg_realization(p["p"], p["z"]),
        lambda p: formulas.eval_zpzp_quotient(p["p"], p["z"]),
        lambda p: classify_mod.reference_verdict("zpzp-quotient", p=p["p"], z=p["z"]),
    ),
    "d2m-quotient": _Family(
        lambda p: _d2m_realization(p["m"], p["z"]),
        lambda p: formulas.eval_d2m_quotient(p["m"], p["z"]),
        lambda p: classify_mod.reference_verdict("d2m-quotient", m=p["m"], z=p["z"]),
    ),
}


def standard_instances() -> list[Instance]:
    """The verification sweep: every constructible family member of order <= 512."""
    out: list[Instance] = []
    out += [Instance("qd", {"n": n}) for n in range(4, 9)]
    out += [Instance("psl", {"k": 2})]
    out += [Instance("gl2", {"q": q}) for q in (3, 4)]
    out += [Instance("hanaki-nu", {"n": n}) for n in (2, 3)]
    out += [Instance("hanaki-p", {"p": p, "n": n}) for p, n in ((2, 1), (3, 1), (2, 2))]
    out += [Instance("dihedral", {"m": m}) for m in range(3, 31)]
    out += [Instance("dicyclic", {"n": n}) for n in range(2, 16)]
    out += [
        Instance("metacyclic", {"m": m, "n": n})
        for m in range(3, 8)
        for n in range(1, 4)
    ]
    out += [Instance("u6n", {"n": n}) for n in range(1, 9)]
    out += [Instance("sz2-quotient", {"z": z}) for z in range(1, 13)]
    out += [Instance("zpzp-quotient", {"p": 2, "z": 2 * a}) for a in range(1, 11)]
    out += [Instance("zpzp-quotient", {"p": 3, "z": 3 * a}) for a in (1, 2, 3)]
    return sorted(out, key=Instance.sort_key)


def classification_extras() -> list[Instance]:
    """Larger and threshold cases verified on the exact path only.

    Together with `standard_instances` this covers the classification
    sweep ranges: QD n <= 9, PSL k <= 3, GL q <= 5, Sz(2)-quotient
    z <= 20, Z_p x Z_p realizations for p in {2, 3, 5} with z <= 10, and
    dihedral-quotient realizations with m <= 13 and group order <= 512.
    """
    out = [Instance("qd", {"n": 9})]
    out += [Instance("psl", {"k": 3})]
    out += [Instance("gl2", {"q": 5})]
    out += [Instance("sz2-quotient", {"z": z}) for z in range(13, 21)]
    out += [Instance("dicyclic", {"n": n}) for n in (5, 6, 7)]
    out += [
        Instance("metacyclic", {"m": m, "n": n})
        for m in range(8, 14)
        for n in (1, 2, 3)
    ]
    out += [Instance("zpzp-quotient", {"p": 5, "z": z}) for z in (5, 10)]
    return sorted(out, key=Instance.sort_key)


# -- three-route verification ---------------------------------------------------


@dataclass
class VerifyOutcome:
    instance: Instance
    vertex_count: int = 0
    le_cn: Fraction | None = None
    le_plus_cn: Fraction | None = None
    discrepancies: list = None  # list[classify_mod.Discrepancy]

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def verify_instance(
    inst: Instance, numeric: bool = True, tolerance: float | None = None
) -> VerifyOutcome:
    """Run one instance through all routes and cross-check everything.

    Route A: group construction, commuting graph, clique decomposition,
    exact structural spectra and energies.  Route B: CN matrices and the
    Jacobi eigensolver (within `tolerance` per sorted eigenvalue, default
    1e-8, and 1e-6 relative on energies).  Route C: the closed-form
    evaluator (exact equality with route A).  The classification verdict
    is also checked against the recorded table.
    """
    eig_tol = EIGENVALUE_AGREEMENT_TOL if tolerance is None else tolerance
    if eig_tol <= 0:
        raise ValueError("tolerance must be positive")
    problems: list[classify_mod.Discrepancy] = []

    def flag(field, computed, expected, detail=""):
        problems.append(
            classify_mod.Discrepancy(
                inst.family, inst.params, field, str(computed), str(expected), detail
            )
        )

    g = inst.build()
    graph = graphs.commuting_graph(g)
    decomposition = graphs.clique_decomposition(graph)
    result = inst.evaluate()
    out = VerifyOutcome(inst, graph.n, result.le_cn, result.le_plus_cn, problems)

    if decomposition is None:
        flag("clique_union", "not a clique union", "clique union")
        return out
    if decomposition != result.decomposition:
        flag("decomposition", decomposition.parts, result.decomposition.parts)
        return out

    cnl_exact, cnsl_exact = spectral.exact_spectrum_clique_union(decomposition)
    dv = spectral.delta(graph)
    if dv != result.delta:
        flag("delta", dv, result.delta)
    if cnl_exact != result.cnl_spectrum:
        flag("cnl_spectrum", cnl_exact.pairs, result.cnl_spectrum.pairs)
    if cnsl_exact != result.cnsl_spectrum:
        flag("cnsl_spectrum", cnsl_exact.pairs, result.cnsl_spectrum.pairs)
    le = spectral.energy(cnl_exact, dv)
    le_plus = spectral.energy(cnsl_exact, dv)
    if le != result.le_cn:
        flag("le_cn", le, result.le_cn)
    if le_plus != result.le_plus_cn:
        flag("le_plus_cn", le_plus, result.le_plus_cn)

    if numeric:
        cn = spectral.cn_matrix(graph)
        _, cnl, cnsl = spectral.cnrs_cnl_cnsl(cn)
        for name, matrix, exact in (
            ("cnl", cnl, cnl_exact),
            ("cnsl", cnsl, cnsl_exact),
        ):
            ns = spectral.numeric_spectrum(matrix)
            dev = float(np.max(np.abs(ns.values - exact.expand_floats())))
            if dev > eig_tol:
                flag(
                    f"{name}_numeric_spectrum",
                    f"max deviation {dev:.3e}",
                    f"<= {eig_tol}",
                )
            en = spectral.energy(ns, float(dv))
            exact_en = float(le if name == "cnl" else le_plus)
            rel = abs(en - exact_en) / max(1.0, abs(exact_en))
            if rel > ENERGY_AGREEMENT_RELTOL:
                flag(
                    f"{name}_numeric_energy",
                    f"relative deviation {rel:.3e}",
                    f"<= {ENERGY_AGREEMENT_RELTOL}",
                )

    verdict = classify_mod.classify_result(result)
    problems.extend(
        classify_mod.compare_with_reference(
            verdict, inst.expected(), inst.family, inst.params
        )
    )
    return out


def _verify_worker(args):
    inst, numeric, tolerance = args
    return verify_instance(inst, numeric, tolerance)


# -- rendering helpers ------------------------------------------------------------


def _frac_pair(f: Fraction) -> list[int]:
    return [f.numerator, f.denominator]


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _spectrum_doc(matrix_name, exact, numeric_values, energy_value, dv):
    doc = {"matrix": matrix_name}
    doc["exact"] = (
        [[v.numerator, v.denominator, m] for v, m in exact.pairs] if exact else None
    )
    doc["numeric"] = (
        [float(x) for x in numeric_values] if numeric_values is not None else None
    )
    energy_doc = {}
    if isinstance(energy_value, tuple):
        exact_e, float_e = energy_value
        energy_doc["exact"] = _frac_pair(exact_e) if exact_e is not None else None
        energy_doc["float"] = float_e
    doc["energy"] = energy_doc
    doc["delta"] = _frac_pair(dv)
    return doc


def _report_doc(report: spectral.EnergyReport) -> dict:
    return {
        "vertex_count": report.vertex_count,
        "delta": _frac_pair(report.delta),
        "baseline": _frac_pair(report.baseline),
        "le_cn": {
            "exact": _frac_pair(report.le_cn) if report.le_cn is not None else None,
            "float": report.le_cn_numeric,
        },
        "le_plus_cn": {
            "exact": _frac_pair(report.le_plus_cn)
            if report.le_plus_cn is not None
            else None,
            "float": report.le_plus_cn_numeric,
        },
        "flags": {
            "cnl_integral": report.cnl_integral,
            "cnsl_integral": report.cnsl_integral,
            "cnl_hyper": report.cnl_hyper,
            "cnsl_hyper": report.cnsl_hyper,
            "cnl_border": report.cnl_border,
            "cnsl_border": report.cnsl_border,
        },
    }


def _verdict_doc(verdict: classify_mod.Verdict) -> dict:
    def diff(d):
        return _frac_pair(d) if isinstance(d, Fraction) else float(d)

    doc = {
        "cnl": {
            "integral": verdict.cnl_integral,
            "relation": verdict.cnl_relation,
            "difference": diff(verdict.cnl_difference),
        },
        "cnsl": {
            "integral": verdict.cnsl_integral,
            "relation": verdict.cnsl_relation,
            "difference": diff(verdict.cnsl_difference),
        },
    }
    if verdict.expected is not None:
        doc["expected"] = {
            "cnl_hyper": verdict.expected.cnl_hyper,
            "cnsl_hyper": verdict.expected.cnsl_hyper,
            "integral": verdict.expected.integral,
            "source": verdict.expected.source,
        }
        doc["match"] = verdict.matches_expected()
    return doc


# -- argument handling -------------------------------------------------------------


def _parse_range(text: str) -> list[int]:
    """Accepts '4', '4..8', or '4,6,7'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    if "," in text:
        return [int(x) for x in text.split(",")]
    return [int(text)]


_PARAM_NAMES = ("n", "m", "k", "q", "p", "z")


def _instance_params(args) -> dict:
    params = {}
    for name in _PARAM_NAMES:
        value = getattr(args, name, None)
        if value is not None:
            values = _parse_range(value)
            if len(values) != 1:
                raise ValueError(f"--{name} must be a single value here")
            params[name] = values[0]
    return params


def _instances_from_args(args) -> list[Instance]:
    if args.family == "all":
        return standard_instances()
    if args.family not in _REGISTRY:
        raise ValueError(f"unknown family {args.family!r}")
    ranges = {}
    for name in _PARAM_NAMES:
        value = getattr(args, name, None)
        if value is not None:
            ranges[name] = _parse_range(value)
    if not ranges:
        raise ValueError("verify needs at least one parameter range")
    names = sorted(ranges)
    combos = [{}]
    for name in names:
        combos = [dict(c, **{name: v}) for c in combos for v in ranges[name]]
    instances = []
    for combo in combos:
        inst = Instance(args.family, combo)
        try:
            inst.group_spec()  # drop parameter points with no realization
        except InvalidParamsError:
            continue
        instances.append(inst)
    return sorted(instances, key=Instance.sort_key)


def _resolve_group(args) -> groups.GroupTable:
    params = _instance_params(args)
    if args.family not in _REGISTRY:
        raise ValueError(f"unknown family {args.family!r}")
    spec = _REGISTRY[args.family].spec(params)
    cache_dir = getattr(args, "cache", None) or os.environ.get("CN_SPECTRA_CACHE")
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        digest = hashlib.sha256(spec.key().encode()).hexdigest()[:16]
        path = os.path.join(cache_dir, f"group-{digest}.json")
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return groups.group_from_json(fh.read())
        g = groups.build_family(spec)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(groups.group_to_json(g))
        return g
    return groups.build_family(spec)


def _resolve_graph(args) -> graphs.CommutingGraph:
    if getattr(args, "graph", None):
        with open(args.graph, "r", encoding="utf-8") as fh:
            return graphs.ingest_graph(fh.read())
    if getattr(args, "family", None):
        return graphs.commuting_graph(_resolve_group(args))
    raise ValueError("need --family or --graph")


# -- subcommands ---------------------------------------------------------------------


def cmd_build(args) -> int:
    g = _resolve_group(args)
    z = groups.center(g)
    doc = {
        "family": args.family,
        "params": _instance_params(args),
        "order": g.order,
        "center_size": int(len(z)),
        "abelian": groups.is_abelian(g),
        "ac_group": groups.is_ac(g),
    }
    if args.format == "text":
        for key, value in doc.items():
            print(f"{key}: {value}")
    else:
        print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def cmd_graph(args) -> int:
    graph = _resolve_graph(args)
    fmt = "dot" if args.format == "dot" else "json"
    sys.stdout.write(graphs.export_graph(graph, fmt))
    if fmt == "json":
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    graph = _resolve_graph(args)
    cn = spectral.cn_matrix(graph)
    _, cnl, cnsl = spectral.cnrs_cnl_cnsl(cn)
    dv = Fraction(int(cn.sum()), graph.n)
    decomposition = graphs.clique_decomposition(graph)
    if args.method in ("exact", "both") and decomposition is None:
        print("error: exact method requires a clique-union graph", file=sys.stderr)
        return EXIT_USAGE
    wanted = ("CNL", "CNSL") if args.matrix == "both" else (args.matrix.upper(),)
    docs = []
    for name in wanted:
        matrix = cnl if name == "CNL" else cnsl
        exact = None
        numeric_values = None
        exact_energy = float_energy = None
        if args.method in ("exact", "both"):
            pair = spectral.exact_spectrum_clique_union(decomposition)
            exact = pair[0] if name == "CNL" else pair[1]
            exact_energy = spectral.energy(exact, dv)
        if args.method in ("numeric", "both"):
            ns = spectral.numeric_spectrum(matrix)
            numeric_values = ns.values
            float_energy = spectral.energy(ns, float(dv))
        docs.append(
            _spectrum_doc(name, exact, numeric_values, (exact_energy, float_energy), dv)
        )
    print(json.dumps(docs if len(docs) > 1 else docs[0], sort_keys=True))
    return EXIT_OK


def cmd_energy(args) -> int:
    graph = _resolve_graph(args)
    try:
        report = spectral.energy_report(graph, method=args.method)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(_report_doc(report), sort_keys=True))
    return EXIT_OK


def cmd_classify(args) -> int:
    expected = None
    if getattr(args, "family", None):
        params = _instance_params(args)
        try:
            expected = _REGISTRY[args.family].reference(params)
        except (KeyError, OutOfDomainError):
            expected = None
    graph = _resolve_graph(args)
    report = spectral.energy_report(graph, method=args.method)
    verdict = classify_mod.classify_report(report, expected)
    print(json.dumps(_verdict_doc(verdict), sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    instances = _instances_from_args(args)
    jobs = args.jobs or os.cpu_count() or 1
    work = [(inst, not args.no_numeric, args.tolerance) for inst in instances]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_verify_worker, work))
    else:
        outcomes = [_verify_worker(w) for w in work]
    failed = False
    for outcome in outcomes:
        status = "ok" if outcome.ok else "MISMATCH"
        row = {
            "instance": outcome.instance.label(),
            "vertices": outcome.vertex_count,
            "le_cn": _frac_str(outcome.le_cn),
            "le_plus_cn": _frac_str(outcome.le_plus_cn),
            "status": status,
        }
        if args.format == "json":
            print(json.dumps(row, sort_keys=True))
        else:
            print(
                f"{row['instance']:<28} |V|={row['vertices']:<4} "
                f"LE_CN={row['le_cn']:<16} LE+_CN={row['le_plus_cn']:<16} {status}"
            )
        if not outcome.ok:
            failed = True
            for d in outcome.discrepancies:
                print(d.to_json(), file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_sweep(args) -> int:
    if args.families == "standard":
        instances = standard_instances()
    else:
        instances = []
        for family in args.families.split(","):
            family = family.strip()
            if family not in _REGISTRY:
                raise ValueError(f"unknown family {family!r}")
            instances += [i for i in standard_instances() if i.family == family]
    rows = []
    for inst in instances:
        result = inst.evaluate()
        expected = inst.expected()
        verdict = classify_mod.classify_result(result, expected)
        rows.append(
            {
                "family": inst.family,
                "params": ";".join(f"{k}={v}" for k, v in sorted(inst.params.items())),
                "vertices": result.vertex_count,
                "le_cn": _frac_str(result.le_cn),
                "le_plus_cn": _frac_str(result.le_plus_cn),
                "baseline": _frac_str(spectral.baseline_energy(result.vertex_count)),
                "cnl_verdict": verdict.cnl_relation,
                "cnsl_verdict": verdict.cnsl_relation,
                "reference_verdict": (
                    f"cnl_hyper={expected.cnl_hyper};cnsl_hyper={expected.cnsl_hyper}"
                ),
                "match": verdict.matches_expected(),
            }
        )
    if args.format == "json":
        for row, inst in zip(rows, instances):
            doc = dict(row)
            doc.update(formulas.result_to_doc(inst.evaluate()))
            print(json.dumps(doc, sort_keys=True))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


# -- entry point -----------------------------------------------------------------------


def _add_family_options(sub, with_graph=False):
    sub.add_argument("--family", help="family name, e.g. qd, psl, gl2, sz2-quotient")
    for name in _PARAM_NAMES:
        sub.add_argument(f"--{name}", help="family parameter (single value or range)")
    if with_graph:
        sub.add_argument("--graph", help="path to an edge-list JSON document")
    sub.add_argument("--cache", help="directory for Cayley-table caching")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnspectra",
        description=(
            "Commuting graphs of finite groups: common-neighborhood Laplacian "
            "spectra, energies, and classification."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("build", help="construct a group and print a summary")
    _add_family_options(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=cmd_build)

    p = subs.add_parser("graph", help="emit a commuting graph as JSON or DOT")
    _add_family_options(p, with_graph=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(fn=cmd_graph)

    p = subs.add_parser("spectrum", help="CNL/CNSL spectra of a graph")
    _add_family_options(p, with_graph=True)
    p.add_argument("--matrix", choices=("cnl", "cnsl", "both"), default="both")
    p.add_argument("--method", choices=("exact", "numeric", "both"), default="both")
    p.set_defaults(fn=cmd_spectrum)

    p = subs.add_parser("energy", help="energy report for a graph")
    _add_family_options(p, with_graph=True)
    p.add_argument("--method", choices=("exact", "numeric", "both"), default="both")
    p.set_defaults(fn=cmd_energy)

    p = subs.add_parser("classify", help="integral/hyperenergetic verdict")
    _add_family_options(p, with_graph=True)
    p.add_argument("--method", choices=("exact", "numeric", "both"), default="both")
    p.set_defaults(fn=cmd_classify)

    p = subs.add_parser("verify", help="three-route agreement check")
    _add_family_options(p)
    p.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p.add_argument("--no-numeric", action="store_true", help="skip the eigensolver route")
    p.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="per-eigenvalue agreement tolerance (default 1e-8)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify)

    p = subs.add_parser("sweep", help="closed-form sweep with verdicts (CSV)")
    p.add_argument("--families", default="standard", help="comma list or 'standard'")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (
        InvalidParamsError,
        InvalidPresentationError,
        OutOfDomainError,
        AbelianGroupError,
        MalformedInputError,
        NoConvergenceError,
        ValueError,
        KeyError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
