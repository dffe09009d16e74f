"""Commuting graphs of finite groups and their common-neighborhood
Laplacian / signless Laplacian spectra and energies.

Three mutually verifying computation routes are provided: exact structural
spectra from clique decompositions, a deterministic Jacobi eigensolver, and
closed-form family evaluators.
"""

from .classify import (
    ExpectedVerdict,
    Verdict,
    classify_report,
    classify_result,
    reference_verdict,
)
from .formulas import (
    FamilyResult,
    eval_ac_general,
    eval_ac_product,
    eval_corollaries,
    eval_d2m_quotient,
    eval_gl,
    eval_hanaki_nu,
    eval_hanaki_p,
    eval_psl,
    eval_qd,
    eval_sz2_quotient,
    eval_zpzp_quotient,
)
from .graphs import (
    CliqueDecomposition,
    CommutingGraph,
    clique_decomposition,
    commuting_graph,
    export_graph,
    ingest_graph,
)
from .groups import (
    GroupSpec,
    GroupTable,
    build_family,
    build_presented,
    center,
    central_quotient,
    centralizer,
    dicyclic,
    dihedral,
    direct_product,
    distinct_centralizers,
    gl2,
    hanaki_nu,
    hanaki_p,
    is_ac,
    metacyclic,
    quasidihedral,
    quotient_matches,
    sl2,
    sz2,
    u6n,
)
from .spectral import (
    EnergyReport,
    ExactSpectrum,
    NumericSpectrum,
    baseline_energy,
    certify_integral,
    cn_matrix,
    cnrs_cnl_cnsl,
    delta,
    energy,
    energy_report,
    exact_spectrum_clique_union,
    numeric_spectrum,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
