"""Exact Macdonald-Hurwitz numbers, cut-and-join operators and the (q,t) class algebra.

All arithmetic is exact over Q(q,t), backed by FLINT multivariate polynomials.
The submodules are importable on their own; the names below are the ones most
scripts need.
"""

from .classalgebra import (
    CentralElement,
    StructureTable,
    basis_element,
    bilinear_qt,
    brute_force_class_product,
    circ,
    eta_idempotent,
    eta_structure,
    idempotent,
    structure_constants,
    trilinear_qt,
    verify_cohomology_iso,
)
from .cutjoin import (
    HLaurent,
    OperatorD,
    apply,
    classical_cut_and_join_matrix,
    compose,
    cut_and_join,
    genus_expanded_J,
    verify_closure,
    verify_eigen,
)
from .hurwitz import (
    MHResult,
    character_sum,
    genus_from_profile,
    mh,
    mh_disconnected,
    verify_cutting,
    verify_genus_reduction,
)
from .macdonald import (
    MacdonaldTable,
    character_MN,
    coeff_a,
    dim_qt,
    integral_J,
    jack_limit,
    macdonald_P,
    macdonald_table,
)
from .partitions import Partition, c, c_prime, enumerate_partitions, j, j_AB, z, z_qt
from .qtfield import ONE, ZERO, RatQT, eta_limit, eta_order, parse, q, serialize, substitute_eta, t
from .symfun import SymFunD, inner_qt, m_to_p, multiply_p, p_to_m
from .wavefn import WaveSeries, exp_action, phi, verify_cauchy, verify_pde

__version__ = "0.1.0"

__all__ = [
    "CentralElement",
    "HLaurent",
    "MHResult",
    "MacdonaldTable",
    "ONE",
    "OperatorD",
    "Partition",
    "RatQT",
    "StructureTable",
    "SymFunD",
    "WaveSeries",
    "ZERO",
    "apply",
    "basis_element",
    "bilinear_qt",
    "brute_force_class_product",
    "c",
    "c_prime",
    "character_MN",
    "character_sum",
    "circ",
    "classical_cut_and_join_matrix",
    "coeff_a",
    "compose",
    "cut_and_join",
    "dim_qt",
    "enumerate_partitions",
    "eta_idempotent",
    "eta_limit",
    "eta_order",
    "eta_structure",
    "exp_action",
    "genus_expanded_J",
    "genus_from_profile",
    "idempotent",
    "inner_qt",
    "integral_J",
    "j",
    "j_AB",
    "jack_limit",
    "m_to_p",
    "macdonald_P",
    "macdonald_table",
    "mh",
    "mh_disconnected",
    "multiply_p",
    "p_to_m",
    "parse",
    "phi",
    "q",
    "serialize",
    "structure_constants",
    "substitute_eta",
    "t",
    "trilinear_qt",
    "verify_cauchy",
    "verify_closure",
    "verify_cohomology_iso",
    "verify_cutting",
    "verify_eigen",
    "verify_genus_reduction",
    "verify_pde",
    "z",
    "z_qt",
]
